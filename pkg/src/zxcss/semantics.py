"""Dense-tensor oracle for small diagrams.

Every Pauli-fragment diagram evaluates to an integer tensor times a power of
sqrt(2), so evaluation here is exact: spider tensors are integers, each carries
its own half-power, and contraction is integer tensordot. Nothing in this
module depends on the rewrite engine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .diagram import B, X, Z, Diagram, DiagramError, Scalar, apply_pauli
from .pauli import PauliOp

DEFAULT_LIMIT = 20
_MAX_ENTRIES = 1 << 26
_SAFE = 1 << 60


class CapacityError(RuntimeError):
    pass


def oracle_limit() -> int:
    return int(os.environ.get("ZXCSS_ORACLE_LIMIT", DEFAULT_LIMIT))


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Exact map ``ints * 2**(half_power/2)`` as a ``2**out x 2**in`` matrix.

    Row index bits are the outputs (first output most significant), column
    index bits the inputs.
    """

    in_qubits: int
    out_qubits: int
    ints: np.ndarray
    half_power: int = 0

    def __post_init__(self):
        shape = (2 ** self.out_qubits, 2 ** self.in_qubits)
        if self.ints.shape != shape:
            raise ValueError(f"entries have shape {self.ints.shape}, expected {shape}")

    @property
    def array(self) -> np.ndarray:
        return self.ints.astype(float) * 2.0 ** (self.half_power / 2)

    def is_zero(self) -> bool:
        return not np.any(self.ints)

    def reduced(self) -> "DenseTensor":
        """Strip common factors of two so equal maps have equal representations."""
        ints, hp = self.ints, self.half_power
        if not np.any(ints):
            return DenseTensor(self.in_qubits, self.out_qubits, np.zeros_like(ints), 0)
        while not np.any(ints % 2):
            ints = ints // 2
            hp += 2
        return DenseTensor(self.in_qubits, self.out_qubits, ints, hp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        if (self.in_qubits, self.out_qubits) != (other.in_qubits, other.out_qubits):
            return False
        a, b = self.reduced(), other.reduced()
        return a.half_power == b.half_power and bool(np.array_equal(a.ints, b.ints))

    def entry_pairs(self) -> list[list[list[int]]]:
        r = self.reduced()
        return [[[int(v), r.half_power] for v in row] for row in r.ints]


# -- spider tensors ---------------------------------------------------------


def _spider_tensor(kind: str, phase: int, degree: int) -> tuple[np.ndarray, int]:
    """Integer tensor and half-power of a spider with ``degree`` legs."""
    shape = (2,) * degree
    if kind == Z:
        t = np.zeros(shape, dtype=np.int64)
        t[(0,) * degree] += 1
        t[(1,) * degree] += -1 if phase else 1
        return t, 0
    # X spider: |+..+> + (-1)^p |-..->, i.e. 2^(1 - deg/2) on bit strings of parity p
    if degree == 0:
        return np.array(0 if phase else 2, dtype=np.int64), 0
    idx = np.indices(shape).reshape(degree, -1).sum(axis=0) % 2
    t = (idx == phase).astype(np.int64).reshape(shape)
    return t, 2 - degree


# -- contraction ------------------------------------------------------------


def _contract_pair(a, la, b, lb):
    shared = [x for x in la if x in lb]
    ia = [la.index(x) for x in shared]
    ib = [lb.index(x) for x in shared]
    bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * (2 ** len(shared))
    if bound >= _SAFE:
        a, b = a.astype(object), b.astype(object)
    out = np.tensordot(a, b, axes=(ia, ib))
    labels = [x for x in la if x not in shared] + [x for x in lb if x not in shared]
    return out, labels


def _trace_repeats(t, labels):
    while True:
        seen = {}
        for i, x in enumerate(labels):
            if x in seen:
                j = seen[x]
                t = np.trace(t, axis1=j, axis2=i)
                labels = [y for k, y in enumerate(labels) if k not in (i, j)]
                break
            seen[x] = i
        else:
            return t, labels


def evaluate(d: Diagram, limit: Optional[int] = None) -> DenseTensor:
    """Exact dense semantics of ``d``.

    Raises :class:`CapacityError` when the diagram has more open wires than
    ``limit`` (default 20, overridable with ``ZXCSS_ORACLE_LIMIT``) or when a
    contraction intermediate would be too large.
    """
    limit = oracle_limit() if limit is None else limit
    m, n = d.n_inputs, d.n_outputs
    if m + n > limit:
        raise CapacityError(f"{m + n} open wires exceeds the oracle limit of {limit}")
    for node, kind in d.kinds.items():
        if kind not in (Z, X, B):
            raise DiagramError(f"node {node} has kind {kind!r}")
    if d.scalar.is_zero:
        return DenseTensor(m, n, np.zeros((2 ** n, 2 ** m), dtype=np.int64))

    edge_labels: dict[tuple[int, int], list[int]] = {}
    next_label = 0
    for u, v in d.edges():
        edge_labels.setdefault((min(u, v), max(u, v)), []).append(next_label)
        next_label += 1

    tensors: list[tuple[np.ndarray, list[int]]] = []
    half_power = d.scalar.half_power
    for node in d.spiders():
        labels = []
        for nb, cnt in sorted(d.adj[node].items()):
            labels += edge_labels[(min(node, nb), max(node, nb))][:cnt]
        for lbl in edge_labels.get((node, node), []):
            labels += [lbl, lbl]
        if len(labels) > 24:
            raise CapacityError(f"spider {node} has degree {len(labels)}")
        t, hp = _spider_tensor(d.kinds[node], d.phases[node], len(labels))
        half_power += hp
        tensors.append(_trace_repeats(t, labels))

    open_labels = []
    wire_ends: dict[int, int] = {}
    for b in d.outputs + d.inputs:
        (nb,) = d.adj[b]
        if d.kinds[nb] != B:
            open_labels.append(edge_labels[(min(b, nb), max(b, nb))][0])
            continue
        # a bare wire between two boundaries is an identity matrix
        if b not in wire_ends:
            wire_ends[b], wire_ends[nb] = next_label, next_label + 1
            tensors.append((np.eye(2, dtype=np.int64), [next_label, next_label + 1]))
            next_label += 2
        open_labels.append(wire_ends[b])

    result, labels = _contract_all(tensors)
    # order axes: outputs then inputs
    perm = [labels.index(x) for x in open_labels]
    result = np.transpose(result, perm) if perm else result
    result = np.asarray(result).reshape(2 ** n, 2 ** m) * d.scalar.sign
    return DenseTensor(m, n, result, half_power)


def _contract_all(tensors):
    tensors = list(tensors)
    if not tensors:
        return np.array(1, dtype=np.int64), []
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            li = tensors[i][1]
            for j in range(i + 1, len(tensors)):
                lj = tensors[j][1]
                shared = sum(1 for x in li if x in lj)
                if not shared:
                    continue
                size = len(li) + len(lj) - 2 * shared
                if best is None or size < best[0]:
                    best = (size, i, j)
        if best is None:
            # disconnected pieces: outer product of the two smallest
            order = sorted(range(len(tensors)), key=lambda k: len(tensors[k][1]))
            best = (len(tensors[order[0]][1]) + len(tensors[order[1]][1]),
                    min(order[:2]), max(order[:2]))
        size, i, j = best
        if 2 ** size > _MAX_ENTRIES:
            raise CapacityError(f"contraction intermediate of rank {size}")
        (a, la), (b, lb) = tensors[i], tensors[j]
        out = _contract_pair(a, la, b, lb)
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [out]
    t, labels = tensors[0]
    return t, labels


# -- comparisons ------------------------------------------------------------


Ratio = Union[Scalar, float]


def _as_scalar(r: Fraction, half_power: int) -> Union[Scalar, Fraction, float]:
    """``r * 2**(half_power/2)`` as a Scalar when it is a signed power of two."""
    sign = 1 if r > 0 else -1
    r = abs(r)
    num, den = r.numerator, r.denominator
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        k = num.bit_length() - den.bit_length()
        return Scalar(sign, 2 * k + half_power)
    return sign * float(r) * 2.0 ** (half_power / 2)


def equal_up_to_scalar(a, b, tol: float = 1e-9):
    """Return ``lam`` with ``a == lam * b``, or None.

    Exact when both arguments are :class:`DenseTensor`; ``lam`` is then a
    :class:`Scalar` whenever it is a signed power of sqrt 2. Plain arrays are
    compared in floating point with tolerance ``tol``.
    """
    if isinstance(a, DenseTensor) and isinstance(b, DenseTensor):
        if (a.in_qubits, a.out_qubits) != (b.in_qubits, b.out_qubits):
            raise ValueError("shape mismatch")
        ai, bi = a.ints.ravel(), b.ints.ravel()
        nz = np.flatnonzero(bi)
        if nz.size == 0 or not np.any(ai):
            return None
        k = nz[0]
        pa, pb = int(ai[k]), int(bi[k])
        if pa == 0:
            return None
        # a * pb == b * pa entrywise (exact integer check)
        if not np.array_equal(ai.astype(object) * pb, bi.astype(object) * pa):
            return None
        return _as_scalar(Fraction(pa, pb), a.half_power - b.half_power)
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("shape mismatch")
    k = int(np.argmax(np.abs(b)))
    if abs(b.flat[k]) <= tol or abs(a.flat[k]) <= tol:
        return None
    lam = a.flat[k] / b.flat[k]
    if np.allclose(a, lam * b, atol=tol, rtol=0):
        return lam
    return None


def equal_up_to_output_paulis(a: Diagram, b: Diagram, correction: PauliOp,
                              limit: Optional[int] = None) -> bool:
    """True iff ``a`` equals ``correction`` applied to the outputs of ``b``,
    up to a nonzero scalar, judged densely."""
    if (a.n_inputs, a.n_outputs) != (b.n_inputs, b.n_outputs):
        raise ValueError("arity mismatch")
    if correction.n != b.n_outputs:
        raise ValueError("correction is not indexed over the outputs")
    ta = evaluate(a, limit)
    tb = evaluate(apply_pauli(correction, b), limit)
    return equal_up_to_scalar(ta, tb) is not None


def parity_sum_x_spider(n_legs: int, phase: int = 0) -> np.ndarray:
    """X spider as ``2**(1 - n/2)`` times the sum over parity-``phase`` strings.

    This is the parity form with the normalisation that agrees with the
    eigenbasis definition; kept as a standalone float tensor for cross-checks.
    """
    idx = np.indices((2,) * n_legs).reshape(n_legs, -1).sum(axis=0) % 2
    return (idx == phase).astype(float) * 2.0 ** (1 - n_legs / 2)
