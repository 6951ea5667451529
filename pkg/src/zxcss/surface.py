"""Rotated surface-code patches and lattice surgery.

Qubits of a ``d x e`` patch sit on a grid numbered row-major, 0-based here
and 1-based in printed Pauli strings. Interior tiles cover 2x2 blocks and
alternate between Z and X in a checkerboard; weight-2 boundary blobs sit
on every other boundary edge, coloured opposite to the tile they touch, so
that left/right edges carry X blobs and top/bottom edges carry Z blobs.

Surgery is checked as a commuting square: the physical operation after the
old encoder equals, up to a scalar and a Pauli correction on the physical
outputs, the new encoder after the logical operation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .css import CssCode, Encoder, LogicalSet, encoder_from_code, projection_diagram
from .diagram import (X, Z, Diagram, Scalar, apply_pauli, cnot, compose, identity,
                      permute_outputs, spider, tensor)
from .f2 import BitMatrix
from .pauli import PauliOp
from .rewrite import NormalForm, change_basis, equal_diagrams, output_pauli_difference
from .semantics import equal_up_to_output_paulis, equal_up_to_scalar, evaluate

SURGERY_KINDS = ("zsplit", "xsplit", "zmerge", "xmerge")


class PatchSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Stabiliser:
    kind: str  # "X" or "Z"
    support: tuple[int, ...]  # 0-based qubit indices
    origin: str  # "tile", "left", "right", "top" or "bottom"

    def pauli(self, n: int) -> PauliOp:
        return PauliOp.x_type(n, self.support) if self.kind == X else PauliOp.z_type(n, self.support)


@dataclass(frozen=True)
class Patch:
    d: int
    e: int
    parity: int
    code: CssCode
    logicals: LogicalSet
    stabilisers: tuple[Stabiliser, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.d * self.e

    def qubit(self, i: int, j: int) -> int:
        """0-based index of the qubit in 1-based row ``i``, column ``j``."""
        return (i - 1) * self.e + (j - 1)

    def logical_x(self) -> PauliOp:
        return PauliOp(self.n, self.logicals.lx.words[0], 0)

    def logical_z(self) -> PauliOp:
        return PauliOp(self.n, 0, self.logicals.lz.words[0])


def _tile_is_z(i: int, j: int, parity: int) -> bool:
    return (i + j + parity) % 2 == 0


def surface_stabilisers(d: int, e: int, parity: int = 0) -> list[Stabiliser]:
    """Tiles in row-major order, then left, right, top and bottom blobs."""
    if d < 2 or e < 2:
        raise PatchSizeError(f"patch {d}x{e}: both sides must be at least 2")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")

    def q(i, j):
        return (i - 1) * e + (j - 1)

    out = []
    for i in range(1, d):
        for j in range(1, e):
            kind = Z if _tile_is_z(i, j, parity) else X
            out.append(Stabiliser(kind, (q(i, j), q(i, j + 1), q(i + 1, j), q(i + 1, j + 1)), "tile"))
    for i in range(1, d):
        if _tile_is_z(i, 1, parity):
            out.append(Stabiliser(X, (q(i, 1), q(i + 1, 1)), "left"))
    for i in range(1, d):
        if _tile_is_z(i, e - 1, parity):
            out.append(Stabiliser(X, (q(i, e), q(i + 1, e)), "right"))
    for j in range(1, e):
        if not _tile_is_z(1, j, parity):
            out.append(Stabiliser(Z, (q(1, j), q(1, j + 1)), "top"))
    for j in range(1, e):
        if not _tile_is_z(d - 1, j, parity):
            out.append(Stabiliser(Z, (q(d, j), q(d, j + 1)), "bottom"))
    return out


def surface_code(d: int, e: int, parity: int = 0) -> Patch:
    """``d x e`` rotated surface code; X-bar on the bottom row, Z-bar on the left column."""
    stabs = surface_stabilisers(d, e, parity)
    n = d * e

    def rows(kind):
        return BitMatrix(n, tuple(sum(1 << q for q in s.support) for s in stabs if s.kind == kind))

    code = CssCode(n, rows(X), rows(Z))
    lx = BitMatrix(n, (sum(1 << ((d - 1) * e + j) for j in range(e)),))
    lz = BitMatrix(n, (sum(1 << (i * e) for i in range(d)),))
    return Patch(d, e, parity, code, LogicalSet(lx, lz), tuple(stabs))


def surface_encoder(p: Patch, rep: str = "x") -> Encoder:
    return encoder_from_code(p.code, p.logicals, rep)


def deform_logical(p: Patch, which: str, stabiliser_index: int) -> Patch:
    """Multiply a logical by a stabiliser of its own type.

    ``stabiliser_index`` is 0-based into the X (or Z) generators. The update
    is carried out as a row operation on the bent encoder's normal form, so
    the encoder it describes is unchanged.
    """
    which = which.upper()
    if which not in (X, Z):
        raise ValueError("which must be 'X' or 'Z'")
    gens = p.code.sx if which == X else p.code.sz
    if not 0 <= stabiliser_index < gens.rows:
        raise IndexError(f"no {which} stabiliser with index {stabiliser_index}")
    logical = p.logicals.lx if which == X else p.logicals.lz
    k = logical.rows
    words = [w << k for w in gens.words] + [(1 << i) | (w << k) for i, w in enumerate(logical.words)]
    nf = NormalForm("zx" if which == X else "xz", p.n + k, BitMatrix(p.n + k, tuple(words)))
    nf = change_basis(nf, stabiliser_index, gens.rows)
    new_row = nf.rows.words[gens.rows] >> k
    new = BitMatrix(p.n, (new_row,) + logical.words[1:])
    logicals = LogicalSet(new, p.logicals.lz) if which == X else LogicalSet(p.logicals.lx, new)
    return Patch(p.d, p.e, p.parity, p.code, logicals, p.stabilisers)


# -- physical operations ----------------------------------------------------


def measurement_layer(n: int, paulis: list[PauliOp], outcomes) -> Diagram:
    """Commuting projections ``(I + (-1)**k P)/2`` composed on ``n`` wires."""
    outcomes = list(outcomes)
    if len(outcomes) != len(paulis):
        raise ValueError(f"expected {len(paulis)} outcome bits, got {len(outcomes)}")
    out = identity(n)
    for p, k in zip(paulis, outcomes):
        out = compose(out, projection_diagram(p, k))
    return out


def zsplit_measurements(d: int, e: int) -> list[PauliOp]:
    """XX on the column-``e`` pairs of a ``d x 2e`` patch where the left
    ``d x e`` patch has a right-boundary blob."""
    left = surface_stabilisers(d, e, 0)
    n, cols = d * 2 * e, 2 * e
    out = []
    for s in left:
        if s.origin == "right":
            qs = [(q // e) * cols + (q % e) for q in s.support]
            out.append(PauliOp.x_type(n, qs))
    return out


def xsplit_measurements(d: int, e: int) -> list[PauliOp]:
    """ZZ on the row-``d`` pairs of a ``2d x e`` patch where the top
    ``d x e`` patch has a bottom-boundary blob."""
    top = surface_stabilisers(d, e, 0)
    n = 2 * d * e
    return [PauliOp.z_type(n, s.support) for s in top if s.origin == "bottom"]


def xmerge_measurements(d: int, e: int) -> list[PauliOp]:
    """X stabilisers of the ``2d x e`` patch that straddle rows ``d`` and ``d+1``."""
    big = surface_stabilisers(2 * d, e, 0)
    n = 2 * d * e
    out = []
    for s in big:
        rows = {q // e + 1 for q in s.support}
        if s.kind == X and {d, d + 1} <= rows:
            out.append(s.pauli(n))
    return out


def zmerge_measurements(d: int, e: int) -> list[PauliOp]:
    """Z stabilisers of the ``d x 2e`` patch that straddle columns ``e`` and ``e+1``."""
    big = surface_stabilisers(d, 2 * e, 0)
    n = 2 * d * e
    out = []
    for s in big:
        cols = {q % (2 * e) + 1 for q in s.support}
        if s.kind == Z and {e, e + 1} <= cols:
            out.append(s.pauli(n))
    return out


_MEASUREMENTS = {
    "zsplit": zsplit_measurements,
    "xsplit": xsplit_measurements,
    "zmerge": zmerge_measurements,
    "xmerge": xmerge_measurements,
}


def seam_size(kind: str, d: int, e: int) -> int:
    return len(_MEASUREMENTS[kind](d, e))


def surgery_physical(kind: str, d: int, e: int, outcomes) -> Diagram:
    paulis = _MEASUREMENTS[kind](d, e)
    return measurement_layer(2 * d * e, paulis, outcomes)


def zsplit_physical(d: int, e: int, outcomes) -> Diagram:
    return surgery_physical("zsplit", d, e, outcomes)


def xsplit_physical(d: int, e: int, outcomes) -> Diagram:
    return surgery_physical("xsplit", d, e, outcomes)


def xmerge_physical(d: int, e: int, outcomes) -> Diagram:
    return surgery_physical("xmerge", d, e, outcomes)


def zmerge_physical(d: int, e: int, outcomes) -> Diagram:
    return surgery_physical("zmerge", d, e, outcomes)


# -- logical operations -----------------------------------------------------


def logical_split(kind: str) -> Diagram:
    """Z-split copies the Z basis (Z spider 1 -> 2), X-split the X basis."""
    return spider(_colour(kind), 1, 2)


def logical_merge(kind: str, k: int = 0) -> Diagram:
    """Merge two logical qubits into one with outcome parity ``k``.

    A spider 2 -> 1 of the given colour whose first input first passes a
    pi gate of the other colour when ``k`` is 1.
    """
    c = _colour(kind)
    gate = spider(Z if c == X else X, 1, 1, k)
    return compose(tensor(gate, identity(1)), spider(c, 2, 1))


def _colour(kind: str) -> str:
    kind = kind.upper()
    if kind not in (X, Z):
        raise ValueError(f"unknown colour {kind!r}")
    return kind


# -- contracts --------------------------------------------------------------


@dataclass
class SurgeryContract:
    """``physical . encoder_before == correction . encoder_after . logical`` up to a scalar."""

    kind: str
    d: int
    e: int
    physical: Diagram
    encoder_before: Diagram
    encoder_after: Diagram
    logical: Diagram
    outcomes: tuple[int, ...]
    correction: Optional[PauliOp] = None

    def lhs(self) -> Diagram:
        return compose(self.encoder_before, self.physical)

    def rhs(self, with_correction: bool = True) -> Diagram:
        out = compose(self.logical, self.encoder_after)
        if with_correction and self.correction is not None:
            out = apply_pauli(self.correction, out)
        return out

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "rows": self.d,
            "cols": self.e,
            "outcomes": "".join(map(str, self.outcomes)),
            "physical_qubits": self.physical.n_outputs,
            "logical_in": self.logical.n_inputs,
            "logical_out": self.logical.n_outputs,
        }


def _side_by_side(d: int, e: int, rep: str) -> Diagram:
    """Encoders of two ``d x e`` patches placed left and right, in the
    row-major order of the ``d x 2e`` patch."""
    left = surface_encoder(surface_code(d, e, 0), rep).diagram
    right = surface_encoder(surface_code(d, e, e % 2), rep).diagram
    both = tensor(left, right)
    order = []
    for i in range(d):
        order += [i * e + j for j in range(e)] + [d * e + i * e + j for j in range(e)]
    return permute_outputs(both, order)


def _stacked(d: int, e: int, rep: str) -> Diagram:
    top = surface_encoder(surface_code(d, e, 0), rep).diagram
    bottom = surface_encoder(surface_code(d, e, d % 2), rep).diagram
    return tensor(top, bottom)


def derive_correction(physical: Diagram, encoder_before: Diagram, encoder_after: Diagram,
                      logical: Diagram) -> Optional[PauliOp]:
    """Pauli on the physical outputs that closes the surgery square, or None."""
    lhs = compose(encoder_before, physical)
    rhs = compose(logical, encoder_after)
    return output_pauli_difference(lhs, rhs)


def surgery_contract(kind: str, d: int, e: int, outcomes=None, derive: bool = True) -> SurgeryContract:
    """Build the surgery square for ``kind`` on ``d x e`` patches.

    Splits start from one ``d x 2e`` (Z-split) or ``2d x e`` (X-split) patch;
    merges join two ``d x e`` patches. Z-split and X-merge use X-representation
    encoders, their colour duals the Z-representation.
    """
    if kind not in SURGERY_KINDS:
        raise ValueError(f"unknown surgery {kind!r}")
    m = seam_size(kind, d, e)
    outcomes = tuple([0] * m if outcomes is None else outcomes)
    if len(outcomes) != m or any(b not in (0, 1) for b in outcomes):
        raise ValueError(f"{kind} on {d}x{e} needs {m} outcome bits")
    physical = surgery_physical(kind, d, e, outcomes)
    k = sum(outcomes) % 2
    if kind == "zsplit":
        before = surface_encoder(surface_code(d, 2 * e, 0), "x").diagram
        after = _side_by_side(d, e, "x")
        logical = logical_split(Z)
    elif kind == "xsplit":
        before = surface_encoder(surface_code(2 * d, e, 0), "z").diagram
        after = _stacked(d, e, "z")
        logical = logical_split(X)
    elif kind == "xmerge":
        before = _stacked(d, e, "x")
        after = surface_encoder(surface_code(2 * d, e, 0), "x").diagram
        logical = logical_merge(X, k)
    else:
        before = _side_by_side(d, e, "z")
        after = surface_encoder(surface_code(d, 2 * e, 0), "z").diagram
        logical = logical_merge(Z, k)
    c = SurgeryContract(kind, d, e, physical, before, after, logical, outcomes)
    if derive:
        c.correction = derive_correction(physical, before, after, logical)
    return c


@dataclass(frozen=True)
class SurgeryVerdict:
    holds: bool
    method: str
    ratio: Optional[object] = None

    def to_dict(self) -> dict:
        r = self.ratio
        if isinstance(r, Scalar):
            r = r.to_dict()
        elif r is not None:
            r = float(r)
        return {"method": self.method, "holds": self.holds, "scalar": r}


def verify_surgery(c: SurgeryContract, method: str = "rewrite") -> SurgeryVerdict:
    """Check the square; ``rewrite`` decides by rewriting, ``oracle`` densely."""
    if c.correction is None:
        return SurgeryVerdict(False, method)
    lhs, rhs = c.lhs(), c.rhs()
    if method == "rewrite":
        v = equal_diagrams(lhs, rhs)
        return SurgeryVerdict(v.proportional, method, v.ratio)
    if method == "oracle":
        lam = equal_up_to_scalar(evaluate(lhs), evaluate(rhs))
        return SurgeryVerdict(lam is not None, method, lam)
    raise ValueError(f"unknown method {method!r}")


def outcome_assignments(m: int):
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=m)]


# -- CNOT -------------------------------------------------------------------


def cnot_network(k: int) -> Diagram:
    """Z-split the control, then X-merge one copy with the target (parity ``k``)."""
    split = tensor(logical_split(Z), identity(1))
    merge = tensor(identity(1), logical_merge(X, k))
    return compose(split, merge)


def cnot_report(seam: int = 2) -> list[dict]:
    """Compare the network with CNOT for every assignment of ``seam`` outcome bits.

    The merge parity is the XOR of the bits. Each entry records the output
    correction found by rewriting and whether the dense oracle agrees.
    """
    target = cnot()
    report = []
    for bits in outcome_assignments(seam):
        k = sum(bits) % 2
        net = cnot_network(k)
        corr = output_pauli_difference(net, target)
        dense = corr is not None and equal_up_to_output_paulis(net, target, corr)
        lam = None
        if corr is not None:
            lam = equal_diagrams(net, apply_pauli(corr, target)).ratio
        report.append({
            "outcomes": "".join(map(str, bits)),
            "k": k,
            "correction": None if corr is None else str(corr),
            "holds": bool(dense),
            "scalar": lam.to_dict() if lam is not None else None,
        })
    return report
