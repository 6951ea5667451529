"""CSS codes, their diagrams and encoders.

A CSS code on ``n`` qubits is a pair of GF(2) matrices: rows of ``sx`` are the
supports of X-type generators, rows of ``sz`` those of Z-type generators.
The maximal code of a subspace S has ``sx`` spanning S and ``sz`` spanning its
orthocomplement; it fixes a single state, drawn here as a two-layer normal
form. Encoders come from the maximal code on ``n + k`` wires obtained by
adding the logical operators, with the ``k`` logical wires bent to inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import (X, Z, Diagram, FormatError, Scalar, adjoint, apply_pauli,
                      compose, pauli_layer, unbend)
from .f2 import BitMatrix, Subspace, orthocomplement
from .pauli import PauliOp
from .rewrite import (NormalForm, RewriteError, equal_diagrams, normalize,
                      pi_push_to_boundary, subspace_of)

__all__ = [
    "CodeError", "CssCode", "LogicalSet", "Encoder", "PauliOp", "validate",
    "max_css_to_diagram", "diagram_to_max_css", "stabilises", "ftst_dimension",
    "encoder_from_code", "logical_action", "projection_diagram",
    "code_from_json", "code_to_json",
]


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class CssCode:
    n: int
    sx: BitMatrix
    sz: BitMatrix

    @classmethod
    def from_rows(cls, n: int, sx, sz) -> "CssCode":
        return cls(n, BitMatrix.from_rows(sx, n), BitMatrix.from_rows(sz, n))

    @classmethod
    def maximal(cls, s: Subspace) -> "CssCode":
        return cls(s.ambient_dim, s.basis, orthocomplement(s).basis)

    def x_stabilisers(self) -> list[PauliOp]:
        return [PauliOp(self.n, w, 0) for w in self.sx.words]

    def z_stabilisers(self) -> list[PauliOp]:
        return [PauliOp(self.n, 0, w) for w in self.sz.words]

    def stabilisers(self) -> list[PauliOp]:
        return self.x_stabilisers() + self.z_stabilisers()


@dataclass(frozen=True)
class LogicalSet:
    lx: BitMatrix
    lz: BitMatrix

    @property
    def k(self) -> int:
        return self.lx.rows

    @classmethod
    def from_rows(cls, n: int, lx, lz) -> "LogicalSet":
        return cls(BitMatrix.from_rows(lx, n), BitMatrix.from_rows(lz, n))


@dataclass(frozen=True)
class Encoder:
    code: CssCode
    logicals: LogicalSet
    diagram: Diagram
    rep: str = "x"


def _widths_ok(code: CssCode) -> bool:
    return code.sx.cols == code.n and code.sz.cols == code.n


def validate(code: CssCode) -> bool:
    """True iff the generators are orthogonal and each family is independent."""
    if not _widths_ok(code):
        return False
    if not code.sx.mul_transpose(code.sz).is_zero():
        return False
    return code.sx.rank() == code.sx.rows and code.sz.rank() == code.sz.rows


def validate_logicals(code: CssCode, logicals: LogicalSet) -> bool:
    lx, lz = logicals.lx, logicals.lz
    if lx.cols != code.n or lz.cols != code.n or lx.rows != lz.rows:
        return False
    k = lx.rows
    if k != ftst_dimension(code):
        return False
    if not lx.mul_transpose(code.sz).is_zero() or not lz.mul_transpose(code.sx).is_zero():
        return False
    if lx.mul_transpose(lz) != BitMatrix.identity(k):
        return False
    return code.sx.stack(lx).rank() == code.sx.rows + k and code.sz.stack(lz).rank() == code.sz.rows + k


def ftst_dimension(code: CssCode) -> int:
    """Number of logical qubits: ``n - rank(sx) - rank(sz)``."""
    if not validate(code):
        raise CodeError("invalid CSS code")
    return code.n - code.sx.rank() - code.sz.rank()


# -- maximal codes and states -----------------------------------------------


def max_css_to_diagram(s: Subspace, rep: str = "x") -> Diagram:
    """State stabilised by the maximal CSS code of ``s``.

    ``rep="x"``: X spider per output, one Z spider per basis row of ``s``.
    ``rep="z"``: Z spider per output, one X spider per basis row of the
    orthocomplement.
    """
    if rep == "x":
        nf = NormalForm("zx", s.ambient_dim, s.basis)
    elif rep == "z":
        nf = NormalForm("xz", s.ambient_dim, orthocomplement(s).basis)
    else:
        raise ValueError(f"unknown representation {rep!r}")
    return nf.to_diagram()


def diagram_to_max_css(d: Diagram) -> tuple[Subspace, Subspace]:
    """``(S, S-perp)`` for a phase-free state diagram."""
    if d.n_inputs:
        raise RewriteError("expected a state (no inputs)")
    nf = normalize(d, "zx")
    if nf.scalar.is_zero:
        raise RewriteError("the diagram denotes the zero state")
    s = subspace_of(nf)
    return s, orthocomplement(s)


def stabilises(d: Diagram, p: PauliOp) -> bool:
    """Whether ``p`` fixes the state ``d`` exactly (sign and scalar included)."""
    if d.n_inputs:
        raise RewriteError("expected a state (no inputs)")
    if p.n != d.n_outputs:
        raise ValueError(f"Pauli on {p.n} qubits, state on {d.n_outputs}")
    return equal_diagrams(apply_pauli(p, d), d).equal


# -- encoders -----------------------------------------------------------------


def _extended_rows(sx: BitMatrix, lx: BitMatrix) -> BitMatrix:
    """Rows ``[0 | sx_i]`` and ``[e_i | lx_i]`` on ``k + n`` wires, logicals first."""
    k = lx.rows
    words = [w << k for w in sx.words] + [(1 << i) | (w << k) for i, w in enumerate(lx.words)]
    return BitMatrix(sx.cols + k, tuple(words))


def encoder_from_code(code: CssCode, logicals: LogicalSet, rep: str = "x") -> Encoder:
    """Isometric encoder ``k -> n`` for ``code`` with the given CSS logicals.

    The bent encoder is the maximal CSS state on ``k + n`` wires whose X
    stabilisers are the code's X generators plus each logical X extended by
    an X on its logical wire (and dually for Z). ``rep`` picks the X- or
    Z-representation of that state. The scalar is set so the encoder is an
    isometry: every amplitude of the bent state equals ``2**(-rank(sx)/2)``.
    """
    if not validate(code):
        raise CodeError("invalid CSS code")
    if not validate_logicals(code, logicals):
        raise CodeError("logical operators do not fit the code")
    k = logicals.k
    n_wires = code.n + k
    target = -code.sx.rank()
    if rep == "x":
        rows = _extended_rows(code.sx, logicals.lx)
        ones = sum(bin(w).count("1") for w in rows.words)
        scalar = Scalar(1, target - (n_wires - ones))
        nf = NormalForm("zx", n_wires, rows, scalar, k)
    elif rep == "z":
        rows = _extended_rows(code.sz, logicals.lz)
        ones = sum(bin(w).count("1") for w in rows.words)
        scalar = Scalar(1, target - (2 * rows.rows - ones))
        nf = NormalForm("xz", n_wires, rows, scalar, k)
    else:
        raise ValueError(f"unknown representation {rep!r}")
    return Encoder(code, logicals, nf.to_diagram(), rep)


def logical_action(e: Encoder, physical: Diagram, target: Optional[Encoder] = None) -> Optional[Diagram]:
    """The logical map ``f`` with ``physical . E == E' . f``, or None.

    ``E'`` is ``target`` (default: ``e`` itself). The candidate is
    ``adjoint(E') . physical . E``, returned as a phase-free normal form with a
    Pauli layer on its outputs; it is accepted only if the commuting square
    holds exactly, decided by rewriting.
    """
    target = e if target is None else target
    enc, enc2 = e.diagram, target.diagram
    if physical.n_inputs != enc.n_outputs or physical.n_outputs != enc2.n_outputs:
        raise ValueError("physical map does not fit the encoders")
    lhs = compose(enc, physical)
    f = compose(lhs, adjoint(enc2))
    residue, p = pi_push_to_boundary(f)
    f = unbend(compose(residue, pauli_layer(p)), enc.n_inputs)
    if not equal_diagrams(lhs, compose(f, enc2)).equal:
        return None
    return f


# -- measurements -----------------------------------------------------------


def projection_diagram(p: PauliOp, k: int) -> Diagram:
    """Projector ``(I + (-1)**k p) / 2`` for a pure X-type or Z-type ``p``.

    X-type: an X spider on each supported wire whose third leg meets a shared
    Z spider of phase ``k*pi``; Z-type is the colour dual. The scalar makes
    the result the exact projector.
    """
    if p.x and p.z:
        raise ValueError("projection needs a pure X-type or pure Z-type Pauli")
    if k not in (0, 1):
        raise ValueError("outcome bit must be 0 or 1")
    if p.sign < 0:
        k ^= 1
    wire_colour, hub_colour = (X, Z) if p.x or not p.z else (Z, X)
    support = p.x | p.z
    d = Diagram()
    hub = d.add_spider(hub_colour, k)
    ins = [d.add_input() for _ in range(p.n)]
    outs = [d.add_output() for _ in range(p.n)]
    weight = 0
    for q in range(p.n):
        if (support >> q) & 1:
            s = d.add_spider(wire_colour)
            d.add_edge(ins[q], s)
            d.add_edge(s, outs[q])
            d.add_edge(s, hub)
            weight += 1
        else:
            d.add_edge(ins[q], outs[q])
    d.scalar = Scalar(1, weight - 2)
    return d


# -- JSON ---------------------------------------------------------------------


def _matrix_field(data: dict, key: str, n: int) -> BitMatrix:
    rows = data.get(key, [])
    if not isinstance(rows, list):
        raise FormatError(key, "expected a list of bit rows")
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != n:
            raise FormatError(f"{key}[{i}]", f"expected a list of {n} bits")
        if any(b not in (0, 1) or isinstance(b, bool) for b in r):
            raise FormatError(f"{key}[{i}]", "entries must be 0 or 1")
    return BitMatrix.from_rows(rows, n)


def code_from_json(data) -> tuple[CssCode, Optional[LogicalSet]]:
    """Parse ``{"n", "sx", "sz", "lx"?, "lz"?}``; logicals are None if absent."""
    if not isinstance(data, dict):
        raise FormatError("code", "expected an object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("n", "expected a non-negative integer")
    code = CssCode(n, _matrix_field(data, "sx", n), _matrix_field(data, "sz", n))
    logicals = None
    if "lx" in data or "lz" in data:
        logicals = LogicalSet(_matrix_field(data, "lx", n), _matrix_field(data, "lz", n))
    return code, logicals


def code_to_json(code: CssCode, logicals: Optional[LogicalSet] = None) -> dict:
    out = {"n": code.n, "sx": code.sx.to_lists(), "sz": code.sz.to_lists()}
    if logicals is not None:
        out["lx"] = logicals.lx.to_lists()
        out["lz"] = logicals.lz.to_lists()
    return out
