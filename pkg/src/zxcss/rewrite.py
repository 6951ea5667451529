"""Rewrite engine for the phase-free and Pauli fragments.

Rules mutate a :class:`~zxcss.diagram.Diagram` in place and return a
:class:`RuleApplication` describing what happened, including the exact scalar
they multiplied into the diagram. Every rule preserves the denoted map exactly.

Strategy for normal forms: fuse, drop self-loops, cancel parallel pairs, then
repeatedly apply strong complementarity at an interior spider of the
"outer" colour until none remain, and finally pad boundary wires with identity
spiders. Row operations on a normal form are the two-step strong
complementarity move (once backwards, once forwards) followed by fusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import (B, X, Z, Diagram, DiagramError, Scalar, bend, other_colour,
                      unbend)
from .f2 import BitMatrix, BitVector, Subspace, orthocomplement, solve
from .pauli import PauliOp

RULES = ("Fuse", "Identity", "SelfLoop", "StrongComp", "Comp", "PiCopy", "PiPush")


class RewriteError(ValueError):
    """The requested rule does not match at the given site."""


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    site: tuple
    scalar_delta: Scalar = Scalar.one()
    reverse: bool = False
    created: tuple = ()

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "site": list(self.site),
            "reverse": self.reverse,
            "scalar_delta": self.scalar_delta.to_dict(),
        }


def _log(log, app: RuleApplication) -> RuleApplication:
    if log is not None:
        log.append(app)
    return app


def _spider(d: Diagram, n: int):
    if not d.is_spider(n):
        raise RewriteError(f"node {n} is not a spider")


# -- basic rules ------------------------------------------------------------


def fuse(d: Diagram, u: int, v: int, log=None) -> RuleApplication:
    """Merge spider ``v`` into ``u`` along one connecting edge; phases add."""
    _spider(d, u)
    _spider(d, v)
    if u == v or d.kinds[u] != d.kinds[v]:
        raise RewriteError("fusion needs two distinct spiders of one colour")
    if d.multiplicity(u, v) < 1:
        raise RewriteError(f"spiders {u} and {v} are not connected")
    extra = d.multiplicity(u, v) - 1
    d.remove_edge(u, v, extra + 1)
    for w, c in list(d.adj[v].items()):
        d.remove_edge(v, w, c)
        d.add_edge(u, w, c)
    if d.loops[v]:
        d.add_edge(u, u, d.loops[v])
    if extra:
        d.add_edge(u, u, extra)
    d.phases[u] = (d.phases[u] + d.phases[v]) % 2
    d.remove_node(v)
    return _log(log, RuleApplication("Fuse", (u, v)))


def unfuse(d: Diagram, u: int, moved: list[int], phase: int = 0, log=None) -> int:
    """Split spider ``u`` in two: a new same-colour spider joined to ``u`` by one
    edge takes over the legs listed in ``moved`` and carries ``phase``, which
    is removed from ``u``."""
    _spider(d, u)
    new = d.add_spider(d.kinds[u], phase)
    for w in moved:
        d.remove_edge(u, w)
        d.add_edge(new, w)
    d.add_edge(u, new)
    d.phases[u] = (d.phases[u] + phase) % 2
    _log(log, RuleApplication("Fuse", (u, new), reverse=True, created=(new,)))
    return new


def remove_self_loop(d: Diagram, n: int, log=None) -> RuleApplication:
    _spider(d, n)
    if not d.loops[n]:
        raise RewriteError(f"spider {n} has no self-loop")
    d.remove_edge(n, n)
    return _log(log, RuleApplication("SelfLoop", (n,)))


def remove_identity(d: Diagram, n: int, log=None) -> RuleApplication:
    """Delete a phase-0 spider with exactly two legs, joining its neighbours."""
    _spider(d, n)
    if d.phases[n] or d.loops[n] or d.degree(n) != 2:
        raise RewriteError(f"spider {n} is not an identity")
    a, b = d.legs(n)
    d.remove_node(n)
    d.add_edge(a, b)
    return _log(log, RuleApplication("Identity", (n,)))


def insert_identity(d: Diagram, u: int, v: int, colour: str, log=None) -> int:
    if d.multiplicity(u, v) < 1:
        raise RewriteError(f"no edge ({u}, {v})")
    s = d.add_spider(colour)
    d.remove_edge(u, v)
    d.add_edge(u, s)
    d.add_edge(s, v)
    _log(log, RuleApplication("Identity", (u, v), reverse=True, created=(s,)))
    return s


def remove_scalar_spider(d: Diagram, n: int, log=None) -> RuleApplication:
    """A spider with no legs is the number ``1 + (-1)**phase``."""
    _spider(d, n)
    if d.degree(n) != 0:
        raise RewriteError(f"spider {n} has legs")
    delta = Scalar.zero() if d.phases[n] else Scalar(1, 2)
    d.remove_node(n)
    d.multiply_scalar(delta)
    return _log(log, RuleApplication("Identity", (n,), delta))


def comp(d: Diagram, u: int, v: int, log=None) -> RuleApplication:
    """Delete a pair of parallel edges between spiders of opposite colour.

    The scalar 1/2 was fixed against the dense oracle on the smallest instance
    and holds for all arities and phases.
    """
    _spider(d, u)
    _spider(d, v)
    if d.kinds[u] == d.kinds[v]:
        raise RewriteError("complementarity needs spiders of opposite colour")
    if d.multiplicity(u, v) < 2:
        raise RewriteError(f"fewer than two parallel edges between {u} and {v}")
    d.remove_edge(u, v, 2)
    delta = Scalar(1, -2)
    d.multiply_scalar(delta)
    return _log(log, RuleApplication("Comp", (u, v), delta))


def strong_comp(d: Diagram, u: int, v: int, log=None, rule: str = "StrongComp") -> RuleApplication:
    """Strong complementarity on the single edge between ``u`` and ``v``.

    Each of the ``m`` other legs of ``u`` receives a new spider of ``v``'s
    colour and phase, each of the ``n`` other legs of ``v`` a new spider of
    ``u``'s colour and phase, and the two groups are joined completely.
    The scalar is ``(-1)**(j*k) * 2**((m-1)*(n-1)/2)``.
    """
    _spider(d, u)
    _spider(d, v)
    if d.kinds[u] == d.kinds[v]:
        raise RewriteError("strong complementarity needs opposite colours")
    if d.multiplicity(u, v) != 1:
        raise RewriteError(f"need exactly one edge between {u} and {v}")
    if d.loops[u] or d.loops[v]:
        raise RewriteError("remove self-loops first")
    cu, cv = d.kinds[u], d.kinds[v]
    j, k = d.phases[u], d.phases[v]
    legs_u = [w for w in d.legs(u) if w != v]
    legs_v = [w for w in d.legs(v) if w != u]
    d.remove_node(u)
    d.remove_node(v)
    new_u = []
    for w in legs_u:
        s = d.add_spider(cv, k)
        d.add_edge(s, w)
        new_u.append(s)
    new_v = []
    for w in legs_v:
        s = d.add_spider(cu, j)
        d.add_edge(s, w)
        new_v.append(s)
    for a in new_u:
        for b in new_v:
            d.add_edge(a, b)
    m, n = len(legs_u), len(legs_v)
    delta = Scalar(-1 if j * k else 1, (m - 1) * (n - 1))
    d.multiply_scalar(delta)
    return _log(log, RuleApplication(rule, (u, v), delta, created=tuple(new_u + new_v)))


def strong_comp_reverse(d: Diagram, group_a: list[int], group_b: list[int], log=None) -> RuleApplication:
    """Undo :func:`strong_comp`: collapse a complete bipartite block to one edge.

    ``group_a`` and ``group_b`` are spiders of opposite colours, each group
    sharing a phase. Every member has exactly one leg leaving the block and
    meets each member of the other group exactly once. The ``a`` legs end up
    on a new spider of ``group_b``'s colour and phase, the ``b`` legs on one of
    ``group_a``'s, and the scalar is divided by the forward factor.
    """
    if not group_a and not group_b:
        raise RewriteError("empty block")
    block = set(group_a) | set(group_b)
    if len(block) != len(group_a) + len(group_b):
        raise RewriteError("groups overlap")
    for s in block:
        _spider(d, s)
        if d.loops[s]:
            raise RewriteError(f"spider {s} has a self-loop")
    colours = [{d.kinds[s] for s in g} for g in (group_a, group_b)]
    phases = [{d.phases[s] for s in g} for g in (group_a, group_b)]
    if any(len(c) > 1 for c in colours) or any(len(p) > 1 for p in phases):
        raise RewriteError("each group needs one colour and one phase")
    if group_a and group_b and colours[0] == colours[1]:
        raise RewriteError("groups must have opposite colours")
    ca = colours[0].pop() if group_a else other_colour(next(iter(colours[1])))
    cb = colours[1].pop() if group_b else other_colour(ca)
    ka = phases[0].pop() if group_a else 0
    jb = phases[1].pop() if group_b else 0

    def outside(s, others):
        if any(d.multiplicity(s, o) != 1 for o in others):
            raise RewriteError(f"spider {s} is not fully joined to the other group")
        legs = [w for w in d.legs(s) if w not in block]
        if len(legs) != 1 or any(w in block and w not in others for w in d.adj[s]):
            raise RewriteError(f"spider {s} must have exactly one leg leaving the block")
        return legs[0]

    legs_a = [outside(s, group_b) for s in group_a]
    legs_b = [outside(s, group_a) for s in group_b]
    for s in block:
        d.remove_node(s)
    u = d.add_spider(cb, jb)
    v = d.add_spider(ca, ka)
    for w in legs_a:
        d.add_edge(u, w)
    for w in legs_b:
        d.add_edge(v, w)
    d.add_edge(u, v)
    m, n = len(legs_a), len(legs_b)
    delta = Scalar(-1 if jb * ka else 1, -(m - 1) * (n - 1))
    d.multiply_scalar(delta)
    return _log(log, RuleApplication("StrongComp", tuple(group_a) + tuple(group_b), delta,
                                     reverse=True, created=(u, v)))


def pi_copy(d: Diagram, p: int, t: int, log=None) -> RuleApplication:
    """Push the pi spider ``p`` (one or two legs) through ``t`` of the other colour.

    With ``p`` a two-legged Pauli gate this holds with scalar ``(-1)**phase(t)``,
    i.e. on the nose for phase-0 targets; the one-legged variant carries the
    strong complementarity factor ``2**(-(m-1)/2)``.
    """
    _spider(d, p)
    if d.phases[p] != 1:
        raise RewriteError(f"spider {p} has no pi phase")
    if d.degree(p) > 2:
        raise RewriteError(f"spider {p} has more than two legs")
    return strong_comp(d, p, t, log, rule="PiCopy")


# -- cleanup and reduction --------------------------------------------------


def _simplify_step(d: Diagram, log) -> bool:
    for n in d.spiders():
        if d.loops[n]:
            remove_self_loop(d, n, log)
            return True
        if d.degree(n) == 0:
            remove_scalar_spider(d, n, log)
            return True
        for w, c in sorted(d.adj[n].items()):
            if not d.is_spider(w):
                continue
            if d.kinds[w] == d.kinds[n]:
                fuse(d, min(n, w), max(n, w), log)
                return True
            if c >= 2:
                comp(d, n, w, log)
                return True
        if d.degree(n) == 2 and d.phases[n] == 0:
            remove_identity(d, n, log)
            return True
    return False


def simplify(d: Diagram, log=None):
    """Fuse, drop loops and scalar spiders, cancel parallel pairs, drop identities."""
    while not d.scalar.is_zero and _simplify_step(d, log):
        pass


def _interior_count(d: Diagram, colour: str) -> int:
    return sum(1 for n in d.spiders() if d.kinds[n] == colour and d.is_interior(n))


def _reduce(d: Diagram, outer: str, log=None):
    """Eliminate interior spiders of colour ``outer`` (the boundary colour)."""
    simplify(d, log)
    count = _interior_count(d, outer)
    while not d.scalar.is_zero:
        site = None
        for x in d.spiders():
            if d.kinds[x] == outer and d.is_interior(x):
                site = (d.neighbors(x)[0], x)
                break
        if site is None:
            break
        strong_comp(d, *site, log)
        simplify(d, log)
        if d.scalar.is_zero:
            break
        new_count = _interior_count(d, outer)
        if new_count >= count:
            raise AssertionError("normalisation failed to make progress")
        count = new_count


def _fixup(d: Diagram, outer: str, log=None):
    inner = other_colour(outer)
    for b in list(d.outputs):
        nb = d.boundary_neighbor(b)
        if d.kinds[nb] == B:
            insert_identity(d, b, nb, inner, log)
    for b in d.outputs:
        nb = d.boundary_neighbor(b)
        if d.kinds[nb] == inner:
            insert_identity(d, b, nb, outer, log)
    for x in d.spiders():
        if d.kinds[x] != outer:
            continue
        bs = [b for b in d.outputs if d.boundary_neighbor(b) == x]
        for b in bs[1:]:
            i = insert_identity(d, x, b, inner, log)
            insert_identity(d, i, b, outer, log)


# -- normal forms -----------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Two-layer normal form of a state on ``n`` wires.

    ``zx``: interior Z spiders (one per row) wired to X spiders, one per output;
    the rows span the subspace S the state is supported on. ``xz``: colours
    exchanged, rows span the orthocomplement of S. The first ``n_inputs`` wires
    were inputs before bending.
    """

    form: str
    n: int
    rows: BitMatrix
    scalar: Scalar = Scalar.one()
    n_inputs: int = 0

    def __post_init__(self):
        if self.form not in ("zx", "xz"):
            raise ValueError(f"unknown normal form {self.form!r}")
        if self.rows.cols != self.n:
            raise ValueError("row width differs from wire count")

    @property
    def outer(self) -> str:
        return X if self.form == "zx" else Z

    def to_diagram(self, unbend_inputs: bool = True) -> Diagram:
        d, _, _ = _nf_diagram(self)
        return unbend(d, self.n_inputs) if unbend_inputs else d

    def to_dict(self) -> dict:
        return {
            "form": self.form,
            "n": self.n,
            "n_inputs": self.n_inputs,
            "rows": self.rows.to_lists(),
            "scalar": self.scalar.to_dict(),
        }


def _nf_diagram(nf: NormalForm):
    outer = nf.outer
    d = Diagram()
    outs = [d.add_node(B) for _ in range(nf.n)]
    xs = [d.add_spider(outer) for _ in range(nf.n)]
    for b, x in zip(outs, xs):
        d.add_edge(x, b)
    interior = []
    for w in nf.rows.words:
        z = d.add_spider(other_colour(outer))
        for j in range(nf.n):
            if (w >> j) & 1:
                d.add_edge(z, xs[j])
        interior.append(z)
    d.outputs = outs
    d.scalar = nf.scalar
    return d, interior, xs


def _layout(d: Diagram, outer: str) -> tuple[list[int], list[int]]:
    """(interior spiders by id, boundary spider per output) of a normal-form
    shaped diagram; raises if the shape is wrong."""
    if d.inputs:
        raise DiagramError("normal forms are states; bend inputs first")
    inner = other_colour(outer)
    xs = []
    for b in d.outputs:
        x = d.boundary_neighbor(b)
        if d.kinds[x] != outer:
            raise DiagramError(f"output {b} is not attached to a {outer} spider")
        xs.append(x)
    if len(set(xs)) != len(xs):
        raise DiagramError("a boundary spider carries two outputs")
    xset = set(xs)
    interior = []
    for s in d.spiders():
        if s in xset:
            continue
        if d.kinds[s] != inner or d.loops[s]:
            raise DiagramError(f"spider {s} does not fit the normal form")
        if any(w not in xset or c != 1 for w, c in d.adj[s].items()):
            raise DiagramError(f"spider {s} is not wired only to boundary spiders")
        interior.append(s)
    return interior, xs


def _row_word(d: Diagram, z: int, col: dict[int, int]) -> int:
    w = 0
    for x in d.adj[z]:
        w |= 1 << col[x]
    return w


def _read_rows(d: Diagram, interior: list[int], xs: list[int]) -> BitMatrix:
    col = {x: j for j, x in enumerate(xs)}
    return BitMatrix(len(xs), tuple(_row_word(d, z, col) for z in interior))


def _row_op(d: Diagram, zv: int, zw: int, xs: list[int], outer: str, log=None) -> int:
    """Add row ``zv`` into row ``zw`` by two strong complementarity steps.

    Returns the id of the spider that now carries ``zv``'s row.
    """
    nv, nw = set(d.adj[zv]), set(d.adj[zw])
    both = [x for x in xs if x in nv and x in nw]

    # unfuse the shared block into a complete bipartite K_{2,|both|}
    zv2 = unfuse(d, zv, both, log=log)
    zw2 = unfuse(d, zw, both, log=log)
    for x in both:
        unfuse(d, x, [zv2, zw2], log=log)

    # strong complementarity backwards on that block
    block = [w for w in d.adj[zv2] if w != zv]
    app = strong_comp_reverse(d, block, [zv2, zw2], log)
    zstar, xstar = app.created

    # and forwards on the edge zv - xstar, then fuse everything back
    app = strong_comp(d, zv, xstar, log)
    created = set(app.created)
    targets = [(next(w for w in d.adj[s] if w not in created), s) for s in app.created]
    for w, s in targets:
        fuse(d, w, s, log)
    return zstar


def _rref(d: Diagram, interior: list[int], xs: list[int], outer: str, log=None) -> list[int]:
    """Gauss-Jordan elimination on the interior rows; zero rows become scalars."""
    col = {x: j for j, x in enumerate(xs)}
    rows = list(interior)
    r = 0
    for c in range(len(xs)):
        bit = 1 << c
        p = next((i for i in range(r, len(rows)) if _row_word(d, rows[i], col) & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and _row_word(d, rows[i], col) & bit:
                rows[r] = _row_op(d, rows[r], rows[i], xs, outer, log)
        r += 1
    for z in rows[r:]:
        remove_scalar_spider(d, z, log)
    return rows[:r]


def _existing_layout(h: Diagram, outer: str):
    """Layout of ``h`` if it is already a normal form with independent rows, else None."""
    try:
        interior, xs = _layout(h, outer)
    except DiagramError:
        return None
    iset = set(interior)
    for b, x in zip(h.outputs, xs):
        if h.loops[x] or any(w != b and w not in iset for w in h.adj[x]):
            return None
    rows = _read_rows(h, interior, xs)
    if rows.rank() != rows.rows:
        return None
    return interior, xs


def _prepare(d: Diagram, outer: str, log=None) -> Diagram:
    h = bend(d)
    if _existing_layout(h, outer) is not None:
        return h
    _reduce(h, outer, log)
    if not h.scalar.is_zero:
        _fixup(h, outer, log)
    return h


def _zero_nf(form: str, n: int, n_inputs: int) -> NormalForm:
    return NormalForm(form, n, BitMatrix(n), Scalar.zero(), n_inputs)


def normalize(d: Diagram, form: str = "zx", canonical: bool = False, log=None) -> NormalForm:
    """Rewrite a phase-free diagram to Z-X (``"zx"``) or X-Z (``"xz"``) normal form.

    Inputs are bent to the front of the outputs first. With ``canonical`` the
    rows are additionally brought to reduced row-echelon form by row
    operations, which makes the result unique for each denoted map.
    """
    if form not in ("zx", "xz"):
        raise ValueError(f"unknown normal form {form!r}")
    if not d.phase_free():
        raise RewriteError("normalize expects a phase-free diagram")
    outer = X if form == "zx" else Z
    h = _prepare(d, outer, log)
    n = h.n_outputs
    if h.scalar.is_zero:
        return _zero_nf(form, n, d.n_inputs)
    interior, xs = _layout(h, outer)
    if canonical:
        interior = _rref(h, interior, xs, outer, log)
    return NormalForm(form, n, _read_rows(h, interior, xs), h.scalar, d.n_inputs)


def change_basis(nf: NormalForm, src: int, dst: int, log=None) -> NormalForm:
    """Add row ``src`` into row ``dst`` diagrammatically; semantics unchanged."""
    k = nf.rows.rows
    if not (0 <= src < k and 0 <= dst < k):
        raise IndexError(f"row index out of range for {k} rows")
    if src == dst:
        raise ValueError("cannot add a row to itself")
    d, interior, xs = _nf_diagram(nf)
    interior[src] = _row_op(d, interior[src], interior[dst], xs, nf.outer, log)
    return NormalForm(nf.form, nf.n, _read_rows(d, interior, xs), d.scalar, nf.n_inputs)


def canonicalize(nf: NormalForm, log=None) -> NormalForm:
    d, interior, xs = _nf_diagram(nf)
    interior = _rref(d, interior, xs, nf.outer, log)
    return NormalForm(nf.form, nf.n, _read_rows(d, interior, xs), d.scalar, nf.n_inputs)


def subspace_of(nf: NormalForm) -> Subspace:
    s = Subspace.span(nf.rows)
    return s if nf.form == "zx" else orthocomplement(s)


def nf_from_subspace(s: Subspace, form: str = "zx", n_inputs: int = 0) -> NormalForm:
    rows = s.basis if form == "zx" else orthocomplement(s).basis
    return NormalForm(form, s.ambient_dim, rows, Scalar.one(), n_inputs)


# -- Pauli fragment ---------------------------------------------------------


_SINGLE = {Z: PauliOp(1, 0, 1), X: PauliOp(1, 1, 0)}


def pauli_normal_form(d: Diagram, log=None) -> tuple[NormalForm, PauliOp]:
    """Canonical form of a Pauli-fragment diagram.

    Returns a canonical (RREF) phase-free Z-X normal form of the bent diagram
    and a Pauli operator ``P`` on its wires such that ``d`` (bent) equals ``P``
    applied to the normal form, exactly.
    """
    h = _prepare(d, X, log)
    n = h.n_outputs
    if h.scalar.is_zero:
        return _zero_nf("zx", n, d.n_inputs), PauliOp.identity(n)
    interior, xs = _layout(h, X)
    interior = _rref(h, interior, xs, X, log)
    if h.scalar.is_zero:
        return _zero_nf("zx", n, d.n_inputs), PauliOp.identity(n)
    col = {x: j for j, x in enumerate(xs)}
    rows = [_row_word(h, z, col) for z in interior]

    # X phases on boundary spiders become X gates on their output wires
    for j, x in enumerate(xs):
        if h.phases[x]:
            unfuse(h, x, [h.outputs[j]], phase=1, log=log)
    # Z phases on interior spiders travel through their pivot column
    for z, w in zip(interior, rows):
        if not h.phases[z]:
            continue
        j = (w & -w).bit_length() - 1
        gate = unfuse(h, z, [xs[j]], phase=1, log=log)
        app = pi_copy(h, gate, xs[j], log)
        xs[j] = next(s for s in app.created if h.kinds[s] == X)
        _log(log, RuleApplication("PiPush", (z, j)))

    pauli = PauliOp.identity(n)
    for j, b in enumerate(h.outputs):
        gates = []
        node = h.boundary_neighbor(b)
        while node != xs[j]:
            gates.append(node)
            (node,) = [w for w in h.adj[node] if w != b and w not in gates]
        local = PauliOp.identity(1)
        for g in reversed(gates):
            if h.phases[g] != 1 or h.degree(g) != 2:
                raise AssertionError("unexpected spider on an output wire")
            local = _SINGLE[h.kinds[g]] * local
        for g in gates:
            remove_identity_gate(h, g)
        pauli = pauli * local.embed(n, [j])
    interior_rows = _read_rows(h, interior, xs)
    return NormalForm("zx", n, interior_rows, h.scalar, d.n_inputs), pauli


def remove_identity_gate(d: Diagram, g: int):
    a, b = d.legs(g)
    d.remove_node(g)
    d.add_edge(a, b)


def pi_push_to_boundary(d: Diagram, log=None) -> tuple[Diagram, PauliOp]:
    """Phase-free diagram ``d2`` and output Pauli ``P`` with ``bend(d) == P . d2``."""
    nf, p = pauli_normal_form(d, log)
    return nf.to_diagram(unbend_inputs=False), p


# -- equality ---------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str
    ratio: Optional[Scalar] = None

    @property
    def equal(self) -> bool:
        return self.kind == "Equal"

    @property
    def proportional(self) -> bool:
        return self.kind in ("Equal", "EqualUpToScalar")

    def to_dict(self) -> dict:
        out = {"verdict": self.kind}
        if self.ratio is not None:
            out["ratio"] = self.ratio.to_dict()
        return out


def _in_span(rows: BitMatrix, word: int) -> bool:
    return solve(rows, BitVector(rows.cols, word)) is not None


def equal_diagrams(a: Diagram, b: Diagram) -> Verdict:
    """Decide equality of two Pauli-fragment diagrams by rewriting.

    ``ratio`` is the scalar ``lam`` with ``a == lam * b``.
    """
    if (a.n_inputs, a.n_outputs) != (b.n_inputs, b.n_outputs):
        raise DiagramError("arity mismatch")
    na, pa = pauli_normal_form(a)
    nb, pb = pauli_normal_form(b)
    if na.scalar.is_zero or nb.scalar.is_zero:
        if na.scalar.is_zero and nb.scalar.is_zero:
            return Verdict("Equal", Scalar.one())
        return Verdict("Different")
    if na.rows != nb.rows:
        return Verdict("Different")
    q = pb.inverse() * pa
    perp = orthocomplement(Subspace.span(na.rows)).basis
    if not (_in_span(na.rows, q.x) and _in_span(perp, q.z)):
        return Verdict("Different")
    lam = Scalar(q.sign) * na.scalar / nb.scalar
    return Verdict("Equal" if lam == Scalar.one() else "EqualUpToScalar", lam)


def output_pauli_difference(a: Diagram, b: Diagram) -> Optional[PauliOp]:
    """A Pauli ``C`` on the outputs with ``a`` proportional to ``C`` after ``b``.

    Both sides are brought to Pauli normal form; the Pauli quotient is then
    shifted by stabilisers of the common state so it vanishes on the bent
    input wires. Returns None when no such output-only operator exists.
    """
    if (a.n_inputs, a.n_outputs) != (b.n_inputs, b.n_outputs):
        raise DiagramError("arity mismatch")
    na, pa = pauli_normal_form(a)
    nb, pb = pauli_normal_form(b)
    if na.scalar.is_zero or nb.scalar.is_zero or na.rows != nb.rows:
        return None
    k, n = a.n_inputs, na.n
    q = pa * pb.inverse()
    mask = (1 << k) - 1
    fixed = []
    for basis, word in ((na.rows, q.x), (orthocomplement(Subspace.span(na.rows)).basis, q.z)):
        restricted = BitMatrix(k, tuple(r & mask for r in basis.words))
        coeffs = solve(restricted, BitVector(k, word & mask))
        if coeffs is None:
            return None
        for i in coeffs.support():
            word ^= basis.words[i]
        fixed.append(word)
    return PauliOp(n, *fixed).restrict(range(k, n))
