import random

import pytest
from hypothesis import given

from zxcss import rewrite as rw
from zxcss.css import max_css_to_diagram
from zxcss.diagram import (X, Z, Diagram, DiagramError, Scalar, apply_pauli, bend, build,
                           identity, spider)
from zxcss.f2 import BitMatrix, Subspace, row_add
from zxcss.generators import random_diagram, random_spanning_rows, random_subspace
from zxcss.pauli import PauliOp
from zxcss.selfcheck import SAMPLERS, check_rule
from zxcss.semantics import equal_up_to_scalar, evaluate

from .strategies import seeds, subspaces

GHZ = Subspace.from_rows(3, [[1, 1, 1]])


def single_edge(cu, j, m, cv, k, n):
    """Spider u (m outputs) joined by one edge to spider v (n outputs)."""
    d = Diagram()
    u, v = d.add_spider(cu, j), d.add_spider(cv, k)
    d.add_edge(u, v)
    for s, legs in ((u, m), (v, n)):
        for _ in range(legs):
            d.add_edge(s, d.add_output())
    return d, u, v


# -- fusion ---------------------------------------------------------------------


def test_fuse_two_plain_z_spiders():
    d, u, v = single_edge(Z, 0, 1, Z, 0, 2)
    before = evaluate(d)
    rw.fuse(d, u, v)
    assert d.spiders() == [u] and d.degree(u) == 3
    assert evaluate(d) == before


def test_fuse_pi_pair_cancels():
    d, u, v = single_edge(Z, 1, 1, Z, 1, 1)
    rw.fuse(d, u, v)
    assert d.phases[u] == 0


def test_fuse_parallel_edges_become_loops():
    d, u, v = single_edge(X, 0, 1, X, 1, 1)
    d.add_edge(u, v, 2)
    before = evaluate(d)
    rw.fuse(d, u, v)
    assert d.loops[u] == 2
    assert evaluate(d) == before


def test_fuse_rejects_colour_mismatch():
    d, u, v = single_edge(Z, 0, 1, X, 0, 1)
    with pytest.raises(rw.RewriteError):
        rw.fuse(d, u, v)


# -- strong complementarity -------------------------------------------------------


def test_strong_comp_smallest_case_has_unit_scalar():
    d, u, v = single_edge(Z, 0, 1, X, 0, 1)
    app = rw.strong_comp(d, u, v)
    assert app.scalar_delta == Scalar.one()


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("j, k", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_strong_comp_scalar_table(m, n, j, k):
    d, u, v = single_edge(Z, j, m, X, k, n)
    before = evaluate(d)
    app = rw.strong_comp(d, u, v)
    # frozen from the oracle: (-1)^(jk) 2^((m-1)(n-1)/2)
    assert app.scalar_delta == Scalar(-1 if j * k else 1, (m - 1) * (n - 1))
    assert evaluate(d) == before


def test_strong_comp_rejects_same_colour_and_parallel():
    d, u, v = single_edge(Z, 0, 1, Z, 0, 1)
    with pytest.raises(rw.RewriteError):
        rw.strong_comp(d, u, v)
    d, u, v = single_edge(Z, 0, 1, X, 0, 1)
    d.add_edge(u, v)
    with pytest.raises(rw.RewriteError):
        rw.strong_comp(d, u, v)


@given(seeds)
def test_strong_comp_forward_then_reverse(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, 1, 2, 5, 5)
    pairs = [(a, b) for a, b in set(d.edges()) if a != b and d.is_spider(a) and d.is_spider(b)
             and d.kinds[a] != d.kinds[b] and d.multiplicity(a, b) == 1
             and not d.loops[a] and not d.loops[b]]
    if not pairs:
        return
    a, b = sorted(pairs)[0]
    g = d.copy()
    legs_a = [w for w in g.legs(a) if w != b]
    fwd = rw.strong_comp(g, a, b)
    created = list(fwd.created)
    group_a, group_b = created[:len(legs_a)], created[len(legs_a):]
    back = rw.strong_comp_reverse(g, group_a, group_b)
    if group_a and group_b:
        # an empty group forgets the phase it came from, so only then is the round trip literal
        assert fwd.scalar_delta * back.scalar_delta == Scalar.one()
    assert evaluate(g) == evaluate(d)


def test_strong_comp_reverse_rejects_non_bipartite():
    d = Diagram()
    a = d.add_spider(X)
    b1, b2 = d.add_spider(Z), d.add_spider(Z)
    d.add_edge(a, b1)
    for s in (a, b1, b2):
        d.add_edge(s, d.add_output())
    with pytest.raises(rw.RewriteError):
        rw.strong_comp_reverse(d, [a], [b1, b2])


# -- complementarity ---------------------------------------------------------------


def test_comp_scalar_is_one_half():
    # degree-3 Z and degree-3 X joined by a double edge
    d, u, v = single_edge(Z, 0, 1, X, 0, 1)
    d.add_edge(u, v)
    before = evaluate(d)
    app = rw.comp(d, u, v)
    assert app.scalar_delta == Scalar(1, -2)
    assert d.multiplicity(u, v) == 0
    assert evaluate(d) == before


def test_comp_needs_parallel_pair():
    d, u, v = single_edge(Z, 0, 1, X, 0, 1)
    with pytest.raises(rw.RewriteError):
        rw.comp(d, u, v)


# -- pi copy ---------------------------------------------------------------------


def test_pi_state_copies_through_z_spider():
    d, p, t = single_edge(X, 1, 0, Z, 0, 2)
    before = evaluate(d)
    app = rw.pi_copy(d, p, t)
    assert [d.kinds[s] for s in d.spiders()] == [X, X]
    assert all(d.phases[s] == 1 for s in d.spiders())
    # a one-legged pi state carries the strong complementarity factor
    assert app.scalar_delta == Scalar(1, -1)
    assert evaluate(d) == before


def test_pi_gate_commutes_through_phase_free_spider():
    d = build([(0, X, 1), (1, Z, 0)], [(2, 0), (0, 1), (1, 3)], inputs=[2], outputs=[3])
    before = evaluate(d)
    app = rw.pi_copy(d, 0, 1)
    assert app.scalar_delta == Scalar.one()
    (b,) = d.adj[3]
    assert d.kinds[b] == X and d.phases[b] == 1
    assert evaluate(d) == before


def test_pi_copy_rejects_phase_zero():
    d, p, t = single_edge(X, 0, 1, Z, 0, 2)
    with pytest.raises(rw.RewriteError):
        rw.pi_copy(d, p, t)


# -- soundness on random sites -------------------------------------------------


@pytest.mark.parametrize("rule", list(SAMPLERS))
def test_rule_soundness(rule, rng):
    assert check_rule(rule, rng, trials=100).failures == 0


# -- normal forms -----------------------------------------------------------------


def test_ghz_z_representation_normal_form():
    d = rw.NormalForm("xz", 3, BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]])).to_diagram()
    nf = rw.normalize(d, "xz")
    assert nf.rows.to_lists() == [[1, 1, 0], [0, 1, 1]]
    assert rw.subspace_of(nf) == GHZ
    assert rw.subspace_of(rw.normalize(max_css_to_diagram(GHZ, "z"), "xz")) == GHZ


def test_bent_cup_normal_form():
    nf = rw.normalize(bend(identity(1)), "zx")
    assert nf.rows.to_lists() == [[1, 1]]
    assert nf.n == 2


def test_normalize_rejects_phases():
    with pytest.raises(rw.RewriteError):
        rw.normalize(spider(Z, 0, 1, 1))


def test_zero_diagram_normalizes_to_zero():
    closed = Diagram()
    a, b = closed.add_spider(X, 1), closed.add_spider(X, 0)
    closed.add_edge(a, b)
    nf, p = rw.pauli_normal_form(closed)
    assert nf.scalar.is_zero
    assert evaluate(closed).is_zero()


def test_subspace_of_examples():
    assert rw.subspace_of(rw.NormalForm("zx", 3, BitMatrix.from_rows([[1, 1, 1]]))) == GHZ
    xz = rw.NormalForm("xz", 3, BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]]))
    assert rw.subspace_of(xz) == GHZ
    assert rw.subspace_of(rw.NormalForm("zx", 4, BitMatrix(4))) == Subspace.zero(4)


def test_hamming_normal_form_shape():
    h = Subspace.from_rows(7, [[1, 0, 0, 0, 1, 1, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 1, 1, 0, 1]])
    nf = rw.nf_from_subspace(h, "zx")
    d = nf.to_diagram()
    assert nf.rows.rows == 3
    assert sum(1 for s in d.spiders() if d.kinds[s] == Z) == 3
    assert d.n_outputs == 7


@given(subspaces())
def test_nf_from_subspace_roundtrip(s):
    for form in ("zx", "xz"):
        assert rw.subspace_of(rw.nf_from_subspace(s, form)) == s


@given(subspaces(max_n=6))
def test_normal_form_amplitudes(s):
    # nonzero amplitudes exactly on S, all equal
    amps = evaluate(rw.nf_from_subspace(s, "zx").to_diagram()).ints.ravel()
    support = {i for i, a in enumerate(amps) if a}
    n = s.ambient_dim
    as_index = {int("".join(str((w >> j) & 1) for j in range(n)) or "0", 2) for w in s.elements()}
    assert support == as_index
    assert len({int(amps[i]) for i in support}) == 1


@given(subspaces(max_n=6))
def test_representations_are_proportional(s):
    a = rw.nf_from_subspace(s, "zx").to_diagram()
    b = rw.nf_from_subspace(s, "xz").to_diagram()
    assert rw.equal_diagrams(a, b).proportional
    assert equal_up_to_scalar(evaluate(a), evaluate(b)) is not None


@given(seeds)
def test_normalize_preserves_semantics(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, rng.randint(0, 2), rng.randint(0, 3), rng.randint(0, 10),
                       rng.randint(0, 10), phases=False)
    for form in ("zx", "xz"):
        for canonical in (False, True):
            assert evaluate(rw.normalize(d, form, canonical).to_diagram()) == evaluate(d)


@given(seeds)
def test_normalize_strong_comp_count_is_bounded(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, 0, rng.randint(1, 4), rng.randint(1, 10), rng.randint(0, 10), phases=False)
    h = bend(d)
    rw.simplify(h)
    start = sum(1 for s in h.spiders() if h.kinds[s] == X and h.is_interior(s))
    log = []
    rw.normalize(d, "zx", log=log)
    forward = [a for a in log if a.rule == "StrongComp" and not a.reverse]
    assert len(forward) <= start


def test_trace_entries_serialise():
    log = []
    rw.normalize(max_css_to_diagram(GHZ, "z"), "zx", log=log)
    assert log
    for app in log:
        entry = app.to_dict()
        assert entry["rule"] in rw.RULES
        assert set(entry) == {"rule", "site", "reverse", "scalar_delta"}


# -- basis change -----------------------------------------------------------------


@given(seeds)
def test_change_basis_mirrors_row_add(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    rows = random_spanning_rows(rng, random_subspace(rng, n), 2)
    if rows.rows < 2:
        return
    form = rng.choice(("zx", "xz"))
    nf = rw.NormalForm(form, n, rows, Scalar(rng.choice((1, -1)), rng.randint(-3, 3)))
    i, j = rng.sample(range(rows.rows), 2)
    out = rw.change_basis(nf, i, j)
    assert out.rows == row_add(rows, i, j)
    assert evaluate(out.to_diagram()) == evaluate(nf.to_diagram())


def test_change_basis_errors():
    nf = rw.NormalForm("zx", 2, BitMatrix.identity(2))
    with pytest.raises(IndexError):
        rw.change_basis(nf, 0, 2)
    with pytest.raises(ValueError):
        rw.change_basis(nf, 1, 1)


def test_canonicalize_gives_rref():
    rows = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    nf = rw.canonicalize(rw.NormalForm("zx", 3, rows))
    assert nf.rows.to_lists() == [[1, 0, 1], [0, 1, 1]]
    assert evaluate(nf.to_diagram()) == evaluate(rw.NormalForm("zx", 3, rows).to_diagram())


# -- Pauli fragment ---------------------------------------------------------------


@given(seeds)
def test_pauli_normal_form_is_exact(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, rng.randint(0, 2), rng.randint(0, 3), rng.randint(0, 9), rng.randint(0, 9))
    nf, p = rw.pauli_normal_form(d)
    assert evaluate(apply_pauli(p, nf.to_diagram(unbend_inputs=False))) == evaluate(bend(d))


def test_pi_push_recovers_stabiliser_pauli():
    s = Subspace.from_rows(4, [[1, 1, 0, 0], [0, 1, 1, 1]])
    base = rw.nf_from_subspace(s, "zx").to_diagram()
    # an X(pi) on every leg of the first interior spider is the Pauli X^{row}
    d = apply_pauli(PauliOp(4, s.basis.words[0], 0), base)
    residue, p = rw.pi_push_to_boundary(d)
    assert evaluate(residue) == evaluate(base) or rw.equal_diagrams(residue, base).equal
    assert rw.equal_diagrams(apply_pauli(p, residue), d).equal


def test_pi_push_without_phases_gives_identity():
    d = max_css_to_diagram(GHZ, "x")
    residue, p = rw.pi_push_to_boundary(d)
    assert p.is_identity()
    assert evaluate(residue) == evaluate(d)


# -- equality ----------------------------------------------------------------------


def test_equal_diagrams_examples():
    gx, gz = max_css_to_diagram(GHZ, "x"), max_css_to_diagram(GHZ, "z")
    assert rw.equal_diagrams(gx, gz).proportional
    assert rw.equal_diagrams(gx, gx).kind == "Equal"
    other = max_css_to_diagram(Subspace.from_rows(3, [[1, 1, 0]]), "x")
    assert rw.equal_diagrams(gx, other).kind == "Different"
    with pytest.raises(DiagramError):
        rw.equal_diagrams(gx, identity(1))


def test_equal_diagrams_reports_ratio():
    d = max_css_to_diagram(GHZ, "x")
    e = d.copy()
    e.scalar = Scalar(-1, 3)
    v = rw.equal_diagrams(d, e)
    assert v.kind == "EqualUpToScalar"
    assert v.ratio == Scalar(-1, -3)


@given(seeds)
def test_equal_diagrams_agrees_with_oracle(seed):
    rng = random.Random(seed)
    n_in, n_out = rng.randint(0, 2), rng.randint(0, 3)
    a = random_diagram(rng, n_in, n_out, rng.randint(0, 8), rng.randint(0, 8))
    if rng.random() < 0.5:
        b = random_diagram(rng, n_in, n_out, rng.randint(0, 8), rng.randint(0, 8))
    else:
        b = apply_pauli(PauliOp(n_out, rng.getrandbits(n_out) if n_out else 0,
                                rng.getrandbits(n_out) if n_out else 0), a)
    v = rw.equal_diagrams(a, b)
    ta, tb = evaluate(a), evaluate(b)
    lam = equal_up_to_scalar(ta, tb)
    if ta.is_zero() and tb.is_zero():
        assert v.kind == "Equal"
    elif lam is None:
        assert v.kind == "Different"
    else:
        assert v.ratio == lam
        assert v.kind == ("Equal" if lam == Scalar.one() else "EqualUpToScalar")
