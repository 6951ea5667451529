import random

import numpy as np
import pytest
from hypothesis import given

from zxcss.css import (CodeError, CssCode, LogicalSet, code_from_json, code_to_json,
                       diagram_to_max_css, encoder_from_code, ftst_dimension, logical_action,
                       max_css_to_diagram, projection_diagram, stabilises, validate)
from zxcss.diagram import X, Z, FormatError, adjoint, compose, identity, pauli_layer, spider, tensor
from zxcss.f2 import Subspace, orthocomplement
from zxcss.generators import random_css_code, random_subspace
from zxcss.pauli import PauliOp
from zxcss.rewrite import RewriteError, equal_diagrams
from zxcss.semantics import equal_up_to_scalar, evaluate

from .strategies import seeds, subspaces

HAMMING = [[1, 0, 0, 0, 1, 1, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 1, 1, 0, 1]]
STEANE = CssCode.from_rows(7, HAMMING, HAMMING)
STEANE_LOGICALS = LogicalSet.from_rows(7, [[0, 0, 0, 1, 1, 1, 0]], [[0, 1, 1, 1, 0, 0, 0]])
GHZ = Subspace.from_rows(3, [[1, 1, 1]])


def isometry_defect(enc_diagram):
    k = enc_diagram.n_inputs
    gram = evaluate(compose(enc_diagram, adjoint(enc_diagram))).array
    return np.max(np.abs(gram - np.eye(2 ** k)))


# -- codes ----------------------------------------------------------------------


def test_validate_examples():
    assert validate(STEANE)
    assert not validate(CssCode.from_rows(2, [[1, 0]], [[1, 0]]))
    assert validate(CssCode.from_rows(3, [], []))
    assert not validate(CssCode.from_rows(2, [[1, 1], [1, 1]], []))


def test_ftst_dimension_examples():
    assert ftst_dimension(STEANE) == 1
    assert ftst_dimension(CssCode.maximal(GHZ)) == 0
    assert ftst_dimension(CssCode.from_rows(3, [], [])) == 3
    with pytest.raises(CodeError):
        ftst_dimension(CssCode.from_rows(2, [[1, 0]], [[1, 0]]))


@pytest.mark.parametrize("seed", range(8))
def test_ftst_dimension_matches_projector_rank(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    code, _ = random_css_code(rng, n, rng.randint(0, n))
    proj = np.eye(2 ** n)
    for p in code.stabilisers():
        proj = proj @ (np.eye(2 ** n) + p.matrix()) / 2
    assert round(np.trace(proj).real) == 2 ** ftst_dimension(code)


# -- maximal codes --------------------------------------------------------------


def test_ghz_both_representations():
    gx = max_css_to_diagram(GHZ, "x")
    gz = max_css_to_diagram(GHZ, "z")
    for g in (gx, gz):
        assert equal_up_to_scalar(evaluate(g).array.ravel(), np.array([1, 0, 0, 0, 0, 0, 0, 1])) is not None
    assert equal_diagrams(gx, gz).proportional
    # the X-representation is a Z hub over three X output spiders
    kinds = sorted(gx.kinds[s] for s in gx.spiders())
    assert kinds == [X, X, X, Z]


def test_zero_subspace_gives_all_zeros_state():
    t = evaluate(max_css_to_diagram(Subspace.zero(2), "x")).array.ravel()
    assert equal_up_to_scalar(t, np.array([1, 0, 0, 0])) is not None


def test_diagram_to_max_css_examples():
    s, perp = diagram_to_max_css(max_css_to_diagram(GHZ, "x"))
    assert s == GHZ and perp == Subspace.from_rows(3, [[1, 1, 0], [0, 1, 1]])
    zeros = spider(X, 0, 1)
    for _ in range(2):
        zeros = tensor(zeros, spider(X, 0, 1))
    s, perp = diagram_to_max_css(zeros)
    assert s == Subspace.zero(3) and perp == Subspace.full(3)
    with pytest.raises(RewriteError):
        diagram_to_max_css(spider(Z, 0, 1, 1))


@given(subspaces(max_n=6))
def test_max_css_roundtrip(s):
    for rep in ("x", "z"):
        d = max_css_to_diagram(s, rep)
        assert diagram_to_max_css(d) == (s, orthocomplement(s))


@given(subspaces(max_n=6))
def test_maximal_code_stabilises_its_state(s):
    d = max_css_to_diagram(s, "x")
    code = CssCode.maximal(s)
    assert ftst_dimension(code) == 0
    for p in code.stabilisers():
        assert stabilises(d, p)


def test_stabilises_examples():
    g = max_css_to_diagram(GHZ, "x")
    assert stabilises(g, PauliOp.parse("X1X2X3", 3))
    assert stabilises(g, PauliOp.parse("Z1Z2", 3))
    assert not stabilises(g, PauliOp.parse("Z1", 3))
    assert not stabilises(g, PauliOp.parse("-X1X2X3", 3))
    assert stabilises(g, PauliOp.identity(3))
    with pytest.raises(ValueError):
        stabilises(g, PauliOp.identity(2))


@pytest.mark.parametrize("seed", range(10))
def test_stabilises_agrees_with_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    d = max_css_to_diagram(random_subspace(rng, n), rng.choice("xz"))
    psi = evaluate(d).array.ravel()
    for _ in range(10):
        p = PauliOp(n, rng.getrandbits(n), rng.getrandbits(n), rng.choice((1, -1)))
        expected = np.allclose(p.matrix() @ psi, psi, atol=1e-9)
        assert stabilises(d, p) == expected


# -- encoders ---------------------------------------------------------------------


@pytest.mark.parametrize("rep", ["x", "z"])
def test_steane_encoder_is_isometry(rep):
    e = encoder_from_code(STEANE, STEANE_LOGICALS, rep)
    assert (e.diagram.n_inputs, e.diagram.n_outputs) == (1, 7)
    assert isometry_defect(e.diagram) < 1e-9


def test_steane_representations_agree_exactly():
    ex = encoder_from_code(STEANE, STEANE_LOGICALS, "x")
    ez = encoder_from_code(STEANE, STEANE_LOGICALS, "z")
    assert equal_diagrams(ex.diagram, ez.diagram).equal


def test_trivial_code_encoder_is_a_wire():
    code = CssCode.from_rows(1, [], [])
    e = encoder_from_code(code, LogicalSet.from_rows(1, [[1]], [[1]]))
    assert evaluate(e.diagram) == evaluate(identity(1))


def test_encoder_rejects_bad_logicals():
    with pytest.raises(CodeError):
        encoder_from_code(STEANE, LogicalSet.from_rows(7, [[1, 0, 0, 0, 0, 0, 0]], [[0, 1, 1, 1, 0, 0, 0]]))
    with pytest.raises(CodeError):
        encoder_from_code(CssCode.from_rows(2, [[1, 0]], [[1, 0]]), LogicalSet.from_rows(2, [], []))


@pytest.mark.parametrize("seed", range(10))
def test_random_encoders_implement_logicals(seed):
    rng = random.Random(seed)
    code, logicals = random_css_code(rng, 4, 1)
    e = encoder_from_code(code, logicals, rng.choice("xz"))
    assert isometry_defect(e.diagram) < 1e-9
    enc = evaluate(e.diagram).array
    for bits, local in ((logicals.lx, PauliOp(1, 1, 0)), (logicals.lz, PauliOp(1, 0, 1))):
        phys = PauliOp(4, bits.words[0], 0) if local.x else PauliOp(4, 0, bits.words[0])
        assert np.allclose(phys.matrix() @ enc, enc @ local.matrix(), atol=1e-9)


def test_steane_logical_action():
    e = encoder_from_code(STEANE, STEANE_LOGICALS)
    cases = [
        (PauliOp.parse("X4X5X6", 7), PauliOp(1, 1, 0)),
        (PauliOp.parse("Z2Z3Z4", 7), PauliOp(1, 0, 1)),
        (PauliOp.parse("X1X5X6X7", 7), PauliOp.identity(1)),
        (PauliOp.identity(7), PauliOp.identity(1)),
    ]
    for phys, logical in cases:
        f = logical_action(e, pauli_layer(phys))
        assert f is not None
        assert evaluate(f) == evaluate(pauli_layer(logical))


def test_logical_action_rejects_code_breaking_map():
    e = encoder_from_code(STEANE, STEANE_LOGICALS)
    assert logical_action(e, pauli_layer(PauliOp.parse("X1", 7))) is None


# -- projections ------------------------------------------------------------------


@pytest.mark.parametrize("text, k", [("X1X2", 0), ("Z1Z2", 1), ("X1", 0), ("-Z1Z3", 0), ("X2X3", 1)])
def test_projection_is_exact(text, k):
    n = max(int(c) for c in text if c.isdigit())
    p = PauliOp.parse(text, n)
    expected = (np.eye(2 ** n) + (-1) ** k * p.matrix().real) / 2
    assert np.allclose(evaluate(projection_diagram(p, k)).array, expected, atol=1e-9)


@given(seeds)
def test_projections_sum_to_identity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    w = rng.getrandbits(n) or 1
    p = PauliOp(n, w, 0) if rng.random() < 0.5 else PauliOp(n, 0, w)
    total = evaluate(projection_diagram(p, 0)).array + evaluate(projection_diagram(p, 1)).array
    assert np.allclose(total, np.eye(2 ** n), atol=1e-9)


def test_projection_rejects_mixed_pauli():
    with pytest.raises(ValueError):
        projection_diagram(PauliOp.parse("X1Z2", 2), 0)
    with pytest.raises(ValueError):
        projection_diagram(PauliOp.parse("X1", 1), 2)


# -- JSON -------------------------------------------------------------------------


def test_code_json_roundtrip():
    data = code_to_json(STEANE, STEANE_LOGICALS)
    code, logicals = code_from_json(data)
    assert code == STEANE and logicals == STEANE_LOGICALS
    assert code_from_json({"n": 2, "sx": [[1, 1]]})[1] is None


@pytest.mark.parametrize("data, field", [
    ([], "code"),
    ({"n": -1}, "n"),
    ({"n": True}, "n"),
    ({"n": 2, "sx": [[1, 0, 1]]}, "sx[0]"),
    ({"n": 2, "sz": [[1, 2]]}, "sz[0]"),
    ({"n": 2, "sx": "11"}, "sx"),
])
def test_code_json_errors(data, field):
    with pytest.raises(FormatError) as info:
        code_from_json(data)
    assert info.value.field == field
