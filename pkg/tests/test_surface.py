import itertools

import numpy as np
import pytest

from zxcss.css import ftst_dimension, validate, validate_logicals
from zxcss.diagram import X, Z, adjoint, cnot, compose, identity
from zxcss.f2 import BitMatrix
from zxcss.pauli import PauliOp
from zxcss.rewrite import equal_diagrams
from zxcss.semantics import equal_up_to_scalar, evaluate
from zxcss.surface import (PatchSizeError, cnot_network, cnot_report, deform_logical,
                           derive_correction, logical_merge, logical_split, seam_size,
                           surface_code, surface_encoder, surgery_contract, verify_surgery,
                           xmerge_measurements, zsplit_measurements, zsplit_physical)


def names(p):
    return {str(s.pauli(p.n)) for s in p.stabilisers}


def test_three_by_three_golden():
    p = surface_code(3, 3, 0)
    assert names(p) == {"X2X3X5X6", "X4X5X7X8", "X1X4", "X6X9",
                        "Z1Z2Z4Z5", "Z5Z6Z8Z9", "Z2Z3", "Z7Z8"}
    assert str(p.logical_x()) == "X7X8X9"
    assert str(p.logical_z()) == "Z1Z4Z7"


def test_two_by_two_example():
    p = surface_code(2, 2, 0)
    assert names(p) == {"Z1Z2Z3Z4", "X1X3", "X2X4"}
    assert str(p.logical_x()) == "X3X4"
    assert str(p.logical_z()) == "Z1Z3"
    assert ftst_dimension(p.code) == 1


def test_parity_swaps_tile_colours():
    a, b = surface_code(3, 3, 0), surface_code(3, 3, 1)
    tiles = lambda p: {(s.support, s.kind) for s in p.stabilisers if s.origin == "tile"}
    assert {(sup, X if k == Z else Z) for sup, k in tiles(a)} == tiles(b)
    assert len(b.stabilisers) == 8


@pytest.mark.parametrize("d, e, parity", list(itertools.product(range(2, 6), range(2, 6), (0, 1))))
def test_patch_invariants(d, e, parity):
    p = surface_code(d, e, parity)
    stabs = [s.pauli(p.n) for s in p.stabilisers]
    assert len(stabs) == d * e - 1
    assert sum(s.origin == "tile" for s in p.stabilisers) == (d - 1) * (e - 1)
    assert sum(s.origin != "tile" for s in p.stabilisers) == d + e - 2
    for s in p.stabilisers:
        if s.origin in ("left", "right"):
            assert s.kind == X
        if s.origin in ("top", "bottom"):
            assert s.kind == Z
    assert all(a.commutes(b) for a, b in itertools.combinations(stabs, 2))
    lx, lz = p.logical_x(), p.logical_z()
    assert all(lx.commutes(s) and lz.commutes(s) for s in stabs)
    assert not lx.commutes(lz)
    assert validate(p.code) and validate_logicals(p.code, p.logicals)
    assert ftst_dimension(p.code) == 1


def test_small_patches_rejected():
    for d, e in ((1, 3), (3, 1), (0, 0)):
        with pytest.raises(PatchSizeError):
            surface_code(d, e)


@pytest.mark.parametrize("d, e", [(2, 2), (2, 3)])
@pytest.mark.parametrize("rep", ["x", "z"])
def test_surface_encoder_is_isometry(d, e, rep):
    enc = surface_encoder(surface_code(d, e), rep).diagram
    gram = evaluate(compose(enc, adjoint(enc))).array
    assert np.allclose(gram, np.eye(2), atol=1e-9)


def test_encoder_shape_and_representations():
    p = surface_code(3, 3)
    ex = surface_encoder(p, "x").diagram
    assert (ex.n_inputs, ex.n_outputs) == (1, 9)
    # one Z spider per X stabiliser plus one for the logical input
    assert sum(ex.kinds[s] == Z for s in ex.spiders()) == 5
    ez = surface_encoder(surface_code(2, 2), "z").diagram
    ex2 = surface_encoder(surface_code(2, 2), "x").diagram
    assert equal_up_to_scalar(evaluate(ex2), evaluate(ez)) is not None
    assert equal_diagrams(ex, surface_encoder(p, "z").diagram).proportional


def test_deform_logical():
    p = surface_code(3, 3)
    q = deform_logical(p, "X", 1)
    assert str(q.logical_x()) == "X4X5X9"
    assert deform_logical(q, "X", 1).logicals == p.logicals
    # X4X5X6 differs from X7X8X9 by a product of X stabilisers
    diff = PauliOp.parse("X4X5X6", 9) * p.logical_x()
    assert p.code.sx.stack(BitMatrix(9, (diff.x,))).rank() == p.code.sx.rank()
    # X5X6X7 meets the Z tile on qubits 1,2,4,5 once, so it is not a logical
    assert not PauliOp.parse("X5X6X7", 9).commutes(PauliOp.parse("Z1Z2Z4Z5", 9))
    r = deform_logical(p, "Z", 0)
    assert all(r.logical_z().commutes(s.pauli(9)) for s in p.stabilisers)
    with pytest.raises(IndexError):
        deform_logical(p, "X", 4)


def test_deformed_encoder_is_equal():
    p = surface_code(2, 2)
    q = deform_logical(p, "X", 0)
    assert q.logicals != p.logicals
    for rep in ("x", "z"):
        a = evaluate(surface_encoder(p, rep).diagram)
        b = evaluate(surface_encoder(q, rep).diagram)
        assert equal_up_to_scalar(a, b) is not None


# -- seams --------------------------------------------------------------------


def test_seam_sizes():
    assert seam_size("zsplit", 3, 3) == 1
    assert seam_size("zsplit", 2, 2) == 1
    assert seam_size("xmerge", 3, 3) == 2
    assert seam_size("xsplit", 2, 2) == 0


def test_seam_supports():
    (m,) = zsplit_measurements(3, 3)
    assert str(m) == "X9X15"  # column 3 of the 3x6 patch, rows 2-3
    assert {str(p) for p in xmerge_measurements(3, 3)} == {"X8X9X11X12", "X7X10"}


def test_all_zero_outcomes_are_projectors():
    phys = evaluate(zsplit_physical(2, 2, (0,))).array
    assert np.allclose(phys @ phys, phys, atol=1e-9)
    with pytest.raises(ValueError):
        zsplit_physical(2, 2, (0, 1))


# -- logical maps -------------------------------------------------------------


def test_logical_split_tensor():
    t = evaluate(logical_split("Z")).array
    expected = np.zeros((4, 2))
    expected[0, 0] = expected[3, 1] = 1
    assert np.allclose(t, expected)


def test_merge_zero_is_adjoint_of_split():
    for kind in ("Z", "X"):
        m = evaluate(logical_merge(kind, 0))
        s = evaluate(adjoint(logical_split(kind)))
        assert equal_up_to_scalar(m, s) is not None


# -- surgery contracts ----------------------------------------------------------


@pytest.mark.parametrize("kind", ["zsplit", "xsplit", "zmerge", "xmerge"])
@pytest.mark.parametrize("size", [2, 3])
def test_surgery_holds_by_rewriting(kind, size):
    for bits in itertools.product((0, 1), repeat=seam_size(kind, size, size)):
        c = surgery_contract(kind, size, size, bits)
        assert c.correction is not None
        assert verify_surgery(c, "rewrite").holds


@pytest.mark.parametrize("kind", ["zsplit", "xsplit", "zmerge", "xmerge"])
def test_surgery_methods_agree(kind):
    for bits in itertools.product((0, 1), repeat=seam_size(kind, 2, 2)):
        c = surgery_contract(kind, 2, 2, bits)
        assert verify_surgery(c, "rewrite").holds == verify_surgery(c, "oracle").holds == True  # noqa: E712


def test_surgery_without_correction_fails_for_odd_outcome():
    c = surgery_contract("zsplit", 2, 2, (1,))
    assert not c.correction.is_identity()
    c.correction = None
    assert not verify_surgery(c, "rewrite").holds


def test_identity_physical_needs_no_correction():
    enc = surface_encoder(surface_code(2, 2)).diagram
    corr = derive_correction(identity(4), enc, enc, identity(1))
    assert corr is not None and corr.is_identity()


def test_wrong_logical_has_no_correction():
    c = surgery_contract("zsplit", 2, 2, (0,), derive=False)
    assert derive_correction(c.physical, c.encoder_before, c.encoder_after, logical_split("X")) is None


def test_surgery_rejects_bad_outcomes():
    with pytest.raises(ValueError):
        surgery_contract("xmerge", 2, 2, (0, 0, 0))
    with pytest.raises(ValueError):
        surgery_contract("twist", 2, 2)


# -- CNOT ---------------------------------------------------------------------


def test_cnot_network_zero_outcome_is_cnot():
    assert equal_up_to_scalar(evaluate(cnot_network(0)), evaluate(cnot())) is not None


def test_cnot_report():
    report = cnot_report(2)
    assert [r["outcomes"] for r in report] == ["00", "01", "10", "11"]
    assert all(r["holds"] for r in report)
    corrections = [PauliOp.parse(r["correction"], 2) if r["correction"] != "I" else PauliOp.identity(2)
                   for r in report]
    assert [c.is_identity() for c in corrections] == [True, False, False, True]
    assert all(str(c) == "Z1" for c in corrections[1:3])
