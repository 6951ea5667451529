"""Command-line front end.

Every verb reads JSON files and prints JSON on stdout. Exit status is 0 for
success or a true verdict, 1 for a false verdict and 2 for usage or input
format errors (the diagnostic names the offending field).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from . import rewrite as rw
from .css import (CodeError, CssCode, code_from_json, code_to_json, diagram_to_max_css,
                  encoder_from_code, max_css_to_diagram, stabilises)
from .diagram import Diagram, FormatError, Scalar
from .f2 import Subspace, orthocomplement
from .pauli import PauliOp
from .semantics import CapacityError, evaluate, oracle_limit
from .surface import (SURGERY_KINDS, cnot_report, outcome_assignments, seam_size,
                      surface_code, surface_encoder, surgery_contract, verify_surgery)

SCHEMAS = """\
JSON formats
  diagram: {"nodes": [{"id": int, "kind": "Z"|"X"|"B", "phase": 0|1}],
            "edges": [[id, id], ...], "inputs": [id, ...], "outputs": [id, ...],
            "scalar": {"zero": bool, "sign": 1|-1, "half_power": int}}
           boundary nodes ("B") must appear in inputs or outputs and have one edge;
           the scalar is sign * 2**(half_power/2).
  code:    {"n": int, "sx": [[bits]], "sz": [[bits]], "lx": [[bits]], "lz": [[bits]]}
           lx/lz are optional; bit rows have length n.
  pauli:   [-]?([XZ]k)+ with 1-based qubit indices, e.g. X2X3X5X6.
Environment
  ZXCSS_ORACLE_LIMIT  open-wire cap of the dense evaluator (default 20).
"""


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(path, f"invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _diagram(path: str) -> Diagram:
    return Diagram.from_dict(_load(path))


def _emit(obj) -> None:
    print(json.dumps(obj))


# -- verbs --------------------------------------------------------------------


def cmd_eval(args) -> int:
    d = _diagram(args.diagram)
    t = evaluate(d, args.limit).reduced()
    out = {
        "inputs": t.in_qubits,
        "outputs": t.out_qubits,
        "half_power": t.half_power,
        "entries": [[int(v) for v in row] for row in t.ints],
    }
    if t.in_qubits == t.out_qubits == 0:
        v = int(t.ints[0, 0])
        out["scalar"] = Scalar.zero().to_dict() if v == 0 else None
        if v in (1, -1):
            out["scalar"] = Scalar(v, t.half_power).to_dict()
        out["value"] = v * 2.0 ** (t.half_power / 2)
    _emit(out)
    return 0


def cmd_reduce(args) -> int:
    d = _diagram(args.diagram)
    log: Optional[list] = [] if args.trace else None
    if d.phase_free():
        nf = rw.normalize(d, args.form, canonical=args.canonical, log=log)
        pauli = None
    else:
        if args.form != "zx":
            raise UsageError("diagrams with pi phases reduce to the zx form only")
        nf, pauli = rw.pauli_normal_form(d, log=log)
    if log is not None:
        for app in log:
            _emit(app.to_dict())
    out = {"normal_form": nf.to_dict(), "diagram": nf.to_diagram().to_dict()}
    if pauli is not None:
        out["pauli"] = str(pauli)
    _emit(out)
    return 0


def cmd_equal(args) -> int:
    a, b = _diagram(args.a), _diagram(args.b)
    if (a.n_inputs, a.n_outputs) != (b.n_inputs, b.n_outputs):
        raise UsageError("diagrams have different arities")
    v = rw.equal_diagrams(a, b)
    _emit(v.to_dict())
    return 0 if v.proportional else 1


def _subspace_of_code(code: CssCode) -> Subspace:
    """The subspace S of the maximal code named by ``code``.

    A one-sided code is read as generating its maximal completion: X rows span
    S, Z rows span its orthocomplement. With both sides present the code has to
    be maximal already.
    """
    sx, sz = Subspace.span(code.sx), Subspace.span(code.sz)
    if code.sz.rows == 0:
        return sx
    if code.sx.rows == 0:
        return orthocomplement(sz)
    if orthocomplement(sx) != sz:
        raise CodeError("code is not maximal: sz does not span the orthocomplement of sx")
    return sx


def cmd_css_to_zx(args) -> int:
    code, _ = code_from_json(_load(args.code))
    _emit(max_css_to_diagram(_subspace_of_code(code), args.rep).to_dict())
    return 0


def cmd_zx_to_css(args) -> int:
    s, perp = diagram_to_max_css(_diagram(args.diagram))
    _emit(code_to_json(CssCode(s.ambient_dim, s.basis, perp.basis)))
    return 0


def cmd_encoder(args) -> int:
    code, logicals = code_from_json(_load(args.code))
    if logicals is None:
        raise FormatError("lx", "the encoder needs logical operators lx and lz")
    _emit(encoder_from_code(code, logicals, args.rep).diagram.to_dict())
    return 0


def cmd_stabilises(args) -> int:
    d = _diagram(args.diagram)
    try:
        p = PauliOp.parse(args.pauli, d.n_outputs)
    except ValueError as exc:
        raise FormatError("pauli", str(exc)) from None
    ok = stabilises(d, p)
    _emit({"pauli": str(p), "stabilises": ok})
    return 0 if ok else 1


def cmd_surface(args) -> int:
    p = surface_code(args.rows, args.cols, args.parity)
    counts = {"X": 0, "Z": 0}
    names = []
    for s in p.stabilisers:
        counts[s.kind] += 1
        op = s.pauli(p.n)
        names.append({"name": f"{s.kind}{counts[s.kind]}", "pauli": str(op), "origin": s.origin})
    _emit({
        "code": code_to_json(p.code, p.logicals),
        "stabilisers": names,
        "logical_x": str(p.logical_x()),
        "logical_z": str(p.logical_z()),
        "encoder": surface_encoder(p, args.rep).diagram.to_dict(),
    })
    return 0


def _parse_outcomes(text: Optional[str], m: int) -> list[tuple[int, ...]]:
    if text is None:
        return outcome_assignments(m)
    if any(c not in "01" for c in text):
        raise FormatError("outcomes", "expected a string of 0/1 characters")
    if len(text) != m:
        raise FormatError("outcomes", f"expected {m} bits, got {len(text)}")
    return [tuple(int(c) for c in text)]


def cmd_surgery(args) -> int:
    m = seam_size(args.kind, args.rows, args.cols)
    methods = ["rewrite", "oracle"] if args.verify == "both" else [args.verify]
    all_ok = True
    for bits in _parse_outcomes(args.outcomes, m):
        c = surgery_contract(args.kind, args.rows, args.cols, bits)
        verdicts = [verify_surgery(c, method) for method in methods]
        ok = all(v.holds for v in verdicts)
        all_ok &= ok
        _emit({
            "contract": c.summary(),
            "correction": None if c.correction is None else str(c.correction),
            "verdict": ok,
            "checks": [v.to_dict() for v in verdicts],
            "scalar": verdicts[0].to_dict()["scalar"],
        })
    return 0 if all_ok else 1


def cmd_cnot_demo(args) -> int:
    report = cnot_report(args.seam)
    for entry in report:
        _emit(entry)
    return 0 if all(e["holds"] for e in report) else 1


def cmd_selftest(args) -> int:
    from .selfcheck import SAMPLERS, check_normalize, check_rule

    rng = random.Random(args.seed)
    ok = True
    for rule in SAMPLERS:
        r = check_rule(rule, rng, args.trials)
        ok &= r.ok
        _emit({"check": f"rule:{rule}", "trials": r.applied, "failures": r.failures})
    bad = check_normalize(rng, args.trials)
    ok &= bad == 0
    _emit({"check": "normalize", "trials": args.trials, "failures": bad})
    return 0 if ok else 1


def cmd_dot(args) -> int:
    print(_diagram(args.diagram).to_dot())
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zxcss",
        description="Phase-free ZX diagrams, CSS codes and lattice surgery.",
        epilog=SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text, epilog=SCHEMAS,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(func=func)
        return sp

    sp = verb("eval", cmd_eval, "dense exact semantics of a diagram")
    sp.add_argument("diagram")
    sp.add_argument("--limit", type=int, default=None,
                    help=f"open-wire cap (default {oracle_limit()})")

    sp = verb("reduce", cmd_reduce, "rewrite a diagram to normal form")
    sp.add_argument("diagram")
    sp.add_argument("--form", choices=["zx", "xz"], default="zx")
    sp.add_argument("--canonical", action="store_true", help="bring rows to reduced echelon form")
    sp.add_argument("--trace", action="store_true", help="print each rule application as a JSON line")

    sp = verb("equal", cmd_equal, "decide equality of two diagrams by rewriting")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = verb("css-to-zx", cmd_css_to_zx, "state of a maximal CSS code as a diagram")
    sp.add_argument("code")
    sp.add_argument("--rep", choices=["x", "z"], default="x")

    sp = verb("zx-to-css", cmd_zx_to_css, "maximal CSS code stabilising a phase-free state")
    sp.add_argument("diagram")

    sp = verb("encoder", cmd_encoder, "encoder diagram of a CSS code with logicals")
    sp.add_argument("code")
    sp.add_argument("--rep", choices=["x", "z"], default="x")

    sp = verb("stabilises", cmd_stabilises, "does a Pauli fix a state diagram")
    sp.add_argument("diagram")
    sp.add_argument("--pauli", required=True)

    sp = verb("surface", cmd_surface, "rotated surface-code patch and its encoder")
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--parity", type=int, choices=[0, 1], default=0)
    sp.add_argument("--rep", choices=["x", "z"], default="x")

    sp = verb("surgery", cmd_surgery, "build and verify a lattice-surgery square")
    sp.add_argument("kind", choices=SURGERY_KINDS)
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--outcomes", default=None, help="seam outcome bits, e.g. 01 (default: all)")
    sp.add_argument("--verify", choices=["rewrite", "oracle", "both"], default="rewrite")

    sp = verb("cnot-demo", cmd_cnot_demo, "merge-then-split network against CNOT")
    sp.add_argument("--seam", type=int, default=2, help="number of seam outcome bits")

    sp = verb("selftest", cmd_selftest, "randomised rule soundness checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)

    sp = verb("dot", cmd_dot, "Graphviz rendering of a diagram")
    sp.add_argument("diagram")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"format error in {exc.field}: {exc}", file=sys.stderr)
    except (UsageError, CodeError, CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
