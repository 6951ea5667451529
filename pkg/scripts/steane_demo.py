"""Build the Steane encoder in both representations and read off logical actions."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from zxcss.css import (CssCode, LogicalSet, encoder_from_code, ftst_dimension, logical_action,
                       stabilises)
from zxcss.diagram import X, Z, adjoint, compose, pauli_layer, spider
from zxcss.pauli import PauliOp
from zxcss.rewrite import equal_diagrams
from zxcss.semantics import evaluate

HAMMING = [[1, 0, 0, 0, 1, 1, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 1, 1, 0, 1]]


@dataclass
class SteaneConfig:
    logical_x: str = "X4X5X6"
    logical_z: str = "Z2Z3Z4"
    probes: tuple[str, ...] = ("X4X5X6", "Z2Z3Z4", "X1X5X6X7", "Z1Z5Z6Z7", "X1", "X1X2X3X4X5X6X7")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--probe", action="append", help="extra physical Pauli to push through")
    args = ap.parse_args()
    cfg = SteaneConfig()
    if args.probe:
        cfg.probes = cfg.probes + tuple(args.probe)

    code = CssCode.from_rows(7, HAMMING, HAMMING)
    lx, lz = PauliOp.parse(cfg.logical_x, 7), PauliOp.parse(cfg.logical_z, 7)
    logicals = LogicalSet.from_rows(7, [lx.x_bits.bits], [lz.z_bits.bits])
    print(f"logical qubits: {ftst_dimension(code)}")

    encoders = {rep: encoder_from_code(code, logicals, rep) for rep in ("x", "z")}
    for rep, e in encoders.items():
        gram = evaluate(compose(e.diagram, adjoint(e.diagram))).array
        print(f"{rep}-representation isometry defect: {np.max(np.abs(gram - np.eye(2))):.1e}")
    print(f"representations: {equal_diagrams(encoders['x'].diagram, encoders['z'].diagram).kind}")

    enc = encoders["x"]
    zero = compose(spider(X, 0, 1), enc.diagram)
    plus = compose(spider(Z, 0, 1), enc.diagram)
    ok = all(stabilises(s, p) for s in (zero, plus) for p in code.stabilisers())
    print(f"generators fix encoded |0> and |+>: {ok}")
    for text in cfg.probes:
        f = logical_action(enc, pauli_layer(PauliOp.parse(text, 7)))
        if f is None:
            print(f"{text:16} -> leaves the code space")
            continue
        t = evaluate(f).array
        label = next((name for name, m in (("I", np.eye(2)), ("X", [[0, 1], [1, 0]]),
                                            ("Z", [[1, 0], [0, -1]]), ("XZ", [[0, -1], [1, 0]]))
                      if np.allclose(t, m)), "?")
        print(f"{text:16} -> logical {label}")


if __name__ == "__main__":
    main()
