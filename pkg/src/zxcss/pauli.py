"""Signed Pauli operators ``sign * prod_i X^{x_i} Z^{z_i}``.

On each qubit the Z factor acts first, then X. Only real Paulis are
representable (a Y shows up as ``X Z`` with the ``i`` dropped), which is all the
CSS setting needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .f2 import BitVector, parity

_TERM = re.compile(r"([XZ])(\d+)")
_FULL = re.compile(r"-?(?:[XZ]\d+)*")


@dataclass(frozen=True)
class PauliOp:
    n: int
    x: int = 0
    z: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.x >> self.n or self.z >> self.n:
            raise ValueError("Pauli support beyond qubit count")

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n)

    @classmethod
    def from_bits(cls, x_bits, z_bits, sign: int = 1) -> "PauliOp":
        xv, zv = BitVector.from_bits(x_bits), BitVector.from_bits(z_bits)
        if xv.length != zv.length:
            raise ValueError("x and z bit vectors differ in length")
        return cls(xv.length, xv.word, zv.word, sign)

    @classmethod
    def x_type(cls, n: int, support) -> "PauliOp":
        return cls(n, BitVector.from_support(n, support).word, 0)

    @classmethod
    def z_type(cls, n: int, support) -> "PauliOp":
        return cls(n, 0, BitVector.from_support(n, support).word)

    @classmethod
    def parse(cls, text: str, n: int) -> "PauliOp":
        """Parse ``[-]?([XZ]k)+`` with 1-based qubit indices, e.g. ``X2X3X5X6``."""
        text = text.replace(" ", "")
        if not _FULL.fullmatch(text):
            raise ValueError(f"malformed Pauli string {text!r}")
        op = cls(n, sign=-1 if text.startswith("-") else 1)
        for letter, idx in _TERM.findall(text):
            q = int(idx) - 1
            if not 0 <= q < n:
                raise ValueError(f"qubit index {idx} outside 1..{n}")
            factor = cls(n, 1 << q, 0) if letter == "X" else cls(n, 0, 1 << q)
            op = op * factor
        return op

    @property
    def x_bits(self) -> BitVector:
        return BitVector(self.n, self.x)

    @property
    def z_bits(self) -> BitVector:
        return BitVector(self.n, self.z)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        # X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}
        s = self.sign * other.sign * (-1) ** parity(self.z & other.x)
        return PauliOp(self.n, self.x ^ other.x, self.z ^ other.z, s)

    def inverse(self) -> "PauliOp":
        # (X^x Z^z)^{-1} = Z^z X^x = (-1)^{x.z} X^x Z^z
        return PauliOp(self.n, self.x, self.z, self.sign * (-1) ** parity(self.x & self.z))

    def commutes(self, other: "PauliOp") -> bool:
        return parity((self.x & other.z) ^ (self.z & other.x)) == 0

    def unsigned(self) -> "PauliOp":
        return PauliOp(self.n, self.x, self.z, 1)

    def restrict(self, qubits) -> "PauliOp":
        qubits = list(qubits)
        x = sum(((self.x >> q) & 1) << i for i, q in enumerate(qubits))
        z = sum(((self.z >> q) & 1) << i for i, q in enumerate(qubits))
        return PauliOp(len(qubits), x, z, self.sign)

    def embed(self, n: int, qubits) -> "PauliOp":
        """Place this operator on positions ``qubits`` of an ``n``-qubit register."""
        x = z = 0
        for i, q in enumerate(qubits):
            x |= ((self.x >> i) & 1) << q
            z |= ((self.z >> i) & 1) << q
        return PauliOp(n, x, z, self.sign)

    def matrix(self) -> np.ndarray:
        X = np.array([[0, 1], [1, 0]])
        Z = np.array([[1, 0], [0, -1]])
        out = np.array([[self.sign]])
        for q in range(self.n):
            f = np.eye(2, dtype=int)
            if (self.z >> q) & 1:
                f = Z @ f
            if (self.x >> q) & 1:
                f = X @ f
            out = np.kron(out, f)
        return out

    def __str__(self) -> str:
        terms = [f"X{q + 1}" for q in range(self.n) if (self.x >> q) & 1]
        terms += [f"Z{q + 1}" for q in range(self.n) if (self.z >> q) & 1]
        body = "".join(terms) or "I"
        return ("-" if self.sign < 0 else "") + body

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "x": self.x_bits.bits,
            "z": self.z_bits.bits,
            "sign": self.sign,
            "string": str(self),
        }
