"""Exact linear algebra over GF(2).

Vectors are packed into Python ints: bit ``j`` of the int is coordinate ``j``
(column ``j`` of a matrix). Rows are kept as a tuple of ints, so matrices are
immutable values that hash and compare bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class DimensionError(ValueError):
    pass


def _pack(bits: Iterable[int]) -> int:
    word = 0
    for j, b in enumerate(bits):
        if b not in (0, 1, True, False):
            raise ValueError(f"bit value {b!r} is not 0 or 1")
        if b:
            word |= 1 << j
    return word


def _unpack(word: int, length: int) -> list[int]:
    return [(word >> j) & 1 for j in range(length)]


def parity(word: int) -> int:
    return bin(word).count("1") & 1


@dataclass(frozen=True)
class BitVector:
    length: int
    word: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.word >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        return cls(len(bits), _pack(bits))

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        word = 0
        for j in support:
            if not 0 <= j < length:
                raise IndexError(j)
            word |= 1 << j
        return cls(length, word)

    @property
    def bits(self) -> list[int]:
        return _unpack(self.word, self.length)

    def support(self) -> list[int]:
        return [j for j in range(self.length) if (self.word >> j) & 1]

    def weight(self) -> int:
        return bin(self.word).count("1")

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.word >> j) & 1

    def __len__(self) -> int:
        return self.length

    def _check(self, other: "BitVector"):
        if self.length != other.length:
            raise DimensionError(f"length {self.length} vs {other.length}")

    def __add__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.word ^ other.word)

    __xor__ = __add__

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return parity(self.word & other.word)

    def __bool__(self) -> bool:
        return self.word != 0

    def __repr__(self) -> str:
        return f"BitVector({''.join(map(str, self.bits))})"


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; each row is a packed int of ``cols`` bits."""

    cols: int
    words: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        for w in self.words:
            if w < 0 or w >> self.cols:
                raise ValueError("row has bits beyond column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError(f"row of length {len(r)} in a {cols}-column matrix")
        return cls(cols, tuple(_pack(r) for r in rows))

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], cols: Optional[int] = None) -> "BitMatrix":
        if cols is None:
            if not vectors:
                raise DimensionError("column count needed for an empty matrix")
            cols = vectors[0].length
        for v in vectors:
            if v.length != cols:
                raise DimensionError("vector length mismatch")
        return cls(cols, tuple(v.word for v in vectors))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << j for j in range(n)))

    @property
    def rows(self) -> int:
        return len(self.words)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i])

    def to_lists(self) -> list[list[int]]:
        return [_unpack(w, self.cols) for w in self.words]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.cols:
            raise IndexError(j)
        return (self.words[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        out = []
        for j in range(self.cols):
            w = 0
            for i, r in enumerate(self.words):
                if (r >> j) & 1:
                    w |= 1 << i
            out.append(w)
        return BitMatrix(self.rows, tuple(out))

    def mul_transpose(self, other: "BitMatrix") -> "BitMatrix":
        """``self @ other.T`` over GF(2)."""
        if self.cols != other.cols:
            raise DimensionError("column count mismatch")
        return BitMatrix(other.rows, tuple(
            sum(parity(a & b) << j for j, b in enumerate(other.words)) for a in self.words
        ))

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise DimensionError("column count mismatch")
        return BitMatrix(self.cols, self.words + other.words)

    def rank(self) -> int:
        return rref(self).rows

    def is_zero(self) -> bool:
        return not any(self.words)

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, _unpack(w, self.cols))) for w in self.words)
        return f"BitMatrix({self.cols}; [{body}])"


def _eliminate(words: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    """Gauss-Jordan elimination; returns (nonzero RREF rows, pivot columns)."""
    work = list(words)
    pivots = []
    r = 0
    for col in range(cols):
        bit = 1 << col
        p = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rref(m: BitMatrix) -> BitMatrix:
    """Reduced row-echelon form with zero rows dropped.

    Pivots are the lowest column index of each row; the result is the
    unique canonical basis of the row space.
    """
    rows, _ = _eliminate(m.words, m.cols)
    return BitMatrix(m.cols, tuple(rows))


def pivot_columns(m: BitMatrix) -> list[int]:
    return _eliminate(m.words, m.cols)[1]


def span_equal(a: BitMatrix, b: BitMatrix) -> bool:
    if a.cols != b.cols:
        raise DimensionError(f"{a.cols} vs {b.cols} columns")
    return rref(a) == rref(b)


def row_add(m: BitMatrix, src: int, dst: int) -> BitMatrix:
    """Replace row ``dst`` by ``dst + src``."""
    n = m.rows
    if not (0 <= src < n and 0 <= dst < n):
        raise IndexError(f"row index out of range for {n} rows")
    if src == dst:
        raise ValueError("cannot add a row to itself")
    words = list(m.words)
    words[dst] ^= words[src]
    return BitMatrix(m.cols, tuple(words))


def solve(m: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Coefficients ``x`` (length ``m.rows``) with ``x @ m == b``, or None."""
    if b.length != m.cols:
        raise DimensionError("target length differs from column count")
    # Track which original rows make up each working row.
    work = [(w, 1 << i) for i, w in enumerate(m.words)]
    target, combo = b.word, 0
    r = 0
    for col in range(m.cols):
        bit = 1 << col
        p = next((i for i in range(r, len(work)) if work[i][0] & bit), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        pw, pc = work[r]
        for i in range(len(work)):
            if i != r and work[i][0] & bit:
                work[i] = (work[i][0] ^ pw, work[i][1] ^ pc)
        r += 1
    for w, c in work[:r]:
        low = w & -w
        if target & low:
            target ^= w
            combo ^= c
    if target:
        return None
    return BitVector(m.rows, combo)


def nullspace(m: BitMatrix) -> BitMatrix:
    """RREF basis of ``{w : m @ w == 0}``."""
    rows, pivots = _eliminate(m.words, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        w = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                w |= 1 << p
        basis.append(w)
    return rref(BitMatrix(m.cols, tuple(basis)))


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^n held by its canonical RREF basis."""

    ambient_dim: int
    basis: BitMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionError("basis width differs from ambient dimension")
        object.__setattr__(self, "basis", rref(self.basis))

    @classmethod
    def span(cls, m: BitMatrix) -> "Subspace":
        return cls(m.cols, m)

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence[int]]) -> "Subspace":
        return cls(n, BitMatrix.from_rows(rows, n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix(n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __contains__(self, v: BitVector) -> bool:
        return solve(self.basis, v) is not None

    def contains_word(self, word: int) -> bool:
        return solve(self.basis, BitVector(self.ambient_dim, word)) is not None

    def elements(self) -> list[int]:
        out = [0]
        for w in self.basis.words:
            out += [x ^ w for x in out]
        return sorted(out)

    def orthocomplement(self) -> "Subspace":
        return orthocomplement(self)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains_word(w) for w in self.basis.words)


def orthocomplement(s: Subspace) -> Subspace:
    return Subspace(s.ambient_dim, nullspace(s.basis))
