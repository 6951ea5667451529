"""Seeded random diagrams, subspaces and codes for tests and self-checks."""

from __future__ import annotations

import random
from typing import Optional

from .diagram import X, Z, Diagram
from .f2 import BitMatrix, Subspace


def random_diagram(rng: random.Random, n_in: int = 1, n_out: int = 1,
                   n_spiders: int = 4, n_edges: int = 5,
                   phases: bool = True, loops: bool = True,
                   bare_wires: bool = True) -> Diagram:
    """Random connected-ish diagram; may contain parallel edges and loops."""
    d = Diagram()
    if n_spiders == 0 and (n_in + n_out) % 2:
        n_spiders = 1
    spiders = [d.add_spider(rng.choice((Z, X)), rng.randint(0, 1) if phases else 0)
               for _ in range(n_spiders)]
    ins = [d.add_input() for _ in range(n_in)]
    outs = [d.add_output() for _ in range(n_out)]
    free = ins + outs
    rng.shuffle(free)
    while free:
        b = free.pop()
        if bare_wires and free and rng.random() < 0.1:
            d.add_edge(b, free.pop())
        elif spiders:
            d.add_edge(b, rng.choice(spiders))
        else:
            d.add_edge(b, free.pop())
    for i in range(1, len(spiders)):
        if rng.random() < 0.8:
            d.add_edge(spiders[i], spiders[rng.randrange(i)])
    for _ in range(n_edges):
        if not spiders:
            break
        u, v = rng.choice(spiders), rng.choice(spiders)
        if u == v and (not loops or rng.random() < 0.7):
            continue
        d.add_edge(u, v)
    d.validate()
    return d


def random_subspace(rng: random.Random, n: int, dim: Optional[int] = None) -> Subspace:
    dim = rng.randint(0, n) if dim is None else dim
    words = [rng.getrandbits(n) if n else 0 for _ in range(dim)]
    return Subspace(n, BitMatrix(n, tuple(words)))


def random_spanning_rows(rng: random.Random, s: Subspace, extra: int = 2) -> BitMatrix:
    """A redundant, shuffled generating set of ``s``."""
    words = list(s.basis.words)
    for _ in range(extra):
        w = 0
        for b in s.basis.words:
            if rng.random() < 0.5:
                w ^= b
        words.append(w)
    for i in range(len(words)):
        for j in range(len(words)):
            if i != j and rng.random() < 0.2:
                words[i] ^= words[j]
    rng.shuffle(words)
    return BitMatrix(s.ambient_dim, tuple(words))


def _extend_basis(base: list[int], pool: list[int], n: int) -> list[int]:
    """Members of ``pool`` that extend ``base`` to a basis of their joint span."""
    chosen = []
    for w in pool:
        if BitMatrix(n, tuple(base + chosen + [w])).rank() > len(base) + len(chosen):
            chosen.append(w)
    return chosen


def random_css_code(rng: random.Random, n: int, k: int):
    """Random valid CSS code on ``n`` qubits with ``k`` paired CSS logicals."""
    from .css import CssCode, LogicalSet

    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    sx = random_subspace(rng, n, rng.randint(0, n - k))
    sz_room = sx.orthocomplement()
    sz = Subspace(n, BitMatrix(n, ()))
    while sz.dim < n - k - sx.dim:
        w = 0
        for b in sz_room.basis.words:
            if rng.random() < 0.5:
                w ^= b
        sz = Subspace.span(BitMatrix(n, sz.basis.words + (w,)))
    xs = _extend_basis(list(sx.basis.words), list(sz.orthocomplement().basis.words), n)
    zs = _extend_basis(list(sz.basis.words), list(sx.orthocomplement().basis.words), n)
    # symplectic pairing so that lx_i . lz_j = delta_ij
    lx, lz = [], []
    while xs:
        x = xs.pop(0)
        j = next(i for i, z in enumerate(zs) if bin(x & z).count("1") % 2)
        z = zs.pop(j)
        xs = [w ^ x if bin(w & z).count("1") % 2 else w for w in xs]
        zs = [w ^ z if bin(x & w).count("1") % 2 else w for w in zs]
        lx.append(x)
        lz.append(z)
    code = CssCode(n, sx.basis, sz.basis)
    return code, LogicalSet(BitMatrix(n, tuple(lx)), BitMatrix(n, tuple(lz)))
