"""Randomised soundness checks of the rewrite rules against the dense oracle.

Each site sampler draws a random diagram, makes sure the rule has somewhere
to fire (inserting a suitable gadget if needed) and returns the diagram
together with a callable that applies the rule there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import rewrite as rw
from .diagram import Diagram, other_colour
from .generators import random_diagram
from .semantics import evaluate

Site = tuple[Diagram, Callable[[Diagram], rw.RuleApplication]]


def _base(rng: random.Random, max_open: int) -> Diagram:
    n_in = rng.randint(0, min(2, max_open))
    n_out = rng.randint(0, max_open - n_in)
    return random_diagram(rng, n_in, n_out, rng.randint(1, 7), rng.randint(0, 7))


def _random_spider_edge(rng, d: Diagram) -> Optional[tuple[int, int]]:
    edges = [(u, v) for u, v in d.edges() if u != v and d.is_spider(u)]
    return rng.choice(edges) if edges else None


def _fuse_site(rng, d):
    pairs = [(u, v) for u, v in d.edges()
             if u != v and d.is_spider(u) and d.is_spider(v) and d.kinds[u] == d.kinds[v]]
    if not pairs:
        return None
    u, v = rng.choice(pairs)
    return lambda g: rw.fuse(g, u, v)


def _strong_comp_site(rng, d):
    pairs = [(u, v) for u, v in set(d.edges())
             if u != v and d.is_spider(u) and d.is_spider(v) and d.kinds[u] != d.kinds[v]
             and d.multiplicity(u, v) == 1 and not d.loops[u] and not d.loops[v]]
    if not pairs:
        return None
    u, v = rng.choice(sorted(pairs))
    return lambda g: rw.strong_comp(g, u, v)


def _comp_site(rng, d):
    pairs = [(u, v) for u, v in set(d.edges())
             if u != v and d.is_spider(u) and d.is_spider(v) and d.kinds[u] != d.kinds[v]
             and d.multiplicity(u, v) >= 2]
    if not pairs:
        spiders = d.spiders()
        u = rng.choice(spiders)
        v = d.add_spider(other_colour(d.kinds[u]), rng.randint(0, 1))
        d.add_edge(u, v, 2)
        if rng.random() < 0.5:
            d.add_edge(v, rng.choice(spiders))
        pairs = [(u, v)]
    u, v = rng.choice(sorted(pairs))
    return lambda g: rw.comp(g, u, v)


def _pi_copy_site(rng, d):
    edge = _random_spider_edge(rng, d)
    if edge is None:
        return None
    t, w = edge
    if d.loops[t]:
        return None
    gate = d.add_spider(other_colour(d.kinds[t]), 1)
    if rng.random() < 0.7:
        d.remove_edge(t, w)
        d.add_edge(t, gate)
        d.add_edge(gate, w)
    else:
        d.add_edge(t, gate)
    return lambda g: rw.pi_copy(g, gate, t)


def _self_loop_site(rng, d):
    s = rng.choice(d.spiders())
    if not d.loops[s]:
        d.add_edge(s, s)
    return lambda g: rw.remove_self_loop(g, s)


def _identity_site(rng, d):
    edge = _random_spider_edge(rng, d)
    if edge is None:
        return None
    u, v = edge
    s = rw.insert_identity(d, u, v, rng.choice(("Z", "X")))
    return lambda g: rw.remove_identity(g, s)


SAMPLERS = {
    "Fuse": _fuse_site,
    "StrongComp": _strong_comp_site,
    "Comp": _comp_site,
    "PiCopy": _pi_copy_site,
    "SelfLoop": _self_loop_site,
    "Identity": _identity_site,
}


@dataclass
class RuleReport:
    rule: str
    applied: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def sample_site(rule: str, rng: random.Random, max_open: int = 5) -> Site:
    sampler = SAMPLERS[rule]
    while True:
        d = _base(rng, max_open)
        if not d.spiders():
            continue
        apply = sampler(rng, d)
        if apply is not None:
            d.validate()
            return d, apply


def check_rule(rule: str, rng: random.Random, trials: int = 100, max_open: int = 5) -> RuleReport:
    """Apply ``rule`` at ``trials`` random sites; count exact semantic mismatches."""
    failures = 0
    for _ in range(trials):
        d, apply = sample_site(rule, rng, max_open)
        before = evaluate(d)
        g = d.copy()
        apply(g)
        g.validate()
        if evaluate(g) != before:
            failures += 1
    return RuleReport(rule, trials, failures)


def check_normalize(rng: random.Random, trials: int = 50, max_open: int = 6) -> int:
    """Number of random phase-free diagrams whose normal form changes the semantics."""
    bad = 0
    for _ in range(trials):
        n_in = rng.randint(0, 2)
        d = random_diagram(rng, n_in, rng.randint(0, max_open - n_in), rng.randint(0, 12),
                           rng.randint(0, 10), phases=False)
        for form in ("zx", "xz"):
            nf = rw.normalize(d, form)
            if evaluate(nf.to_diagram()) != evaluate(d):
                bad += 1
    return bad


