"""Open ZX diagrams with phases in {0, pi} and an exact global scalar.

A diagram is an undirected multigraph. Spider nodes are ``"Z"`` or ``"X"`` with
a phase bit (units of pi); boundary nodes are ``"B"`` and always have degree 1.
The ordered ``inputs``/``outputs`` lists name boundary nodes. Self-loops are
stored separately from ordinary adjacency so that degree bookkeeping stays
cheap.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .pauli import PauliOp

Z, X, B = "Z", "X", "B"
_WIRE = "W"  # transient pass-through node used while gluing


class DiagramError(ValueError):
    pass


class FormatError(ValueError):
    """Raised for malformed JSON input; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def other_colour(kind: str) -> str:
    if kind == Z:
        return X
    if kind == X:
        return Z
    raise DiagramError(f"{kind!r} is not a spider colour")


@dataclass(frozen=True)
class Scalar:
    """Exact scalar ``0`` or ``sign * 2**(half_power / 2)``."""

    sign: int = 1
    half_power: int = 0
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero:
            object.__setattr__(self, "sign", 1)
            object.__setattr__(self, "half_power", 0)
        elif self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def one(cls) -> "Scalar":
        return cls()

    @classmethod
    def zero(cls) -> "Scalar":
        return cls(is_zero=True)

    @classmethod
    def sqrt2(cls, k: int) -> "Scalar":
        return cls(1, k)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if self.is_zero or other.is_zero:
            return Scalar.zero()
        return Scalar(self.sign * other.sign, self.half_power + other.half_power)

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise ZeroDivisionError("zero scalar has no inverse")
        return Scalar(self.sign, -self.half_power)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inverse()

    def __neg__(self) -> "Scalar":
        return self if self.is_zero else Scalar(-self.sign, self.half_power)

    def __float__(self) -> float:
        return 0.0 if self.is_zero else self.sign * 2.0 ** (self.half_power / 2)

    def to_dict(self) -> dict:
        return {"zero": self.is_zero, "sign": self.sign, "half_power": self.half_power}

    @classmethod
    def from_dict(cls, data, field: str = "scalar") -> "Scalar":
        if not isinstance(data, dict):
            raise FormatError(field, "expected an object")
        zero = data.get("zero", False)
        sign = data.get("sign", 1)
        hp = data.get("half_power", 0)
        if not isinstance(zero, bool):
            raise FormatError(f"{field}.zero", "expected a boolean")
        if sign not in (1, -1) or isinstance(sign, bool):
            raise FormatError(f"{field}.sign", "expected 1 or -1")
        if not isinstance(hp, int) or isinstance(hp, bool):
            raise FormatError(f"{field}.half_power", "expected an integer")
        return cls(sign, hp, zero)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Scalar(0)"
        return f"Scalar({'-' if self.sign < 0 else ''}2^({self.half_power}/2))"


class Diagram:
    def __init__(self):
        self.kinds: dict[int, str] = {}
        self.phases: dict[int, int] = {}
        self.adj: dict[int, Counter] = {}
        self.loops: Counter = Counter()
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self.scalar = Scalar.one()
        self._next = 0

    # -- construction -------------------------------------------------------

    def add_node(self, kind: str, phase: int = 0, node_id: Optional[int] = None) -> int:
        if kind not in (Z, X, B, _WIRE):
            raise DiagramError(f"unknown node kind {kind!r}")
        if node_id is None:
            node_id = self._next
        if node_id in self.kinds:
            raise DiagramError(f"duplicate node id {node_id}")
        self._next = max(self._next, node_id + 1)
        self.kinds[node_id] = kind
        self.phases[node_id] = phase % 2
        self.adj[node_id] = Counter()
        return node_id

    def add_spider(self, kind: str, phase: int = 0) -> int:
        if kind not in (Z, X):
            raise DiagramError(f"{kind!r} is not a spider colour")
        return self.add_node(kind, phase)

    def add_input(self) -> int:
        b = self.add_node(B)
        self.inputs.append(b)
        return b

    def add_output(self) -> int:
        b = self.add_node(B)
        self.outputs.append(b)
        return b

    def add_edge(self, u: int, v: int, count: int = 1):
        if u not in self.kinds or v not in self.kinds:
            raise DiagramError(f"edge ({u}, {v}) references a missing node")
        if u == v:
            self.loops[u] += count
        else:
            self.adj[u][v] += count
            self.adj[v][u] += count

    def remove_edge(self, u: int, v: int, count: int = 1):
        if u == v:
            if self.loops[u] < count:
                raise DiagramError(f"no self-loop at {u}")
            self.loops[u] -= count
            if not self.loops[u]:
                del self.loops[u]
            return
        if self.adj[u][v] < count:
            raise DiagramError(f"no edge ({u}, {v})")
        for a, b in ((u, v), (v, u)):
            self.adj[a][b] -= count
            if not self.adj[a][b]:
                del self.adj[a][b]

    def remove_node(self, n: int):
        for m in list(self.adj[n]):
            self.remove_edge(n, m, self.adj[n][m])
        self.loops.pop(n, None)
        del self.adj[n], self.kinds[n], self.phases[n]

    def multiply_scalar(self, s: Scalar):
        self.scalar = self.scalar * s

    # -- queries ------------------------------------------------------------

    def nodes(self) -> list[int]:
        return sorted(self.kinds)

    def spiders(self) -> list[int]:
        return sorted(n for n, k in self.kinds.items() if k in (Z, X))

    def is_spider(self, n: int) -> bool:
        return self.kinds.get(n) in (Z, X)

    def is_boundary(self, n: int) -> bool:
        return self.kinds.get(n) == B

    def neighbors(self, n: int) -> list[int]:
        return sorted(self.adj[n])

    def multiplicity(self, u: int, v: int) -> int:
        return self.loops[u] if u == v else self.adj[u][v]

    def degree(self, n: int) -> int:
        return sum(self.adj[n].values()) + 2 * self.loops[n]

    def legs(self, n: int) -> list[int]:
        """Non-loop neighbours listed with multiplicity, ascending."""
        return sorted(self.adj[n].elements())

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in sorted(self.adj):
            for v, c in sorted(self.adj[u].items()):
                if u < v:
                    out += [(u, v)] * c
            out += [(u, u)] * self.loops[u]
        return out

    def num_edges(self) -> int:
        return len(self.edges())

    def is_interior(self, n: int) -> bool:
        return not any(self.kinds[m] == B for m in self.adj[n])

    def boundary_neighbor(self, b: int) -> int:
        (m,) = self.adj[b]
        return m

    def phase_free(self) -> bool:
        return all(self.phases[n] == 0 for n in self.spiders())

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    def validate(self):
        bset = set(self.inputs) | set(self.outputs)
        if len(bset) != len(self.inputs) + len(self.outputs):
            raise DiagramError("a boundary node is listed twice")
        for n, k in self.kinds.items():
            if k == B:
                if n not in bset:
                    raise DiagramError(f"boundary node {n} is not an input or output")
                if self.degree(n) != 1:
                    raise DiagramError(f"boundary node {n} has degree {self.degree(n)}, expected 1")
            elif k == _WIRE:
                raise DiagramError(f"unresolved wire node {n}")
        for n in bset:
            if self.kinds.get(n) != B:
                raise DiagramError(f"boundary entry {n} is not a boundary node")

    def copy(self) -> "Diagram":
        d = Diagram()
        d.kinds = dict(self.kinds)
        d.phases = dict(self.phases)
        d.adj = {n: Counter(c) for n, c in self.adj.items()}
        d.loops = Counter(self.loops)
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d.scalar = self.scalar
        d._next = self._next
        return d

    def relabel(self, mapping: Optional[dict[int, int]] = None) -> "Diagram":
        """Copy with node ids renamed (default: consecutive ids in sorted order)."""
        if mapping is None:
            mapping = {n: i for i, n in enumerate(self.nodes())}
        d = Diagram()
        for n in self.nodes():
            d.add_node(self.kinds[n], self.phases[n], mapping[n])
        for u, v in self.edges():
            d.add_edge(mapping[u], mapping[v])
        d.inputs = [mapping[b] for b in self.inputs]
        d.outputs = [mapping[b] for b in self.outputs]
        d.scalar = self.scalar
        return d

    def __repr__(self) -> str:
        counts = Counter(self.kinds[n] for n in self.spiders())
        return (f"Diagram({self.n_inputs}->{self.n_outputs}, Z={counts[Z]}, X={counts[X]}, "
                f"edges={self.num_edges()}, scalar={self.scalar!r})")

    # -- serialisation ------------------------------------------------------

    def to_dict(self) -> dict:
        nodes = []
        for n in self.nodes():
            entry = {"id": n, "kind": self.kinds[n]}
            if self.kinds[n] != B:
                entry["phase"] = self.phases[n]
            nodes.append(entry)
        return {
            "scalar": self.scalar.to_dict(),
            "nodes": nodes,
            "edges": [list(e) for e in self.edges()],
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_dict(cls, data) -> "Diagram":
        if not isinstance(data, dict):
            raise FormatError("diagram", "expected a JSON object")
        d = cls()
        d.scalar = Scalar.from_dict(data.get("scalar", {}))
        nodes = data.get("nodes")
        if not isinstance(nodes, list):
            raise FormatError("nodes", "expected a list")
        for i, entry in enumerate(nodes):
            if not isinstance(entry, dict):
                raise FormatError(f"nodes[{i}]", "expected an object")
            nid, kind, phase = entry.get("id"), entry.get("kind"), entry.get("phase", 0)
            if not isinstance(nid, int) or isinstance(nid, bool):
                raise FormatError(f"nodes[{i}].id", "expected an integer")
            if kind not in (Z, X, B):
                raise FormatError(f"nodes[{i}].kind", "expected 'Z', 'X' or 'B'")
            if phase not in (0, 1) or isinstance(phase, bool):
                raise FormatError(f"nodes[{i}].phase", "expected 0 or 1")
            if nid in d.kinds:
                raise FormatError(f"nodes[{i}].id", f"duplicate id {nid}")
            d.add_node(kind, phase, nid)
        edges = data.get("edges", [])
        if not isinstance(edges, list):
            raise FormatError("edges", "expected a list")
        for i, e in enumerate(edges):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
                raise FormatError(f"edges[{i}]", "expected a pair of node ids")
            if e[0] not in d.kinds or e[1] not in d.kinds:
                raise FormatError(f"edges[{i}]", "dangling edge")
            d.add_edge(*e)
        for key in ("inputs", "outputs"):
            ids = data.get(key, [])
            if not isinstance(ids, list) or not all(isinstance(v, int) for v in ids):
                raise FormatError(key, "expected a list of node ids")
            for v in ids:
                if v not in d.kinds:
                    raise FormatError(key, f"unknown node id {v}")
            setattr(d, key, list(ids))
        try:
            d.validate()
        except DiagramError as exc:
            raise FormatError("diagram", str(exc)) from None
        return d

    def to_dot(self) -> str:
        style = {
            Z: 'shape=circle, style=filled, fillcolor="#ccffcc"',
            X: 'shape=circle, style=filled, fillcolor="#ff8888"',
            B: "shape=point",
        }
        lines = ["graph zx {"]
        for n in self.nodes():
            label = "π" if self.phases[n] else ""
            if n in self.inputs:
                label = f"in{self.inputs.index(n)}"
            elif n in self.outputs:
                label = f"out{self.outputs.index(n)}"
            extra = f', xlabel="{label}"' if self.kinds[n] == B else f', label="{label}"'
            lines.append(f"  n{n} [{style[self.kinds[n]]}{extra}];")
        for u, v in self.edges():
            lines.append(f"  n{u} -- n{v};")
        lines.append("}")
        return "\n".join(lines)


# -- builders ---------------------------------------------------------------


def build(spiders: Iterable[tuple[int, str, int]], edges: Iterable[tuple[int, int]],
          inputs: Sequence[int], outputs: Sequence[int],
          scalar: Scalar = Scalar.one()) -> Diagram:
    """Assemble a validated diagram.

    ``spiders`` holds ``(id, colour, phase)`` triples; boundary nodes are the
    ids mentioned in ``inputs``/``outputs`` and are created automatically.
    """
    d = Diagram()
    for nid, colour, phase in spiders:
        if colour not in (Z, X):
            raise DiagramError(f"spider {nid} has colour {colour!r}")
        d.add_node(colour, phase, nid)
    for b in list(inputs) + list(outputs):
        if b in d.kinds:
            raise DiagramError(f"duplicate id {b}")
        d.add_node(B, 0, b)
    for u, v in edges:
        if u not in d.kinds or v not in d.kinds:
            raise DiagramError(f"dangling edge ({u}, {v})")
        d.add_edge(u, v)
    d.inputs, d.outputs = list(inputs), list(outputs)
    d.scalar = scalar
    d.validate()
    return d


def empty() -> Diagram:
    return Diagram()


def identity(n: int = 1) -> Diagram:
    return permutation(list(range(n)))


def permutation(perm: Sequence[int]) -> Diagram:
    """Wire permutation sending input ``i`` to output ``perm[i]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DiagramError("not a permutation")
    d = Diagram()
    ins = [d.add_input() for _ in range(n)]
    outs = [d.add_output() for _ in range(n)]
    for i, p in enumerate(perm):
        d.add_edge(ins[i], outs[p])
    return d


def spider(colour: str, n_in: int, n_out: int, phase: int = 0) -> Diagram:
    d = Diagram()
    ins = [d.add_input() for _ in range(n_in)]
    s = d.add_spider(colour, phase)
    outs = [d.add_output() for _ in range(n_out)]
    for b in ins + outs:
        d.add_edge(b, s)
    return d


def cup() -> Diagram:
    d = Diagram()
    a, b = d.add_output(), d.add_output()
    d.add_edge(a, b)
    return d


def cap() -> Diagram:
    d = Diagram()
    a, b = d.add_input(), d.add_input()
    d.add_edge(a, b)
    return d


def cnot() -> Diagram:
    """CNOT (control first) as a Z copy wired into an X parity, scalar sqrt 2."""
    d = Diagram()
    c_in, t_in = d.add_input(), d.add_input()
    z, x = d.add_spider(Z), d.add_spider(X)
    c_out, t_out = d.add_output(), d.add_output()
    d.add_edge(c_in, z)
    d.add_edge(z, c_out)
    d.add_edge(z, x)
    d.add_edge(t_in, x)
    d.add_edge(x, t_out)
    d.scalar = Scalar(1, 1)
    return d


def pauli_layer(p: PauliOp) -> Diagram:
    """``p`` as a diagram: a Z(pi) gate then an X(pi) gate on each wire as needed."""
    d = Diagram()
    for q in range(p.n):
        prev = d.add_input()
        out = d.add_node(B)
        for bit, colour in (((p.z >> q) & 1, Z), ((p.x >> q) & 1, X)):
            if bit:
                g = d.add_spider(colour, 1)
                d.add_edge(prev, g)
                prev = g
        d.add_edge(prev, out)
        d.outputs.append(out)
    if p.sign < 0:
        d.scalar = Scalar(-1, 0)
    return d


# -- combinators ------------------------------------------------------------


def _absorb(target: Diagram, src: Diagram) -> dict[int, int]:
    mapping = {}
    for n in src.nodes():
        mapping[n] = target.add_node(src.kinds[n], src.phases[n])
    for u, v in src.edges():
        target.add_edge(mapping[u], mapping[v])
    target.scalar = target.scalar * src.scalar
    return mapping


def _dissolve_wires(d: Diagram):
    """Splice out every transient wire node; a closed circle contributes 2."""
    while True:
        w = next((n for n, k in d.kinds.items() if k == _WIRE), None)
        if w is None:
            return
        if d.loops[w]:
            d.remove_node(w)
            d.multiply_scalar(Scalar(1, 2))
            continue
        a, b = d.legs(w)
        d.remove_node(w)
        d.add_edge(a, b)


def compose(f: Diagram, g: Diagram) -> Diagram:
    """``g`` after ``f``: the outputs of ``f`` are plugged into the inputs of ``g``."""
    if f.n_outputs != g.n_inputs:
        raise DiagramError(f"cannot plug {f.n_outputs} outputs into {g.n_inputs} inputs")
    h = f.copy()
    mapping = _absorb(h, g)
    for o, i in zip(f.outputs, g.inputs):
        i = mapping[i]
        h.kinds[o] = h.kinds[i] = _WIRE
        h.add_edge(o, i)
    h.outputs = [mapping[b] for b in g.outputs]
    _dissolve_wires(h)
    return h


def tensor(f: Diagram, g: Diagram) -> Diagram:
    h = f.copy()
    mapping = _absorb(h, g)
    h.inputs = f.inputs + [mapping[b] for b in g.inputs]
    h.outputs = f.outputs + [mapping[b] for b in g.outputs]
    return h


def tensor_all(diagrams: Iterable[Diagram]) -> Diagram:
    out = empty()
    for d in diagrams:
        out = tensor(out, d)
    return out


def bend(d: Diagram) -> Diagram:
    """Map-state duality: every input becomes an output, placed first."""
    h = d.copy()
    h.outputs = h.inputs + h.outputs
    h.inputs = []
    return h


def unbend(d: Diagram, k: int) -> Diagram:
    """Inverse of :func:`bend`: the first ``k`` outputs become inputs."""
    if not 0 <= k <= d.n_outputs:
        raise DiagramError(f"cannot unbend {k} of {d.n_outputs} outputs")
    h = d.copy()
    h.inputs = h.inputs + h.outputs[:k]
    h.outputs = h.outputs[k:]
    return h


def adjoint(d: Diagram) -> Diagram:
    """Dagger. Spiders with phases 0 and pi are real and symmetric, so this
    just exchanges inputs and outputs."""
    h = d.copy()
    h.inputs, h.outputs = h.outputs, h.inputs
    return h


def colour_swap(d: Diagram) -> Diagram:
    h = d.copy()
    for n, k in h.kinds.items():
        if k in (Z, X):
            h.kinds[n] = other_colour(k)
    return h


def permute_outputs(d: Diagram, order: Sequence[int]) -> Diagram:
    """New output list ``[d.outputs[i] for i in order]``."""
    if sorted(order) != list(range(d.n_outputs)):
        raise DiagramError("not a permutation of the outputs")
    h = d.copy()
    h.outputs = [d.outputs[i] for i in order]
    return h


def apply_pauli(p: PauliOp, d: Diagram) -> Diagram:
    """``p`` applied to the outputs of ``d``."""
    return compose(d, pauli_layer(p))

