"""Rectangular lattice graphs: ranking, edges, walks, and tracing.

Nodes are integer points u with 0 <= u[j] < dims[j].  Nodes are ordered
lexicographically; rank(u) is u's position in that order, i.e. the
mixed-radix value of its coordinates.  Every edge is identified by its
root, the lexicographically smaller endpoint, plus a code:

  directed:   code in 1..2d.  Code j ("j-up") is the edge leaving the
              root along axis j; code d+j ("j-down") is the edge
              entering the root from the node above it on axis j.
  undirected: code in 1..d, the axis the edge is parallel to.

A walk stores its start node and its step sequence: orientation codes
when directed, signed axes (+j / -j) when undirected.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

Coord = tuple[int, ...]


@dataclass(frozen=True)
class LatticeSpec:
    dims: tuple[int, ...]
    directed: bool
    t: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        if not self.dims or any(n < 2 for n in self.dims):
            raise ValueError("every axis needs length >= 2")
        limit = 2 * self.d if self.directed else self.d
        if not 1 <= self.t <= limit:
            raise ValueError(f"t must be in [1, {limit}] for this lattice")

    @property
    def d(self) -> int:
        return len(self.dims)

    @cached_property
    def size(self) -> int:
        return math.prod(self.dims)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        """Mixed-radix weights: rank changes by weights[j] per unit of u[j]."""
        w = [1] * self.d
        for j in range(self.d - 2, -1, -1):
            w[j] = w[j + 1] * self.dims[j + 1]
        return tuple(w)


@dataclass(frozen=True)
class Edge:
    root: Coord
    code: int


@dataclass(frozen=True)
class Walk:
    start: Coord
    steps: tuple[int, ...]


def in_bounds(u: Sequence[int], spec: LatticeSpec) -> bool:
    return len(u) == spec.d and all(0 <= x < n for x, n in zip(u, spec.dims))


def rank(u: Sequence[int], spec: LatticeSpec) -> int:
    """Position of node u in lexicographic order."""
    if not in_bounds(u, spec):
        raise ValueError(f"node {tuple(u)} outside lattice {spec.dims}")
    return sum(x * w for x, w in zip(u, spec.weights))


def unrank(r: int, spec: LatticeSpec) -> Coord:
    """Node at position r in lexicographic order."""
    if not 0 <= r < spec.size:
        raise ValueError(f"rank {r} outside [0, {spec.size})")
    coords = []
    for w in spec.weights:
        x, r = divmod(r, w)
        coords.append(x)
    return tuple(coords)


def edge_root(u: Sequence[int], v: Sequence[int]) -> Coord:
    """Lexicographically smaller endpoint of the edge {u, v}."""
    a, b = tuple(u), tuple(v)
    if len(a) != len(b) or sum(abs(x - y) for x, y in zip(a, b)) != 1:
        raise ValueError(f"{a} and {b} are not adjacent")
    return min(a, b)


def step_axis_sign(step: int, spec: LatticeSpec) -> tuple[int, int]:
    """Split a step code into (zero-based axis, +1 or -1)."""
    d = spec.d
    if spec.directed:
        if 1 <= step <= d:
            return step - 1, 1
        if d < step <= 2 * d:
            return step - d - 1, -1
    elif 1 <= abs(step) <= d:
        return abs(step) - 1, 1 if step > 0 else -1
    raise ValueError(f"bad step code {step} for this lattice")


def edge_axis(edge: Edge, spec: LatticeSpec) -> int:
    """Zero-based axis an edge is parallel to."""
    c = edge.code
    top = 2 * spec.d if spec.directed else spec.d
    if not 1 <= c <= top:
        raise ValueError(f"bad edge code {c} for this lattice")
    return (c - 1) % spec.d


def edge_endpoints(edge: Edge, spec: LatticeSpec) -> tuple[Coord, Coord]:
    """(root, far endpoint); validates the edge fits the lattice."""
    axis = edge_axis(edge, spec)
    root = tuple(edge.root)
    far = root[:axis] + (root[axis] + 1,) + root[axis + 1 :]
    if not in_bounds(root, spec) or not in_bounds(far, spec):
        raise ValueError(f"edge {edge} does not fit lattice {spec.dims}")
    return root, far


def apply_step(u: Sequence[int], step: int, spec: LatticeSpec) -> Coord:
    """Node reached from u by one step; errors if either end is outside."""
    axis, sign = step_axis_sign(step, spec)
    v = tuple(u[:axis]) + (u[axis] + sign,) + tuple(u[axis + 1 :])
    if not in_bounds(u, spec) or not in_bounds(v, spec):
        raise ValueError(f"step {step} leaves the lattice at {tuple(u)}")
    return v


def step_edge(u: Sequence[int], step: int, spec: LatticeSpec) -> tuple[Edge, int]:
    """Edge traversed by one step from u, and the traversal sign."""
    v = apply_step(u, step, spec)
    axis, sign = step_axis_sign(step, spec)
    root = tuple(u) if sign > 0 else v
    code = step if spec.directed else axis + 1
    return Edge(root, code), sign


def walk_nodes(w: Walk, spec: LatticeSpec) -> list[Coord]:
    if not in_bounds(w.start, spec):
        raise ValueError(f"start {w.start} outside lattice {spec.dims}")
    nodes = [tuple(w.start)]
    for s in w.steps:
        nodes.append(apply_step(nodes[-1], s, spec))
    return nodes


def walk_edges(w: Walk, spec: LatticeSpec) -> list[tuple[Edge, int]]:
    """Edges traversed by w, each with its traversal sign."""
    node = tuple(w.start)
    if not in_bounds(node, spec):
        raise ValueError(f"start {w.start} outside lattice {spec.dims}")
    out = []
    for s in w.steps:
        v = apply_step(node, s, spec)
        axis, sign = step_axis_sign(s, spec)
        code = s if spec.directed else axis + 1
        out.append((Edge(node if sign > 0 else v, code), sign))
        node = v
    return out


def walk_dimension(w: Walk, spec: LatticeSpec) -> int:
    """Distinct orientations (directed) or axes (undirected) used by w."""
    if not w.steps:
        raise ValueError("empty walk has no dimension")
    for s in w.steps:
        step_axis_sign(s, spec)
    if spec.directed:
        return len(set(w.steps))
    return len({abs(s) for s in w.steps})


def trace_steps(steps: Sequence[int], spec: LatticeSpec) -> tuple[tuple[Coord, ...], int]:
    """Node offsets relative to the start, plus the index of the
    lexicographically smallest node reached."""
    pos = (0,) * spec.d
    offsets = [pos]
    for s in steps:
        axis, sign = step_axis_sign(s, spec)
        pos = pos[:axis] + (pos[axis] + sign,) + pos[axis + 1 :]
        offsets.append(pos)
    root = min(range(len(offsets)), key=offsets.__getitem__)
    return tuple(offsets), root


def relative_trace(colors, params, signs=None) -> tuple[tuple[Coord, ...], int]:
    """Trace a color sequence without knowing where it started.

    Each color pins its edge's orientation (directed schemes) or axis
    (undirected, where one traversal sign per color must be supplied).
    Returns relative offsets and the index of the lexicographic minimum.
    """
    from . import colorer

    spec = params.lattice
    if params.kind == "mod3-aux":
        raise ValueError("a 3-coloring does not determine edge directions")
    if spec.directed:
        steps = [colorer.color_unpack(c, params).code for c in colors]
    else:
        if signs is None or len(signs) != len(colors):
            raise ValueError("undirected tracing needs one sign per color")
        steps = [
            colorer.color_unpack(c, params).code * s for c, s in zip(colors, signs)
        ]
    return trace_steps(steps, spec)


def rank_difference(offsets, i: int, j: int, spec: LatticeSpec) -> int:
    """rank(node_i) - rank(node_j), computed from relative offsets alone."""
    oi, oj = offsets[i], offsets[j]
    return sum((a - b) * w for a, b, w in zip(oi, oj, spec.weights))


def find_pairing(w: Walk, axis: int, spec: LatticeSpec) -> tuple[Edge, Edge]:
    """First adjacent sign alternation among w's axis-parallel edges,
    returned as (up edge, down edge).  Their roots share the axis
    coordinate: the walk re-crosses the same level between them."""
    target = axis - 1
    prev = None
    for edge, sign in walk_edges(w, spec):
        if edge_axis(edge, spec) != target:
            continue
        if prev is not None and sign != prev[1]:
            pe, ps = prev
            return (pe, edge) if ps > 0 else (edge, pe)
        prev = (edge, sign)
    raise ValueError(f"walk never alternates on axis {axis}")
