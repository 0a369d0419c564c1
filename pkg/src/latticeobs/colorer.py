"""Edge-coloring schemes whose color sequences identify a walk.

Layout shared by the full schemes: a flat color id is

    group * group_size + (code - 1) * modulus + value

where `group` carries information about the edge's root node that
survives differencing (coefficient parities of the root's rank row,
plus ternary distance digits on undirected lattices), `code` is the
edge's orientation or axis, and `value` is the orthogonal-array entry
of the root's rank row at that code's column.

Kinds:
  colord    directed lattices, any t up to 2d
  color2    square directed 2-d lattices, t = 4, quotient/remainder blocks
  undir     undirected lattices, any t up to d
  mod3-aux  bare 3-coloring by distance to a reference corner (analysis aid)
"""

from dataclasses import dataclass
from functools import cached_property

from .gfpoly import FieldPrime, ceil_nth_root, index_to_coeffs, next_prime_above, poly_eval
from .lattice import Edge, LatticeSpec, Walk, edge_endpoints, rank, unrank, walk_edges
from .oarray import OASpec

KINDS = ("colord", "color2", "undir", "mod3-aux")

# color2 packs orientations into quotient/remainder blocks in this order:
# x-quotient, x-remainder, y-quotient, y-remainder.
_COLOR2_BLOCK_TO_CODE = (1, 3, 2, 4)
_COLOR2_CODE_TO_BLOCK = {1: 0, 3: 1, 2: 2, 4: 3}


@dataclass(frozen=True)
class SchemeParams:
    lattice: LatticeSpec
    kind: str
    sigma: FieldPrime | None
    group_count: int
    group_size: int
    origin_index: int = 0

    @cached_property
    def oa(self) -> OASpec | None:
        if self.sigma is None:
            return None
        return OASpec(self.sigma, self.lattice.t, scheme_columns(self.lattice))


def scheme_columns(spec: LatticeSpec) -> int:
    """Array columns the scheme needs: one per orientation or axis."""
    return 2 * spec.d if spec.directed else spec.d


def default_sigma(spec: LatticeSpec) -> FieldPrime:
    """Smallest workable field prime: modulus^t must cover the node count
    and every column needs its own evaluation point."""
    return next_prime_above(max(ceil_nth_root(spec.size, spec.t), scheme_columns(spec)))


def make_scheme(
    spec: LatticeSpec, kind: str, origin_index: int = 0, sigma: int | None = None
) -> SchemeParams:
    if kind not in KINDS:
        raise ValueError(f"unknown scheme kind {kind!r}")
    d, t = spec.d, spec.t
    if kind == "color2":
        if not spec.directed or d != 2 or spec.dims[0] != spec.dims[1] or t != 4:
            raise ValueError("color2 needs a square directed 2-d lattice with t=4")
        if sigma is not None:
            raise ValueError("color2 uses no field prime")
        return SchemeParams(spec, kind, None, 4, ceil_nth_root(spec.dims[0], 2))
    if kind == "mod3-aux":
        if spec.directed:
            raise ValueError("mod3-aux colors undirected lattices")
        if not 0 <= origin_index <= d:
            raise ValueError(f"origin index must be in [0, {d}]")
        if sigma is not None:
            raise ValueError("mod3-aux uses no field prime")
        return SchemeParams(spec, kind, None, 3, 1, origin_index)
    if kind == "colord" and not spec.directed:
        raise ValueError("colord needs a directed lattice")
    if kind == "undir" and spec.directed:
        raise ValueError("undir needs an undirected lattice")
    cols = scheme_columns(spec)
    p = default_sigma(spec) if sigma is None else FieldPrime(sigma)
    if p.modulus <= cols or p.modulus**t < spec.size:
        raise ValueError(f"sigma {p.modulus} too small for this lattice")
    if kind == "colord":
        return SchemeParams(spec, kind, p, 2**t, 2 * d * p.modulus)
    return SchemeParams(spec, kind, p, 2**t * 3 ** (d - t + 2), d * p.modulus)


def palette_size(params: SchemeParams) -> int:
    """Number of distinct colors the scheme can emit."""
    return params.group_count * params.group_size


def parity_group(coeffs) -> int:
    """Coefficient parities packed as bits, leading coefficient highest."""
    g = 0
    for a in coeffs:
        g = g << 1 | a & 1
    return g


def parity_bits(group: int, t: int) -> tuple[int, ...]:
    """Unpack parity_group back into one bit per coefficient."""
    return tuple(group >> (t - k) & 1 for k in range(1, t + 1))


def distance_digits(u, spec: LatticeSpec) -> tuple[int, ...]:
    """Ternary digits stored for node u on an undirected lattice.

    Digit 0 is the coordinate sum mod 3.  Digit q >= 1 is
    (sum + n_q - 2 u_q) mod 3, one more than u's distance to the corner
    with coordinate q maxed out; recover_signs compensates for the
    offset.  d - t + 2 digits in total.
    """
    s = sum(u)
    digits = [s % 3]
    for q in range(1, spec.d - spec.t + 2):
        digits.append((s + spec.dims[q - 1] - 2 * u[q - 1]) % 3)
    return tuple(digits)


def colord_assign(edge: Edge, params: SchemeParams) -> int:
    """Directed scheme: group = coefficient parities of the root's rank
    row, block = orientation code, value = array entry at that column."""
    spec = params.lattice
    p = params.sigma
    coeffs = index_to_coeffs(rank(edge.root, spec), spec.t, p)
    value = poly_eval(coeffs, edge.code, p)
    return parity_group(coeffs) * params.group_size + (edge.code - 1) * p.modulus + value


def undircolor_assign(edge: Edge, params: SchemeParams) -> int:
    """Undirected scheme: like colord with one column per axis, and the
    group extended by the root's ternary distance digits."""
    spec = params.lattice
    p = params.sigma
    coeffs = index_to_coeffs(rank(edge.root, spec), spec.t, p)
    value = poly_eval(coeffs, edge.code, p)
    digits = distance_digits(edge.root, spec)
    m2 = sum(dig * 3**q for q, dig in enumerate(digits))
    group = (m2 << spec.t) | parity_group(coeffs)
    return group * params.group_size + (edge.code - 1) * p.modulus + value


def color2_assign(edge: Edge, n: int) -> int:
    """Square directed 2-d scheme with palette 4 * ceil(sqrt(n)).

    The root's x splits as quotient/remainder by r = ceil(sqrt(n)); the
    1-up edge stores the quotient, the 1-down edge the remainder, and
    the axis-2 edges do the same for y.
    """
    r = ceil_nth_root(n, 2)
    x, y = edge.root
    axis = (edge.code - 1) % 2
    if not (0 <= x < n and 0 <= y < n) or edge.root[axis] + 1 >= n:
        raise ValueError(f"edge {edge} does not fit an n={n} square")
    if edge.code == 1:
        return x // r
    if edge.code == 3:
        return x % r + r
    if edge.code == 2:
        return y // r + 2 * r
    if edge.code == 4:
        return y % r + 3 * r
    raise ValueError(f"orientation {edge.code} undefined for d=2")


def mod3_color(edge: Edge, params: SchemeParams) -> int:
    """Distance from the edge's root to the scheme's reference corner,
    mod 3.  Corner 0 is all-zeros; corner q >= 1 has coordinate q maxed
    and the rest zero."""
    spec = params.lattice
    edge_endpoints(edge, spec)
    u = edge.root
    q = params.origin_index
    if q == 0:
        return sum(u) % 3
    return (sum(u) + spec.dims[q - 1] - 1 - 2 * u[q - 1]) % 3


def assign_color(edge: Edge, params: SchemeParams) -> int:
    """Color one edge under the scheme, validating the edge first."""
    edge_endpoints(edge, params.lattice)
    if params.kind == "colord":
        return colord_assign(edge, params)
    if params.kind == "undir":
        return undircolor_assign(edge, params)
    if params.kind == "color2":
        return color2_assign(edge, params.lattice.dims[0])
    return mod3_color(edge, params)


@dataclass(frozen=True)
class UnpackedColor:
    group: int
    code: int | None
    value: int
    parities: tuple[int, ...] | None = None
    digits: tuple[int, ...] | None = None


def color_unpack(c: int, params: SchemeParams) -> UnpackedColor:
    """Invert a flat color id back into its parts."""
    if not 0 <= c < palette_size(params):
        raise ValueError(f"color {c} outside palette of {palette_size(params)}")
    t = params.lattice.t
    if params.kind == "color2":
        block, value = divmod(c, params.group_size)
        return UnpackedColor(block, _COLOR2_BLOCK_TO_CODE[block], value)
    if params.kind == "mod3-aux":
        return UnpackedColor(c, None, c)
    group, rem = divmod(c, params.group_size)
    block, value = divmod(rem, params.sigma.modulus)
    if params.kind == "colord":
        return UnpackedColor(group, block + 1, value, parities=parity_bits(group, t))
    m2 = group >> t
    digits = []
    for _ in range(params.lattice.d - t + 2):
        m2, dig = divmod(m2, 3)
        digits.append(dig)
    return UnpackedColor(
        group,
        block + 1,
        value,
        parities=parity_bits(group & (1 << t) - 1, t),
        digits=tuple(digits),
    )


def color_walk(w: Walk, params: SchemeParams) -> tuple[int, ...]:
    """Ground-truth observation: the color of each edge w traverses."""
    return tuple(assign_color(e, params) for e, _ in walk_edges(w, params.lattice))


def lattice_edges(spec: LatticeSpec):
    """All edges, ordered by (root rank, code)."""
    codes = range(1, scheme_columns(spec) + 1)
    for r in range(spec.size):
        u = unrank(r, spec)
        for c in codes:
            axis = (c - 1) % spec.d
            if u[axis] + 1 < spec.dims[axis]:
                yield Edge(u, c)


def format_header(params: SchemeParams) -> str:
    spec = params.lattice
    dims = "x".join(str(n) for n in spec.dims)
    sig = params.sigma.modulus if params.sigma else 0
    return f"#dims={dims} directed={int(spec.directed)} t={spec.t} sigma={sig} scheme={params.kind}"


def coloring_lines(params: SchemeParams):
    """The export format: a header line, then one `coords code color`
    line per edge in (root rank, code) order."""
    yield format_header(params)
    for edge in lattice_edges(params.lattice):
        coords = ",".join(str(x) for x in edge.root)
        yield f"{coords} {edge.code} {assign_color(edge, params)}"


def parse_header(line: str) -> SchemeParams:
    """Rebuild scheme parameters from a coloring file's first line."""
    if not line.startswith("#"):
        raise ValueError("coloring file must start with a '#' header line")
    fields = dict(
        part.split("=", 1) for part in line[1:].split() if "=" in part
    )
    try:
        dims = tuple(int(n) for n in fields["dims"].split("x"))
        directed = bool(int(fields["directed"]))
        t = int(fields["t"])
        sig = int(fields["sigma"])
        kind = fields["scheme"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed coloring header: {line!r}") from exc
    spec = LatticeSpec(dims, directed, t)
    params = make_scheme(spec, kind, sigma=sig if sig else None)
    declared = params.sigma.modulus if params.sigma else 0
    if declared != sig:
        raise ValueError(f"header sigma {sig} does not match scheme {kind}")
    return params
