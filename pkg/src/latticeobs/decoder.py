"""Recover a walk's location from its edge colors alone.

The decoders never see the walk's start.  They rebuild the walk's shape
from the colors, find the lexicographically smallest visited node, solve
for that node's rank from color-value differences, place the walk
absolutely, and then recolor every edge and demand an exact match.
Anything inconsistent comes back with status "invalid"; an undirected
sequence whose traversal directions are genuinely underdetermined comes
back "ambiguous".  Reports never guess.
"""

from dataclasses import dataclass

from .colorer import SchemeParams, color_unpack, color_walk, palette_size
from .gfpoly import FieldPrime, index_to_coeffs
from .lattice import Walk, rank_difference, trace_steps, unrank, walk_nodes
from .oarray import oa_row_from_projection

OK = "ok"
AMBIGUOUS = "ambiguous"
INVALID = "invalid"


class ObservationError(ValueError):
    """The color sequence cannot come from any walk under this scheme."""


class AmbiguousObservation(ObservationError):
    """More than one walk fits the color sequence."""


@dataclass(frozen=True)
class WalkObservation:
    colors: tuple[int, ...]
    params: SchemeParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))
        if not self.colors:
            raise ValueError("observation needs at least one color")


@dataclass(frozen=True)
class DecodeReport:
    status: str
    root: tuple | None = None
    root_index: int | None = None
    current: tuple | None = None
    embedding: tuple | None = None


def recover_coef_diffs(
    ell: int, parity_a, parity_b, t: int, p: FieldPrime
) -> tuple[int, ...]:
    """Coefficient differences of two rank rows from their index gap.

    ell = index_a - index_b >= 0.  Working least-significant digit
    first, each base-modulus digit of the remaining gap is the
    coefficient difference up to one borrow of the modulus; the known
    parities pick the single candidate in (-modulus, modulus) because
    the modulus is odd.
    """
    m = p.modulus
    if m % 2 == 0:
        raise ValueError("parity recovery needs an odd modulus")
    if len(parity_a) != t or len(parity_b) != t:
        raise ValueError(f"need {t} parity bits per row")
    if ell < 0:
        raise ObservationError("rank gap must be non-negative")
    deltas = [0] * t
    for k in range(t - 1, -1, -1):
        want = parity_a[k] ^ parity_b[k]
        rem = ell % m
        delta = rem if rem % 2 == want else rem - m
        if delta <= -m:
            raise ObservationError("rank gap inconsistent with parities")
        deltas[k] = delta
        ell = (ell - delta) // m
    if ell:
        raise ObservationError("rank gap inconsistent with parities")
    return tuple(deltas)


def array_entry_diff(deltas, j: int, p: FieldPrime) -> int:
    """Column-j array-entry difference implied by coefficient diffs."""
    m = p.modulus
    acc = 0
    for dl in deltas:
        acc = (acc * j + dl) % m
    return acc


def decode(obs: WalkObservation) -> DecodeReport:
    """Dispatch on the observation's scheme kind."""
    kind = obs.params.kind
    if kind == "colord":
        return decode_directed(obs)
    if kind == "color2":
        return decode2d(obs)
    if kind == "undir":
        return decode_undirected(obs)
    raise ValueError(f"scheme {kind!r} is not decodable")


def _unpack_all(obs: WalkObservation):
    try:
        return [color_unpack(c, obs.params) for c in obs.colors]
    except ValueError:
        return None


def _place_and_verify(obs, steps, start, root_idx) -> DecodeReport:
    """Anchor the traced shape at an absolute start, recolor every edge,
    and demand an exact match with the observation."""
    params = obs.params
    walk = Walk(tuple(start), tuple(steps))
    try:
        nodes = walk_nodes(walk, params.lattice)
        recolored = color_walk(walk, params)
    except ValueError:
        return DecodeReport(INVALID)
    if recolored != obs.colors:
        return DecodeReport(INVALID)
    return DecodeReport(
        OK,
        root=nodes[root_idx],
        root_index=root_idx,
        current=nodes[-1],
        embedding=tuple(nodes),
    )


def _solve_root(obs, parts, offsets, root_idx, picks) -> tuple:
    """Solve the rank row of the walk's lexicographic minimum.

    picks: one (column, edge position, edge-root node index) per chosen
    column.  Any walk edge incident to the minimum is rooted there, so
    its parity bits describe the minimum's row.  Raises
    ObservationError when no row fits.
    """
    params = obs.params
    spec = params.lattice
    p = params.sigma
    anchor = parts[root_idx - 1] if root_idx else parts[0]
    points = []
    for column, pos, k in picks:
        part = parts[pos]
        gap = rank_difference(offsets, k, root_idx, spec)
        deltas = recover_coef_diffs(gap, part.parities, anchor.parities, spec.t, p)
        shift = array_entry_diff(deltas, column, p)
        points.append((column, (part.value - shift) % p.modulus))
    row = oa_row_from_projection(
        [c for c, _ in points], [v for _, v in points], params.oa
    )
    if row >= spec.size:
        raise ObservationError("solved rank is outside the lattice")
    coeffs = index_to_coeffs(row, spec.t, p)
    if tuple(a & 1 for a in coeffs) != tuple(anchor.parities):
        raise ObservationError("parity mismatch at the solved root")
    return row


def decode_directed(obs: WalkObservation) -> DecodeReport:
    """Decode a colord observation: any walk of dimension >= t."""
    params = obs.params
    spec = params.lattice
    if params.kind != "colord":
        raise ValueError("decode_directed reads colord observations")
    parts = _unpack_all(obs)
    if parts is None:
        return DecodeReport(INVALID)
    codes = [u.code for u in parts]
    if len(set(codes)) < spec.t:
        return DecodeReport(INVALID)
    offsets, root_idx = trace_steps(codes, spec)
    picks = []
    for code in sorted(set(codes))[: spec.t]:
        pos = codes.index(code)
        picks.append((code, pos, pos if code <= spec.d else pos + 1))
    return _finish(obs, parts, offsets, root_idx, codes, picks)


def decode_undirected(obs: WalkObservation) -> DecodeReport:
    """Decode an undir observation; ambiguous when the digit streams
    cannot fix the traversal directions (single-edge oscillations)."""
    params = obs.params
    spec = params.lattice
    if params.kind != "undir":
        raise ValueError("decode_undirected reads undir observations")
    parts = _unpack_all(obs)
    if parts is None:
        return DecodeReport(INVALID)
    try:
        signs = recover_signs(obs)
    except AmbiguousObservation:
        return DecodeReport(AMBIGUOUS)
    except ObservationError:
        return DecodeReport(INVALID)
    axes = [u.code for u in parts]
    if len(set(axes)) < spec.t:
        return DecodeReport(INVALID)
    steps = [a * s for a, s in zip(axes, signs)]
    offsets, root_idx = trace_steps(steps, spec)
    picks = []
    for axis in sorted(set(axes))[: spec.t]:
        pos = axes.index(axis)
        picks.append((axis, pos, pos if signs[pos] > 0 else pos + 1))
    return _finish(obs, parts, offsets, root_idx, steps, picks)


def _finish(obs, parts, offsets, root_idx, steps, picks) -> DecodeReport:
    spec = obs.params.lattice
    try:
        row = _solve_root(obs, parts, offsets, root_idx, picks)
    except ObservationError:
        return DecodeReport(INVALID)
    root = unrank(row, spec)
    start = tuple(
        r + a - b for r, a, b in zip(root, offsets[0], offsets[root_idx])
    )
    return _place_and_verify(obs, steps, start, root_idx)


def decode2d(obs: WalkObservation) -> DecodeReport:
    """Decode a color2 observation: a 4-dimensional walk on a square.

    Each axis needs one up/down alternation among its parallel edges;
    the up edge's color holds the shared coordinate's quotient and the
    down edge's its remainder.
    """
    params = obs.params
    spec = params.lattice
    if params.kind != "color2":
        raise ValueError("decode2d reads color2 observations")
    parts = _unpack_all(obs)
    if parts is None:
        return DecodeReport(INVALID)
    codes = [u.code for u in parts]
    if len(set(codes)) < 4:
        return DecodeReport(INVALID)
    offsets, root_idx = trace_steps(codes, spec)
    r = params.group_size
    start = []
    for axis in (0, 1):
        up, down = axis + 1, axis + 3
        prev = None
        pair = None
        for pos, code in enumerate(codes):
            if code != up and code != down:
                continue
            if prev is not None and code != prev[1]:
                pair = (prev, (pos, code))
                break
            prev = (pos, code)
        if pair is None:
            return DecodeReport(INVALID)
        (pa, ca), (pb, _) = pair
        upos, dpos = (pa, pb) if ca == up else (pb, pa)
        coord = parts[upos].value * r + parts[dpos].value
        # the up edge's root is its tail: walk node upos
        start.append(coord + offsets[0][axis] - offsets[upos][axis])
    return _place_and_verify(obs, codes, start, root_idx)


def recover_signs(obs: WalkObservation) -> list[int]:
    """Traversal direction of each step of an undir observation.

    Every color carries one distance digit per reference corner.  Each
    stream is first normalized to "the nearer endpoint's distance mod 3"
    (the stored digit sits one past it, one more again when the edge
    runs along the corner's own axis, where the lexicographic root is
    the farther endpoint).  Between consecutive edges the nearer-end
    distance then moves +1 when both traversals head away from the
    corner, -1 when both head toward it, and 0 when they oppose; the
    first unequal adjacent pair pins every direction.  A stream with no
    unequal pair says nothing, and if all streams are constant the
    observation is ambiguous.
    """
    params = obs.params
    spec = params.lattice
    if params.kind != "undir":
        raise ValueError("sign recovery reads undir scheme digits")
    parts = [color_unpack(c, params) for c in obs.colors]
    for stream in range(spec.d - spec.t + 2):
        ideals = []
        for part in parts:
            dig = part.digits[stream]
            if stream > 0:
                dig = (dig - 1 - (part.code == stream)) % 3
            ideals.append(dig)
        rel = _alternation_signs(ideals)
        if rel is None:
            continue
        if stream == 0:
            return rel
        # toward/away flips meaning on the corner's own axis
        return [-s if parts[i].code == stream else s for i, s in enumerate(rel)]
    raise AmbiguousObservation("every distance stream is constant")


def _alternation_signs(ideals) -> list[int] | None:
    """Rising(+1)/falling(-1) sense of each edge against one distance
    potential, or None when the stream is constant."""
    n = len(ideals)
    boot = next((i for i in range(n - 1) if ideals[i] != ideals[i + 1]), None)
    if boot is None:
        return None
    signs = [0] * n
    signs[boot] = signs[boot + 1] = 1 if (ideals[boot + 1] - ideals[boot]) % 3 == 1 else -1
    for i in range(boot + 1, n - 1):
        signs[i + 1] = _chain(signs[i], (ideals[i + 1] - ideals[i]) % 3)
    for i in range(boot - 1, -1, -1):
        signs[i] = _chain(signs[i + 1], (ideals[i + 1] - ideals[i]) % 3)
    return signs


def _chain(known: int, diff: int) -> int:
    """Sign of the edge adjacent to one with a known sign, given the
    normalized color difference between them (0 opposes, 1 both rise,
    2 both fall)."""
    if diff == 0:
        return -known
    need = 1 if diff == 1 else -1
    if known != need:
        raise ObservationError("distance digits fit no walk")
    return need
