"""Link diagrams on a spine and the Kauffman bracket skein algebra.

A diagram runs ``passes[e]`` parallel strands along each edge.  At a vertex
the strand ends sit on the axis of a half-plane in the slot order of
:func:`lattice.layout`; above the axis come the vertex crossings (a word of
adjacent transpositions, nearest the axis first) and then a crossingless
matching of the ends.  Crossings along an edge are stored per edge, read
from the source end, and pushed into the source vertex before reduction.

Reduced crossingless diagrams without turnbacks are determined by their pass
counts, so skein elements are maps pass-count vector -> Scalar.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import schemas
from .errors import DiagramError, DimensionError, SchemaError
from .lattice import SRC, TGT, CiliatedGraph, Slot, check_coloring, layout, shuffle_swaps
from .ring import DELTA, ONE, T, TINV, ZERO, Scalar, from_json as scalar_from_json, to_json as scalar_to_json
from .tanglefun import is_admissible, triad_matching
from .tl import TLDiagram, compose_matchings, is_crossingless_matching, jones_wenzl

logger = logging.getLogger(__name__)

Crossing = tuple[int, bool]
Counts = tuple[int, ...]


@dataclass(frozen=True)
class VertexTangle:
    """Crossings (position, left strand over) from the axis upward, then the matching."""

    matching: tuple[int, ...] = ()
    crossings: tuple[Crossing, ...] = ()


def _words(passes: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple((1,) * p for p in passes)


def slots(spine: CiliatedGraph, passes: Sequence[int], v: int) -> list[Slot]:
    return layout(spine, _words(passes), v)


def _group_start(spine: CiliatedGraph, passes: Sequence[int], half_edge: tuple[int, str]) -> int:
    v = spine.vertex_of(half_edge)
    start = 0
    for h in spine.ciliation[v]:
        if h == half_edge:
            return start
        start += passes[h[0]]
    raise DiagramError(f"half-edge {half_edge} is not at vertex {v}")


@dataclass(frozen=True)
class LinkDiagram:
    spine: CiliatedGraph
    passes: tuple[int, ...]
    vertices: tuple[VertexTangle, ...]
    braids: tuple[tuple[Crossing, ...], ...] = ()
    loops: int = 0

    def __post_init__(self) -> None:
        g = self.spine
        if len(self.passes) != len(g.edges) or any(p < 0 for p in self.passes):
            raise DiagramError(f"need a non-negative pass count for each of the {len(g.edges)} edges")
        if not self.braids:
            object.__setattr__(self, "braids", tuple(() for _ in g.edges))
        if len(self.braids) != len(g.edges) or len(self.vertices) != g.vertices:
            raise DiagramError("diagram does not match its spine")
        if self.loops < 0:
            raise DiagramError("negative loop count")
        for e, word in enumerate(self.braids):
            for p, _ in word:
                if not 0 <= p < self.passes[e] - 1:
                    raise DiagramError(f"edge {e}: crossing at {p} with {self.passes[e]} passes")
        for v, tangle in enumerate(self.vertices):
            n = self.width(v)
            if len(tangle.matching) != n or not is_crossingless_matching(tangle.matching):
                raise DiagramError(f"vertex {v}: matching {tangle.matching} is not planar on {n} ends")
            for p, _ in tangle.crossings:
                if not 0 <= p < n - 1:
                    raise DiagramError(f"vertex {v}: crossing at {p} with {n} ends")

    def width(self, v: int) -> int:
        return sum(self.passes[e] for e, _ in self.spine.ciliation[v])

    def slots(self, v: int) -> list[Slot]:
        return slots(self.spine, self.passes, v)

    def vertex_crossings(self, v: int) -> tuple[Crossing, ...]:
        """Edge crossings of edges leaving v moved below the vertex's own crossings."""
        moved: list[Crossing] = []
        for e, end in self.spine.ciliation[v]:
            if end != SRC:
                continue
            offset = _group_start(self.spine, self.passes, (e, end))
            moved.extend((offset + p, not over) for p, over in reversed(self.braids[e]))
        return tuple(moved) + self.vertices[v].crossings

    def crossing_count(self) -> int:
        return sum(len(w) for w in self.braids) + sum(len(t.crossings) for t in self.vertices)

    def with_vertex_crossings(self, v: int, crossings: Sequence[Crossing]) -> "LinkDiagram":
        tangles = list(self.vertices)
        tangles[v] = VertexTangle(tangles[v].matching, tuple(crossings))
        return LinkDiagram(self.spine, self.passes, tuple(tangles), self.braids, self.loops)

    def to_json(self) -> dict[str, object]:
        def side(over: bool) -> str:
            return "over" if over else "under"

        return {
            "spine": self.spine.to_json(),
            "passes": {str(e): p for e, p in enumerate(self.passes)},
            "vertexMatchings": {
                str(v): [[i + 1, j + 1] for i, j in enumerate(t.matching) if i < j] for v, t in enumerate(self.vertices)
            },
            "braids": {str(e): [[p + 1, side(o)] for p, o in w] for e, w in enumerate(self.braids) if w},
            "vertexCrossings": {
                str(v): [[p + 1, side(o)] for p, o in t.crossings] for v, t in enumerate(self.vertices) if t.crossings
            },
            "loops": self.loops,
        }

    @classmethod
    def from_json(cls, payload: object) -> "LinkDiagram":
        model = schemas.parse_link(payload)
        spine = CiliatedGraph.from_model(model.spine)
        passes = [0] * len(spine.edges)
        for key, k in model.passes.items():
            passes[_index(key, len(spine.edges), "passes")] = k
        matchings: list[tuple[int, ...]] = []
        for v in range(spine.vertices):
            n = sum(passes[e] for e, _ in spine.ciliation[v])
            seq = [-1] * n
            for p, q in model.vertex_matchings.get(str(v), []):
                if not (1 <= p <= n and 1 <= q <= n):
                    raise SchemaError(f"vertexMatchings.{v}", f"position out of range 1..{n}")
                seq[p - 1], seq[q - 1] = q - 1, p - 1
            matchings.append(tuple(seq))
        braids = [()] * len(spine.edges)
        for key, word in model.braids.items():
            braids[_index(key, len(spine.edges), "braids")] = tuple((p - 1, s == "over") for p, s in word)
        crossings = [()] * spine.vertices
        for key, word in model.vertex_crossings.items():
            crossings[_index(key, spine.vertices, "vertexCrossings")] = tuple((p - 1, s == "over") for p, s in word)
        tangles = tuple(VertexTangle(matchings[v], crossings[v]) for v in range(spine.vertices))
        return cls(spine, tuple(passes), tangles, tuple(braids), model.loops)


def _index(key: str, bound: int, root: str) -> int:
    i = schemas.int_key(key, path=f"{root}.{key}")
    if not 0 <= i < bound:
        raise SchemaError(f"{root}.{key}", f"index out of range 0..{bound - 1}")
    return i


@dataclass(frozen=True)
class SkeinElement:
    spine: CiliatedGraph
    terms: dict[Counts, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {k: v for k, v in sorted(self.terms.items()) if v})

    @classmethod
    def empty(cls, spine: CiliatedGraph) -> "SkeinElement":
        return cls(spine, {(0,) * len(spine.edges): ONE})

    @classmethod
    def curve(cls, spine: CiliatedGraph, counts: Sequence[int], coeff: Scalar = ONE) -> "SkeinElement":
        basis_diagram(spine, counts)
        return cls(spine, {tuple(counts): coeff})

    def coefficient(self, counts: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(counts), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        if self.spine != other.spine:
            raise DimensionError("skein elements on different spines")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return SkeinElement(self.spine, out)

    def scale(self, c: Scalar) -> "SkeinElement":
        return SkeinElement(self.spine, {k: v * c for k, v in self.terms.items()})

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        return self + other.scale(-ONE)

    def __mul__(self, other: "SkeinElement") -> "SkeinElement":
        return multiply(self, other)

    def to_json(self) -> list[dict[str, object]]:
        return [{"counts": list(k), "coefficient": scalar_to_json(v)} for k, v in self.terms.items()]

    @classmethod
    def from_json(cls, spine: CiliatedGraph, payload: Iterable[Mapping[str, object]]) -> "SkeinElement":
        terms: dict[Counts, Scalar] = {}
        for n, entry in enumerate(payload):
            counts = tuple(schemas.parse_coloring(entry["counts"], root=f"terms.{n}.counts"))
            terms[counts] = terms.get(counts, ZERO) + scalar_from_json(entry["coefficient"], path=f"terms.{n}.coefficient")  # type: ignore[arg-type]
        return cls(spine, terms)


# -- reduction ----------------------------------------------------------------------


def _partner_map(spine: CiliatedGraph, passes: Sequence[int], seqs: Sequence[Sequence[int]]) -> dict[Slot, Slot]:
    partner: dict[Slot, Slot] = {}
    for v, seq in enumerate(seqs):
        ends = slots(spine, passes, v)
        for i, j in enumerate(seq):
            partner[ends[i]] = ends[j]
    return partner


def _other(end: str) -> str:
    return TGT if end == SRC else SRC


def _find_turnback(partner: Mapping[Slot, Slot]) -> Slot | None:
    for (e, k, end), (f, l, end2) in sorted(partner.items()):
        if e == f and end == end2 and l == k + 1:
            return (e, k, end)
    return None


def normalize(spine: CiliatedGraph, passes: Sequence[int], seqs: Sequence[Sequence[int]]) -> tuple[Counts, int]:
    """Remove turnbacks of a crossingless diagram; returns (pass counts, contractible loops)."""
    passes = list(passes)
    partner = _partner_map(spine, passes, seqs)
    loops = 0
    while (turn := _find_turnback(partner)) is not None:
        e, k, end = turn
        x, y = (e, k, _other(end)), (e, k + 1, _other(end))
        if partner[x] == y:
            loops += 1
        else:
            q1, q2 = partner[x], partner[y]
            partner[q1], partner[q2] = q2, q1
        for s in ((e, k, end), (e, k + 1, end), x, y):
            partner.pop(s, None)

        def shift(s: Slot) -> Slot:
            return (s[0], s[1] - 2, s[2]) if s[0] == e and s[1] > k + 1 else s

        partner = {shift(a): shift(b) for a, b in partner.items()}
        passes[e] -= 2
    return tuple(passes), loops


def _crossing_terms(crossing: Crossing) -> tuple[Scalar, Scalar]:
    """(identity coefficient, cap-cup coefficient)."""
    return (T, TINV) if crossing[1] else (TINV, T)


def _expand_vertex(matching: tuple[int, ...], crossings: Sequence[Crossing]) -> dict[tuple[int, ...], Scalar]:
    n = len(matching)
    states: dict[tuple[int, ...], Scalar] = {matching: ONE}
    for crossing in reversed(crossings):
        a, b = _crossing_terms(crossing)
        cup_cap = TLDiagram.generator(n, crossing[0] + 1).seq
        grown: dict[tuple[int, ...], Scalar] = {}
        for seq, c in states.items():
            grown[seq] = grown.get(seq, ZERO) + c * a
            smoothed, loops = compose_matchings(seq, cup_cap, n)
            grown[smoothed] = grown.get(smoothed, ZERO) + c * b * DELTA**loops
        states = {k: v for k, v in grown.items() if v}
    return states


def _combine(spine: CiliatedGraph, passes: Sequence[int], per_vertex: Sequence[Mapping[tuple[int, ...], Scalar]], loops: int) -> SkeinElement:
    out: dict[Counts, Scalar] = {}
    free = DELTA**loops
    for choice in itertools.product(*(list(m.items()) for m in per_vertex)):
        coeff = free
        for _, c in choice:
            coeff = coeff * c
        counts, extra = normalize(spine, passes, [seq for seq, _ in choice])
        out[counts] = out.get(counts, ZERO) + coeff * DELTA**extra
    return SkeinElement(spine, out)


def bracket_reduce(d: LinkDiagram) -> SkeinElement:
    """Resolve every crossing with the bracket and remove contractible loops."""
    per_vertex = [_expand_vertex(d.vertices[v].matching, d.vertex_crossings(v)) for v in range(d.spine.vertices)]
    logger.debug("bracket_reduce: %d crossings", d.crossing_count())
    return _combine(d.spine, d.passes, per_vertex, d.loops)


def _vertex_matching(spine: CiliatedGraph, counts: Sequence[int], v: int) -> tuple[int, ...]:
    sizes = [counts[e] for e, _ in spine.ciliation[v]]
    if len(sizes) > 3:
        raise DiagramError(f"vertex {v} has degree {len(sizes)}; basis diagrams need degree at most 3")
    padded = sizes + [0] * (3 - len(sizes))
    if not is_admissible(*padded):
        raise DiagramError(f"pass counts {tuple(counts)} do not close up at vertex {v}")
    return triad_matching(*padded)


def basis_diagram(spine: CiliatedGraph, counts: Sequence[int]) -> LinkDiagram:
    """The crossingless turnback-free diagram with the given pass counts."""
    counts = tuple(counts)
    if len(counts) != len(spine.edges) or any(c < 0 for c in counts):
        raise DiagramError(f"need a non-negative pass count for each of the {len(spine.edges)} edges")
    tangles = tuple(VertexTangle(_vertex_matching(spine, counts, v)) for v in range(spine.vertices))
    return LinkDiagram(spine, counts, tangles)


def _stacked_diagram(spine: CiliatedGraph, lower: Counts, upper: Counts) -> LinkDiagram:
    passes = tuple(a + b for a, b in zip(lower, upper))
    tangles = []
    for v in range(spine.vertices):
        ends = slots(spine, passes, v)
        labels = [0 if k < lower[e] else 1 for e, k, _ in ends]
        low = _vertex_matching(spine, lower, v)
        high = _vertex_matching(spine, upper, v)
        matching = low + tuple(x + len(low) for x in high)
        crossings = tuple((p, True) for p in shuffle_swaps(labels))
        tangles.append(VertexTangle(matching, crossings))
    return LinkDiagram(spine, passes, tuple(tangles))


def multiply(a: SkeinElement, b: SkeinElement) -> SkeinElement:
    """a * b with b stacked above a."""
    if a.spine != b.spine:
        raise DimensionError("skein elements on different spines")
    out = SkeinElement(a.spine)
    for ca, va in a.terms.items():
        for cb, vb in b.terms.items():
            out = out + bracket_reduce(_stacked_diagram(a.spine, ca, cb)).scale(va * vb)
    return out


def expand_coloring(spine: CiliatedGraph, coloring: Sequence[int]) -> SkeinElement:
    """Jones-Wenzl idempotents on the edges, triads at the vertices, reduced to pass counts."""
    c = check_coloring(spine, coloring)
    per_vertex = []
    for v in range(spine.vertices):
        n = sum(c[e] for e, _ in spine.ciliation[v])
        states: dict[tuple[int, ...], Scalar] = {_vertex_matching(spine, c, v): ONE}
        for e, end in spine.ciliation[v]:
            if end != SRC or c[e] < 2:
                continue
            offset = _group_start(spine, c, (e, end))
            projector = jones_wenzl(c[e]).embed(n, offset)
            grown: dict[tuple[int, ...], Scalar] = {}
            for seq, coeff in states.items():
                for diagram, w in projector.terms.items():
                    out, loops = compose_matchings(seq, diagram.seq, n)
                    grown[out] = grown.get(out, ZERO) + coeff * w * DELTA**loops
            states = {k: v for k, v in grown.items() if v}
        per_vertex.append(states)
    return _combine(spine, c, per_vertex, 0)


# -- components -----------------------------------------------------------------------------


def _vertex_pairing(d: LinkDiagram, v: int) -> list[int]:
    """Where each end is joined at v once the strands are pulled through the crossings."""
    n = d.width(v)
    up = list(range(n))  # up[i]: position reached at the top by the strand starting at i
    at = list(range(n))  # at[p]: which bottom end occupies position p
    for p, _ in d.vertex_crossings(v):
        at[p], at[p + 1] = at[p + 1], at[p]
    for p, i in enumerate(at):
        up[i] = p
    matching = d.vertices[v].matching
    return [at[matching[up[i]]] for i in range(n)]


@dataclass(frozen=True)
class Component:
    """A closed strand: its traversals (edge, strand, forward) in order."""

    steps: tuple[tuple[int, int, bool], ...]

    def word(self) -> tuple[tuple[int, int], ...]:
        return tuple((e, 1 if fwd else -1) for e, _, fwd in self.steps)


def trace_components(d: LinkDiagram) -> list[Component]:
    """Components that run along edges, each starting on its smallest strand source to target."""
    pairings = [_vertex_pairing(d, v) for v in range(d.spine.vertices)]
    ends = [d.slots(v) for v in range(d.spine.vertices)]
    index = {s: (v, i) for v in range(d.spine.vertices) for i, s in enumerate(ends[v])}
    seen: set[tuple[int, int]] = set()
    out = []
    for e, p in enumerate(d.passes):
        for k in range(p):
            if (e, k) in seen:
                continue
            steps = []
            cur, fwd = (e, k), True
            while True:
                seen.add(cur)
                steps.append((cur[0], cur[1], fwd))
                v, i = index[(cur[0], cur[1], TGT if fwd else SRC)]
                f, l, end = ends[v][pairings[v][i]]
                cur, fwd = (f, l), end == SRC
                if cur == (e, k) and fwd:
                    break
                if cur in seen:
                    raise DiagramError(f"strand ({f}, {l}) is traversed twice")
            out.append(Component(tuple(steps)))
    return out


def component_count(d: LinkDiagram) -> int:
    return len(trace_components(d)) + d.loops


def is_contractible(word: Sequence[tuple[int, int]]) -> bool:
    """Free reduction of a closed edge word, including cyclic cancellation."""
    stack: list[tuple[int, int]] = []
    for e, s in word:
        if stack and stack[-1] == (e, -s):
            stack.pop()
        else:
            stack.append((e, s))
    while len(stack) > 1 and stack[0] == (stack[-1][0], -stack[-1][1]):
        stack = stack[1:-1]
    return not stack


__all__ = [
    "Component",
    "LinkDiagram",
    "SkeinElement",
    "VertexTangle",
    "basis_diagram",
    "bracket_reduce",
    "component_count",
    "expand_coloring",
    "is_contractible",
    "multiply",
    "normalize",
    "slots",
    "trace_components",
]
