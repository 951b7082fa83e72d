"""Ciliated graphs, truncated connections and the observable algebra.

Each edge e carries a copy of the gauge algebra.  An observable stores, per
term, a word of colors on every edge (one color per strand running along the
edge, bottom layer first) and per vertex a functional on the ordered product
of the strand ends meeting there.  The strand ends at a vertex form its slot
layout: half-edges in ciliation order, strands 0..k-1 at a source end and
k-1..0 at a target end.  Target-end slots are stored as primal vectors and
turned into covectors with the dual identification of :mod:`tanglefun`.

Two observables are equal as functionals iff their matrix-coefficient forms
agree: the coefficients of the monomials prod_e rho_{c_e}(x_e)[k_e][l_e].
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx
from sympy.polys.matrices import DomainMatrix

from . import linalg, qsl2, schemas
from .errors import DimensionError, GraphError, InadmissibleError, SchemaError, TruncationError, VerificationError
from .qsl2 import TruncatedElement
from .ring import ONE, ZERO, Scalar, to_json as scalar_to_json
from .tanglefun import dual_identification, is_admissible, triad_tensor

logger = logging.getLogger(__name__)

SRC, TGT = "src", "tgt"
HalfEdge = tuple[int, str]
Slot = tuple[int, int, str]
Coloring = tuple[int, ...]
Words = tuple[tuple[int, ...], ...]
Functional = Mapping[tuple[int, ...], Scalar]
MCFKey = tuple[tuple[int, ...], tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class CiliatedGraph:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    ciliation: tuple[tuple[HalfEdge, ...], ...]

    def __post_init__(self) -> None:
        if self.vertices < 1:
            raise GraphError("a ciliated graph needs at least one vertex")
        for e, (s, t) in enumerate(self.edges):
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise GraphError(f"edge {e} has an endpoint outside [0, {self.vertices})")
        if len(self.ciliation) != self.vertices:
            raise GraphError(f"ciliation lists {len(self.ciliation)} vertices, expected {self.vertices}")
        seen: set[HalfEdge] = set()
        for v, order in enumerate(self.ciliation):
            for e, end in order:
                if end not in (SRC, TGT) or not 0 <= e < len(self.edges):
                    raise GraphError(f"vertex {v}: unknown half-edge ({e}, {end})")
                if (e, end) in seen:
                    raise GraphError(f"half-edge ({e}, {end}) appears twice")
                if self.vertex_of((e, end)) != v:
                    raise GraphError(f"half-edge ({e}, {end}) is listed at vertex {v}")
                seen.add((e, end))
        if len(seen) != 2 * len(self.edges):
            raise GraphError("every half-edge must appear in exactly one vertex order")
        if not nx.is_weakly_connected(self.nx_graph):
            raise GraphError("graph is not connected")

    @cached_property
    def nx_graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self.vertices))
        for e, (s, t) in enumerate(self.edges):
            g.add_edge(s, t, key=e)
        return g

    def vertex_of(self, half_edge: HalfEdge) -> int:
        e, end = half_edge
        s, t = self.edges[e]
        return s if end == SRC else t

    def degree(self, v: int) -> int:
        return len(self.ciliation[v])

    def position(self, half_edge: HalfEdge) -> int:
        return self.ciliation[self.vertex_of(half_edge)].index(half_edge)

    def cycle_rank(self) -> int:
        return len(self.edges) - self.vertices + nx.number_weakly_connected_components(self.nx_graph)

    def euler_characteristic(self) -> int:
        return self.vertices - len(self.edges)

    def faces(self) -> list[list[HalfEdge]]:
        """Boundary cycles of the ribbon surface: orbits of next-in-order after the edge flip."""

        def flip(h: HalfEdge) -> HalfEdge:
            return (h[0], TGT if h[1] == SRC else SRC)

        def rotate(h: HalfEdge) -> HalfEdge:
            order = self.ciliation[self.vertex_of(h)]
            return order[(order.index(h) + 1) % len(order)]

        remaining = [h for order in self.ciliation for h in order]
        done: set[HalfEdge] = set()
        out = []
        for start in remaining:
            if start in done:
                continue
            cycle, h = [], start
            while h not in done:
                done.add(h)
                cycle.append(h)
                h = rotate(flip(h))
            out.append(cycle)
        return out

    def boundary_components(self) -> int:
        return len(self.faces())

    def genus(self) -> int:
        return (2 - self.euler_characteristic() - self.boundary_components()) // 2

    def to_json(self) -> dict[str, object]:
        return {
            "vertices": self.vertices,
            "edges": [list(e) for e in self.edges],
            "ciliation": {str(v): [[e, end] for e, end in order] for v, order in enumerate(self.ciliation)},
        }

    @classmethod
    def from_model(cls, model: schemas.GraphModel, *, root: str = "spine") -> "CiliatedGraph":
        ciliation: list[tuple[HalfEdge, ...]] = [() for _ in range(model.vertices)]
        for key, order in model.ciliation.items():
            v = schemas.int_key(key, path=f"{root}.ciliation.{key}")
            if not 0 <= v < model.vertices:
                raise SchemaError(f"{root}.ciliation.{key}", "vertex out of range")
            ciliation[v] = tuple((e, end) for e, end in order)
        return cls(model.vertices, tuple(tuple(e) for e in model.edges), tuple(ciliation))

    @classmethod
    def from_json(cls, payload: object, *, root: str = "spine") -> "CiliatedGraph":
        return cls.from_model(schemas.parse_graph(payload, root=root), root=root)


def annulus() -> CiliatedGraph:
    """One vertex with a loop edge; its colorings are the core colored n."""
    return CiliatedGraph(1, ((0, 0),), (((0, SRC), (0, TGT)),))


def annulus_cycle() -> CiliatedGraph:
    return CiliatedGraph(2, ((0, 1), (1, 0)), (((0, SRC), (1, TGT)), ((0, TGT), (1, SRC))))


def punctured_torus() -> CiliatedGraph:
    """Theta graph with equal cyclic orders at both vertices: one boundary circle, genus 1."""
    return CiliatedGraph(
        2,
        ((0, 1), (0, 1), (0, 1)),
        (((0, SRC), (1, SRC), (2, SRC)), ((0, TGT), (1, TGT), (2, TGT))),
    )


def planar_theta() -> CiliatedGraph:
    """Theta graph embedded in the plane: the pair of pants."""
    return CiliatedGraph(
        2,
        ((0, 1), (0, 1), (0, 1)),
        (((0, SRC), (1, SRC), (2, SRC)), ((0, TGT), (2, TGT), (1, TGT))),
    )


STANDARD_SPINES = {
    "annulus": annulus,
    "annulus-cycle": annulus_cycle,
    "punctured-torus": punctured_torus,
    "planar-theta": planar_theta,
}


# -- colorings --------------------------------------------------------------


def vertex_colors(g: CiliatedGraph, c: Sequence[int], v: int) -> list[int]:
    return [c[e] for e, _ in g.ciliation[v]]


def vertex_module(g: CiliatedGraph, c: Sequence[int], v: int) -> list[tuple[int, str]]:
    """Incident factors in ciliation order; edges starting at v are primal, ending at v dual."""
    if not 0 <= v < g.vertices:
        raise GraphError(f"vertex {v} is not in the graph")
    return [(c[e], "primal" if end == SRC else "dual") for e, end in g.ciliation[v]]


def _vertex_is_admissible(colors: Sequence[int]) -> bool:
    padded = list(colors) + [0] * (3 - len(colors))
    if len(padded) > 3:
        raise GraphError(f"colored bases need vertices of degree at most 3, got {len(colors)}")
    return is_admissible(*padded)


def check_coloring(g: CiliatedGraph, c: Sequence[int]) -> Coloring:
    c = tuple(c)
    if len(c) != len(g.edges):
        raise DimensionError(f"coloring has {len(c)} entries for {len(g.edges)} edges")
    if any(m < 0 for m in c):
        raise InadmissibleError(f"negative color in {c}")
    for v in range(g.vertices):
        if not _vertex_is_admissible(vertex_colors(g, c, v)):
            raise InadmissibleError(f"coloring {c} is not admissible at vertex {v}")
    return c


def is_admissible_coloring(g: CiliatedGraph, c: Sequence[int]) -> bool:
    try:
        check_coloring(g, c)
    except InadmissibleError:
        return False
    return True


def admissible_colorings(g: CiliatedGraph, max_color: int) -> list[Coloring]:
    """All admissible colorings with colors <= max_color, lexicographic by edge index."""
    if max_color < 0:
        raise DimensionError("max_color must be non-negative")
    out = [
        c
        for c in itertools.product(range(max_color + 1), repeat=len(g.edges))
        if all(_vertex_is_admissible(vertex_colors(g, c, v)) for v in range(g.vertices))
    ]
    logger.debug("%d admissible colorings up to color %d", len(out), max_color)
    return out


# -- connections ----------------------------------------------------------------


@dataclass(frozen=True)
class Connection:
    max_color: int
    edges: tuple[TruncatedElement, ...]

    def __post_init__(self) -> None:
        for e, x in enumerate(self.edges):
            if x.max_color != self.max_color:
                raise DimensionError(f"edge {e} is truncated at {x.max_color}, expected {self.max_color}")

    def replace(self, e: int, x: TruncatedElement) -> "Connection":
        edges = list(self.edges)
        edges[e] = x
        return Connection(self.max_color, tuple(edges))

    def to_json(self) -> dict[str, object]:
        return {"maxColor": self.max_color, "edges": [x.to_json() for x in self.edges]}


def unit_connection(g: CiliatedGraph, max_color: int) -> Connection:
    unit = qsl2.unit_truncation(max_color)
    return Connection(max_color, tuple(unit for _ in g.edges))


def gauge_act(g: CiliatedGraph, v: int, generator: str, x: Connection) -> list[tuple[Scalar, Connection]]:
    """Act by a generator at v: left multiplication on edges leaving v, right by the antipode on edges entering."""
    half_edges = g.ciliation[v]
    if not half_edges:
        return [(qsl2.counit(generator), x)]
    out = []
    for term in qsl2.sweedler(generator, len(half_edges)):
        y = x
        for (e, end), z in zip(half_edges, term):
            if end == SRC:
                y = y.replace(e, qsl2.truncation((z,), x.max_color) * y.edges[e])
            else:
                y = y.replace(e, y.edges[e] * qsl2.antipode_truncation(z, x.max_color))
        out.append((ONE, y))
    return out


# -- observables ------------------------------------------------------------------


def layout(g: CiliatedGraph, words: Words, v: int) -> list[Slot]:
    out: list[Slot] = []
    for e, end in g.ciliation[v]:
        strands = range(len(words[e]))
        out.extend((e, k, end) for k in (strands if end == SRC else reversed(strands)))
    return out


def slot_colors(words: Words, slots: Iterable[Slot]) -> list[int]:
    return [words[e][k] for e, k, _ in slots]


@dataclass(frozen=True)
class ObservableTerm:
    words: Words
    functionals: tuple[Functional, ...]
    coeff: Scalar = ONE


@dataclass(frozen=True)
class Observable:
    graph: CiliatedGraph
    terms: tuple[ObservableTerm, ...]

    def __post_init__(self) -> None:
        for term in self.terms:
            if len(term.words) != len(self.graph.edges) or len(term.functionals) != self.graph.vertices:
                raise DimensionError("observable term does not match its graph")

    def scale(self, c: Scalar) -> "Observable":
        return Observable(self.graph, tuple(ObservableTerm(t.words, t.functionals, t.coeff * c) for t in self.terms))

    def __add__(self, other: "Observable") -> "Observable":
        if self.graph != other.graph:
            raise DimensionError("observables live on different graphs")
        return Observable(self.graph, self.terms + other.terms)

    def __sub__(self, other: "Observable") -> "Observable":
        return self + other.scale(-ONE)

    @cached_property
    def mcf(self) -> dict[MCFKey, Scalar]:
        total: dict[MCFKey, Scalar] = {}
        for term in self.terms:
            for key, value in _term_mcf(self.graph, term).items():
                total[key] = total.get(key, ZERO) + value
        return {k: v for k, v in sorted(total.items()) if v}

    def is_zero(self) -> bool:
        return not self.mcf

    def max_color(self) -> int:
        return max((max(colors, default=0) for colors, _ in self.mcf), default=0)

    def to_json(self) -> list[dict[str, object]]:
        return [
            {"coloring": list(colors), "indices": [list(kl) for kl in kls], "coefficient": scalar_to_json(v)}
            for (colors, kls), v in self.mcf.items()
        ]


def zero_observable(g: CiliatedGraph) -> Observable:
    return Observable(g, ())


def counit_observable(g: CiliatedGraph) -> Observable:
    term = ObservableTerm(tuple(() for _ in g.edges), tuple({(): ONE} for _ in range(g.vertices)))
    return Observable(g, (term,))


def _vertex_functional(colors: Sequence[int]) -> dict[tuple[int, ...], Scalar]:
    padded = list(colors) + [0] * (3 - len(colors))
    values = triad_tensor(*padded)
    keep = [i for i, m in enumerate(colors) if m]
    return {tuple(key[i] for i in keep): v for key, v in values.items()}


def basis_observable(g: CiliatedGraph, c: Sequence[int]) -> Observable:
    """The product over vertices of triad functionals for an admissible coloring."""
    c = check_coloring(g, c)
    words = tuple((m,) if m else () for m in c)
    functionals = tuple(_vertex_functional(vertex_colors(g, c, v)) for v in range(g.vertices))
    return Observable(g, (ObservableTerm(words, functionals),))


def contract_slot(values: Functional, pos: int, rows: Sequence[Sequence[Scalar]]) -> dict[tuple[int, ...], Scalar]:
    """new[.., j, ..] = sum_b rows[j][b] values[.., b, ..]"""
    out: dict[tuple[int, ...], Scalar] = {}
    for key, v in values.items():
        b = key[pos]
        for j, row in enumerate(rows):
            w = row[b]
            if w:
                new = key[:pos] + (j,) + key[pos + 1 :]
                out[new] = out.get(new, ZERO) + v * w
    return out


def _flat_index(idx: Sequence[int], colors: Sequence[int]) -> int:
    out = 0
    for i, m in zip(idx, colors):
        out = out * (m + 1) + i
    return out


@functools.lru_cache(maxsize=None)
def _dual_rows(m: int) -> list[list[Scalar]]:
    return linalg.rows(dual_identification(m))


@functools.lru_cache(maxsize=None)
def _inverse_columns(factors: tuple[int, ...]) -> list[list[Scalar]]:
    return [list(col) for col in zip(*qsl2.decompose(factors).inverse_rows)]


@functools.lru_cache(maxsize=None)
def _summand_of(factors: tuple[int, ...]) -> list[tuple[int, int, int]]:
    """For each decomposition coordinate: (summand, color, index within the summand)."""
    out = []
    for s, (color, _) in enumerate(qsl2.decompose(factors).summands):
        out.extend((s, color, k) for k in range(color + 1))
    return out


def _collapse_group(values: Functional, start: int, word: tuple[int, ...], end: str) -> dict[tuple[int, ...], Scalar]:
    n = len(word)
    dec = qsl2.decompose(word)
    out: dict[tuple[int, ...], Scalar] = {}
    for key, v in values.items():
        idx = key[start : start + n]
        flat = _flat_index(idx if end == SRC else idx[::-1], word)
        coords = dec.basis_rows[flat] if end == SRC else _inverse_columns(word)[flat]
        for c, w in enumerate(coords):
            if w:
                new = key[:start] + (c,) + key[start + n :]
                out[new] = out.get(new, ZERO) + v * w
    return out


def _vertex_coordinates(g: CiliatedGraph, term: ObservableTerm, v: int) -> dict[tuple[int, ...], Scalar]:
    slots = layout(g, term.words, v)
    values: Functional = term.functionals[v]
    for pos, (e, k, end) in enumerate(slots):
        if end == TGT:
            values = contract_slot(values, pos, _dual_rows(term.words[e][k]))
    starts, pos = [], 0
    for e, end in g.ciliation[v]:
        starts.append((pos, e, end))
        pos += len(term.words[e])
    for start, e, end in reversed(starts):
        values = _collapse_group(values, start, term.words[e], end)
    return dict(values)


def _term_mcf(g: CiliatedGraph, term: ObservableTerm) -> dict[MCFKey, Scalar]:
    unset = (-1, -1, -1)
    partial: dict[tuple[tuple[int, int, int], ...], Scalar] = {(unset,) * len(g.edges): term.coeff}
    for v in range(g.vertices):
        local = _vertex_coordinates(g, term, v)
        half_edges = g.ciliation[v]
        grown: dict[tuple[tuple[int, int, int], ...], Scalar] = {}
        for state, acc in partial.items():
            for key, value in local.items():
                new = list(state)
                for (e, end), c in zip(half_edges, key):
                    s, _, k = _summand_of(term.words[e])[c]
                    cur = new[e]
                    if cur[0] not in (-1, s):
                        break
                    new[e] = (s, k, cur[2]) if end == SRC else (s, cur[1], k)
                else:
                    t = tuple(new)
                    grown[t] = grown.get(t, ZERO) + acc * value
        partial = grown
    out: dict[MCFKey, Scalar] = {}
    for state, value in partial.items():
        if not value:
            continue
        colors = tuple(qsl2.decompose(w).summands[s][0] for w, (s, _, _) in zip(term.words, state))
        key = (colors, tuple((k, l) for _, k, l in state))
        out[key] = out.get(key, ZERO) + value
    return out


def evaluate(o: Observable, x: Connection) -> Scalar:
    mcf = o.mcf
    if mcf and o.max_color() > x.max_color:
        raise TruncationError(f"observable uses color {o.max_color()} beyond the truncation {x.max_color}")
    total = ZERO
    for (colors, kls), coeff in mcf.items():
        value = coeff
        for e, (m, (k, l)) in enumerate(zip(colors, kls)):
            block = x.edges[e]
            if m not in block.nonzero_blocks:
                value = ZERO
                break
            entry = block.block_rows[m][k][l]
            if not entry:
                value = ZERO
                break
            value = value * entry
        total = total + value
    return total


def evaluate_combination(o: Observable, combination: Iterable[tuple[Scalar, Connection]]) -> Scalar:
    return sum((c * evaluate(o, x) for c, x in combination), ZERO)


def _elementary_connection(key: MCFKey, max_color: int) -> Connection:
    colors, kls = key
    return Connection(
        max_color, tuple(qsl2.elementary_truncation(max_color, m, k, l) for m, (k, l) in zip(colors, kls))
    )


def detector_connection(g: CiliatedGraph, c: Sequence[int], max_color: int | None = None) -> Connection:
    """Elementary connection picking the first matrix coefficient of the basis observable of c."""
    o = basis_observable(g, c)
    top = max(c, default=0)
    if max_color is None:
        max_color = top
    if top > max_color:
        raise TruncationError(f"coloring {tuple(c)} exceeds the truncation {max_color}")
    first = next(iter(o.mcf), None)
    if first is None:
        raise VerificationError("basis observable is zero", {"coloring": list(c)})
    return _elementary_connection(first, max_color)


def spanning_connections(*observables: Observable) -> list[Connection]:
    """One elementary connection per matrix coefficient used by any of the observables."""
    keys = sorted({k for o in observables for k in o.mcf})
    top = max((max(colors, default=0) for colors, _ in keys), default=0)
    return [_elementary_connection(k, top) for k in keys]


def same_functional(a: Observable, b: Observable) -> bool:
    if a.graph != b.graph:
        return False
    return all(evaluate(a, x) == evaluate(b, x) for x in spanning_connections(a, b))


def pairing_matrix(g: CiliatedGraph, max_color: int) -> tuple[list[Coloring], DomainMatrix]:
    colorings = admissible_colorings(g, max_color)
    observables = [basis_observable(g, c) for c in colorings]
    detectors = [detector_connection(g, c, max_color) for c in colorings]
    entries = [[evaluate(o, x) for x in detectors] for o in observables]
    logger.info("pairing matrix: %d colorings up to color %d", len(colorings), max_color)
    return colorings, linalg.matrix(entries, len(colorings))


# -- product --------------------------------------------------------------------------


def shuffle_swaps(labels: Sequence[int]) -> list[int]:
    """Adjacent transpositions (by left position) that bubble-sort labels into nondecreasing order."""
    labels = list(labels)
    swaps: list[int] = []
    changed = True
    while changed:
        changed = False
        for p in range(len(labels) - 1):
            if labels[p] > labels[p + 1]:
                labels[p], labels[p + 1] = labels[p + 1], labels[p]
                swaps.append(p)
                changed = True
    return swaps


def _precompose_crossing(
    values: Functional, p: int, crossing: Sequence[Sequence[Scalar]], m_left: int, m_right: int
) -> dict[tuple[int, ...], Scalar]:
    """values keyed after the crossing (V_right (x) V_left at p, p+1), returned keyed before it."""
    out: dict[tuple[int, ...], Scalar] = {}
    for key, v in values.items():
        row = crossing[key[p] * (m_left + 1) + key[p + 1]]
        for flat, w in enumerate(row):
            if w:
                i1, i2 = divmod(flat, m_right + 1)
                new = key[:p] + (i1, i2) + key[p + 2 :]
                out[new] = out.get(new, ZERO) + v * w
    return out


def _product_functional(g: CiliatedGraph, lower: ObservableTerm, upper: ObservableTerm, words: Words, v: int) -> dict:
    slots = layout(g, words, v)
    labels = [0 if k < len(lower.words[e]) else 1 for e, k, _ in slots]
    colors = slot_colors(words, slots)
    swaps = shuffle_swaps(labels)
    states = [list(colors)]
    for p in swaps:
        cur = list(states[-1])
        cur[p], cur[p + 1] = cur[p + 1], cur[p]
        states.append(cur)
    values: Functional = {
        ka + kb: va * vb for ka, va in lower.functionals[v].items() for kb, vb in upper.functionals[v].items()
    }
    for step in reversed(range(len(swaps))):
        p, before = swaps[step], states[step]
        crossing = linalg.rows(qsl2.cabled_braiding(before[p], before[p + 1], -1))
        values = _precompose_crossing(values, p, crossing, before[p], before[p + 1])
    return dict(values)


def observable_product(a: Observable, b: Observable) -> Observable:
    """b stacked over a; on every edge b's strands follow a's."""
    if a.graph != b.graph:
        raise DimensionError("observables live on different graphs")
    g = a.graph
    terms = []
    for ta in a.terms:
        for tb in b.terms:
            words = tuple(wa + wb for wa, wb in zip(ta.words, tb.words))
            functionals = tuple(_product_functional(g, ta, tb, words, v) for v in range(g.vertices))
            terms.append(ObservableTerm(words, functionals, ta.coeff * tb.coeff))
    return Observable(g, tuple(terms))


__all__ = [
    "CiliatedGraph",
    "Coloring",
    "Connection",
    "Observable",
    "ObservableTerm",
    "STANDARD_SPINES",
    "admissible_colorings",
    "annulus",
    "annulus_cycle",
    "basis_observable",
    "check_coloring",
    "counit_observable",
    "detector_connection",
    "evaluate",
    "evaluate_combination",
    "gauge_act",
    "is_admissible_coloring",
    "layout",
    "observable_product",
    "pairing_matrix",
    "planar_theta",
    "punctured_torus",
    "same_functional",
    "shuffle_swaps",
    "spanning_connections",
    "unit_connection",
    "vertex_module",
    "zero_observable",
]
