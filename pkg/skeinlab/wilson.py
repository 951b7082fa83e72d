"""Wilson operators: the maps from skeins to lattice observables.

``phi_u`` needs no orientation: strands become fundamental factors, target
ends are read through the dual identification and every cap is the pairing
mu.  ``phi`` follows an orientation: strands running against an edge are
switched with i*D, caps contract a covector with a vector (with K^2 when the
vector is on the left), and the result carries (-1)^(number of components).
The two agree up to a sign that depends on the diagram.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Sequence

from sympy.polys.matrices import DomainMatrix

from . import linalg, qsl2
from .errors import DiagramError, VerificationError
from .lattice import (
    TGT,
    CiliatedGraph,
    Observable,
    ObservableTerm,
    admissible_colorings,
    annulus,
    basis_observable,
    contract_slot,
    detector_connection,
    evaluate,
    observable_product,
    same_functional,
    unit_connection,
    zero_observable,
)
from .ring import DELTA, I, ONE, ZERO, Scalar, quantum_integer, to_json as scalar_to_json
from .skein import LinkDiagram, SkeinElement, basis_diagram, bracket_reduce, expand_coloring, multiply, trace_components
from .tanglefun import cap_functional, dual_identification, unit_check
from .tl import closure, jones_wenzl

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DMap:
    """D: V^* -> V on the fundamental factor, D(e^j) = sum_b matrix[j][b] e_b."""

    matrix: DomainMatrix

    @classmethod
    def fundamental(cls) -> "DMap":
        return cls(dual_identification(1))

    @property
    def inverse(self) -> DomainMatrix:
        return linalg.inverse(self.matrix)

    def apply(self, j: int) -> list[Scalar]:
        return linalg.rows(self.matrix)[j]

    def switch(self) -> DomainMatrix:
        """i D, the exchange applied to a strand end that runs against its edge."""
        return linalg.scale(self.matrix, I)


@dataclass(frozen=True)
class OrientedLink:
    """A diagram with one bit per traced component: True runs along its base direction."""

    diagram: LinkDiagram
    orientation: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        n = len(trace_components(self.diagram))
        if not self.orientation:
            object.__setattr__(self, "orientation", (True,) * n)
        if len(self.orientation) != n:
            raise DiagramError(f"{len(self.orientation)} orientation bits for {n} components")


def orientations(d: LinkDiagram) -> list[OrientedLink]:
    n = len(trace_components(d))
    return [OrientedLink(d, bits) for bits in itertools.product((True, False), repeat=n)]


def _words(d: LinkDiagram) -> tuple[tuple[int, ...], ...]:
    return tuple((1,) * p for p in d.passes)


def _pairs(matching: Sequence[int]) -> list[tuple[int, int]]:
    return [(p, q) for p, q in enumerate(matching) if p < q]


def _cap_product(n: int, caps: Sequence[tuple[int, int, dict[tuple[int, int], Scalar]]]) -> dict[tuple[int, ...], Scalar]:
    states: dict[tuple[int, ...], Scalar] = {(-1,) * n: ONE}
    for p, q, table in caps:
        grown: dict[tuple[int, ...], Scalar] = {}
        for key, acc in states.items():
            for (xp, xq), w in table.items():
                new = list(key)
                new[p], new[q] = xp, xq
                t = tuple(new)
                grown[t] = grown.get(t, ZERO) + acc * w
        states = grown
    return {k: v for k, v in states.items() if v}


def _require_crossingless(d: LinkDiagram) -> None:
    if d.crossing_count():
        raise DiagramError("diagram has crossings; reduce it first")


def _phi_u_diagram(d: LinkDiagram) -> Observable:
    _require_crossingless(d)
    functionals = tuple(cap_functional(d.vertices[v].matching) for v in range(d.spine.vertices))
    term = ObservableTerm(_words(d), functionals, DELTA**d.loops)
    return Observable(d.spine, (term,))


def phi_u(s: SkeinElement | LinkDiagram) -> Observable:
    """Unoriented Wilson operator, extended linearly over pass-count bases."""
    if isinstance(s, LinkDiagram):
        if not s.crossing_count():
            return _phi_u_diagram(s)
        s = bracket_reduce(s)
    out = zero_observable(s.spine)
    for counts, c in s.terms.items():
        out = out + _phi_u_diagram(basis_diagram(s.spine, counts)).scale(c)
    return out


def _slot_object(end: str, along: bool) -> tuple[str, list[list[Scalar]]]:
    """(vec or cov, coefficient rows indexed by the slot index) for a strand end."""
    eye = linalg.rows(linalg.identity(2))
    switched = linalg.rows(DMap.fundamental().switch())
    if end != TGT:
        return ("vec", eye) if along else ("cov", switched)
    return ("cov", eye) if along else ("vec", switched)


def _cap_table(left: tuple[str, list[list[Scalar]]], right: tuple[str, list[list[Scalar]]]) -> dict[tuple[int, int], Scalar]:
    k2 = [row[a] ** 2 for a, row in enumerate(linalg.rows(qsl2.rep(1).K))]
    (lk, lrows), (rk, rrows) = left, right
    if (lk, rk) == ("cov", "vec"):
        weight = [ONE, ONE]
    elif (lk, rk) == ("vec", "cov"):
        weight = k2
    else:
        raise DiagramError("a cap joins two ends with the same orientation")
    table = {}
    for xl in range(2):
        for xr in range(2):
            w = sum((lrows[xl][a] * rrows[xr][a] * weight[a] for a in range(2)), ZERO)
            if w:
                table[(xl, xr)] = w
    return table


def _phi_diagram(link: OrientedLink) -> Observable:
    d = link.diagram
    _require_crossingless(d)
    along: dict[tuple[int, int], bool] = {}
    components = trace_components(d)
    for component, bit in zip(components, link.orientation):
        for e, k, fwd in component.steps:
            along[(e, k)] = fwd if bit else not fwd
    j = linalg.rows(qsl2.pairing_matrix())
    functionals = []
    for v in range(d.spine.vertices):
        ends = d.slots(v)
        caps = []
        for p, q in _pairs(d.vertices[v].matching):
            (ep, kp, endp), (eq, kq, endq) = ends[p], ends[q]
            left = _slot_object(endp, along[(ep, kp)])
            right = _slot_object(endq, along[(eq, kq)])
            caps.append((p, q, _cap_table(left, right)))
        raw = _cap_product(len(ends), caps)
        for pos, (_, _, end) in enumerate(ends):
            if end == TGT:
                raw = contract_slot(raw, pos, j)
        functionals.append(dict(raw))
    sign = -ONE if (len(components) + d.loops) % 2 else ONE
    term = ObservableTerm(_words(d), tuple(functionals), sign * quantum_integer(2) ** d.loops)
    return Observable(d.spine, (term,))


def phi(link: OrientedLink | LinkDiagram) -> Observable:
    """Oriented Wilson operator; diagrams with crossings go through their bracket expansion."""
    d = link if isinstance(link, LinkDiagram) else link.diagram
    if d.crossing_count():
        return phi_of_skein(bracket_reduce(d))
    return _phi_diagram(link if isinstance(link, OrientedLink) else OrientedLink(d))


def phi_of_skein(s: SkeinElement) -> Observable:
    out = zero_observable(s.spine)
    for counts, c in s.terms.items():
        out = out + _phi_diagram(OrientedLink(basis_diagram(s.spine, counts))).scale(c)
    return out


def verify_sign(link: OrientedLink | LinkDiagram) -> int:
    """The sign s with phi = s * phi_u, compared on matrix coefficients."""
    if isinstance(link, LinkDiagram):
        link = OrientedLink(link)
    oriented, unoriented = phi(link), phi_u(link.diagram)
    if same_functional(oriented, unoriented):
        return 1
    if same_functional(oriented, unoriented.scale(-ONE)):
        return -1
    raise VerificationError(
        "phi is not +-phi_u on this diagram",
        {"passes": list(link.diagram.passes), "orientation": list(link.orientation)},
    )


def two_route_ratio(g: CiliatedGraph, c: Sequence[int]) -> Scalar:
    """lambda with phi_u(expand_coloring(c)) = lambda * basis_observable(c)."""
    image = phi_u(expand_coloring(g, c))
    basis = basis_observable(g, c)
    x = detector_connection(g, c)
    ratio = evaluate(image, x) / evaluate(basis, x)
    if not ratio or not same_functional(image, basis.scale(ratio)):
        raise VerificationError("phi_u of the colored element is not a multiple of its basis observable", {"coloring": list(c)})
    return ratio


def closure_routes(n: int) -> dict[str, Scalar]:
    """(-1)^n [n+1] computed three ways: TL closure, signed quantum trace, phi of the colored core."""
    g = annulus()
    colored = phi_of_skein(expand_coloring(g, (n,)))
    return {
        "tl": closure(jones_wenzl(n)),
        "quantumTrace": qsl2.quantum_trace(n, signed=True),
        "phi": evaluate(colored, unit_connection(g, n)),
    }


def homomorphism_family(g: CiliatedGraph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Ordered pairs of the nonempty basis curves that use each edge at most once."""
    curves = [c for c in admissible_colorings(g, 1) if any(c)]
    return [(a, b) for a in curves for b in curves]


def check_homomorphism(g: CiliatedGraph, a: Sequence[int], b: Sequence[int]) -> bool:
    sa, sb = SkeinElement.curve(g, a), SkeinElement.curve(g, b)
    left = phi_of_skein(multiply(sa, sb))
    right = observable_product(phi_of_skein(sa), phi_of_skein(sb))
    return same_functional(left, right)


@dataclass
class IsomorphismReport:
    max_color: int
    colorings: list[tuple[int, ...]]
    matrix: list[list[Scalar]]
    rank: int
    products: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    failed: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.colorings)

    @property
    def invertible(self) -> bool:
        return self.rank == self.dim

    @property
    def multiplicative(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict[str, Any]:
        return {
            "maxColor": self.max_color,
            "dim": self.dim,
            "rank": self.rank,
            "invertible": self.invertible,
            "colorings": [list(c) for c in self.colorings],
            "matrix": [[scalar_to_json(v) for v in row] for row in self.matrix],
            "homomorphism": {
                "checked": [[list(a), list(b)] for a, b in self.products],
                "failed": [[list(a), list(b)] for a, b in self.failed],
                "ok": self.multiplicative,
            },
        }


def verify_isomorphism(
    g: CiliatedGraph,
    max_color: int,
    products: Sequence[tuple[Sequence[int], Sequence[int]]] | None = None,
    strict: bool = True,
) -> IsomorphismReport:
    """Pair phi_u of every colored basis element with every detector and check the products.

    With ``strict`` a singular matrix or a failed product raises VerificationError;
    otherwise both are only recorded in the report.
    """
    unit_check()
    colorings = admissible_colorings(g, max_color)
    detectors = [detector_connection(g, c, max_color) for c in colorings]
    rows = []
    for c in colorings:
        image = phi_u(expand_coloring(g, c))
        rows.append([evaluate(image, x) for x in detectors])
    rank = linalg.rank(linalg.matrix(rows, len(colorings))) if colorings else 0
    logger.info("verify_isomorphism: %d colorings, rank %d", len(colorings), rank)
    if strict and rank != len(colorings):
        raise VerificationError(
            f"change-of-basis matrix has rank {rank} < {len(colorings)}",
            {"colorings": [list(c) for c in colorings]},
        )
    family = [(tuple(a), tuple(b)) for a, b in (homomorphism_family(g) if products is None else products)]
    failed = []
    for a, b in family:
        if check_homomorphism(g, a, b):
            continue
        if strict:
            raise VerificationError("phi is not multiplicative", {"product": [list(a), list(b)]})
        logger.warning("phi is not multiplicative on %s * %s", a, b)
        failed.append((a, b))
    return IsomorphismReport(max_color, colorings, rows, rank, family, failed)


__all__ = [
    "DMap",
    "IsomorphismReport",
    "OrientedLink",
    "check_homomorphism",
    "closure_routes",
    "homomorphism_family",
    "orientations",
    "phi",
    "phi_of_skein",
    "phi_u",
    "two_route_ratio",
    "verify_isomorphism",
    "verify_sign",
]
