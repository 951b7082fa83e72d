"""Temperley-Lieb diagrams, their linear combinations and Jones-Wenzl idempotents.

A matching on N boundary points is stored as an involution ``seq`` of [0, N)
without fixed points: point i is joined to point seq[i].  For a diagram on n
strands the bottom points are [0, n) from left to right and the top points are
[n, 2n) from right to left, so that reading the boundary counterclockwise turns
planarity into balanced brackets.  Closed loops evaluate to DELTA.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg
from .errors import DimensionError, SchemaError, VerificationError
from .ring import DELTA, ONE, ZERO, Scalar, from_json as scalar_from_json, quantum_integer, to_json as scalar_to_json

logger = logging.getLogger(__name__)


def is_crossingless_matching(seq: Sequence[int]) -> bool:
    """True if seq is a fixed-point free involution whose arcs nest like brackets."""
    n = len(seq)
    if sorted(seq) != list(range(n)) or any(seq[p] == p or seq[seq[p]] != p for p in range(n)):
        return False
    open_points: list[int] = []
    for p, q in enumerate(seq):
        if q > p:
            open_points.append(p)
        elif not open_points or open_points.pop() != q:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _matchings(npoints: int) -> tuple[tuple[int, ...], ...]:
    if npoints == 0:
        return ((),)
    out = []
    # point 0 pairs with an odd point; the arc splits the rest into inside and outside
    for partner in range(1, npoints, 2):
        for inside in _matchings(partner - 1):
            for outside in _matchings(npoints - partner - 1):
                out.append((partner, *(x + 1 for x in inside), 0, *(x + partner + 1 for x in outside)))
    return tuple(out)


def generate_matchings(npoints: int) -> Iterator[tuple[int, ...]]:
    """All crossingless matchings of npoints points in a row."""
    if npoints < 0 or npoints % 2:
        raise DimensionError(f"matchings need an even number of points, got {npoints}")
    yield from _matchings(npoints)


def compose_matchings(upper: Sequence[int], lower: Sequence[int], mid: int) -> tuple[tuple[int, ...], int]:
    """Stack ``upper`` on ``lower`` along ``mid`` shared points.

    Returns the resulting matching and the number of closed loops.  In the
    result the bottom points of ``lower`` come first, then the top points of
    ``upper`` (right to left).  Bottom point p of ``upper`` is glued to point
    len(lower) - 1 - p of ``lower``.
    """
    nu, nl = len(upper), len(lower)
    if not 0 <= mid <= min(nu, nl):
        raise DimensionError(f"cannot glue along {mid} points ({nu}, {nl})")
    bot = nl - mid
    result = [-1] * (nl + nu - 2 * mid)
    crossed: set[int] = set()  # glued points, in upper's numbering

    for start in range(len(result)):
        if result[start] >= 0:
            continue
        on_upper, p = (False, start) if start < bot else (True, start - bot + mid)
        while True:
            q = upper[p] if on_upper else lower[p]
            if on_upper and q >= mid:
                end = q - mid + bot
                break
            if not on_upper and q < bot:
                end = q
                break
            glued = q if on_upper else nl - 1 - q
            crossed.add(glued)
            on_upper, p = not on_upper, (nl - 1 - q)
        result[start], result[end] = end, start

    loops = 0
    for m in range(mid):
        if m in crossed:
            continue
        loops += 1
        p = m
        while p not in crossed:
            q = upper[p]
            crossed.update((p, q))
            p = nl - 1 - lower[nl - 1 - q]
    return tuple(result), loops


def insert(outer: Sequence[int], inner: Sequence[int], i: int) -> tuple[int, ...]:
    """Place ``inner`` at position i of ``outer``; outer points from i on move right."""
    k = len(inner)
    moved = [p if p < i else p + k for p in range(len(outer))]
    out = [-1] * (len(outer) + k)
    for p, q in enumerate(outer):
        out[moved[p]] = moved[q]
    for p, q in enumerate(inner):
        out[i + p] = i + q
    return tuple(out)


def trace_loops(seq: Sequence[int]) -> int:
    """Closed loops after joining each bottom point to the top point above it."""
    size = len(seq)
    seen = [False] * size
    loops = 0
    for start in range(size):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            q = seq[p]
            seen[p] = seen[q] = True
            p = size - 1 - q
    return loops


@dataclass(frozen=True, order=True)
class TLDiagram:
    n: int
    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.seq) != 2 * self.n or not is_crossingless_matching(self.seq):
            raise DimensionError(f"not a crossingless diagram on {self.n} strands: {self.seq}")

    @classmethod
    def identity(cls, n: int) -> "TLDiagram":
        return cls(n, tuple(2 * n - i - 1 for i in range(2 * n)))

    @classmethod
    def generator(cls, n: int, i: int) -> "TLDiagram":
        """e_i caps strands i and i+1 (1-based) top and bottom."""
        if not 1 <= i < n:
            raise DimensionError(f"e_{i} does not exist on {n} strands")
        k = i - 1
        seq = [2 * n - j - 1 for j in range(2 * n)]
        seq[k], seq[k + 1] = k + 1, k
        seq[2 * n - k - 1], seq[2 * n - k - 2] = 2 * n - k - 2, 2 * n - k - 1
        return cls(n, tuple(seq))

    def compose(self, lower: "TLDiagram") -> tuple["TLDiagram", int]:
        if self.n != lower.n:
            raise DimensionError(f"strand-count mismatch: {self.n} vs {lower.n}")
        seq, loops = compose_matchings(self.seq, lower.seq, self.n)
        return TLDiagram(self.n, seq), loops

    def tensor(self, right: "TLDiagram") -> "TLDiagram":
        return TLDiagram(self.n + right.n, insert(self.seq, right.seq, self.n))

    def embed(self, total: int, offset: int) -> "TLDiagram":
        """Identity strands on both sides so the diagram acts on strands offset..offset+n-1."""
        if offset < 0 or offset + self.n > total:
            raise DimensionError(f"cannot place {self.n} strands at {offset} of {total}")
        out = TLDiagram.identity(offset).tensor(self)
        return out.tensor(TLDiagram.identity(total - offset - self.n))

    def pairs(self) -> list[list[int]]:
        return [[i + 1, j + 1] for i, j in enumerate(self.seq) if i < j]

    def to_json(self) -> dict[str, object]:
        return {"n": self.n, "pairs": self.pairs()}

    @classmethod
    def from_json(cls, payload: Mapping[str, object]) -> "TLDiagram":
        try:
            n = int(payload["n"])  # type: ignore[arg-type]
            seq = [-1] * (2 * n)
            for p, q in payload["pairs"]:  # type: ignore[union-attr]
                seq[p - 1], seq[q - 1] = q - 1, p - 1
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise SchemaError("diagram", f"malformed TL diagram ({e})") from e
        return cls(n, tuple(seq))


def _clean(terms: Mapping[TLDiagram, Scalar]) -> dict[TLDiagram, Scalar]:
    return {d: c for d, c in sorted(terms.items()) if c}


@dataclass(frozen=True)
class TLElement:
    n: int
    terms: dict[TLDiagram, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for d in self.terms:
            if d.n != self.n:
                raise DimensionError(f"diagram on {d.n} strands in an element on {self.n}")
        object.__setattr__(self, "terms", _clean(self.terms))

    @classmethod
    def from_diagram(cls, d: TLDiagram, coeff: Scalar = ONE) -> "TLElement":
        return cls(d.n, {d: coeff})

    @classmethod
    def identity(cls, n: int) -> "TLElement":
        return cls.from_diagram(TLDiagram.identity(n))

    @classmethod
    def generator(cls, n: int, i: int) -> "TLElement":
        return cls.from_diagram(TLDiagram.generator(n, i))

    def coefficient(self, d: TLDiagram) -> Scalar:
        return self.terms.get(d, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TLElement") -> "TLElement":
        if self.n != other.n:
            raise DimensionError(f"strand-count mismatch: {self.n} vs {other.n}")
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, ZERO) + c
        return TLElement(self.n, out)

    def scale(self, c: Scalar) -> "TLElement":
        return TLElement(self.n, {d: c * v for d, v in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + other.scale(-ONE)

    def embed(self, total: int, offset: int) -> "TLElement":
        return TLElement(total, {d.embed(total, offset): c for d, c in self.terms.items()})

    def to_json(self) -> dict[str, object]:
        return {
            "n": self.n,
            "terms": [{"diagram": d.to_json(), "coefficient": scalar_to_json(c)} for d, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, payload: Mapping[str, object]) -> "TLElement":
        n = int(payload["n"])  # type: ignore[arg-type]
        terms: dict[TLDiagram, Scalar] = {}
        for k, entry in enumerate(payload.get("terms", [])):  # type: ignore[union-attr]
            d = TLDiagram.from_json(entry["diagram"])
            terms[d] = terms.get(d, ZERO) + scalar_from_json(entry["coefficient"], path=f"terms.{k}.coefficient")
        return cls(n, terms)


def compose(a: TLElement, b: TLElement) -> TLElement:
    """a on top of b, bilinear; each closed loop contributes DELTA."""
    if a.n != b.n:
        raise DimensionError(f"strand-count mismatch: {a.n} vs {b.n}")
    out: dict[TLDiagram, Scalar] = {}
    for up, cu in a.terms.items():
        for low, cl in b.terms.items():
            d, loops = up.compose(low)
            out[d] = out.get(d, ZERO) + cu * cl * DELTA**loops
    return TLElement(a.n, out)


def closure(a: TLElement) -> Scalar:
    total = ZERO
    for d, c in a.terms.items():
        total = total + c * DELTA ** trace_loops(d.seq)
    return total


def basis(n: int) -> list[TLDiagram]:
    return sorted(TLDiagram(n, seq) for seq in generate_matchings(2 * n))


@functools.lru_cache(maxsize=None)
def jones_wenzl(n: int) -> TLElement:
    """Wenzl recursion f_n = f' + ([n-1]/[n]) f' e_{n-1} f' with f' = f_{n-1} + one strand."""
    if n < 0:
        raise DimensionError("jones_wenzl needs n >= 0")
    if n <= 1:
        return TLElement.identity(n)
    prev = jones_wenzl(n - 1).embed(n, 0)
    middle = compose(compose(prev, TLElement.generator(n, n - 1)), prev)
    result = prev + middle.scale(quantum_integer(n - 1) / quantum_integer(n))
    logger.debug("jones_wenzl(%d): %d terms", n, len(result.terms))
    return result


def jones_wenzl_by_solver(n: int) -> TLElement:
    """The element with identity coefficient 1 killed by every cap on either side."""
    diagrams = basis(n)
    if n <= 1:
        return TLElement.identity(n)
    index = {d: k for k, d in enumerate(diagrams)}
    equations: list[list[Scalar]] = []
    for i in range(1, n):
        e = TLDiagram.generator(n, i)
        for left in (True, False):
            rows: dict[TLDiagram, list[Scalar]] = {}
            for k, d in enumerate(diagrams):
                r, loops = e.compose(d) if left else d.compose(e)
                row = rows.setdefault(r, [ZERO] * len(diagrams))
                row[k] = row[k] + DELTA**loops
            equations.extend(rows.values())
    solutions = linalg.nullspace(linalg.matrix(equations, len(diagrams)))
    if len(solutions) != 1:
        raise VerificationError(f"cap-killing system on {n} strands has a {len(solutions)}-dimensional solution space")
    vec = solutions[0]
    pivot = vec[index[TLDiagram.identity(n)]]
    return TLElement(n, {d: vec[k] / pivot for k, d in enumerate(diagrams)})


def word(n: int, indices: Iterable[int]) -> TLElement:
    """Product e_{i1} e_{i2} ... with the first index on top."""
    out = TLElement.identity(n)
    for i in indices:
        out = compose(out, TLElement.generator(n, i))
    return out
