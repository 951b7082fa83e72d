"""Crossingless tangles to intertwiners.

A planar tangle with ``bottom`` and ``top`` boundary points uses the matching
convention of :mod:`skeinlab.tl`: bottom points [0, bottom) left to right, top
points [bottom, bottom + top) right to left.  Every strand carries color 1.
A maximum (two bottom points joined) evaluates through mu, a minimum through
eta, a through strand is the identity; closed loops give DELTA.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from sympy.polys.matrices import DomainMatrix

from . import linalg, qsl2
from .errors import DimensionError, InadmissibleError, SchemaError, VerificationError
from .ring import DELTA, I, ONE, T, ZERO, Scalar
from .tl import TLDiagram, compose_matchings, is_crossingless_matching, jones_wenzl

logger = logging.getLogger(__name__)


def _dim(colors: Sequence[int]) -> int:
    out = 1
    for m in colors:
        out *= m + 1
    return out


@dataclass(frozen=True)
class PlanarTangle:
    bottom: int
    top: int
    seq: tuple[int, ...]
    loops: int = 0

    def __post_init__(self) -> None:
        if len(self.seq) != self.bottom + self.top or not is_crossingless_matching(self.seq):
            raise DimensionError(f"not a planar tangle ({self.bottom}, {self.top}): {self.seq}")

    @classmethod
    def from_diagram(cls, d: TLDiagram) -> "PlanarTangle":
        return cls(d.n, d.n, d.seq)

    def stack(self, lower: "PlanarTangle") -> "PlanarTangle":
        """self placed on top of lower."""
        if self.bottom != lower.top:
            raise DimensionError(f"cannot stack ({self.bottom}, {self.top}) on ({lower.bottom}, {lower.top})")
        seq, loops = compose_matchings(self.seq, lower.seq, self.bottom)
        return PlanarTangle(lower.bottom, self.top, seq, self.loops + lower.loops + loops)

    def top_position(self, point: int) -> int:
        """Left-to-right position of a top boundary point."""
        return self.bottom + self.top - 1 - point

    def to_json(self) -> dict[str, object]:
        pairs = [[i + 1, j + 1] for i, j in enumerate(self.seq) if i < j]
        return {"bottom": self.bottom, "top": self.top, "pairs": pairs, "loops": self.loops}

    @classmethod
    def from_json(cls, payload: Mapping[str, object]) -> "PlanarTangle":
        try:
            bottom, top = int(payload["bottom"]), int(payload["top"])  # type: ignore[arg-type]
            seq = [-1] * (bottom + top)
            for p, q in payload["pairs"]:  # type: ignore[union-attr]
                seq[p - 1], seq[q - 1] = q - 1, p - 1
            loops = int(payload.get("loops", 0))  # type: ignore[union-attr, arg-type]
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise SchemaError("tangle", f"malformed planar tangle ({e})") from e
        return cls(bottom, top, tuple(seq), loops)


@dataclass(frozen=True)
class Intertwiner:
    source: tuple[int, ...]
    target: tuple[int, ...]
    matrix: DomainMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (_dim(self.target), _dim(self.source)):
            raise DimensionError(f"matrix {self.matrix.shape} does not fit {self.source} -> {self.target}")

    def compose(self, lower: "Intertwiner") -> "Intertwiner":
        if self.source != lower.target:
            raise DimensionError(f"cannot compose {lower.target} into {self.source}")
        return Intertwiner(lower.source, self.target, self.matrix * lower.matrix)

    def tensor(self, right: "Intertwiner") -> "Intertwiner":
        return Intertwiner(
            self.source + right.source, self.target + right.target, linalg.kron(self.matrix, right.matrix)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Intertwiner):
            return NotImplemented
        return self.source == other.source and self.target == other.target and linalg.equal(self.matrix, other.matrix)

    __hash__ = None  # type: ignore[assignment]

    def is_invariant(self, generators: Sequence[str] = qsl2.GENERATORS) -> bool:
        """T composed with the source action equals the target action composed with T."""
        for g in generators:
            src = _action(g, self.source)
            tgt = _action(g, self.target)
            if not linalg.equal(self.matrix * src, tgt * self.matrix):
                return False
        return True


def _action(generator: str, colors: Sequence[int]) -> DomainMatrix:
    if not colors:
        return linalg.matrix([[qsl2.counit(generator)]], 1)
    return qsl2.comultiply_action(generator, colors)


def identity(colors: Sequence[int]) -> Intertwiner:
    colors = tuple(colors)
    return Intertwiner(colors, colors, linalg.identity(_dim(colors)))


def mu() -> Intertwiner:
    j = linalg.rows(qsl2.pairing_matrix())
    return Intertwiner((1, 1), (), linalg.matrix([[j[0][0], j[0][1], j[1][0], j[1][1]]], 4))


def eta() -> Intertwiner:
    j = linalg.rows(qsl2.pairing_matrix())
    return Intertwiner((), (1, 1), linalg.matrix([[j[0][0]], [j[0][1]], [j[1][0]], [j[1][1]]], 1))


def _flat(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = 2 * out + b
    return out


def sparse_functor(tangle: PlanarTangle) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Scalar]:
    """Nonzero entries {(output bits, input bits): value} of functor(tangle)."""
    j = linalg.rows(qsl2.pairing_matrix())
    b, u = tangle.bottom, tangle.top
    arcs: list[tuple[str, int, int]] = []
    for p, q in enumerate(tangle.seq):
        if p > q:
            continue
        if q < b:
            arcs.append(("cap", p, q))
        elif p < b:
            arcs.append(("through", p, tangle.top_position(q)))
        else:
            x, y = sorted((tangle.top_position(p), tangle.top_position(q)))
            arcs.append(("cup", x, y))
    # mu and eta are supported on (0,1) and (1,0) only
    choices = [(0, 1), (1, 0)]
    out: dict[tuple[tuple[int, ...], tuple[int, ...]], Scalar] = {}
    loop_factor = DELTA**tangle.loops
    for assignment in itertools.product(choices, repeat=len(arcs)):
        ins, outs = [0] * b, [0] * u
        value = loop_factor
        for (kind, x, y), (v, w) in zip(arcs, assignment):
            if kind == "through":
                # the two choices put v = 0 and v = 1 on the strand once each
                ins[x] = outs[y] = v
            elif kind == "cap":
                ins[x], ins[y] = v, w
                value = value * j[v][w]
            else:
                outs[x], outs[y] = v, w
                value = value * j[v][w]
        if value:
            key = (tuple(outs), tuple(ins))
            out[key] = out.get(key, ZERO) + value
    return out


def functor(tangle: PlanarTangle) -> Intertwiner:
    b, u = tangle.bottom, tangle.top
    entries = [[ZERO] * (2**b) for _ in range(2**u)]
    for (outs, ins), value in sparse_functor(tangle).items():
        entries[_flat(outs)][_flat(ins)] = value
    return Intertwiner((1,) * b, (1,) * u, linalg.matrix(entries, 2**b))


@functools.lru_cache(maxsize=None)
def jw_image(n: int) -> Intertwiner:
    out = linalg.zeros(2**n, 2**n)
    for d, c in jones_wenzl(n).terms.items():
        out = out + linalg.scale(functor(PlanarTangle.from_diagram(d)).matrix, c)
    return Intertwiner((1,) * n, (1,) * n, out)


def is_admissible(a: int, b: int, c: int) -> bool:
    return min(a, b, c) >= 0 and (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b


def triad_matching(a: int, b: int, c: int) -> tuple[int, ...]:
    """Half-plane matching joining three consecutive groups of a, b and c points.

    a-c arcs are outermost, a-b arcs join the inner ends of a and b, b-c arcs
    join the inner ends of b and c.
    """
    if not is_admissible(a, b, c):
        raise InadmissibleError(f"inadmissible triple ({a}, {b}, {c})")
    ab, bc, ac = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    seq = [-1] * (a + b + c)

    def join(p: int, q: int) -> None:
        seq[p], seq[q] = q, p

    for k in range(ac):
        join(k, a + b + c - 1 - k)
    for k in range(ab):
        join(a - 1 - k, a + k)
    for k in range(bc):
        join(a + b - 1 - k, a + b + k)
    return tuple(seq)


@functools.lru_cache(maxsize=None)
def projected_inclusion(m: int) -> DomainMatrix:
    """JW projector composed with the inclusion of color m into 1^{(x)m}."""
    return jw_image(m).matrix * qsl2.decompose((1,) * m).inclusion(0)


@functools.lru_cache(maxsize=None)
def triad_tensor(a: int, b: int, c: int) -> dict[tuple[int, int, int], Scalar]:
    """Sparse values of the triad functional on basis vectors of V_a (x) V_b (x) V_c."""
    seq = triad_matching(a, b, c)
    caps = sparse_functor(PlanarTangle(a + b + c, 0, seq))
    pa, pb, pc = (linalg.rows(projected_inclusion(m)) for m in (a, b, c))
    out: dict[tuple[int, int, int], Scalar] = {}
    for (_, bits), value in caps.items():
        ia, ib, ic = _flat(bits[:a]), _flat(bits[a : a + b]), _flat(bits[a + b :])
        for x in range(a + 1):
            wx = pa[ia][x]
            if not wx:
                continue
            for y in range(b + 1):
                wy = pb[ib][y]
                if not wy:
                    continue
                for z in range(c + 1):
                    wz = pc[ic][z]
                    if wz:
                        key = (x, y, z)
                        out[key] = out.get(key, ZERO) + value * wx * wy * wz
    return {k: v for k, v in out.items() if v}


def triad_functional(a: int, b: int, c: int) -> Intertwiner:
    values = triad_tensor(a, b, c)
    row = [values.get(idx, ZERO) for idx in qsl2.index_tuples((a, b, c))]
    return Intertwiner((a, b, c), (), linalg.matrix([row], len(row)))


def invariant_functionals(factors: Sequence[int]) -> list[list[Scalar]]:
    """Basis of the invariant functionals on the ordered product, as coordinate rows."""
    factors = tuple(factors)
    idx = qsl2.index_tuples(factors)
    if not factors:
        return [[ONE]]
    zero_weight = [k for k, multi in enumerate(idx) if qsl2.weight(factors, multi) == 0]
    if not zero_weight:
        return []
    equations: list[list[Scalar]] = []
    for g, target in (("X", -2), ("Y", 2)):
        action = linalg.rows(qsl2.comultiply_action(g, factors))
        for col, multi in enumerate(idx):
            if qsl2.weight(factors, multi) != target:
                continue
            equations.append([action[k][col] for k in zero_weight])
    if not equations:
        kernel = [[ONE if a == b else ZERO for a in range(len(zero_weight))] for b in range(len(zero_weight))]
    else:
        kernel = linalg.nullspace(linalg.matrix(equations, len(zero_weight)))
    basis = []
    for vec in kernel:
        full = [ZERO] * len(idx)
        for pos, k in enumerate(zero_weight):
            full[k] = vec[pos]
        basis.append(full)
    return basis


@functools.lru_cache(maxsize=None)
def dual_identification(m: int) -> DomainMatrix:
    """D_m with D(e^j) = sum_b D[j][b] e_b, the intertwiner V_m^* -> V_m.

    Solved from rho(S z) D = D rho(z)^T and normalized by D(e^0) = (it)^m e_m.
    """
    n = m + 1
    equations: list[list[Scalar]] = []
    for g in ("X", "Y", "K"):
        s = linalg.rows(qsl2.antipode_matrix(g, m))
        z = linalg.rows(qsl2.rep(m).matrix(g))
        for jj in range(n):
            for c in range(n):
                row = [ZERO] * (n * n)
                for l in range(n):
                    row[l * n + c] = row[l * n + c] + s[jj][l]
                for bb in range(n):
                    row[jj * n + bb] = row[jj * n + bb] - z[c][bb]
                equations.append(row)
    kernel = linalg.nullspace(linalg.matrix(equations, n * n))
    if len(kernel) != 1:
        raise VerificationError(f"dual identification for color {m} is not unique ({len(kernel)} solutions)")
    vec = kernel[0]
    pivot = vec[m]
    if not pivot:
        raise VerificationError(f"dual identification for color {m} vanishes on e^0")
    norm = (I * T) ** m / pivot
    return linalg.matrix([[vec[jj * n + bb] * norm for bb in range(n)] for jj in range(n)], n)


@functools.lru_cache(maxsize=None)
def dual_identification_inverse(m: int) -> DomainMatrix:
    return linalg.inverse(dual_identification(m))


def cap_functional(seq: Sequence[int]) -> dict[tuple[int, ...], Scalar]:
    """mu on every arc of a half-plane matching, keyed by input bits."""
    tangle = PlanarTangle(len(seq), 0, tuple(seq))
    return {ins: v for (_, ins), v in sparse_functor(tangle).items()}


def unit_check() -> None:
    """Raise unless the cap/cup pair satisfies both zig-zag identities."""
    zig = mu().tensor(identity((1,))).compose(identity((1,)).tensor(eta()))
    zag = identity((1,)).tensor(mu()).compose(eta().tensor(identity((1,))))
    if zig != identity((1,)) or zag != identity((1,)):
        raise VerificationError("cap and cup fail the zig-zag identities")
    logger.debug("zig-zag identities hold")


__all__ = [
    "Intertwiner",
    "PlanarTangle",
    "cap_functional",
    "dual_identification",
    "dual_identification_inverse",
    "eta",
    "functor",
    "identity",
    "invariant_functionals",
    "is_admissible",
    "jw_image",
    "mu",
    "projected_inclusion",
    "sparse_functor",
    "triad_functional",
    "triad_matching",
    "triad_tensor",
    "unit_check",
]
