"""Representations of quantum SL2 and the truncated matrix model.

Color m is the (m+1)-dimensional irreducible representation in the weight
basis v_0..v_m with K v_k = t^{m-2k} v_k, Y v_k = v_{k+1} and
X v_k = [k][m-k+1] v_{k-1}.  Tensor products are ordered; basis vectors of a
product are multi-indices flattened row-major (first factor most significant),
which is the convention of :func:`linalg.kron`.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from sympy.polys.matrices import DomainMatrix

from . import linalg
from .errors import CoproductError, DimensionError, TruncationError
from .ring import I, ONE, T, TINV, ZERO, Scalar, quantum_integer, to_json as scalar_to_json

logger = logging.getLogger(__name__)

GENERATORS = ("X", "Y", "K", "Kinv")


@dataclass(frozen=True)
class Rep:
    m: int
    X: DomainMatrix
    Y: DomainMatrix
    K: DomainMatrix
    Kinv: DomainMatrix

    @property
    def dim(self) -> int:
        return self.m + 1

    def matrix(self, generator: str) -> DomainMatrix:
        if generator not in GENERATORS:
            _bad_generator(generator)
        return getattr(self, generator)


def _bad_generator(generator: str) -> DomainMatrix:
    raise ValueError(f"unknown generator {generator!r}; expected one of {GENERATORS}")


@functools.lru_cache(maxsize=None)
def rep(m: int) -> Rep:
    if m < 0:
        raise DimensionError("colors are non-negative")
    n = m + 1
    x = [[ZERO] * n for _ in range(n)]
    y = [[ZERO] * n for _ in range(n)]
    for k in range(1, n):
        x[k - 1][k] = quantum_integer(k) * quantum_integer(m - k + 1)
        y[k][k - 1] = ONE
    weights = [T ** (m - 2 * k) for k in range(n)]
    return Rep(
        m=m,
        X=linalg.matrix(x, n),
        Y=linalg.matrix(y, n),
        K=linalg.diagonal(weights),
        Kinv=linalg.diagonal([ONE / w for w in weights]),
    )


def apply_word(word: Sequence[str], v: Sequence[Scalar], m: int | None = None) -> list[Scalar]:
    """Act on v by the product of the generators in ``word``; the rightmost acts first."""
    if m is None:
        m = len(v) - 1
    if len(v) != m + 1:
        raise DimensionError(f"vector of length {len(v)} is not in color {m}")
    r = rep(m)
    out = list(v)
    for g in reversed(word):
        out = linalg.apply(r.matrix(g), out)
    return out


def index_tuples(factors: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(m + 1) for m in factors)))


def weight(factors: Sequence[int], idx: Sequence[int]) -> int:
    return sum(m - 2 * i for m, i in zip(factors, idx))


# -- Hopf structure ---------------------------------------------------------


@dataclass(frozen=True)
class CoproductConvention:
    """Delta(E) = E (x) right + left (x) E for E in {X, Y}; K is grouplike."""

    name: str
    left: str
    right: str


CANDIDATES = (
    CoproductConvention("K-inverse left", left="Kinv", right="K"),
    CoproductConvention("K left", left="K", right="Kinv"),
)


def pairing_matrix() -> DomainMatrix:
    """J[a][b] = mu(v_a (x) v_b) = coefficient of v_a (x) v_b in eta(1)."""
    return linalg.matrix([[ZERO, I * T], [-I * TINV, ZERO]], 2)


def _cap_row() -> DomainMatrix:
    j = linalg.rows(pairing_matrix())
    return linalg.matrix([[j[0][0], j[0][1], j[1][0], j[1][1]]], 4)


def _cup_column() -> DomainMatrix:
    return _cap_row().transpose()


def sweedler(generator: str, k: int, convention: CoproductConvention | None = None) -> list[tuple[str, ...]]:
    """Terms of the (k-1)-fold coproduct of a generator, each a word per tensor slot."""
    convention = convention or adopted_coproduct()
    if k < 1:
        raise DimensionError("sweedler terms need at least one factor")
    if generator in ("K", "Kinv"):
        return [(generator,) * k]
    if generator not in ("X", "Y"):
        _bad_generator(generator)
    return [
        (convention.left,) * a + (generator,) + (convention.right,) * (k - 1 - a) for a in range(k)
    ]


def comultiply_action(
    generator: str, factors: Sequence[int], convention: CoproductConvention | None = None
) -> DomainMatrix:
    if not factors:
        raise DimensionError("comultiply_action needs at least one factor")
    convention = convention or adopted_coproduct()
    total: DomainMatrix | None = None
    for term in sweedler(generator, len(factors), convention):
        piece = linalg.kron_all([rep(m).matrix(g) for m, g in zip(factors, term)])
        total = piece if total is None else total + piece
    assert total is not None
    return total


def counit(generator: str) -> Scalar:
    if generator in ("K", "Kinv"):
        return ONE
    if generator in ("X", "Y"):
        return ZERO
    return _bad_generator(generator)


def _inverse_name(generator: str) -> str:
    return {"K": "Kinv", "Kinv": "K"}[generator]


def antipode_matrix(generator: str, m: int, convention: CoproductConvention | None = None) -> DomainMatrix:
    """rho_m(S(Z)); S(K) = K^-1 and S(E) = -left^-1 E right^-1 from the antipode axiom."""
    convention = convention or adopted_coproduct()
    r = rep(m)
    if generator in ("K", "Kinv"):
        return r.matrix(_inverse_name(generator))
    if generator not in ("X", "Y"):
        _bad_generator(generator)
    left_inv = r.matrix(_inverse_name(convention.left))
    right_inv = r.matrix(_inverse_name(convention.right))
    return linalg.scale(left_inv * r.matrix(generator) * right_inv, -ONE)


def _pairing_is_invariant(convention: CoproductConvention) -> bool:
    cap, cup = _cap_row(), _cup_column()
    for g in GENERATORS:
        action = comultiply_action(g, (1, 1), convention)
        eps = counit(g)
        if not linalg.equal(cap * action, linalg.scale(cap, eps)):
            return False
        if not linalg.equal(action * cup, linalg.scale(cup, eps)):
            return False
    return True


@functools.lru_cache(maxsize=None)
def adopted_coproduct() -> CoproductConvention:
    """The first candidate under which the cap and cup are intertwiners."""
    for convention in CANDIDATES:
        if _pairing_is_invariant(convention):
            logger.info("adopted coproduct convention: %s", convention.name)
            return convention
        logger.info("coproduct candidate rejected: %s", convention.name)
    raise CoproductError("no coproduct candidate makes the cap and cup intertwiners")


def fundamental_braiding(inverse: bool = False) -> DomainMatrix:
    """t id + t^-1 (eta mu) on 1 (x) 1, or t^-1 id + t (eta mu) for the inverse."""
    cap_cup = _cup_column() * _cap_row()
    a, b = (TINV, T) if inverse else (T, TINV)
    return linalg.scale(linalg.identity(4), a) + linalg.scale(cap_cup, b)


def quantum_trace(m: int, signed: bool = False) -> Scalar:
    """Trace of K^2 on color m; the signed version multiplies by (-1)^m."""
    k = rep(m).K
    value = sum((row[i] ** 2 for i, row in enumerate(linalg.rows(k))), ZERO)
    return -value if signed and m % 2 else value


# -- truncated elements -----------------------------------------------------


@dataclass(frozen=True)
class MatrixCoefficient:
    m: int
    i: int
    j: int

    def __post_init__(self) -> None:
        if not (0 <= self.i <= self.m and 0 <= self.j <= self.m):
            raise DimensionError(f"index out of range for color {self.m}: ({self.i}, {self.j})")


@dataclass(frozen=True)
class TruncatedElement:
    """Blocks rho_0(Z) .. rho_M(Z) of an element Z."""

    max_color: int
    blocks: tuple[DomainMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != self.max_color + 1:
            raise DimensionError(f"{len(self.blocks)} blocks for max color {self.max_color}")
        for m, b in enumerate(self.blocks):
            if b.shape != (m + 1, m + 1):
                raise DimensionError(f"block {m} has shape {b.shape}")

    def block(self, m: int) -> DomainMatrix:
        if m > self.max_color:
            raise TruncationError(f"color {m} exceeds the truncation {self.max_color}")
        return self.blocks[m]

    @cached_property
    def block_rows(self) -> tuple[list[list[Scalar]], ...]:
        return tuple(linalg.rows(b) for b in self.blocks)

    @cached_property
    def nonzero_blocks(self) -> frozenset[int]:
        return frozenset(m for m, r in enumerate(self.block_rows) if any(v for row in r for v in row))

    def __mul__(self, other: "TruncatedElement") -> "TruncatedElement":
        m = min(self.max_color, other.max_color)
        return TruncatedElement(m, tuple(self.blocks[k] * other.blocks[k] for k in range(m + 1)))

    def __add__(self, other: "TruncatedElement") -> "TruncatedElement":
        m = min(self.max_color, other.max_color)
        return TruncatedElement(m, tuple(self.blocks[k] + other.blocks[k] for k in range(m + 1)))

    def scale(self, c: Scalar) -> "TruncatedElement":
        return TruncatedElement(self.max_color, tuple(linalg.scale(b, c) for b in self.blocks))

    def to_json(self) -> dict[str, object]:
        return {
            "maxColor": self.max_color,
            "blocks": [[[scalar_to_json(v) for v in row] for row in r] for r in self.block_rows],
        }


def truncation(word: Sequence[str], max_color: int) -> TruncatedElement:
    blocks = []
    for m in range(max_color + 1):
        acc = linalg.identity(m + 1)
        for g in word:
            acc = acc * rep(m).matrix(g)
        blocks.append(acc)
    return TruncatedElement(max_color, tuple(blocks))


def unit_truncation(max_color: int) -> TruncatedElement:
    return truncation((), max_color)


def antipode_truncation(generator: str, max_color: int) -> TruncatedElement:
    return TruncatedElement(max_color, tuple(antipode_matrix(generator, m) for m in range(max_color + 1)))


def elementary_truncation(max_color: int, m: int, i: int, j: int) -> TruncatedElement:
    """All blocks zero except a single 1 at (i, j) of block m."""
    MatrixCoefficient(m, i, j)
    blocks = []
    for k in range(max_color + 1):
        entries = [[ZERO] * (k + 1) for _ in range(k + 1)]
        if k == m:
            entries[i][j] = ONE
        blocks.append(linalg.matrix(entries, k + 1))
    return TruncatedElement(max_color, tuple(blocks))


def matrix_coefficient(c: MatrixCoefficient, x: TruncatedElement) -> Scalar:
    if c.m > x.max_color:
        raise TruncationError(f"color {c.m} exceeds the truncation {x.max_color}")
    return x.block_rows[c.m][c.i][c.j]


# -- tensor products ----------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """W = (x) V_{m_p} split into irreducibles.

    Column block s of ``basis`` spans summand s (color ``summands[s][0]``,
    starting at column ``summands[s][1]``), in the weight basis Y^k w of a
    highest-weight vector w.  ``inverse`` projects back.
    """

    factors: tuple[int, ...]
    summands: tuple[tuple[int, int], ...]
    basis: DomainMatrix
    inverse: DomainMatrix

    @cached_property
    def basis_rows(self) -> list[list[Scalar]]:
        return linalg.rows(self.basis)

    @cached_property
    def inverse_rows(self) -> list[list[Scalar]]:
        return linalg.rows(self.inverse)

    def inclusion(self, s: int = 0) -> DomainMatrix:
        color, start = self.summands[s]
        return linalg.matrix([row[start : start + color + 1] for row in self.basis_rows], color + 1)

    def projection(self, s: int = 0) -> DomainMatrix:
        color, start = self.summands[s]
        return linalg.matrix(self.inverse_rows[start : start + color + 1], self.basis.shape[0])


@functools.lru_cache(maxsize=None)
def decompose(factors: tuple[int, ...]) -> Decomposition:
    factors = tuple(factors)
    idx = index_tuples(factors)
    n = len(idx)
    if not factors:
        one = linalg.identity(1)
        return Decomposition((), ((0, 0),), one, one)
    x_action = comultiply_action("X", factors)
    y_action = comultiply_action("Y", factors)
    by_weight: dict[int, list[int]] = {}
    for k, multi in enumerate(idx):
        by_weight.setdefault(weight(factors, multi), []).append(k)
    top = max(by_weight)
    columns: list[list[Scalar]] = []
    summands: list[tuple[int, int]] = []
    for lam in range(top, -1, -2):
        space = by_weight.get(lam, [])
        above = by_weight.get(lam + 2, [])
        if not space:
            continue
        if above:
            kernel = linalg.nullspace(linalg.submatrix(x_action, above, space))
        else:
            kernel = [[ONE if a == b else ZERO for a in range(len(space))] for b in range(len(space))]
        for vec in kernel:
            w = [ZERO] * n
            for pos, k in enumerate(space):
                w[k] = vec[pos]
            summands.append((lam, len(columns)))
            for _ in range(lam + 1):
                columns.append(w)
                w = linalg.apply(y_action, w)
    if len(columns) != n:
        raise DimensionError(f"decomposition of {factors} found {len(columns)} of {n} dimensions")
    basis = linalg.from_columns(columns, n)
    logger.debug("decompose%s -> %s", factors, [c for c, _ in summands])
    return Decomposition(factors, tuple(summands), basis, linalg.inverse(basis))


def _elementary_crossings(strands: int, positions: Iterable[int], sign: Scalar) -> DomainMatrix:
    braid = linalg.scale(fundamental_braiding(), sign)
    out = linalg.identity(2**strands)
    for p in positions:
        step = linalg.kron_all([linalg.identity(2**p), braid, linalg.identity(2 ** (strands - p - 2))])
        out = step * out
    return out


@functools.lru_cache(maxsize=None)
def cabled_braiding(m: int, n: int, sign: int = 1) -> DomainMatrix:
    """V_m (x) V_n -> V_n (x) V_m with the left group passing over the right group.

    Each elementary crossing is ``sign`` times the fundamental braiding; the
    strands are cabled through the highest summands of 1^{(x)m} and 1^{(x)n}.
    """
    if m == 0 or n == 0:
        return linalg.identity((m + 1) * (n + 1))
    positions = [i + k for i in reversed(range(m)) for k in range(n)]
    braid = _elementary_crossings(m + n, positions, ONE * sign)
    dm, dn = decompose((1,) * m), decompose((1,) * n)
    include = linalg.kron(dm.inclusion(0), dn.inclusion(0))
    project = linalg.kron(dn.projection(0), dm.projection(0))
    return project * braid * include
