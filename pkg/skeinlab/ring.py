"""Exact scalars: rational functions in t over the Gaussian rationals.

Every quantity in skeinlab lives in the field Q(i)(t).  Arithmetic is
delegated to sympy's fraction field over ``QQ_I``, which keeps numerator and
denominator coprime after every operation.  This module adds the canonical
Laurent form used for equality, JSON and display, plus the quantum integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from sympy import Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.fields import FracElement

from .errors import PoleError, SchemaError

__all__ = [
    "DELTA",
    "DOMAIN",
    "FIELD",
    "GaussianRational",
    "I",
    "LaurentPoly",
    "ONE",
    "Scalar",
    "T",
    "TINV",
    "ZERO",
    "add",
    "canonical",
    "evaluate",
    "format_scalar",
    "from_json",
    "from_laurent",
    "gaussian",
    "invert",
    "is_laurent",
    "mul",
    "quantum_integer",
    "scalar",
    "to_json",
]

T_SYMBOL = Symbol("t")
DOMAIN = QQ_I.frac_field(T_SYMBOL)
FIELD = DOMAIN.field

Scalar = FracElement

ZERO: Scalar = FIELD.zero
ONE: Scalar = FIELD.one
T: Scalar = FIELD.gens[0]
TINV: Scalar = ONE / T
I: Scalar = FIELD(GaussianRational(QQ(0), QQ(1)))
# value of a contractible loop
DELTA: Scalar = -(T**2) - TINV**2


def _qq(value: int | Fraction) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _as_fraction(q: object) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))  # type: ignore[attr-defined]


def gaussian(re: int | Fraction = 0, im: int | Fraction = 0) -> GaussianRational:
    return GaussianRational(_qq(re), _qq(im))


def _gaussian_parts(g: GaussianRational) -> tuple[Fraction, Fraction]:
    return _as_fraction(g.x), _as_fraction(g.y)


def _gaussian_quotient(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    ar, ai = _gaussian_parts(a)
    br, bi = _gaussian_parts(b)
    norm = br * br + bi * bi
    if norm == 0:
        raise ZeroDivisionError("division by the zero Gaussian rational")
    return gaussian((ar * br + ai * bi) / norm, (ai * br - ar * bi) / norm)


def scalar(value: object) -> Scalar:
    """Coerce ints, fractions, Gaussian rationals and complex ints to a Scalar."""
    if isinstance(value, FracElement) and value.field == FIELD:
        return value
    if isinstance(value, GaussianRational):
        return FIELD(value)
    if isinstance(value, complex):
        re, im = Fraction(value.real), Fraction(value.imag)
        return FIELD(gaussian(re, im))
    if isinstance(value, (int, Fraction)):
        return FIELD(gaussian(value, 0))
    raise TypeError(f"cannot coerce {type(value).__name__} to a Scalar")


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def invert(a: Scalar) -> Scalar:
    if not a:
        raise ZeroDivisionError("the zero Scalar has no inverse")
    return ONE / a


def quantum_integer(n: int) -> Scalar:
    """[n] = (t^{2n} - t^{-2n}) / (t^2 - t^{-2})."""
    return (T ** (2 * n) - T ** (-2 * n)) / (T**2 - T**-2)


@dataclass(frozen=True)
class LaurentPoly:
    """Finite map exponent -> Gaussian rational, zero coefficients dropped."""

    terms: tuple[tuple[int, GaussianRational], ...] = ()

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, GaussianRational]) -> "LaurentPoly":
        kept = [(int(k), c) for k, c in coefficients.items() if c]
        return cls(tuple(sorted(kept, key=lambda kv: kv[0])))

    def as_dict(self) -> dict[int, GaussianRational]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def min_exponent(self) -> int:
        return self.terms[0][0]

    def to_scalar(self) -> Scalar:
        out = ZERO
        for exp, coeff in self.terms:
            out = out + FIELD(coeff) * T**exp
        return out

    def evaluate(self, z: complex) -> complex:
        total = 0j
        for exp, coeff in self.terms:
            re, im = _gaussian_parts(coeff)
            total += complex(float(re), float(im)) * z**exp
        return total

    def to_json(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for exp, coeff in self.terms:
            re, im = _gaussian_parts(coeff)
            out[str(exp)] = [re.numerator, re.denominator, im.numerator, im.denominator]
        return out

    @classmethod
    def from_json(cls, payload: Mapping[str, Iterable[int]], *, path: str = "") -> "LaurentPoly":
        coefficients: dict[int, GaussianRational] = {}
        for key, entry in payload.items():
            try:
                exp = int(key)
                re_num, re_den, im_num, im_den = (int(v) for v in entry)
                coefficients[exp] = gaussian(Fraction(re_num, re_den), Fraction(im_num, im_den))
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise SchemaError(f"{path}.{key}" if path else key, f"bad coefficient ({e})") from e
        return cls.from_mapping(coefficients)


def canonical(a: Scalar) -> tuple[LaurentPoly, LaurentPoly]:
    """(numerator, denominator) with the denominator shifted to minimal exponent 0
    and scaled so that its lowest coefficient is 1."""
    if not a:
        return LaurentPoly(), LaurentPoly(((0, gaussian(1)),))
    den_terms = {mono[0]: coeff for mono, coeff in a.denom.items()}
    shift = min(den_terms)
    lead = den_terms[shift]
    num = {mono[0] - shift: _gaussian_quotient(coeff, lead) for mono, coeff in a.numer.items()}
    den = {exp - shift: _gaussian_quotient(coeff, lead) for exp, coeff in den_terms.items()}
    return LaurentPoly.from_mapping(num), LaurentPoly.from_mapping(den)


def is_laurent(a: Scalar) -> bool:
    _, den = canonical(a)
    return len(den.terms) == 1


def from_laurent(num: LaurentPoly, den: LaurentPoly | None = None) -> Scalar:
    value = num.to_scalar()
    if den is None:
        return value
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    return value / den.to_scalar()


def evaluate(a: Scalar, t0: complex, tolerance: float = 1e-12) -> complex:
    num, den = canonical(a)
    if t0 == 0 and any(exp < 0 for exp, _ in num.terms):
        raise PoleError("pole at t = 0")
    d = den.evaluate(t0)
    if abs(d) < tolerance:
        raise PoleError(f"pole at t = {t0}")
    return num.evaluate(t0) / d


def to_json(a: Scalar) -> dict[str, dict[str, list[int]]]:
    num, den = canonical(a)
    return {"num": num.to_json(), "den": den.to_json()}


def from_json(payload: Mapping[str, object], *, path: str = "") -> Scalar:
    try:
        num_raw = payload["num"]
        den_raw = payload["den"]
    except (KeyError, TypeError) as e:
        raise SchemaError(path, "scalar needs 'num' and 'den'") from e
    num = LaurentPoly.from_json(num_raw, path=f"{path}.num" if path else "num")  # type: ignore[arg-type]
    den = LaurentPoly.from_json(den_raw, path=f"{path}.den" if path else "den")  # type: ignore[arg-type]
    if den.is_zero():
        raise SchemaError(f"{path}.den" if path else "den", "zero denominator")
    return from_laurent(num, den)


def _format_coefficient(coeff: GaussianRational) -> str:
    re, im = _gaussian_parts(coeff)
    if im == 0:
        return str(re)
    if re == 0:
        return "i" if im == 1 else "-i" if im == -1 else f"{im}i"
    return f"({re}{'+' if im > 0 else '-'}{abs(im)}i)"


def _format_laurent(poly: LaurentPoly) -> str:
    if poly.is_zero():
        return "0"
    pieces: list[str] = []
    for exp, coeff in reversed(poly.terms):
        c = _format_coefficient(coeff)
        if exp == 0:
            body = c
        else:
            power = "t" if exp == 1 else f"t^{exp}"
            body = power if c == "1" else f"-{power}" if c == "-1" else f"{c}*{power}"
        pieces.append(body)
    text = " + ".join(pieces)
    return text.replace("+ -", "- ")


def format_scalar(a: Scalar) -> str:
    num, den = canonical(a)
    if len(den.terms) == 1 and den.terms[0][0] == 0:
        return _format_laurent(num)
    return f"({_format_laurent(num)})/({_format_laurent(den)})"
