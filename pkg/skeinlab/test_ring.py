from __future__ import annotations

import random
import unittest
from fractions import Fraction

from skeinlab.config import SkeinlabConfig
from skeinlab.errors import PoleError, SchemaError
from skeinlab.ring import (
    DELTA,
    I,
    ONE,
    T,
    TINV,
    ZERO,
    Scalar,
    add,
    canonical,
    evaluate,
    format_scalar,
    from_json,
    invert,
    is_laurent,
    mul,
    quantum_integer,
    scalar,
    to_json,
)


class TestScalars(unittest.TestCase):
    def test_loop_value_is_minus_quantum_two(self) -> None:
        self.assertEqual(DELTA, -(T**2) - T**-2)
        self.assertEqual(quantum_integer(2), -DELTA)
        self.assertEqual(quantum_integer(1), ONE)
        self.assertEqual(quantum_integer(0), ZERO)

    def test_quantum_integers_are_laurent(self) -> None:
        self.assertEqual(quantum_integer(3), T**4 + ONE + T**-4)
        for n in range(6):
            self.assertTrue(is_laurent(quantum_integer(n)))
        self.assertFalse(is_laurent(ONE / (ONE + T)))

    def test_coercion(self) -> None:
        self.assertEqual(scalar(complex(0, 1)), I)
        self.assertEqual(scalar(Fraction(1, 2)) * 2, ONE)
        self.assertEqual(I * I, -ONE)
        with self.assertRaises(TypeError):
            scalar("t")

    def test_invert_zero(self) -> None:
        with self.assertRaises(ZeroDivisionError):
            invert(ZERO)
        self.assertEqual(invert(T), TINV)

    def test_canonical_form_shifts_denominator(self) -> None:
        num, den = canonical(T + TINV)
        self.assertEqual(sorted(num.as_dict()), [-1, 1])
        self.assertEqual(list(den.as_dict()), [0])

    def test_json_round_trip(self) -> None:
        value = (I * T - 3 * TINV) / (ONE + T**2)
        self.assertEqual(from_json(to_json(value)), value)

    def test_json_errors_name_the_path(self) -> None:
        with self.assertRaises(SchemaError) as ctx:
            from_json({"num": {}}, path="terms.0.coefficient")
        self.assertEqual(ctx.exception.path, "terms.0.coefficient")
        with self.assertRaises(SchemaError):
            from_json({"num": {"0": [1, 1, 0, 1]}, "den": {}})

    def test_numeric_evaluation(self) -> None:
        self.assertAlmostEqual(evaluate(DELTA, 1.0), -2.0)
        self.assertAlmostEqual(evaluate(I * T, 2.0), 2j)
        with self.assertRaises(PoleError):
            evaluate(TINV, 0)
        with self.assertRaises(PoleError):
            evaluate(ONE / (T - ONE), 1.0)

    def test_format(self) -> None:
        self.assertEqual(format_scalar(DELTA), "-t^2 - t^-2")
        self.assertEqual(format_scalar(ZERO), "0")
        self.assertEqual(format_scalar(I), "i")


def random_scalar(rng: random.Random) -> Scalar:
    num = ZERO
    for _ in range(3):
        num = num + scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3))) * T ** rng.randint(-3, 3)
    return num / (ONE + scalar(rng.randint(1, 3)) * T ** rng.randint(1, 3))


class TestFieldAxioms(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = random.Random(SkeinlabConfig().seed)

    def test_axioms_on_random_scalars(self) -> None:
        for _ in range(20):
            a, b, c = (random_scalar(self.rng) for _ in range(3))
            self.assertEqual(add(add(a, b), c), add(a, add(b, c)))
            self.assertEqual(add(a, b), add(b, a))
            self.assertEqual(mul(mul(a, b), c), mul(a, mul(b, c)))
            self.assertEqual(mul(a, b), mul(b, a))
            self.assertEqual(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
            self.assertEqual(add(a, ZERO), a)
            self.assertEqual(mul(a, ONE), a)
            if a:
                self.assertEqual(mul(a, invert(a)), ONE)

    def test_canonical_form_decides_equality(self) -> None:
        for _ in range(20):
            a, b = random_scalar(self.rng), random_scalar(self.rng)
            self.assertEqual(a == b, canonical(a) == canonical(b))
            self.assertEqual(canonical(a), canonical(mul(a, ONE)))

    def test_evaluation_is_a_ring_homomorphism(self) -> None:
        t0 = complex(0.7, 0.3)

        def close(x: complex, y: complex) -> bool:
            return abs(x - y) <= 1e-9 * max(1.0, abs(y))

        for _ in range(20):
            a, b = random_scalar(self.rng), random_scalar(self.rng)
            self.assertTrue(close(evaluate(add(a, b), t0), evaluate(a, t0) + evaluate(b, t0)))
            self.assertTrue(close(evaluate(mul(a, b), t0), evaluate(a, t0) * evaluate(b, t0)))
        self.assertTrue(close(evaluate(ONE, t0), 1.0))


if __name__ == "__main__":
    unittest.main()
