from __future__ import annotations

import itertools
import unittest

from skeinlab import linalg
from skeinlab.errors import DimensionError, TruncationError
from skeinlab.qsl2 import (
    CANDIDATES,
    GENERATORS,
    MatrixCoefficient,
    adopted_coproduct,
    antipode_matrix,
    apply_word,
    cabled_braiding,
    comultiply_action,
    counit,
    decompose,
    elementary_truncation,
    fundamental_braiding,
    matrix_coefficient,
    quantum_trace,
    rep,
    sweedler,
    truncation,
)
from skeinlab.ring import ONE, T, ZERO, quantum_integer


def commutator_rhs(k: linalg.Matrix, kinv: linalg.Matrix) -> linalg.Matrix:
    return linalg.scale(k * k - kinv * kinv, ONE / (T**2 - T**-2))


class TestRepresentations(unittest.TestCase):
    def test_relations(self) -> None:
        for m in range(4):
            r = rep(m)
            self.assertTrue(linalg.equal(r.K * r.Kinv, linalg.identity(m + 1)))
            self.assertTrue(linalg.equal(r.K * r.X * r.Kinv, linalg.scale(r.X, T**2)))
            self.assertTrue(linalg.equal(r.K * r.Y * r.Kinv, linalg.scale(r.Y, T**-2)))
            self.assertTrue(linalg.equal(r.X * r.Y - r.Y * r.X, commutator_rhs(r.K, r.Kinv)))

    def test_lowering_chain(self) -> None:
        self.assertEqual(apply_word(("Y", "Y"), [ONE, ZERO, ZERO]), [ZERO, ZERO, ONE])
        self.assertEqual(apply_word(("X",), [ZERO, ONE, ZERO]), [quantum_integer(2), ZERO, ZERO])
        with self.assertRaises(DimensionError):
            apply_word(("X",), [ONE, ZERO], m=2)

    def test_bad_inputs(self) -> None:
        with self.assertRaises(DimensionError):
            rep(-1)
        with self.assertRaises(ValueError):
            rep(1).matrix("Z")

    def test_irreducible(self) -> None:
        for m in range(5):
            r = rep(m)
            n = r.dim
            equations = []
            for g in ("X", "Y", "K"):
                z = linalg.rows(r.matrix(g))
                # (Z A - A Z)[i][j] over the entries A[k][l]
                for i, j in itertools.product(range(n), repeat=2):
                    row = [ZERO] * (n * n)
                    for k in range(n):
                        row[k * n + j] += z[i][k]
                        row[i * n + k] -= z[k][j]
                    equations.append(row)
            commutant = linalg.nullspace(linalg.matrix(equations, n * n))
            self.assertEqual(len(commutant), 1, m)
            a = commutant[0]
            scalar = a[0]
            expected = [scalar if k == l else ZERO for k, l in itertools.product(range(n), repeat=2)]
            self.assertEqual(a, expected, m)


class TestHopfStructure(unittest.TestCase):
    def test_adopted_convention(self) -> None:
        self.assertEqual(adopted_coproduct(), CANDIDATES[0])
        self.assertEqual(adopted_coproduct().left, "Kinv")

    def test_sweedler_terms(self) -> None:
        self.assertEqual(sweedler("K", 3), [("K", "K", "K")])
        self.assertEqual(sweedler("X", 2), [("X", "K"), ("Kinv", "X")])
        self.assertEqual(len(sweedler("Y", 4)), 4)

    def test_coproduct_is_a_homomorphism(self) -> None:
        for factors in ((1, 1), (1, 2), (2, 1, 1)):
            x, y = comultiply_action("X", factors), comultiply_action("Y", factors)
            k, kinv = comultiply_action("K", factors), comultiply_action("Kinv", factors)
            self.assertTrue(linalg.equal(k * x * kinv, linalg.scale(x, T**2)))
            self.assertTrue(linalg.equal(x * y - y * x, commutator_rhs(k, kinv)))

    def test_coassociativity(self) -> None:
        def pair_action(g: str) -> linalg.Matrix:
            total = linalg.zeros(4, 4)
            for a, b in sweedler(g, 2):
                total = total + linalg.kron(rep(1).matrix(a), rep(1).matrix(b))
            return total

        for g in GENERATORS:
            left = linalg.zeros(8, 8)
            right = linalg.zeros(8, 8)
            for a, b in sweedler(g, 2):
                left = left + linalg.kron(pair_action(a), rep(1).matrix(b))
                right = right + linalg.kron(rep(1).matrix(a), pair_action(b))
            self.assertTrue(linalg.equal(left, right), g)
            self.assertTrue(linalg.equal(left, comultiply_action(g, (1, 1, 1))), g)

    def test_antipode_axiom(self) -> None:
        # m o (S (x) id) o Delta = eps = m o (id (x) S) o Delta
        for m in range(4):
            r = rep(m)
            for g in GENERATORS:
                left = linalg.zeros(m + 1, m + 1)
                right = linalg.zeros(m + 1, m + 1)
                for first, second in sweedler(g, 2):
                    left = left + antipode_matrix(first, m) * r.matrix(second)
                    right = right + r.matrix(first) * antipode_matrix(second, m)
                eps = linalg.scale(linalg.identity(m + 1), counit(g))
                self.assertTrue(linalg.equal(left, eps))
                self.assertTrue(linalg.equal(right, eps))

    def test_antipode_squared_is_conjugation_by_k_squared(self) -> None:
        for m in range(4):
            r = rep(m)
            for g in ("X", "Y"):
                # S(S(Z)) = -S(K^-1) S(Z) S(K) for the adopted coproduct
                twice = linalg.scale(r.K * antipode_matrix(g, m) * r.Kinv, -ONE)
                self.assertTrue(linalg.equal(twice, r.K * r.K * r.matrix(g) * r.Kinv * r.Kinv))

    def test_counit(self) -> None:
        self.assertEqual(counit("K"), ONE)
        self.assertEqual(counit("Y"), ZERO)


class TestBraiding(unittest.TestCase):
    def test_inverse(self) -> None:
        product = fundamental_braiding() * fundamental_braiding(inverse=True)
        self.assertTrue(linalg.equal(product, linalg.identity(4)))

    def test_yang_baxter(self) -> None:
        r = fundamental_braiding()
        one = linalg.identity(2)
        a, b = linalg.kron(r, one), linalg.kron(one, r)
        self.assertTrue(linalg.equal(a * b * a, b * a * b))

    def test_commutes_with_coproduct(self) -> None:
        r = fundamental_braiding()
        for g in GENERATORS:
            action = comultiply_action(g, (1, 1))
            self.assertTrue(linalg.equal(r * action, action * r))

    def test_cabled_braiding(self) -> None:
        self.assertTrue(linalg.equal(cabled_braiding(1, 1), fundamental_braiding()))
        self.assertTrue(linalg.equal(cabled_braiding(2, 0), linalg.identity(3)))
        for m, n in ((1, 2), (2, 1), (2, 2)):
            for sign in (1, -1):
                braid = cabled_braiding(m, n, sign)
                for g in GENERATORS:
                    before = comultiply_action(g, (m, n))
                    after = comultiply_action(g, (n, m))
                    self.assertTrue(linalg.equal(braid * before, after * braid))

    def test_quantum_trace(self) -> None:
        for m in range(5):
            self.assertEqual(quantum_trace(m), quantum_integer(m + 1))
            self.assertEqual(quantum_trace(m, signed=True), (-1) ** m * quantum_integer(m + 1))


class TestTruncations(unittest.TestCase):
    def test_truncation_blocks(self) -> None:
        x = truncation(("X", "Y"), 2)
        self.assertEqual(x.max_color, 2)
        self.assertTrue(linalg.equal(x.block(2), rep(2).X * rep(2).Y))
        with self.assertRaises(TruncationError):
            x.block(3)

    def test_matrix_coefficients(self) -> None:
        e = elementary_truncation(2, 1, 0, 1)
        self.assertEqual(matrix_coefficient(MatrixCoefficient(1, 0, 1), e), ONE)
        self.assertEqual(matrix_coefficient(MatrixCoefficient(2, 0, 1), e), ZERO)
        self.assertEqual(e.nonzero_blocks, frozenset({1}))
        with self.assertRaises(DimensionError):
            MatrixCoefficient(1, 2, 0)
        with self.assertRaises(TruncationError):
            matrix_coefficient(MatrixCoefficient(3, 0, 0), e)

    def test_matrix_coefficients_are_independent(self) -> None:
        coefficients = [MatrixCoefficient(m, i, j) for m in range(3) for i in range(m + 1) for j in range(m + 1)]
        gram = [
            [matrix_coefficient(c, elementary_truncation(2, d.m, d.i, d.j)) for d in coefficients]
            for c in coefficients
        ]
        self.assertEqual(len(coefficients), 14)
        self.assertEqual(linalg.rank(linalg.matrix(gram, 14)), 14)
        # Y^a K^k X^b span the image of the algebra on colors 0..2
        words = [("Y",) * a + ("K",) * k + ("X",) * b for a in range(3) for b in range(3) for k in range(5)]
        values = [[matrix_coefficient(c, truncation(w, 2)) for w in words] for c in coefficients]
        self.assertEqual(linalg.rank(linalg.matrix(values, len(words))), 14)

    def test_decomposition(self) -> None:
        self.assertEqual([c for c, _ in decompose((1, 1)).summands], [2, 0])
        self.assertEqual([c for c, _ in decompose((1, 1, 1)).summands], [3, 1, 1])
        dec = decompose((1, 2))
        self.assertTrue(linalg.equal(dec.basis * dec.inverse, linalg.identity(6)))
        top = dec.inclusion(0)
        highest = linalg.apply(comultiply_action("X", (1, 2)), linalg.column(top, 0))
        self.assertTrue(all(not v for v in highest))

    def test_summand_projections_resolve_the_identity(self) -> None:
        for factors in ((1, 1), (1, 2), (1, 1, 1)):
            dec = decompose(factors)
            n = dec.basis.shape[0]
            total = linalg.zeros(n, n)
            for s in range(len(dec.summands)):
                total = total + dec.inclusion(s) * dec.projection(s)
            self.assertTrue(linalg.equal(total, linalg.identity(n)), factors)


if __name__ == "__main__":
    unittest.main()
