from __future__ import annotations

import itertools
import random
import unittest

from skeinlab import linalg, qsl2
from skeinlab.config import SkeinlabConfig
from skeinlab.errors import DimensionError, InadmissibleError
from skeinlab.ring import DELTA, I, ONE, T, TINV, ZERO
from skeinlab.tanglefun import (
    Intertwiner,
    PlanarTangle,
    cap_functional,
    dual_identification,
    dual_identification_inverse,
    eta,
    functor,
    identity,
    invariant_functionals,
    is_admissible,
    jw_image,
    mu,
    triad_functional,
    triad_matching,
    triad_tensor,
    unit_check,
)
from skeinlab.tl import TLDiagram, basis

CATALAN = [1, 1, 2, 5, 14]


def admissible_triples(max_color: int) -> list[tuple[int, int, int]]:
    colors = range(max_color + 1)
    return [abc for abc in itertools.product(colors, colors, colors) if is_admissible(*abc)]


class TestElementaryPieces(unittest.TestCase):
    def test_cap_and_cup_values(self) -> None:
        self.assertEqual(linalg.rows(mu().matrix), [[ZERO, I * T, -I * TINV, ZERO]])
        self.assertEqual(mu().compose(eta()), Intertwiner((), (), linalg.matrix([[DELTA]], 1)))

    def test_zig_zag(self) -> None:
        unit_check()

    def test_cap_and_cup_are_invariant(self) -> None:
        self.assertTrue(mu().is_invariant())
        self.assertTrue(eta().is_invariant())

    def test_compose_checks_colors(self) -> None:
        with self.assertRaises(DimensionError):
            mu().compose(identity((2,)))


class TestFunctor(unittest.TestCase):
    def test_identity_tangle_is_the_identity_map(self) -> None:
        for n in range(1, 4):
            image = functor(PlanarTangle.from_diagram(TLDiagram.identity(n)))
            self.assertTrue(linalg.equal(image.matrix, linalg.identity(2**n)), n)
        through = functor(PlanarTangle(1, 1, (1, 0)))
        self.assertTrue(linalg.equal(through.matrix, linalg.identity(2)))

    def test_identity_and_generator(self) -> None:
        self.assertEqual(functor(PlanarTangle.from_diagram(TLDiagram.identity(2))), identity((1, 1)))
        self.assertEqual(functor(PlanarTangle.from_diagram(TLDiagram.generator(2, 1))), eta().compose(mu()))

    def test_closed_loop(self) -> None:
        self.assertEqual(linalg.rows(functor(PlanarTangle(0, 0, (), loops=1)).matrix), [[DELTA]])

    def test_stacking_is_composition(self) -> None:
        rng = random.Random(SkeinlabConfig().seed)
        for n in (2, 3, 4):
            diagrams = basis(n)
            for _ in range(6):
                up, low = rng.choice(diagrams), rng.choice(diagrams)
                a, b = PlanarTangle.from_diagram(up), PlanarTangle.from_diagram(low)
                self.assertEqual(functor(a.stack(b)), functor(a).compose(functor(b)))

    def test_images_are_invariant(self) -> None:
        for d in basis(3):
            self.assertTrue(functor(PlanarTangle.from_diagram(d)).is_invariant())

    def test_tangle_json(self) -> None:
        tangle = PlanarTangle(4, 0, (3, 2, 1, 0), loops=1)
        self.assertEqual(PlanarTangle.from_json(tangle.to_json()), tangle)

    def test_cap_functional_is_sparse(self) -> None:
        values = cap_functional((1, 0))
        self.assertEqual(values, {(0, 1): I * T, (1, 0): -I * TINV})


class TestJonesWenzlImage(unittest.TestCase):
    def test_idempotent_projector(self) -> None:
        for n in range(1, 5):
            p = jw_image(n).matrix
            self.assertTrue(linalg.equal(p * p, p))
            self.assertEqual(linalg.rank(p), n + 1)

    def test_kills_cups(self) -> None:
        for n in range(2, 5):
            for i in range(n - 1):
                cup = identity((1,) * i).tensor(eta()).tensor(identity((1,) * (n - 2 - i)))
                self.assertTrue(linalg.is_zero(jw_image(n).matrix * cup.matrix))

    def test_invariant(self) -> None:
        for n in range(4):
            self.assertTrue(jw_image(n).is_invariant())


class TestTriads(unittest.TestCase):
    def test_matching(self) -> None:
        self.assertEqual(triad_matching(1, 1, 0), (1, 0))
        self.assertEqual(triad_matching(1, 0, 1), (1, 0))
        self.assertEqual(triad_matching(2, 2, 2), (5, 2, 1, 4, 3, 0))
        with self.assertRaises(InadmissibleError):
            triad_matching(1, 1, 1)
        with self.assertRaises(InadmissibleError):
            triad_matching(0, 1, 3)

    def test_vacuum(self) -> None:
        self.assertEqual(triad_tensor(0, 0, 0), {(0, 0, 0): ONE})

    def test_triads_are_nonzero_invariants(self) -> None:
        for abc in admissible_triples(3):
            f = triad_functional(*abc)
            self.assertTrue(triad_tensor(*abc), abc)
            self.assertTrue(f.is_invariant(), abc)

    def test_invariant_space_is_one_dimensional(self) -> None:
        for abc in itertools.product(range(4), repeat=3):
            found = invariant_functionals(abc)
            self.assertEqual(len(found), 1 if is_admissible(*abc) else 0, abc)
            if found:
                row = linalg.rows(triad_functional(*abc).matrix)[0]
                self.assertEqual(linalg.rank(linalg.matrix([row, found[0]])), 1)

    def test_catalan_invariants(self) -> None:
        for n in range(4):
            self.assertEqual(len(invariant_functionals((1,) * (2 * n))), CATALAN[n])


class TestDualIdentification(unittest.TestCase):
    def test_fundamental_is_the_pairing(self) -> None:
        self.assertTrue(linalg.equal(dual_identification(1), qsl2.pairing_matrix()))
        self.assertTrue(linalg.equal(dual_identification(0), linalg.identity(1)))

    def test_normalization(self) -> None:
        for m in range(4):
            self.assertEqual(linalg.rows(dual_identification(m))[0][m], (I * T) ** m)

    def test_intertwining(self) -> None:
        for m in range(4):
            d = dual_identification(m)
            for g in qsl2.GENERATORS:
                z = qsl2.rep(m).matrix(g)
                self.assertTrue(linalg.equal(qsl2.antipode_matrix(g, m) * d, d * z.transpose()))
            self.assertTrue(linalg.equal(d * dual_identification_inverse(m), linalg.identity(m + 1)))


if __name__ == "__main__":
    unittest.main()
