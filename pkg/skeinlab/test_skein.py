from __future__ import annotations

import random
import unittest

from skeinlab.config import SkeinlabConfig
from skeinlab.errors import DiagramError, InadmissibleError, SchemaError
from skeinlab.lattice import admissible_colorings, annulus, planar_theta, punctured_torus
from skeinlab.ring import DELTA, ONE, T, TINV
from skeinlab.skein import (
    LinkDiagram,
    SkeinElement,
    VertexTangle,
    basis_diagram,
    bracket_reduce,
    component_count,
    expand_coloring,
    is_contractible,
    multiply,
    normalize,
    trace_components,
)


def kink(over: bool) -> LinkDiagram:
    """The annulus core with one curl at the vertex."""
    tangle = VertexTangle((1, 0, 5, 4, 3, 2), ((1, over),))
    return LinkDiagram(annulus(), (3,), (tangle,))


def turnback_loop() -> LinkDiagram:
    """A contractible loop running out along the annulus edge and back."""
    return LinkDiagram(annulus(), (2,), (VertexTangle((1, 0, 3, 2)),))


class TestDiagrams(unittest.TestCase):
    def test_validation(self) -> None:
        g = annulus()
        with self.assertRaises(DiagramError):
            LinkDiagram(g, (1,), (VertexTangle((1, 0), ((1, True),)),))
        with self.assertRaises(DiagramError):
            LinkDiagram(g, (2,), (VertexTangle((2, 3, 0, 1)),))
        with self.assertRaises(DiagramError):
            LinkDiagram(g, (-1,), (VertexTangle(),))
        with self.assertRaises(DiagramError):
            basis_diagram(punctured_torus(), (1, 1, 1))

    def test_json(self) -> None:
        d = kink(True)
        self.assertEqual(LinkDiagram.from_json(d.to_json()), d)
        payload = d.to_json()
        payload["passes"] = {"7": 1}
        with self.assertRaises(SchemaError) as ctx:
            LinkDiagram.from_json(payload)
        self.assertEqual(ctx.exception.path, "passes.7")

    def test_skein_element_json(self) -> None:
        g = punctured_torus()
        x = SkeinElement(g, {(1, 2, 1): T, (1, 0, 1): TINV})
        self.assertEqual(SkeinElement.from_json(g, x.to_json()), x)


class TestBracket(unittest.TestCase):
    def test_empty_diagram(self) -> None:
        g = punctured_torus()
        self.assertEqual(bracket_reduce(basis_diagram(g, (0, 0, 0))), SkeinElement.empty(g))

    def test_loops(self) -> None:
        g = annulus()
        free = LinkDiagram(g, (0,), (VertexTangle(),), loops=1)
        self.assertEqual(bracket_reduce(free), SkeinElement.empty(g).scale(DELTA))
        self.assertEqual(bracket_reduce(turnback_loop()), SkeinElement.empty(g).scale(DELTA))
        self.assertEqual(normalize(g, (2,), [(1, 0, 3, 2)]), ((0,), 1))

    def test_basis_diagrams_are_reduced(self) -> None:
        for g in (annulus(), punctured_torus(), planar_theta()):
            for counts in ((1,), (2,), (1, 1, 0), (1, 2, 1), (2, 2, 2)):
                if len(counts) != len(g.edges):
                    continue
                self.assertEqual(bracket_reduce(basis_diagram(g, counts)), SkeinElement.curve(g, counts))

    def test_kink(self) -> None:
        g = annulus()
        self.assertEqual(bracket_reduce(kink(True)), SkeinElement.curve(g, (1,), -(TINV**3)))
        self.assertEqual(bracket_reduce(kink(False)), SkeinElement.curve(g, (1,), -(T**3)))

    def test_edge_braids_move_into_the_source_vertex(self) -> None:
        g = punctured_torus()
        base = basis_diagram(g, (1, 2, 1))
        braided = LinkDiagram(g, base.passes, base.vertices, ((), ((0, True),), ()))
        moved = base.with_vertex_crossings(0, [(1, False)])
        self.assertEqual(braided.crossing_count(), 1)
        self.assertEqual(bracket_reduce(braided), bracket_reduce(moved))

    def test_reidemeister_two(self) -> None:
        rng = random.Random(SkeinlabConfig().seed)
        g = punctured_torus()
        base = basis_diagram(g, (1, 2, 1))
        for _ in range(6):
            v = rng.randrange(g.vertices)
            width = base.width(v)
            word = [(rng.randrange(width - 1), rng.random() < 0.5) for _ in range(rng.randrange(3))]
            p, at = rng.randrange(width - 1), rng.randrange(len(word) + 1)
            longer = word[:at] + [(p, True), (p, False)] + word[at:]
            self.assertEqual(
                bracket_reduce(base.with_vertex_crossings(v, longer)),
                bracket_reduce(base.with_vertex_crossings(v, word)),
            )

    def test_reidemeister_three(self) -> None:
        rng = random.Random(SkeinlabConfig().seed + 1)
        g = punctured_torus()
        base = basis_diagram(g, (1, 2, 1))
        for _ in range(4):
            v = rng.randrange(g.vertices)
            word = [(rng.randrange(3), rng.random() < 0.5) for _ in range(rng.randrange(2))]
            p, over, at = rng.randrange(2), rng.random() < 0.5, rng.randrange(len(word) + 1)
            left = word[:at] + [(p, over), (p + 1, over), (p, over)] + word[at:]
            right = word[:at] + [(p + 1, over), (p, over), (p + 1, over)] + word[at:]
            self.assertEqual(
                bracket_reduce(base.with_vertex_crossings(v, left)),
                bracket_reduce(base.with_vertex_crossings(v, right)),
            )


class TestProduct(unittest.TestCase):
    def test_unit(self) -> None:
        g = punctured_torus()
        x = SkeinElement.curve(g, (1, 1, 0))
        self.assertEqual(multiply(SkeinElement.empty(g), x), x)
        self.assertEqual(multiply(x, SkeinElement.empty(g)), x)

    def test_annulus_is_polynomial(self) -> None:
        g = annulus()
        for m in range(3):
            for n in range(3):
                self.assertEqual(
                    SkeinElement.curve(g, (m,)) * SkeinElement.curve(g, (n,)), SkeinElement.curve(g, (m + n,))
                )

    def test_torus_product(self) -> None:
        g = punctured_torus()
        a, b = SkeinElement.curve(g, (1, 1, 0)), SkeinElement.curve(g, (0, 1, 1))
        diagonal, antidiagonal = SkeinElement.curve(g, (1, 2, 1)), SkeinElement.curve(g, (1, 0, 1))
        self.assertEqual(a * b, diagonal.scale(T) + antidiagonal.scale(TINV))
        self.assertEqual(b * a, diagonal.scale(TINV) + antidiagonal.scale(T))

    def test_associative(self) -> None:
        g = punctured_torus()
        a, b, c = (SkeinElement.curve(g, k) for k in ((1, 1, 0), (0, 1, 1), (1, 0, 1)))
        self.assertEqual((a * b) * c, a * (b * c))


class TestColoredBasis(unittest.TestCase):
    def test_annulus_chebyshev(self) -> None:
        g = annulus()
        self.assertEqual(expand_coloring(g, (0,)), SkeinElement.empty(g))
        self.assertEqual(expand_coloring(g, (1,)), SkeinElement.curve(g, (1,)))
        self.assertEqual(expand_coloring(g, (2,)), SkeinElement(g, {(2,): ONE, (0,): -ONE}))
        self.assertEqual(expand_coloring(g, (3,)), SkeinElement(g, {(3,): ONE, (1,): -2 * ONE}))

    def test_unitriangular(self) -> None:
        for g in (punctured_torus(), planar_theta()):
            for c in admissible_colorings(g, 2):
                x = expand_coloring(g, c)
                self.assertEqual(x.coefficient(c), ONE, c)
                for counts in x.terms:
                    if counts != c:
                        self.assertLess(sum(counts), sum(c), (c, counts))

    def test_inadmissible(self) -> None:
        with self.assertRaises(InadmissibleError):
            expand_coloring(punctured_torus(), (1, 1, 1))


class TestComponents(unittest.TestCase):
    def test_curves(self) -> None:
        g = punctured_torus()
        for counts, expected in (((1, 1, 0), 1), ((1, 2, 1), 1), ((2, 2, 0), 2)):
            components = trace_components(basis_diagram(g, counts))
            self.assertEqual(len(components), expected, counts)
            for comp in components:
                self.assertFalse(is_contractible(comp.word()))

    def test_turnback_loop_is_contractible(self) -> None:
        (comp,) = trace_components(turnback_loop())
        self.assertEqual(comp.word(), ((0, 1), (0, -1)))
        self.assertTrue(is_contractible(comp.word()))
        self.assertEqual(component_count(LinkDiagram(annulus(), (0,), (VertexTangle(),), loops=2)), 2)

    def test_free_reduction(self) -> None:
        self.assertTrue(is_contractible([]))
        self.assertFalse(is_contractible([(0, 1), (1, -1)]))
        self.assertTrue(is_contractible([(0, 1), (1, 1), (1, -1), (0, -1)]))
        self.assertTrue(is_contractible([(1, -1), (0, 1), (0, -1), (1, 1)]))


if __name__ == "__main__":
    unittest.main()
