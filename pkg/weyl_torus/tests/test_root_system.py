import itertools
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from weyl_torus.exceptions import (
    InvalidCartan,
    LinalgError,
    NotARoot,
    NotE6,
    WordSyntaxError,
)
from weyl_torus.expectations import WORKED_EXAMPLE_MATRIX
from weyl_torus.root_system import (
    E6_R0,
    E6_RT,
    U1_ROOTS,
    U2_ROOTS,
    U3_ROOTS,
    GroupElement,
    centre_elements,
    centre_quotient,
    commuting_product,
    dual_action,
    e6,
    from_cartan,
    parse_word,
    reflection_matrix,
    special_elements,
)
from weyl_torus.tests.utils import A1, A1_A1, A2


class RootSystemTests(SimpleTestCase):
    def test_e6_roots(self):
        rs = e6()
        self.assertEqual(rs.rank, 6)
        self.assertEqual(len(rs.all_roots), 72)
        self.assertEqual(len(rs.positive_roots), 36)
        self.assertTrue(rs.has_e6_labeling)
        self.assertIn(E6_R0, rs.root_set)
        self.assertIn(E6_RT, rs.root_set)

    def test_simple_reflections_permute_roots(self):
        rs = e6()
        for reflection in rs.simple_reflections:
            self.assertTrue(rs.permutes_roots(reflection))
            self.assertEqual(reflection.order(), 2)

    def test_toy_systems(self):
        self.assertEqual(len(from_cartan(A1).all_roots), 2)
        self.assertEqual(len(from_cartan(A2).all_roots), 6)
        rs = from_cartan(A1_A1, name="A1xA1")
        self.assertEqual(len(rs.all_roots), 4)
        self.assertEqual(rs.name, "A1xA1")
        self.assertFalse(rs.has_e6_labeling)

    def test_invalid_cartan_matrices(self):
        invalid = [
            [[2, -1, 0], [-1, 2, -1]],
            [[3, 0], [0, 2]],
            [[2, -1], [0, 2]],
            [[2, -2], [-2, 2]],
            [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
        ]
        for cartan in invalid:
            with self.subTest(cartan=cartan):
                with self.assertRaises(InvalidCartan):
                    from_cartan(cartan)

    def test_reflection_in_a_non_root(self):
        with self.assertRaises(NotARoot):
            reflection_matrix(e6(), (1, 1, 0, 0, 0, 1))

    def test_inner_product_is_exact(self):
        rs = e6()
        half = Fraction(1, 2)
        self.assertEqual(rs.inner((half, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0)),
                         1)
        self.assertEqual(rs.inner(E6_R0, E6_R0), 2)


class SpecialElementTests(SimpleTestCase):
    def test_special_elements_are_involutions(self):
        specials = special_elements(e6())
        for element in (specials.s0, specials.T, specials.u1, specials.u2,
                        specials.u3):
            self.assertEqual(element.order(), 2)
        self.assertEqual(specials.u3, specials.u1 @ specials.u2 @ specials.u1)

    def test_extended_reflection_commutes_with_a5(self):
        rs = e6()
        s0 = special_elements(rs).s0
        for reflection in rs.simple_reflections[:5]:
            self.assertEqual(s0 @ reflection, reflection @ s0)
        s6 = rs.simple_reflections[5]
        self.assertNotEqual(s0 @ s6, s6 @ s0)

    def test_u1_conjugation(self):
        rs = e6()
        specials = special_elements(rs)
        reflections = (specials.s0,) + rs.simple_reflections
        swaps = {0: 0, 1: 5, 2: 4, 3: 3, 4: 2, 5: 1, 6: 6}
        for source, target in swaps.items():
            with self.subTest(source=source):
                self.assertEqual(
                    reflections[source].conjugate_by(specials.u1),
                    reflections[target],
                )

    def test_u2_conjugation(self):
        rs = e6()
        specials = special_elements(rs)
        reflections = (specials.s0,) + rs.simple_reflections
        swaps = {0: 1, 1: 0, 2: 6, 6: 2, 3: 3, 4: 4, 5: 5}
        for source, target in swaps.items():
            with self.subTest(source=source):
                self.assertEqual(
                    reflections[source].conjugate_by(specials.u2),
                    reflections[target],
                )

    def test_u1_negates_r6(self):
        specials = special_elements(e6())
        r6 = np.array([0, 0, 0, 0, 0, 1], dtype=np.int64)
        self.assertEqual((specials.u1.matrix @ r6).tolist(),
                         (-r6).tolist())

    def test_braid_relation(self):
        specials = special_elements(e6())
        u1, u2 = specials.u1, specials.u2
        self.assertTrue((u1 @ u2).power(3).is_identity)
        self.assertEqual(specials.u3, u2 @ u1 @ u2)
        self.assertEqual(specials.u3, commuting_product(e6(), U3_ROOTS))

    def test_commuting_roots_are_orthogonal(self):
        rs = e6()
        for roots in (U1_ROOTS, U2_ROOTS, U3_ROOTS):
            for first, second in itertools.combinations(roots, 2):
                with self.subTest(first=first, second=second):
                    self.assertEqual(rs.inner(first, second), 0)

    def test_t_is_a_conjugate_of_s3(self):
        rs = e6()
        self.assertEqual(parse_word(rs, "s3^{s2 s4 s6}"),
                         special_elements(rs).T)
        simple = np.eye(6, dtype=np.int64)
        total = np.array(E6_R0) + simple[2] + simple[0] + simple[4]
        self.assertEqual((2 * np.array(E6_RT)).tolist(), total.tolist())

    def test_requires_e6(self):
        with self.assertRaises(NotE6):
            special_elements(from_cartan(A2))


class ParseWordTests(SimpleTestCase):
    def test_identity_words(self):
        rs = e6()
        identity = GroupElement.identity(6)
        self.assertEqual(parse_word(rs, "e"), identity)
        self.assertEqual(parse_word(rs, ""), identity)
        self.assertEqual(parse_word(rs, "s1 s1"), identity)

    def test_conjugation(self):
        rs = e6()
        self.assertEqual(
            parse_word(rs, "s1^{s2}"),
            reflection_matrix(rs, (1, 1, 0, 0, 0, 0)),
        )
        s1, s2, s3 = rs.simple_reflections[:3]
        self.assertEqual(parse_word(rs, "(s1 s2)^{s3}"), s3 @ s1 @ s2 @ s3)

    def test_worked_example(self):
        element = parse_word(e6(), "s0 s1 s5 s3")
        self.assertEqual(element.matrix.tolist(),
                         [list(row) for row in WORKED_EXAMPLE_MATRIX])

    def test_coxeter_element_order(self):
        coxeter = parse_word(e6(), "s1 s2 s3 s4 s5 s6")
        self.assertEqual(coxeter.order(), 12)
        self.assertTrue((coxeter @ coxeter.inverse()).is_identity)

    def test_syntax_errors(self):
        rs = e6()
        for text, position in (
            ("s1 x", 3),
            ("s1^{s2", 6),
            ("s9", 0),
            ("u4", 0),
            ("s1 )", 3),
        ):
            with self.subTest(text=text):
                with self.assertRaises(WordSyntaxError) as raised:
                    parse_word(rs, text)
                self.assertEqual(raised.exception.position, position)

    def test_special_letters_need_e6(self):
        with self.assertRaises(NotE6):
            parse_word(from_cartan(A2), "s0")
        self.assertEqual(
            parse_word(from_cartan(A2), "s1 s2").order(), 3
        )


class LatticeTests(SimpleTestCase):
    def test_dual_action_intertwines_gram(self):
        rs = e6()
        gram = np.array(rs.gram, dtype=np.int64)
        for word in ("s1", "s0 s6 s3", "s1 s2 s3 s4 s5 s6", "u1 T"):
            element = parse_word(rs, word)
            self.assertTrue(
                (dual_action(element) @ gram == gram @ element.matrix).all()
            )

    def test_centre_quotients(self):
        self.assertEqual(centre_quotient(e6()), [3])
        self.assertEqual(centre_quotient(from_cartan(A1)), [2])
        self.assertEqual(centre_quotient(from_cartan(A2)), [3])
        self.assertEqual(centre_quotient(from_cartan(A1_A1)), [2, 2])

    def test_centre_elements_are_weights(self):
        rs = e6()
        points = centre_elements(rs)
        self.assertEqual(len(points), 3)
        self.assertEqual(points[0], (0,) * 6)
        for point in points:
            self.assertTrue(all((3 * x) % 1 == 0 for x in point))
            weight = rs.gram.dot(np.array(point, dtype=object))
            self.assertTrue(all(Fraction(x).denominator == 1 for x in weight))
        self.assertEqual(len(set(points)), 3)

    def test_weyl_group_acts_trivially_on_the_centre(self):
        rs = e6()
        for point in centre_elements(rs):
            vector = np.array(point, dtype=object)
            for reflection in rs.simple_reflections:
                moved = reflection.matrix.astype(object).dot(vector) - vector
                with self.subTest(point=point, moved=moved.tolist()):
                    self.assertTrue(
                        all(Fraction(x).denominator == 1 for x in moved)
                    )

    def test_byte_key_range(self):
        with self.assertRaises(LinalgError):
            GroupElement([[200]])
