from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from weyl_torus.exceptions import ClassMatchFailure
from weyl_torus.expectations import CLASS_TABLE, POWER_RELATIONS
from weyl_torus.root_system import GroupElement, parse_word
from weyl_torus.tests.utils import e6_context, toy_context
from weyl_torus.weyl_group import (
    centraliser,
    class_of,
    conjugacy_classes,
    eigenvalue_orders,
    power_class_map,
    reflection_length,
    subgroup_generated,
)


class EnumerationTests(SimpleTestCase):
    def test_group_order(self):
        group = e6_context().group
        self.assertEqual(group.order, 51840)
        self.assertTrue(group.element(0).is_identity)
        self.assertEqual(len(set(group.keys)), 51840)

    def test_words_evaluate_to_their_elements(self):
        context = e6_context()
        group = context.group
        for index in (1, 7, 100, 5000, 51839):
            self.assertEqual(
                parse_word(context.rs, group.word_of(index)),
                group.element(index),
            )

    def test_inverse_index(self):
        group = e6_context().group
        for index in (0, 3, 999, 42000):
            product = group.element(index) @ group.element(
                int(group.inverse_index[index])
            )
            self.assertTrue(product.is_identity)

    def test_dual_elements_are_contragredient(self):
        group = e6_context().group
        products = np.transpose(group.dual_elements[:50], (0, 2, 1)) @ (
            group.elements[:50]
        )
        self.assertTrue((products == np.eye(6, dtype=np.int64)).all())


class ConjugacyClassTests(SimpleTestCase):
    def test_e6_classes_match_table(self):
        classes = e6_context().classes
        self.assertEqual(len(classes), 25)
        self.assertEqual(sum(cls.size for cls in classes), 51840)
        for cls, row in zip(classes, CLASS_TABLE):
            with self.subTest(label=row.label):
                self.assertEqual(cls.label, row.label)
                self.assertEqual(cls.centraliser_order, row.centraliser_order)
                self.assertEqual(cls.eigenvalue_orders, row.eigenvalues)
                self.assertEqual(6 - cls.reflection_length, row.torus_dim)

    def test_generic_labels_for_a2(self):
        classes = toy_context("A2").classes
        self.assertEqual([cls.label for cls in classes], ["C1", "C2", "C3"])
        self.assertEqual([cls.size for cls in classes], [1, 3, 2])
        self.assertEqual(
            [cls.centraliser_order for cls in classes], [6, 2, 3]
        )

    def test_corrupted_eigenvalues_are_rejected(self):
        group = e6_context().group
        corrupted = list(CLASS_TABLE)
        corrupted[1] = replace(corrupted[1], eigenvalues=((1, 6),))
        with self.assertRaises(ClassMatchFailure):
            conjugacy_classes(group, expected=corrupted)

    def test_missing_rows_are_rejected(self):
        group = e6_context().group
        with self.assertRaises(ClassMatchFailure):
            conjugacy_classes(group, expected=CLASS_TABLE[:-1])

    def test_class_of_conjugate(self):
        context = e6_context()
        coxeter = parse_word(context.rs, "s1 s2 s3 s4 s5 s6")
        conjugate = coxeter.conjugate_by(parse_word(context.rs, "s2 u1"))
        self.assertEqual(
            class_of(context.group, context.classes, conjugate).label, "E6"
        )


class SubgroupTests(SimpleTestCase):
    def test_simple_reflections_generate_the_group(self):
        context = e6_context()
        subgroup = subgroup_generated(
            context.group, context.rs.simple_reflections
        )
        self.assertEqual(subgroup.order, 51840)

    def test_coxeter_centraliser_is_cyclic(self):
        context = e6_context()
        coxeter = parse_word(context.rs, "s1 s2 s3 s4 s5 s6")
        centre = centraliser(context.group, coxeter)
        cyclic = subgroup_generated(context.group, [coxeter])
        self.assertEqual(centre.order, 12)
        self.assertTrue(cyclic.is_subgroup_of(centre))
        self.assertEqual(cyclic.index_in(centre), 1)
        self.assertIn(coxeter, centre)

    def test_greedy_generators_generate(self):
        context = e6_context()
        cls = next(c for c in context.classes if c.label == "D4[a1]")
        generators = cls.centraliser.generators()
        regenerated = subgroup_generated(context.group, generators)
        self.assertEqual(regenerated.order, 96)

    def test_reflection_length_and_eigenvalues(self):
        rs = e6_context().rs
        self.assertEqual(reflection_length(GroupElement.identity(6)), 0)
        self.assertEqual(reflection_length(parse_word(rs, "s0 s1 s5 s3")), 4)
        self.assertEqual(
            eigenvalue_orders(parse_word(rs, "s1 s2 s3 s4 s5 s6")),
            ((3, 1), (12, 1)),
        )


class StructureTests(SimpleTestCase):
    def generated(self, *words):
        context = e6_context()
        return subgroup_generated(
            context.group, [parse_word(context.rs, word) for word in words]
        )

    def test_d4_subgroup(self):
        d4 = self.generated("s0", "s1", "s5", "T")
        self.assertEqual(d4.order, 192)
        self.assertIn(parse_word(e6_context().rs, "s3"), d4)

    def test_u1_centralises_a2_outside_the_elementary_part(self):
        context = e6_context()
        u1 = parse_word(context.rs, "u1")
        centre = centraliser(context.group, parse_word(context.rs, "s0 s6"))
        elementary = self.generated("s0 s6", "s1", "s2", "s4", "s5")
        self.assertIn(u1, centre)
        self.assertNotIn(u1, elementary)
        self.assertTrue(elementary.is_subgroup_of(centre))

    def test_symmetric_group_meets_a3_a1_a1_trivially(self):
        s4 = self.generated("s1", "T", "s5")
        cyclic = self.generated("s0 s6 s3 s1 s5")
        self.assertEqual(s4.order, 24)
        self.assertEqual(s4.members & cyclic.members, {0})

    def test_d4_a1_centraliser_inside_d4(self):
        context = e6_context()
        representative = parse_word(context.rs, "s1 T s5 s0^{T}")
        centre = centraliser(context.group, representative)
        d4 = self.generated("s0", "s1", "s5", "T")
        self.assertEqual(len(centre.members & d4.members), 16)


class PowerMapTests(SimpleTestCase):
    def test_power_relations(self):
        context = e6_context()
        edges = power_class_map(context.group, context.classes)
        targets = {(edge.source, edge.exponent): edge.target for edge in edges}
        for source, exponent, target in POWER_RELATIONS:
            self.assertEqual(targets[(source, exponent)], target)
        self.assertTrue(all(edge.centraliser_inclusion for edge in edges))

    def test_every_divisor_is_covered(self):
        context = e6_context()
        edges = power_class_map(context.group, context.classes)
        coxeter = [edge for edge in edges if edge.source == "E6"]
        self.assertEqual(
            sorted(edge.exponent for edge in coxeter), [2, 3, 4, 6, 12]
        )
        twelfth = next(edge for edge in coxeter if edge.exponent == 12)
        self.assertEqual(twelfth.target, "empty")
        self.assertTrue(twelfth.literal)
