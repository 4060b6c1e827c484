"""Generic machinery checked against brute force on rank one and two."""
from django.test import SimpleTestCase

from weyl_torus.root_system import dual_action
from weyl_torus.sectors_ktheory import compare_forms, ktheory
from weyl_torus.tests.utils import (
    TOY_SYSTEMS,
    brute_force_centraliser,
    brute_force_fixed_set,
    brute_force_group,
    brute_force_point_orbits,
    toy_context,
)
from weyl_torus.torus_fixed import (
    LatticeSide,
    component_action,
    fixed_set,
    orbit_count,
    verify_duality,
)
from weyl_torus.verification import duality_suite, fixed_sets_suite


def as_tuple(matrix):
    return tuple(tuple(int(x) for x in row) for row in matrix)


class ToySystemTests(SimpleTestCase):
    def test_group_and_classes(self):
        for name, (cartan, _) in TOY_SYSTEMS.items():
            with self.subTest(system=name):
                context = toy_context(name)
                oracle = brute_force_group(cartan)
                self.assertEqual(context.group.order, len(oracle))
                self.assertEqual(
                    {as_tuple(m) for m in context.group.elements}, oracle
                )
                for cls in context.classes:
                    element = as_tuple(cls.representative.matrix)
                    self.assertEqual(
                        cls.centraliser_order,
                        len(brute_force_centraliser(element, oracle)),
                    )

    def test_fixed_sets_match_point_counts(self):
        for name in TOY_SYSTEMS:
            context = toy_context(name)
            for cls in context.classes:
                matrices = {
                    LatticeSide.ROOT: as_tuple(cls.representative.matrix),
                    LatticeSide.WEIGHT: as_tuple(
                        dual_action(cls.representative)
                    ),
                }
                for side, matrix in matrices.items():
                    with self.subTest(system=name, label=cls.label, side=side):
                        data = fixed_set(cls.representative, side)
                        self.assertEqual(
                            (data.torus_dim, data.component_count),
                            brute_force_fixed_set(matrix),
                        )

    def test_orbits_on_finite_fixed_sets(self):
        for name, (cartan, _) in TOY_SYSTEMS.items():
            context = toy_context(name)
            oracle = brute_force_group(cartan)
            for cls in context.classes:
                data = fixed_set(cls.representative, LatticeSide.ROOT)
                if data.torus_dim:
                    continue
                with self.subTest(system=name, label=cls.label):
                    action = component_action(
                        cls.representative, cls.centraliser, LatticeSide.ROOT
                    )
                    self.assertEqual(
                        orbit_count(action),
                        brute_force_point_orbits(
                            as_tuple(cls.representative.matrix), oracle
                        ),
                    )

    def test_duality(self):
        for name in TOY_SYSTEMS:
            context = toy_context(name)
            for cls in context.classes:
                with self.subTest(system=name, label=cls.label):
                    report = verify_duality(
                        context.rs, cls.representative, cls.centraliser,
                        cls.label,
                    )
                    self.assertEqual(report.vacuous, cls.label == "C1")

    def test_ktheory_totals(self):
        for name, (_, totals) in TOY_SYSTEMS.items():
            context = toy_context(name)
            for side in LatticeSide:
                with self.subTest(system=name, side=side):
                    report = ktheory(
                        context.group, context.classes, side,
                        sectors=context.sectors(side),
                    )
                    self.assertEqual(report.totals, totals)
            comparison = compare_forms(
                context.group,
                context.classes,
                root_sectors=context.sectors(LatticeSide.ROOT),
                weight_sectors=context.sectors(LatticeSide.WEIGHT),
            )
            self.assertTrue(comparison.passed)

    def test_a2_sectors(self):
        sectors = toy_context("A2").sectors(LatticeSide.ROOT)
        self.assertEqual(
            [sector.betti for sector in sectors], [[1, 0, 0], [1, 1], [3]]
        )

    def test_suites_pass_without_a_class_table(self):
        context = toy_context("A2")
        self.assertFalse(context.has_expectations)
        for suite in (fixed_sets_suite, duality_suite):
            with self.subTest(suite=suite.__name__):
                result = suite(context)
                self.assertTrue(result.passed, result.mismatches)
