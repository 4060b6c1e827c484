from django.test import SimpleTestCase

from weyl_torus.expectations import (
    CLASS_TABLE_BY_LABEL,
    KTHEORY_TOTALS,
    SECTORS_WITH_ODD_COHOMOLOGY,
)
from weyl_torus.sectors_ktheory import (
    COHOMOLOGY_ONLY,
    compare_forms,
    ktheory,
    sector_betti,
)
from weyl_torus.tests.utils import e6_context
from weyl_torus.torus_fixed import (
    LatticeSide,
    component_action,
    orbit_count,
)


class SectorTests(SimpleTestCase):
    def test_betti_numbers_per_class(self):
        context = e6_context()
        for side in LatticeSide:
            for cls, sector in zip(context.classes, context.sectors(side)):
                row = CLASS_TABLE_BY_LABEL[cls.label]
                with self.subTest(label=cls.label, side=side):
                    self.assertEqual(sector.betti[:2], list(row.betti)[
                        : sector.torus_dim + 1
                    ])
                    self.assertTrue(all(b == 0 for b in sector.betti[2:]))

    def test_euler_characteristic(self):
        context = e6_context()
        for sector in context.sectors(LatticeSide.ROOT):
            self.assertEqual(sector.euler, sector.even - sector.odd)

    def test_identity_sector_is_contractible(self):
        context = e6_context()
        identity = context.classes[0]
        sector = sector_betti(
            context.group, identity.representative, identity.centraliser,
            "root", identity.label,
        )
        self.assertEqual(sector.betti, [1, 0, 0, 0, 0, 0, 0])
        self.assertEqual(sector.euler, 1)

    def test_elliptic_sectors_count_component_orbits(self):
        context = e6_context()
        for side in LatticeSide:
            elliptic = [
                (cls, sector)
                for cls, sector in zip(context.classes, context.sectors(side))
                if sector.torus_dim == 0
            ]
            self.assertTrue(elliptic)
            for cls, sector in elliptic:
                action = component_action(
                    cls.representative, cls.centraliser, side
                )
                with self.subTest(label=cls.label, side=side):
                    self.assertEqual(sector.betti, [orbit_count(action)])
        a2_cubed = next(
            sector for sector in context.sectors(LatticeSide.ROOT)
            if sector.label == "A2^3"
        )
        self.assertEqual(a2_cubed.betti, [4])

    def test_odd_cohomology_count(self):
        sectors = e6_context().sectors(LatticeSide.WEIGHT)
        self.assertEqual(
            sum(1 for sector in sectors if sector.odd),
            SECTORS_WITH_ODD_COHOMOLOGY,
        )


class KTheoryTests(SimpleTestCase):
    def test_totals_on_both_sides(self):
        context = e6_context()
        for side in LatticeSide:
            with self.subTest(side=side):
                report = ktheory(
                    context.group, context.classes, side,
                    sectors=context.sectors(side),
                )
                self.assertEqual(report.totals, KTHEORY_TOTALS)
                self.assertEqual(report.side, side.value)

    def test_forms_agree_at_cohomology_level(self):
        context = e6_context()
        comparison = compare_forms(
            context.group,
            context.classes,
            root_sectors=context.sectors(LatticeSide.ROOT),
            weight_sectors=context.sectors(LatticeSide.WEIGHT),
        )
        self.assertTrue(comparison.passed)
        self.assertEqual(len(comparison.rows), 25)
        self.assertEqual(comparison.statement, COHOMOLOGY_ONLY)
