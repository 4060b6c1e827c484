"""Rational cohomology of the sectors T^w / Z(w) and the K-theory ranks
they add up to.

An element g of Z(w) maps each component of T^w affinely, with linear
part g restricted to ker(I - w); on cohomology only that linear part and
whether g fixes the component matter. Averaging over Z(w) gives
    b_k = (1/|Z|) sum_g #fixed components(g) * tr(Lambda^k g|ker).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from weyl_torus.exact_linalg import abelian_type, exterior_traces_batch
from weyl_torus.exceptions import NonIntegralBetti
from weyl_torus.torus_fixed import (
    LatticeSide,
    component_action,
    fixed_set,
    orbit_count,
)

logger = logging.getLogger(__name__)

COHOMOLOGY_ONLY = "consistent at cohomology level"


@dataclass
class SectorReport:
    label: str
    side: str
    betti: list
    euler: int
    torus_dim: int
    components: int
    centraliser_order: int

    @property
    def even(self):
        return sum(self.betti[0::2])

    @property
    def odd(self):
        return sum(self.betti[1::2])


def _averaged(totals, order, label):
    values = []
    for k, total in enumerate(totals):
        total = int(total)
        if total % order or total < 0:
            raise NonIntegralBetti(
                f"class {label}: degree {k} average {total}/{order}"
            )
        values.append(total // order)
    return values


def sector_betti(group, element, centraliser, side, label):
    side = LatticeSide(side)
    data = fixed_set(element, side)
    matrices = side.group_matrices(group, centraliser.indices)
    counts = data.fixed_component_counts(matrices)
    traces = exterior_traces_batch(data.restriction_matrices(matrices))

    inverse_indices = group.inverse_index[centraliser.indices]
    inverse_traces = exterior_traces_batch(
        data.restriction_matrices(side.group_matrices(group, inverse_indices))
    )
    if not (inverse_traces == traces).all():
        raise NonIntegralBetti(
            f"class {label}: exterior traces of inverses differ"
        )

    betti = _averaged(
        (counts[:, None] * traces).sum(axis=0), centraliser.order, label
    )
    # det(I - g|ker) is the alternating sum of the exterior traces
    signs = np.array([(-1) ** k for k in range(data.torus_dim + 1)])
    euler_total = int((counts * (traces @ signs)).sum())
    alternating = sum((-1) ** k * b for k, b in enumerate(betti))
    if euler_total % centraliser.order or (
        euler_total // centraliser.order != alternating
    ):
        raise NonIntegralBetti(f"class {label}: Euler characteristic mismatch")

    dimension = data.torus_dim
    identity = np.eye(group.rank, dtype=np.int64)[None]
    unreduced = int(data.fixed_component_counts(identity)[0]) * int(
        exterior_traces_batch(data.restriction_matrices(identity))[0].sum()
    )
    if unreduced != data.component_count * 2 ** dimension:
        raise NonIntegralBetti(f"class {label}: fixed set Betti sum mismatch")

    logger.debug("sector %s (%s): betti %s", label, side.value, betti)
    return SectorReport(
        label=label,
        side=side.value,
        betti=betti,
        euler=alternating,
        torus_dim=dimension,
        components=data.component_count,
        centraliser_order=centraliser.order,
    )


def extended_quotient_report(group, classes, side, jobs=1):
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(
            executor.map(
                lambda cls: sector_betti(
                    group, cls.representative, cls.centraliser, side, cls.label
                ),
                classes,
            )
        )


@dataclass
class KTheoryReport:
    side: str
    k0: int
    k1: int
    sectors: list = field(default_factory=list)

    @property
    def totals(self):
        return (self.k0, self.k1)


def ktheory(group, classes, side, jobs=1, sectors=None):
    side = LatticeSide(side)
    if sectors is None:
        sectors = extended_quotient_report(group, classes, side, jobs=jobs)
    report = KTheoryReport(
        side=side.value,
        k0=sum(sector.even for sector in sectors),
        k1=sum(sector.odd for sector in sectors),
        sectors=sectors,
    )
    logger.info(
        "K-theory ranks on the %s side: %d, %d", side.value, *report.totals
    )
    return report


@dataclass
class FormComparisonRow:
    label: str
    betti_equal: bool
    orbit_counts_equal: bool
    fixed_set_types_equal: bool

    @property
    def passed(self):
        return (
            self.betti_equal
            and self.orbit_counts_equal
            and self.fixed_set_types_equal
        )


@dataclass
class FormComparison:
    rows: list
    statement: str = COHOMOLOGY_ONLY

    @property
    def passed(self):
        return all(row.passed for row in self.rows)


def compare_forms(group, classes, root_sectors=None, weight_sectors=None,
                  jobs=1):
    if root_sectors is None:
        root_sectors = extended_quotient_report(
            group, classes, LatticeSide.ROOT, jobs=jobs
        )
    if weight_sectors is None:
        weight_sectors = extended_quotient_report(
            group, classes, LatticeSide.WEIGHT, jobs=jobs
        )
    rows = []
    for cls, root_sector, weight_sector in zip(
        classes, root_sectors, weight_sectors
    ):
        root = fixed_set(cls.representative, LatticeSide.ROOT)
        weight = fixed_set(cls.representative, LatticeSide.WEIGHT)
        orbits = [
            orbit_count(component_action(cls.representative, cls.centraliser,
                                         side))
            for side in LatticeSide
        ]
        rows.append(
            FormComparisonRow(
                label=cls.label,
                betti_equal=root_sector.betti == weight_sector.betti,
                orbit_counts_equal=orbits[0] == orbits[1],
                fixed_set_types_equal=(
                    root.torus_dim == weight.torus_dim
                    and abelian_type(root.factors)
                    == abelian_type(weight.factors)
                ),
            )
        )
    return FormComparison(rows=rows)
