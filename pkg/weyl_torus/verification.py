"""Verification suites shared by the management commands.

Each suite runs against a VerificationContext and returns a SuiteResult:
serialized rows for the emitters, a summary, and the list of mismatches
against the published tables. Internal consistency checks run for every
root system; table checks only where a class table is known.
"""
import functools
import logging
import time
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from weyl_torus import expectations
from weyl_torus.exact_linalg import abelian_type, gcd_minors
from weyl_torus.exceptions import DualityFailure, NotOrthogonal
from weyl_torus.group_cache import load_group
from weyl_torus.root_system import (
    centre_elements,
    centre_quotient,
    e6,
    parse_word,
    special_elements,
)
from weyl_torus.sectors_ktheory import (
    compare_forms,
    extended_quotient_report,
    ktheory,
)
from weyl_torus.serializers import (
    ConjugacyClassSerializer,
    FixedSetReportSerializer,
    FormComparisonRowSerializer,
    KTheoryReportSerializer,
    PairingReportSerializer,
    PowerEdgeSerializer,
    SectorReportSerializer,
)
from weyl_torus.torus_fixed import (
    LatticeSide,
    TorusPoint,
    component_action,
    fixed_set,
    fixed_set_report,
    lifted_point_components,
    orbit_count,
    ramification,
    same_component,
    verify_duality,
)
from weyl_torus.weyl_group import (
    conjugacy_classes,
    power_class_map,
    subgroup_generated,
)

logger = logging.getLogger(__name__)

SIDES = {
    "root": (LatticeSide.ROOT,),
    "weight": (LatticeSide.WEIGHT,),
    "both": (LatticeSide.ROOT, LatticeSide.WEIGHT),
}
SPECIAL_NAMES = ("s0", "T", "u1", "u2", "u3")


@dataclass
class Mismatch:
    suite: str
    row: str
    field: str
    expected: object
    actual: object

    def __str__(self):
        return (
            f"{self.suite}: row {self.row}, {self.field}: expected "
            f"{self.expected}, got {self.actual}"
        )


@dataclass
class SuiteResult:
    name: str
    title: str
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.mismatches

    def check(self, row, field_name, expected, actual):
        if expected != actual:
            self.mismatches.append(
                Mismatch(self.name, str(row), field_name, expected, actual)
            )
            return False
        return True


class VerificationContext:
    """The root system, its cached group and classes, and the run options
    shared by every suite of one command.
    """

    def __init__(self, rs=None, cache_path=None, jobs=None, sample=None,
                 seed=None, class_table=None):
        config = settings.WEYL_TORUS
        self.rs = rs if rs is not None else e6()
        self.cache_path = cache_path
        self.jobs = jobs or config["JOBS"]
        self.sample = sample or config["SAMPLE_SIZE"]
        self.seed = config["SEED"] if seed is None else seed
        if class_table is None and self.rs.has_e6_labeling:
            class_table = expectations.CLASS_TABLE
        self.class_table = class_table
        self._expected = {row.label: row for row in class_table or ()}
        self._sectors = {}

    @property
    def has_expectations(self):
        return self.class_table is not None

    @functools.cached_property
    def group(self):
        return load_group(self.rs, self.cache_path)

    @functools.cached_property
    def classes(self):
        return conjugacy_classes(
            self.group, expected=self.class_table, jobs=self.jobs
        )

    def expectation(self, cls):
        return self._expected.get(cls.label)

    def sectors(self, side):
        side = LatticeSide(side)
        if side not in self._sectors:
            self._sectors[side] = extended_quotient_report(
                self.group, self.classes, side, jobs=self.jobs
            )
        return self._sectors[side]

    def generated(self, words):
        return subgroup_generated(
            self.group, [parse_word(self.rs, word) for word in words]
        )


def timed(function):
    @functools.wraps(function)
    def wrapper(context, *args, **kwargs):
        started = time.perf_counter()
        logger.info("suite %s started", function.__name__)
        result = function(context, *args, **kwargs)
        result.elapsed = time.perf_counter() - started
        logger.info(
            "suite %s finished in %.2fs with %d mismatches",
            result.name,
            result.elapsed,
            len(result.mismatches),
        )
        return result

    return wrapper


@timed
def classes_suite(context, side="both"):
    result = SuiteResult("classes", "Conjugacy classes and centralisers")
    group = context.group
    classes = context.classes
    centre = centre_quotient(context.rs)
    result.summary = {
        "system": context.rs.name,
        "order": group.order,
        "class_count": len(classes),
        "centre": centre,
    }
    result.check(
        "group", "class equation", group.order,
        sum(cls.size for cls in classes),
    )
    if context.has_expectations:
        result.check("group", "order", expectations.GROUP_ORDER, group.order)
        result.check(
            "group", "class_count", expectations.CLASS_COUNT, len(classes)
        )
        result.check(
            "group", "centre", list(expectations.CENTRE_FACTORS), centre
        )

    for cls in classes:
        row = dict(ConjugacyClassSerializer(cls).data)
        row["elementary_order"] = None
        row["elementary_index"] = None
        expected = context.expectation(cls)
        if expected is not None:
            result.check(
                cls.label, "centraliser_order",
                expected.centraliser_order, cls.centraliser_order,
            )
            elementary = context.generated(expected.elementary_generators)
            row["elementary_order"] = elementary.order
            if result.check(
                cls.label, "elementary part inside centraliser",
                True, elementary.is_subgroup_of(cls.centraliser),
            ):
                row["elementary_index"] = elementary.index_in(
                    cls.centraliser
                )
                result.check(
                    cls.label, "elementary_index",
                    expected.elementary_index, row["elementary_index"],
                )
            generated = context.generated(expected.centraliser_generators)
            result.check(
                cls.label, "centraliser generators",
                cls.centraliser_order,
                generated.order
                if generated.is_subgroup_of(cls.centraliser) else None,
            )
            if expected.notes:
                result.notes.append(f"{cls.label}: {expected.notes}")
        result.rows.append(row)
    return result


def _check_components(result, cls, side):
    data = fixed_set(cls.representative, side)
    reps = [data.representative(label) for label in data.labels]
    result.check(
        cls.label, f"{side.value} component count",
        data.component_count, len(reps),
    )
    origin = reps[0]
    for label, point in zip(data.labels, reps):
        result.check(
            cls.label, f"{side.value} label of {point}",
            label, data.label_of(point.coords),
        )
        if point is not origin and same_component(
            cls.representative, side, point, origin
        ):
            result.check(
                cls.label, f"{side.value} component of {point}",
                "distinct from the identity component", "identity component",
            )


def _check_centre(context, result, cls):
    root = fixed_set(cls.representative, LatticeSide.ROOT)
    centre = [TorusPoint.from_vector(z) for z in centre_elements(context.rs)]
    fixed = all(root.contains(z.coords) for z in centre)
    result.check(cls.label, "centre fixed", True, fixed)
    if fixed and root.torus_dim == 0 and root.component_count == len(centre):
        result.check(
            cls.label, "fixed set is the centre",
            len(centre), len({root.label_of(z.coords) for z in centre}),
        )


def _attach_lifted_points(context, result, cls, report, expected):
    generators = expected.dual_fixed_generators
    fixed, components = lifted_point_components(
        context.rs, cls.representative, generators
    )
    report.lifted_points = [list(point) for point in generators]
    report.lifted_components = components
    weight = fixed_set(cls.representative, LatticeSide.WEIGHT)
    result.check(
        cls.label, "lifted dual fixed points",
        (True, weight.component_count), (fixed, components),
    )


@timed
def fixed_sets_suite(context, side="both"):
    result = SuiteResult("fixed_sets", "Centralisers, fixed sets and orbits")
    rank = context.rs.rank
    for cls in context.classes:
        expected = context.expectation(cls)
        verdict = ramification(
            context.rs, cls.representative, cls.centraliser
        )
        for lattice_side in SIDES[side]:
            report = fixed_set_report(context.group, cls, lattice_side)
            report.ramification = verdict.kind
            if (
                expected is not None
                and expected.dual_fixed_generators
                and lattice_side is LatticeSide.WEIGHT
            ):
                _attach_lifted_points(context, result, cls, report, expected)
            row = dict(FixedSetReportSerializer(report).data)
            row["ramification_consistent"] = verdict.consistent
            result.rows.append(row)

            result.check(
                cls.label, f"{lattice_side.value} torus_dim",
                rank - cls.reflection_length, report.torus_dim,
            )
            _check_components(result, cls, lattice_side)
            if expected is None:
                continue
            result.check(
                cls.label, f"{lattice_side.value} torus_dim",
                expected.torus_dim, report.torus_dim,
            )
            result.check(
                cls.label, f"{lattice_side.value} component group",
                abelian_type(expected.root_factors),
                abelian_type(report.invariant_factors),
            )
            if expected.orbit_count is not None:
                result.check(
                    cls.label, f"{lattice_side.value} orbit_count",
                    expected.orbit_count, report.orbit_count,
                )

        _check_centre(context, result, cls)
        if expected is None:
            continue
        result.check(
            cls.label, "ramification",
            "component" if expected.component_ramified else "torus",
            verdict.kind,
        )
        result.check(
            cls.label, "ramification consistent", True, verdict.consistent
        )
    result.summary["lifted_classes"] = sum(
        1 for row in result.rows if row["lifted_points"]
    )
    return result


def minor_identity(element):
    """(root torsion, weight torsion, root minor gcd, weight minor gcd)
    for a non-identity element.
    """
    values = []
    gcds = []
    for side in LatticeSide:
        data = fixed_set(element, side)
        values.append(data.component_count)
        gcds.append(gcd_minors(data.difference, data.snf.rank))
    return tuple(values + gcds)


def sweep_indices(context):
    group = context.group
    count = min(context.sample, group.order)
    generator = np.random.default_rng(context.seed)
    sample = generator.choice(group.order, size=count, replace=False)
    representatives = [
        group.index_of(cls.representative) for cls in context.classes
    ]
    return sorted(set(representatives) | set(int(i) for i in sample))


@timed
def duality_suite(context, side="both"):
    result = SuiteResult("duality", "Component groups and twisted pairing")
    for cls in context.classes:
        try:
            report = verify_duality(
                context.rs, cls.representative, cls.centraliser, cls.label
            )
        except DualityFailure as failure:
            result.check(cls.label, failure.check, "pass", failure.witness)
            continue
        except NotOrthogonal as error:
            result.check(cls.label, "orthogonality", "pass", str(error))
            continue
        result.check(cls.label, "pairing checks", True, report.passed)
        if report.vacuous:
            result.notes.append(
                f"class {cls.label}: identity element, pairing checks are "
                "vacuous"
            )
        row = dict(PairingReportSerializer(report).data)
        orbits = [
            orbit_count(
                component_action(cls.representative, cls.centraliser, s)
            )
            for s in LatticeSide
        ]
        row["root_orbits"], row["weight_orbits"] = orbits
        result.check(cls.label, "orbit counts agree", orbits[0], orbits[1])
        result.rows.append(row)

    group = context.group
    indices = sweep_indices(context)
    checked = 0
    for index in indices:
        element = group.element(index)
        if element.is_identity:
            continue
        root, weight, root_gcd, weight_gcd = minor_identity(element)
        checked += 1
        result.check(
            group.word_of(index), "torsion and minor gcds",
            (root, root, root), (weight, root_gcd, weight_gcd),
        )
    result.summary = {"sweep_size": checked, "seed": context.seed}

    if context.has_expectations:
        example = parse_word(context.rs, expectations.WORKED_EXAMPLE_WORD)
        result.check(
            "worked example", "matrix",
            [list(row) for row in expectations.WORKED_EXAMPLE_MATRIX],
            example.matrix.tolist(),
        )
        _, _, root_gcd, weight_gcd = minor_identity(example)
        result.check(
            "worked example", "minor gcd",
            (expectations.WORKED_EXAMPLE_MINOR_GCD,) * 2,
            (root_gcd, weight_gcd),
        )
        result.summary["worked_example_gcd"] = root_gcd
    return result


def _expected_betti(expected, torus_dim):
    return (list(expected.betti) + [0] * torus_dim)[: torus_dim + 1]


@timed
def sectors_suite(context, side="both"):
    result = SuiteResult("sectors", "Sector cohomology")
    for lattice_side in SIDES[side]:
        sectors = context.sectors(lattice_side)
        for cls, sector in zip(context.classes, sectors):
            result.rows.append(dict(SectorReportSerializer(sector).data))
            if sector.torus_dim == 0:
                result.check(
                    cls.label, f"{lattice_side.value} b0 of elliptic sector",
                    orbit_count(component_action(
                        cls.representative, cls.centraliser, lattice_side
                    )),
                    sector.betti[0],
                )
            expected = context.expectation(cls)
            if expected is not None:
                result.check(
                    cls.label, f"{lattice_side.value} betti",
                    _expected_betti(expected, sector.torus_dim),
                    sector.betti,
                )
        odd = sum(1 for sector in sectors if sector.odd)
        result.summary[f"{lattice_side.value}_odd_sectors"] = odd
        if context.has_expectations:
            result.check(
                lattice_side.value, "sectors with odd cohomology",
                expectations.SECTORS_WITH_ODD_COHOMOLOGY, odd,
            )
    if side == "both":
        _compare(context, result)
    return result


def _compare(context, result):
    comparison = compare_forms(
        context.group,
        context.classes,
        root_sectors=context.sectors(LatticeSide.ROOT),
        weight_sectors=context.sectors(LatticeSide.WEIGHT),
        jobs=context.jobs,
    )
    for row in comparison.rows:
        result.check(row.label, "root and weight sectors agree", True,
                     row.passed)
    result.summary["comparison"] = [
        dict(FormComparisonRowSerializer(row).data)
        for row in comparison.rows
    ]
    result.summary["statement"] = comparison.statement
    return comparison


@timed
def ktheory_suite(context, side="both"):
    result = SuiteResult("ktheory", "K-theory ranks")
    totals = {}
    for lattice_side in SIDES[side]:
        report = ktheory(
            context.group,
            context.classes,
            lattice_side,
            sectors=context.sectors(lattice_side),
        )
        totals[lattice_side] = report.totals
        result.rows.append(dict(KTheoryReportSerializer(report).data))
        if context.has_expectations:
            result.check(
                lattice_side.value, "totals",
                expectations.KTHEORY_TOTALS, report.totals,
            )
    if side == "both":
        result.check(
            "totals", "root and weight totals agree",
            totals[LatticeSide.ROOT], totals[LatticeSide.WEIGHT],
        )
        _compare(context, result)
    return result


@timed
def power_map_suite(context, side="both"):
    result = SuiteResult("power_map", "Power relations between classes")
    edges = power_class_map(context.group, context.classes)
    for edge in edges:
        result.rows.append(dict(PowerEdgeSerializer(edge).data))
        result.check(
            f"{edge.source}^{edge.exponent}", "centraliser inclusion",
            True, edge.centraliser_inclusion,
        )
    if context.has_expectations:
        targets = {(edge.source, edge.exponent): edge.target for edge in edges}
        for source, exponent, target in expectations.POWER_RELATIONS:
            result.check(
                f"{source}^{exponent}", "target class",
                target, targets.get((source, exponent)),
            )
    result.summary = {
        "edges": len(edges),
        "literal": sum(1 for edge in edges if edge.literal),
    }
    return result


@timed
def dump_suite(context, side="both"):
    result = SuiteResult("dump", "Group elements")
    group = context.group
    labels = {cls.class_id: cls.label for cls in context.classes}
    for index in range(group.order):
        result.rows.append(
            {
                "index": index,
                "word": group.word_of(index),
                "class": labels[int(group.class_index[index])],
                "matrix": group.elements[index].tolist(),
            }
        )
    rs = context.rs
    result.summary = {
        "system": rs.name,
        "cartan": [[int(x) for x in row] for row in rs.cartan],
        "order": group.order,
        "all_roots": [[int(x) for x in root] for root in rs.all_roots],
    }
    if rs.has_e6_labeling:
        specials = special_elements(rs)
        result.summary["r0"] = list(specials.r0)
        result.summary["r_t"] = list(specials.r_t)
        result.summary["special_elements"] = {
            name: getattr(specials, name).matrix.tolist()
            for name in SPECIAL_NAMES
        }
    return result


SUITES = {
    "classes": classes_suite,
    "fixed_sets": fixed_sets_suite,
    "duality": duality_suite,
    "sectors": sectors_suite,
    "ktheory": ktheory_suite,
    "power_map": power_map_suite,
    "dump": dump_suite,
}

VERIFY_ALL_ORDER = (
    "classes",
    "fixed_sets",
    "duality",
    "sectors",
    "ktheory",
    "power_map",
)
