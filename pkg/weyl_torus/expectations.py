"""Published values for W(E6) that the verification suites compare against.

Rows follow the class table order. Words use the r1..r6 labeling of
`root_system.E6_EDGES`; `s0` is the reflection in the extended root.
Betti pairs are (b0, b1) of each sector; all higher Betti numbers vanish.
Dual fixed-set generators are root coordinates of lifted points of the
adjoint torus: a third stands for a primitive cube root of unity and a
half for -1.
"""
from dataclasses import dataclass, field
from fractions import Fraction

GROUP_ORDER = 51840
CLASS_COUNT = 25
CENTRE_FACTORS = (3,)
KTHEORY_TOTALS = (47, 11)
SECTORS_WITH_ODD_COHOMOLOGY = 10

ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)
HALF = Fraction(1, 2)

# Worked example: an A1^4 element with minor gcd 4 on both sides.
WORKED_EXAMPLE_WORD = "s0 s1 s5 s3"
WORKED_EXAMPLE_MATRIX = (
    (-1, 1, 0, 0, 0, -1),
    (0, 1, 0, 0, 0, -2),
    (0, 1, -1, 1, 0, -2),
    (0, 0, 0, 1, 0, -2),
    (0, 0, 0, 1, -1, -1),
    (0, 0, 0, 0, 0, -1),
)
WORKED_EXAMPLE_MINOR_GCD = 4

T_MATRIX = (
    (1, 0, 0, 0, 0, 0),
    (1, 0, 1, -1, 1, -1),
    (1, -1, 2, -1, 1, -1),
    (1, -1, 1, 0, 1, -1),
    (0, 0, 0, 0, 1, 0),
    (1, -1, 1, -1, 1, 0),
)

POWER_RELATIONS = (
    ("D4[a1]", 2, "A1^4"),
    ("E6[a2]", 2, "A2^3"),
    ("D4", 3, "A1^4"),
)


@dataclass(frozen=True)
class ClassExpectation:
    label: str
    word: str
    eigenvalues: tuple
    centraliser_order: int
    elementary_generators: tuple
    elementary_index: int
    centraliser_generators: tuple
    torus_dim: int
    root_factors: tuple
    betti: tuple
    component_ramified: bool = False
    orbit_count: int = None
    dual_fixed_generators: tuple = field(default=())
    notes: str = ""


SIMPLE = ("s1", "s2", "s3", "s4", "s5", "s6")

CLASS_TABLE = (
    ClassExpectation(
        "empty", "e", ((1, 6),), 51840,
        SIMPLE, 1, SIMPLE,
        6, (), (1, 0),
    ),
    ClassExpectation(
        "A1", "s0", ((1, 5), (2, 1)), 1440,
        ("s0", "s1", "s2", "s3", "s4", "s5"), 1,
        ("s0", "s1", "s2", "s3", "s4", "s5"),
        5, (), (1, 0),
    ),
    ClassExpectation(
        "A1^2", "s0 s1", ((1, 4), (2, 2)), 192,
        ("s0", "s1", "s3", "s4", "s5"), 2,
        ("s0", "u2", "s3", "s4", "s5"),
        4, (), (1, 1),
    ),
    ClassExpectation(
        "A2", "s0 s6", ((1, 4), (3, 1)), 216,
        ("s0 s6", "s1", "s2", "s4", "s5"), 2,
        ("s0 s6", "s1", "s2", "u1"),
        4, (), (1, 0),
        notes="centraliser C3 x (S3 wr C2), not a complex reflection group",
    ),
    ClassExpectation(
        "A1^3", "s0 s1 s5", ((1, 3), (2, 3)), 96,
        ("s0", "s1", "s5", "s3"), 6,
        ("s0", "u1", "u2", "s3"),
        3, (), (1, 0),
    ),
    ClassExpectation(
        "A2xA1", "s0 s6 s1", ((1, 3), (2, 1), (3, 1)), 36,
        ("s0 s6", "s1", "s4", "s5"), 1,
        ("s0 s6", "s1", "s4", "s5"),
        3, (), (1, 1),
    ),
    ClassExpectation(
        "A3", "s0 s6 s3", ((1, 3), (2, 1), (4, 1)), 32,
        ("s0 s6 s3", "s1", "s5"), 2,
        ("s0 s6 s3", "s1", "u1"),
        3, (), (1, 1),
    ),
    ClassExpectation(
        "A1^4", "s0 s1 s5 s3", ((1, 2), (2, 4)), 1152,
        ("s0", "s1", "s5", "s3"), 72,
        ("s0", "s1", "s5", "T", "u1", "u2"),
        2, (2, 2), (2, 0),
        notes="centraliser G28 (Shephard-Todd)",
    ),
    ClassExpectation(
        "A2xA1^2", "s0 s6 s1 s5", ((1, 2), (2, 2), (3, 1)), 24,
        ("s0 s6", "s1", "s5"), 2,
        ("s0 s6", "s1", "u1"),
        2, (), (1, 1),
    ),
    ClassExpectation(
        "A2^2", "s0 s6 s1 s2", ((1, 2), (3, 2)), 108,
        ("s0 s6", "s1 s2", "s4", "s5"), 2,
        ("s0 s6", "u2", "s4", "s5"),
        2, (3,), (3, 0),
        component_ramified=True,
        dual_fixed_generators=((0, TWO_THIRDS, 0, 0, 0, ONE_THIRD),),
    ),
    ClassExpectation(
        "A3xA1", "s0 s6 s3 s1", ((1, 2), (2, 2), (4, 1)), 16,
        ("s0 s6 s3", "s1", "s5"), 1,
        ("s0 s6 s3", "s1", "s5"),
        2, (), (1, 1),
    ),
    ClassExpectation(
        "A4", "s0 s6 s3 s4", ((1, 2), (5, 1)), 10,
        ("s0 s6 s3 s4", "s1"), 1,
        ("s0 s6 s3 s4", "s1"),
        2, (), (1, 1),
    ),
    ClassExpectation(
        "D4", "s0 s1 s5 T", ((1, 2), (2, 2), (6, 1)), 36,
        ("s0 s1 s5 T",), 6,
        ("s0 s1 s5 T", "u1", "u2"),
        2, (), (1, 0),
    ),
    ClassExpectation(
        "D4[a1]", "s1 T s5 s0^{T}", ((1, 2), (4, 2)), 96,
        ("s1 T s5 s0^{T}",), 24,
        ("s5 u3", "s5^{T} u1"),
        2, (), (1, 0),
        notes="centraliser G8 (Shephard-Todd)",
    ),
    ClassExpectation(
        "A2^2xA1", "s0 s6 s5 s1 s2", ((1, 1), (2, 1), (3, 2)), 36,
        ("s0 s6", "s5", "s1 s2"), 2,
        ("s0 s6", "u2", "s5"),
        1, (3,), (3, 0),
        component_ramified=True,
        dual_fixed_generators=((0, TWO_THIRDS, 0, 0, 0, ONE_THIRD),),
    ),
    ClassExpectation(
        "A3xA1^2", "s0 s6 s3 s1 s5", ((1, 1), (2, 3), (4, 1)), 96,
        ("s0 s6 s3", "s1", "s5"), 6,
        ("s0 s6 s3 s1 s5", "s1", "T", "s5"),
        1, (2, 2), (2, 2),
    ),
    ClassExpectation(
        "A4xA1", "s0 s6 s3 s4 s1", ((1, 1), (2, 1), (5, 1)), 10,
        ("s0 s6 s3 s4", "s1"), 1,
        ("s0 s6 s3 s4", "s1"),
        1, (), (1, 1),
    ),
    ClassExpectation(
        "A5", "s0 s6 s3 s4 s5", ((1, 1), (2, 1), (3, 1), (6, 1)), 12,
        ("s0 s6 s3 s4 s5", "s1"), 1,
        ("s0 s6 s3 s4 s5", "s1"),
        1, (3,), (3, 0),
        component_ramified=True,
        dual_fixed_generators=((0, 0, 0, 0, TWO_THIRDS, TWO_THIRDS),),
    ),
    ClassExpectation(
        "D5", "s0 s6 s3 s4 s3^{s2 s4}", ((1, 1), (2, 1), (8, 1)), 8,
        ("s0 s6 s3 s4 s3^{s2 s4}",), 1,
        ("s0 s6 s3 s4 s3^{s2 s4}",),
        1, (), (1, 1),
    ),
    ClassExpectation(
        "D5[a1]", "s0 s6 s3 s4 T", ((1, 1), (2, 1), (4, 1), (6, 1)), 12,
        ("s0 s6 s3 s4 T",), 1,
        ("s0 s6 s3 s4 T",),
        1, (), (1, 1),
    ),
    ClassExpectation(
        "A2^3", "s0 s6 s1 s2 s5 s4", ((3, 3),), 648,
        ("s0 s6", "s1 s2", "s4 s5"), 24,
        ("s0 s6", "T s3", "s5 s4"),
        0, (3, 3, 3), (4, 0),
        component_ramified=True,
        orbit_count=4,
        dual_fixed_generators=(
            (TWO_THIRDS, ONE_THIRD, 0, 0, 0, 0),
            (0, ONE_THIRD, 0, ONE_THIRD, 0, ONE_THIRD),
            (0, TWO_THIRDS, 0, 0, 0, ONE_THIRD),
        ),
        notes="centraliser G25 (Shephard-Todd)",
    ),
    ClassExpectation(
        "A5xA1", "s0 s6 s3 s4 s5 s1", ((2, 2), (3, 1), (6, 1)), 36,
        ("s0 s6 s3 s4 s5", "s1"), 3,
        ("s0 s6 s3 s4 s5 s1", "s1", "T"),
        0, (2, 2, 3), (6, 0),
        component_ramified=True,
        orbit_count=6,
        dual_fixed_generators=(
            (HALF, 0, 0, 0, 0, 0),
            (0, HALF, HALF, HALF, 0, HALF),
            (0, 0, 0, 0, TWO_THIRDS, TWO_THIRDS),
        ),
    ),
    ClassExpectation(
        "E6", "s1 s2 s3 s4 s5 s6", ((3, 1), (12, 1)), 12,
        ("s1 s2 s3 s4 s5 s6",), 1,
        ("s1 s2 s3 s4 s5 s6",),
        0, (3,), (3, 0),
        component_ramified=True,
        orbit_count=3,
        dual_fixed_generators=((0, ONE_THIRD, 0, 0, ONE_THIRD, 0),),
    ),
    ClassExpectation(
        "E6[a1]", "s1 s2 s3 s4 s5 s6^{s3}", ((9, 1),), 9,
        ("s1 s2 s3 s4 s5 s6^{s3}",), 1,
        ("s1 s2 s3 s4 s5 s6^{s3}",),
        0, (3,), (3, 0),
        component_ramified=True,
        orbit_count=3,
        dual_fixed_generators=((0, ONE_THIRD, 0, ONE_THIRD, 0, TWO_THIRDS),),
    ),
    ClassExpectation(
        "E6[a2]", "s6 s2 s0^{T} s1^{T} s4 s3", ((3, 1), (6, 2)), 72,
        ("s6 s2 s0^{T} s1^{T} s4 s3",), 12,
        (
            "s6 s2 s0^{T} s1^{T} s4 s3 s6 s2 s0^{T} s1^{T} s4 s3",
            "T s3",
            "s5 s4",
        ),
        0, (3,), (3, 0),
        component_ramified=True,
        orbit_count=3,
        dual_fixed_generators=((0, ONE_THIRD, 0, 0, 0, TWO_THIRDS),),
        notes="centraliser G5 (Shephard-Todd)",
    ),
)

CLASS_TABLE_BY_LABEL = {row.label: row for row in CLASS_TABLE}
