"""Fixed sets of a Weyl group element on the two tori t/L, L the root
lattice (ROOT side) or the weight lattice (WEIGHT side).

A component of T^w is labelled by the class of (I - w)x in the torsion
of L/(I - w)L. With U (I - w) V = D, that class is read off as
(U (I - w) x)_i mod d_i over the non-unit positions i, and
x = sum_i (c_i / d_i) V e_i is a point of the component labelled c.
"""
import functools
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
import sympy
from sympy.combinatorics import Permutation, PermutationGroup

from weyl_torus.exact_linalg import (
    POLY_VARIABLE,
    abelian_type,
    as_int_matrix,
    evaluate_poly,
    kernel_basis_rational,
    min_poly,
    smith_normal_form,
    solve_in_column_lattice,
)
from weyl_torus.exceptions import (
    DualityFailure,
    IdentityElement,
    NotFixed,
    NotOrthogonal,
)
from weyl_torus.root_system import centre_elements, dual_action

logger = logging.getLogger(__name__)


class LatticeSide(str, Enum):
    ROOT = "root"
    WEIGHT = "weight"

    def action_of(self, element):
        if self is LatticeSide.ROOT:
            return element.matrix
        return dual_action(element)

    def group_matrices(self, group, indices):
        stack = group.elements if self is LatticeSide.ROOT else (
            group.dual_elements
        )
        return stack[indices]

    def from_root_coordinates(self, rs, vector):
        if self is LatticeSide.ROOT:
            return tuple(vector)
        return tuple(
            sum(int(rs.gram[i, j]) * vector[j] for j in range(rs.rank))
            for i in range(rs.rank)
        )


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple

    @classmethod
    def from_vector(cls, vector):
        return cls(tuple(Fraction(x) % 1 for x in vector))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


def _int64(matrix):
    return np.array(as_int_matrix(matrix).tolist(), dtype=np.int64)


class FixedSet:
    """Fixed-set data of one element on one side."""

    def __init__(self, element, side):
        self.element = element
        self.side = LatticeSide(side)
        self.rank = element.rank
        self.action = np.array(self.side.action_of(element), dtype=np.int64)
        self.difference = as_int_matrix(
            np.eye(self.rank, dtype=np.int64) - self.action
        )
        self.snf = smith_normal_form(self.difference)
        self.positions = self.snf.torsion_positions
        self.factors = tuple(
            self.snf.invariant_factors[i] for i in self.positions
        )

    @property
    def torus_dim(self):
        return self.rank - self.snf.rank

    @property
    def invariant_factors(self):
        return list(self.factors)

    @property
    def component_count(self):
        return self.snf.torsion_order

    @functools.cached_property
    def labels(self):
        return list(itertools.product(*(range(d) for d in self.factors)))

    def label_position(self, label):
        position = 0
        for value, d in zip(label, self.factors):
            position = position * d + value
        return position

    @functools.cached_property
    def kernel_lattice(self):
        """Columns spanning ker(I - w) intersected with the lattice."""
        return self.snf.V[:, list(self.snf.kernel_positions)]

    def restriction_matrices(self, matrices):
        """Matrices of commuting elements on ker(I - w), in the basis
        `kernel_lattice`; integral because V is unimodular.
        """
        kernel = list(self.snf.kernel_positions)
        basis_change = _int64(self.snf.V_inv) @ matrices @ _int64(self.snf.V)
        return np.ascontiguousarray(basis_change[:, kernel][:, :, kernel])

    def representative(self, label):
        point = [Fraction(0)] * self.rank
        for value, position, d in zip(label, self.positions, self.factors):
            column = self.snf.V[:, position]
            point = [
                x + Fraction(value * int(entry), d)
                for x, entry in zip(point, column)
            ]
        return TorusPoint.from_vector(point)

    def contains(self, coords):
        image = self.difference.dot(np.array(coords, dtype=object))
        return all(Fraction(x).denominator == 1 for x in image)

    def label_of(self, coords):
        if not self.contains(coords):
            raise NotFixed(f"{tuple(str(x) for x in coords)} is not fixed")
        image = [int(x) for x in self.difference.dot(
            np.array(coords, dtype=object)
        )]
        transformed = self.snf.U.dot(np.array(image, dtype=object))
        return tuple(
            int(transformed[i]) % d
            for i, d in zip(self.positions, self.factors)
        )

    @functools.cached_property
    def torsion_generators(self):
        """Integral vectors of the image lattice, one per non-unit factor,
        generating the torsion of L/(I - w)L.
        """
        return [
            tuple(int(x) for x in self.snf.U_inv[:, i]) for i in self.positions
        ]

    def image_labels(self, matrices):
        """Labels of g.c for every stacked g and every component c.

        Returns an int array of shape (N, |F|) of label positions.
        """
        count = self.component_count
        if not self.positions:
            return np.zeros((len(matrices), count), dtype=np.int64)
        lifts = np.zeros((self.rank, count), dtype=np.int64)
        u_inv = _int64(self.snf.U_inv)
        for column, label in enumerate(self.labels):
            for value, position in zip(label, self.positions):
                lifts[:, column] += value * u_inv[:, position]
        transformed = _int64(self.snf.U) @ matrices @ lifts
        positions = np.zeros((len(matrices), count), dtype=np.int64)
        for position, d in zip(self.positions, self.factors):
            positions = positions * d + transformed[:, position, :] % d
        return positions

    def fixed_component_counts(self, matrices):
        images = self.image_labels(matrices)
        return (images == np.arange(self.component_count)).sum(axis=1)


@functools.lru_cache(maxsize=4096)
def fixed_set(element, side):
    return FixedSet(element, side)


def mbar_polynomial(element):
    """(m-bar, mu) from the minimal polynomial m of the element."""
    if element.is_identity:
        raise IdentityElement("the identity has no twisted pairing")
    t = POLY_VARIABLE
    minimal = min_poly(element.matrix)
    linear = sympy.Poly(t - 1, t, domain="ZZ")
    at_one = int(minimal.eval(1))
    derived = sympy.Poly(minimal - at_one, t, domain="ZZ").exquo(linear)
    if at_one != 0:
        return derived, at_one
    derived_at_one = int(derived.eval(1))
    twice_derived = sympy.Poly(derived - derived_at_one, t, domain="ZZ").exquo(
        linear
    )
    return twice_derived, derived_at_one


def mu_of(element):
    return mbar_polynomial(element)[1]


def mbar_matrix(element):
    return evaluate_poly(mbar_polynomial(element)[0], element.matrix)


def image_projection(rs, element):
    """Gram-orthogonal projection onto the image of I - w, root basis."""
    size = rs.rank
    gram = sympy.Matrix(rs.gram.tolist())
    kernel = kernel_basis_rational(
        np.eye(size, dtype=np.int64) - element.matrix
    )
    if not kernel:
        return sympy.eye(size)
    basis = sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in v]
         for v in kernel]
    ).T
    onto_kernel = basis * (basis.T * gram * basis).inv() * basis.T * gram
    return sympy.eye(size) - onto_kernel


def mu_projection_holds(rs, element):
    size = rs.rank
    mbar, mu = mbar_polynomial(element)
    lhs = sympy.Matrix(evaluate_poly(mbar, element.matrix).tolist()) * (
        sympy.Matrix((np.eye(size, dtype=np.int64) - element.matrix).tolist())
    )
    return lhs == mu * image_projection(rs, element)


def component_invariants(element, side):
    return fixed_set(element, LatticeSide(side)).invariant_factors


def component_reps(element, side):
    data = fixed_set(element, LatticeSide(side))
    return [data.representative(label) for label in data.labels]


def same_component(element, side, first, second):
    data = fixed_set(element, LatticeSide(side))
    for point in (first, second):
        if not data.contains(point.coords):
            raise NotFixed(f"{point} is not fixed by the element")
    difference = [x - y for x, y in zip(first.coords, second.coords)]
    image = data.difference.dot(np.array(difference, dtype=object))
    return solve_in_column_lattice(data.difference, image) is not None


@dataclass
class ComponentAction:
    generators: list
    permutations: list
    degree: int


def component_action(element, centraliser, side):
    data = fixed_set(element, LatticeSide(side))
    generators = list(centraliser.generators())
    if generators:
        matrices = np.stack(
            [np.array(data.side.action_of(g), dtype=np.int64)
             for g in generators]
        )
        images = data.image_labels(matrices)
    else:
        images = np.zeros((0, data.component_count), dtype=np.int64)
    permutations = [tuple(int(x) for x in row) for row in images]
    for permutation in permutations:
        if sorted(permutation) != list(range(data.component_count)):
            raise NotFixed("centraliser does not permute the components")
    return ComponentAction(generators, permutations, data.component_count)


def orbit_count(action):
    if action.degree <= 1:
        return action.degree
    permutations = [Permutation(list(p)) for p in action.permutations]
    if not permutations:
        permutations = [Permutation(list(range(action.degree)))]
    return len(PermutationGroup(permutations).orbits())


def _orthogonal_to_kernel(rs, element, vector, weight_coordinates):
    kernel = kernel_basis_rational(
        np.eye(rs.rank, dtype=np.int64) - element.matrix
    )
    for basis_vector in kernel:
        if weight_coordinates:
            product = sum(x * k for x, k in zip(vector, basis_vector))
        else:
            product = rs.inner(vector, [Fraction(k) for k in basis_vector])
        if product != 0:
            return False
    return True


def twisted_pairing(rs, element, weight_vector, root_vector):
    """<x, mbar(w) y> mod mu for x in the weight lattice and y in the root
    lattice, both orthogonal to the fixed space of w.
    """
    if not _orthogonal_to_kernel(rs, element, weight_vector, True):
        raise NotOrthogonal(f"{tuple(weight_vector)} meets the fixed space")
    if not _orthogonal_to_kernel(rs, element, root_vector, False):
        raise NotOrthogonal(f"{tuple(root_vector)} meets the fixed space")
    mbar, mu = mbar_polynomial(element)
    return _pairing_value(
        evaluate_poly(mbar, element.matrix), mu, weight_vector, root_vector
    )


def _pairing_value(mbar, mu, weight_vector, root_vector):
    image = mbar.dot(np.array([int(y) for y in root_vector], dtype=object))
    return int(np.array([int(x) for x in weight_vector], dtype=object).dot(
        image
    )) % mu


@dataclass
class PairingReport:
    """Outcome of each duality check; None until the check has run."""

    label: str
    mu: int = None
    matrix: list = field(default_factory=list)
    weight_factors: list = field(default_factory=list)
    root_factors: list = field(default_factory=list)
    well_defined: bool = None
    nondegenerate: bool = None
    equivariant: bool = None
    projection_identity: bool = None
    vacuous: bool = False

    @property
    def passed(self):
        return all((
            self.well_defined,
            self.nondegenerate,
            self.equivariant,
            self.projection_identity,
        ))


def _group_elements(factors):
    return list(itertools.product(*(range(d) for d in factors)))


def _is_perfect(matrix, left, right, mu):
    def value(a, b):
        return sum(
            a[i] * matrix[i][j] * b[j]
            for i in range(len(a)) for j in range(len(b))
        ) % mu

    left_elements = _group_elements(left)
    right_elements = _group_elements(right)
    for a in left_elements[1:]:
        if all(value(a, b) == 0 for b in right_elements):
            return False, ("left", a)
    for b in right_elements[1:]:
        if all(value(a, b) == 0 for a in left_elements):
            return False, ("right", b)
    return True, None


def _well_definedness_witness(rs, mbar, mu, weight, root, xs, ys):
    for k in range(rs.rank):
        weight_shift = [int(v) for v in weight.difference[:, k]]
        root_shift = [int(v) for v in root.difference[:, k]]
        for y in ys:
            if _pairing_value(mbar, mu, weight_shift, y):
                return (k, y)
        for x in xs:
            if _pairing_value(mbar, mu, x, root_shift):
                return (x, k)
    return None


def _equivariance_witness(report, centraliser, mbar, xs, ys):
    for g in centraliser.generators():
        dual = dual_action(g)
        for i, x in enumerate(xs):
            moved_x = [int(v) for v in dual @ np.array(x, dtype=np.int64)]
            for j, y in enumerate(ys):
                moved_y = [int(v) for v in g.matrix @ np.array(y)]
                if _pairing_value(mbar, report.mu, moved_x, moved_y) != (
                    report.matrix[i][j]
                ):
                    return (g, i, j)
    return None


def verify_duality(rs, element, centraliser, label):
    """Component groups on both sides, the mu-projection identity, and a
    well-defined, perfect, centraliser-invariant twisted pairing.

    Raises DualityFailure naming the class and a witness.
    """
    if element.is_identity:
        return PairingReport(
            label=label,
            well_defined=True,
            nondegenerate=True,
            equivariant=True,
            projection_identity=True,
            vacuous=True,
        )
    root = fixed_set(element, LatticeSide.ROOT)
    weight = fixed_set(element, LatticeSide.WEIGHT)
    report = PairingReport(
        label=label,
        weight_factors=weight.invariant_factors,
        root_factors=root.invariant_factors,
    )
    if abelian_type(root.factors) != abelian_type(weight.factors):
        raise DualityFailure(
            label, "component groups", (root.factors, weight.factors)
        )
    report.projection_identity = bool(mu_projection_holds(rs, element))
    if not report.projection_identity:
        raise DualityFailure(label, "mu projection identity", element)

    mbar, mu = mbar_polynomial(element)
    mbar = evaluate_poly(mbar, element.matrix)
    report.mu = mu
    xs = weight.torsion_generators
    ys = root.torsion_generators
    for x in xs:
        if not _orthogonal_to_kernel(rs, element, x, True):
            raise NotOrthogonal(f"class {label}: generator {x}")
    for y in ys:
        if not _orthogonal_to_kernel(rs, element, y, False):
            raise NotOrthogonal(f"class {label}: generator {y}")
    report.matrix = [[_pairing_value(mbar, mu, x, y) for y in ys] for x in xs]

    witness = _well_definedness_witness(rs, mbar, mu, weight, root, xs, ys)
    report.well_defined = witness is None
    if not report.well_defined:
        raise DualityFailure(label, "well-definedness", witness)

    report.nondegenerate, witness = _is_perfect(
        report.matrix, weight.factors, root.factors, mu
    )
    if not report.nondegenerate:
        raise DualityFailure(label, "non-degeneracy", witness)

    witness = _equivariance_witness(report, centraliser, mbar, xs, ys)
    report.equivariant = witness is None
    if not report.equivariant:
        raise DualityFailure(label, "equivariance", witness)
    return report


@dataclass
class RamificationReport:
    kind: str
    consistent: bool
    detail: str


def ramification(rs, element, centraliser):
    """Whether the centre lies in the identity component of the root-side
    fixed set (torus-ramified) or injects into its component group
    (component-ramified), with the matching consistency check.
    """
    root = fixed_set(element, LatticeSide.ROOT)
    weight = fixed_set(element, LatticeSide.WEIGHT)
    centre = [TorusPoint.from_vector(z) for z in centre_elements(rs)]
    origin = centre[0]
    inside = all(
        same_component(element, LatticeSide.ROOT, z, origin) for z in centre
    )
    images = {
        weight.label_of(
            LatticeSide.WEIGHT.from_root_coordinates(rs, point.coords)
        )
        for point in component_reps(element, LatticeSide.ROOT)
    }
    if inside:
        consistent = (
            len(images) == root.component_count == weight.component_count
        )
        return RamificationReport(
            "torus", consistent, f"{len(images)} components map bijectively"
        )

    cosets = {
        frozenset(
            tuple((a + b) % d for a, b, d in zip(label, h, weight.factors))
            for h in images
        )
        for label in weight.labels
    }
    action = component_action(element, centraliser, LatticeSide.WEIGHT)
    orbit_sets = _orbits(action)
    coset_of = {label: coset for coset in cosets for label in coset}
    orbits_in_fibres = all(
        len({coset_of[weight.labels[p]] for p in orbit}) == 1
        for orbit in orbit_sets
    )
    consistent = (
        len(cosets) == len(centre)
        and len(images) * len(centre) == weight.component_count
        and orbits_in_fibres
    )
    return RamificationReport(
        "component",
        consistent,
        f"{len(orbit_sets)} orbits over {len(cosets)} fibres",
    )


def _orbits(action):
    if action.degree <= 1 or not action.permutations:
        return [{p} for p in range(action.degree)]
    group = PermutationGroup(
        [Permutation(list(p)) for p in action.permutations]
    )
    return [set(orbit) for orbit in group.orbits()]


def lifted_point_components(rs, element, generators):
    """Span (mod 1) of root-coordinate generators pushed to the adjoint
    torus: whether every point is fixed, and how many components of the
    weight-side fixed set they meet.
    """
    weight = fixed_set(element, LatticeSide.WEIGHT)
    orders = [
        int(np.lcm.reduce([Fraction(x).denominator for x in g]))
        for g in generators
    ]
    labels = set()
    for coefficients in itertools.product(*(range(o) for o in orders)):
        point = [Fraction(0)] * rs.rank
        for c, g in zip(coefficients, generators):
            point = [p + c * Fraction(x) for p, x in zip(point, g)]
        coords = LatticeSide.WEIGHT.from_root_coordinates(rs, point)
        if not weight.contains(coords):
            return False, len(labels)
        labels.add(weight.label_of(coords))
    return True, len(labels)


@dataclass
class FixedSetReport:
    label: str
    side: str
    torus_dim: int
    invariant_factors: list
    component_reps: list
    generator_words: list
    permutations: list
    orbit_count: int
    ramification: str = None
    lifted_points: list = field(default_factory=list)
    lifted_components: int = None


def fixed_set_report(group, cls, side):
    side = LatticeSide(side)
    data = fixed_set(cls.representative, side)
    action = component_action(cls.representative, cls.centraliser, side)
    return FixedSetReport(
        label=cls.label,
        side=side.value,
        torus_dim=data.torus_dim,
        invariant_factors=data.invariant_factors,
        component_reps=component_reps(cls.representative, side),
        generator_words=[
            group.word_of(group.index_of(g)) for g in action.generators
        ],
        permutations=[list(p) for p in action.permutations],
        orbit_count=orbit_count(action),
    )
