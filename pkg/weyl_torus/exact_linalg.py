"""Exact integer and rational linear algebra.

Integer matrices are numpy arrays of dtype=object holding Python ints, so
no entry ever overflows. Batched group arithmetic elsewhere uses int64
arrays; those are converted with `as_int_matrix` before anything here
touches them.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np
import sympy
from django.conf import settings

from weyl_torus.exceptions import LinalgError, NotRootOfUnitySpectrum

logger = logging.getLogger(__name__)

POLY_VARIABLE = sympy.Symbol("t")
MAX_CYCLOTOMIC_ORDER = 30
INT64_SAFE = 2 ** 62


def strict_checks_enabled():
    return settings.WEYL_TORUS["STRICT_CHECKS"]


def as_int_matrix(data):
    """Copy `data` into a 2-d object array of Python ints."""
    matrix = np.array(data, dtype=object)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    if matrix.ndim != 2:
        raise LinalgError(f"expected a matrix, got shape {matrix.shape}")
    result = np.empty(matrix.shape, dtype=object)
    for index, entry in np.ndenumerate(matrix):
        result[index] = int(entry)
    return result


def identity(size):
    return np.eye(size, dtype=int).astype(object)


def to_fraction(value):
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Fraction):
        return value
    return Fraction(int(value))


@dataclass(frozen=True, eq=False)
class SnfResult:
    """Smith normal form U @ M @ V == D with the inverses of U and V.

    `invariant_factors` lists the nonzero diagonal entries of D in
    divisibility order, units included; `torsion_factors` drops the units.
    """
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray
    invariant_factors: tuple

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def torsion_factors(self):
        return tuple(d for d in self.invariant_factors if d != 1)

    @property
    def torsion_positions(self):
        """Diagonal positions carrying a non-unit nonzero factor."""
        return tuple(
            position
            for position, d in enumerate(self.invariant_factors)
            if d != 1
        )

    @property
    def kernel_positions(self):
        return tuple(range(self.rank, self.D.shape[1]))

    @property
    def torsion_order(self):
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order


class _SnfWorkspace:
    def __init__(self, matrix):
        self.a = as_int_matrix(matrix)
        rows, cols = self.a.shape
        self.u = identity(rows)
        self.u_inv = identity(rows)
        self.v = identity(cols)
        self.v_inv = identity(cols)

    def add_row(self, target, source, factor):
        self.a[target] += factor * self.a[source]
        self.u[target] += factor * self.u[source]
        self.u_inv[:, source] -= factor * self.u_inv[:, target]

    def add_col(self, target, source, factor):
        self.a[:, target] += factor * self.a[:, source]
        self.v[:, target] += factor * self.v[:, source]
        self.v_inv[source] -= factor * self.v_inv[target]

    def swap_rows(self, first, second):
        if first != second:
            self.a[[first, second]] = self.a[[second, first]]
            self.u[[first, second]] = self.u[[second, first]]
            self.u_inv[:, [first, second]] = self.u_inv[:, [second, first]]

    def swap_cols(self, first, second):
        if first != second:
            self.a[:, [first, second]] = self.a[:, [second, first]]
            self.v[:, [first, second]] = self.v[:, [second, first]]
            self.v_inv[[first, second]] = self.v_inv[[second, first]]

    def negate_row(self, row):
        self.a[row] = -self.a[row]
        self.u[row] = -self.u[row]
        self.u_inv[:, row] = -self.u_inv[:, row]

    def smallest_entry(self, start):
        """Row-major scan for the nonzero entry of least absolute value."""
        best = None
        rows, cols = self.a.shape
        for i in range(start, rows):
            for j in range(start, cols):
                entry = self.a[i, j]
                if entry and (
                    best is None or abs(entry) < abs(self.a[best])
                ):
                    best = (i, j)
        return best

    def reduce_pivot(self, t):
        rows, cols = self.a.shape
        while True:
            pivot = self.a[t, t]
            for i in range(t + 1, rows):
                quotient = self.a[i, t] // pivot
                if quotient:
                    self.add_row(i, t, -quotient)
            for j in range(t + 1, cols):
                quotient = self.a[t, j] // pivot
                if quotient:
                    self.add_col(j, t, -quotient)
            residual = [(i, t) for i in range(t + 1, rows) if self.a[i, t]]
            residual += [(t, j) for j in range(t + 1, cols) if self.a[t, j]]
            if residual:
                i, j = min(residual, key=lambda pos: abs(self.a[pos]))
                if j == t:
                    self.swap_rows(t, i)
                else:
                    self.swap_cols(t, j)
                continue
            blocker = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if self.a[i, j] % pivot
                ),
                None,
            )
            if blocker is None:
                break
            self.add_row(t, blocker, 1)
        if self.a[t, t] < 0:
            self.negate_row(t)


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms.

    Args:
        matrix: an integer matrix (anything `as_int_matrix` accepts).

    Returns:
        SnfResult with U @ matrix @ V == D, d1 | d2 | ... on the diagonal.
    """
    work = _SnfWorkspace(matrix)
    source = work.a.copy()
    rows, cols = work.a.shape
    for t in range(min(rows, cols)):
        pivot = work.smallest_entry(t)
        if pivot is None:
            break
        work.swap_rows(t, pivot[0])
        work.swap_cols(t, pivot[1])
        work.reduce_pivot(t)

    diagonal = [work.a[i, i] for i in range(min(rows, cols))]
    result = SnfResult(
        U=work.u,
        D=work.a,
        V=work.v,
        U_inv=work.u_inv,
        V_inv=work.v_inv,
        invariant_factors=tuple(int(d) for d in diagonal if d != 0),
    )
    if strict_checks_enabled():
        _check_snf(source, result)
    return result


def _check_snf(source, result):
    if not (result.U.dot(source).dot(result.V) == result.D).all():
        raise LinalgError("Smith normal form does not reproduce D")
    if not (result.U.dot(result.U_inv) == identity(len(result.U))).all():
        raise LinalgError("row transform is not unimodular")
    if not (result.V.dot(result.V_inv) == identity(len(result.V))).all():
        raise LinalgError("column transform is not unimodular")
    factors = result.invariant_factors
    for smaller, larger in zip(factors, factors[1:]):
        if larger % smaller:
            raise LinalgError(f"divisibility chain broken: {factors}")


def integer_det(matrix):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    rows = [list(map(int, row)) for row in as_int_matrix(matrix)]
    size = len(rows)
    if size == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next(
                (i for i in range(k + 1, size) if rows[i][k] != 0), None
            )
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (
                    rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                ) // previous
        previous = rows[k][k]
    return sign * rows[-1][-1]


def gcd_minors(matrix, r):
    """gcd of all r x r minors; 0 when every minor vanishes."""
    matrix = as_int_matrix(matrix)
    rows, cols = matrix.shape
    if not 0 < r <= min(rows, cols):
        raise LinalgError(f"minor size {r} out of range for {rows}x{cols}")
    divisor = 0
    for row_set in itertools.combinations(range(rows), r):
        block = matrix[list(row_set)]
        for col_set in itertools.combinations(range(cols), r):
            divisor = gcd(divisor, integer_det(block[:, list(col_set)]))
            if divisor == 1:
                return 1
    return divisor


def rank_rational(matrix):
    matrix = as_int_matrix(matrix)
    if matrix.size == 0:
        return 0
    return sympy.Matrix(matrix.tolist()).rank()


def kernel_basis_rational(matrix):
    """Basis of the rational kernel as tuples of Fractions."""
    matrix = as_int_matrix(matrix)
    basis = sympy.Matrix(matrix.tolist()).nullspace()
    return [tuple(to_fraction(entry) for entry in vector) for vector in basis]


def solve_in_column_lattice(matrix, rhs):
    """An integer x with matrix @ x == rhs, or None if there is none."""
    matrix = as_int_matrix(matrix)
    rhs = np.array([int(entry) for entry in rhs], dtype=object)
    if matrix.shape[0] != len(rhs):
        raise LinalgError("right-hand side has the wrong length")
    snf = smith_normal_form(matrix)
    transformed = snf.U.dot(rhs)
    reduced = np.zeros(matrix.shape[1], dtype=object)
    for i, value in enumerate(transformed):
        if i < snf.rank:
            d = snf.invariant_factors[i]
            if value % d:
                return None
            reduced[i] = value // d
        elif value != 0:
            return None
    return snf.V.dot(reduced)


def char_poly(matrix):
    matrix = as_int_matrix(matrix)
    expression = sympy.Matrix(matrix.tolist()).charpoly(POLY_VARIABLE)
    return sympy.Poly(expression.as_expr(), POLY_VARIABLE, domain="ZZ")


def evaluate_poly(poly, matrix):
    """poly(matrix) by Horner's rule, exact."""
    matrix = as_int_matrix(matrix)
    value = np.zeros(matrix.shape, dtype=object)
    for coefficient in poly.all_coeffs():
        value = value.dot(matrix) + int(coefficient) * identity(len(matrix))
    return value


def min_poly(matrix):
    """Monic minimal polynomial from the first linear relation among
    I, M, M^2, ...
    """
    matrix = as_int_matrix(matrix)
    size = len(matrix)
    powers = [identity(size)]
    for degree in range(1, size + 1):
        powers.append(powers[-1].dot(matrix))
        columns = sympy.Matrix(
            [[int(entry) for entry in power.ravel()] for power in powers]
        ).T
        relations = columns.nullspace()
        if relations:
            relation = relations[0] / relations[0][degree]
            coefficients = [to_fraction(c) for c in reversed(list(relation))]
            if any(c.denominator != 1 for c in coefficients):
                raise LinalgError("minimal polynomial is not integral")
            poly = sympy.Poly(
                [int(c) for c in coefficients], POLY_VARIABLE, domain="ZZ"
            )
            if strict_checks_enabled() and evaluate_poly(poly, matrix).any():
                raise LinalgError("minimal polynomial does not annihilate")
            return poly
    raise LinalgError("no relation found among matrix powers")


def cyclotomic_multiset(poly):
    """Factor `poly` into cyclotomic polynomials.

    Returns a tuple of (order d, multiplicity) pairs, d ascending.
    """
    poly = sympy.Poly(poly, POLY_VARIABLE, domain="ZZ")
    if poly.LC() != 1:
        raise LinalgError(f"{poly.as_expr()} is not monic")
    remainder = poly
    found = []
    for order in range(1, MAX_CYCLOTOMIC_ORDER + 1):
        phi = sympy.Poly(
            sympy.cyclotomic_poly(order, POLY_VARIABLE), POLY_VARIABLE,
            domain="ZZ",
        )
        multiplicity = 0
        while remainder.degree() >= phi.degree():
            quotient, rest = remainder.div(phi)
            if not rest.is_zero:
                break
            remainder = quotient
            multiplicity += 1
        if multiplicity:
            found.append((order, multiplicity))
        if remainder.degree() == 0:
            break
    if remainder.degree() != 0:
        raise NotRootOfUnitySpectrum(
            f"non-cyclotomic factor {remainder.as_expr()} remains"
        )
    return tuple(found)


def exterior_trace(matrix, k):
    """Trace of the k-th exterior power: sum of principal k x k minors."""
    matrix = as_int_matrix(matrix)
    size = len(matrix)
    if not 0 <= k <= size:
        raise LinalgError(f"exterior degree {k} out of range for {size}")
    total = 0
    for subset in itertools.combinations(range(size), k):
        indices = list(subset)
        total += integer_det(matrix[np.ix_(indices, indices)])
    return total


def _newton_dtype(matrices):
    """int64 when every power, power sum and Newton numerator fits."""
    size = matrices.shape[-1]
    if matrices.size == 0:
        return np.int64
    spread = size * max(int(np.abs(matrices).max()), 1)
    bound = size * size * spread ** size * (1 + spread) ** size
    return np.int64 if bound < INT64_SAFE else object


def exterior_traces_batch(matrices):
    """Elementary symmetric functions e_0..e_d of the eigenvalues for a
    stack of small integer matrices, via Newton's identities.

    Args:
        matrices: int64 array of shape (N, d, d).

    Returns:
        array of shape (N, d + 1); column k is the trace on the k-th
        exterior power. The dtype is int64 unless the entries could
        overflow it, in which case the sums run over Python ints.
    """
    count, size = matrices.shape[0], matrices.shape[-1]
    dtype = _newton_dtype(matrices)
    matrices = matrices.astype(dtype)
    traces = np.ones((count, size + 1), dtype=dtype)
    if size == 0:
        return traces
    power_sums = np.zeros((count, size + 1), dtype=dtype)
    power = np.broadcast_to(np.eye(size, dtype=dtype), matrices.shape)
    for degree in range(1, size + 1):
        power = power @ matrices
        power_sums[:, degree] = np.trace(power, axis1=1, axis2=2)
    for k in range(1, size + 1):
        numerator = np.zeros(count, dtype=dtype)
        for j in range(1, k + 1):
            sign = 1 if j % 2 else -1
            numerator += sign * traces[:, k - j] * power_sums[:, j]
        if (numerator % k).any():
            raise LinalgError("Newton identity produced a non-integer trace")
        traces[:, k] = numerator // k
    return traces


def abelian_type(factors):
    """Elementary divisors (prime powers, sorted) of a finite abelian group
    given by any list of cyclic orders.
    """
    divisors = []
    for factor in factors:
        for prime, exponent in sympy.factorint(int(factor)).items():
            divisors.append(prime ** exponent)
    return tuple(sorted(divisors))
