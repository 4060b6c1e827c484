"""Root data from a simply-laced Cartan matrix, the E6 conventions used
throughout (extended root r0, the root rT and the special elements), and
the word notation for Weyl group elements.

All vectors are in simple-root coordinates, so the root lattice is Z^n.
"""
import functools
import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from weyl_torus.exact_linalg import (
    as_int_matrix,
    smith_normal_form,
    strict_checks_enabled,
)
from weyl_torus.exceptions import (
    InvalidCartan,
    LinalgError,
    NotARoot,
    NotE6,
    WordSyntaxError,
)

logger = logging.getLogger(__name__)

MAX_ROOTS = 10_000
MAX_ELEMENT_ORDER = 1_000

# chain r1-r2-r3-r4-r5 with r6 attached to r3
E6_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (3, 6))
E6_R0 = (-1, -2, -3, -2, -1, -2)
E6_RT = (0, -1, -1, -1, 0, -1)
U1_ROOTS = (E6_R0, (0, 0, 1, 0, 0, 0), (0, 1, 1, 1, 0, 0), (1, 1, 1, 1, 1, 0))
U2_ROOTS = (
    (0, 0, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 1, 1, 0, 0, 1),
    (0, -1, -2, -2, -1, -1),
)
U3_ROOTS = (
    (1, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 0, 1, 1, 0, 1),
    (-1, -2, -2, -1, 0, -1),
)


def cartan_from_edges(rank, edges):
    """Simply-laced Cartan matrix of a diagram on nodes 1..rank."""
    cartan = 2 * np.eye(rank, dtype=int)
    for first, second in edges:
        cartan[first - 1, second - 1] = -1
        cartan[second - 1, first - 1] = -1
    return as_int_matrix(cartan)


class GroupElement:
    """A Weyl group element acting on root coordinates.

    Column j of `matrix` is the image of the j-th simple root. Products
    compose as matrices: (a @ b) acts as b first, then a.
    """

    __slots__ = ("matrix", "canonical_key")

    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=np.int64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise LinalgError(f"group element must be square: {matrix.shape}")
        if matrix.size and np.abs(matrix).max() > 127:
            raise LinalgError("matrix entries do not fit the byte encoding")
        matrix.flags.writeable = False
        self.matrix = matrix
        self.canonical_key = bytes([len(matrix)]) + matrix.astype(
            np.int8
        ).tobytes()

    @classmethod
    def identity(cls, rank):
        return cls(np.eye(rank, dtype=np.int64))

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def is_identity(self):
        return bool((self.matrix == np.eye(self.rank, dtype=np.int64)).all())

    def __matmul__(self, other):
        return GroupElement(self.matrix @ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.canonical_key == other.canonical_key

    def __hash__(self):
        return hash(self.canonical_key)

    def __repr__(self):
        return f"GroupElement({self.matrix.tolist()})"

    def power(self, exponent):
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = GroupElement.identity(self.rank)
        for _ in range(exponent):
            result = result @ self
        return result

    def order(self):
        current = self
        for order in range(1, MAX_ELEMENT_ORDER + 1):
            if current.is_identity:
                return order
            current = current @ self
        raise LinalgError(f"element order exceeds {MAX_ELEMENT_ORDER}")

    def inverse(self):
        return self.power(self.order() - 1)

    def conjugate_by(self, other):
        """other^-1 @ self @ other, written self^{other} in words."""
        return other.inverse() @ self @ other


@dataclass(frozen=True, eq=False)
class RootSystem:
    name: str
    cartan: np.ndarray
    all_roots: tuple
    simple_reflections: tuple
    dual_basis_change: sympy.Matrix

    @property
    def gram(self):
        return self.cartan

    @property
    def rank(self):
        return len(self.cartan)

    @property
    def simple_roots(self):
        return tuple(
            tuple(int(i == j) for j in range(self.rank))
            for i in range(self.rank)
        )

    @property
    def positive_roots(self):
        return tuple(root for root in self.all_roots if min(root) >= 0)

    @functools.cached_property
    def root_set(self):
        return frozenset(self.all_roots)

    @property
    def has_e6_labeling(self):
        return self.rank == 6 and bool(
            (self.cartan == cartan_from_edges(6, E6_EDGES)).all()
        )

    def inner(self, first, second):
        """Gram pairing; exact for integer or Fraction coordinates."""
        return np.array(first, dtype=object).dot(
            self.cartan.dot(np.array(second, dtype=object))
        )

    def permutes_roots(self, element):
        roots = np.array(self.all_roots, dtype=np.int64).T
        images = element.matrix @ roots
        return {tuple(map(int, column)) for column in images.T} == (
            self.root_set
        )


def _validate_cartan(cartan):
    rows, cols = cartan.shape
    if rows != cols:
        raise InvalidCartan(f"Cartan matrix must be square, got {rows}x{cols}")
    for i, j in itertools.product(range(rows), repeat=2):
        entry = cartan[i, j]
        if i == j and entry != 2:
            raise InvalidCartan(f"diagonal entry ({i}, {j}) is {entry}")
        if i != j and entry not in (0, -1):
            raise InvalidCartan(
                f"entry ({i}, {j}) is {entry}: only simply-laced systems "
                "are supported"
            )
        if entry != cartan[j, i]:
            raise InvalidCartan(f"asymmetric pattern at ({i}, {j})")


def _root_closure(cartan):
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        next_frontier = []
        for root in frontier:
            pairings = cartan.dot(np.array(root, dtype=object))
            for i in range(rank):
                image = list(root)
                image[i] -= pairings[i]
                image = tuple(image)
                if image not in found:
                    found.add(image)
                    next_frontier.append(image)
        if len(found) > MAX_ROOTS:
            raise InvalidCartan(
                f"root closure exceeded {MAX_ROOTS} roots: not of finite type"
            )
        frontier = next_frontier
    return found


def _root_order(root):
    positive = min(root) >= 0
    return (not positive, abs(sum(root)), tuple(abs(c) for c in root))


def from_cartan(cartan, name=None):
    cartan = as_int_matrix(cartan)
    _validate_cartan(cartan)
    if not sympy.Matrix(cartan.tolist()).is_positive_definite:
        raise InvalidCartan("Cartan matrix is not of finite type")
    roots = tuple(sorted(_root_closure(cartan), key=_root_order))
    rank = len(cartan)
    reflections = tuple(
        _reflection(cartan, root)
        for root in (
            tuple(int(i == j) for j in range(rank)) for i in range(rank)
        )
    )
    system = RootSystem(
        name=name or f"rank {rank}",
        cartan=cartan,
        all_roots=roots,
        simple_reflections=reflections,
        dual_basis_change=sympy.Matrix(cartan.tolist()).inv(),
    )
    logger.info("root system %s: %d roots", system.name, len(roots))
    return system


def _reflection(cartan, root):
    root_vector = np.array(root, dtype=np.int64)
    pairing = np.array(cartan, dtype=np.int64) @ root_vector
    size = len(root_vector)
    return GroupElement(
        np.eye(size, dtype=np.int64) - np.outer(root_vector, pairing)
    )


@functools.lru_cache(maxsize=None)
def e6():
    system = from_cartan(cartan_from_edges(6, E6_EDGES), name="E6")
    for i, simple in enumerate(system.simple_roots, start=1):
        expected = -1 if i == 6 else 0
        if system.inner(E6_R0, simple) != expected:
            raise InvalidCartan(f"r0 has the wrong angle with r{i}")
    if E6_R0 not in system.root_set or E6_RT not in system.root_set:
        raise InvalidCartan("r0 and rT must be roots")
    return system


def reflection_matrix(rs, root):
    root = tuple(int(c) for c in root)
    if root not in rs.root_set:
        raise NotARoot(f"{root} is not a root of {rs.name}")
    element = _reflection(rs.cartan, root)
    if strict_checks_enabled() and not rs.permutes_roots(element):
        raise LinalgError(f"reflection in {root} does not permute the roots")
    return element


@dataclass(frozen=True, eq=False)
class SpecialElements:
    r0: tuple
    r_t: tuple
    s0: GroupElement
    T: GroupElement
    u1: GroupElement
    u2: GroupElement
    u3: GroupElement


def commuting_product(rs, roots):
    product = GroupElement.identity(rs.rank)
    for root in roots:
        product = product @ reflection_matrix(rs, root)
    return product


def special_elements(rs):
    if not rs.has_e6_labeling:
        raise NotE6(f"{rs.name} is not E6 with the r1..r6 labeling")
    u1 = commuting_product(rs, U1_ROOTS)
    u2 = commuting_product(rs, U2_ROOTS)
    u3 = commuting_product(rs, U3_ROOTS)
    if strict_checks_enabled() and not (
        u3 == u1 @ u2 @ u1 == u2 @ u1 @ u2
    ):
        raise LinalgError("u3 differs from u1 u2 u1 or u2 u1 u2")
    return SpecialElements(
        r0=E6_R0,
        r_t=E6_RT,
        s0=reflection_matrix(rs, E6_R0),
        T=reflection_matrix(rs, E6_RT),
        u1=u1,
        u2=u2,
        u3=u3,
    )


_TOKEN = re.compile(r"\s*(?:(?P<letter>s\d|u\d|T|e)|(?P<symbol>[\^{}()]))")


class _WordParser:
    """Recursive descent over: word := factor*, factor := atom ('^' '{'
    word '}')*, atom := letter | '(' word ')'.
    """

    def __init__(self, rs, text):
        self.rs = rs
        self.text = text
        self.tokens = self._tokenize()
        self.cursor = 0

    def _tokenize(self):
        tokens = []
        position = 0
        text = self.text.rstrip()
        while position < len(text):
            match = _TOKEN.match(text, position)
            if match is None:
                start = position + len(text[position:]) - len(
                    text[position:].lstrip()
                )
                raise WordSyntaxError("unexpected character", self.text, start)
            kind = "letter" if match.group("letter") else "symbol"
            tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        return tokens

    def _peek(self):
        if self.cursor < len(self.tokens):
            return self.tokens[self.cursor]
        return None

    def _expect(self, symbol):
        token = self._peek()
        if token is None or token[1] != symbol:
            position = token[2] if token else len(self.text)
            raise WordSyntaxError(f"expected {symbol!r}", self.text, position)
        self.cursor += 1

    def parse(self):
        element = self._word()
        token = self._peek()
        if token is not None:
            raise WordSyntaxError(
                f"unexpected {token[1]!r}", self.text, token[2]
            )
        return element

    def _word(self):
        element = GroupElement.identity(self.rs.rank)
        while True:
            token = self._peek()
            if token is None or token[1] in ("}", ")", "^", "{"):
                return element
            element = element @ self._factor()

    def _factor(self):
        atom = self._atom()
        while self._peek() is not None and self._peek()[1] == "^":
            self.cursor += 1
            self._expect("{")
            exponent = self._word()
            self._expect("}")
            atom = atom.conjugate_by(exponent)
        return atom

    def _atom(self):
        kind, value, position = self._peek()
        self.cursor += 1
        if value == "(":
            element = self._word()
            self._expect(")")
            return element
        if kind != "letter":
            raise WordSyntaxError(f"unexpected {value!r}", self.text, position)
        return self._letter(value, position)

    def _letter(self, value, position):
        if value == "e":
            return GroupElement.identity(self.rs.rank)
        if value.startswith("s") and value != "s0":
            index = int(value[1:])
            if not 1 <= index <= self.rs.rank:
                raise WordSyntaxError(
                    f"no simple reflection {value}", self.text, position
                )
            return self.rs.simple_reflections[index - 1]
        specials = special_elements(self.rs)
        if value == "s0":
            return specials.s0
        if value == "T":
            return specials.T
        element = {"u1": specials.u1, "u2": specials.u2, "u3": specials.u3}
        if value not in element:
            raise WordSyntaxError(
                f"unknown generator {value}", self.text, position
            )
        return element[value]


def parse_word(rs, text):
    """Evaluate a word such as "s0 s6 s3 s4 s3^{s2 s4}".

    Juxtaposition multiplies left to right as matrices; a^{b} is b^-1 a b
    and binds tighter than juxtaposition.
    """
    element = _WordParser(rs, text).parse()
    if strict_checks_enabled() and not rs.permutes_roots(element):
        raise LinalgError(f"{text!r} does not permute the roots")
    return element


def dual_action(element):
    """Contragredient matrix: the action on weight-lattice coordinates."""
    return np.ascontiguousarray(element.inverse().matrix.T)


def centre_quotient(rs):
    """Invariant factors of the weight lattice modulo the root lattice."""
    return list(smith_normal_form(rs.gram).torsion_factors)


def centre_elements(rs):
    """Root coordinates, reduced mod 1, of every coset of weights modulo
    roots. The zero coset comes first.
    """
    snf = smith_normal_form(rs.gram)
    positions = snf.torsion_positions
    generators = [
        [
            Fraction(int(entry), snf.invariant_factors[i])
            for entry in snf.V[:, i]
        ]
        for i in positions
    ]
    points = []
    for coefficients in itertools.product(
        *(range(snf.invariant_factors[i]) for i in positions)
    ):
        point = [Fraction(0)] * rs.rank
        for coefficient, generator in zip(coefficients, generators):
            point = [x + coefficient * g for x, g in zip(point, generator)]
        points.append(tuple(x % 1 for x in point))
    return points
