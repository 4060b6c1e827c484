"""Enumeration of a Weyl group, its conjugacy classes, centralisers and
power relations.

Elements live in one int64 array of shape (N, n, n); everything that
scans the group works on that array in batches and looks results up
through the canonical byte keys.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import sympy

from weyl_torus.exact_linalg import (
    char_poly,
    cyclotomic_multiset,
    rank_rational,
)
from weyl_torus.exceptions import ClassMatchFailure, LinalgError
from weyl_torus.root_system import GroupElement, parse_word

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 10 ** 6


def stack_keys(stack):
    """Canonical keys of a (N, n, n) stack, matching GroupElement keys."""
    if stack.size and np.abs(stack).max() > 127:
        raise LinalgError("matrix entries do not fit the byte encoding")
    size = stack.shape[-1]
    prefix = bytes([size])
    flat = stack.astype(np.int8).reshape(len(stack), -1)
    return [prefix + row.tobytes() for row in flat]


class Group:
    """The enumerated group. Index 0 is the identity."""

    def __init__(self, rs, elements, words, class_index=None):
        self.rs = rs
        self.generators = rs.simple_reflections
        self.elements = np.ascontiguousarray(elements, dtype=np.int64)
        self.elements.flags.writeable = False
        self.words = tuple(tuple(word) for word in words)
        self.keys = stack_keys(self.elements)
        self.index = {key: i for i, key in enumerate(self.keys)}
        self.inverse_index = self._inverse_indices()
        self.class_index = class_index

    @property
    def order(self):
        return len(self.elements)

    @property
    def rank(self):
        return self.rs.rank

    def element(self, i):
        return GroupElement(self.elements[i])

    def index_of(self, element):
        return self.index[element.canonical_key]

    def __contains__(self, element):
        return element.canonical_key in self.index

    def indices_of(self, stack):
        try:
            return np.array(
                [self.index[key] for key in stack_keys(stack)], dtype=np.int64
            )
        except KeyError as error:
            raise LinalgError("matrix is not an element of the group") from (
                error
            )

    def word_of(self, i):
        word = self.words[i]
        return " ".join(f"s{letter}" for letter in word) if word else "e"

    @property
    def inverses(self):
        return self.elements[self.inverse_index]

    @property
    def dual_elements(self):
        """Contragredient matrices, index-aligned with `elements`."""
        return np.ascontiguousarray(np.transpose(self.inverses, (0, 2, 1)))

    def _inverse_indices(self):
        # w^-1 = G^-1 w^T G for w preserving the gram form G
        gram = np.array(self.rs.gram, dtype=np.int64)
        det = int(sympy.Matrix(self.rs.gram.tolist()).det())
        adjugate = np.array(
            (self.rs.dual_basis_change * det).tolist(), dtype=np.int64
        )
        scaled = adjugate @ np.transpose(self.elements, (0, 2, 1)) @ gram
        if (scaled % det).any():
            raise LinalgError("group elements do not preserve the gram form")
        return self.indices_of(scaled // det)

    def to_payload(self):
        return {
            "rank": self.rank,
            "elements": self.elements.astype(np.int8),
            "words": self.words,
            "class_index": self.class_index,
        }

    @classmethod
    def from_payload(cls, rs, payload):
        return cls(
            rs,
            payload["elements"].astype(np.int64),
            payload["words"],
            class_index=payload["class_index"],
        )


def enumerate_group(rs):
    """Breadth-first closure of the identity under left multiplication by
    the simple reflections.
    """
    rank = rs.rank
    generators = np.stack([g.matrix for g in rs.simple_reflections])
    elements = [np.eye(rank, dtype=np.int64)]
    words = [()]
    index = {stack_keys(np.stack(elements))[0]: 0}
    frontier = [0]
    while frontier:
        current = np.stack([elements[i] for i in frontier])
        products = generators[:, None] @ current[None]
        keys = stack_keys(products.reshape(-1, rank, rank))
        next_frontier = []
        for position, key in enumerate(keys):
            if key in index:
                continue
            letter, source = divmod(position, len(frontier))
            index[key] = len(elements)
            elements.append(products[letter, source])
            words.append((letter + 1,) + words[frontier[source]])
            next_frontier.append(index[key])
        if len(elements) > MAX_GROUP_ORDER:
            raise LinalgError(f"group order exceeds {MAX_GROUP_ORDER}")
        frontier = next_frontier
    group = Group(rs, np.stack(elements), words)
    logger.info("enumerated W(%s): %d elements", rs.name, group.order)
    return group


class Subgroup:
    def __init__(self, parent, indices, generators=None):
        self.parent = parent
        self.indices = np.array(sorted(set(int(i) for i in indices)))
        self.indices.flags.writeable = False
        self.members = frozenset(self.indices.tolist())
        self._generators = (
            tuple(generators) if generators is not None else None
        )

    @property
    def order(self):
        return len(self.indices)

    @property
    def elements(self):
        return self.parent.elements[self.indices]

    @property
    def keys(self):
        return frozenset(self.parent.keys[i] for i in self.indices)

    def __contains__(self, element):
        return self.parent.index.get(element.canonical_key) in self.members

    def is_subgroup_of(self, other):
        return self.members <= other.members

    def index_in(self, other):
        return other.order // self.order

    def generators(self):
        """A generating set: the given one, else chosen greedily in index
        order.
        """
        if self._generators is None:
            if self.order == self.parent.order:
                self._generators = tuple(self.parent.generators)
            else:
                chosen = []
                closure = {0}
                for i in self.indices:
                    if int(i) not in closure:
                        chosen.append(self.parent.element(int(i)))
                        closure = _closure_indices(self.parent, chosen)
                self._generators = tuple(chosen)
        return self._generators


def _closure_indices(group, generators):
    if not generators:
        return {0}
    rank = group.rank
    gens = np.stack([g.matrix for g in generators])
    members = {0}
    frontier = [0]
    while frontier:
        products = group.elements[frontier][:, None] @ gens[None]
        stack = products.reshape(-1, rank, rank)
        found = set(group.indices_of(stack).tolist())
        new = found - members
        members |= new
        frontier = sorted(new)
    return members


def subgroup_generated(group, generators):
    generators = list(generators)
    return Subgroup(
        group, _closure_indices(group, generators), generators=generators
    )


def centraliser(group, element):
    matrix = element.matrix
    mask = (group.elements @ matrix == matrix @ group.elements).all(
        axis=(1, 2)
    )
    return Subgroup(group, np.flatnonzero(mask))


def reflection_length(element):
    rank = element.rank
    return rank_rational(np.eye(rank, dtype=np.int64) - element.matrix)


def eigenvalue_orders(element):
    return cyclotomic_multiset(char_poly(element.matrix))


def partition_into_classes(group):
    """Orbit partition under conjugation; sets and returns
    group.class_index.
    """
    if group.class_index is not None:
        return group.class_index
    class_index = np.full(group.order, -1, dtype=np.int64)
    inverses = group.inverses
    seeds = 0
    for i in range(group.order):
        if class_index[i] >= 0:
            continue
        conjugates = inverses @ group.elements[i] @ group.elements
        class_index[group.indices_of(conjugates)] = seeds
        seeds += 1
    group.class_index = class_index
    logger.info("W(%s) has %d conjugacy classes", group.rs.name, seeds)
    return class_index


@dataclass(eq=False)
class ConjugacyClass:
    label: str
    class_id: int
    representative: GroupElement
    word: str
    size: int
    eigenvalue_orders: tuple
    centraliser: Subgroup = field(repr=False)
    notes: str = ""

    @property
    def carter_type(self):
        return self.label

    @property
    def centraliser_order(self):
        return self.centraliser.order

    @property
    def element_order(self):
        return self.representative.order()

    @property
    def reflection_length(self):
        return reflection_length(self.representative)


def conjugacy_classes(group, expected=None, jobs=1):
    """Conjugacy classes with representatives and centralisers.

    Args:
        group: an enumerated Group.
        expected: optional rows carrying `label`, `word`, `eigenvalues`
            (tuple of (order, multiplicity)) and `notes`; when given,
            every class is matched to exactly one row and represented by
            that row's word.
        jobs: worker threads for the centraliser scans.
    """
    class_index = partition_into_classes(group)
    count = int(class_index.max()) + 1
    sizes = np.bincount(class_index, minlength=count)
    seeds = [int(np.flatnonzero(class_index == c)[0]) for c in range(count)]
    seed_eigenvalues = [
        eigenvalue_orders(group.element(seed)) for seed in seeds
    ]

    if expected is None:
        rows = _generic_rows(group, seeds, seed_eigenvalues)
    else:
        rows = _matched_rows(group, expected, seed_eigenvalues)

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        centralisers = list(
            executor.map(lambda row: centraliser(group, row[2]), rows)
        )
    classes = []
    for (label, class_id, representative, word, notes), centre in zip(
        rows, centralisers
    ):
        cls = ConjugacyClass(
            label=label,
            class_id=class_id,
            representative=representative,
            word=word,
            size=int(sizes[class_id]),
            eigenvalue_orders=seed_eigenvalues[class_id],
            centraliser=centre,
            notes=notes,
        )
        if cls.size * cls.centraliser_order != group.order:
            raise ClassMatchFailure(
                f"class {label}: size {cls.size} times centraliser order "
                f"{cls.centraliser_order} is not {group.order}"
            )
        classes.append(cls)
    return classes


def _generic_rows(group, seeds, seed_eigenvalues):
    def ordering(class_id):
        element = group.element(seeds[class_id])
        return (
            reflection_length(element),
            element.order(),
            seeds[class_id],
        )

    rows = []
    for position, class_id in enumerate(
        sorted(range(len(seeds)), key=ordering), start=1
    ):
        seed = seeds[class_id]
        rows.append(
            (
                f"C{position}",
                class_id,
                group.element(seed),
                group.word_of(seed),
                "",
            )
        )
    return rows


def _matched_rows(group, expected, seed_eigenvalues):
    if len(expected) != len(seed_eigenvalues):
        raise ClassMatchFailure(
            f"{len(seed_eigenvalues)} classes but {len(expected)} "
            "expected rows"
        )
    rows = []
    used = set()
    for row in expected:
        representative = parse_word(group.rs, row.word)
        eigenvalues = eigenvalue_orders(representative)
        if eigenvalues != tuple(row.eigenvalues):
            raise ClassMatchFailure(
                f"row {row.label}: {row.word} has eigenvalue orders "
                f"{eigenvalues}, expected {tuple(row.eigenvalues)}"
            )
        candidates = [
            class_id
            for class_id, seed_orders in enumerate(seed_eigenvalues)
            if seed_orders == eigenvalues
        ]
        if len(candidates) != 1:
            raise ClassMatchFailure(
                f"row {row.label}: {len(candidates)} classes share "
                f"eigenvalue orders {eigenvalues}"
            )
        class_id = candidates[0]
        actual = int(group.class_index[group.index_of(representative)])
        if actual != class_id or class_id in used:
            raise ClassMatchFailure(
                f"row {row.label}: {row.word} is not conjugate into the "
                "class with its eigenvalue data"
            )
        used.add(class_id)
        rows.append((row.label, class_id, representative, row.word, row.notes))
    return rows


def class_of(group, classes, element):
    class_id = int(group.class_index[group.index_of(element)])
    return next(cls for cls in classes if cls.class_id == class_id)


@dataclass(frozen=True)
class PowerEdge:
    source: str
    exponent: int
    target: str
    literal: bool
    centraliser_inclusion: bool


def power_class_map(group, classes):
    """Class of rep^k for every divisor k > 1 of the representative's
    order, with the centraliser inclusion Z(w) <= Z(w^k) checked.
    """
    representatives = {
        cls.representative.canonical_key: cls for cls in classes
    }
    edges = []
    for cls in classes:
        order = cls.element_order
        for exponent in sympy.divisors(order)[1:]:
            power = cls.representative.power(exponent)
            target = class_of(group, classes, power)
            elements = cls.centraliser.elements
            commutes = bool(
                (elements @ power.matrix == power.matrix @ elements).all()
            )
            literal = representatives.get(power.canonical_key)
            edges.append(
                PowerEdge(
                    source=cls.label,
                    exponent=int(exponent),
                    target=target.label,
                    literal=literal is not None and literal is target,
                    centraliser_inclusion=commutes,
                )
            )
    return edges
