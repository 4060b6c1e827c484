import functools
import itertools
import json
from fractions import Fraction

from django.test import override_settings

from weyl_torus.root_system import e6, from_cartan
from weyl_torus.verification import VerificationContext

LOCMEM_CACHES = {
    "default": {
        "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
    },
    "weyl_group": {
        "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
        "LOCATION": "weyl-group-tests",
        "TIMEOUT": None,
    },
}

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
A1_A1 = [[2, 0], [0, 2]]

TOY_SYSTEMS = {
    "A1": (A1, (3, 0)),
    "A2": (A2, (5, 1)),
    "A1xA1": (A1_A1, (9, 0)),
}


@functools.lru_cache(maxsize=None)
def e6_context():
    with override_settings(CACHES=LOCMEM_CACHES):
        context = VerificationContext(rs=e6(), jobs=2, sample=200)
        context.classes
    return context


@functools.lru_cache(maxsize=None)
def toy_context(name):
    cartan, _ = TOY_SYSTEMS[name]
    with override_settings(CACHES=LOCMEM_CACHES):
        context = VerificationContext(rs=from_cartan(cartan, name=name))
        context.classes
    return context


def write_cartan(directory, name, cartan):
    path = directory / f"{name}.json"
    path.write_text(json.dumps({"name": name, "cartan": cartan}))
    return str(path)


# Brute-force oracles on plain tuples, independent of the library.

def reflections(cartan):
    size = len(cartan)
    return [
        tuple(
            tuple(int(i == j) - int(i == k) * cartan[k][j]
                  for j in range(size))
            for i in range(size)
        )
        for k in range(size)
    ]


def multiply(first, second):
    size = len(first)
    return tuple(
        tuple(
            sum(first[i][k] * second[k][j] for k in range(size))
            for j in range(size)
        )
        for i in range(size)
    )


def brute_force_group(cartan):
    size = len(cartan)
    identity = tuple(
        tuple(int(i == j) for j in range(size)) for i in range(size)
    )
    elements = {identity}
    frontier = [identity]
    generators = reflections(cartan)
    while frontier:
        found = []
        for element in frontier:
            for generator in generators:
                product = multiply(generator, element)
                if product not in elements:
                    elements.add(product)
                    found.append(product)
        frontier = found
    return elements


def brute_force_inverse(element, group):
    size = len(element)
    identity = tuple(
        tuple(int(i == j) for j in range(size)) for i in range(size)
    )
    return next(g for g in group if multiply(element, g) == identity)


def transpose(matrix):
    return tuple(zip(*matrix))


def fixed_points(matrix, denominator):
    """Points of (1/N)Z^n / Z^n fixed by the matrix."""
    size = len(matrix)
    points = []
    for numerators in itertools.product(range(denominator), repeat=size):
        point = [Fraction(x, denominator) for x in numerators]
        image = [
            sum(matrix[i][j] * point[j] for j in range(size)) % 1
            for i in range(size)
        ]
        if image == point:
            points.append(tuple(point))
    return points


def brute_force_fixed_set(matrix):
    """(torus dimension, component count) from point counts at two
    denominators whose ratio isolates the torus part.
    """
    coarse = len(fixed_points(matrix, 12))
    fine = len(fixed_points(matrix, 24))
    dimension = (fine // coarse).bit_length() - 1
    return dimension, coarse // 12 ** dimension


def brute_force_centraliser(element, group):
    return [g for g in group if multiply(g, element) == multiply(element, g)]


def brute_force_point_orbits(matrix, group):
    """Centraliser orbits on the fixed points of an elliptic element."""
    points = set(fixed_points(matrix, 12))
    size = len(matrix)
    orbits = 0
    while points:
        orbits += 1
        start = points.pop()
        for g in brute_force_centraliser(matrix, group):
            image = tuple(
                sum(g[i][j] * start[j] for j in range(size)) % 1
                for i in range(size)
            )
            points.discard(image)
    return orbits
