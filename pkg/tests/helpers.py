"""Seeded generators shared by the module tests and the acceptance suite.

Everything here draws from a caller-supplied random.Random so that every
test run is reproducible from its seed alone.
"""

import itertools

from setpoly import FinSet, SetPolynomial, System


def all_positions(dimension, include_empty=True):
    """Every increasing slot tuple for the given dimension."""
    start = 0 if include_empty else 1
    out = []
    for size in range(start, dimension + 1):
        out.extend(itertools.combinations(range(1, dimension + 1), size))
    return out


def rand_finset(rng, arity, pool, max_elems=4):
    count = rng.randrange(max_elems + 1)
    elems = set()
    for _ in range(count):
        elems.add(tuple(rng.choice(pool) for _ in range(arity)))
    return FinSet(arity, elems)


def rand_symbols(rng, pool, max_elems=4):
    count = rng.randrange(max_elems + 1)
    return FinSet(1, [(s,) for s in rng.sample(pool, min(count, len(pool)))])


def rand_poly(rng, dimension, pool, max_tuples=4, include_constant=True,
              density=0.45, skip_full=False):
    """A random set-polynomial with coefficients drawn from the pool.

    Coefficient sets stay small (at most max_tuples tuples each) and each
    slot tuple is present with probability `density`.
    """
    coeffs = {}
    for key in all_positions(dimension, include_empty=include_constant):
        if skip_full and len(key) == dimension:
            continue
        if rng.random() >= density:
            continue
        arity = dimension - len(key)
        elems = set()
        for _ in range(rng.randrange(1, max_tuples + 1)):
            elems.add(tuple(rng.choice(pool) for _ in range(arity)))
        coeffs[key] = FinSet(arity, elems)
    return SetPolynomial(dimension, coeffs)


def rand_constant_free_poly(rng, dimension, pool, max_tuples=3,
                            force_nonempty=True):
    poly = rand_poly(rng, dimension, pool, max_tuples, include_constant=False)
    if force_nonempty and poly.is_empty():
        key = (rng.randrange(1, dimension + 1),)
        arity = dimension - 1
        elem = tuple(rng.choice(pool) for _ in range(arity))
        poly = SetPolynomial(dimension, {key: FinSet(arity, [elem])})
    return poly


def rand_system(rng, dimension, pool, max_members=3, max_tuples=3):
    members = [rand_constant_free_poly(rng, dimension, pool, max_tuples)
               for _ in range(rng.randrange(1, max_members + 1))]
    return System(dimension, members)


def subset_of(rng, finset, keep=0.5):
    elems = [e for e in finset.sorted_elems() if rng.random() < keep]
    return FinSet(finset.arity, elems)


def sub_poly(rng, poly, keep=0.5, force_nonempty=False):
    """A random polynomial dominated by the given one."""
    coeffs = {}
    for key in poly.coeffs:
        part = subset_of(rng, poly.coefficient(key), keep)
        if not part.is_empty():
            coeffs[key] = part
    out = SetPolynomial(poly.D, coeffs)
    if force_nonempty and out.is_empty() and not poly.is_empty():
        key = sorted(poly.coeffs)[0]
        coef = poly.coefficient(key)
        elem = coef.sorted_elems()[0]
        out = SetPolynomial(poly.D, {key: FinSet(coef.arity, [elem])})
    return out
