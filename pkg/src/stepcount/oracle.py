"""Brute-force reference implementations.

Everything here is deliberately naive: exhaustive enumeration with exact
membership tests, independent of the cone/chamber machinery, so it can serve
as ground truth in tests and acceptance checks.  Exponential by design.
"""

from fractions import Fraction
from itertools import product
from math import ceil, floor

from .genfun import orient_to_l
from .polyhedra import Polyhedron, PreconditionError, bounding_box, is_empty
from .linalg import fvec, vdot


def enumerate_lattice_points(P):
    """All integer points of a bounded polyhedron, sorted."""
    if is_empty(P):
        return []
    box = bounding_box(P)
    if box is None:
        raise PreconditionError("enumerate_lattice_points: polyhedron is unbounded")
    lo, hi = box
    ranges = [range(ceil(a), floor(b) + 1) for a, b in zip(lo, hi)]
    out = []
    for t in product(*ranges):
        if P.contains(fvec(t)):
            out.append(t)
    return out


def count_lattice_points(P):
    return len(enumerate_lattice_points(P))


def count_fiber(P, s):
    """#(P_s ∩ Z^d) for a parametric polytope by direct enumeration."""
    return count_lattice_points(P.fiber(s))


def series_coefficient(f, l, s):
    """Exact coefficient of x^s in the expansion of f convergent near e^l.

    Every term is re-oriented so all denominator exponents pair negatively
    with l, then expanded as a product of geometric series; the coefficient is
    a finite weighted-partition count over the exponent lattice.
    """
    l = tuple(int(x) for x in l)
    s = tuple(int(x) for x in s)
    g = orient_to_l(f, l)
    total = Fraction(0)
    for term in g.terms:
        total += term.coeff * _term_coefficient(term, l, s)
    return total


def _term_coefficient(term, l, s):
    """#{k >= 0 integer : num + sum_j k_j b_j = s} for oriented denominators."""
    target = tuple(a - b for a, b in zip(s, term.num))
    weights = [-sum(x * y for x, y in zip(l, b)) for b in term.denoms]
    budget = -sum(x * y for x, y in zip(l, target))
    # each k_j contributes k_j * weights[j] (> 0) to the budget
    return _count_reach(term.denoms, weights, target, budget, 0)


def _count_reach(denoms, weights, target, budget, idx):
    if budget < 0:
        return 0
    if idx == len(denoms):
        return 1 if all(x == 0 for x in target) and budget == 0 else 0
    b = denoms[idx]
    w = weights[idx]
    count = 0
    k = 0
    while k * w <= budget:
        rest = tuple(t - k * x for t, x in zip(target, b))
        count += _count_reach(denoms, weights, rest, budget - k * w, idx + 1)
        k += 1
    return count


def series_coefficients_box(f, l, lo, hi):
    """Coefficients of x^s for every integer s in a box, as a dict."""
    out = {}
    for s in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        out[s] = series_coefficient(f, l, s)
    return out


def count_projection_bruteforce(P, d):
    """#{t in Z^d : exists u with (t, u) in P}, by enumeration of (t, u).

    P is a polyhedron over (t, u); fibers must be bounded overall (P bounded).
    """
    pts = enumerate_lattice_points(P)
    return len({p[:d] for p in pts})


def cone_indicator_box(rows, apex_value, lo, hi):
    """Indicator of {x : <row, x> <= <row, apex>} over an integer box."""
    amb = len(lo)
    P = Polyhedron(
        amb,
        tuple((fvec(r), vdot(fvec(r), fvec(apex_value))) for r in rows),
        (),
    )
    out = {}
    for t in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        out[t] = 1 if P.contains(fvec(t)) else 0
    return out
