"""Top-level algorithms: parametric counting and the two conversions.

count_parametric: equality elimination, chamber decomposition, vertex-cone
sums, and substitution of 1 turn a parametric polytope into the piecewise
step-polynomial counting its fibers' integer points.

genfun_parametric: the same cone machinery applied to the joint polyhedron,
followed by substitution of 1 into the non-parameter block, yields the
generating function whose coefficients are those counts.

gf_to_step / step_to_gf: each short-rational term is the (shifted, scaled)
counting function of an explicit parametric polytope, and each step-polynomial
term is a fiber count of a slab polytope, so the two directions reduce to the
two operations above.
"""

import logging
from fractions import Fraction
from itertools import product
from math import gcd

from .cones import brion_sum, congruence_indicator
from .genfun import GFTerm, RatGenFun, orient_term_to, zero_genfun
from .linalg import clear_denominators, fvec, is_zero_vec, matrix_rank, vdot
from .oracle import series_coefficient
from .polyhedra import (
    Cell,
    ParametricPolytope,
    Polyhedron,
    PreconditionError,
    chamber_decomposition,
    check_fibers_bounded,
    contains_line,
    eliminate_equalities,
    feasible_point,
    hyperplane_arrangement,
    is_empty,
    recession_cone_rows,
    refine_cells,
    relint_point,
    whole_space,
)
from .specialize import specialize_genfun_block, specialize_to_steppoly
from .stepfun import PiecewiseStepPoly, StepPoly, sum_piecewise

log = logging.getLogger(__name__)


def count_parametric(P, strategy="auto"):
    """The piecewise step-polynomial s |-> #(P_s ∩ Z^d).

    Equalities (explicit or implicit) are eliminated first; congruence
    conditions from the elimination multiply into every piece.  The result's
    degree never exceeds the number of eliminated-space variables d.
    """
    check_fibers_bounded(P)
    elim = eliminate_equalities(P)
    if elim.never:
        return PiecewiseStepPoly(P.n, ((whole_space(P.n), StepPoly.zero(P.n)),))
    chi = congruence_indicator(P.n, elim.congruences)
    trivial_chi = chi == StepPoly.constant(P.n, 1)
    reduced = elim.polytope
    pieces = []
    for chamber in chamber_decomposition(reduced):
        value = specialize_to_steppoly(brion_sum(reduced, chamber), strategy)
        if not trivial_chi:
            value = value * chi
        pieces.append((chamber.cell, value))
    out = PiecewiseStepPoly(P.n, tuple(pieces))
    if out.degree > P.d:
        raise AssertionError(
            f"counting function degree {out.degree} exceeds variable count {P.d}"
        )
    return out


def genfun_parametric(P, strategy="auto"):
    """The generating function sum_s #(P_s ∩ Z^d) x^s in short rational form.

    The joint polyhedron must be line-free (otherwise no expansion of the sum
    converges anywhere and this raises); it may well be unbounded in parameter
    directions.  Verified downstream by series coefficients.
    """
    joint = P.joint()
    if is_empty(joint):
        return zero_genfun(P.n)
    normals = [a for a, _ in joint.ineqs] + [a for a, _ in joint.eqs]
    if matrix_rank(normals) < P.n + P.d:
        raise PreconditionError(
            "support contains a line: no Laurent expansion of the sum converges"
        )
    lifted = ParametricPolytope.make(
        0,
        P.n + P.d,
        [[] for _ in range(P.nrows)],
        [tuple(a) + tuple(b) for a, b in zip(P.A, P.B)],
        P.c,
    )
    chambers = chamber_decomposition(lifted, require_bounded=False)
    if len(chambers) != 1:  # pragma: no cover - zero-parameter space
        raise AssertionError("zero-parameter polytope must have one chamber")
    from .genfun import instantiate

    f_joint = instantiate(brion_sum(lifted, chambers[0]), ())
    f = specialize_genfun_block(f_joint, P.n, strategy)
    if f.k_bound > P.n + P.d:  # pragma: no cover - bounded by construction
        raise AssertionError("denominator count exceeded the joint dimension")
    return f


def vpf_term_to_step(term, l, n):
    """Piecewise step-polynomial of one short-rational term near e^l.

    After orienting the denominators against l, the coefficient function of
    alpha x^p / prod(1 - x^b_j) is alpha times the count of nonnegative
    integer combinations of the b_j summing to s - p: a parametric polytope
    count with the equalities eliminated.
    """
    t = orient_term_to(term, l)
    d = len(t.denoms)
    if d == 0:
        hps = [
            (tuple(Fraction(1 if j == i else 0) for j in range(n)), Fraction(0))
            for i in range(n)
        ]
        cells = hyperplane_arrangement(hps, n) if n else [whole_space(0)]
        pieces = []
        for cell in cells:
            x = relint_point(cell)
            value = (
                StepPoly.constant(n, t.coeff)
                if all(q == 0 for q in x)
                else StepPoly.zero(n)
            )
            pieces.append((cell, value))
        result = PiecewiseStepPoly(n, tuple(pieces))
        return result.shift_arg(tuple(-x for x in t.num))
    rows_A, rows_B, rows_c = [], [], []
    for j in range(d):
        rows_A.append([0] * n)
        rows_B.append([-1 if k == j else 0 for k in range(d)])
        rows_c.append(0)
    for k in range(n):
        col = [t.denoms[j][k] for j in range(d)]
        rows_A.append([-1 if i == k else 0 for i in range(n)])
        rows_B.append(col)
        rows_c.append(0)
        rows_A.append([1 if i == k else 0 for i in range(n)])
        rows_B.append([-x for x in col])
        rows_c.append(0)
    vpf = ParametricPolytope.make(n, d, rows_A, rows_B, rows_c)
    counted = count_parametric(vpf)
    return counted.shift_arg(tuple(-x for x in t.num)).scale(t.coeff)


def gf_to_step(f, l):
    """Piecewise step-polynomial of the expansion of f convergent near e^l."""
    l = tuple(int(x) for x in l)
    for i, term in enumerate(f.terms):
        for b in term.denoms:
            if sum(x * y for x, y in zip(l, b)) == 0:
                raise PreconditionError(
                    f"term {i}: l={l} is orthogonal to denominator vector {b}"
                )
    if not f.terms:
        return PiecewiseStepPoly(f.n, ((whole_space(f.n), StepPoly.zero(f.n)),))
    parts = [vpf_term_to_step(t, l, f.n) for t in f.terms]
    out = sum_piecewise(parts) if len(parts) > 1 else parts[0]
    if out.degree > f.k_bound:
        raise AssertionError(
            f"step-polynomial degree {out.degree} exceeds the factor bound {f.k_bound}"
        )
    return out


def _integerized_cell_rows(cell, n, width):
    """Closed integer rows capturing the cell's relative interior on Z^n."""
    rows = []
    P = cell.closed
    for a, b in P.eqs:
        ints, _ = clear_denominators(tuple(a) + (b,))
        rows.append((ints[:-1], [0] * width, ints[-1]))
        rows.append(([-x for x in ints[:-1]], [0] * width, -ints[-1]))
    for i, (a, b) in enumerate(P.ineqs):
        ints, _ = clear_denominators(tuple(a) + (b,))
        rhs = ints[-1] - (1 if i in cell.strict else 0)
        rows.append((ints[:-1], [0] * width, rhs))
    return rows


def step_to_gf(c):
    """Short rational generating function of sum_s c(s) x^s.

    Each term of each piece is alpha times a product of floors; splitting the
    piece's cell by the factors' zero hyperplanes fixes every factor's sign,
    and on each sign cell the term value is (+-alpha) times the number of
    integer points in a slab polytope over s (strict bounds are encoded by
    clearing denominators, exact on integer parameters).  Raises when some
    nonzero piece lives on a cell containing a line (the sum converges
    nowhere).
    """
    n = c.n
    total = zero_genfun(n)
    for cell, g in c.pieces:
        if g.is_zero():
            continue
        if contains_line(cell.closed):
            raise PreconditionError(
                "piecewise function is nonzero on a cell containing a line"
            )
        for coeff, atoms in g.terms:
            hps = []
            seen = set()
            for atom in atoms:
                key = tuple(atom.a) + (atom.b,)
                if key not in seen:
                    seen.add(key)
                    hps.append((atom.a, -atom.b))
            subcells = refine_cells([cell], hps)
            for sub in subcells:
                x = relint_point(sub)
                signs = []
                dead = False
                for atom in atoms:
                    v = vdot(atom.a, x) + atom.b
                    if v == 0:
                        dead = True
                        break
                    signs.append(1 if v > 0 else -1)
                if dead:
                    continue
                dvars = len(atoms)
                rows = _integerized_cell_rows(sub, n, dvars)
                for k, (atom, sg) in enumerate(zip(atoms, signs)):
                    ints, mult = clear_denominators(tuple(atom.a) + (atom.b,))
                    acoef, bconst = ints[:-1], ints[-1]
                    tcol = [0] * dvars
                    if sg > 0:
                        # 1 <= t_k <= <a,s> + b
                        tcol[k] = -1
                        rows.append(([0] * n, list(tcol), -1))
                        tcol = [0] * dvars
                        tcol[k] = mult
                        rows.append(([-x for x in acoef], tcol, bconst))
                    else:
                        # 0 <= t_k < -(<a,s> + b)
                        tcol[k] = -1
                        rows.append(([0] * n, list(tcol), 0))
                        tcol = [0] * dvars
                        tcol[k] = mult
                        rows.append((list(acoef), tcol, -bconst - 1))
                sign = 1
                for sg in signs:
                    if sg < 0:
                        sign = -sign
                pp = ParametricPolytope.make(
                    n,
                    dvars,
                    [r[0] for r in rows],
                    [r[1] for r in rows],
                    [r[2] for r in rows],
                )
                fterm = genfun_parametric(pp)
                total = total + fterm.scale(coeff * sign)
    if total.k_bound > c.degree:
        log.warning(
            "step_to_gf: emitted %d denominator factors for a degree-%d input "
            "(the lifting adds parameter-space facets)",
            total.k_bound,
            c.degree,
        )
    return total


def pick_l(support, denom_vectors, bound=None):
    """A direction l with <l, b> nonzero for all b and bounded upper support.

    Searches integer vectors by increasing max-norm, lexicographically within
    a shell; the boundedness condition (support cut to the halfspace
    <l, x> >= 0 is bounded) is checked exactly on the recession cone.
    """
    dim = support.dim
    if contains_line(support):
        raise PreconditionError("support contains a line; no valid l exists")
    if bound is None:
        bound = 10 * (dim + 1)
    denoms = [tuple(int(x) for x in b) for b in denom_vectors]
    rec = recession_cone_rows(support)
    for norm in range(1, bound + 1):
        for l in _shell_vectors(dim, norm):
            if any(sum(a * b for a, b in zip(l, bv)) == 0 for bv in denoms):
                continue
            if _halfspace_bounded(rec, l):
                return l
    raise PreconditionError(f"no valid l with max-norm <= {bound}")


def _shell_vectors(dim, norm):
    for vec in product(range(-norm, norm + 1), repeat=dim):
        if max(abs(x) for x in vec) == norm:
            yield vec


def _halfspace_bounded(rec, l):
    """No nonzero recession direction r has <l, r> >= 0."""
    lv = fvec(l)
    dim = rec.dim
    for i in range(dim):
        for sgn in (1, -1):
            eq = tuple(Fraction(sgn if j == i else 0) for j in range(dim))
            probe = Polyhedron(
                dim,
                rec.ineqs + ((tuple(-x for x in lv), Fraction(0)),),
                rec.eqs + ((eq, Fraction(1)),),
            )
            if feasible_point(probe) is not None:
                return False
    return True
