"""Rational polyhedra, parametric polytopes, chambers, and arrangements.

Polyhedra are kept in H-representation with exact rational data.  A Cell is a
closed polyhedron plus strictness flags and stands for the relatively open
region where the flagged inequalities hold strictly; the cells produced by
``hyperplane_arrangement`` and ``chamber_decomposition`` have relative
interiors that genuinely partition parameter space, so membership questions
never depend on boundary conventions.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import backend
from .linalg import (
    affine_form_implied,
    clear_denominators,
    column_echelon,
    from_pair,
    fvec,
    identity_int,
    is_zero_vec,
    matrix_rank,
    solve_multi_rhs,
    to_pair,
    to_pairs,
    transpose,
    vadd,
    vdot,
    vscale,
    vsub,
)


class PreconditionError(ValueError):
    """A documented precondition was violated; the message names the datum."""


@dataclass(frozen=True)
class Polyhedron:
    """{x : <a,x> <= b for all ineqs, <a,x> = b for all eqs}."""

    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()

    @staticmethod
    def make(dim, ineqs=(), eqs=()):
        return Polyhedron(
            dim,
            tuple((fvec(a), Fraction(b)) for a, b in ineqs),
            tuple((fvec(a), Fraction(b)) for a, b in eqs),
        )

    def contains(self, x):
        return all(vdot(a, x) <= b for a, b in self.ineqs) and all(
            vdot(a, x) == b for a, b in self.eqs
        )


@dataclass(frozen=True)
class Cell:
    """A closed polyhedron with strict flags; denotes a relative interior.

    The region meant by the cell is {x in closed : strict rows hold strictly},
    which for the cells built in this module equals the relative interior of
    the closed polyhedron.
    """

    closed: Polyhedron
    strict: frozenset = frozenset()

    @property
    def dim(self):
        return self.closed.dim


@dataclass(frozen=True)
class ParametricPolytope:
    """Fibers P_s = {t : B t <= c - A s}; all data integer."""

    n: int
    d: int
    A: tuple  # m rows, each length n
    B: tuple  # m rows, each length d
    c: tuple  # length m

    @staticmethod
    def make(n, d, A, B, c):
        return ParametricPolytope(
            n,
            d,
            tuple(tuple(int(x) for x in row) for row in A),
            tuple(tuple(int(x) for x in row) for row in B),
            tuple(int(x) for x in c),
        )

    @property
    def nrows(self):
        return len(self.c)

    def joint(self):
        """The same set as a polyhedron in (s, t) space."""
        rows = tuple(
            (fvec(tuple(a) + tuple(b)), Fraction(cc))
            for a, b, cc in zip(self.A, self.B, self.c)
        )
        return Polyhedron(self.n + self.d, rows, ())

    def fiber(self, s):
        """P_s as a polyhedron in t."""
        sv = fvec(s)
        rows = tuple(
            (fvec(b), Fraction(cc) - vdot(fvec(a), sv))
            for a, b, cc in zip(self.A, self.B, self.c)
        )
        return Polyhedron(self.d, rows, ())


@dataclass(frozen=True)
class AffineMap:
    """s |-> linear . s + offset, exactly."""

    linear: tuple  # d rows of length n
    offset: tuple  # length d

    def apply(self, s):
        sv = fvec(s)
        return tuple(vdot(row, sv) + off for row, off in zip(self.linear, self.offset))

    def __sub__(self, other):
        return AffineMap(
            tuple(vsub(r1, r2) for r1, r2 in zip(self.linear, other.linear)),
            vsub(self.offset, other.offset),
        )


@dataclass(frozen=True)
class ParamVertex:
    """A parametric vertex: an affine map active on a region of s-space."""

    map: AffineMap
    tight: frozenset  # defining constraint rows (|tight| = d, full rank)
    activity: Polyhedron  # s-values where the map is a vertex of P_s


@dataclass(frozen=True)
class Chamber:
    cell: Cell
    vertices: tuple  # deduplicated ParamVertex tuple


# ---------------------------------------------------------------------------
# LP-backed predicates


def _lp_rows(P, extra=()):
    rows = []
    for a, b in P.ineqs:
        rows.append((to_pairs(a), to_pair(b)))
    for a, b in P.eqs:
        rows.append((to_pairs(a), to_pair(b)))
        rows.append((to_pairs(vscale(Fraction(-1), a)), to_pair(-b)))
    rows.extend(extra)
    return rows


def feasible_point(P):
    status, x, _ = backend.lp_solve(P.dim, _lp_rows(P), None)
    if status == backend.LP_INFEASIBLE:
        return None
    return from_pair_vec(x)


def from_pair_vec(x):
    return tuple(Fraction(n, d) for n, d in x)


def is_empty(P):
    return feasible_point(P) is None


def optimize(P, objective, maximize=True):
    """Exact LP over P.  Returns (status, point, value) in P's terms."""
    obj = to_pairs(objective if maximize else vscale(Fraction(-1), fvec(objective)))
    status, x, v = backend.lp_solve(P.dim, _lp_rows(P), obj)
    if status == backend.LP_INFEASIBLE:
        return "infeasible", None, None
    pt = from_pair_vec(x)
    if status == backend.LP_UNBOUNDED:
        return "unbounded", pt, None
    val = from_pair(v)
    return "optimal", pt, (val if maximize else -val)


def relint_point(cell):
    """An exact rational point with all strict rows strictly satisfied.

    Returns None when the denoted region is empty.  Solved as one LP with a
    slack variable bounded by 1 and pushed to be positive.
    """
    P = cell.closed
    d = P.dim
    rows = []
    for i, (a, b) in enumerate(P.ineqs):
        coeffs = to_pairs(a) + ([(1, 1)] if i in cell.strict else [(0, 1)])
        rows.append((coeffs, to_pair(b)))
    for a, b in P.eqs:
        rows.append((to_pairs(a) + [(0, 1)], to_pair(b)))
        rows.append((to_pairs(vscale(Fraction(-1), a)) + [(0, 1)], to_pair(-b)))
    rows.append(([(0, 1)] * d + [(-1, 1)], (0, 1)))  # eps >= 0
    rows.append(([(0, 1)] * d + [(1, 1)], (1, 1)))  # eps <= 1
    obj = [(0, 1)] * d + [(1, 1)]
    status, x, v = backend.lp_solve(d + 1, rows, obj)
    if status == backend.LP_INFEASIBLE:
        return None
    if cell.strict and from_pair(v) == 0:
        return None
    return from_pair_vec(x)[:d]


def relint_contains(cell, x):
    """Exact membership in the region the cell denotes."""
    x = fvec(x)
    P = cell.closed
    for a, b in P.eqs:
        if vdot(a, x) != b:
            return False
    for i, (a, b) in enumerate(P.ineqs):
        v = vdot(a, x)
        if i in cell.strict:
            if v >= b:
                return False
        elif v > b:
            return False
    return True


def implicit_equality_rows(P):
    """Indices of inequality rows that hold with equality on all of P.

    P must be nonempty.  One LP certifies a full-dimensional interior (no
    implicit equalities); otherwise each candidate row gets its own LP.
    """
    d = P.dim
    rows = []
    for a, b in P.ineqs:
        rows.append((to_pairs(a) + [(1, 1)], to_pair(b)))
    for a, b in P.eqs:
        rows.append((to_pairs(a) + [(0, 1)], to_pair(b)))
        rows.append((to_pairs(vscale(Fraction(-1), a)) + [(0, 1)], to_pair(-b)))
    rows.append(([(0, 1)] * d + [(-1, 1)], (0, 1)))
    rows.append(([(0, 1)] * d + [(1, 1)], (1, 1)))
    status, x, v = backend.lp_solve(d + 1, rows, [(0, 1)] * d + [(1, 1)])
    if status == backend.LP_INFEASIBLE:
        raise ValueError("implicit_equality_rows: empty polyhedron")
    if from_pair(v) > 0:
        return []
    pt = from_pair_vec(x)[:d]
    out = []
    for i, (a, b) in enumerate(P.ineqs):
        if vdot(a, pt) < b:
            continue
        status, _, val = optimize(P, vscale(Fraction(-1), a), maximize=True)
        if status == "optimal" and val == -b:
            out.append(i)
    return out


def affine_hull_rows(P):
    """Equalities (declared + implicit) describing the affine hull of P."""
    rows = list(P.eqs)
    for i in implicit_equality_rows(P):
        rows.append(P.ineqs[i])
    return tuple(rows)


def poly_dim(P):
    """Dimension of a nonempty polyhedron."""
    hull = affine_hull_rows(P)
    if not hull:
        return P.dim
    return P.dim - matrix_rank([a for a, _ in hull])


def recession_cone_rows(P):
    rows = tuple((a, Fraction(0)) for a, _ in P.ineqs)
    eqs = tuple((a, Fraction(0)) for a, _ in P.eqs)
    return Polyhedron(P.dim, rows, eqs)


def is_bounded(P):
    """True iff the recession cone is {0}."""
    R = recession_cone_rows(P)
    box = tuple(
        ((tuple(Fraction(1 if j == i else 0) for j in range(P.dim))), Fraction(1))
        for i in range(P.dim)
    ) + tuple(
        ((tuple(Fraction(-1 if j == i else 0) for j in range(P.dim))), Fraction(1))
        for i in range(P.dim)
    )
    Rb = Polyhedron(P.dim, R.ineqs + box, R.eqs)
    for i in range(P.dim):
        e = tuple(Fraction(1 if j == i else 0) for j in range(P.dim))
        for sign in (1, -1):
            obj = vscale(Fraction(sign), e)
            status, _, val = optimize(Rb, obj)
            if status != "optimal" or val > 0:
                return False
    return True


def contains_line(P):
    """True iff the lineality space of P is nontrivial."""
    rows = [a for a, _ in P.ineqs] + [a for a, _ in P.eqs]
    if not rows:
        return P.dim > 0
    return matrix_rank(rows) < P.dim


def bounding_box(P):
    """Exact coordinatewise bounds; None when P is empty or unbounded."""
    if is_empty(P):
        return None
    lo, hi = [], []
    for i in range(P.dim):
        e = tuple(Fraction(1 if j == i else 0) for j in range(P.dim))
        status, _, val = optimize(P, e, maximize=True)
        if status != "optimal":
            return None
        hi.append(val)
        status, _, val = optimize(P, e, maximize=False)
        if status != "optimal":
            return None
        lo.append(val)
    return tuple(lo), tuple(hi)


def vertices_of(P):
    """Direct vertex enumeration of a polyhedron (oracle-grade, no chambers).

    Enumerates full-rank tight subsets of the constraint rows; a candidate is
    a vertex iff it lies in P.  Deduplicated, deterministically ordered.
    """
    d = P.dim
    rows = list(P.eqs) + list(P.ineqs)
    out = []
    seen = set()
    for S in combinations(range(len(rows)), d):
        A = [rows[i][0] for i in S]
        b = [rows[i][1] for i in S]
        sols = solve_multi_rhs(A, [tuple(b)]) if d else (((),), [])
        if sols is None or sols[1]:
            continue
        x = sols[0][0]
        if x in seen:
            continue
        if P.contains(x):
            seen.add(x)
            out.append(x)
    return sorted(out)


# ---------------------------------------------------------------------------
# cells and arrangements


def whole_space(dim):
    return Cell(Polyhedron(dim, (), ()), frozenset())


def _cell_with_ineq(cell, a, b, strict):
    P = cell.closed
    idx = len(P.ineqs)
    strictset = cell.strict | {idx} if strict else cell.strict
    return Cell(Polyhedron(P.dim, P.ineqs + ((a, b),), P.eqs), frozenset(strictset))


def _cell_with_eq(cell, a, b):
    P = cell.closed
    return Cell(Polyhedron(P.dim, P.ineqs, P.eqs + ((a, b),)), cell.strict)


def canonical_hyperplane(a, b):
    """Canonical integer form of the hyperplane <a,x> = b, or None if a = 0."""
    av = fvec(a)
    if is_zero_vec(av):
        return None
    ints, _ = clear_denominators(tuple(av) + (Fraction(b),))
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = tuple(x // g for x in ints)
    for x in ints[:-1]:
        if x != 0:
            if x < 0:
                ints = tuple(-y for y in ints)
            break
    return ints[:-1], ints[-1]


def split_cell(cell, a, b):
    """Refine one cell by a hyperplane; returns the nonempty sign pieces."""
    av, bv = fvec(a), Fraction(b)
    pieces = []
    below = _cell_with_ineq(cell, av, bv, strict=True)
    on = _cell_with_eq(cell, av, bv)
    above = _cell_with_ineq(cell, vscale(Fraction(-1), av), -bv, strict=True)
    for cand in (below, on, above):
        if relint_point(cand) is not None:
            pieces.append(cand)
    return pieces


def refine_cells(cells, hyperplanes):
    for a, b in hyperplanes:
        nxt = []
        for cell in cells:
            nxt.extend(split_cell(cell, a, b))
        cells = nxt
    return cells


def hyperplane_arrangement(hyperplanes, dim):
    """All sign cells of the arrangement; relative interiors partition Q^dim.

    Cells are built hyperplane by hyperplane (each nonempty side, plus the
    slice inside the hyperplane, of every existing cell), so the number of
    full-dimensional cells respects the binomial bound for simple
    arrangements.  Zero normal vectors are rejected.
    """
    canon = []
    seen = set()
    for a, b in hyperplanes:
        key = canonical_hyperplane(a, b)
        if key is None:
            raise PreconditionError(f"hyperplane with zero normal: ({a}, {b})")
        if key not in seen:
            seen.add(key)
            canon.append(key)
    canon.sort()
    cells = [whole_space(dim)]
    return refine_cells(cells, [(fvec(a), Fraction(b)) for a, b in canon])


def arrangement_bound(m, d):
    """Sum of binomial(m, i) for i <= d."""
    total = 0
    for i in range(min(m, d) + 1):
        num = 1
        for k in range(i):
            num = num * (m - k) // (k + 1)
        total += num
    return total


# ---------------------------------------------------------------------------
# parametric vertices and chambers


def check_fibers_bounded(P):
    """Raise unless the fiber recession cone {t : B t <= 0} is {0}."""
    R = Polyhedron(P.d, tuple((fvec(b), Fraction(0)) for b in P.B), ())
    if not is_bounded(R):
        raise PreconditionError(
            "parametric polytope has unbounded fibers: recession cone of B is nontrivial"
        )


def parametric_vertices(P, require_bounded=True):
    """All parametric vertices of P with their activity domains.

    Every vertex of every fiber P_s arises from a full-rank d-subset of the
    constraint rows; the activity domain collects the remaining constraints
    evaluated at the vertex map.  Vertices whose activity domain is empty are
    dropped.  Deterministic order (lexicographic by tight row subset).

    ``require_bounded=False`` admits unbounded but pointed fibers (the caller
    must have checked line-freeness; the vertex/cone structure is unchanged).
    """
    if require_bounded:
        check_fibers_bounded(P)
    m = P.nrows
    out = []
    for S in combinations(range(m), P.d):
        BS = [fvec(P.B[i]) for i in S]
        rhs_cols = []
        for k in range(P.n):
            rhs_cols.append(tuple(Fraction(-P.A[i][k]) for i in S))
        rhs_cols.append(tuple(Fraction(P.c[i]) for i in S))
        if P.d == 0:
            linear, offset = (), ()
        else:
            sols = solve_multi_rhs(BS, rhs_cols)
            if sols is None or sols[1]:
                continue  # singular: no isolated intersection point
            cols, _ = sols
            linear = transpose(tuple(cols[:-1])) if P.n else tuple(() for _ in range(P.d))
            offset = cols[-1]
        vmap = AffineMap(tuple(map(tuple, linear)), tuple(offset))
        act_rows = []
        empty = False
        for j in range(m):
            if j in S:
                continue
            a = fvec(P.A[j])
            coeff = vadd(a, mat_rows_dot(P.B[j], linear, P.n))
            rhs = Fraction(P.c[j]) - vdot(fvec(P.B[j]), offset)
            if is_zero_vec(coeff):
                if rhs < 0:
                    empty = True
                    break
                continue
            act_rows.append((coeff, rhs))
        if empty:
            continue
        activity = Polyhedron(P.n, tuple(act_rows), ())
        if feasible_point(activity) is None:
            continue
        out.append(ParamVertex(vmap, frozenset(S), activity))
    return out


def mat_rows_dot(brow, linear, n):
    """Row vector B_j times the linear part (d x n) of a map."""
    acc = tuple(Fraction(0) for _ in range(n))
    for coeff, lin_row in zip(brow, linear):
        if coeff:
            acc = vadd(acc, vscale(Fraction(coeff), fvec(lin_row)))
    return acc


def cell_hull_rows(cell):
    """Affine hull equations of an arrangement/chamber cell.

    For the sign-vector cells built here a nonempty denoted region is
    relatively open inside the declared equality subspace, so the declared
    equalities are the whole hull.
    """
    return cell.closed.eqs


def maps_equal_on(hull_rows, m1, m2):
    diff = m1 - m2
    for row, off in zip(diff.linear, diff.offset):
        if not affine_form_implied(hull_rows, (row, off)):
            return False
    return True


def chamber_decomposition(P, require_bounded=True):
    """Cells partitioning parameter space with their active vertex lists.

    The activity domains of all parametric vertices contribute hyperplanes;
    on the relative interior of every cell of that arrangement the active set
    is constant, so one exact interior sample point decides it.  Vertices
    whose maps coincide on a cell are merged (first representative kept).
    """
    verts = parametric_vertices(P, require_bounded)
    hps = []
    for v in verts:
        for a, b in v.activity.ineqs:
            key = canonical_hyperplane(a, b)
            if key is not None:
                hps.append(key)
    hps = sorted(set(hps))
    cells = refine_cells(
        [whole_space(P.n)], [(fvec(a), Fraction(b)) for a, b in hps]
    )
    chambers = []
    for cell in cells:
        x = relint_point(cell)
        active = [v for v in verts if v.activity.contains(x)]
        hull = cell_hull_rows(cell)
        kept = []
        for v in active:
            if any(maps_equal_on(hull, v.map, w.map) for w in kept):
                continue
            kept.append(v)
        chambers.append(Chamber(cell, tuple(kept)))
    return chambers


# ---------------------------------------------------------------------------
# equality elimination


@dataclass(frozen=True)
class Congruence:
    """Requires modulus | <coeffs, s> + const at integer s."""

    modulus: int
    coeffs: tuple
    const: int


@dataclass(frozen=True)
class EqElimResult:
    """Outcome of eliminating equalities from a parametric polytope.

    For every integer s:  #(P_s ∩ Z^d) = [consistency](s) * [congruences](s)
    * #(P'_s ∩ Z^d').  ``witness`` is the unimodular change of coordinates;
    ``never`` marks systems with no integer solutions for any s.  The original
    variables are recovered as t = x_star(s) + sum_k z_k w_basis[k].
    """

    polytope: object  # ParametricPolytope or None
    witness: tuple
    congruences: tuple = ()
    consistency: tuple = ()  # (coeffs, const): requires <coeffs, s> = const
    never: bool = False
    x_star: object = None  # AffineMap in s (rational)
    w_basis: tuple = ()  # d x (d - r) integer columns


def _syntactic_equality_pairs(P):
    rows = list(zip(P.A, P.B, P.c))
    eq_rows = set()
    for i in range(len(rows)):
        if i in eq_rows:
            continue
        ai, bi, ci = rows[i]
        for j in range(i + 1, len(rows)):
            if j in eq_rows:
                continue
            aj, bj, cj = rows[j]
            if cj == -ci and all(x == -y for x, y in zip(ai, aj)) and all(
                x == -y for x, y in zip(bi, bj)
            ):
                eq_rows.add(i)
                eq_rows.add(j)
                break
    return eq_rows


def equality_row_indices(P):
    """Rows of P that hold with equality on all of the joint polyhedron."""
    syn = _syntactic_equality_pairs(P)
    joint = P.joint()
    if is_empty(joint):
        return None  # empty for every s
    implicit = set(implicit_equality_rows(joint))
    return sorted(syn | implicit)


@dataclass(frozen=True)
class IntegerSolve:
    """Parametric solution of E x = rhs(s) over integer x.

    When ``never`` is False, the integer solutions for an integer s meeting
    every consistency equality and congruence are exactly
    {x_star(s) + sum_k z_k basis[k] : z integer}; the congruences state when
    x_star(s) itself is integral.
    """

    x_star: object  # AffineMap (rational coefficients)
    basis: tuple  # saturated integer basis rows of ker E
    transform: tuple  # the unimodular matrix V with E V = [G | 0]
    congruences: tuple
    consistency: tuple
    never: bool = False


def parametric_integer_solve(E, rhs_lin, rhs_const, nparams):
    """Solve E x = rhs_lin . s + rhs_const over integers, parametrically.

    ``E`` has integer rows of width d; ``rhs_lin`` is one row of parameter
    coefficients per equation and ``rhs_const`` the constant parts (rational).
    Raises when the system is rationally inconsistent independently of s.
    """
    d = len(E[0]) if E else 0
    G, V, r = column_echelon(E, width=d)
    rows = []
    for k in range(len(E)):
        row = [Fraction(G[k][j]) for j in range(r)]
        row += [Fraction(x) for x in rhs_lin[k]]
        row.append(Fraction(rhs_const[k]))
        rows.append(row)
    rank, pivots, red = backend.rref([to_pairs(row) for row in rows], r)
    if rank < r:  # pragma: no cover - G has full column rank by construction
        raise AssertionError("echelon block lost rank")
    consistency = []
    for k in range(rank, len(rows)):
        coeffs = fvec(from_pair(red[k][r + t]) for t in range(nparams))
        const = from_pair(red[k][r + nparams])
        if is_zero_vec(coeffs):
            if const != 0:
                raise PreconditionError(
                    "equality system is rationally inconsistent for every s"
                )
            continue
        consistency.append((coeffs, -const))
    y_lin, y_off = [], []
    for i in range(r):
        y_lin.append(fvec(from_pair(red[i][r + t]) for t in range(nparams)))
        y_off.append(from_pair(red[i][r + nparams]))
    congruences = []
    for i in range(r):
        ints, mult = clear_denominators(tuple(y_lin[i]) + (y_off[i],))
        if mult == 1:
            continue
        if all(x == 0 for x in ints[:-1]):
            if ints[-1] % mult != 0:
                return IntegerSolve(None, (), V, (), tuple(consistency), never=True)
            continue
        congruences.append(Congruence(mult, ints[:-1], ints[-1]))
    x_lin, x_off = [], []
    for row in range(d):
        lin = tuple(
            sum((Fraction(V[row][i]) * y_lin[i][t] for i in range(r)), Fraction(0))
            for t in range(nparams)
        )
        off = sum((Fraction(V[row][i]) * y_off[i] for i in range(r)), Fraction(0))
        x_lin.append(lin)
        x_off.append(off)
    x_star = AffineMap(tuple(x_lin), tuple(x_off))
    basis = tuple(tuple(V[row][j] for row in range(d)) for j in range(r, d))
    return IntegerSolve(
        x_star, basis, V, tuple(congruences), tuple(consistency), never=False
    )


def eliminate_equalities(P):
    """Remove (explicit or implicit) equality rows by a unimodular change.

    Integer-point counts are preserved exactly: the reduced polytope P' has
    full-dimensional fibers generically, and any divisibility pattern required
    for the pinned coordinates comes back as congruence conditions (and
    parameter-space consistency equalities, appended to P' as paired rows).
    Rationally inconsistent equality systems (independent of s) raise.
    """
    eq_idx = equality_row_indices(P)
    d = P.d
    if eq_idx is None:
        return EqElimResult(polytope=None, witness=identity_int(d), never=True)
    if not eq_idx:
        return EqElimResult(
            polytope=P,
            witness=identity_int(d),
            x_star=AffineMap(
                tuple(tuple(Fraction(0) for _ in range(P.n)) for _ in range(d)),
                tuple(Fraction(0) for _ in range(d)),
            ),
            w_basis=identity_int(d),
        )
    E = [P.B[i] for i in eq_idx]
    rhs_lin = [[-x for x in P.A[i]] for i in eq_idx]
    rhs_const = [P.c[i] for i in eq_idx]
    sol = parametric_integer_solve(E, rhs_lin, rhs_const, P.n)
    if sol.never:
        return EqElimResult(polytope=None, witness=sol.transform, never=True)
    W = sol.basis  # rows w_k, k = 0..d-r-1
    dz = len(W)
    x_lin = sol.x_star.linear
    x_off = sol.x_star.offset
    new_A, new_B, new_c = [], [], []
    for j in range(P.nrows):
        if j in eq_idx:
            continue
        bj = fvec(P.B[j])
        zcoeff = tuple(vdot(bj, fvec(w)) for w in W)
        scoeff = tuple(
            Fraction(P.A[j][t]) + vdot(bj, fvec(row[t] for row in x_lin))
            for t in range(P.n)
        )
        rhs = Fraction(P.c[j]) - vdot(bj, fvec(x_off))
        ints, _ = clear_denominators(tuple(scoeff) + tuple(zcoeff) + (rhs,))
        new_A.append(ints[: P.n])
        new_B.append(ints[P.n : P.n + dz])
        new_c.append(ints[-1])
    for coeffs, const in sol.consistency:
        ints, _ = clear_denominators(tuple(coeffs) + (const,))
        new_A.append(ints[:-1])
        new_B.append(tuple(0 for _ in range(dz)))
        new_c.append(ints[-1])
        new_A.append(tuple(-x for x in ints[:-1]))
        new_B.append(tuple(0 for _ in range(dz)))
        new_c.append(-ints[-1])
    prime = ParametricPolytope.make(P.n, dz, new_A, new_B, new_c)
    return EqElimResult(
        polytope=prime,
        witness=sol.transform,
        congruences=sol.congruences,
        consistency=sol.consistency,
        x_star=sol.x_star,
        w_basis=W,
    )


# ---------------------------------------------------------------------------
# projection (plumbing for picking expansion directions)


def fourier_motzkin_project(P, keep):
    """Project onto the first ``keep`` coordinates by FM elimination."""
    rows = [(tuple(a), Fraction(b)) for a, b in P.ineqs]
    for a, b in P.eqs:
        rows.append((tuple(a), Fraction(b)))
        rows.append((tuple(-x for x in a), Fraction(-b)))
    dim = P.dim
    while dim > keep:
        col = dim - 1
        pos, neg, zero = [], [], []
        for a, b in rows:
            if a[col] > 0:
                pos.append((a, b))
            elif a[col] < 0:
                neg.append((a, b))
            else:
                zero.append((a[:col], b))
        new_rows = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                lam, mu = -an[col], ap[col]
                a = tuple(lam * x + mu * y for x, y in zip(ap[:col], an[:col]))
                b = lam * bp + mu * bn
                new_rows.append((a, b))
        dedup = {}
        for a, b in new_rows:
            if is_zero_vec(a):
                if b < 0:
                    return Polyhedron(keep, ((tuple(Fraction(0) for _ in range(keep)), Fraction(-1)),), ())
                continue
            ints, _ = clear_denominators(tuple(a) + (b,))
            g = 0
            for x in ints:
                g = gcd(g, abs(x))
            ints = tuple(x // g for x in ints)
            key = ints[:-1]
            if key in dedup:
                dedup[key] = min(dedup[key], Fraction(ints[-1]))
            else:
                dedup[key] = Fraction(ints[-1])
        rows = [(fvec(k), v) for k, v in sorted(dedup.items())]
        dim = col
    return Polyhedron(keep, tuple(rows), ())
