"""Vertex cones and their short rational generating functions.

Pipeline per vertex cone: restrict to the affine hull (handling any lattice
misalignment with congruence indicators), pass to the polar side, triangulate
there, run the signed exchange recursion down to unimodular pieces (short
vector via LLL in the dual lattice, strictly decreasing index), and emit one
generating-function term per unimodular cone.  Pieces discarded along the way
polarize to cones with lines, which contribute nothing to the generating
function, so the term sums are exact as rational functions.

A standalone primal triangulation with half-open pieces (pointwise disjoint)
is provided as well; open facets shift the numerator exponents of the
corresponding generating-function terms, and half-open simplicial cones get
exact generating functions by inclusion-exclusion over their cut faces.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from . import backend
from .genfun import ParamGenFun, ParamGFTerm, zero_paramgenfun
from .linalg import (
    clear_denominators,
    det_int,
    fvec,
    kernel_lattice_basis,
    lll_reduce,
    matrix_rank,
    primitive_vector,
    solve_multi_rhs,
    to_pair,
    to_pairs,
    transpose,
    vdot,
)
from .polyhedra import (
    AffineMap,
    Polyhedron,
    PreconditionError,
    affine_form_implied,
    cell_hull_rows,
    implicit_equality_rows,
    parametric_integer_solve,
)
from .stepfun import StepPoly


@dataclass(frozen=True)
class VertexCone:
    """Constraint rows tight at a parametric vertex; apex an affine map of s.

    The cone is {x : <row_i, x> <= beta_i(s)} where beta_i(s) is the affine
    form (rhs_lin[i], rhs_const[i]); by tightness beta_i(s) = <row_i, apex(s)>.
    """

    n: int
    d: int
    apex: AffineMap
    rows: tuple
    rhs_lin: tuple
    rhs_const: tuple


@dataclass(frozen=True)
class SimplicialCone:
    """Simplicial cone with apex; optionally half-open.

    ``gens`` are integer rays, linearly independent (full rank within their
    span).  Facet i is the facet not containing ``gens[i]``; the indices in
    ``open_facets`` are excluded from the point set.
    """

    n: int
    d: int
    apex: AffineMap
    gens: tuple
    sign: int = 1
    open_facets: frozenset = frozenset()

    @property
    def index(self):
        return abs(det_int(self.gens))


@dataclass(frozen=True)
class SignedUnimodularCone:
    """Unimodular cone emitted by the decomposition (always closed)."""

    n: int
    d: int
    apex: AffineMap
    gens: tuple
    sign: int

    @property
    def index(self):
        return abs(det_int(self.gens))


def constant_apex(n, point):
    """Apex map for a fixed rational point (no parameter dependence)."""
    pt = fvec(point)
    return AffineMap(tuple(tuple(Fraction(0) for _ in range(n)) for _ in pt), pt)


# ---------------------------------------------------------------------------
# vertex cones


def vertex_cone(P, vertex, cell_hull):
    """The cone of constraints identically tight at the vertex on a chamber.

    ``cell_hull`` is the chamber cell's affine-hull equality list; a row is
    tight when its slack vanishes as an affine form of s on that hull.
    """
    lin = vertex.map.linear
    off = vertex.map.offset
    rows, rhs_lin, rhs_const = [], [], []
    for j in range(P.nrows):
        bj = fvec(P.B[j])
        coeff = tuple(
            Fraction(P.A[j][t]) + vdot(bj, fvec(row[t] for row in lin))
            for t in range(P.n)
        )
        const = vdot(bj, fvec(off)) - Fraction(P.c[j])
        if not affine_form_implied(cell_hull, (coeff, const)):
            continue
        g = 0
        for x in P.B[j]:
            g = gcd(g, abs(x))
        if g == 0:
            continue  # parameter-only row, no direction constraint
        rows.append(tuple(x // g for x in P.B[j]))
        rhs_lin.append(tuple(Fraction(-P.A[j][t], g) for t in range(P.n)))
        rhs_const.append(Fraction(P.c[j], g))
    return VertexCone(
        P.n, P.d, vertex.map, tuple(rows), tuple(rhs_lin), tuple(rhs_const)
    )


# ---------------------------------------------------------------------------
# rays, extremality, triangulation


def cone_rays(rows, dim):
    """Extreme rays of the pointed full-dimensional cone {x : rows . x <= 0}."""
    if dim == 0:
        return ()
    if dim == 1:
        return tuple(
            c
            for c in ((1,), (-1,))
            if all(vdot(fvec(r), fvec(c)) <= 0 for r in rows)
        )
    out = []
    seen = set()
    for S in combinations(range(len(rows)), dim - 1):
        sub = [rows[i] for i in S]
        if matrix_rank(sub) != dim - 1:
            continue
        ker = kernel_lattice_basis(sub)
        if len(ker) != 1:
            continue
        g = primitive_vector(ker[0])
        for cand in (g, tuple(-x for x in g)):
            if cand in seen:
                continue
            if all(vdot(fvec(r), fvec(cand)) <= 0 for r in rows):
                seen.add(cand)
                out.append(cand)
    return tuple(sorted(out))


def _in_cone_of(gens, target):
    """Is target a nonnegative rational combination of gens?  Exact LP."""
    if not gens:
        return all(x == 0 for x in target)
    m = len(gens)
    amb = len(target)
    rows = []
    cols = list(zip(*[fvec(g) for g in gens]))
    tv = fvec(target)
    for coord in range(amb):
        coeffs = to_pairs([Fraction(x) for x in cols[coord]])
        rows.append((coeffs, to_pair(tv[coord])))
        rows.append(([(-pn, pd) for pn, pd in coeffs], to_pair(-tv[coord])))
    for j in range(m):
        rows.append(
            ([(0, 1)] * j + [(-1, 1)] + [(0, 1)] * (m - j - 1), (0, 1))
        )
    status, _, _ = backend.lp_solve(m, rows, None)
    return status != backend.LP_INFEASIBLE


def _coords_in_span(gens):
    """Rational coordinates of each generator in a basis chosen from them."""
    rank = matrix_rank(gens)
    basis = []
    for g in gens:
        if matrix_rank(basis + [g]) > len(basis):
            basis.append(g)
        if len(basis) == rank:
            break
    cols = solve_multi_rhs(
        transpose(tuple(map(fvec, basis))), [fvec(g) for g in gens]
    )
    return [cols[0][k] for k in range(len(gens))], rank


def pulling_triangulation(gens):
    """Triangulate a pointed cone given by generators into simplicial pieces.

    Returns tuples of generators (subsets) whose cones have pairwise disjoint
    interiors and cover the input cone.  The lexicographically least extreme
    generator is pulled; facets not containing it are triangulated
    recursively.  Deterministic.
    """
    gens = tuple(sorted(set(tuple(int(x) for x in g) for g in gens)))
    extreme = tuple(
        g
        for i, g in enumerate(gens)
        if not _in_cone_of([h for k, h in enumerate(gens) if k != i], g)
    )
    rank = matrix_rank(extreme)
    if len(extreme) == rank:
        return [extreme]
    coords, _ = _coords_in_span(extreme)
    apexg = extreme[0]
    pieces = []
    for S in combinations(range(len(extreme)), rank - 1):
        sub = [coords[i] for i in S]
        if matrix_rank(sub) != rank - 1:
            continue
        nullspace = solve_multi_rhs(sub, [tuple(Fraction(0) for _ in S)])[1]
        if len(nullspace) != 1:
            continue
        w = nullspace[0]
        vals = [vdot(w, coords[i]) for i in range(len(extreme))]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            facet = tuple(extreme[i] for i in range(len(extreme)) if vals[i] == 0)
        else:
            continue
        if apexg in facet or matrix_rank(facet) != rank - 1:
            continue
        for sub_simplex in pulling_triangulation(facet):
            piece = tuple(sorted(set((apexg,) + sub_simplex)))
            if piece not in pieces:
                pieces.append(piece)
    return pieces


def negative_dual_rows(gens):
    """Rational rows c_i with <c_i, gens[j]> = -1 if i = j else 0.

    When the generators are not full-dimensional the rows are the unique such
    forms within the span (minimal-norm representatives are not needed; any
    solution works since only values on the span matter).
    """
    m = tuple(map(fvec, gens))
    r = len(gens)
    sols = solve_multi_rhs(
        m,
        [tuple(Fraction(-1 if i == j else 0) for j in range(r)) for i in range(r)],
    )
    if sols is None:
        raise ValueError("generators are not linearly independent")
    return [sols[0][i] for i in range(r)]


def _generic_interior_point(rays, normals):
    """A rational point interior to cone(rays) avoiding every normal's plane."""
    base = fvec([sum(col) for col in zip(*rays)])
    denom = 2
    while True:
        cand = tuple(b + Fraction(1, denom ** (i + 1)) for i, b in enumerate(base))
        if all(vdot(fvec(w), cand) != 0 for w in normals):
            return cand
        denom += 1


def triangulate(cone):
    """Half-open triangulation of a pointed cone into simplicial pieces.

    The pieces' point sets are pairwise disjoint and cover the cone exactly:
    a fixed generic interior point decides, for every piece, which facets are
    kept closed (the ones it satisfies strictly) and which are open.  Works
    for lower-dimensional cones by triangulating within the linear span.
    Raises on cones that are not pointed.
    """
    E = _implicit_rows(cone.rows, cone.d)
    W = (
        kernel_lattice_basis([cone.rows[i] for i in E])
        if E
        else tuple(tuple(1 if i == j else 0 for j in range(cone.d)) for i in range(cone.d))
    )
    r = len(W)
    if r == 0:
        return [SimplicialCone(cone.n, cone.d, cone.apex, (), 1, frozenset())]
    reduced = []
    for j, row in enumerate(cone.rows):
        if j in E:
            continue
        proj, _ = clear_denominators(
            tuple(vdot(fvec(row), fvec(w)) for w in W)
        )
        prim = primitive_vector(proj)
        if any(prim):
            reduced.append(prim)
    rays = cone_rays(_dedup_rows(reduced), r)
    if not rays or matrix_rank(rays) < r:
        raise PreconditionError("triangulate: cone is not pointed")
    pieces = pulling_triangulation(rays)
    duals = [
        [primitive_vector(clear_denominators(c)[0]) for c in negative_dual_rows(p)]
        for p in pieces
    ]
    normals = sorted(set(tuple(w) for D in duals for w in D))
    zeta = _generic_interior_point(rays, normals)
    out = []
    for piece, D in zip(pieces, duals):
        open_facets = frozenset(
            i for i, w in enumerate(D) if vdot(fvec(w), zeta) > 0
        )
        gens_amb = tuple(_lift_vec(g, W) for g in piece)
        out.append(
            SimplicialCone(cone.n, cone.d, cone.apex, gens_amb, 1, open_facets)
        )
    return out


def _implicit_rows(rows, dim):
    hom = Polyhedron(dim, tuple((fvec(r), Fraction(0)) for r in rows), ())
    return set(implicit_equality_rows(hom))


def _lift_vec(y, W):
    """Map span coordinates back to ambient integers via basis rows W."""
    d = len(W[0]) if W else 0
    out = [0] * d
    for coeff, w in zip(y, W):
        c = int(coeff)
        if c:
            for k in range(d):
                out[k] += c * w[k]
    return tuple(out)


def _dedup_rows(rows):
    seen = set()
    out = []
    for row in rows:
        t = tuple(int(x) for x in row)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# signed unimodular decomposition (exchange recursion on the polar side)


def _short_exchange_vector(D):
    """A nonzero integer w whose coordinates in the rows of D all have
    absolute value strictly below 1 (so every exchanged child has a smaller
    index).

    The coordinate vectors alpha = w . D^{-1} form the lattice spanned by the
    rows of D^{-1}; Minkowski guarantees a nonzero point of it inside the open
    unit box.  LLL reduces the scaled lattice, then small integer combinations
    of the reduced basis are scanned (deterministically) until one lands
    inside the box.  Returns (w, alpha) with w = alpha . D.
    """
    r = len(D)
    det = det_int(D)
    inv_cols = solve_multi_rhs(
        transpose(tuple(map(fvec, D))),
        [tuple(Fraction(det if i == j else 0) for j in range(r)) for i in range(r)],
    )[0]
    lat = [tuple(int(q) for q in inv_cols[i]) for i in range(r)]
    reduced = lll_reduce(lat)
    for radius in (1, 2, 3):
        best = None
        for combo in product(range(-radius, radius + 1), repeat=r):
            v = tuple(
                sum(c * reduced[k][j] for k, c in enumerate(combo) if c)
                for j in range(r)
            )
            if not any(v):
                continue
            alpha = tuple(Fraction(x, det) for x in v)
            mx = max(abs(a) for a in alpha)
            if mx >= 1:
                continue
            w = tuple(
                sum(a * D[k][j] for k, a in enumerate(alpha)) for j in range(r)
            )
            w = tuple(int(x) for x in w)
            g = 0
            for x in w:
                g = gcd(g, abs(x))
            if g > 1:
                w = tuple(x // g for x in w)
                alpha = tuple(a / g for a in alpha)
                mx = max(abs(a) for a in alpha)
            key = (mx, w)
            if best is None or key < best[0]:
                best = (key, w, alpha)
        if best is not None:
            return best[1], best[2]
    raise AssertionError(
        f"no short exchange vector found for an index-{abs(det)} cone"
    )


def exchange_decompose(D, sign=1):
    """Signed decomposition of the simplicial cone spanned by the rows of D.

    Recursively replaces one row by a short lattice vector until every piece
    is unimodular; each replacement strictly decreases the absolute
    determinant.  Valid modulo cones of smaller dimension, which callers
    discard.
    """
    det = abs(det_int(D))
    if det == 0:
        raise PreconditionError("exchange_decompose needs a simplicial cone")
    if det == 1:
        return [(tuple(map(tuple, D)), sign)]
    w, alpha = _short_exchange_vector(D)
    out = []
    for i, a in enumerate(alpha):
        if a == 0:
            continue
        child = tuple(w if k == i else tuple(D[k]) for k in range(len(D)))
        if not abs(det_int(child)) < det:  # pragma: no cover
            raise AssertionError("exchange did not reduce the index")
        out.extend(exchange_decompose(child, sign if a > 0 else -sign))
    return out


def barvinok_decompose(K):
    """Signed unimodular decomposition of a closed, full-dimensional
    simplicial cone; exact at the level of generating functions.

    The polar cone (spanned by the constraint normals) is decomposed by the
    exchange recursion; unimodular polar pieces polarize back to unimodular
    primal cones sharing the apex.
    """
    if K.open_facets:
        raise PreconditionError("barvinok_decompose expects a closed cone")
    r = len(K.gens)
    if r == 0:
        return [SignedUnimodularCone(K.n, K.d, K.apex, (), K.sign)]
    if matrix_rank(K.gens) != len(K.gens[0]):
        raise PreconditionError(
            "barvinok_decompose expects a full-dimensional simplicial cone"
        )
    D = [
        primitive_vector(clear_denominators(c)[0])
        for c in negative_dual_rows(K.gens)
    ]
    out = []
    for Dk, sign in exchange_decompose(tuple(map(tuple, D)), K.sign):
        gens = _primal_gens_from_dual(Dk)
        out.append(SignedUnimodularCone(K.n, K.d, K.apex, gens, sign))
    return out


def _primal_gens_from_dual(Dk):
    """Generators u_i with <u_i, d_j> = -1 if i = j else 0 (unimodular)."""
    r = len(Dk)
    cols = solve_multi_rhs(
        tuple(map(fvec, Dk)),
        [tuple(Fraction(-1 if i == j else 0) for j in range(r)) for i in range(r)],
    )[0]
    gens = []
    for u in cols:
        if any(q.denominator != 1 for q in u):  # pragma: no cover
            raise AssertionError("polar piece is not unimodular")
        gens.append(tuple(int(q) for q in u))
    return tuple(gens)


# ---------------------------------------------------------------------------
# generating functions of cones


def _affine_forms_at_apex(rows, apex, n):
    """Affine forms <c, apex(s)> for each constraint row c."""
    out = []
    for c in rows:
        cv = fvec(c)
        lin = tuple(
            vdot(cv, fvec(row[t] for row in apex.linear)) for t in range(n)
        )
        const = vdot(cv, fvec(apex.offset))
        out.append((lin, const))
    return out


def congruence_indicator(n, congruences):
    """0/1 step-polynomial of simultaneous divisibility conditions."""
    chi = StepPoly.constant(n, 1)
    for cg in congruences:
        coeffs = tuple(Fraction(c, cg.modulus) for c in cg.coeffs)
        hi = StepPoly.floor_of(n, coeffs, Fraction(cg.const, cg.modulus))
        lo = StepPoly.floor_of(n, coeffs, Fraction(cg.const - 1, cg.modulus))
        chi = chi * (hi - lo)
    return chi


def unimodular_gf(K, open_facets=frozenset()):
    """The generating-function term of a full-rank unimodular cone with apex.

    Exponent p(s) = sum_i gamma_i(s) gens[i] with gamma_i = -floor(beta_i)
    for a closed facet and floor(-beta_i) + 1 for an open one, where beta_i
    is the apex value of the i-th negative-dual constraint; the denominator
    vectors are the generators and do not depend on the apex.
    """
    n = K.n
    if not K.gens:
        num = tuple(
            StepPoly.affine(n, row, off)
            for row, off in zip(K.apex.linear, K.apex.offset)
        )
        return ParamGFTerm.make(StepPoly.constant(n, K.sign), num, ())
    duals = negative_dual_rows(K.gens)
    betas = _affine_forms_at_apex(duals, K.apex, n)
    gammas = []
    for i, (lin, const) in enumerate(betas):
        if i in open_facets:
            g = StepPoly.floor_of(n, tuple(-x for x in lin), -const) + 1
        else:
            g = -StepPoly.floor_of(n, lin, const)
        gammas.append(g)
    d_amb = len(K.gens[0])
    num = []
    for k in range(d_amb):
        acc = StepPoly.zero(n)
        for i, g in enumerate(gammas):
            coeff = K.gens[i][k]
            if coeff:
                acc = acc + g * coeff
        num.append(acc)
    return ParamGFTerm.make(StepPoly.constant(n, K.sign), tuple(num), K.gens)


def _reduce_to_fulldim(cone, cell_hull):
    """Restrict a vertex cone to the integer lattice of its affine hull.

    Returns None when the hull never meets the integer lattice, else
    ``(x_star, W, chi, reduced_rows, y0)``: an affine base point, the
    saturated direction basis, the congruence indicator, deduplicated
    primitive reduced constraint rows, and the apex in reduced coordinates.
    """
    n, d = cone.n, cone.d
    implicit = _implicit_rows(cone.rows, d)
    if not implicit:
        zero_map = constant_apex(n, tuple(Fraction(0) for _ in range(d)))
        eye = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
        return (
            zero_map,
            eye,
            StepPoly.constant(n, 1),
            _dedup_rows(cone.rows),
            cone.apex,
        )
    imp = sorted(implicit)
    E = [cone.rows[i] for i in imp]
    rhs_lin = [cone.rhs_lin[i] for i in imp]
    rhs_const = [cone.rhs_const[i] for i in imp]
    sol = parametric_integer_solve(E, rhs_lin, rhs_const, n)
    if sol.never:
        return None
    for coeffs, const in sol.consistency:
        if not affine_form_implied(cell_hull, (tuple(coeffs), -const)):
            raise AssertionError(
                "cone hull consistency condition not implied by the chamber"
            )
    chi = congruence_indicator(n, sol.congruences)
    W = sol.basis
    r = len(W)
    if r == 0:
        # apex-only hull: x_star is the unique solution, no directions remain
        return (sol.x_star, (), chi, (), AffineMap((), ()))
    reduced = []
    for j, row in enumerate(cone.rows):
        if j in implicit:
            continue
        proj, _ = clear_denominators(tuple(vdot(fvec(row), fvec(w)) for w in W))
        prim = primitive_vector(proj)
        if not any(prim):  # pragma: no cover
            raise AssertionError("non-implicit cone row vanished on the hull")
        reduced.append(prim)
    # apex in reduced coordinates: apex(s) = x_star(s) + sum_k y0_k(s) W_k.
    rhs_list = [
        fvec(
            cone.apex.linear[k][t] - sol.x_star.linear[k][t] for k in range(d)
        )
        for t in range(n)
    ]
    rhs_list.append(
        fvec(cone.apex.offset[k] - sol.x_star.offset[k] for k in range(d))
    )
    sols = solve_multi_rhs(transpose(tuple(map(fvec, W))), rhs_list)
    if sols is None:  # pragma: no cover
        raise AssertionError("apex does not lie in the cone's affine hull")
    y_cols = sols[0]
    y0 = AffineMap(
        tuple(tuple(y_cols[t][k] for t in range(n)) for k in range(r)),
        tuple(y_cols[n][k] for k in range(r)),
    )
    return (sol.x_star, W, chi, _dedup_rows(reduced), y0)


def cone_generating_terms(cone, cell_hull):
    """All generating-function terms of one vertex cone on one chamber."""
    n, d = cone.n, cone.d
    red = _reduce_to_fulldim(cone, cell_hull)
    if red is None:
        return []
    x_star, W, chi, rows_r, y0 = red
    r = len(W)
    if r == 0:
        num = tuple(
            StepPoly.affine(n, tuple(row), off)
            for row, off in zip(x_star.linear, x_star.offset)
        )
        return [ParamGFTerm.make(chi, num, ())]
    if matrix_rank(rows_r) < r:
        raise PreconditionError("vertex cone is not pointed")
    simplices = [rows_r] if len(rows_r) == r else pulling_triangulation(rows_r)
    base_exp = [
        StepPoly.affine(n, tuple(x_star.linear[k]), x_star.offset[k])
        for k in range(d)
    ]
    terms = []
    for Dsigma in simplices:
        for Dk, sign in exchange_decompose(tuple(map(tuple, Dsigma)), 1):
            gens_r = _primal_gens_from_dual(Dk)
            betas = _affine_forms_at_apex([fvec(c) for c in Dk], y0, n)
            gammas = [-StepPoly.floor_of(n, lin, const) for lin, const in betas]
            gens_amb = [_lift_vec(g, W) for g in gens_r]
            num = []
            for k in range(d):
                acc = base_exp[k]
                for i, g in enumerate(gammas):
                    coeff = gens_amb[i][k]
                    if coeff:
                        acc = acc + g * coeff
                num.append(acc)
            terms.append(ParamGFTerm.make(chi * sign, tuple(num), gens_amb))
    return terms


def simplicial_gf(K):
    """Generating function of a (possibly half-open) simplicial cone.

    Closed full-dimensional cones go straight to the decomposition; open
    facets are handled exactly by inclusion-exclusion over the faces they cut
    away (each face being a closed simplicial cone of lower rank, reduced to
    its span's lattice).
    """
    n, d = K.n, K.d
    if K.open_facets:
        total = zero_paramgenfun(n, d)
        openset = sorted(K.open_facets)
        for take in product((0, 1), repeat=len(openset)):
            S = {openset[i] for i in range(len(openset)) if take[i]}
            face_gens = tuple(g for i, g in enumerate(K.gens) if i not in S)
            face_sign = K.sign * (-1) ** len(S)
            total = total + simplicial_gf(
                SimplicialCone(n, d, K.apex, face_gens, face_sign)
            )
        return total
    if K.gens and matrix_rank(K.gens) == len(K.gens[0]):
        terms = tuple(
            unimodular_gf(uc)
            for uc in barvinok_decompose(
                SimplicialCone(n, d, K.apex, K.gens, K.sign)
            )
        )
        return ParamGenFun(n, d, terms)
    # lower-rank (or apex-only) face: describe it as a vertex cone and reuse
    # the hull-reduction pipeline.
    rows, rhs_lin, rhs_const = [], [], []
    if K.gens:
        for c in negative_dual_rows(K.gens):
            prim = primitive_vector(clear_denominators(c)[0])
            rows.append(prim)
            lin, const = _affine_forms_at_apex([fvec(prim)], K.apex, n)[0]
            rhs_lin.append(lin)
            rhs_const.append(const)
    for e in kernel_lattice_basis(K.gens) if K.gens else _unit_rows(d):
        for sgn in (1, -1):
            row = tuple(sgn * int(x) for x in e)
            rows.append(row)
            lin, const = _affine_forms_at_apex([fvec(row)], K.apex, n)[0]
            rhs_lin.append(lin)
            rhs_const.append(const)
    vc = VertexCone(
        n, d, K.apex, tuple(rows), tuple(rhs_lin), tuple(rhs_const)
    )
    terms = cone_generating_terms(vc, ())
    if K.sign != 1:
        terms = [ParamGFTerm.make(t.coeff * K.sign, t.num, t.denoms) for t in terms]
    return ParamGenFun(n, d, tuple(terms))


def _unit_rows(d):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def brion_sum(P, chamber):
    """Sum of vertex-cone generating functions over one chamber.

    For parameters in the chamber cell's relative interior the instantiated
    series equals the indicator series of the fiber polytope.
    """
    hull = cell_hull_rows(chamber.cell)
    terms = []
    for v in chamber.vertices:
        vc = vertex_cone(P, v, hull)
        terms.extend(cone_generating_terms(vc, hull))
    return ParamGenFun(P.n, P.d, tuple(terms))
