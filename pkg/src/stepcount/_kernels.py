"""Exact rational inner loops: elimination and simplex.

Rationals are ``(num, den)`` tuples of Python ints with ``den > 0`` and the
pair in lowest terms.  Working on raw pairs instead of ``fractions.Fraction``
keeps the pivot loops free of instance overhead; the module is also written so
it can be compiled as-is with Cython (see setup.py) into the optional fast
lane ``stepcount._kernels_c``.  Everything here is deterministic: no hashing
order, no randomness, Bland's rule for pivoting.
"""

from math import gcd

R_ZERO = (0, 1)
R_ONE = (1, 1)

# status codes for lp_solve
LP_OPTIMAL = 0
LP_INFEASIBLE = 1
LP_UNBOUNDED = 2


def rnorm(n, d):
    """Normalize a numerator/denominator pair."""
    if d < 0:
        n = -n
        d = -d
    if n == 0:
        return (0, 1)
    g = gcd(n, d)
    if g > 1:
        return (n // g, d // g)
    return (n, d)


def radd(a, b):
    an, ad = a
    bn, bd = b
    if an == 0:
        return b
    if bn == 0:
        return a
    return rnorm(an * bd + bn * ad, ad * bd)


def rsub(a, b):
    an, ad = a
    bn, bd = b
    if bn == 0:
        return a
    if an == 0:
        return (-bn, bd)
    return rnorm(an * bd - bn * ad, ad * bd)


def rmul(a, b):
    an, ad = a
    bn, bd = b
    if an == 0 or bn == 0:
        return (0, 1)
    return rnorm(an * bn, ad * bd)


def rdiv(a, b):
    an, ad = a
    bn, bd = b
    if bn == 0:
        raise ZeroDivisionError("rational division by zero")
    if an == 0:
        return (0, 1)
    return rnorm(an * bd, ad * bn)


def rneg(a):
    return (-a[0], a[1])


def rcmp(a, b):
    """Sign of a - b."""
    t = a[0] * b[1] - b[0] * a[1]
    if t > 0:
        return 1
    if t < 0:
        return -1
    return 0


def rdot(xs, ys):
    acc = (0, 1)
    for i in range(len(xs)):
        x = xs[i]
        if x[0] == 0:
            continue
        y = ys[i]
        if y[0] == 0:
            continue
        acc = radd(acc, rmul(x, y))
    return acc


def rref(rows, npivot):
    """Gauss-Jordan elimination with pivoting restricted to leading columns.

    ``rows`` is a list of equal-length lists of rational pairs.  Pivots are
    chosen among the first ``npivot`` columns only; trailing columns ride
    along, which turns one call into a multi-right-hand-side solve.  Pivot
    selection is first-nonzero (deterministic).

    Returns ``(rank, pivot_cols, reduced)`` where ``reduced`` has unit pivots
    with zeros above and below, pivot rows first (in pivot-column order) and
    the remaining rows reduced against them.
    """
    m = len(rows)
    work = [list(r) for r in rows]
    if m == 0:
        return 0, [], work
    ncols = len(work[0])
    rank = 0
    pivot_cols = []
    for col in range(npivot):
        piv = -1
        for i in range(rank, m):
            if work[i][col][0] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        pval = prow[col]
        if pval != (1, 1):
            inv = (pval[1], pval[0]) if pval[0] > 0 else (-pval[1], -pval[0])
            for j in range(col, ncols):
                if prow[j][0] != 0:
                    prow[j] = rmul(prow[j], inv)
        for i in range(m):
            if i == rank:
                continue
            row = work[i]
            f = row[col]
            if f[0] == 0:
                continue
            for j in range(col, ncols):
                p = prow[j]
                if p[0] != 0:
                    row[j] = rsub(row[j], rmul(f, p))
        pivot_cols.append(col)
        rank += 1
        if rank == m:
            break
    return rank, pivot_cols, work


def _pivot(tab, cost, basis, r, j):
    """Pivot the tableau (and cost row) on entry (r, j)."""
    m = len(tab)
    ncols = len(tab[0])
    prow = tab[r]
    pval = prow[j]
    inv = (pval[1], pval[0]) if pval[0] > 0 else (-pval[1], -pval[0])
    for k in range(ncols):
        if prow[k][0] != 0:
            prow[k] = rmul(prow[k], inv)
    for i in range(m):
        if i == r:
            continue
        row = tab[i]
        f = row[j]
        if f[0] == 0:
            continue
        for k in range(ncols):
            p = prow[k]
            if p[0] != 0:
                row[k] = rsub(row[k], rmul(f, p))
    f = cost[j]
    if f[0] != 0:
        for k in range(ncols):
            p = prow[k]
            if p[0] != 0:
                cost[k] = rsub(cost[k], rmul(f, p))
    basis[r] = j


def _cost_row(tab, basis, c, ncols):
    """Reduced-cost row z_j = c_B B^-1 A_j - c_j, with objective value last."""
    cost = [rneg(c[j]) if c[j][0] != 0 else (0, 1) for j in range(ncols)]
    for i in range(len(tab)):
        cb = c[basis[i]]
        if cb[0] == 0:
            continue
        row = tab[i]
        for k in range(ncols):
            if row[k][0] != 0:
                cost[k] = radd(cost[k], rmul(cb, row[k]))
    return cost


def _simplex_loop(tab, cost, basis, ncand):
    """Run Bland-rule simplex until optimal or unbounded.

    ``ncand`` limits entering-variable candidates to column indices below it.
    Returns True when optimal, False when unbounded.
    """
    m = len(tab)
    rhs = len(tab[0]) - 1
    while True:
        enter = -1
        for j in range(ncand):
            if cost[j][0] < 0:
                enter = j
                break
        if enter < 0:
            return True
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a[0] > 0:
                ratio = rdiv(tab[i][rhs], a)
                if best is None or rcmp(ratio, best) < 0 or (
                    rcmp(ratio, best) == 0 and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return False
        _pivot(tab, cost, basis, leave, enter)


def lp_solve(nvars, cons, objective):
    """Exact simplex over free rational variables.

    ``cons`` is a list of ``(coeffs, rhs)`` rows meaning ``<coeffs, x> <= rhs``
    with ``coeffs`` a list of ``nvars`` rational pairs.  ``objective`` is a
    list of pairs to maximize, or None for a pure feasibility check.

    Returns ``(status, x, value)``: status is LP_OPTIMAL / LP_INFEASIBLE /
    LP_UNBOUNDED; ``x`` is a list of rational pairs (a feasible point, optimal
    when status is LP_OPTIMAL and an objective was given; None when
    infeasible); ``value`` is the objective value or None.
    """
    m = len(cons)
    nfree = 2 * nvars
    nslack = m
    # Rows needing an artificial variable: those with negative rhs.
    art_rows = [i for i in range(m) if cons[i][1][0] < 0]
    nart = len(art_rows)
    ncols = nfree + nslack + nart
    tab = []
    for i in range(m):
        coeffs, rhs = cons[i]
        neg = rhs[0] < 0
        row = [(0, 1)] * (ncols + 1)
        for j in range(nvars):
            a = coeffs[j]
            if a[0] == 0:
                continue
            if neg:
                a = rneg(a)
            row[2 * j] = a
            row[2 * j + 1] = rneg(a)
        row[nfree + i] = (-1, 1) if neg else (1, 1)
        row[ncols] = rneg(rhs) if neg else rhs
        tab.append(row)
    basis = []
    k = 0
    for i in range(m):
        if cons[i][1][0] < 0:
            tab[i][nfree + nslack + k] = (1, 1)
            basis.append(nfree + nslack + k)
            k += 1
        else:
            basis.append(nfree + i)

    if nart:
        c1 = [(0, 1)] * (ncols + 1)
        for j in range(nfree + nslack, ncols):
            c1[j] = (-1, 1)
        cost = _cost_row(tab, basis, c1, ncols + 1)
        _simplex_loop(tab, cost, basis, ncols)
        if cost[ncols][0] != 0:
            return LP_INFEASIBLE, None, None
        # Drive leftover artificial variables out of the basis.
        for i in range(m - 1, -1, -1):
            if basis[i] < nfree + nslack:
                continue
            piv = -1
            for j in range(nfree + nslack):
                if tab[i][j][0] != 0:
                    piv = j
                    break
            if piv >= 0:
                _pivot(tab, cost, basis, i, piv)
            else:
                del tab[i]
                del basis[i]
        m = len(tab)

    if objective is not None:
        c2 = [(0, 1)] * (ncols + 1)
        for j in range(nvars):
            o = objective[j]
            if o[0] != 0:
                c2[2 * j] = o
                c2[2 * j + 1] = rneg(o)
        cost = _cost_row(tab, basis, c2, ncols + 1)
        if not _simplex_loop(tab, cost, basis, nfree + nslack):
            return LP_UNBOUNDED, _extract(tab, basis, nvars, ncols), None
        return LP_OPTIMAL, _extract(tab, basis, nvars, ncols), cost[ncols]
    return LP_OPTIMAL, _extract(tab, basis, nvars, ncols), None


def _extract(tab, basis, nvars, ncols):
    vals = {}
    for i in range(len(tab)):
        vals[basis[i]] = tab[i][ncols]
    x = []
    for j in range(nvars):
        u = vals.get(2 * j, (0, 1))
        v = vals.get(2 * j + 1, (0, 1))
        x.append(rsub(u, v))
    return x
