"""Exact rational and integer linear algebra.

Scalars are ``fractions.Fraction`` (arbitrary precision, always lowest terms,
positive denominator); vectors are tuples, matrices tuples of row tuples.
Integer lattice work (Hermite form, kernels, LLL) uses plain ints.  Nothing
here ever touches floating point.
"""

from fractions import Fraction
from math import gcd

from . import backend

Rat = Fraction


def rat(x) -> Fraction:
    """Parse a rational from an int, a Fraction, or a 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(q: Fraction) -> str:
    """Serialize as 'p/q', or 'p' when the denominator is 1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# vector / matrix helpers (Fractions) ---------------------------------------


def fvec(xs):
    return tuple(Fraction(x) for x in xs)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def vdot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u):
    return all(a == 0 for a in u)


def mat_vec(A, x):
    return tuple(vdot(row, x) for row in A)


def identity_int(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A):
    if not A:
        return ()
    return tuple(tuple(row[j] for row in A) for j in range(len(A[0])))


def mat_mul_int(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


# pair conversion for the kernels --------------------------------------------


def to_pair(q):
    q = Fraction(q)
    return (q.numerator, q.denominator)


def to_pairs(vec):
    return [to_pair(q) for q in vec]


def from_pair(p):
    return Fraction(p[0], p[1])


def from_pairs(ps):
    return tuple(Fraction(n, d) for n, d in ps)


# solving ---------------------------------------------------------------------


def solve_rational_system(A, b):
    """Solve A x = b exactly.

    Returns None when inconsistent, otherwise ``(x, nullspace)`` with a
    particular solution and a basis of the full nullspace.
    """
    sols = solve_multi_rhs(A, [tuple(b)])
    if sols is None:
        return None
    cols, nullspace = sols
    return cols[0], nullspace


def solve_multi_rhs(A, rhs_cols):
    """Solve A x = b for several right-hand sides in one elimination.

    Returns None if any system is inconsistent, else ``(solutions, nullspace)``
    where ``solutions[k]`` solves against ``rhs_cols[k]``.
    """
    m = len(A)
    n = len(A[0]) if m else (0 if not rhs_cols or not rhs_cols[0] else None)
    if n is None:
        raise ValueError("cannot infer width of an empty system")
    k = len(rhs_cols)
    rows = []
    for i in range(m):
        row = to_pairs(A[i]) + [to_pair(rhs_cols[j][i]) for j in range(k)]
        rows.append(row)
    rank, pivots, red = backend.rref(rows, n)
    for i in range(rank, m):
        for j in range(k):
            if red[i][n + j][0] != 0:
                return None
    sols = []
    for j in range(k):
        x = [Fraction(0)] * n
        for i, pc in enumerate(pivots):
            x[pc] = from_pair(red[i][n + j])
        sols.append(tuple(x))
    free_cols = [c for c in range(n) if c not in pivots]
    nullspace = []
    for f in free_cols:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -from_pair(red[i][f])
        nullspace.append(tuple(v))
    return sols, nullspace


def matrix_rank(A):
    if not A:
        return 0
    rows = [to_pairs(r) for r in A]
    rank, _, _ = backend.rref(rows, len(A[0]))
    return rank


def affine_form_implied(hull_rows, form):
    """Decide whether a rational affine form vanishes on an affine subspace.

    ``hull_rows`` are pairs ``(a, b)`` meaning ``<a, s> = b``; ``form`` is
    ``(coeffs, const)`` standing for ``<coeffs, s> + const``.  True iff the
    form is a linear combination of the hull equations (so it vanishes on the
    whole, assumed nonempty, solution set).
    """
    coeffs, const = form
    if is_zero_vec(coeffs) and const == 0:
        return True
    base = [tuple(a) + (-Fraction(b),) for a, b in hull_rows]
    target = tuple(coeffs) + (Fraction(const),)
    if not base:
        return False
    r0 = matrix_rank(base)
    return matrix_rank(base + [target]) == r0


# integer lattice algorithms ---------------------------------------------------


def _row_axpy(W, U, dst, src, q):
    wd, ws = W[dst], W[src]
    for j in range(len(wd)):
        wd[j] += q * ws[j]
    ud, us = U[dst], U[src]
    for j in range(len(ud)):
        ud[j] += q * us[j]


def hermite_normal_form(A):
    """Row-style Hermite normal form: returns (H, U) with H = U A.

    U is unimodular.  H is lower-triangular echelon: pivot columns strictly
    increase down the rows, each pivot is positive with only zeros to its
    right, entries below a pivot lie in [0, pivot), and zero rows come last.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    W = [[int(x) for x in row] for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    free = list(range(m))
    found = []  # (col, row) pairs discovered right-to-left
    for col in range(n - 1, -1, -1):
        live = [i for i in free if W[i][col] != 0]
        if not live:
            continue
        i0 = live[0]
        for i in live[1:]:
            while W[i][col] != 0:
                q = W[i0][col] // W[i][col]
                if q:
                    _row_axpy(W, U, i0, i, -q)
                i0, i = i, i0
        if W[i0][col] < 0:
            W[i0] = [-x for x in W[i0]]
            U[i0] = [-x for x in U[i0]]
        free.remove(i0)
        found.append((col, i0))
    found.reverse()
    order = [i for (_, i) in found] + free
    H = [W[i] for i in order]
    T = [U[i] for i in order]
    for k, (col, _) in enumerate(found):
        p = H[k][col]
        for i in range(k + 1, len(found)):
            q = H[i][col] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[k])]
                T[i] = [a - q * b for a, b in zip(T[i], T[k])]
    return tuple(map(tuple, H)), tuple(map(tuple, T))


def kernel_lattice_basis(A):
    """Saturated integer basis of {x : A x = 0}.

    The returned rows span the full rational kernel and generate exactly
    ker(A) intersected with the integer lattice.
    """
    if not A:
        return ()
    H, U = hermite_normal_form(transpose(tuple(map(tuple, A))))
    out = []
    for h, u in zip(H, U):
        if all(x == 0 for x in h):
            out.append(tuple(u))
    return tuple(out)


def column_echelon(A, width=None):
    """Unimodular column reduction: returns (G, V, r) with A V = [G | 0].

    V is unimodular of size d = number of columns of A; G keeps the first r
    (independent) reduced columns.
    """
    if A:
        d = len(A[0])
    elif width is not None:
        d = width
    else:
        raise ValueError("need explicit width for an empty system")
    if not A:
        return (), identity_int(d), 0
    H, U = hermite_normal_form(transpose(tuple(map(tuple, A))))
    r = sum(1 for h in H if any(x != 0 for x in h))
    V = transpose(U)
    AV = mat_mul_int(tuple(map(tuple, A)), V)
    G = tuple(tuple(row[:r]) for row in AV)
    return G, V, r


def det_int(A):
    """Exact integer determinant (Bareiss elimination)."""
    n = len(A)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = -1
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    swap = i
                    break
            if swap < 0:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(vec):
    """Scale a rational vector to integers; returns (int_vector, multiplier)."""
    mult = 1
    for q in vec:
        q = Fraction(q)
        mult = mult * q.denominator // gcd(mult, q.denominator)
    out = tuple(int(Fraction(q) * mult) for q in vec)
    return out, mult


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL lattice reduction of linearly independent integer row vectors.

    Output spans the same lattice, is size-reduced, and satisfies the Lovasz
    condition with the given delta (default 3/4).  Raises ValueError on
    dependent input.
    """
    b = [list(map(int, row)) for row in basis]
    k_max = len(b)
    if k_max <= 1:
        if k_max == 1 and all(x == 0 for x in b[0]):
            raise ValueError("zero vector is not a basis")
        return tuple(tuple(row) for row in b)

    def gso(rows):
        star = []
        mu = [[Fraction(0)] * k_max for _ in range(k_max)]
        for i, row in enumerate(rows):
            v = [Fraction(x) for x in row]
            for j in range(i):
                sj = star[j]
                denom = vdot(sj, sj)
                if denom == 0:
                    raise ValueError("linearly dependent basis")
                mu[i][j] = vdot(fvec(row), sj) / denom
                v = [a - mu[i][j] * c for a, c in zip(v, sj)]
            star.append(tuple(v))
        for i, s in enumerate(star):
            if vdot(s, s) == 0:
                raise ValueError("linearly dependent basis")
        return star, mu

    star, mu = gso(b)
    k = 1
    while k < k_max:
        for j in range(k - 1, -1, -1):
            m = mu[k][j]
            if abs(m) > Fraction(1, 2):
                q = round(m)
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
                star, mu = gso(b)
        lhs = vdot(star[k], star[k])
        rhs = (delta - mu[k][k - 1] ** 2) * vdot(star[k - 1], star[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            star, mu = gso(b)
            k = max(k - 1, 1)
    return tuple(tuple(row) for row in b)
