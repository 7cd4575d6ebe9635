"""Substituting 1 into trailing generating-function variables.

Substituting x_j = (1+t)^{lam_j} for the trailing variables turns each term
into a univariate function of t whose constant Laurent coefficient is the
term's contribution.  Pole factors (denominators living entirely in the
substituted block) determine the pole order r; the constant term is the
t^r coefficient of the analytic part, computed through the truncated division
recurrence.  Surviving factors re-expand through

    1/(1 - w (1+t)^v) = sum_k w^k ((1+t)^v - 1)^k / (1 - w)^(k+1),

which keeps every output term in the same short-rational form with at most as
many denominator factors as before.

Two strategies are provided: substituting one variable at a time with lam = 1
(always admissible) and substituting a whole block at once with lam = (1,..,1)
(used when admissible; this is the substitution under which the per-cone
contributions take their customary printed shapes).
"""

from fractions import Fraction
from math import comb

from .genfun import ParamGenFun, ParamGFTerm, RatGenFun, constant_paramgenfun, instantiate
from .polyhedra import PreconditionError
from .stepfun import StepPoly, binom_steppoly


class TruncSeries:
    """Power series modulo t^(order+1); coefficients form a commutative ring."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs, zero=Fraction(0)):
        coeffs = list(coeffs)[: order + 1]
        while len(coeffs) < order + 1:
            coeffs.append(zero)
        self.order = order
        self.coeffs = coeffs

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            out = [None] * (self.order + 1)
            for k in range(self.order + 1):
                acc = None
                for i in range(k + 1):
                    a = self.coeffs[i]
                    b = other.coeffs[k - i]
                    term = a * b
                    acc = term if acc is None else acc + term
                out[k] = acc
            return TruncSeries(self.order, out)
        return TruncSeries(self.order, [c * other for c in self.coeffs])

    __rmul__ = __mul__


def taylor_divide(P, Q):
    """Coefficients of P/Q modulo the truncation order via the standard
    recurrence c_j = (a_j - sum_{i=1..j} b_i c_{j-i}) / b_0.

    Q's constant coefficient must be a nonzero rational.
    """
    if not isinstance(Q.coeffs[0], Fraction) or Q.coeffs[0] == 0:
        raise PreconditionError("series division needs an invertible constant term")
    b0 = Q.coeffs[0]
    out = []
    for j in range(P.order + 1):
        acc = P.coeffs[j]
        for i in range(1, j + 1):
            acc = acc - Q.coeffs[i] * out[j - i]
        out.append(acc / b0)
    return TruncSeries(P.order, out)


def _pole_factor_series(v, order):
    """(1 - (1+t)^v) / t truncated: coefficient j is -C(v, j+1)."""
    return TruncSeries(order, [Fraction(-comb_int(v, j + 1)) for j in range(order + 1)])


def comb_int(v, j):
    """Binomial coefficient with a possibly negative integer upper index."""
    if v >= 0:
        return comb(v, j) if j <= v else 0
    num = 1
    for i in range(j):
        num *= v - i
    den = 1
    for i in range(1, j + 1):
        den *= i
    return num // den


def _survivor_power_series(v, k, order):
    """((1+t)^v - 1)^k truncated (no constant term for k >= 1)."""
    base = TruncSeries(order, [Fraction(comb_int(v, j)) if j else Fraction(0) for j in range(order + 1)])
    out = TruncSeries(order, [Fraction(1)] + [Fraction(0)] * order)
    for _ in range(k):
        out = out * base
    return out


def _multi_indices(count, budget):
    if count == 0:
        yield ()
        return
    for head in range(budget + 1):
        for rest in _multi_indices(count - 1, budget - head):
            yield (head,) + rest


def block_admissible(f, keep, lam):
    """Check the substitution precondition for every denominator vector."""
    for i, term in enumerate(f.terms):
        for b in term.denoms:
            head = b[:keep]
            v = sum(x * y for x, y in zip(b[keep:], lam))
            if not any(head) and v == 0:
                return (i, b)
    return None


def specialize_block(f, keep, lam):
    """Substitute x_j = (1+t)^lam for all tracked variables past ``keep``.

    Returns the generating function in the first ``keep`` variables.  Raises
    when some denominator vector is annihilated by the substitution.
    """
    m = f.m
    lam = tuple(int(x) for x in lam)
    if len(lam) != m - keep:
        raise ValueError("lambda length must match the substituted block")
    bad = block_admissible(f, keep, lam)
    if bad is not None:
        raise PreconditionError(
            f"term {bad[0]}: denominator vector {bad[1]} is annihilated by "
            f"lambda={lam} on the last {m - keep} variables"
        )
    n = f.n
    out_terms = []
    for term in f.terms:
        poles = []
        survivors = []
        for b in term.denoms:
            head = b[:keep]
            v = sum(x * y for x, y in zip(b[keep:], lam))
            if any(head):
                survivors.append((head, v))
            else:
                poles.append(v)
        r = len(poles)
        q_tail = StepPoly.zero(n)
        for j, g in enumerate(term.num[keep:]):
            if lam[j]:
                q_tail = q_tail + g * lam[j]
        # rational part: product of survivor expansions over pole product
        d_pole = TruncSeries(r, [Fraction(1)] + [Fraction(0)] * r)
        for v in poles:
            d_pole = d_pole * _pole_factor_series(v, r)
        n_coeffs = [binom_steppoly(q_tail, j) for j in range(r + 1)]
        for kvec in _multi_indices(len(survivors), r):
            rational = TruncSeries(r, [Fraction(1)] + [Fraction(0)] * r)
            for (head, v), k in zip(survivors, kvec):
                if k:
                    rational = rational * _survivor_power_series(v, k, r)
            g_series = taylor_divide(rational, d_pole)
            c_r = StepPoly.zero(n)
            for i in range(r + 1):
                w = g_series.coeffs[r - i]
                if w != 0:
                    c_r = c_r + n_coeffs[i] * w
            coeff = term.coeff * c_r
            if coeff.is_zero():
                continue
            num = []
            for idx in range(keep):
                g = term.num[idx]
                shift = sum(
                    k * head[idx] for (head, _), k in zip(survivors, kvec)
                )
                num.append(g + shift if shift else g)
            denoms = []
            for (head, _), k in zip(survivors, kvec):
                denoms.extend([head] * (k + 1))
            if len(denoms) > len(term.denoms):  # pragma: no cover
                raise AssertionError("specialization grew a denominator list")
            out_terms.append(ParamGFTerm.make(coeff, num, denoms))
    return ParamGenFun(n, keep, tuple(out_terms))


def specialize_last(f):
    """One variable at a time with lambda = 1 (always admissible)."""
    if f.m == 0:
        raise ValueError("no tracked variables left to substitute")
    return specialize_block(f, f.m - 1, (1,))


def specialize_to_steppoly(f, strategy="auto"):
    """Value of the generating function at the all-ones point, per parameter.

    Returns the StepPoly such that, wherever the underlying term sum is
    analytic at 1 (or by the fixed substitution convention otherwise), the sum
    of all contributions equals it.  ``strategy``: "auto" uses the whole-block
    all-ones substitution when admissible and falls back to one variable at a
    time; "iterated" forces the fallback; "simultaneous" insists and raises
    when inadmissible.
    """
    total = StepPoly.zero(f.n)
    reduced = None
    if strategy in ("auto", "simultaneous") and f.m > 0:
        lam = (1,) * f.m
        if block_admissible(f, 0, lam) is None:
            reduced = specialize_block(f, 0, lam)
        elif strategy == "simultaneous":
            specialize_block(f, 0, lam)  # raises with the offending datum
    if reduced is None:
        reduced = f
        while reduced.m > 0:
            reduced = specialize_block(reduced, reduced.m - 1, (1,))
    for term in reduced.terms:
        total = total + term.coeff
    return total


def specialize_genfun_block(f, keep, strategy="auto"):
    """RatGenFun wrapper: substitute 1 into the trailing variables of f.

    Used to collapse joint-space generating functions down to the parameter
    block.  Strategy as in specialize_to_steppoly.
    """
    pg = constant_paramgenfun(f, 0)
    if strategy in ("auto", "simultaneous") and f.n > keep:
        lam = (1,) * (f.n - keep)
        if block_admissible(pg, keep, lam) is None:
            return instantiate(specialize_block(pg, keep, lam), ())
        if strategy == "simultaneous":
            specialize_block(pg, keep, lam)  # raises
    while pg.m > keep:
        pg = specialize_block(pg, pg.m - 1, (1,))
    return instantiate(pg, ())
