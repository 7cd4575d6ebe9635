"""Rational generating functions and their parametric generalization.

A term is alpha * x^p / prod_j (1 - x^(b_j)) with nonzero integer denominator
exponent vectors.  The parametric variant lets the coefficient and the
numerator exponents be step-polynomials of the parameters; instantiating at an
integer parameter point yields an ordinary term.  Terms with identical
structure merge; nothing stronger is attempted (there is no canonical form).
"""

from dataclasses import dataclass
from fractions import Fraction

from .polyhedra import PreconditionError
from .stepfun import StepPoly


def _ivec(v):
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class GFTerm:
    coeff: Fraction
    num: tuple  # integer exponent vector
    denoms: tuple  # sorted tuple of nonzero integer vectors

    @staticmethod
    def make(coeff, num, denoms):
        num = _ivec(num)
        ds = tuple(sorted(_ivec(d) for d in denoms))
        for d in ds:
            if not any(d):
                raise PreconditionError(f"zero denominator vector in term x^{num}")
        return GFTerm(Fraction(coeff), num, ds)

    @property
    def order(self):
        return len(self.denoms)

    def value_at(self, x):
        """Exact rational-function evaluation away from poles (for tests)."""
        x = tuple(Fraction(q) for q in x)

        def power(vec):
            out = Fraction(1)
            for base, e in zip(x, vec):
                out *= base ** e
            return out

        val = self.coeff * power(self.num)
        for d in self.denoms:
            den = 1 - power(d)
            if den == 0:
                raise ZeroDivisionError(f"evaluation at a pole of (1 - x^{d})")
            val /= den
        return val


@dataclass(frozen=True)
class RatGenFun:
    n: int
    terms: tuple

    @staticmethod
    def make(n, terms):
        merged = {}
        for t in terms:
            key = (t.num, t.denoms)
            merged[key] = merged.get(key, Fraction(0)) + t.coeff
        out = tuple(
            GFTerm(c, num, dens)
            for (num, dens), c in sorted(merged.items())
            if c != 0
        )
        return RatGenFun(n, out)

    @property
    def k_bound(self):
        return max((t.order for t in self.terms), default=0)

    def __add__(self, other):
        if other == 0:
            return self
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return RatGenFun.make(self.n, self.terms + other.terms)

    __radd__ = __add__

    def scale(self, c):
        c = Fraction(c)
        return RatGenFun.make(
            self.n, tuple(GFTerm(t.coeff * c, t.num, t.denoms) for t in self.terms)
        )

    def shift(self, p):
        """Multiply by x^p: shifts every numerator exponent."""
        p = _ivec(p)
        return RatGenFun.make(
            self.n,
            tuple(
                GFTerm(t.coeff, tuple(a + b for a, b in zip(t.num, p)), t.denoms)
                for t in self.terms
            ),
        )

    def value_at(self, x):
        return sum((t.value_at(x) for t in self.terms), Fraction(0))


def zero_genfun(n):
    return RatGenFun(n, ())


def flip_denominator(term, j):
    """Apply 1/(1 - x^b) = -x^(-b)/(1 - x^(-b)) to denominator j."""
    if not 0 <= j < len(term.denoms):
        raise IndexError("denominator index out of range")
    b = term.denoms[j]
    rest = term.denoms[:j] + term.denoms[j + 1 :]
    new_num = tuple(a - x for a, x in zip(term.num, b))
    flipped = tuple(-x for x in b)
    return GFTerm.make(-term.coeff, new_num, rest + (flipped,))


def orient_term_to(term, l):
    """Flip denominators until every one has <l, b> < 0."""
    cur = term
    while True:
        for j, b in enumerate(cur.denoms):
            ip = sum(a * x for a, x in zip(l, b))
            if ip == 0:
                raise PreconditionError(
                    f"l={tuple(l)} is orthogonal to denominator vector {b}"
                )
            if ip > 0:
                cur = flip_denominator(cur, j)
                break
        else:
            return cur


def orient_to_l(f, l):
    """Orient every term of f so all denominator exponents point against l."""
    l = _ivec(l)
    out = []
    for i, t in enumerate(f.terms):
        try:
            out.append(orient_term_to(t, l))
        except PreconditionError as exc:
            raise PreconditionError(f"term {i}: {exc}") from None
    return RatGenFun.make(f.n, out)


# -- parametric variant -------------------------------------------------------


@dataclass(frozen=True)
class ParamGFTerm:
    """Term whose coefficient and numerator exponents depend on parameters.

    ``coeff`` is a StepPoly in s; ``num`` a tuple of StepPolys (degree <= 1 by
    construction in the cone pipeline); ``denoms`` constant integer vectors.
    The coefficient may be an indicator-like step-polynomial that vanishes at
    parameter points where the numerator exponents would not be integral.
    """

    coeff: StepPoly
    num: tuple
    denoms: tuple

    @staticmethod
    def make(coeff, num, denoms):
        ds = tuple(sorted(_ivec(d) for d in denoms))
        for d in ds:
            if not any(d):
                raise PreconditionError("zero denominator vector in parametric term")
        return ParamGFTerm(coeff, tuple(num), ds)

    @property
    def order(self):
        return len(self.denoms)


@dataclass(frozen=True)
class ParamGenFun:
    n: int  # parameter dimension
    m: int  # tracked variable dimension
    terms: tuple

    def __add__(self, other):
        if other == 0:
            return self
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("dimension mismatch")
        return ParamGenFun(self.n, self.m, self.terms + other.terms)

    __radd__ = __add__


def zero_paramgenfun(n, m):
    return ParamGenFun(n, m, ())


def constant_paramgenfun(f, n):
    """View an ordinary generating function as parametric with n parameters."""
    terms = tuple(
        ParamGFTerm(
            StepPoly.constant(n, t.coeff),
            tuple(StepPoly.constant(n, e) for e in t.num),
            t.denoms,
        )
        for t in f.terms
    )
    return ParamGenFun(n, f.n, terms)


def instantiate(f, s):
    """Evaluate a parametric generating function at an integer parameter point.

    Terms whose coefficient vanishes at s are dropped before the integrality
    check on the exponents (they stand for empty contributions there).
    """
    s = _ivec(s)
    out = []
    for i, t in enumerate(f.terms):
        c = t.coeff.eval(s)
        if c == 0:
            continue
        exps = []
        for g in t.num:
            v = g.eval(s)
            if v.denominator != 1:
                raise PreconditionError(
                    f"term {i}: numerator exponent {v} is not integral at s={s}"
                )
            exps.append(int(v))
        out.append(GFTerm.make(c, exps, t.denoms))
    return RatGenFun.make(f.m, out)
