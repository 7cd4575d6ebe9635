"""Step-polynomials and piecewise step-polynomials.

A step-polynomial is a rational linear combination of products of floors of
affine forms, evaluated at integer arguments.  Terms are normalized so that
equal functions written differently tend to collide: integer parts of floor
arguments are pulled out (exact at integer points), pure-integer floors become
ordinary monomials, and factor multisets are kept sorted.  No semantic
canonical form is attempted beyond that.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor

from .polyhedra import (
    Cell,
    Polyhedron,
    canonical_hyperplane,
    refine_cells,
    relint_contains,
    relint_point,
    whole_space,
)
from .linalg import fvec, vdot


@dataclass(frozen=True, order=True)
class FloorForm:
    """floor(<a, s> + b) with rational a, b."""

    a: tuple
    b: Fraction

    def eval(self, s):
        return Fraction(floor(vdot(self.a, s) + self.b))


def _unit_atom(n, i):
    return FloorForm(tuple(Fraction(1 if j == i else 0) for j in range(n)), Fraction(0))


def _atom_sort_key(atom):
    return (atom.a, atom.b)


class StepPoly:
    """Immutable sum of coeff * product-of-floors terms over Z^n."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        # terms: iterable of (coeff, tuple-of-atoms); merged and sorted here.
        merged = {}
        for coeff, atoms in terms:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            key = tuple(sorted(atoms, key=_atom_sort_key))
            merged[key] = merged.get(key, Fraction(0)) + coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self,
            "terms",
            tuple(
                (c, k)
                for k, c in sorted(
                    merged.items(), key=lambda kv: tuple(map(_atom_sort_key, kv[0]))
                )
                if c != 0
            ),
        )

    def __setattr__(self, *_):
        raise AttributeError("StepPoly is immutable")

    # construction -----------------------------------------------------------

    @staticmethod
    def constant(n, value):
        return StepPoly(n, [(Fraction(value), ())])

    @staticmethod
    def zero(n):
        return StepPoly(n)

    @staticmethod
    def affine(n, coeffs, const=0):
        """<coeffs, s> + const as a step-polynomial (exact at integer s)."""
        terms = [(Fraction(c), (_unit_atom(n, i),)) for i, c in enumerate(coeffs) if c]
        terms.append((Fraction(const), ()))
        return StepPoly(n, terms)

    @staticmethod
    def floor_of(n, coeffs, const):
        """floor(<coeffs, s> + const), normalized.

        Integer parts of the coefficients and the constant move outside the
        floor (valid at integer s); a purely fractional floor of a constant
        folds to zero.
        """
        coeffs = fvec(coeffs)
        const = Fraction(const)
        a_int = tuple(Fraction(floor(c)) for c in coeffs)
        a_frac = tuple(c - ci for c, ci in zip(coeffs, a_int))
        b_int = Fraction(floor(const))
        b_frac = const - b_int
        out = StepPoly.affine(n, a_int, b_int)
        if any(a_frac):
            atom = FloorForm(a_frac, b_frac)
            out = out + StepPoly(n, [(Fraction(1), (atom,))])
        return out

    # queries ------------------------------------------------------------------

    @property
    def degree(self):
        return max((len(atoms) for _, atoms in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def eval(self, s):
        s = fvec(s)
        total = Fraction(0)
        for coeff, atoms in self.terms:
            prod = coeff
            for atom in atoms:
                prod *= atom.eval(s)
                if prod == 0:
                    break
            total += prod
        return total

    def constant_value(self):
        """The value when the polynomial has no floor factors at all."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and not self.terms[0][1]:
            return self.terms[0][0]
        raise ValueError("step-polynomial is not a constant")

    # arithmetic -----------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return StepPoly(self.n, list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return StepPoly(self.n, [(-c, a) for c, a in self.terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return StepPoly(self.n, [(c * other, a) for c, a in self.terms])
        other = self._coerce(other)
        terms = []
        for c1, a1 in self.terms:
            for c2, a2 in other.terms:
                terms.append((c1 * c2, a1 + a2))
        return StepPoly(self.n, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def _coerce(self, other):
        if isinstance(other, StepPoly):
            if other.n != self.n:
                raise ValueError("parameter dimension mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return StepPoly.constant(self.n, other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, StepPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.terms))

    def shift_arg(self, delta):
        """The step-polynomial s |-> self(s + delta)."""
        delta = fvec(delta)
        out = StepPoly.zero(self.n)
        for coeff, atoms in self.terms:
            piece = StepPoly.constant(self.n, coeff)
            for atom in atoms:
                shifted = StepPoly.floor_of(self.n, atom.a, atom.b + vdot(atom.a, delta))
                piece = piece * shifted
            out = out + piece
        return out

    def __repr__(self):
        return f"StepPoly(n={self.n}, {render_steppoly(self)!r})"


def binom_steppoly(q, j):
    """Binomial coefficient C(q, j) with a step-polynomial upper argument."""
    out = StepPoly.constant(q.n, Fraction(1, factorial(j)))
    for i in range(j):
        out = out * (q - i)
    return out


def eval_steppoly(g, s):
    return g.eval(s)


def add_steppoly(g, h):
    return g + h


def mul_steppoly(g, h):
    return g * h


def render_steppoly(g):
    """Human-readable form with floor(...) factors, mirroring paper notation."""
    if not g.terms:
        return "0"

    def render_affine(a, b):
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            name = f"s{i + 1}"
            if c == 1:
                parts.append(name)
            else:
                parts.append(f"{c}*{name}")
        if b != 0 or not parts:
            parts.append(str(b))
        return " + ".join(parts)

    def render_atom(atom):
        if atom.b == 0 and sum(1 for c in atom.a if c) == 1 and 1 in atom.a:
            return f"s{atom.a.index(Fraction(1)) + 1}"
        return f"floor({render_affine(atom.a, atom.b)})"

    chunks = []
    for coeff, atoms in g.terms:
        factors = [render_atom(at) for at in atoms]
        if not factors:
            chunks.append(str(coeff))
        elif coeff == 1:
            chunks.append("*".join(factors))
        elif coeff == -1:
            chunks.append("-" + "*".join(factors))
        else:
            chunks.append(f"{coeff}*" + "*".join(factors))
    return " + ".join(chunks).replace("+ -", "- ")


@dataclass(frozen=True)
class PiecewiseStepPoly:
    """Cells whose relative interiors partition Q^n, each with a value."""

    n: int
    pieces: tuple  # of (Cell, StepPoly)

    @property
    def degree(self):
        return max((g.degree for _, g in self.pieces), default=0)

    def eval(self, s):
        sv = fvec(s)
        hits = [g for cell, g in self.pieces if relint_contains(cell, sv)]
        if not hits:
            raise ValueError(f"no piece contains {s}: partition violated")
        if len(hits) > 1:
            raise ValueError(f"{len(hits)} pieces contain {s}: partition violated")
        return hits[0].eval(sv)

    def scale(self, c):
        return PiecewiseStepPoly(self.n, tuple((cell, g * c) for cell, g in self.pieces))

    def shift_arg(self, delta):
        """s |-> self(s + delta): shifts every cell and every value."""
        delta = fvec(delta)
        out = []
        for cell, g in self.pieces:
            P = cell.closed
            ineqs = tuple((a, b - vdot(a, delta)) for a, b in P.ineqs)
            eqs = tuple((a, b - vdot(a, delta)) for a, b in P.eqs)
            moved = Cell(Polyhedron(P.dim, ineqs, eqs), cell.strict)
            out.append((moved, g.shift_arg(delta)))
        return PiecewiseStepPoly(self.n, tuple(out))


def eval_piecewise(c, s):
    return c.eval(s)


def piecewise_constant(n, value):
    return PiecewiseStepPoly(n, ((whole_space(n), StepPoly.constant(n, value)),))


def cell_hyperplanes(cell):
    keys = []
    P = cell.closed
    for a, b in tuple(P.ineqs) + tuple(P.eqs):
        key = canonical_hyperplane(a, b)
        if key is not None:
            keys.append(key)
    return keys


def sum_piecewise(funcs):
    """Pointwise sum of piecewise step-polynomials on a common refinement.

    The defining hyperplanes of every input cell are thrown into one
    arrangement; on each refined cell the containing piece of each input is
    located through an exact interior sample point and the values are added.
    """
    funcs = list(funcs)
    if not funcs:
        raise ValueError("sum_piecewise needs at least one function")
    n = funcs[0].n
    for f in funcs:
        if f.n != n:
            raise ValueError("parameter dimension mismatch")
    keys = set()
    for f in funcs:
        for cell, _ in f.pieces:
            keys.update(cell_hyperplanes(cell))
    hps = [(fvec(a), Fraction(b)) for a, b in sorted(keys)]
    cells = refine_cells([whole_space(n)], hps)
    pieces = []
    for cell in cells:
        x = relint_point(cell)
        total = StepPoly.zero(n)
        for f in funcs:
            hits = [g for c2, g in f.pieces if relint_contains(c2, x)]
            if len(hits) != 1:
                raise ValueError(
                    f"input piecewise function is not a partition at {x}"
                )
            total = total + hits[0]
        pieces.append((cell, total))
    return PiecewiseStepPoly(n, tuple(pieces))


def integer_samples(cell, count, span=30):
    """Deterministic integer points in the cell's relative interior.

    Scans L-infinity shells around the rounded exact interior point; useful
    for pointwise verification.  May return fewer than ``count`` points for
    thin cells within the given span.
    """
    x = relint_point(cell)
    if x is None:
        return []
    n = cell.dim
    center = tuple(floor(q) for q in x)
    out = []
    for radius in range(span + 1):
        for offset in _shell(n, radius):
            pt = tuple(c + o for c, o in zip(center, offset))
            if relint_contains(cell, fvec(pt)):
                out.append(pt)
                if len(out) >= count:
                    return out
    return out


def _shell(n, radius):
    if n == 0:
        if radius == 0:
            yield ()
        return
    for rest in _box(n - 1, radius):
        yield (radius,) + rest
        if radius:
            yield (-radius,) + rest
    if radius:
        for lead in range(-radius + 1, radius):
            for rest in _shell(n - 1, radius):
                yield (lead,) + rest


def _box(n, radius):
    if n == 0:
        yield ()
        return
    for lead in range(-radius, radius + 1):
        for rest in _box(n - 1, radius):
            yield (lead,) + rest


def closed_presentation(pw, samples_per_boundary=12, span=30):
    """Closed-chamber view: full-dimensional pieces with closures.

    Returns ``(pieces, flag)`` where pieces are (closed Polyhedron, StepPoly)
    for the full-dimensional cells and flag is "sampled" when every
    lower-dimensional piece's values agreed with an adjacent full-dimensional
    formula on the sampled shared integer points, else None (no closed
    presentation established).
    """
    full = [(cell, g) for cell, g in pw.pieces if not cell.closed.eqs]
    lower = [(cell, g) for cell, g in pw.pieces if cell.closed.eqs]
    agree = True
    for cell, g in lower:
        pts = integer_samples(cell, samples_per_boundary, span)
        for pt in pts:
            target = g.eval(pt)
            if not any(
                fc.closed.contains(fvec(pt)) and fg.eval(pt) == target
                for fc, fg in full
            ):
                agree = False
                break
        if not agree:
            break
    if not agree:
        return None, None
    return [(cell.closed, g) for cell, g in full], "sampled"
