"""Exact multivariate polynomials over the rationals.

A polynomial lives in Q[del, lam1, ..., lamk] where ``del`` stands for the
translation generator of a C[del]-module and the lam-variables are the formal
variables produced by lambda-brackets.  The number of lam-variables in scope
(the *arity* k) is part of the value; combining polynomials of different
arities is a hard error so that lambda-variables can never be captured
silently.

Monomials are stored in a dict keyed by the exponent vector
``(e_del, e_lam1, ..., e_lamk)`` with nonzero ``Fraction`` coefficients, which
is already a canonical form: two polynomials are equal iff their dicts are.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ArityError


class Poly:
    """Immutable exact polynomial in del and k lambda-variables."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = int(arity)
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if len(key) != self.arity + 1:
                    raise ValueError(
                        "exponent vector %r does not match arity %d" % (key, arity)
                    )
                coeff = Fraction(coeff)
                if coeff:
                    clean[tuple(int(e) for e in key)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity):
        return cls(arity)

    @classmethod
    def const(cls, value, arity):
        return cls(arity, {(0,) * (arity + 1): Fraction(value)})

    @classmethod
    def one(cls, arity):
        return cls.const(1, arity)

    @classmethod
    def var(cls, index, arity):
        """Variable by index: 0 is del, i >= 1 is lam_i."""
        if not 0 <= index <= arity:
            raise ArityError("variable index %d outside arity %d" % (index, arity))
        key = [0] * (arity + 1)
        key[index] = 1
        return cls(arity, {tuple(key): Fraction(1)})

    @classmethod
    def del_(cls, arity):
        return cls.var(0, arity)

    @classmethod
    def lam(cls, index, arity):
        if index < 1:
            raise ArityError("lambda index must be >= 1")
        return cls.var(index, arity)

    # -- ring structure ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.arity != self.arity:
                raise ArityError(
                    "arity mismatch: %d vs %d" % (self.arity, other.arity)
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key, 0) + coeff
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Poly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                acc = terms.get(key, 0) + ca * cb
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
        return Poly(self.arity, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, value):
        value = Fraction(value)
        return Poly(self.arity, {k: c * value for k, c in self.terms.items()})

    # -- comparisons and hashing -------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.arity)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure ----------------------------------------------------

    def total_degree(self):
        """Joint total degree in del and all lambda-variables (-1 for 0)."""
        if not self.terms:
            return -1
        return max(sum(key) for key in self.terms)

    def degree_in(self, index):
        if not self.terms:
            return -1
        return max(key[index] for key in self.terms)

    def uses_var(self, index):
        return any(key[index] for key in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * (self.arity + 1), Fraction(0))

    def with_arity(self, arity):
        """Embed into a larger lambda-scope (new variables unused)."""
        if arity == self.arity:
            return self
        if arity < self.arity:
            for key in self.terms:
                if any(key[arity + 1:]):
                    raise ArityError(
                        "cannot shrink arity %d -> %d: higher lambda in use"
                        % (self.arity, arity)
                    )
            return Poly(arity, {key[: arity + 1]: c for key, c in self.terms.items()})
        pad = (0,) * (arity - self.arity)
        return Poly(arity, {key + pad: c for key, c in self.terms.items()})

    def substitute(self, index, image):
        """Exact substitution of a variable by a polynomial.

        ``index`` follows the :meth:`var` convention (0 = del).  The image
        must share this polynomial's arity.
        """
        if not 0 <= index <= self.arity:
            raise ArityError("unknown variable index %d" % index)
        image = self._coerce(image)
        if image is NotImplemented:
            raise ArityError("substitution image must be Poly or rational")
        # group by exponent of the substituted variable, use Horner on powers
        result = Poly.zero(self.arity)
        powers = {0: Poly.one(self.arity)}
        for key, coeff in self.terms.items():
            e = key[index]
            if e not in powers:
                powers[e] = image ** e
            rest = list(key)
            rest[index] = 0
            mono = Poly(self.arity, {tuple(rest): coeff})
            result = result + mono * powers[e]
        return result

    def eval_rational(self, values):
        """Evaluate at rational points (values indexed like variables)."""
        if len(values) != self.arity + 1:
            raise ArityError("need %d values" % (self.arity + 1))
        acc = Fraction(0)
        for key, coeff in self.terms.items():
            term = coeff
            for e, v in zip(key, values):
                if e:
                    term *= Fraction(v) ** e
            acc += term
        return acc

    # -- printing ------------------------------------------------------

    def __repr__(self):
        from .grammar import format_poly

        return "Poly(%s)" % format_poly(self)


def dagger(arity, upto=None):
    """The substitution target -del - lam1 - ... - lam_{upto} at given arity.

    ``upto`` defaults to arity - 1, i.e. all lambda-variables except the last
    one, which is the slot being replaced.
    """
    if upto is None:
        upto = arity - 1
    acc = -Poly.del_(arity)
    for i in range(1, upto + 1):
        acc = acc - Poly.lam(i, arity)
    return acc
