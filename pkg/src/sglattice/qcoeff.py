"""Exact arithmetic in Z[q, q^-1], its fraction field, and cyclotomic residues.

Everything downstream (densities, screening checks, series expansions,
root-of-unity specialization) reduces to arithmetic in three coefficient
rings, implemented here with no floating point anywhere:

* ``QLaurent`` -- sparse Laurent polynomials in q over arbitrary-precision
  integers;
* ``QRat`` -- the fraction field, kept in a canonical reduced form so that
  equality is plain structural comparison;
* ``CyclotomicScalar`` -- residues modulo the l-th cyclotomic polynomial,
  i.e. exact values at a primitive l-th root of unity, with rational
  coordinates in the power basis.

On top of the rings sit the q-combinatorics used by the densities:
q-integers, Gaussian binomials (with the out-of-range conventions that make
them total on Z x Z), the composition weight (a product of shifted Gaussian
binomials over adjacent parts), and the density coefficient
[a_1+...+a_n]/[a_1] * weight(a), whose integrality is re-checked by exact
division on every call.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union


class ExactDivisionError(ArithmeticError):
    """An exact polynomial division left a remainder.

    This signals a broken internal invariant (or a falsified integrality
    statement), never bad user input.
    """


class IntegralityError(ValueError):
    """A density coefficient failed to be a Laurent polynomial.

    Carries the offending composition so verification reports can show it.
    """

    def __init__(self, composition: Iterable[int]):
        self.composition = tuple(composition)
        super().__init__(
            f"density coefficient for composition {self.composition} "
            "is not a polynomial in q"
        )


TermsLike = Union[Mapping[int, int], Iterable[tuple[int, int]], None]


class QLaurent:
    """A Laurent polynomial in q with integer coefficients.

    Stored sparsely as ``{exponent: coefficient}`` with no zero
    coefficients; the zero polynomial has an empty map.  Instances are
    treated as immutable: no method mutates ``terms`` after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: TermsLike = None):
        data: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, coeff in items:
                if coeff:
                    new = data.get(exp, 0) + coeff
                    if new:
                        data[exp] = new
                    else:
                        del data[exp]
        self.terms = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "QLaurent":
        return _ZERO

    @classmethod
    def one(cls) -> "QLaurent":
        return _ONE

    @classmethod
    def const(cls, c: int) -> "QLaurent":
        return cls({0: c})

    @classmethod
    def q_power(cls, exp: int, coeff: int = 1) -> "QLaurent":
        return cls({exp: coeff})

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {0: 1}

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self.terms)

    def leading_coefficient(self) -> int:
        return self.terms[self.max_exp()]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def eval_at_one(self) -> int:
        """Value at q = 1, i.e. the sum of all integer coefficients."""
        return sum(self.terms.values())

    def content(self) -> int:
        """Nonnegative gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = _gcd_int(g, c)
            if g == 1:
                return 1
        return g

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        data = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = data.get(exp, 0) + coeff
            if new:
                data[exp] = new
            else:
                del data[exp]
        out = QLaurent.__new__(QLaurent)
        out.terms = data
        return out

    __radd__ = __add__

    def __neg__(self):
        out = QLaurent.__new__(QLaurent)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        data: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                new = data.get(e, 0) + ca * cb
                if new:
                    data[e] = new
                else:
                    del data[e]
        out = QLaurent.__new__(QLaurent)
        out.terms = data
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial need QRat")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shifted(self, k: int) -> "QLaurent":
        """Multiply by q^k."""
        if k == 0:
            return self
        out = QLaurent.__new__(QLaurent)
        out.terms = {e + k: c for e, c in self.terms.items()}
        return out

    def divexact(self, divisor: "QLaurent") -> "QLaurent":
        """Exact division; raises ExactDivisionError on any remainder.

        Valid whenever the true quotient lies in Z[q, q^-1]; intermediate
        quotient coefficients are then integers, so pure integer synthetic
        division suffices.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return _ZERO
        shift = self.min_exp() - divisor.min_exp()
        rem = {e - self.min_exp(): c for e, c in self.terms.items()}
        den = {e - divisor.min_exp(): c for e, c in divisor.terms.items()}
        dlead = max(den)
        dc = den[dlead]
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if e < dlead or c % dc:
                raise ExactDivisionError(f"{self} is not divisible by {divisor}")
            t = c // dc
            qe = e - dlead
            quot[qe] = t
            for de, dcoef in den.items():
                ne = de + qe
                new = rem.get(ne, 0) - dcoef * t
                if new:
                    rem[ne] = new
                else:
                    rem.pop(ne, None)
        out = QLaurent.__new__(QLaurent)
        out.terms = {e + shift: c for e, c in quot.items()}
        return out

    def try_divide(self, divisor: "QLaurent") -> Optional["QLaurent"]:
        try:
            return self.divexact(divisor)
        except ExactDivisionError:
            return None

    def multiplicity(self, divisor: "QLaurent") -> int:
        """Largest m with divisor^m dividing self exactly (self nonzero)."""
        if self.is_zero:
            raise ValueError("multiplicity of a factor in 0 is infinite")
        count = 0
        current = self
        while True:
            quotient = current.try_divide(divisor)
            if quotient is None:
                return count
            count += 1
            current = quotient

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- formatting / serialization ------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if abs(c) == 1 else f"{abs(c)}*{qpart}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"QLaurent({self})"

    def to_json(self) -> list[list]:
        """Sorted [exponent, coefficient-as-decimal-string] pairs."""
        return [[e, str(self.terms[e])] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, data) -> "QLaurent":
        terms = {}
        for exp, coeff in data:
            exp = int(exp)
            if exp in terms:
                raise ValueError("duplicate exponent in serialized polynomial")
            terms[exp] = int(coeff)
        return cls(terms)


def _coerce_laurent(value):
    if isinstance(value, QLaurent):
        return value
    if isinstance(value, int):
        return QLaurent({0: value}) if value else _ZERO
    return NotImplemented


_ZERO = QLaurent()
_ONE = QLaurent({0: 1})


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Polynomial gcd over the rationals (dense, small degrees), used only for
# canonicalizing QRat.  Units q^k are irrelevant to gcds and are stripped.
# ---------------------------------------------------------------------------


def _dense(p: QLaurent) -> list[Fraction]:
    base = p.min_exp()
    out = [Fraction(0)] * (p.max_exp() - base + 1)
    for e, c in p.terms.items():
        out[e - base] = Fraction(c)
    return out


def _dense_trim(v: list[Fraction]) -> list[Fraction]:
    while v and not v[-1]:
        v.pop()
    return v


def _dense_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _dense_trim(a):
        da = len(a) - 1
        if da < db:
            break
        t = a[-1] / lb
        for i, cb in enumerate(b):
            a[da - db + i] -= t * cb
        _dense_trim(a)
    return a


def poly_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """Gcd of the polynomial parts of a and b: primitive in Z[q], positive lead.

    Monomial units q^k are ignored (they are units of the Laurent ring), so
    the result always has a nonzero constant term.
    """
    if a.is_zero and b.is_zero:
        return _ZERO
    if a.is_zero or b.is_zero:
        p = b if a.is_zero else a
        prim = p.divexact(QLaurent.const(p.content() * (1 if p.leading_coefficient() > 0 else -1)))
        return prim.shifted(-prim.min_exp())
    u, v = _dense(a), _dense(b)
    while v and any(v):
        u, v = v, _dense_trim(_dense_mod(u, v))
    # clear denominators and content, force positive leading coefficient
    lcm = 1
    for c in u:
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    ints = [int(c * lcm) for c in u]
    g = 0
    for c in ints:
        g = _gcd_int(g, c)
    if ints[-1] < 0:
        g = -g
    return QLaurent({i: c // g for i, c in enumerate(ints) if c})


# ---------------------------------------------------------------------------
# QRat: the fraction field of QLaurent in canonical form.
# ---------------------------------------------------------------------------


class QRat:
    """A rational function in q, reduced to a canonical numerator/denominator.

    Canonical form: the denominator is a genuine polynomial (no negative
    exponents, nonzero constant term) with positive leading coefficient,
    coprime to the numerator, and the pair has trivial common integer
    content.  Monomial units q^k live in the numerator.  With this shape,
    equality is structural comparison of the two polynomials.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num, self.den = _ZERO, _ONE
            return
        if den.is_one:
            self.num, self.den = num, _ONE
            return
        unit = num.min_exp() - den.min_exp()
        num = num.shifted(-num.min_exp())
        den = den.shifted(-den.min_exp())
        g = poly_gcd(num, den)
        if not g.is_one:
            num = num.divexact(g)
            den = den.divexact(g)
        c = _gcd_int(num.content(), den.content())
        if den.leading_coefficient() < 0:
            c = -c
        if c != 1:
            num = num.divexact(QLaurent.const(c))
            den = den.divexact(QLaurent.const(c))
        self.num = num.shifted(unit)
        self.den = den

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "QRat":
        return _QRAT_ZERO

    @classmethod
    def one(cls) -> "QRat":
        return _QRAT_ONE

    @classmethod
    def q_power(cls, k: int, coeff: int = 1) -> "QRat":
        out = cls.__new__(cls)
        out.num = QLaurent.q_power(k, coeff)
        out.den = _ONE
        return out

    @classmethod
    def _exact(cls, num: QLaurent, den: QLaurent) -> "QRat":
        # Internal: trusted already-canonical pieces.
        out = cls.__new__(cls)
        out.num, out.den = num, den
        return out

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    @property
    def is_laurent(self) -> bool:
        """True when the canonical denominator is 1 (no true denominator)."""
        return self.den.is_one

    def as_laurent(self) -> QLaurent:
        if not self.den.is_one:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def eval_at_one(self) -> Fraction:
        """Exact value at q = 1 (raises ZeroDivisionError at a pole)."""
        return Fraction(self.num.eval_at_one(), self.den.eval_at_one())

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one and other.den.is_one:
            s = self.num + other.num
            return _QRAT_ZERO if s.is_zero else QRat._exact(s, _ONE)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat._exact(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one and other.den.is_one:
            p = self.num * other.num
            return _QRAT_ZERO if p.is_zero else QRat._exact(p, _ONE)
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return QRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return QRat(other.num * self.den, other.den * self.num)

    def inverse(self) -> "QRat":
        return QRat(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = _QRAT_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_qrat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def equivalent(self, other) -> bool:
        """Cross-multiplication equality test (must agree with ==)."""
        other = _coerce_qrat(other)
        return self.num * other.den == other.num * self.den

    # -- formatting / serialization -------------------------------------------

    def __str__(self):
        if self.den.is_one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"QRat({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "QRat":
        return cls(QLaurent.from_json(data["num"]), QLaurent.from_json(data["den"]))


def _as_laurent(value) -> QLaurent:
    if isinstance(value, QLaurent):
        return value
    if isinstance(value, int):
        return QLaurent.const(value) if value else _ZERO
    raise TypeError(f"cannot interpret {value!r} as a Laurent polynomial")


def _coerce_qrat(value):
    if isinstance(value, QRat):
        return value
    if isinstance(value, (int, QLaurent)):
        return QRat(value)
    return NotImplemented


_QRAT_ZERO = QRat._exact(_ZERO, _ONE)
_QRAT_ONE = QRat._exact(_ONE, _ONE)


# ---------------------------------------------------------------------------
# q-combinatorics.
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def q_integer(n: int) -> QLaurent:
    """[n] = (q^n - 1)/(q - 1) = 1 + q + ... + q^(n-1); [0] = 0."""
    if n < 0:
        raise ValueError("q-integers are defined for n >= 0")
    return QLaurent({k: 1 for k in range(n)})


@functools.lru_cache(maxsize=None)
def q_factorial(n: int) -> QLaurent:
    """[n]! = [1][2]...[n]; [0]! = 1."""
    if n < 0:
        raise ValueError("q-factorials are defined for n >= 0")
    if n == 0:
        return _ONE
    return q_factorial(n - 1) * q_integer(n)


def q_binomial(n: int, p: int) -> QLaurent:
    """Gaussian binomial coefficient, total on Z x Z.

    Conventions: 1 when p = 0; 0 when p < 0 or p > max(0, n); otherwise the
    usual [n]!/([p]![n-p]!), computed as the stepwise-exact product
    prod_k [n-p+k]/[k] so intermediate degrees stay small.
    """
    if p == 0:
        return _ONE
    if p < 0 or p > max(0, n):
        return _ZERO
    return _gauss(n, min(p, n - p))


@functools.lru_cache(maxsize=None)
def _gauss(n: int, p: int) -> QLaurent:
    # 0 <= p <= n; each step multiplies by (q^(n-p+k) - 1)/(q^k - 1), the
    # (q - 1) factors of [n-p+k]/[k] having cancelled.
    result = _ONE
    for k in range(1, p + 1):
        result = (result * QLaurent({n - p + k: 1, 0: -1})).divexact(
            QLaurent({k: 1, 0: -1})
        )
    return result


def composition_weight(a: Iterable[int]) -> QLaurent:
    """Product of shifted Gaussian binomials over adjacent parts.

    weight(a_1, ..., a_N) = prod_{i=1}^{N-1} C(a_i + a_{i+1} - 1, a_{i+1});
    the empty product (length 1) is 1.  Vanishes when an interior zero is
    followed by a nonzero part, or when any part is negative.
    """
    a = tuple(a)
    if not a:
        raise ValueError("composition weight needs at least one part")
    result = _ONE
    for left, right in zip(a, a[1:]):
        factor = q_binomial(left + right - 1, right)
        if factor.is_zero:
            return _ZERO
        result = result * factor
    return result


def density_coefficient(a: Iterable[int]) -> QLaurent:
    """[a_1+...+a_n]/[a_1] * weight(a), computed by exact division.

    The division is guaranteed exact for a_1 > 0 (the integrality statement
    this library re-verifies); a remainder raises IntegralityError with the
    offending composition attached.
    """
    a = tuple(a)
    if not a or a[0] <= 0:
        raise ValueError("density coefficients need a composition with first part > 0")
    weight = composition_weight(a)
    if weight.is_zero:
        return _ZERO
    total = sum(a)
    # [total]/[a_1] * w == w * (q^total - 1)/(q^(a_1) - 1): the (q-1)s cancel.
    try:
        return (weight * QLaurent({total: 1, 0: -1})).divexact(
            QLaurent({a[0]: 1, 0: -1})
        )
    except ExactDivisionError:
        raise IntegralityError(a) from None


def classical_binomial(n: int, p: int) -> int:
    """Ordinary binomial with the same out-of-range conventions as q_binomial."""
    if p == 0:
        return 1
    if p < 0 or p > max(0, n):
        return 0
    result = 1
    for k in range(1, p + 1):
        result = result * (n - p + k) // k
    return result


def classical_composition_weight(a: Iterable[int]) -> int:
    """q -> 1 value of composition_weight: prod C(a_i + a_{i+1} - 1, a_{i+1})."""
    a = tuple(a)
    if not a:
        raise ValueError("composition weight needs at least one part")
    result = 1
    for left, right in zip(a, a[1:]):
        result *= classical_binomial(left + right - 1, right)
        if result == 0:
            return 0
    return result


def classical_density_coefficient(a: Iterable[int]) -> Fraction:
    """(1/a_1) * prod C(a_i + a_{i+1} - 1, a_{i+1}) with exact rationals."""
    a = tuple(a)
    if not a or a[0] <= 0:
        raise ValueError("density coefficients need a composition with first part > 0")
    return Fraction(classical_composition_weight(a), a[0])


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and root-of-unity specialization.
# ---------------------------------------------------------------------------


def _mobius(n: int) -> int:
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if m > 1:
        result = -result
    return result


def _divisors(n: int) -> Iterator[int]:
    for d in range(1, n + 1):
        if n % d == 0:
            yield d


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(l: int) -> QLaurent:
    """The l-th cyclotomic polynomial, via the Mobius product of (q^d - 1) factors."""
    if l < 1:
        raise ValueError("cyclotomic polynomials are indexed by positive integers")
    numerator = _ONE
    denominators = []
    for d in _divisors(l):
        mu = _mobius(l // d)
        if mu == 1:
            numerator = numerator * QLaurent({d: 1, 0: -1})
        elif mu == -1:
            denominators.append(QLaurent({d: 1, 0: -1}))
    for den in denominators:
        numerator = numerator.divexact(den)
    return numerator


def valuation_at_root(f: Union[QRat, QLaurent, int], l: int) -> int:
    """Order of vanishing at a primitive l-th root of unity.

    Equals the multiplicity of the l-th cyclotomic polynomial in the
    numerator minus its multiplicity in the denominator (the cyclotomic
    polynomial being irreducible over the rationals).
    """
    f = _coerce_qrat(f)
    if f is NotImplemented:
        raise TypeError("valuation_at_root expects a QRat, QLaurent or int")
    if f.is_zero:
        raise ValueError("the zero function has infinite valuation")
    if l < 1:
        raise ValueError("root order must be >= 1")
    phi = cyclotomic_polynomial(l)
    return f.num.multiplicity(phi) - f.den.multiplicity(phi)


def specialize_at_root(f: Union[QRat, QLaurent, int], l: int) -> "CyclotomicScalar":
    """Exact value f(q0) at a primitive l-th root of unity q0.

    Requires valuation_at_root(f, l) >= 0; common cyclotomic factors are
    cancelled first, after which the denominator is a unit in the residue
    ring.
    """
    f = _coerce_qrat(f)
    if f is NotImplemented:
        raise TypeError("specialize_at_root expects a QRat, QLaurent or int")
    if l < 1:
        raise ValueError("root order must be >= 1")
    if f.is_zero:
        return CyclotomicScalar.from_rational(0, l)
    phi = cyclotomic_polynomial(l)
    num, den = f.num, f.den
    den_mult = den.multiplicity(phi)
    if den_mult:
        num_mult = num.multiplicity(phi)
        if num_mult < den_mult:
            raise ValueError(f"{f} has a pole at the primitive root of order {l}")
        for _ in range(den_mult):
            num = num.divexact(phi)
            den = den.divexact(phi)
    return CyclotomicScalar.from_laurent(num, l) / CyclotomicScalar.from_laurent(den, l)


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while _dense_trim(r) and len(r) - 1 >= db:
        t = r[-1] / lb
        shift = len(r) - 1 - db
        q[shift] = t
        for i, cb in enumerate(b):
            r[shift + i] -= t * cb
    return _dense_trim(q), r


def _frac_invert_mod(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    # Extended Euclid in Q[q]: returns s with s*a == 1 (mod mod).
    r0, r1 = list(mod), _dense_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _frac_divmod(r0, r1)
        s = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1 = r1, _dense_trim(r)
        s0, s1 = s1, s
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible in the residue ring")
    lead = r0[0]
    return [c / lead for c in s0]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _dense_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _dense_trim(out)


class CyclotomicScalar:
    """An element of Q[q] modulo the l-th cyclotomic polynomial.

    Coordinates are exact rationals in the power basis 1, q, ..., q^(d-1)
    where d is the degree of the cyclotomic polynomial; arithmetic reduces
    modulo it.  For l = 1 this is a one-dimensional ring, i.e. plain
    rationals.
    """

    __slots__ = ("l", "coords")

    def __init__(self, l: int, coords: Iterable[Fraction]):
        self.l = l
        degree = len(_CYCLO_DENSE(l))
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != degree - 1:
            raise ValueError(
                f"expected {degree - 1} coordinates for root order {l}, got {len(coords)}"
            )
        self.coords = coords

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, value, l: int) -> "CyclotomicScalar":
        value = Fraction(value)
        degree = len(_CYCLO_DENSE(l)) - 1
        if degree == 0:
            raise ValueError("root order must be >= 1")
        coords = [Fraction(0)] * degree
        coords[0] = value
        # l = 1 reduces constants mod q - 1, which leaves them unchanged.
        return cls(l, coords)

    @classmethod
    def from_laurent(cls, p: QLaurent, l: int) -> "CyclotomicScalar":
        mod = _CYCLO_DENSE(l)
        degree = len(mod) - 1
        if p.is_zero:
            return cls(l, [Fraction(0)] * degree)
        shift = min(0, p.min_exp())
        dense = [Fraction(0)] * (p.max_exp() - shift + 1)
        for e, c in p.terms.items():
            dense[e - shift] = Fraction(c)
        _, rem = _frac_divmod(dense, mod)
        rem += [Fraction(0)] * (degree - len(rem))
        out = cls(l, rem)
        if shift:
            out = out * _q_class_inverse(l) ** (-shift)
        return out

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def as_rational(self) -> Optional[Fraction]:
        """The value as a rational number, or None if it is irrational."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "CyclotomicScalar"):
        if self.l != other.l:
            raise ValueError("mixing residues of different root orders")

    def __add__(self, other):
        other = _coerce_cyclo(other, self.l)
        self._check(other)
        return CyclotomicScalar(self.l, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.l, [-a for a in self.coords])

    def __sub__(self, other):
        other = _coerce_cyclo(other, self.l)
        self._check(other)
        return CyclotomicScalar(self.l, [a - b for a, b in zip(self.coords, other.coords)])

    def __mul__(self, other):
        other = _coerce_cyclo(other, self.l)
        self._check(other)
        mod = _CYCLO_DENSE(self.l)
        prod = _poly_mul(list(self.coords), list(other.coords))
        _, rem = _frac_divmod(prod, mod)
        rem += [Fraction(0)] * (len(mod) - 1 - len(rem))
        return CyclotomicScalar(self.l, rem)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicScalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero residue")
        inv = _frac_invert_mod(list(self.coords), _CYCLO_DENSE(self.l))
        inv += [Fraction(0)] * (len(_CYCLO_DENSE(self.l)) - 1 - len(inv))
        return CyclotomicScalar(self.l, inv)

    def __truediv__(self, other):
        other = _coerce_cyclo(other, self.l)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicScalar.from_rational(1, self.l)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- comparison / formatting ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicScalar.from_rational(other, self.l)
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.l == other.l and self.coords == other.coords

    def __hash__(self):
        return hash((self.l, self.coords))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*q0")
            else:
                parts.append(f"{c}*q0^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"CyclotomicScalar(l={self.l}, {self})"

    def to_json(self) -> dict:
        return {"l": self.l, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> "CyclotomicScalar":
        return cls(int(data["l"]), [Fraction(c) for c in data["coords"]])


@functools.lru_cache(maxsize=None)
def _CYCLO_DENSE(l: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(l)
    out = [Fraction(0)] * (phi.max_exp() + 1)
    for e, c in phi.terms.items():
        out[e] = Fraction(c)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _q_class_inverse(l: int) -> CyclotomicScalar:
    degree = len(_CYCLO_DENSE(l)) - 1
    coords = [Fraction(0)] * degree
    if degree == 1:
        coords[0] = Fraction(1)  # q == 1 mod (q - 1)
        return CyclotomicScalar(l, coords)
    coords[1] = Fraction(1)
    return CyclotomicScalar(l, coords).inverse()


def _coerce_cyclo(value, l: int):
    if isinstance(value, CyclotomicScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicScalar.from_rational(value, l)
    raise TypeError(f"cannot interpret {value!r} as a cyclotomic residue")
