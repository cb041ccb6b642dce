"""Exact arithmetic in Q(zeta_N) in the power basis modulo Phi_N.

Subfields never get a primitive element: a subfield is the pair (N, H) with
H <= (Z/N)^x its fixing subgroup, and norms/traces are products/sums over
(cosets of) H.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

import mpmath

from .arith import euler_phi, generated_units, units


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_divide(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j, dj in enumerate(den):
                num[k - dd + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


class _Ring:
    """Per-conductor tables: Phi_N, and zeta^k reduced for 0 <= k < N."""

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        poly = cyclotomic_polynomial(n)
        # nonzero low-order terms of Phi_N (monic, so the top term is 1)
        self.low = tuple((j, c) for j, c in enumerate(poly[:-1]) if c)
        powers = []
        vec = [0] * self.phi
        vec[0] = 1
        for _ in range(n):
            powers.append(tuple((j, c) for j, c in enumerate(vec) if c))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j, c in self.low:
                    vec[j] -= top * c
        self.powers = tuple(powers)

    def reduce(self, coeffs: list[int]) -> list[int]:
        phi = self.phi
        for k in range(len(coeffs) - 1, phi - 1, -1):
            c = coeffs[k]
            if c:
                base = k - phi
                for j, pj in self.low:
                    coeffs[base + j] -= c * pj
        del coeffs[phi:]
        return coeffs


@lru_cache(maxsize=None)
def _ring(n: int) -> _Ring:
    return _Ring(n)


class CycloNumber:
    """Element sum_j (num[j]/den) zeta_N^j with 0 <= j < phi(N).

    The representation is canonical: den > 0 and gcd(den, *num) == 1, so
    equality and hashing are exact.
    """

    __slots__ = ("conductor", "num", "den")

    def __init__(self, conductor: int, num, den: int = 1):
        ring = _ring(conductor)
        num = list(num)
        if len(num) > ring.phi:
            num = ring.reduce(num)
        elif len(num) < ring.phi:
            num = num + [0] * (ring.phi - len(num))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = reduce(gcd, num, den)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self.conductor = conductor
        self.num = tuple(num)
        self.den = den

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, n: int, q) -> CycloNumber:
        q = Fraction(q)
        return cls(n, [q.numerator], q.denominator)

    @classmethod
    def zero(cls, n: int) -> CycloNumber:
        return cls(n, [], 1)

    @classmethod
    def one(cls, n: int) -> CycloNumber:
        return cls(n, [1], 1)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycloNumber:
        """zeta_n^k, reduced."""
        ring = _ring(n)
        vec = [0] * ring.phi
        for j, c in ring.powers[k % n]:
            vec[j] = c
        return cls(n, vec, 1)

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> CycloNumber:
        """From rational coefficients in the power basis (any length)."""
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(n, [int(c * den) for c in coeffs], den)

    # -- accessors -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> CycloNumber:
        if isinstance(other, CycloNumber):
            if other.conductor != self.conductor:
                raise ValueError(
                    f"conductor mismatch: {self.conductor} vs {other.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CycloNumber(self.conductor, [a + b for a, b in zip(self.num, other.num)], d1)
        return CycloNumber(
            self.conductor,
            [a * d2 + b * d1 for a, b in zip(self.num, other.num)],
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = [(i, c) for i, c in enumerate(self.num) if c]
        b = [(j, c) for j, c in enumerate(other.num) if c]
        if not a or not b:
            return CycloNumber.zero(self.conductor)
        out = [0] * (a[-1][0] + b[-1][0] + 1)
        for i, ci in a:
            for j, cj in b:
                out[i + j] += ci * cj
        return CycloNumber(self.conductor, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> CycloNumber:
        """x^-1 = (product of the other conjugates) / N(x)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNumber.from_rational(self.conductor, 1 / self.rational())
        others = CycloNumber.one(self.conductor)
        for s in units(self.conductor):
            if s != 1:
                others = others * self.galois(s)
        norm = (others * self).rational()
        return others * (1 / norm)

    def galois(self, s: int) -> CycloNumber:
        """Image under zeta_N -> zeta_N^s."""
        n = self.conductor
        if gcd(s, n) != 1:
            raise ValueError(f"{s} is not a unit mod {n}")
        ring = _ring(n)
        out = [0] * ring.phi
        for j, c in enumerate(self.num):
            if c:
                for k, v in ring.powers[s * j % n]:
                    out[k] += c * v
        return CycloNumber(n, out, self.den)

    def conj(self) -> CycloNumber:
        return self.galois(-1)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(self.conductor, other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return (
            self.conductor == other.conductor
            and self.den == other.den
            and self.num == other.num
        )

    def __hash__(self):
        return hash((self.conductor, self.num, self.den))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{j}" if j else str(c))
        return f"CycloNumber({self.conductor}: {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> CycloNumber:
        return cls.from_coeffs(data["conductor"], [Fraction(c) for c in data["coeffs"]])


@dataclass(frozen=True)
class GaloisElement:
    """[s]: zeta_N -> zeta_N^s."""

    conductor: int
    exponent: int

    def __post_init__(self):
        s = self.exponent % self.conductor
        if gcd(s, self.conductor) != 1:
            raise ValueError(f"{self.exponent} is not a unit mod {self.conductor}")
        object.__setattr__(self, "exponent", s)

    def __call__(self, x: CycloNumber) -> CycloNumber:
        return galois_apply(self, x)

    def __mul__(self, other: GaloisElement) -> GaloisElement:
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch")
        return GaloisElement(self.conductor, self.exponent * other.exponent)

    def __pow__(self, k: int) -> GaloisElement:
        return GaloisElement(self.conductor, pow(self.exponent, k, self.conductor))


def galois_apply(g: GaloisElement, x: CycloNumber) -> CycloNumber:
    if g.conductor != x.conductor:
        raise ValueError(f"conductor mismatch: {g.conductor} vs {x.conductor}")
    return x.galois(g.exponent)


@dataclass(frozen=True)
class SubfieldDatum:
    """The subfield of Q(zeta_N) fixed by the subgroup H of (Z/N)^x."""

    conductor: int
    fixing: frozenset

    @classmethod
    def from_gens(cls, n: int, gens) -> SubfieldDatum:
        return cls(n, generated_units(n, gens))

    @classmethod
    def whole(cls, n: int) -> SubfieldDatum:
        return cls(n, frozenset({1 % n}))

    @property
    def degree(self) -> int:
        return euler_phi(self.conductor) // len(self.fixing)

    def contains(self, x: CycloNumber) -> bool:
        return all(x.galois(h) == x for h in self.fixing)

    def coset_reps(self, over: SubfieldDatum) -> list[int]:
        """Representatives of over.fixing / self.fixing, i.e. the embeddings
        of this field over the smaller field `over`."""
        if not self.fixing <= over.fixing:
            raise ValueError("not a subfield relation")
        n = self.conductor
        seen: set[int] = set()
        reps = []
        for h in sorted(over.fixing):
            if h in seen:
                continue
            reps.append(h)
            seen.update(h * k % n for k in self.fixing)
        return reps

    def embeddings(self) -> list[int]:
        """One exponent s per complex embedding of the fixed field."""
        n = self.conductor
        seen: set[int] = set()
        reps = []
        for s in units(n):
            if s in seen:
                continue
            reps.append(s)
            seen.update(s * h % n for h in self.fixing)
        return reps


def rel_norm(x: CycloNumber, sub: SubfieldDatum) -> CycloNumber:
    """Product of x over the fixing group of sub."""
    result = CycloNumber.one(x.conductor)
    for h in sorted(sub.fixing):
        result = result * x.galois(h)
    return result


def rel_trace(x: CycloNumber, sub: SubfieldDatum) -> CycloNumber:
    result = CycloNumber.zero(x.conductor)
    for h in sorted(sub.fixing):
        result = result + x.galois(h)
    return result


def relative_norm(x: CycloNumber, top: SubfieldDatum, bottom: SubfieldDatum) -> CycloNumber:
    """N_{top/bottom}(x) for x in the field `top`."""
    result = CycloNumber.one(x.conductor)
    for h in top.coset_reps(bottom):
        result = result * x.galois(h)
    return result


def relative_trace(x: CycloNumber, top: SubfieldDatum, bottom: SubfieldDatum) -> CycloNumber:
    result = CycloNumber.zero(x.conductor)
    for h in top.coset_reps(bottom):
        result = result + x.galois(h)
    return result


# -- numerics -------------------------------------------------------------

DEFAULT_DPS = 50


@contextmanager
def _iv_dps(dps: int):
    # the interval context has no workdps of its own
    iv = mpmath.iv
    saved = iv.prec
    iv.dps = dps
    try:
        yield iv
    finally:
        iv.prec = saved


@dataclass(frozen=True)
class ComplexBall:
    """Rectangle [re_lo, re_hi] + i[im_lo, im_hi] certified to contain the
    true value (endpoints are mpmath mpf)."""

    re_lo: object
    re_hi: object
    im_lo: object
    im_hi: object

    @classmethod
    def from_intervals(cls, re, im) -> ComplexBall:
        mpf = mpmath.mpf
        return cls(mpf(re.a), mpf(re.b), mpf(im.a), mpf(im.b))

    def mid(self) -> complex:
        return complex(float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2))

    def radius(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo) / 2

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return (
            self.re_lo - slack <= z.real <= self.re_hi + slack
            and self.im_lo - slack <= z.imag <= self.im_hi + slack
        )

    def real_positive(self) -> bool:
        return self.re_lo > 0

    def real_excludes_zero(self) -> bool:
        return self.re_lo > 0 or self.re_hi < 0

    def to_json(self, digits: int = 30) -> dict:
        return {
            "re": mpmath.nstr((self.re_lo + self.re_hi) / 2, digits),
            "im": mpmath.nstr((self.im_lo + self.im_hi) / 2, digits),
            "radius": mpmath.nstr(self.radius(), 5),
        }


@lru_cache(maxsize=256)
def _root_powers(n: int, s: int, dps: int):
    iv = mpmath.iv
    with _iv_dps(dps):
        out = []
        for j in range(euler_phi(n)):
            theta = 2 * iv.pi * iv.mpf(s * j % n) / n
            out.append((iv.cos(theta), iv.sin(theta)))
    return tuple(out)


def complex_embed(x: CycloNumber, s: int = 1, dps: int = DEFAULT_DPS) -> ComplexBall:
    """Evaluate x at zeta_N = exp(2*pi*i*s/N) in interval arithmetic."""
    n = x.conductor
    if gcd(s, n) != 1:
        raise ValueError(f"{s} is not a unit mod {n}")
    iv = mpmath.iv
    work = dps + 10
    roots = _root_powers(n, s % n, work)
    with _iv_dps(work):
        re = iv.mpf(0)
        im = iv.mpf(0)
        for c, (cr, ci) in zip(x.num, roots):
            if c:
                re += c * cr
                im += c * ci
        re /= x.den
        im /= x.den
    return ComplexBall.from_intervals(re, im)
