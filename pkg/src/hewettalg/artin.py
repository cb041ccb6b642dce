"""Local conventions: unramified invariants, the action of units on p-power
roots of unity, Hilbert symbols and norm classes of quadratic extensions,
and norm preimages among roots of unity in unramified extensions.

Normalization: uniformizers go to Frobenius; a unit u acts on p-power roots
of unity by zeta -> zeta^(u^-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .arith import RationalModOne, factorize, is_prime


@dataclass(frozen=True)
class LocalPlace:
    """A finite prime, or the archimedean place when prime is None."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


INF = LocalPlace(None)


def place(tag) -> LocalPlace:
    if isinstance(tag, LocalPlace):
        return tag
    if tag is None or tag == "inf":
        return INF
    return LocalPlace(int(tag))


def unramified_invariant(valuation: int, n: int) -> RationalModOne:
    """Invariant of the cyclic algebra (M/K, Frobenius, a) with v(a) = valuation
    and M/K unramified of degree n."""
    if n < 1:
        raise ValueError("degree must be positive")
    return RationalModOne(valuation, n)


def cyclotomic_artin_exponent(u: int, p: int, alpha: int) -> int:
    """Exponent s with Art(u)(zeta) = zeta^s on p^alpha-th roots of unity."""
    mod = p**alpha
    if u % p == 0:
        raise ValueError(f"{u} is not a unit at {p}")
    return pow(u, -1, mod)


# -- Hilbert symbols --------------------------------------------------------


def valuation(x: int, ell: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


def _split(x: int, ell: int) -> tuple[int, int]:
    v = valuation(x, ell)
    return v, x // ell**v


def _legendre(u: int, ell: int) -> int:
    r = pow(u % ell, (ell - 1) // 2, ell)
    return -1 if r == ell - 1 else r


def _as_integer(q) -> int:
    # q = n/d is n*d times the square 1/d^2
    q = Fraction(q)
    if q == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    return q.numerator * q.denominator


def hilbert_symbol(a, b, v) -> int:
    """(a, b)_v for nonzero rationals a, b."""
    a, b = _as_integer(a), _as_integer(b)
    v = place(v)
    if v.is_archimedean:
        return -1 if a < 0 and b < 0 else 1
    ell = v.prime
    al, u = _split(a, ell)
    be, w = _split(b, ell)
    if ell == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omg = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + al * omg(w) + be * omg(u)
        return -1 if e % 2 else 1
    e = (al * be * ((ell - 1) // 2)) % 2
    sign = -1 if e else 1
    if be % 2:
        sign *= _legendre(u, ell)
    if al % 2:
        sign *= _legendre(w, ell)
    return sign


def is_local_square(x, v) -> bool:
    x = _as_integer(x)
    v = place(v)
    if v.is_archimedean:
        return x > 0
    ell = v.prime
    k, u = _split(x, ell)
    if k % 2:
        return False
    if ell == 2:
        return u % 8 == 1
    return _legendre(u, ell) == 1


def relevant_places(*xs) -> list[LocalPlace]:
    """The archimedean place and every prime dividing 2 * prod(xs)."""
    primes = {2}
    for x in xs:
        x = abs(_as_integer(x))
        primes.update(q for q, _ in factorize(x))
    return [INF] + [LocalPlace(q) for q in sorted(primes)]


# -- norm classes -------------------------------------------------------------


class NormClass(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


def squarefree_part(d: int) -> int:
    if d == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if d < 0 else 1
    out = 1
    for q, e in factorize(abs(d)):
        if e % 2:
            out *= q
    return sign * out


@dataclass(frozen=True)
class NormClassGroupDatum:
    """Q_ell^x modulo norms from Q_ell(sqrt d)."""

    place: LocalPlace
    d: int

    def __post_init__(self):
        if self.d == 0 or squarefree_part(self.d) != self.d:
            raise ValueError(f"{self.d} is not squarefree")

    @property
    def split(self) -> bool:
        return is_local_square(self.d, self.place)

    @property
    def order(self) -> int:
        return 1 if self.split else 2

    def ramified(self) -> bool:
        if self.place.is_archimedean:
            return self.d < 0
        ell = self.place.prime
        if ell == 2:
            return self.d % 4 != 1
        return self.d % ell == 0


def norm_class(x, datum: NormClassGroupDatum) -> NormClass:
    if hilbert_symbol(x, datum.d, datum.place) == 1:
        return NormClass.TRIVIAL
    return NormClass.NONTRIVIAL


# -- roots of unity in unramified extensions ---------------------------------


def norm_exponent(e: int, ell: int, t: int, d: int) -> int:
    """Exponent of N(zeta^e) = prod_i Frob^i(zeta^e), zeta generating the roots
    of unity of order prime to ell in the degree-d unramified extension of
    the field with residue field of size ell^t."""
    q = ell**t
    big = q**d - 1
    return sum(e * pow(q, i, big) for i in range(d)) % big


def unit_norm_preimage(ell: int, t: int, d: int, omega_exp: int) -> int:
    """Exponent e (mod ell^(dt) - 1) with N(zeta^e) = omega, where
    omega = (zeta^Q)^omega_exp, Q = (q^d - 1)/(q - 1) and zeta^Q generates the
    roots of unity of the base.

    N(zeta^e) = zeta^(eQ), so e = omega_exp mod (q - 1) works; the minimal
    non-negative representative is returned.
    """
    if ell < 2 or t < 1 or d < 1:
        raise ValueError("need a prime ell and t, d >= 1")
    q = ell**t
    return omega_exp % (q - 1)


def norm_preimage_holds(e: int, ell: int, t: int, d: int, omega_exp: int) -> bool:
    """Check N(zeta^e) = (zeta^Q)^omega_exp through the Frobenius sum."""
    q = ell**t
    big = q**d - 1
    Q = big // (q - 1)
    return norm_exponent(e, ell, t, d) == (Q * omega_exp) % big
