"""Integer kernel: Euler phi, multiplicative orders, CRT, unit-group cosets.

Everything here works on Python ints, so there is no overflow anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


@dataclass(frozen=True, order=True)
class RationalModOne:
    """An element of Q/Z, kept as a reduced fraction in [0, 1)."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        num = self.numerator % self.denominator
        g = gcd(num, self.denominator)
        den = self.denominator // g
        object.__setattr__(self, "numerator", num // g)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> RationalModOne:
        q = Fraction(q)
        return cls(q.numerator, q.denominator)

    def __add__(self, other: RationalModOne) -> RationalModOne:
        if not isinstance(other, RationalModOne):
            return NotImplemented
        return RationalModOne.from_fraction(self.as_fraction() + other.as_fraction())

    def __neg__(self) -> RationalModOne:
        return RationalModOne(-self.numerator, self.denominator)

    def __sub__(self, other: RationalModOne) -> RationalModOne:
        return self + (-other)

    def __mul__(self, k: int) -> RationalModOne:
        if not isinstance(k, int):
            return NotImplemented
        return RationalModOne(k * self.numerator, self.denominator)

    __rmul__ = __mul__

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


# -- factorization --------------------------------------------------------

_TRIAL_LIMIT = 10**6


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with these bases."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as ((prime, exponent), ...) in increasing order.

    Trial division up to 10**6; a leftover cofactor is accepted as prime if it
    passes Miller-Rabin, otherwise ValueError (out of desk scale).
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for q in (2, 3):
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if e:
            out.append((q, e))
    q = 5
    step = 2
    while q * q <= n and q <= _TRIAL_LIMIT:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += step
        step = 6 - step
    if n > 1:
        if q * q > n or is_probable_prime(n):
            out.append((n, 1))
        else:
            raise ValueError("composite cofactor beyond trial-division range")
    return tuple(out)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for q, _ in factorize(n):
        result = result // q * (q - 1)
    return result


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, isqrt(bound) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(sieve[q * q :: q]))
    return [q for q in range(bound + 1) if sieve[q]]


# -- unit groups ----------------------------------------------------------


def mult_order(a: int, n: int) -> int:
    """Smallest k >= 1 with a**k == 1 (mod n)."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    k = euler_phi(n)
    for q, _ in factorize(k):
        while k % q == 0 and pow(a, k // q, n) == 1:
            k //= q
    return k


def inverse_mod(a: int, n: int) -> int:
    return pow(a, -1, n)


def crt_solve(congruences) -> int:
    """Minimal non-negative x with x = r_i mod n_i for pairwise coprime n_i."""
    x, mod = 0, 1
    for r, n in congruences:
        if n < 1:
            raise ValueError("moduli must be positive")
        if gcd(mod, n) != 1:
            raise ValueError(f"moduli {mod} and {n} are not coprime")
        # x + mod*k = r (mod n)
        k = (r - x) * pow(mod, -1, n) % n if n > 1 else 0
        x += mod * k
        mod *= n
        x %= mod
    return x


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [k for k in range(1, n) if gcd(k, n) == 1]


def generated_units(n: int, gens) -> frozenset[int]:
    """The subgroup of (Z/n)^x generated by gens."""
    one = 1 % n
    gens = [g % n for g in gens]
    for g in gens:
        if gcd(g, n) != 1:
            raise ValueError(f"{g} is not a unit mod {n}")
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % n
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroup_cosets(n: int, gens) -> tuple[frozenset[int], list[int]]:
    """Subgroup <gens> of (Z/n)^x and the minimal positive representative of
    each coset, sorted (so 1 always labels the identity coset)."""
    sub = generated_units(n, gens)
    if n <= 2:
        return sub, [1]
    covered: set[int] = set()
    reps = []
    for u in units(n):
        if u in covered:
            continue
        reps.append(u)
        covered.update(u * h % n for h in sub)
    return sub, reps


@dataclass(frozen=True)
class UnitGroupData:
    modulus: int
    elements: tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> UnitGroupData:
        return cls(n, tuple(units(n)))

    def cyclic_subgroup(self, g: int) -> list[int]:
        """Powers of g in order, starting from 1."""
        out = [1 % self.modulus]
        x = g % self.modulus
        while x != out[0]:
            out.append(x)
            x = x * g % self.modulus
        return out

    def generator_table(self) -> dict[int, list[int]]:
        return {g: self.cyclic_subgroup(g) for g in self.elements}


def elements_of_order(n: int, k: int) -> list[int]:
    return [u for u in units(n) if mult_order(u, n) == k]


def teichmuller(x: int, p: int, e: int) -> int:
    """Residue mod p**e of the Teichmuller lift of x mod p."""
    if x % p == 0:
        raise ValueError("Teichmuller lift needs a unit")
    mod = p**e
    return pow(x, p ** (e - 1), mod)


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^x for a prime p."""
    if p == 2:
        return 1
    for g in range(2, p):
        if mult_order(g, p) == p - 1:
            return g
    raise ValueError(f"no primitive root mod {p}")


def subgroup_generators(n: int, subgroup) -> list[int]:
    """A small generating set of a subgroup of (Z/n)^x, chosen greedily from
    its largest-order elements."""
    subgroup = frozenset(s % n for s in subgroup)
    gens: list[int] = []
    span = generated_units(n, gens)
    if n == 1:
        return gens
    for s in sorted(subgroup, key=lambda s: (-mult_order(s, n), s)):
        if span == subgroup:
            break
        if s not in span:
            gens.append(s)
            span = generated_units(n, gens)
    if span != subgroup:
        raise ValueError("not a subgroup")
    return gens
