"""Cyclic crossed products B = M<S>/(S^n = a, S x = sigma(x) S).

M/K is a cyclic subextension of Q(zeta_N) described by fixing subgroups
H_M <= H_K, and sigma generates H_K/H_M. The multiplication is twisted by the
cocycle phi(i, j) = chi(i) + chi(j) - chi(i + j) with chi(sigma^i) = i/n.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arith import generated_units, subgroup_generators
from .cyclotomic import CycloNumber, SubfieldDatum, rel_trace


class ZeroDivisorError(ZeroDivisionError):
    """Raised when an element of a crossed product has no inverse."""


@dataclass(frozen=True)
class CyclicGaloisDatum:
    conductor: int
    base_fixing: frozenset  # H_K
    top_fixing: frozenset  # H_M
    sigma: int

    def __post_init__(self):
        N = self.conductor
        if not self.top_fixing <= self.base_fixing:
            raise ValueError("H_M must lie inside H_K")
        if self.sigma % N not in self.base_fixing:
            raise ValueError(f"sigma = {self.sigma} does not fix K")
        n = len(self.base_fixing) // len(self.top_fixing)
        # sigma must have order exactly n modulo H_M
        x, k = self.sigma % N, 1
        while x not in self.top_fixing:
            x = x * self.sigma % N
            k += 1
        if k != n:
            raise ValueError(
                f"sigma = {self.sigma} has order {k} in H_K/H_M, which has order {n}"
            )

    @classmethod
    def build(cls, N: int, base_gens, top_gens, sigma: int) -> CyclicGaloisDatum:
        return cls(N, generated_units(N, base_gens), generated_units(N, top_gens), sigma % N)

    @property
    def degree(self) -> int:
        """n = [M:K]."""
        return len(self.base_fixing) // len(self.top_fixing)

    @property
    def K(self) -> SubfieldDatum:
        return SubfieldDatum(self.conductor, self.base_fixing)

    @property
    def M(self) -> SubfieldDatum:
        return SubfieldDatum(self.conductor, self.top_fixing)

    @cached_property
    def sigma_powers(self) -> tuple[int, ...]:
        return tuple(pow(self.sigma, i, self.conductor) for i in range(self.degree))

    def chi(self, i: int) -> Fraction:
        """Lift of the character to [0, 1): sigma^i -> (i mod n)/n."""
        return Fraction(i % self.degree, self.degree)

    def act(self, i: int, x: CycloNumber) -> CycloNumber:
        """sigma^i(x)."""
        return x.galois(self.sigma_powers[i % self.degree])

    def in_M(self, x: CycloNumber) -> bool:
        return self.M.contains(x)

    def project_to_M(self, x: CycloNumber) -> CycloNumber:
        """Trace down to M (rescaled so elements of M are fixed)."""
        if len(self.top_fixing) == 1:
            return x
        return rel_trace(x, self.M) * Fraction(1, len(self.top_fixing))


def cocycle_phi(i: int, j: int, datum: CyclicGaloisDatum) -> int:
    """phi(sigma^i, sigma^j) = chi(sigma^j) - chi(sigma^(i+j)) + chi(sigma^i)."""
    value = datum.chi(j) - datum.chi(i + j) + datum.chi(i)
    assert value.denominator == 1
    return int(value)


class CrossedProductAlgebra:
    def __init__(self, datum: CyclicGaloisDatum, a: CycloNumber):
        if a.conductor != datum.conductor:
            raise ValueError("a has the wrong conductor")
        if a.is_zero():
            raise ValueError("a must be nonzero")
        if not datum.K.contains(a):
            raise ValueError("a does not lie in the base field K")
        self.datum = datum
        self.a = a
        self.n = datum.degree
        self.conductor = datum.conductor

    def __eq__(self, other):
        if not isinstance(other, CrossedProductAlgebra):
            return NotImplemented
        return self is other or (self.datum == other.datum and self.a == other.a)

    def __hash__(self):
        return hash((self.datum, self.a))

    # -- elements --------------------------------------------------------

    def element(self, coeffs) -> CrossedElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"need {self.n} coefficients")
        return CrossedElement(self, coeffs)

    def zero(self) -> CrossedElement:
        z = CycloNumber.zero(self.conductor)
        return CrossedElement(self, (z,) * self.n)

    def scalar(self, x) -> CrossedElement:
        """x * S^0 for x in M (or a rational)."""
        if not isinstance(x, CycloNumber):
            x = CycloNumber.from_rational(self.conductor, x)
        return self.monomial(x, 0)

    def one(self) -> CrossedElement:
        return self.scalar(1)

    def S(self) -> CrossedElement:
        return self.monomial(CycloNumber.one(self.conductor), 1)

    def monomial(self, x: CycloNumber, i: int) -> CrossedElement:
        """x * S^i for 0 <= i < n."""
        if not 0 <= i < self.n:
            raise ValueError("S-exponent out of range")
        z = CycloNumber.zero(self.conductor)
        coeffs = [z] * self.n
        coeffs[i] = x
        return CrossedElement(self, tuple(coeffs))

    def random_element(self, rng: random.Random, bound: int = 3, density: float = 1.0) -> CrossedElement:
        """Coefficients with small random integer entries, projected into M."""
        N = self.conductor
        phi = len(CycloNumber.zero(N).num)
        coeffs = []
        for _ in range(self.n):
            if rng.random() < density:
                raw = CycloNumber(N, [rng.randint(-bound, bound) for _ in range(phi)])
                coeffs.append(self.datum.project_to_M(raw))
            else:
                coeffs.append(CycloNumber.zero(N))
        return CrossedElement(self, tuple(coeffs))

    # -- arithmetic ------------------------------------------------------

    def multiply(self, x: CrossedElement, y: CrossedElement) -> CrossedElement:
        return multiply(x, y, self)

    def power(self, x: CrossedElement, k: int) -> CrossedElement:
        if k < 0:
            return self.power(self.inverse(x), -k)
        result = self.one()
        base = x
        while k:
            if k & 1:
                result = multiply(result, base, self)
            k >>= 1
            if k:
                base = multiply(base, base, self)
        return result

    def inverse(self, y: CrossedElement) -> CrossedElement:
        """Solve coeffs(z) from regular_rep(y) coeffs(z) = coeffs(1), so z y = 1;
        a left inverse is two-sided in a finite-dimensional algebra."""
        R = regular_rep(y, self)
        rhs = [CycloNumber.one(self.conductor)] + [CycloNumber.zero(self.conductor)] * (self.n - 1)
        return CrossedElement(self, tuple(_solve(R, rhs)))

    def is_zero_divisor(self, y: CrossedElement) -> bool:
        try:
            self.inverse(y)
        except ZeroDivisorError:
            return True
        return False

    def to_json(self) -> dict:
        d = self.datum
        return {
            "conductor": d.conductor,
            "H_K": subgroup_generators(d.conductor, d.base_fixing),
            "H_M": subgroup_generators(d.conductor, d.top_fixing),
            "sigma": d.sigma,
            "a": self.a.to_json(),
        }


class CrossedElement:
    """sum_i coeffs[i] S^i."""

    __slots__ = ("algebra", "coeffs", "_hash")

    def __init__(self, algebra: CrossedProductAlgebra, coeffs: tuple):
        self.algebra = algebra
        self.coeffs = coeffs
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            self.algebra is other.algebra or self.algebra == other.algebra
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other: CrossedElement) -> CrossedElement:
        _same(self, other)
        return CrossedElement(self.algebra, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CrossedElement) -> CrossedElement:
        _same(self, other)
        return CrossedElement(self.algebra, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CrossedElement:
        return CrossedElement(self.algebra, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return multiply(self, other, self.algebra)
        # scalar on the right: (sum x_i S^i) q = sum x_i sigma^i(q) S^i
        if isinstance(other, CycloNumber):
            return multiply(self, self.algebra.scalar(other), self.algebra)
        return CrossedElement(self.algebra, tuple(x * other for x in self.coeffs))

    def __rmul__(self, other):
        if isinstance(other, CycloNumber):
            return multiply(self.algebra.scalar(other), self, self.algebra)
        return CrossedElement(self.algebra, tuple(other * x for x in self.coeffs))

    def __pow__(self, k: int) -> CrossedElement:
        return self.algebra.power(self, k)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coeffs)

    def __repr__(self):
        parts = [f"({x!r})S^{i}" for i, x in enumerate(self.coeffs) if not x.is_zero()]
        return " + ".join(parts) or "0"

    def to_json(self) -> list:
        return [x.to_json() for x in self.coeffs]


def _same(x: CrossedElement, y: CrossedElement):
    if not (x.algebra is y.algebra or x.algebra == y.algebra):
        raise ValueError("elements of different algebras")


def multiply(x: CrossedElement, y: CrossedElement, B: CrossedProductAlgebra) -> CrossedElement:
    """(x_i S^i)(y_j S^j) = x_i sigma^i(y_j) a^phi(i,j) S^(i+j mod n)."""
    if not (x.algebra is B or x.algebra == B) or not (y.algebra is B or y.algebra == B):
        raise ValueError("elements do not belong to this algebra")
    n, datum = B.n, B.datum
    out = [CycloNumber.zero(B.conductor)] * n
    xs = [(i, c) for i, c in enumerate(x.coeffs) if not c.is_zero()]
    ys = [(j, c) for j, c in enumerate(y.coeffs) if not c.is_zero()]
    for i, xi in xs:
        for j, yj in ys:
            term = xi * datum.act(i, yj)
            if cocycle_phi(i, j, datum):
                term = term * B.a
            k = (i + j) % n
            out[k] = out[k] + term
    return CrossedElement(B, tuple(out))


# -- the extension group E_a ----------------------------------------------


@dataclass(frozen=True)
class ExtensionElement:
    """The pair (x, sigma^g) with x in M^x."""

    x: CycloNumber
    g: int

    def as_crossed(self, B: CrossedProductAlgebra) -> CrossedElement:
        return B.monomial(self.x, self.g % B.n)


def extension_multiply(e1: ExtensionElement, e2: ExtensionElement, B: CrossedProductAlgebra) -> ExtensionElement:
    n = B.n
    x = e1.x * B.datum.act(e1.g, e2.x)
    if cocycle_phi(e1.g % n, e2.g % n, B.datum):
        x = x * B.a
    return ExtensionElement(x, (e1.g + e2.g) % n)


def extension_identity(B: CrossedProductAlgebra) -> ExtensionElement:
    return ExtensionElement(CycloNumber.one(B.conductor), 0)


def extension_power(e: ExtensionElement, k: int, B: CrossedProductAlgebra) -> ExtensionElement:
    result = extension_identity(B)
    for _ in range(k):
        result = extension_multiply(result, e, B)
    return result


# -- regular representation -------------------------------------------------


def regular_rep(y: CrossedElement, B: CrossedProductAlgebra) -> list[list[CycloNumber]]:
    """Matrix R of z -> z y in the basis {S^i}: R coeffs(z) = coeffs(z y).

    R[k][i] = sigma^i(y_(k-i mod n)), times a when the index wraps (k < i).
    """
    n, datum = B.n, B.datum
    R = []
    for k in range(n):
        row = []
        for i in range(n):
            entry = datum.act(i, y.coeffs[(k - i) % n])
            if k < i and not entry.is_zero():
                entry = entry * B.a
            row.append(entry)
        R.append(row)
    return R


def matrix_trace(R) -> CycloNumber:
    total = R[0][0]
    for k in range(1, len(R)):
        total = total + R[k][k]
    return total


def matmul(A, B) -> list[list[CycloNumber]]:
    n, m, r = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = None
            for k in range(m):
                if A[i][k].is_zero() or B[k][j].is_zero():
                    continue
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else CycloNumber.zero(A[0][0].conductor))
        out.append(row)
    return out


def matvec(A, v) -> list[CycloNumber]:
    return [row[0] for row in matmul(A, [[x] for x in v])]


def _solve(A, b) -> list[CycloNumber]:
    """Gaussian elimination over the field; ZeroDivisorError if singular."""
    n = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisorError("regular representation is singular: zero divisor")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


# -- matrix induction -------------------------------------------------------


class InducedAlgebra:
    """M^k <S> / (S^(nk) = (a, ..., a), S x = sigma'(x) S) with the twisted
    shift sigma'(m_1, ..., m_k) = (m_2, ..., m_k, sigma(m_1)).

    Elements are tuples of length nk whose entries are k-tuples over M.
    """

    def __init__(self, base: CrossedProductAlgebra, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.base = base
        self.k = k
        self.n = base.n * k
        zero = CycloNumber.zero(base.conductor)
        self._zero_tuple = (zero,) * k
        self.a = (base.a,) * k

    def shift(self, x: tuple, times: int = 1) -> tuple:
        """sigma'^times applied to a k-tuple."""
        act = self.base.datum.act
        for _ in range(times % self.n):
            x = x[1:] + (act(1, x[0]),)
        return x

    def element(self, coeffs) -> tuple:
        coeffs = tuple(tuple(c) for c in coeffs)
        if len(coeffs) != self.n or any(len(c) != self.k for c in coeffs):
            raise ValueError("bad shape")
        return coeffs

    def monomial(self, x: tuple, i: int) -> tuple:
        out = [self._zero_tuple] * self.n
        out[i] = tuple(x)
        return tuple(out)

    def one(self) -> tuple:
        return self.monomial((CycloNumber.one(self.base.conductor),) * self.k, 0)

    def S(self) -> tuple:
        return self.monomial((CycloNumber.one(self.base.conductor),) * self.k, 1)

    def multiply(self, x: tuple, y: tuple) -> tuple:
        n = self.n
        out = [self._zero_tuple] * n
        for i, xi in enumerate(x):
            if all(c.is_zero() for c in xi):
                continue
            for j, yj in enumerate(y):
                if all(c.is_zero() for c in yj):
                    continue
                term = tuple(u * v for u, v in zip(xi, self.shift(yj, i)))
                if i + j >= n:
                    term = tuple(u * v for u, v in zip(term, self.a))
                k = (i + j) % n
                out[k] = tuple(u + v for u, v in zip(out[k], term))
        return tuple(out)

    def power(self, x: tuple, e: int) -> tuple:
        result = self.one()
        for _ in range(e):
            result = self.multiply(result, x)
        return result

    def dimension_over_K(self) -> int:
        return self.k * self.base.n * self.n


@dataclass
class InductionReport:
    algebra: InducedAlgebra
    shift_order: int
    s_power_ok: bool
    dimension: int


def matrix_induction(B: CrossedProductAlgebra, k: int) -> InductionReport:
    """Build the induced presentation of M_k(B) and check S^(nk) = (a, ..., a)
    by direct multiplication."""
    A = InducedAlgebra(B, k)
    S_nk = A.power(A.S(), A.n)
    s_ok = S_nk == A.monomial(A.a, 0)
    # the twisted shift has order exactly nk on M^k
    probe = tuple(CycloNumber.zeta(B.conductor, 1 + idx) for idx in range(k))
    probe = tuple(B.datum.project_to_M(c) for c in probe)
    x, order = A.shift(probe), 1
    while x != probe and order <= A.n:
        x = A.shift(x)
        order += 1
    return InductionReport(A, order, s_ok, A.dimension_over_K())
