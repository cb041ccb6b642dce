"""The involution x -> x-bar on M, T -> omega^-1 T^(p-2) on D', its
positivity and unitarity checks, and the hermitian-form bookkeeping:
discriminants, Witt indices, an explicit relative norm, and a formal
block-matrix model of the twisted shift."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import primes_up_to
from .artin import (
    INF,
    LocalPlace,
    NormClass,
    NormClassGroupDatum,
    norm_class,
)
from .crossed import CrossedElement, ZeroDivisorError
from .cyclotomic import (
    DEFAULT_DPS,
    ComplexBall,
    CycloNumber,
    SubfieldDatum,
    complex_embed,
    rel_norm,
)
from .hewett import DPrime


class InvolutedAlgebra:
    """D' with the involution fixed by x -> conj(x) on M and T -> T^-1."""

    def __init__(self, D: DPrime):
        self.D = D
        self.algebra = D.algebra
        B = self.algebra
        n = B.n
        # (T^dagger)^i as monomials c_i T^(k_i)
        t_dag = B.monomial(D.omega.inverse(), (n - 1) % n)
        self._t_dag_powers = []
        acc = B.one()
        for _ in range(n):
            k = next(j for j, c in enumerate(acc.coeffs) if not c.is_zero())
            self._t_dag_powers.append((acc.coeffs[k], k))
            acc = acc * t_dag

    def dagger(self, x: CrossedElement) -> CrossedElement:
        return dagger(x, self)

    @property
    def fixed_field(self) -> SubfieldDatum:
        """L, the center."""
        return self.algebra.datum.K


def dagger(x: CrossedElement, A: InvolutedAlgebra) -> CrossedElement:
    """sum x_i T^i -> sum (T^dagger)^i conj(x_i)."""
    B = A.algebra
    datum = B.datum
    out = [CycloNumber.zero(B.conductor)] * B.n
    for i, xi in enumerate(x.coeffs):
        if xi.is_zero():
            continue
        c, k = A._t_dag_powers[i]
        # (c T^k) conj(x_i) = c sigma^k(conj(x_i)) T^k
        out[k] = out[k] + c * datum.act(k, xi.conj())
    return CrossedElement(B, tuple(out))


def reduced_trace(y: CrossedElement, A: InvolutedAlgebra) -> CycloNumber:
    """Tr_{M/L}(y_0) = sum_i sigma^i(y_0)."""
    datum = A.algebra.datum
    y0 = y.coeffs[0]
    total = CycloNumber.zero(y0.conductor)
    for i in range(datum.degree):
        total = total + datum.act(i, y0)
    return total


@dataclass
class PositivityReport:
    identity_holds: bool
    trace: CycloNumber
    values: list[tuple[int, ComplexBall]]
    verdict: str  # positive, negative or inconclusive

    def to_json(self) -> dict:
        return {
            "identity": self.identity_holds,
            "trace": self.trace.to_json(),
            "embeddings": [{"s": s, **ball.to_json()} for s, ball in self.values],
            "verdict": self.verdict,
        }


def positivity_report(x: CrossedElement, A: InvolutedAlgebra, precision: int = DEFAULT_DPS) -> PositivityReport:
    """Exact identity Tr(x x^dagger) = Tr(sum x_i conj(x_i)), then an interval
    evaluation of that trace at every complex embedding of L."""
    if x.is_zero():
        raise ValueError("positivity needs a nonzero element")
    y = x * dagger(x, A)
    tr = reduced_trace(y, A)
    norm_sum = CycloNumber.zero(tr.conductor)
    for xi in x.coeffs:
        if not xi.is_zero():
            norm_sum = norm_sum + xi * xi.conj()
    tr_sum = reduced_trace(A.algebra.scalar(norm_sum), A)
    identity = y.coeffs[0] == norm_sum and tr == tr_sum

    values = []
    verdict = "positive"
    for s in A.fixed_field.embeddings():
        ball = complex_embed(tr, s, precision)
        values.append((s, ball))
        if ball.re_hi < 0:
            verdict = "negative"
        elif not ball.real_positive() and verdict != "negative":
            verdict = "inconclusive"
    return PositivityReport(identity, tr, values, verdict)


def is_unitary(g: CrossedElement, A: InvolutedAlgebra) -> bool:
    """dagger(g) g == 1; raises for non-invertible g."""
    if dagger(g, A) * g == A.algebra.one():
        return True
    if A.algebra.is_zero_divisor(g):
        raise ZeroDivisorError("unitarity is only defined for invertible elements")
    return False


# -- hermitian forms ----------------------------------------------------------

REFERENCE_FIELDS = {3: -2, 5: -1, 7: -3}


@dataclass(frozen=True)
class HermitianFormDatum:
    """Diagonal hermitian form over F = Q(sqrt d0)."""

    entries: tuple[Fraction, ...]
    d0: int
    beta: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if any(Fraction(e) == 0 for e in self.entries):
            raise ValueError("diagonal entries must be nonzero")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def disc(self) -> Fraction:
        out = Fraction(1)
        for e in self.entries:
            out *= e
        return out

    @property
    def signature(self) -> tuple[int, int]:
        pos = sum(1 for e in self.entries if e > 0)
        return pos, self.dimension - pos


@dataclass
class PlaceInvariants:
    place: LocalPlace
    kind: str  # split, inert, ramified or archimedean
    disc_class: NormClass | None
    witt_index: int | None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "place": str(self.place),
            "kind": self.kind,
            "disc_class": self.disc_class.value if self.disc_class else None,
            "witt_index": self.witt_index,
            "note": self.note,
        }


def _kind(d0: int, v: LocalPlace) -> str:
    if v.is_archimedean:
        return "archimedean" if d0 < 0 else "split"
    datum = NormClassGroupDatum(v, d0)
    if datum.split:
        return "split"
    return "ramified" if datum.ramified() else "inert"


def form_invariants(form: HermitianFormDatum, places) -> list[PlaceInvariants]:
    """Disc norm class and Witt index at each place, using: for even d,
    the Witt index is d/2 iff disc = (-1)^(d/2) modulo norms, else d/2 - 1."""
    d = form.dimension
    out = []
    for v in places:
        kind = _kind(form.d0, v)
        if kind == "split":
            out.append(PlaceInvariants(v, kind, None, None, "F splits: no norm condition"))
            continue
        if v.is_archimedean:
            pos, neg = form.signature
            out.append(PlaceInvariants(v, kind, None, min(pos, neg), f"signature ({pos}, {neg})"))
            continue
        datum = NormClassGroupDatum(v, form.d0)
        cls = norm_class(form.disc, datum)
        if d % 2:
            out.append(PlaceInvariants(v, kind, cls, None, "similitude class unique"))
            continue
        target = form.disc * (-1) ** (d // 2)
        witt = d // 2 if norm_class(target, datum) is NormClass.TRIVIAL else d // 2 - 1
        out.append(PlaceInvariants(v, kind, cls, witt))
    return out


def reference_form(p: int, r: int = 1) -> HermitianFormDatum:
    """xi = diag(1, -1, ..., -1) of size n = (p - 1) p^(r - 1)."""
    if p not in REFERENCE_FIELDS:
        raise ValueError(f"no reference quadratic field for p = {p}")
    n = (p - 1) * p ** (r - 1)
    d0 = REFERENCE_FIELDS[p]
    return HermitianFormDatum((Fraction(1),) + (Fraction(-1),) * (n - 1), d0)


@dataclass
class GUInvariants:
    p: int
    n: int
    d0: int
    disc: Fraction
    places: list[PlaceInvariants]

    def witt_index(self, ell) -> int | None:
        for pl in self.places:
            if str(pl.place) == str(ell):
                return pl.witt_index
        raise KeyError(ell)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d0": self.d0,
            "disc": str(self.disc),
            "places": [pl.to_json() for pl in self.places],
        }


def gu_reference_invariants(p: int, r: int = 1, ell_bound: int = 50) -> GUInvariants:
    """Invariants of the reference form at infinity and at every prime up to
    ell_bound that does not split in F."""
    form = reference_form(p, r)
    places = [INF] + [LocalPlace(q) for q in primes_up_to(ell_bound)]
    rows = [pl for pl in form_invariants(form, places) if pl.kind != "split"]
    return GUInvariants(p, form.dimension, form.d0, form.disc, rows)


# -- an explicit relative norm ------------------------------------------------------


@dataclass
class NormXiResult:
    value: Fraction
    expected: Fraction
    norm_class_at_2: NormClass

    @property
    def ok(self) -> bool:
        return self.value == self.expected

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "expected": str(self.expected),
            "norm_class_at_2": self.norm_class_at_2.value,
        }


def norm_xi_check(p: int = 5) -> NormXiResult:
    """N_{Q(zeta_20)/Q(i)}((1+i) zeta_5 + (1-i) zeta_5^-1), with n = 4."""
    if p != 5:
        raise ValueError("only the p = 5 configuration is defined")
    N = 20
    i = CycloNumber.zeta(N, 5)
    z = CycloNumber.zeta(N, 4)
    x = (1 + i) * z + (1 - i) * z.inverse()
    F = SubfieldDatum.from_gens(N, [s for s in range(1, N, 4) if s % 5])
    value = rel_norm(x, F).rational()
    n = 4
    cls = norm_class(value, NormClassGroupDatum(LocalPlace(2), -1))
    return NormXiResult(value, Fraction(-(2 ** (n // 2))), cls)


# -- block-matrix model ------------------------------------------------------------


class Laurent(dict):
    """Integer Laurent polynomial in a formal commuting symbol sigma."""

    @classmethod
    def const(cls, c: int = 1) -> Laurent:
        return cls({0: c}) if c else cls()

    @classmethod
    def sigma(cls, k: int = 1) -> Laurent:
        return cls({k: 1})

    def __add__(self, other):
        out = Laurent(self)
        for k, c in other.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def __mul__(self, other):
        out = Laurent()
        for i, a in self.items():
            for j, b in other.items():
                v = out.get(i + j, 0) + a * b
                if v:
                    out[i + j] = v
                else:
                    out.pop(i + j, None)
        return out

    def bar(self) -> Laurent:
        """sigma -> sigma^-1."""
        return Laurent({-k: c for k, c in self.items()})

    def reduce(self, n: int) -> Laurent:
        """Modulo sigma^n = 1."""
        out = Laurent()
        for k, c in self.items():
            out = out + Laurent({k % n: c})
        return out


def _lmatmul(A, B):
    size = len(A)
    zero = Laurent()
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = zero
            for k in range(size):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _lpow(A, e):
    size = len(A)
    out = [[Laurent.const(1 if i == j else 0) for j in range(size)] for i in range(size)]
    for _ in range(e):
        out = _lmatmul(out, A)
    return out


def _diag(size, value):
    return [[value if i == j else Laurent() for j in range(size)] for i in range(size)]


def _reduce(A, n):
    return [[x.reduce(n) for x in row] for row in A]


def _int_matmul(A, B):
    size = len(A)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(A[i], Bt[j])) for j in range(size)] for i in range(size)]


@dataclass
class BlockMatrixModel:
    n: int
    m: int
    S: list = field(repr=False)
    S_m_is_sigma: bool
    S_nm_is_identity: bool
    transpose_matches: bool
    permutation_check: bool

    @property
    def ok(self) -> bool:
        return self.S_m_is_sigma and self.S_nm_is_identity and self.transpose_matches and self.permutation_check


def block_matrix_model(n: int, m: int) -> BlockMatrixModel:
    """S as an m x m block matrix: identity blocks above the diagonal and
    sigma in the bottom-left corner, sigma of order n. Checks S^m = sigma I,
    S^(nm) = I, and conjugate-transpose(S) = S^(nm - 1) modulo sigma^n = 1;
    then repeats the last two with sigma an n x n cyclic permutation."""
    if n < 1 or m < 1:
        raise ValueError("n, m must be positive")
    S = [[Laurent() for _ in range(m)] for _ in range(m)]
    for i in range(m - 1):
        S[i][i + 1] = Laurent.const(1)
    S[m - 1][0] = S[m - 1][0] + Laurent.sigma(1)

    s_m = _lpow(S, m) == _diag(m, Laurent.sigma(1))
    s_nm = _reduce(_lpow(S, n * m), n) == _diag(m, Laurent.const(1).reduce(n))
    transpose = [[S[j][i].bar() for j in range(m)] for i in range(m)]
    t_ok = _reduce(transpose, n) == _reduce(_lpow(S, n * m - 1), n)

    # concrete check: sigma -> cyclic permutation matrix P, so P^T = P^-1
    size = n * m
    P = [[1 if (i + 1) % n == j else 0 for j in range(n)] for i in range(n)]

    def sigma_power_matrix(k):
        out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(k % n):
            out = _int_matmul(out, P)
        return out

    big = [[0] * size for _ in range(size)]
    for bi in range(m):
        for bj in range(m):
            for k, c in S[bi][bj].items():
                block = sigma_power_matrix(k)
                for i in range(n):
                    for j in range(n):
                        big[bi * n + i][bj * n + j] += c * block[i][j]
    power = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(size - 1):
        power = _int_matmul(power, big)
    big_t = [list(col) for col in zip(*big)]
    ident = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    perm_ok = big_t == power and _int_matmul(power, big) == ident
    return BlockMatrixModel(n, m, S, s_m, s_nm, t_ok, perm_ok)
