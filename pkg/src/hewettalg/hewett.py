"""Global data: the realizability classifier, CM coset data, invariant
profiles, the algebra D' = M<T>/(T^(p-1) = omega, T x = sigma(x) T), and the
embedding a -> omega*zeta, b -> T of the metacyclic group into its units."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .arith import (
    RationalModOne,
    crt_solve,
    euler_phi,
    generated_units,
    is_prime,
    mult_order,
    primes_up_to,
    primitive_root,
    teichmuller,
    units,
)
from .artin import cyclotomic_artin_exponent
from .crossed import (
    CrossedElement,
    CrossedProductAlgebra,
    CyclicGaloisDatum,
    ExtensionElement,
    extension_power,
)
from .cyclotomic import CycloNumber
from .groups import (
    ISO_ORDER_CAP,
    CapExceeded,
    GeneratedSubgroup,
    MetacyclicPresentation,
    canonical_t,
    generated_subgroup,
    isomorphic,
    make_hewett_group,
)

REALIZABLE_PRIMES = (3, 5, 7)


@dataclass
class Check:
    name: str
    status: str  # pass, fail or inconclusive
    detail: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, detail: str = "") -> Check:
        return cls(name, "pass" if ok else "fail", detail)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


# -- classifier ---------------------------------------------------------------


def realizability_condition(p: int, m: int) -> bool:
    """phi(p^m - 1) in {m, 2m}."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p = {p} must be an odd prime")
    if m < 1 or m % p == 0:
        raise ValueError(f"m = {m} must be positive and prime to p")
    return euler_phi(p**m - 1) in (m, 2 * m)


@dataclass(frozen=True)
class ClassifierRow:
    p: int
    m: int | None
    alpha: int | None
    condition_holds: bool
    paper_verdict: bool
    note: str = ""
    r: int | None = None

    @property
    def discrepancy(self) -> bool:
        return self.condition_holds and not self.paper_verdict

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "m": self.m,
            "alpha": self.alpha,
            "condition": self.condition_holds,
            "verdict": self.paper_verdict,
            "note": self.note,
        }
        if self.r is not None:
            out["r"] = self.r
            out["n"] = 2 ** (self.r - 1)
        return out


def classify(p_max: int = 100, m_max: int = 6, alpha_max: int = 4) -> list[ClassifierRow]:
    """One row per odd prime p <= p_max, m <= m_max prime to p, alpha <= alpha_max,
    followed by the p = 2 rows n = 2^(r-1), r <= alpha_max."""
    if min(p_max, m_max, alpha_max) < 1:
        raise ValueError("bounds must be at least 1")
    rows = []
    for p in primes_up_to(p_max):
        if p == 2:
            continue
        for m in range(1, m_max + 1):
            if m % p == 0:
                continue
            cond = realizability_condition(p, m)
            verdict = p in REALIZABLE_PRIMES and m == 1
            note = ""
            if cond and not verdict:
                w = p**m - 1
                note = (
                    f"discrepancy: phi({w}) = {euler_phi(w)} satisfies the condition "
                    "but the classification excludes this case"
                )
            for alpha in range(1, alpha_max + 1):
                rows.append(ClassifierRow(p, m, alpha, cond, verdict, note))
    if p_max >= 2:
        for r in range(1, alpha_max + 1):
            ok = r > 2
            note = "" if ok else "n = 2^(r-1) <= 2: outside the cyclic maximal subgroup case"
            rows.append(ClassifierRow(2, None, None, ok, ok, note, r=r))
    return rows


# -- cosets and invariant profiles ----------------------------------------------


@dataclass(frozen=True)
class CosetData:
    k: int
    t_list: tuple[int, ...]
    cm_check: bool


def coset_data(p: int, m: int) -> CosetData:
    """Cosets of <p> in (Z/(p^m - 1))^x grouped in pairs {c, -c}; t_1 = 1."""
    w = p**m - 1
    if w <= 2:
        raise ValueError(f"p^m - 1 = {w}: degenerate case, handled separately")
    sub = generated_units(w, [p])
    if (w - 1) in sub:
        raise ValueError(f"-1 lies in <{p}> mod {w}: the field is not CM")
    covered: set[int] = set()
    t_list = []
    for u in units(w):
        if u in covered:
            continue
        t_list.append(u)
        covered.update(u * h % w for h in sub)
        covered.update(-u * h % w for h in sub)
    return CosetData(len(t_list), tuple(t_list), True)


@dataclass(frozen=True)
class Place:
    t: int
    conjugate: bool
    inv: RationalModOne

    def to_json(self) -> dict:
        return {"t": self.t, "conjugate": self.conjugate, "inv": str(self.inv)}


@dataclass(frozen=True)
class InvariantProfile:
    p: int
    m: int
    alpha: int
    places: tuple[Place, ...]

    @property
    def degree(self) -> int:
        return (self.p - 1) * self.p ** (self.alpha - 1) * self.m

    def total(self) -> RationalModOne:
        acc = RationalModOne(0)
        for pl in self.places:
            acc = acc + pl.inv
        return acc

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "alpha": self.alpha,
            "places": [pl.to_json() for pl in self.places],
        }


def invariant_profile(p: int, m: int, alpha: int) -> InvariantProfile:
    if p == 2 or not is_prime(p) or m < 1 or m % p == 0 or alpha < 1:
        raise ValueError("need an odd prime p, m >= 1 prime to p, alpha >= 1")
    if p == 3 and m == 1:
        t_list: tuple[int, ...] = (1,)
    else:
        t_list = coset_data(p, m).t_list
    n = (p - 1) * p ** (alpha - 1) * m
    places = []
    for t in t_list:
        places.append(Place(t, False, RationalModOne(t, n)))
        places.append(Place(t, True, RationalModOne(-t, n)))
    return InvariantProfile(p, m, alpha, tuple(places))


# -- the algebra D' -------------------------------------------------------------


@dataclass
class DPrime:
    p: int
    m: int
    alpha: int
    algebra: CrossedProductAlgebra
    omega: CycloNumber
    zeta: CycloNumber
    sigma: int
    artin_exponent: int  # action of sigma on p^alpha-th roots of unity
    t: int
    special: bool = False  # p = 3, m = 1 with omega replaced by -1

    @property
    def conductor(self) -> int:
        return self.algebra.conductor

    @property
    def T(self) -> CrossedElement:
        return self.algebra.S()

    def scalar(self, x) -> CrossedElement:
        return self.algebra.scalar(x)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "alpha": self.alpha,
            "algebra": self.algebra.to_json(),
            "sigma": self.sigma,
            "artin_exponent": self.artin_exponent,
            "t": self.t,
        }


def default_artin_exponent(p: int, alpha: int) -> int:
    """Action on zeta_(p^alpha) of the Artin image of omega at y_1.

    omega is matched with the Teichmuller lift of the least primitive root
    mod p; only the order (p - 1) of the result is convention-free.
    """
    u = teichmuller(primitive_root(p), p, alpha)
    return cyclotomic_artin_exponent(u, p, alpha)


def build_dprime(p: int, m: int, alpha: int, sigma: int | None = None) -> DPrime:
    """sigma, if given, overrides the computed generator; it is the full
    exponent mod the conductor."""
    if p == 2 or not is_prime(p) or m < 1 or m % p == 0 or alpha < 1:
        raise ValueError("need an odd prime p, m >= 1 prime to p, alpha >= 1")
    pa = p**alpha
    special = p == 3 and m == 1
    if special:
        # F = Q(sqrt -2) inside Q(zeta_8); omega = -1
        w = 8
        N = w * pa
        top = generated_units(N, [crt_solve([(1, pa), (3, 8)])])
        omega = CycloNumber.from_rational(N, -1)
    else:
        w = p**m - 1
        N = w * pa
        top = frozenset({1})
        omega = CycloNumber.zeta(N, pa)
    zeta = CycloNumber.zeta(N, w)
    s_p = default_artin_exponent(p, alpha)
    if sigma is None:
        sigma = crt_solve([(s_p, pa), (1, w)])
    else:
        sigma %= N
        if (sigma - 1) % w:
            raise ValueError(f"sigma = {sigma} must fix omega (be 1 mod {w})")
        s_p = sigma % pa
    if mult_order(sigma % pa, pa) != p - 1:
        raise ValueError(f"sigma = {sigma} does not generate a quotient of order {p - 1}")
    base = generated_units(N, list(top) + [sigma])
    datum = CyclicGaloisDatum(N, base, top, sigma)
    if datum.degree != p - 1:
        raise ValueError(f"[M:L] = {datum.degree}, expected {p - 1}")
    algebra = CrossedProductAlgebra(datum, omega)
    t = canonical_t(p, m, alpha, artin_exponent=s_p)
    return DPrime(p, m, alpha, algebra, omega, zeta, sigma, s_p, t, special)


def check_T_power(D: DPrime) -> bool:
    """T^(p-1) = omega computed in the extension group."""
    B = D.algebra
    T = ExtensionElement(CycloNumber.one(B.conductor), 1)
    return extension_power(T, D.p - 1, B) == ExtensionElement(D.omega, 0)


# -- embedding verification -------------------------------------------------------


@dataclass
class EmbeddingReport:
    p: int
    m: int
    alpha: int
    t: int
    checks: list[Check]
    subgroup: GeneratedSubgroup | None = field(default=None, repr=False)
    dprime: DPrime | None = field(default=None, repr=False)
    abstract: MetacyclicPresentation | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "alpha": self.alpha,
            "t": self.t,
            "subgroup_order": self.subgroup.order if self.subgroup else None,
            "checks": [c.to_json() for c in self.checks],
        }


def _order_in(B: CrossedProductAlgebra, x: CrossedElement, cap: int) -> int | None:
    one = B.one()
    y, k = x, 1
    while y != one:
        if k >= cap:
            return None
        y = B.multiply(y, x)
        k += 1
    return k


def verify_embedding(
    p: int,
    m: int,
    alpha: int,
    sigma: int | None = None,
    seed: int = 0,
    spot_checks: int = 200,
) -> EmbeddingReport:
    """Check that a -> omega*zeta, b -> T embeds the metacyclic group in the
    units of D'. Failures are reported, never raised."""
    checks: list[Check] = []
    try:
        D = build_dprime(p, m, alpha, sigma)
    except ValueError as exc:
        return EmbeddingReport(p, m, alpha, 0, [Check("build", "fail", str(exc))])
    B = D.algebra
    pa, w = p**alpha, p**m - 1
    order_a = pa * w
    expected = order_a * (p - 1)
    A = D.scalar(D.omega * D.zeta)
    T = D.T

    checks.append(Check.of("T^(p-1) = omega", check_T_power(D)))

    ord_a = _order_in(B, A, order_a + 1)
    checks.append(
        Check.of("order of a", ord_a == order_a, f"order {ord_a}, expected {order_a}")
    )

    lhs = T * A * B.inverse(T)
    rhs = B.power(A, D.t)
    checks.append(Check.of("b a b^-1 = a^t", lhs == rhs, f"t = {D.t}"))

    bq = B.power(T, p - 1)
    if m == 1:
        ok = bq == B.power(A, pa)
        checks.append(Check.of("b^(p-1) = a^(p^alpha)", ok))
        fold = None
    else:
        # find the k with b^(p-1) = a^k; expect k = 0 mod p^alpha, 1 mod p^m - 1
        k = crt_solve([(0, pa), (1, w)])
        ok = bq == B.power(A, k)
        checks.append(
            Check.of(
                "b^(p-1) = a^k",
                ok,
                f"k = {k}; k = p^alpha only when m divides alpha; isomorphism decides",
            )
        )
        fold = k

    try:
        sub = generated_subgroup(B.multiply, [A, T], B.one(), cap=10 * expected)
    except RuntimeError as exc:
        checks.append(Check("subgroup order", "fail", str(exc)))
        return EmbeddingReport(p, m, alpha, D.t, checks, None, D)
    G = make_hewett_group(p, m, alpha, D.t)
    enumerated = len(G.elements())
    checks.append(
        Check.of(
            "subgroup order",
            sub.order == expected == enumerated,
            f"generated {sub.order}, normal forms {enumerated}, expected {expected}",
        )
    )
    if sub.order != expected:
        return EmbeddingReport(p, m, alpha, D.t, checks, sub, D, G)

    if sub.order > ISO_ORDER_CAP:
        checks.append(
            Check(
                "isomorphic to the abstract group",
                "inconclusive",
                f"order {sub.order} exceeds the table cap {ISO_ORDER_CAP}",
            )
        )
        return EmbeddingReport(p, m, alpha, D.t, checks, sub, D, G)
    table = sub.cayley_table()
    rng = random.Random(seed)
    bad = 0
    for _ in range(spot_checks):
        i, j = rng.randrange(sub.order), rng.randrange(sub.order)
        if sub.index[B.multiply(sub.elements[i], sub.elements[j])] != table[i][j]:
            bad += 1
    checks.append(Check.of("table spot checks", bad == 0, f"{spot_checks} products, {bad} wrong"))

    try:
        iso = isomorphic(table, G.cayley_table())
    except CapExceeded as exc:
        checks.append(Check("isomorphic to the abstract group", "inconclusive", str(exc)))
        return EmbeddingReport(p, m, alpha, D.t, checks, sub, D, G)
    detail = "explicit isomorphism found" if iso else f"refuted: {iso.certificate.get('reason')}"
    if fold is not None:
        variant = make_hewett_group(p, m, alpha, D.t, fold=fold)
        same = isomorphic(variant.cayley_table(), G.cayley_table())
        detail += f"; variant with b^(p-1) = a^{fold} {'is' if same else 'is not'} isomorphic"
    checks.append(Check.of("isomorphic to the abstract group", bool(iso), detail))
    return EmbeddingReport(p, m, alpha, D.t, checks, sub, D, G)
