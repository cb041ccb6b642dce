"""Metacyclic groups G = <a, b | a^(p^al (p^m - 1)) = 1, b a b^-1 = a^t,
b^(p-1) = a^(p^al)> in normal form a^i b^j, plus closure and isomorphism
search over arbitrary multiplication tables."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .arith import crt_solve, is_prime, mult_order

DEFAULT_CLOSURE_CAP = 10**5
ISO_ORDER_CAP = 5000
ISO_NODE_CAP = 10**7


@dataclass(frozen=True)
class MetacyclicPresentation:
    p: int
    m: int
    alpha: int
    t: int
    fold_exponent: int | None = None

    @property
    def order_a(self) -> int:
        return self.p**self.alpha * (self.p**self.m - 1)

    @property
    def quotient_order(self) -> int:
        return self.p - 1

    @property
    def order(self) -> int:
        return self.order_a * self.quotient_order

    @property
    def fold(self) -> int:
        """Exponent k with b^(p-1) = a^k (p^alpha unless overridden)."""
        if self.fold_exponent is not None:
            return self.fold_exponent
        return self.p**self.alpha

    def element(self, i: int, j: int = 0) -> GroupElement:
        """a^i b^j for arbitrary integers (j may overflow or be negative)."""
        q = self.quotient_order
        carry, j = divmod(j, q)
        return GroupElement(self, (i + carry * self.fold) % self.order_a, j)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0, 0)

    @property
    def a(self) -> GroupElement:
        return self.element(1, 0)

    @property
    def b(self) -> GroupElement:
        return self.element(0, 1)

    def elements(self) -> list[GroupElement]:
        return [
            GroupElement(self, i, j)
            for j in range(self.quotient_order)
            for i in range(self.order_a)
        ]

    def index(self, g: GroupElement) -> int:
        """Position of g in elements()."""
        return g.j * self.order_a + g.i

    def cayley_table(self) -> list[list[int]]:
        elems = self.elements()
        return [[self.index(multiply(x, y)) for y in elems] for x in elems]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "alpha": self.alpha,
            "t": self.t,
            "fold": self.fold,
            "order": self.order,
        }


@dataclass(frozen=True)
class GroupElement:
    pres: MetacyclicPresentation = field(repr=False)
    i: int
    j: int

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __pow__(self, k: int) -> GroupElement:
        return power(self, k)

    def inverse(self) -> GroupElement:
        return power(self, element_order(self) - 1)


def canonical_t(p: int, m: int, alpha: int, artin_exponent: int | None = None) -> int:
    """Smallest positive t = 1 mod (p^m - 1) whose class mod p^alpha has order
    p - 1; with an Artin exponent s, the CRT lift of (s mod p^alpha, 1 mod p^m - 1).

    The extra congruence mod p^m - 1 is needed for the relations to be
    consistent: conjugating b^(p-1) = a^(p^alpha) by b forces t p^alpha = p^alpha
    modulo the order of a.
    """
    pa, w = p**alpha, p**m - 1
    if artin_exponent is not None:
        return crt_solve([(artin_exponent % pa, pa), (1 % w, w)])
    t = 1
    while t < pa * w + 1:
        if t % p and mult_order(t % pa, pa) == p - 1:
            return t
        t += w
    raise ValueError(f"no element of order {p - 1} in (Z/{pa})^x")


def make_hewett_group(
    p: int, m: int, alpha: int, t: int | None = None, fold: int | None = None
) -> MetacyclicPresentation:
    """The presentation with the canonical t (or the given one). `fold`
    replaces p^alpha in b^(p-1) = a^fold; it must keep the group of order
    p^alpha (p^m - 1)(p - 1)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p = {p} must be an odd prime")
    if m < 1 or m % p == 0:
        raise ValueError(f"m = {m} must be positive and prime to p")
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    if t is None:
        t = canonical_t(p, m, alpha)
    pa, w = p**alpha, p**m - 1
    if t % p == 0 or mult_order(t % pa, pa) != p - 1:
        raise ValueError(f"t = {t} does not have order {p - 1} mod {pa}")
    if (t - 1) % w:
        raise ValueError(f"t = {t} is not 1 mod {w}; the relations would collapse")
    if fold is not None:
        order_a = pa * w
        fold %= order_a
        if (fold * (t - 1)) % order_a or pow(t, p - 1, order_a) != 1:
            raise ValueError(f"b^{p - 1} = a^{fold} is inconsistent with t = {t}")
        if fold == pa:
            fold = None
    return MetacyclicPresentation(p, m, alpha, t, fold)


def multiply(g1: GroupElement, g2: GroupElement) -> GroupElement:
    pres = g1.pres
    if g2.pres != pres:
        raise ValueError("elements come from different presentations")
    n = pres.order_a
    i = (g1.i + g2.i * pow(pres.t, g1.j, n)) % n
    j = g1.j + g2.j
    if j >= pres.quotient_order:
        j -= pres.quotient_order
        i = (i + pres.fold) % n
    return GroupElement(pres, i, j)


def power(g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return power(g.inverse(), -k)
    result = g.pres.identity
    base = g
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def element_order(g: GroupElement) -> int:
    ident = g.pres.identity
    x, k = g, 1
    while x != ident:
        x = multiply(x, g)
        k += 1
    return k


# -- closure in an arbitrary ambient structure ----------------------------


class CapExceeded(RuntimeError):
    pass


@dataclass
class GeneratedSubgroup:
    """Closure of gens under right multiplication, in BFS order.

    elements[0] is the identity; element k > 0 equals
    elements[parent[k]] * gens[via[k]]; right[g][k] is the index of
    elements[k] * gens[g].
    """

    elements: list
    index: dict
    parent: list[int]
    via: list[int]
    right: list[list[int]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def cayley_table(self) -> list[list[int]]:
        # x * y for y = y' * g is (x * y') * g
        n = len(self.elements)
        table = [[0] * n for _ in range(n)]
        for x in range(n):
            row = table[x]
            row[0] = x
            for y in range(1, n):
                row[y] = self.right[self.via[y]][row[self.parent[y]]]
        return table


def generated_subgroup(
    ambient_multiply: Callable[[Hashable, Hashable], Hashable],
    gens: Sequence[Hashable],
    identity: Hashable,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> GeneratedSubgroup:
    """Closure of gens under ambient_multiply (elements must be hashable)."""
    gens = list(gens)
    elements = [identity]
    index = {identity: 0}
    parent, via = [-1], [-1]
    right: list[list[int]] = [[] for _ in gens]
    k = 0
    # finite groups: closure under multiplication is the generated subgroup
    while k < len(elements):
        x = elements[k]
        for g_idx, g in enumerate(gens):
            y = ambient_multiply(x, g)
            pos = index.get(y)
            if pos is None:
                if len(elements) >= cap:
                    raise CapExceeded(f"closure exceeds {cap} elements")
                pos = len(elements)
                elements.append(y)
                index[y] = pos
                parent.append(k)
                via.append(g_idx)
            right[g_idx].append(pos)
        k += 1
    return GeneratedSubgroup(elements, index, parent, via, right)


# -- isomorphism testing ----------------------------------------------------


@dataclass
class IsomorphismResult:
    isomorphic: bool
    mapping: list[int] | None = None
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.isomorphic


def _identity_of(table) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x for x in range(n)):
            return e
    raise ValueError("table has no identity")


def _orders(table, e) -> list[int]:
    out = []
    for x in range(len(table)):
        y, k = x, 1
        while y != e:
            y = table[y][x]
            k += 1
        out.append(k)
    return out


def _closure(table, e, gens) -> set[int]:
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = table[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def order_spectrum(table) -> Counter:
    return Counter(_orders(table, _identity_of(table)))


def isomorphic(G, H, node_cap: int = ISO_NODE_CAP) -> IsomorphismResult:
    """Decide G = H for groups given by multiplication tables (lists of rows
    of element indices). Returns an explicit isomorphism (mapping[g] = image)
    or a certificate: an order-spectrum mismatch or an exhausted search."""
    n = len(G)
    if n != len(H):
        return IsomorphismResult(False, certificate={"reason": "order", "orders": [n, len(H)]})
    if n > ISO_ORDER_CAP:
        raise CapExceeded(f"group order {n} exceeds {ISO_ORDER_CAP}")
    eg, eh = _identity_of(G), _identity_of(H)
    og, oh = _orders(G, eg), _orders(H, eh)
    sg, sh = Counter(og), Counter(oh)
    if sg != sh:
        return IsomorphismResult(
            False,
            certificate={
                "reason": "order spectrum",
                "G": dict(sorted(sg.items())),
                "H": dict(sorted(sh.items())),
            },
        )

    # greedy generating set, largest orders first
    gens: list[int] = []
    span = {eg}
    for x in sorted(range(n), key=lambda x: (-og[x], x)):
        if len(span) == n:
            break
        if x not in span:
            gens.append(x)
            span = _closure(G, eg, gens)

    by_order: dict[int, list[int]] = {}
    for y in range(n):
        by_order.setdefault(oh[y], []).append(y)

    # orders of short words in the generators, for pruning
    def word_orders(table, orders, images):
        out = []
        for u in range(len(images)):
            for v in range(u):
                out.append(orders[table[images[u]][images[v]]])
                out.append(orders[table[table[images[u]][images[u]]][images[v]]])
        return out

    nodes = 0

    def extend(images):
        """Build the map on <gens[:len(images)]> by BFS over Cayley edges;
        None if inconsistent or not injective."""
        nonlocal nodes
        k = len(images)
        phi = {eg: eh}
        used = {eh}
        frontier = [eg]
        while frontier:
            nxt = []
            for x in frontier:
                fx = phi[x]
                for gi in range(k):
                    nodes += 1
                    y = G[x][gens[gi]]
                    fy = H[fx][images[gi]]
                    have = phi.get(y)
                    if have is None:
                        if fy in used:
                            return None
                        phi[y] = fy
                        used.add(fy)
                        nxt.append(y)
                    elif have != fy:
                        return None
            frontier = nxt
        return phi

    def search(images):
        if nodes > node_cap:
            raise CapExceeded(f"isomorphism search exceeded {node_cap} nodes")
        k = len(images)
        if k == len(gens):
            phi = extend(images)
            if phi is None or len(phi) != n:
                return None
            return [phi[x] for x in range(n)]
        target = word_orders(G, og, gens[: k + 1])
        for y in by_order[og[gens[k]]]:
            cand = images + [y]
            if word_orders(H, oh, cand) != target:
                continue
            if extend(cand) is None:
                continue
            found = search(cand)
            if found is not None:
                return found
        return None

    mapping = search([])
    if mapping is None:
        return IsomorphismResult(
            False,
            certificate={"reason": "exhausted generator-image search", "generators": gens, "nodes": nodes},
        )
    return IsomorphismResult(True, mapping=mapping, certificate={"generators": gens, "nodes": nodes})


def cyclic_table(n: int) -> list[list[int]]:
    return [[(x + y) % n for y in range(n)] for x in range(n)]


def direct_product_table(A, B) -> list[list[int]]:
    nb = len(B)
    n = len(A) * nb
    return [
        [A[x // nb][y // nb] * nb + B[x % nb][y % nb] for y in range(n)]
        for x in range(n)
    ]
