"""Finite commutative unital rings by structure constants.

Everything here is an oracle at desk scale: unit groups come from element
enumeration (exhaustive inverse pairing below 2^8 elements, an exact
integer linear solve above), locality from the ideal test on non-units,
and the local unit-structure identity A* = F* x (1 + m) is re-verified on
every local instance rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import gcd, prod

from .abelian import FinAbGroup, abelian_structure, is_lambda_small, \
    lambda_power_decompose, prufer_rank, solve_integer_system, format_group
from .caps import UNIT_GROUP_CAP, oracle_cap
from .radical import RadicalRing, radical_ring_from_mult, CapExceeded
from .verdict import Verdict, realisable, not_realisable, unknown
from . import presentation


class InvalidRing(ValueError):
    pass


class NotLocalError(ValueError):
    pass


class EvenPrime(ValueError):
    pass


@dataclass(frozen=True)
class FinCommRing:
    """Finite commutative unital ring: additive orders, structure constants,
    identity coordinates.  Orders need not be prime powers (Z/6Z is one
    basis element of order 6)."""

    basis_orders: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]  # pairs (i, j), i <= j
    one: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        r = len(self.basis_orders)
        if any(n < 2 for n in self.basis_orders):
            raise InvalidRing("basis orders must be >= 2")
        if len(self.mult) != r * (r + 1) // 2:
            raise InvalidRing("structure constant count does not match basis")
        if len(self.one) != r:
            raise InvalidRing("identity width does not match basis")
        validate_ring(self)

    def rank(self) -> int:
        return len(self.basis_orders)

    def order(self) -> int:
        return prod(self.basis_orders)

    def constant(self, i, j):
        if i > j:
            i, j = j, i
        r = len(self.basis_orders)
        return self.mult[i * r - i * (i - 1) // 2 + (j - i)]

    def zero(self):
        return (0,) * len(self.basis_orders)

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.basis_orders))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.basis_orders))

    def mul(self, x, y):
        acc = [0] * len(self.basis_orders)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                c = self.constant(i, j)
                ab = a * b
                for m, v in enumerate(c):
                    if v:
                        acc[m] += ab * v
        return tuple(v % n for v, n in zip(acc, self.basis_orders))

    def elements(self):
        return iproduct(*(range(n) for n in self.basis_orders))

    def additive_group(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.basis_orders)

    def characteristic(self) -> int:
        n = 1
        x = self.one
        while any(x):
            x = self.add(x, self.one)
            n += 1
        return n

    def to_presentation(self) -> str:
        table = {}
        r = len(self.basis_orders)
        for i in range(r):
            for j in range(i, r):
                table[(i + 1, j + 1)] = self.constant(i, j)
        return presentation.format_ring_document(
            "ring", self.basis_orders, table, one=self.one, name=self.name or None)

    @classmethod
    def from_presentation(cls, text: str) -> "FinCommRing":
        doc = presentation.parse_ring_document(text)
        if doc["kind"] != "ring":
            raise InvalidRing("not a unital-ring document")
        orders = doc["basis_orders"]
        r = len(orders)
        mult = tuple(doc["mult"][(i + 1, j + 1)] for i in range(r) for j in range(i, r))
        return cls(tuple(orders), mult, tuple(doc["one"]), name=doc.get("name", ""))

    def __str__(self):
        label = self.name or "ring"
        return f"{label} of order {self.order()}"


def validate_ring(A: FinCommRing) -> None:
    r = len(A.basis_orders)
    orders = A.basis_orders
    for i in range(r):
        for j in range(i, r):
            c = A.constant(i, j)
            if len(c) != r or any(not (0 <= v < n) for v, n in zip(c, orders)):
                raise InvalidRing(f"constant ({i},{j}) out of range")
            kill = gcd(orders[i], orders[j])
            for m, v in enumerate(c):
                if (kill * v) % orders[m]:
                    raise InvalidRing(f"bilinearity fails at ({i},{j}) coord {m}")
    basis = [tuple(int(m == i) for m in range(r)) for i in range(r)]
    for i in range(r):
        if A.mul(A.one, basis[i]) != basis[i]:
            raise InvalidRing(f"identity fails on basis element {i}")
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if A.mul(A.mul(basis[i], basis[j]), basis[k]) != \
                        A.mul(basis[i], A.mul(basis[j], basis[k])):
                    raise InvalidRing(f"associativity fails at ({i},{j},{k})")


# ---------------------------------------------------------------------------
# units


def unit_elements(A: FinCommRing, cap: int | None = None) -> list[tuple[int, ...]]:
    """All invertible elements, by exhaustive pairing below 2^8 elements and
    an exact linear solve (multiplication-by-x matrix over Z) above."""
    if cap is None:
        cap = oracle_cap(UNIT_GROUP_CAP)
    n = A.order()
    if n > cap:
        raise CapExceeded(f"ring order {n} exceeds the unit-group cap {cap}")
    elems = list(A.elements())
    units = []
    if n <= 2 ** 8:
        for x in elems:
            if any(A.mul(x, y) == A.one for y in elems):
                units.append(x)
        return units
    r = len(A.basis_orders)
    basis = [tuple(int(m == i) for m in range(r)) for i in range(r)]
    for x in elems:
        cols = [A.mul(x, b) for b in basis]
        rows = []
        for m in range(r):
            rows.append([cols[j][m] for j in range(r)] +
                        [A.basis_orders[m] if t == m else 0 for t in range(r)])
        if solve_integer_system(rows, list(A.one)) is not None:
            units.append(x)
    return units


def unit_group(A: FinCommRing, cap: int | None = None) -> FinAbGroup:
    """Isomorphism type of A*, recovered from the invertible elements.

    >>> Z9 = zn_ring(9)
    >>> str(unit_group(Z9))
    'Z/2Z x Z/3Z'
    """
    units = unit_elements(A, cap)
    return abelian_structure(units, A.mul, A.one)


@dataclass(frozen=True)
class LocalData:
    p: int
    lam: int
    maximal_ideal: tuple[tuple[int, ...], ...]
    residue_size: int


@dataclass(frozen=True)
class NotLocal:
    idempotent: tuple[int, ...]


def localize(A: FinCommRing, cap: int | None = None):
    """LocalData when the non-units form an ideal, else a NotLocal witness
    carrying a nontrivial idempotent that splits the ring."""
    units = set(unit_elements(A, cap))
    nonunits = [x for x in A.elements() if x not in units]
    closed = all(A.add(x, y) not in units for x in nonunits for y in nonunits)
    if closed:
        n = A.order()
        m = len(nonunits)
        residue = n // m if m else n
        p = _prime_root(residue)
        lam = 0
        q = residue
        while q > 1:
            q //= p
            lam += 1
        data = LocalData(p, lam, tuple(sorted(nonunits)), residue)
        # residue-degree consistency: A* must contain an element of order p^lam - 1
        if residue > 2:
            target = residue - 1
            assert any(_mult_order_in(A, u, target) == target for u in units), \
                "residue field size inconsistent with the unit group"
        return data
    for e in A.elements():
        if e != A.zero() and e != A.one and A.mul(e, e) == e:
            return NotLocal(e)
    raise AssertionError("non-local ring without a nontrivial idempotent")


def _prime_root(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            if n != 1:
                raise InvalidRing("residue size is not a prime power")
            return d
        d += 1
    return n


def _mult_order_in(A: FinCommRing, x, bound: int) -> int:
    acc = x
    for k in range(1, bound + 1):
        if acc == A.one:
            return k
        acc = A.mul(acc, x)
    return 0


def maximal_ideal_ring(A: FinCommRing, data: LocalData) -> RadicalRing:
    """The maximal ideal as a standalone radical ring (it is nilpotent)."""
    return radical_ring_from_mult(
        list(data.maximal_ideal), A.add, A.zero(), A.mul, data.p,
        name=f"m({A.name})" if A.name else "")


def verify_local_formula(A: FinCommRing, cap: int | None = None) -> bool:
    """Check A* = Z/(p^lam - 1) x (1 + m) for a local ring, with 1 + m
    computed as the adjoint group of the maximal ideal."""
    data = localize(A, cap)
    if isinstance(data, NotLocal):
        raise NotLocalError(f"{A} splits at idempotent {data.idempotent}")
    units = unit_group(A, cap)
    one_plus_m = maximal_ideal_ring(A, data).adjoint_group()
    expected = FinAbGroup.from_orders([data.residue_size - 1]) * one_plus_m \
        if data.residue_size > 2 else one_plus_m
    return units == expected


def decide_local_small(G: FinAbGroup, p: int, lam: int) -> Verdict:
    """Decide realisability of G as the unit group of a finite local
    commutative ring with residue field of size p^lam, for odd p, under the
    small-Sylow hypothesis."""
    if p == 2:
        raise EvenPrime("the classification requires an odd prime")
    if lam < 1:
        raise ValueError("lam must be positive")
    query = format_group(G)
    cls = "finite-local"
    H = G.sylow(p)
    if not is_lambda_small(H, p, lam):
        return unknown(
            "small-sylow-local-classification", query, cls,
            {"hypothesis": f"Sylow {p}-part has Prufer rank "
                           f"{prufer_rank(G, p)} >= {lam}*({p}-1)"})
    rest = G.without_prime(p)
    cyclic_part = FinAbGroup.from_orders([p ** lam - 1]) if p ** lam > 2 else FinAbGroup.trivial()
    if rest != cyclic_part:
        return not_realisable(
            "small-sylow-local-classification", query, cls,
            {"reason": f"prime-to-{p} part must be exactly Z/{p ** lam - 1}Z",
             "p": p, "lam": lam})
    V = lambda_power_decompose(H, lam)
    if V is None:
        return not_realisable(
            "small-sylow-local-classification", query, cls,
            {"reason": f"Sylow {p}-part is {lam}-small but not a {lam}-th power",
             "p": p, "lam": lam, "sylow": format_group(H)})
    assert is_lambda_small(V, p, 1)
    return realisable(
        "small-sylow-local-classification", query, cls,
        {"p": p, "lam": lam, "witness_p_group": format_group(V)})


# ---------------------------------------------------------------------------
# quotients and ideals (oracle support)


class QuotientRing:
    """A/I for an ideal I, with coset labels as elements."""

    def __init__(self, A: FinCommRing, ideal_elements):
        self.A = A
        ideal = set(ideal_elements)
        label_of = {}
        labels = []
        for x in A.elements():
            if x in label_of:
                continue
            coset = sorted(A.add(x, i) for i in ideal)
            lab = coset[0]
            for y in coset:
                label_of[y] = lab
            labels.append(lab)
        self.label_of = label_of
        self.labels = sorted(labels)
        self.one = label_of[A.one]
        self.zero = label_of[A.zero()]

    def mul(self, a, b):
        return self.label_of[self.A.mul(a, b)]

    def add(self, a, b):
        return self.label_of[self.A.add(a, b)]

    def units(self):
        return [x for x in self.labels
                if any(self.mul(x, y) == self.one for y in self.labels)]

    def unit_group(self) -> FinAbGroup:
        return abelian_structure(self.units(), self.mul, self.one)


def subgroup_closure(A: FinCommRing, gens) -> frozenset:
    seen = {A.zero()}
    frontier = [A.zero()]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = A.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def ideals_inside(A: FinCommRing, ambient) -> list[frozenset]:
    """All ideals of A contained in the given element set (desk scale)."""
    ambient = sorted(ambient)
    found = {frozenset({A.zero()})}
    frontier = [frozenset({A.zero()})]
    basis = [tuple(int(m == i) for m in range(A.rank())) for i in range(A.rank())]
    while frontier:
        sub = frontier.pop()
        for g in ambient:
            if g in sub:
                continue
            closure = set(subgroup_closure(A, list(sub) + [g]))
            if not all(x in ambient or x == A.zero() for x in closure):
                continue
            # close under multiplication by the whole ring
            while True:
                extra = {A.mul(b, x) for b in basis for x in closure} - closure
                if not extra:
                    break
                closure = set(subgroup_closure(A, list(closure) + list(extra)))
            fs = frozenset(closure)
            if fs not in found and all(x in ambient or x == A.zero() for x in fs):
                found.add(fs)
                frontier.append(fs)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# stock constructions


def zn_ring(n: int) -> FinCommRing:
    """Z/nZ as a one-generator ring."""
    return FinCommRing((n,), ((1,),), (1,), name=f"Z/{n}Z")


def poly_quotient_ring(char: int, modpoly: tuple[int, ...], name: str = "") -> FinCommRing:
    """(Z/char)[t]/(f) for a monic f given little-endian; basis 1, t, ..."""
    d = len(modpoly) - 1
    orders = (char,) * d
    # reduction of t^k for k up to 2d-2
    red = {}
    for k in range(d):
        red[k] = tuple(int(i == k) for i in range(d))
    for k in range(d, 2 * d - 1):
        prev = red[k - 1]
        shifted = [0] + list(prev[:-1])
        carry = prev[-1]
        vec = [(shifted[i] - carry * modpoly[i]) % char for i in range(d)]
        red[k] = tuple(vec)
    mult = []
    for i in range(d):
        for j in range(i, d):
            acc = [0] * d
            for m, v in enumerate(red[i + j]):
                acc[m] = v
            mult.append(tuple(acc))
    one = tuple(int(i == 0) for i in range(d))
    return FinCommRing(orders, tuple(mult), one, name=name)


_IRREDUCIBLE = {  # smallest-lex monic irreducible over F_p, little-endian
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
}


def field_ring(q: int) -> FinCommRing:
    """The finite field F_q as structure constants."""
    if q in _IRREDUCIBLE:
        from .numtheory import is_prime_power
        p, _ = is_prime_power(q)
        return poly_quotient_ring(p, _IRREDUCIBLE[q], name=f"F_{q}")
    from .numtheory import is_prime
    if not is_prime(q):
        raise InvalidRing(f"no irreducible polynomial on file for {q}")
    return FinCommRing((q,), ((1,),), (1,), name=f"F_{q}")


def galois_ring(p: int, c: int, q: int) -> FinCommRing:
    """GR(p^c, d): (Z/p^c)[t]/(f) for the lift of the F_q polynomial."""
    f = _IRREDUCIBLE[q]
    return poly_quotient_ring(p ** c, f, name=f"GR({p}^{c},{q})")


def zn_with_nilpotent(n: int, d: int) -> FinCommRing:
    """(Z/n)[t]/(t^2, (n/d) t): basis 1 of order n and t of order d | n."""
    if n % d:
        raise InvalidRing("t-order must divide the characteristic")
    return FinCommRing((n, d), ((1, 0), (0, 1), (0, 0)), (1, 0),
                       name=f"Z/{n}Z[t]/(t^2,{n // d}t)")


def nilpotent_extension(B: FinCommRing) -> FinCommRing:
    """B[t]/(t^2): doubles the basis with a square-zero copy."""
    r = B.rank()
    orders = B.basis_orders + B.basis_orders
    mult = []
    for i in range(2 * r):
        for j in range(i, 2 * r):
            bi, ti = i % r, i // r
            bj, tj = j % r, j // r
            if ti + tj >= 2:
                mult.append((0,) * (2 * r))
            else:
                c = B.constant(bi, bj)
                vec = [0] * (2 * r)
                for m, v in enumerate(c):
                    vec[m + (ti + tj) * r] = v
                mult.append(tuple(vec))
    one = B.one + (0,) * r
    return FinCommRing(orders, tuple(mult), one,
                       name=f"{B.name}[t]/(t^2)" if B.name else "")


def unitalization(N: RadicalRing, c: int, name: str = "") -> FinCommRing:
    """Z/p^c . 1 + N, the radical ring N extended with an identity.

    Needs exponent(N) | p^c so that the characteristic kills N.
    """
    p = N.p
    if N.exponents and c < max(N.exponents):
        raise InvalidRing("characteristic too small for the radical part")
    r = N.rank()
    orders = (p ** c,) + N.orders()
    mult = []
    for i in range(r + 1):
        for j in range(i, r + 1):
            if i == 0 and j == 0:
                mult.append((1,) + (0,) * r)
            elif i == 0:
                mult.append(tuple(int(m == j) for m in range(r + 1)))
            else:
                mult.append((0,) + N.constant(i - 1, j - 1))
    return FinCommRing(orders, tuple(mult), (1,) + (0,) * r,
                       name=name or f"Z/{p ** c}Z+N[{N.order()}]")


def product_ring(A: FinCommRing, B: FinCommRing) -> FinCommRing:
    ra, rb = A.rank(), B.rank()
    orders = A.basis_orders + B.basis_orders
    mult = []
    for i in range(ra + rb):
        for j in range(i, ra + rb):
            vec = [0] * (ra + rb)
            if i < ra and j < ra:
                for m, v in enumerate(A.constant(i, j)):
                    vec[m] = v
            elif i >= ra and j >= ra:
                for m, v in enumerate(B.constant(i - ra, j - ra)):
                    vec[ra + m] = v
            mult.append(tuple(vec))
    one = A.one + B.one
    name = f"{A.name} x {B.name}" if A.name and B.name else ""
    return FinCommRing(orders, tuple(mult), one, name=name)


# ---------------------------------------------------------------------------
# the verification corpus


def build_corpus() -> list[FinCommRing]:
    """The golden corpus: unitalizations of the small radical enumeration
    plus stock families (Z/n, F_q, Galois/quotient constructions)."""
    from .radical import enumerate_radical_rings
    out: list[FinCommRing] = []
    for n in range(2, 17):
        out.append(zn_ring(n))
    for n in (25, 27, 32):
        out.append(zn_ring(n))
    for q in (4, 8, 9, 16, 25, 27):
        out.append(field_ring(q))
    out.append(galois_ring(2, 2, 4))     # GR(4,4): local of residue degree 2
    out.append(galois_ring(3, 2, 9))     # GR(9,9)
    out.append(nilpotent_extension(field_ring(4)))   # F_4[t]/(t^2)
    out.append(zn_with_nilpotent(4, 2))  # Z/4[t]/(t^2, 2t)
    out.append(zn_with_nilpotent(8, 2))
    out.append(zn_with_nilpotent(9, 3))
    out.append(product_ring(zn_ring(4), field_ring(4)))
    out.append(product_ring(zn_ring(3), zn_ring(8)))
    for k in (1, 2, 3):
        for idx, N in enumerate(enumerate_radical_rings(2, k)):
            exp = max(N.exponents) if N.exponents else 1
            for c in range(exp, 5 - k):
                named = RadicalRing(N.p, N.exponents, N.mult, name=f"N{2 ** k}.{idx}")
                out.append(unitalization(named, c,
                                         name=f"Z/{2 ** c}Z+N{2 ** k}.{idx}"))
    for idx, N in enumerate(enumerate_radical_rings(3, 1)):
        named = RadicalRing(N.p, N.exponents, N.mult, name=f"N3.{idx}")
        out.append(unitalization(named, 1, name=f"Z/3Z+N3.{idx}"))
    return out
