"""Finite commutative radical rings as explicit structure-constant objects.

A radical ring here is a finite commutative nilpotent ring of prime-power
order: additive group (Z/p^e1) x ... x (Z/p^er), multiplication given by
structure constants.  The circle operation x o y = x + y + xy turns the
underlying set into the adjoint group, isomorphic to 1 + N inside any
unital overring.

The enumeration below produces one representative per isomorphism class at
desk scale and is the oracle used to test the additive-vs-adjoint theory:
for odd p every class of Prüfer rank < p - 1 has isomorphic additive and
adjoint groups, while p = 2 exhibits genuine mismatches (2Z/8Z being the
smallest).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from math import prod

from .abelian import FinAbGroup, abelian_structure, pgroup_basis, prufer_rank
from .caps import RADICAL_ENUM_CAP, oracle_cap
from . import presentation


class InvalidRing(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class WrongOrder(ValueError):
    pass


@dataclass(frozen=True)
class RadicalRing:
    """Structure constants of a commutative nilpotent ring of order p^k.

    ``exponents`` are the additive orders' exponents (non-increasing), so
    basis element i has additive order p**exponents[i].  ``mult[(i, j)]``
    for i <= j is the coordinate vector of x_i * x_j.
    """

    p: int
    exponents: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]  # flattened over pairs (i, j), i <= j
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_orders", tuple(self.p ** e for e in self.exponents))
        if len(self.mult) != len(self.pairs()):
            raise InvalidRing("structure constant count does not match basis")
        validate_radical(self)

    # -- layout helpers ------------------------------------------------------

    def rank(self) -> int:
        return len(self.exponents)

    def pairs(self) -> list[tuple[int, int]]:
        r = len(self.exponents)
        return [(i, j) for i in range(r) for j in range(i, r)]

    def orders(self) -> tuple[int, ...]:
        return self._orders

    def order(self) -> int:
        return prod(self._orders)

    def constant(self, i: int, j: int) -> tuple[int, ...]:
        if i > j:
            i, j = j, i
        r = len(self.exponents)
        idx = i * r - i * (i - 1) // 2 + (j - i)
        return self.mult[idx]

    # -- element arithmetic ---------------------------------------------------

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.exponents)

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self._orders))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self._orders))

    def scale(self, c: int, x):
        return tuple((c * a) % n for a, n in zip(x, self._orders))

    def mul(self, x, y):
        acc = [0] * len(self.exponents)
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
        return tuple(v % n for v, n in zip(acc, self._orders))

    def circle(self, x, y):
        """x o y = x + y + xy, the adjoint group operation."""
        return self.add(self.add(x, y), self.mul(x, y))

    def elements(self):
        return iproduct(*(range(n) for n in self._orders))

    # -- groups ---------------------------------------------------------------

    def additive_group(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self._orders)

    def adjoint_group(self) -> FinAbGroup:
        """Isomorphism type of (N, o), recovered from the elements."""
        return abelian_structure(list(self.elements()), self.circle, self.zero())

    # -- text format ----------------------------------------------------------

    def to_presentation(self) -> str:
        table = {}
        for i, j in self.pairs():
            table[(i + 1, j + 1)] = self.constant(i, j)
        return presentation.format_ring_document(
            "radical", self.orders(), table, prime=self.p, name=self.name or None)

    @classmethod
    def from_presentation(cls, text: str) -> "RadicalRing":
        doc = presentation.parse_ring_document(text)
        if doc["kind"] != "radical":
            raise InvalidRing("not a radical-ring document")
        p = doc["prime"]
        orders = doc["basis_orders"]
        exponents = []
        for n in orders:
            e = 0
            m = n
            while m % p == 0:
                m //= p
                e += 1
            if m != 1 or e < 1:
                raise InvalidRing(f"basis order {n} is not a power of {p}")
            exponents.append(e)
        r = len(orders)
        mult = tuple(doc["mult"][(i + 1, j + 1)]
                     for i in range(r) for j in range(i, r))
        return cls(p, tuple(exponents), mult, name=doc.get("name", ""))

    def __str__(self):
        label = self.name or "radical ring"
        return f"{label} of order {self.order()} ({self.additive_group()})"


def circle(N: RadicalRing, x, y):
    return N.circle(x, y)


def adjoint_group(N: RadicalRing) -> FinAbGroup:
    return N.adjoint_group()


# ---------------------------------------------------------------------------
# validation


def validate_radical(N: RadicalRing) -> None:
    p = N.p
    r = len(N.exponents)
    orders = N.orders()
    if any(N.exponents[i] < N.exponents[i + 1] for i in range(r - 1)):
        raise InvalidRing("exponents must be non-increasing")
    if any(e < 1 for e in N.exponents):
        raise InvalidRing("exponents must be positive")
    for (i, j) in N.pairs():
        c = N.constant(i, j)
        if len(c) != r or any(not (0 <= v < n) for v, n in zip(c, orders)):
            raise InvalidRing(f"constant ({i},{j}) out of range")
        # well-definedness: p^min(ei, ej) kills the product
        kill = p ** min(N.exponents[i], N.exponents[j])
        for m, v in enumerate(c):
            if (kill * v) % orders[m]:
                raise InvalidRing(f"bilinearity fails at ({i},{j}) coord {m}")
    basis = [tuple(int(m == i) for m in range(r)) for i in range(r)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                left = N.mul(N.mul(basis[i], basis[j]), basis[k])
                right = N.mul(basis[i], N.mul(basis[j], basis[k]))
                if left != right:
                    raise InvalidRing(f"associativity fails at ({i},{j},{k})")
    if not _is_nilpotent(N):
        raise InvalidRing("ring is not nilpotent")


def _span(N: RadicalRing, gens) -> frozenset:
    seen = {N.zero()}
    frontier = [N.zero()]
    gens = [g for g in gens if any(g)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = N.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def _is_nilpotent(N: RadicalRing) -> bool:
    r = len(N.exponents)
    basis = [tuple(int(m == i) for m in range(r)) for i in range(r)]
    gens = list(basis)
    bound = 1 + sum(N.exponents)
    for _ in range(bound):
        gens = [N.mul(b, g) for b in basis for g in gens]
        gens = sorted({g for g in gens if any(g)})
        if not gens:
            return True
    return False


def power_ideal_chain(N: RadicalRing) -> list[frozenset]:
    """[N^1, N^2, ...] as element sets, down to (and excluding) zero."""
    r = len(N.exponents)
    basis = [tuple(int(m == i) for m in range(r)) for i in range(r)]
    chain = []
    gens = list(basis)
    while True:
        span = _span(N, gens)
        if len(span) == 1:
            break
        chain.append(span)
        gens = sorted({N.mul(b, g) for b in basis for g in gens})
    return chain


# ---------------------------------------------------------------------------
# enumeration up to isomorphism


def _partitions(k: int):
    """Non-increasing partitions of k."""
    def rec(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, maxpart), 0, -1):
            for tail in rec(rest - part, part):
                yield (part,) + tail
    return list(rec(k, k))


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    from .numtheory import factorize
    fac = [q for q, _ in factorize(p - 1).pairs]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise AssertionError


def _candidate_tables_elementary(p: int, r: int):
    """Flag-adapted candidate tables for the elementary type (1,)*r.

    Candidates are grouped by the power-filtration dimension vector d:
    basis position m carries weight w_m, products of weights (a, b) may only
    touch positions of weight >= a + b, and the filtration must be exact
    (N^i equals the span of the weight->=i positions).  Every isomorphism
    class admits such an adapted basis, and isomorphisms between adapted
    tables preserve the standard flag, so per-d orbit closure under the
    flag-preserving generators partitions candidates into classes.
    """
    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for tail in compositions(total - first, parts - 1):
                yield (first,) + tail

    out = []
    for c in range(1, r + 1):
        for d in compositions(r, c):
            weights = []
            for w, dim in enumerate(d, start=1):
                weights.extend([w] * dim)
            pairs = [(i, j) for i in range(r) for j in range(i, r)]
            slots = []
            for (i, j) in pairs:
                wsum = weights[i] + weights[j]
                free = [m for m in range(r) if weights[m] >= wsum]
                slots.append(free)
            tables = []
            for assignment in iproduct(*(iproduct(range(p), repeat=len(s)) for s in slots)):
                table = []
                for (vals, free) in zip(assignment, slots):
                    vec = [0] * r
                    for m, v in zip(free, vals):
                        vec[m] = v
                    table.append(tuple(vec))
                tables.append(tuple(table))
            out.append((d, weights, tables))
    return out


def _filtration_exact(N: RadicalRing, weights) -> bool:
    """Check N^i == span of positions with weight >= i, for all i."""
    r = len(N.exponents)
    chain = power_ideal_chain(N)
    maxw = max(weights)
    if len(chain) != maxw:
        return False
    for i in range(2, maxw + 1):
        expect = [m for m in range(r) if weights[m] >= i]
        span = chain[i - 1]
        if len(span) != N.p ** len(expect):
            return False
        base = [tuple(int(t == m) for t in range(r)) for m in expect]
        if _span(N, base) != span:
            return False
    return True


def _flag_generators(p: int, weights):
    """Generators of the flag-preserving automorphisms, as basis images."""
    r = len(weights)
    gens = []

    def as_map(images):
        return tuple(tuple(img) for img in images)

    ident = [[int(i == j) for i in range(r)] for j in range(r)]
    g = _primitive_root(p)
    blocks: dict[int, list[int]] = {}
    for m, w in enumerate(weights):
        blocks.setdefault(w, []).append(m)
    for members in blocks.values():
        a = members[0]
        if p > 2:
            im = [row[:] for row in ident]
            im[a][a] = g
            gens.append(as_map(im))
        for b in members[1:]:
            im = [row[:] for row in ident]
            im[a], im[b] = im[b], im[a]
            gens.append(as_map(im))
        if len(members) > 1:
            b = members[1]
            im = [row[:] for row in ident]
            im[a][b] = 1  # x_a -> x_a + x_b
            gens.append(as_map(im))
    for m, w in enumerate(weights):
        for t, wt in enumerate(weights):
            if wt > w:
                im = [row[:] for row in ident]
                im[m][t] = 1
                gens.append(as_map(im))
    return gens


def _apply_automorphism(p, exponents, table, images):
    """Transport a structure-constant table along an additive automorphism.

    ``images[j]`` is the coordinate vector of the image of basis vector j.
    Returns the table of the isomorphic ring in which the new basis element
    i multiplies as the old images did.
    """
    r = len(exponents)
    orders = [p ** e for e in exponents]
    scratch = RadicalRing.__new__(RadicalRing)
    object.__setattr__(scratch, "p", p)
    object.__setattr__(scratch, "exponents", tuple(exponents))
    object.__setattr__(scratch, "mult", tuple(table))
    object.__setattr__(scratch, "_orders", tuple(orders))
    object.__setattr__(scratch, "name", "")

    def phi(v):
        acc = [0] * r
        for j, a in enumerate(v):
            if a:
                for m, b in enumerate(images[j]):
                    acc[m] += a * b
        return tuple(x % n for x, n in zip(acc, orders))

    inv = {}
    for v in iproduct(*(range(n) for n in orders)):
        inv[phi(v)] = v
    if len(inv) != prod(orders):
        raise InvalidRing("not an automorphism")
    out = []
    for i in range(r):
        for j in range(i, r):
            prod_img = scratch.mul(images[i], images[j])
            out.append(inv[prod_img])
    return tuple(out)


def _all_automorphisms(p: int, exponents):
    """All additive automorphisms of the type, as basis-image tuples."""
    r = len(exponents)
    orders = [p ** e for e in exponents]
    all_elems = list(iproduct(*(range(n) for n in orders)))
    by_max_order = {}
    for e in sorted(set(exponents)):
        killer = p ** e
        by_max_order[e] = [v for v in all_elems
                           if all((killer * a) % n == 0 for a, n in zip(v, orders))]
    total = prod(orders)
    out = []
    for images in iproduct(*(by_max_order[e] for e in exponents)):
        seen = set()
        ok = True
        for v in all_elems:
            acc = [0] * r
            for j, a in enumerate(v):
                if a:
                    for m, b in enumerate(images[j]):
                        acc[m] += a * b
            w = tuple(x % n for x, n in zip(acc, orders))
            if w in seen:
                ok = False
                break
            seen.add(w)
        if ok and len(seen) == total:
            out.append(tuple(tuple(im) for im in images))
    return out


def _valid_table(p, exponents, table) -> RadicalRing | None:
    try:
        return RadicalRing(p, tuple(exponents), tuple(table))
    except InvalidRing:
        return None


def _enumerate_type_elementary(p: int, r: int) -> list[RadicalRing]:
    exponents = (1,) * r
    classes = []
    for d, weights, tables in _candidate_tables_elementary(p, r):
        survivors = []
        for table in tables:
            ring = _valid_table(p, exponents, table)
            if ring is not None and _filtration_exact(ring, weights):
                survivors.append(table)
        gens = _flag_generators(p, weights)
        survivor_set = set(survivors)
        visited = set()
        for table in sorted(survivors):
            if table in visited:
                continue
            orbit = {table}
            frontier = [table]
            while frontier:
                t = frontier.pop()
                for g in gens:
                    t2 = _apply_automorphism(p, exponents, t, g)
                    if t2 not in orbit:
                        assert t2 in survivor_set, "flag orbit left the candidate space"
                        orbit.add(t2)
                        frontier.append(t2)
            visited |= orbit
            classes.append(RadicalRing(p, exponents, min(orbit)))
    return classes


def _mixed_type_candidates(p, exponents):
    r = len(exponents)
    orders = [p ** e for e in exponents]
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    slot_values = []
    for (i, j) in pairs:
        lo = min(exponents[i], exponents[j])
        per_coord = []
        for m in range(r):
            step = p ** max(0, exponents[m] - lo)
            per_coord.append(range(0, orders[m], step))
        slot_values.append(per_coord)
    return pairs, slot_values


def _enumerate_type_mixed(p: int, exponents) -> list[RadicalRing]:
    r = len(exponents)
    _, slot_values = _mixed_type_candidates(p, exponents)
    slot_opts = []
    for per_coord in slot_values:
        opts = []
        for vec in iproduct(*per_coord):
            opts.append((vec, tuple(v % p for v in vec)))
        slot_opts.append(opts)

    # DFS over pairs, pruning as soon as the mod-p span of the products
    # saturates F_p^r: nilpotency forces N^2 + pN to be a proper subgroup,
    # so any saturated prefix cannot extend to a valid table.
    survivors = []

    def dfs(idx, chosen, basis_rows):
        if idx == len(slot_opts):
            survivors.append(tuple(chosen))
            return
        for vec, mask in slot_opts[idx]:
            nb = _reduce_into_span(basis_rows, mask, p, r)
            if nb is None:  # saturated
                continue
            chosen.append(vec)
            dfs(idx + 1, chosen, nb)
            chosen.pop()

    dfs(0, [], [])
    classes = []
    valid = [t for t in survivors if _valid_table(p, exponents, t) is not None]
    autos = None
    visited = set()
    for table in sorted(valid):
        if table in visited:
            continue
        if autos is None:
            autos = _all_automorphisms(p, exponents)
        orbit = {_apply_automorphism(p, exponents, table, a) for a in autos}
        visited |= orbit
        classes.append(RadicalRing(p, tuple(exponents), min(orbit)))
    return classes


def _reduce_into_span(basis_rows, vec, p, r):
    """Add a mod-p vector to a row-echelon span; None when F_p^r saturates."""
    v = list(vec)
    for b in basis_rows:
        lead = next(m for m in range(r) if b[m])
        if v[lead]:
            c = v[lead] * pow(b[lead], -1, p) % p
            v = [(x - c * y) % p for x, y in zip(v, b)]
    if not any(v):
        return basis_rows
    if len(basis_rows) + 1 == r:
        return None
    return basis_rows + [v]


def _enumerate_partition(arg):
    p, parts = arg
    if all(e == 1 for e in parts) and len(parts) > 1:
        return _enumerate_type_elementary(p, len(parts))
    return _enumerate_type_mixed(p, parts)


@lru_cache(maxsize=None)
def _enumerate_cached(p: int, k: int) -> tuple[RadicalRing, ...]:
    out = []
    for parts in _partitions(k):
        out.extend(_enumerate_partition((p, parts)))
    out.sort(key=lambda N: (N.exponents, N.mult))
    return tuple(out)


def enumerate_radical_rings(p: int, k: int, cap: int | None = None,
                            jobs: int = 1) -> list[RadicalRing]:
    """One representative per isomorphism class of commutative radical rings
    of order p**k.  ``jobs > 1`` fans the additive types out to worker
    processes; the merged output is sorted either way, so it is
    deterministic.

    >>> len(enumerate_radical_rings(3, 1))
    1
    >>> len(enumerate_radical_rings(2, 2))
    4
    """
    if cap is None:
        cap = oracle_cap(RADICAL_ENUM_CAP)
    if p ** k > cap:
        raise CapExceeded(f"order {p ** k} exceeds the enumeration cap {cap}")
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_enumerate_partition,
                              [(p, parts) for parts in _partitions(k)])
        out = [N for chunk in chunks for N in chunk]
        out.sort(key=lambda N: (N.exponents, N.mult))
        return out
    return list(_enumerate_cached(p, k))


# ---------------------------------------------------------------------------
# theorem oracles


@dataclass
class SmallTheoremReport:
    """Per-class comparison of additive and adjoint group structure."""

    p: int
    k: int
    entries: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[dict]:
        """Small classes (Prank < p-1) whose adjoint differs: must be empty."""
        return [e for e in self.entries if e["small"] and not e["isomorphic"]]

    @property
    def mismatches(self) -> list[dict]:
        """All classes with additive and adjoint groups non-isomorphic."""
        return [e for e in self.entries if not e["isomorphic"]]


def check_small_theorem(p: int, k: int, cap: int | None = None) -> SmallTheoremReport:
    """Run the additive-vs-adjoint comparison over a full enumeration.

    For odd p, every class with Prüfer rank < p - 1 must have isomorphic
    additive and adjoint groups; no class can satisfy that rank bound for
    p = 2, but the mismatching classes are reported so the p = 2 gap is
    visible (2Z/8Z is the classic example).
    """
    report = SmallTheoremReport(p, k)
    for ring in enumerate_radical_rings(p, k, cap):
        additive = ring.additive_group()
        adjoint = ring.adjoint_group()
        rank = prufer_rank(additive, p)
        report.entries.append({
            "ring": ring,
            "additive": additive,
            "adjoint": adjoint,
            "prank": rank,
            "small": rank < p - 1,
            "isomorphic": additive == adjoint,
        })
    return report


def check_byott(N: RadicalRing) -> bool:
    """Cyclicity implication on a 2-power radical ring of order >= 8:
    if the adjoint group is cyclic then so is the additive group."""
    if N.p != 2 or N.order() < 8:
        raise WrongOrder("requires order 2^v with v >= 3")
    if not N.adjoint_group().is_cyclic():
        return True
    return N.additive_group().is_cyclic()


# ---------------------------------------------------------------------------
# extraction from a black-box multiplication (used by finring and tnlab)


def radical_ring_from_mult(elements, add, zero, mul, p: int, name: str = "") -> RadicalRing:
    """Build a RadicalRing from explicit elements of an ambient ring.

    ``elements`` must be the full underlying set (a p-group under ``add``)
    closed under ``mul``; a basis is peeled off and the structure constants
    are re-expressed in basis coordinates.
    """
    elements = sorted(set(elements))
    if len(elements) == 1:
        return RadicalRing(p, (), (), name=name)

    basis = pgroup_basis(elements, add, zero, p)
    basis.sort(key=lambda bo: -bo[1])
    orders = [o for _, o in basis]
    exponents = []
    for o in orders:
        e = 0
        while o > 1:
            o //= p
            e += 1
        exponents.append(e)
    coords = {}
    for combo in iproduct(*(range(o) for o in orders)):
        x = zero
        for c, (b, _) in zip(combo, basis):
            for _ in range(c):
                x = add(x, b)
        coords[x] = combo
    assert len(coords) == len(elements)
    mult = []
    r = len(basis)
    for i in range(r):
        for j in range(i, r):
            mult.append(coords[mul(basis[i][0], basis[j][0])])
    return RadicalRing(p, tuple(exponents), tuple(mult), name=name)
