"""Exact arithmetic on finite and finitely generated abelian groups.

Groups are kept in a canonical prime-power form: a finite abelian group is
a sorted tuple of ``(p, e, mult)`` entries meaning ``(Z/p^e)^mult``.  Every
formula downstream (Prüfer ranks, lambda-power tests, Sylow decompositions)
is stated prime-locally, so this is the native representation; invariant
factors are available as a derived view.

The module also houses exact integer-matrix normal forms (Smith and
Hermite) used to recover group structure from relation matrices, plus
black-box structure recovery for a finite abelian group given only its
multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from math import gcd, prod


class NotAPGroup(ValueError):
    """Raised when an operation requires a p-group but gets mixed primes."""


# ---------------------------------------------------------------------------
# small factorization helper (self-contained; fuchs.numtheory has the full
# machinery, but abelian must not depend on it)

def _factor(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group as a canonical multiset of prime-power factors.

    ``factors`` is a tuple of ``(p, e, mult)`` triples, sorted by ``(p, e)``
    with no duplicate ``(p, e)`` keys; the trivial group is the empty tuple.

    >>> FinAbGroup.from_orders([6]) == FinAbGroup.from_orders([2, 3])
    True
    >>> FinAbGroup.from_orders([4]) == FinAbGroup.from_orders([2, 2])
    False
    """

    factors: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for p, e, mult in self.factors:
            if e < 1 or mult < 1:
                raise ValueError(f"bad factor (Z/{p}^{e})^{mult}")
            if _factor(p) != {p: 1}:
                raise ValueError(f"{p} is not prime")
            if (p, e) in seen:
                raise ValueError(f"duplicate factor key ({p}, {e})")
            seen.add((p, e))
        if list(self.factors) != sorted(self.factors):
            raise ValueError("factors not in canonical order")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_orders(cls, orders) -> "FinAbGroup":
        """Build from cyclic factor orders, CRT-splitting into prime powers."""
        counts: dict[tuple[int, int], int] = {}
        for n in orders:
            if n < 1:
                raise ValueError(f"bad cyclic order {n}")
            for p, e in _factor(n).items():
                counts[(p, e)] = counts.get((p, e), 0) + 1
        return cls(tuple((p, e, m) for (p, e), m in sorted(counts.items())))

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls.from_orders([n])

    # -- basic queries -----------------------------------------------------

    def is_trivial(self) -> bool:
        return not self.factors

    def order(self) -> int:
        return prod(p ** (e * m) for p, e, m in self.factors)

    def exponent(self) -> int:
        exp = 1
        for p, e, _ in self.factors:
            exp = exp * p ** e // gcd(exp, p ** e)
        return exp

    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({p for p, _, _ in self.factors}))

    def cyclic_orders(self) -> tuple[int, ...]:
        """All prime-power cyclic factor orders, with multiplicity."""
        out = []
        for p, e, m in self.factors:
            out.extend([p ** e] * m)
        return tuple(out)

    def invariant_factors(self) -> tuple[int, ...]:
        """Derived view: invariant factors d_1 | d_2 | ... (largest last)."""
        per_prime: dict[int, list[int]] = {}
        for p, e, m in self.factors:
            per_prime.setdefault(p, []).extend([p ** e] * m)
        cols = [sorted(v, reverse=True) for v in per_prime.values()]
        merged = [prod(t) for t in zip_longest(*cols, fillvalue=1)]
        return tuple(reversed(merged))

    def is_cyclic(self) -> bool:
        return all(m == 1 for _, _, m in self.factors) and (
            len({p for p, _, _ in self.factors}) == len(self.factors)
        )

    def direct_product(self, other: "FinAbGroup") -> "FinAbGroup":
        counts: dict[tuple[int, int], int] = {}
        for g in (self, other):
            for p, e, m in g.factors:
                counts[(p, e)] = counts.get((p, e), 0) + m
        return FinAbGroup(tuple((p, e, m) for (p, e), m in sorted(counts.items())))

    def __mul__(self, other: "FinAbGroup") -> "FinAbGroup":
        return self.direct_product(other)

    def power(self, k: int) -> "FinAbGroup":
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return FinAbGroup.trivial()
        return FinAbGroup(tuple((p, e, m * k) for p, e, m in self.factors))

    def __pow__(self, k: int) -> "FinAbGroup":
        return self.power(k)

    def sylow(self, p: int) -> "FinAbGroup":
        """The Sylow p-subgroup, in canonical form."""
        if _factor(p) != {p: 1}:
            raise ValueError(f"{p} is not prime")
        return FinAbGroup(tuple(f for f in self.factors if f[0] == p))

    def without_prime(self, p: int) -> "FinAbGroup":
        return FinAbGroup(tuple(f for f in self.factors if f[0] != p))

    def embeds_in(self, other: "FinAbGroup") -> bool:
        """Whether this group is (isomorphic to) a subgroup of ``other``.

        For abelian p-groups, H embeds in G iff the descending exponent
        lists satisfy h_i <= g_i termwise; primes are handled independently.
        """
        for p in set(self.primes()) | set(other.primes()):
            mine = sorted(self.sylow(p)._exponent_list(), reverse=True)
            theirs = sorted(other.sylow(p)._exponent_list(), reverse=True)
            if len(mine) > len(theirs):
                return False
            if any(a > b for a, b in zip(mine, theirs)):
                return False
        return True

    def _exponent_list(self) -> list[int]:
        out = []
        for _, e, m in self.factors:
            out.extend([e] * m)
        return out

    def __str__(self) -> str:
        return format_group(FgAbGroup(self, 0))


def prufer_rank(G: FinAbGroup, p: int) -> int:
    """Number of cyclic factors of the Sylow p-subgroup.

    >>> prufer_rank(FinAbGroup.from_orders([5, 5, 25]), 5)
    3
    """
    return sum(m for q, _, m in G.factors if q == p)


def is_lambda_small(G: FinAbGroup, p: int, lam: int) -> bool:
    """True iff the p-group G has Prüfer rank strictly below lam*(p-1)."""
    if any(q != p for q, _, _ in G.factors):
        raise NotAPGroup(f"group has a factor with prime != {p}")
    if lam < 1:
        raise ValueError("lambda must be positive")
    return prufer_rank(G, p) < lam * (p - 1)


def lambda_power_decompose(G: FinAbGroup, lam: int) -> FinAbGroup | None:
    """If G is isomorphic to V^lam, return V; otherwise None.

    >>> V = lambda_power_decompose(FinAbGroup.from_orders([7, 7, 7, 7, 49, 49]), 2)
    >>> V == FinAbGroup.from_orders([7, 7, 49])
    True
    """
    if lam < 1:
        raise ValueError("lambda must be positive")
    if lam == 1:
        return G
    if any(m % lam for _, _, m in G.factors):
        return None
    V = FinAbGroup(tuple((p, e, m // lam) for p, e, m in G.factors))
    assert V.power(lam) == G
    return V


def epsilon(G: "FinAbGroup | FgAbGroup") -> int | None:
    """Minimal k with a cyclic factor of order 2^k in the torsion part.

    Returns None when the Sylow 2-subgroup is trivial (a distinct tagged
    value, never 0, so callers cannot silently misuse the odd-order case).
    """
    tors = G.torsion if isinstance(G, FgAbGroup) else G
    twos = [e for p, e, _ in tors.factors if p == 2]
    return min(twos) if twos else None


def is_isomorphic(G: FinAbGroup, H: FinAbGroup) -> bool:
    return G == H


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group: torsion part plus a free rank."""

    torsion: FinAbGroup
    free_rank: int = 0

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    def __str__(self) -> str:
        return format_group(self)


# ---------------------------------------------------------------------------
# group literal grammar: Z/nZ factors and Z^r joined by 'x'

_FACTOR_RE = re.compile(r"^Z/(\d+)Z?$|^Z(?:\^(\d+))?$|^(1)$")


def parse_group(text: str) -> FgAbGroup:
    """Parse a group literal like ``Z/4Z x Z/8Z x Z^2``.

    Whitespace- and case-insensitive; ``Z`` means ``Z^1`` and ``1`` (or
    ``Z/1Z``) denotes a trivial factor.

    >>> parse_group("Z/4Z x Z/8Z x Z^2")
    FgAbGroup(torsion=FinAbGroup(factors=((2, 2, 1), (2, 3, 1))), free_rank=2)
    """
    squeezed = re.sub(r"\s+", "", text).upper()
    if not squeezed:
        raise ValueError("empty group literal")
    orders: list[int] = []
    rank = 0
    for piece in squeezed.split("X"):
        m = _FACTOR_RE.match(piece)
        if not m:
            raise ValueError(f"unrecognized group factor {piece!r}")
        if m.group(1) is not None:
            n = int(m.group(1))
            if n < 1:
                raise ValueError(f"bad cyclic order in {piece!r}")
            if n > 1:
                orders.append(n)
        elif m.group(3) is not None:
            pass  # literal '1', the trivial factor
        else:
            rank += int(m.group(2)) if m.group(2) else 1
    return FgAbGroup(FinAbGroup.from_orders(orders), rank)


def format_group(G: "FgAbGroup | FinAbGroup") -> str:
    """Canonical printer; round-trips through :func:`parse_group`."""
    if isinstance(G, FinAbGroup):
        G = FgAbGroup(G, 0)
    parts = [f"Z/{n}Z" for n in G.torsion.cyclic_orders()]
    if G.free_rank == 1:
        parts.append("Z")
    elif G.free_rank > 1:
        parts.append(f"Z^{G.free_rank}")
    return " x ".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# integer matrices: Smith and Hermite normal forms, exact over Z


def smith_normal_form(
    rows: list[list[int]], want_transforms: bool = False
):
    """Smith normal form of an integer matrix.

    Returns the diagonal entries ``d_1 | d_2 | ...`` (nonnegative), or
    ``(diag, U, V)`` with ``U * A * V = S`` when ``want_transforms`` is set.
    Pivoting picks the smallest nonzero absolute value with a deterministic
    tie-break (lowest row, then column), so outputs are reproducible.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in m:
            r[i] -= q * r[j]
        for r in V:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(nr, nc):
        # smallest |entry| pivot in the trailing block, lowest row then column
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # divisibility fix-up: pivot must divide the rest of the block
        stray = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t]:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            row_op(t, stray, -1)  # fold the offending row into row t, redo
            continue
        if m[t][t] < 0:
            m[t] = [-a for a in m[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    diag = [m[i][i] for i in range(min(nr, nc))]
    if want_transforms:
        return diag, U, V
    return diag


def group_from_relations(rows: list[list[int]], n_generators: int) -> FgAbGroup:
    """Structure of the cokernel Z^n / (row lattice of the relation matrix).

    >>> group_from_relations([[2, 1], [0, 4]], 2).torsion.cyclic_orders()
    (8,)
    >>> group_from_relations([], 3)
    FgAbGroup(torsion=FinAbGroup(factors=()), free_rank=3)
    """
    for r in rows:
        if len(r) != n_generators:
            raise ValueError("relation width does not match generator count")
    if not rows:
        return FgAbGroup(FinAbGroup.trivial(), n_generators)
    diag = smith_normal_form(rows)
    orders = [d for d in diag if d not in (0, 1)]
    rank = n_generators - sum(1 for d in diag if d != 0)
    return FgAbGroup(FinAbGroup.from_orders(orders), rank)


def hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF basis of the lattice spanned by integer row vectors.

    Rows of the result are a canonical basis (pivots positive, entries above
    a pivot reduced into [0, pivot)); zero rows are dropped.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    nc = len(m[0])
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i if piv is None or abs(m[i][c]) < abs(m[piv][c]) else piv
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        improved = True
        while improved:
            improved = False
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        improved = True
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r] if any(row)]


def rank_over_q(rows: list[list[int]]) -> int:
    """Rank of an integer matrix over the rationals (exact, Fraction-based)."""
    m = [[Fraction(a) for a in r] for r in rows]
    rank = 0
    nc = len(m[0]) if m else 0
    for c in range(nc):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [a * inv for a in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def solve_integer_system(A_rows: list[list[int]], target: list[int]) -> list[int] | None:
    """One integer solution x of A x = target, or None if unsolvable over Z."""
    diag, U, V = smith_normal_form(A_rows, want_transforms=True)
    n = len(A_rows[0]) if A_rows else 0
    t = [sum(U[i][k] * target[k] for k in range(len(target))) for i in range(len(U))]
    w = [0] * n
    for i, d in enumerate(diag):
        if d == 0:
            if t[i] != 0:
                return None
            continue
        if t[i] % d:
            return None
        w[i] = t[i] // d
    for i in range(len(diag), len(t)):
        if t[i] != 0:
            return None
    return [sum(V[i][j] * w[j] for j in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# black-box structure recovery


def abelian_structure(elements, op, identity) -> FinAbGroup:
    """Isomorphism type of a finite abelian group given by a multiplication.

    Works by splitting into Sylow parts (images of the power maps) and
    peeling a maximal-order cyclic summand off each part; element ordering
    is deterministic (sorted by repr key) so the recovery is reproducible.
    """
    elems = sorted(set(elements))
    n = len(elems)
    if n == 1:
        return FinAbGroup.trivial()

    def power(x, k):
        acc = identity
        base = x
        while k:
            if k & 1:
                acc = op(acc, base)
            base = op(base, base)
            k >>= 1
        return acc

    total = FinAbGroup.trivial()
    for p, v in sorted(_factor(n).items()):
        cof = n // p ** v
        part = sorted({power(x, cof) for x in elems})
        orders = _pgroup_peel(part, op, identity, p)
        total = total * FinAbGroup.from_orders(orders)
    assert total.order() == n
    return total


def _pgroup_peel(elems, op, identity, p) -> list[int]:
    """Cyclic decomposition orders of an abelian p-group, by peeling."""
    if len(elems) == 1:
        return []

    def order_of(x):
        o = 1
        y = x
        while y != identity:
            y = _op_pow(op, y, p, identity)
            o *= p
        return o

    def _op_pow(op_, x, k, e):
        acc = e
        for _ in range(k):
            acc = op_(acc, x)
        return acc

    best = max(elems, key=lambda x: (order_of(x), ))
    d = order_of(best)
    cyc = []
    y = identity
    for _ in range(d):
        cyc.append(y)
        y = op(y, best)
    cyc_set = set(cyc)
    # quotient by <best>: cosets labelled by a frozen canonical member
    coset_of = {}
    cosets = []
    for x in elems:
        if x in coset_of:
            continue
        members = []
        y = x
        for _ in range(d):
            members.append(y)
            y = op(y, best)
        label = min(members)
        for mbr in members:
            coset_of[mbr] = label
        cosets.append(label)
    if len(cosets) == 1:
        return [d]

    def qop(a, b):
        return coset_of[op(a, b)]

    sub_orders = _pgroup_peel(sorted(cosets), qop, coset_of[identity], p)
    # lift check is implicit: orders multiply to the group size
    assert d * prod(sub_orders) == len(elems)
    return [d] + sub_orders


def pgroup_basis(elems, op, identity, p):
    """Basis (element, order) pairs of an abelian p-group, black-box.

    The returned elements generate the group as a direct sum of the cyclic
    subgroups they span; quotient representatives are corrected so their
    orders match the quotient (the classical lifting step).
    """
    elems = sorted(set(elems))
    if len(elems) == 1:
        return []

    def order_of(x):
        o = 1
        y = x
        while y != identity:
            acc = identity
            for _ in range(p):
                acc = op(acc, y)
            y = acc
            o *= p
        return o

    def pw(x, k):
        acc = identity
        base = x
        while k:
            if k & 1:
                acc = op(acc, base)
            base = op(base, base)
            k >>= 1
        return acc

    g = max(elems, key=lambda x: (order_of(x), ))
    d = order_of(g)
    cyc = {}
    y = identity
    for i in range(d):
        cyc[y] = i
        y = op(y, g)

    coset_of = {}
    cosets = []
    for x in elems:
        if x in coset_of:
            continue
        members = []
        y = x
        for _ in range(d):
            members.append(y)
            y = op(y, g)
        label = min(members)
        for mbr in members:
            coset_of[mbr] = label
        cosets.append(label)
    if len(cosets) == 1:
        return [(g, d)]

    def qop(a, b):
        return coset_of[op(a, b)]

    qbasis = pgroup_basis(sorted(cosets), qop, coset_of[identity], p)
    out = [(g, d)]
    inv_g = pw(g, d - 1)
    for rep, f in qbasis:
        # rep^f lands in <g>; divide out to fix the order of the lift
        r = rep
        # find the member of rep's coset whose f-th power is identity
        t = pw(r, f)
        c = cyc[t]
        assert c % f == 0, "maximal-order peeling violated"
        shift = pw(inv_g, c // f)
        r = op(r, shift)
        assert pw(r, f) == identity
        out.append((r, f))
    assert prod(o for _, o in out) == len(elems)
    return out
