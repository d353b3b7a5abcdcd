"""Canonical forms, normal forms, and structure recovery.

The cokernel oracle here is deliberately independent of the Smith normal
form path: lattice membership is decided by Fraction-based linear solves
and the group structure is reconstructed from an element-order census.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from fuchs.abelian import (FgAbGroup, FinAbGroup, NotAPGroup,
                           abelian_structure, epsilon, format_group,
                           group_from_relations, hermite_normal_form,
                           is_isomorphic, is_lambda_small,
                           lambda_power_decompose, parse_group, prufer_rank,
                           rank_over_q, smith_normal_form,
                           solve_integer_system)


def G(*orders):
    return FinAbGroup.from_orders(orders)


class TestCanonicalForm:
    def test_crt_merge(self):
        assert G(6) == G(2, 3)
        assert G(600) == G(8, 3, 25)
        assert G(4) != G(2, 2)

    def test_trivial(self):
        assert G().is_trivial()
        assert G(1, 1).is_trivial()

    def test_orders_and_exponent(self):
        assert G(4, 6).order() == 24
        assert G(4, 6).exponent() == 12
        assert G(2, 3).invariant_factors() == (6,)
        assert G(2, 4, 8, 3, 9, 5).invariant_factors() == (2, 12, 360)

    @given(st.lists(st.integers(2, 64), min_size=0, max_size=6),
           st.randoms())
    @settings(max_examples=120)
    def test_canonicalization_is_shuffle_invariant(self, orders, rng):
        shuffled = list(orders)
        rng.shuffle(shuffled)
        assert G(*orders) == G(*shuffled)

    @given(st.lists(st.integers(2, 48), min_size=0, max_size=5))
    def test_crt_split_invariance(self, orders):
        # replacing any order by its prime-power parts is a no-op
        from fuchs.numtheory import factorize
        split = []
        for n in orders:
            split.extend(p ** e for p, e in factorize(n).pairs)
        assert G(*orders) == G(*split)

    def test_isomorphism_is_equality(self):
        assert is_isomorphic(G(2, 3), G(6))
        assert not is_isomorphic(G(4), G(2, 2))
        assert is_isomorphic(G(), G())


class TestGroupLiterals:
    def test_parse_examples(self):
        got = parse_group("Z/4Z x Z/8Z x Z^2")
        assert got == FgAbGroup(G(4, 8), 2)
        assert parse_group("z/6z X Z") == FgAbGroup(G(6), 1)
        assert parse_group("1") == FgAbGroup(G(), 0)
        assert parse_group("Z^3") == FgAbGroup(G(), 3)

    def test_parse_rejects_junk(self):
        for bad in ("", "Z/xZ", "Q/4Z", "Z/4Z + Z"):
            with pytest.raises(ValueError):
                parse_group(bad)

    @given(st.lists(st.integers(2, 99), max_size=4), st.integers(0, 5))
    def test_round_trip(self, orders, rank):
        grp = FgAbGroup(G(*orders), rank)
        assert parse_group(format_group(grp)) == grp


class TestPruferRank:
    def test_examples(self):
        assert prufer_rank(G(), 3) == 0
        assert prufer_rank(G(5, 5, 25), 5) == 3
        assert prufer_rank(G(8, 41), 2) == 1

    def test_matches_socle_size(self):
        # rank = log_p |{x : p x = 0}| by element enumeration, |G| <= 2^8
        rng = random.Random(7)
        for _ in range(40):
            orders = []
            while prod(orders) * 2 <= 2 ** 8 and rng.random() < 0.8:
                orders.append(rng.choice([2, 3, 4, 5, 8, 9, 16, 25, 27]))
            grp = G(*orders)
            if grp.order() > 2 ** 8:
                continue
            flat = grp.cyclic_orders()
            for p in set(grp.primes()) | {2, 3}:
                socle = sum(
                    1 for x in iproduct(*(range(n) for n in flat))
                    if all((p * c) % n == 0 for c, n in zip(x, flat)))
                rank = 0
                while p ** rank < socle:
                    rank += 1
                assert p ** rank == socle
                assert prufer_rank(grp, p) == rank


class TestLambdaTools:
    def test_small_examples(self):
        assert is_lambda_small(G(9), 3, 1)
        assert is_lambda_small(G(5, 5, 25), 5, 2)
        assert not is_lambda_small(G(3, 3), 3, 1)

    def test_small_needs_p_group(self):
        with pytest.raises(NotAPGroup):
            is_lambda_small(G(6), 2, 1)

    def test_power_decompose(self):
        V = lambda_power_decompose(G(7, 7, 7, 7, 49, 49), 2)
        assert V == G(7, 7, 49)
        assert lambda_power_decompose(G(5), 2) is None
        any_g = G(4, 9, 5)
        assert lambda_power_decompose(any_g, 1) == any_g

    @given(st.lists(st.sampled_from([3, 9, 27]), min_size=1, max_size=4),
           st.integers(1, 4))
    def test_power_round_trip(self, orders, lam):
        V = G(*orders)
        P = V.power(lam)
        got = lambda_power_decompose(P, lam)
        assert got is not None and got.power(lam) == P


class TestSylowAndEpsilon:
    def test_sylow(self):
        assert G(600).sylow(5) == G(25)
        assert G(600).sylow(7).is_trivial()
        assert G(5, 5, 600).sylow(5) == G(5, 5, 25)

    def test_epsilon(self):
        assert epsilon(G(4, 8)) == 2
        assert epsilon(G(2, 4, 8)) == 1
        assert epsilon(G(9)) is None  # distinct tag, never 0
        assert epsilon(FgAbGroup(G(2), 3)) == 1


def brute_cokernel(rows, n):
    """Independent oracle: structure of Z^n / rowspan via Fraction-based
    lattice membership and an element-order census (full-rank case)."""
    det_rank = rank_over_q(rows)
    assert det_rank == n, "oracle only handles finite cokernels"

    def in_lattice(v):
        # solve x * rows = v over Q, check integrality
        m = [[Fraction(rows[i][j]) for i in range(len(rows))] + [Fraction(v[j])]
             for j in range(n)]
        piv = []
        r = 0
        for c in range(len(rows)):
            src = next((i for i in range(r, n) if m[i][c]), None)
            if src is None:
                continue
            m[r], m[src] = m[src], m[r]
            inv = 1 / m[r][c]
            m[r] = [a * inv for a in m[r]]
            for i in range(n):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            piv.append(c)
            r += 1
        for i in range(r, n):
            if m[i][-1]:
                return False
        sol = {}
        for i, c in enumerate(piv):
            sol[c] = m[i][-1]
        return all(sol.get(c, Fraction(0)).denominator == 1
                   for c in range(len(rows)))

    d = 1
    for i in range(n):
        d *= sum(abs(x) for x in rows[i]) + 1
    # coset representatives by bounded BFS with pairwise membership dedup
    reps = [(0,) * n]
    frontier = [(0,) * n]
    while frontier:
        v = frontier.pop()
        for i in range(n):
            for step in (1, -1):
                w = list(v)
                w[i] += step
                w = tuple(w)
                if max(abs(c) for c in w) > 12:
                    continue
                if any(in_lattice([a - b for a, b in zip(w, r)]) for r in reps):
                    continue
                reps.append(w)
                frontier.append(w)
    census = {}
    for v in reps:
        k = 1
        while not in_lattice([k * c for c in v]):
            k += 1
        census[k] = census.get(k, 0) + 1
    # rebuild the group from order counts, prime by prime
    total = len(reps)
    out = FinAbGroup.trivial()
    from fuchs.numtheory import factorize
    for p, vmax in factorize(total).pairs:
        # s_k = #solutions of p^k x = 0; the ratios give the exponent counts
        s = [1]
        k = 1
        while s[-1] < p ** vmax:
            pk = p ** k
            s.append(sum(cnt for order, cnt in census.items() if pk % order == 0))
            k += 1
        deltas = []
        for i in range(1, len(s)):
            ratio = s[i] // s[i - 1]
            assert s[i] % s[i - 1] == 0
            e = 0
            while p ** e < ratio:
                e += 1
            assert p ** e == ratio
            deltas.append(e)
        exps = []
        for k, _ in enumerate(deltas):
            nxt = deltas[k + 1] if k + 1 < len(deltas) else 0
            exps.extend([k + 1] * (deltas[k] - nxt))
        out = out * FinAbGroup.from_orders([p ** e for e in exps])
    return out


class TestGroupFromRelations:
    def test_spec_examples(self):
        got = group_from_relations([[2, 0], [0, 0]], 2)
        assert got == FgAbGroup(G(2), 1)
        got = group_from_relations([[2, 1], [0, 4]], 2)
        assert got == FgAbGroup(G(8), 0)
        assert group_from_relations([], 3) == FgAbGroup(G(), 3)

    def test_against_brute_force(self):
        rng = random.Random(13)
        tried = 0
        while tried < 25:
            n = rng.choice([1, 2, 3])
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            if rank_over_q(rows) != n:
                continue
            size = abs(_det(rows))
            if not 1 <= size <= 60:
                continue
            tried += 1
            expected = brute_cokernel(rows, n)
            got = group_from_relations(rows, n)
            assert got.free_rank == 0
            assert got.torsion == expected, (rows, str(got.torsion), str(expected))

    def test_free_rank_against_rational_rank(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.choice([1, 2, 3])
            nrows = rng.choice([0, 1, 2, 3])
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(nrows)]
            got = group_from_relations(rows, n)
            assert got.free_rank == n - rank_over_q(rows) if rows else n


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B)))
             for j in range(len(B[0]))] for i in range(len(A))]


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    out = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        out += (-1) ** j * rows[0][j] * _det(minor)
    return out


class TestNormalForms:
    def test_snf_examples(self):
        assert smith_normal_form([[2, 1], [0, 4]]) == [1, 8]
        # invariant check: 300 = det, gcd of entries 1, gcd of 2x2 minors 10
        assert smith_normal_form([[12, 6, 4], [3, 9, 6], [2, 16, 14]]) == [1, 10, 30]

    def test_snf_transforms(self):
        rng = random.Random(3)
        for _ in range(40):
            nr, nc = rng.randint(1, 4), rng.randint(1, 4)
            A = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
            diag, U, V = smith_normal_form(A, want_transforms=True)
            prod_m = _matmul(_matmul(U, A), V)
            for i in range(nr):
                for j in range(nc):
                    want = diag[i] if i == j and i < len(diag) else 0
                    assert prod_m[i][j] == want
            for i in range(len(diag) - 1):
                if diag[i]:
                    assert diag[i + 1] % diag[i] == 0

    def test_solver(self):
        assert solve_integer_system([[2, 0], [0, 3]], [4, 9]) == [2, 3]
        assert solve_integer_system([[2]], [3]) is None

    def test_hnf_is_lattice_basis(self):
        rows = [[4, 0], [0, 4], [2, 2]]
        h = hermite_normal_form(rows)
        assert h == [[2, 2], [0, 4]]


class TestBlackBoxStructure:
    def test_cyclic(self):
        got = abelian_structure(list(range(12)), lambda a, b: (a + b) % 12, 0)
        assert got == G(12)

    def test_mixed(self):
        el = list(iproduct(range(2), range(4), range(3)))

        def op(a, b):
            return tuple((x + y) % m for x, y, m in zip(a, b, (2, 4, 3)))

        assert abelian_structure(el, op, (0, 0, 0)) == G(2, 4, 3)

    def test_multiplicative(self):
        # (Z/35)* = Z/4 x Z/6
        el = [x for x in range(35) if x % 5 and x % 7]
        got = abelian_structure(el, lambda a, b: a * b % 35, 1)
        assert got == G(4, 3, 2)
