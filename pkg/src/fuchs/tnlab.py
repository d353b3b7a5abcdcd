"""Executable models of TN rings.

A model is A = Z[zeta_k]-algebra, free of finite rank on a power basis
{1, x, ..., x^{f-1}} plus a finite torsion part spanned by nilpotent
symbols, with the base root of unity acting on torsion coordinates through
an explicit matrix.  That is enough to reproduce the characteristic
examples: the torsion ideal, its adjoint group, the torsion units of the
model and of its torsion-free quotient B = A / N_tors, and whether the unit
sequence 1 -> 1+N -> A*_tors -> B*_tors -> 1 splits.

B*_tors is computed by embedding B into a product of cyclotomic rings, one
component per root of unity annihilating the generator relation.  The
embedding is injective but generally not surjective, so membership of a
candidate root-of-unity tuple is decided by an exact integer linear solve.
Roots of unity of Z[zeta_m] are exactly +-zeta_m^j, of order lcm(2, m): the
classical fact is hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import gcd, lcm, prod

from .abelian import (FinAbGroup, abelian_structure, format_group,
                      group_from_relations, hermite_normal_form,
                      smith_normal_form)
from .numtheory import (NotCoprime, cyclotomic_poly, factor_cyclo_mod,
                        factorize, hensel_lift_factor, mult_order)
from .radical import RadicalRing, radical_ring_from_mult
from . import presentation


class InvalidModel(ValueError):
    pass


class NonFiniteTorsion(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


# ---------------------------------------------------------------------------
# base ring Z[zeta_k]


class CycloBase:
    """Exact arithmetic in Z[zeta_k] = Z[x]/Phi_k; elements are integer
    tuples of length phi(k)."""

    def __init__(self, conductor: int):
        self.conductor = conductor
        self.phi = list(cyclotomic_poly(conductor).coefficients)
        self.degree = len(self.phi) - 1

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return tuple(int(i == 0) for i in range(self.degree))

    def zeta(self):
        if self.degree == 1:
            return self.reduce([0, 1])
        return tuple(int(i == 1) for i in range(self.degree))

    def reduce(self, coeffs) -> tuple[int, ...]:
        a = list(coeffs)
        for i in range(len(a) - 1, self.degree - 1, -1):
            c = a[i]
            if c:
                for m, v in enumerate(self.phi):
                    a[i - self.degree + m] -= c * v
        a = a[:self.degree]
        a += [0] * (self.degree - len(a))
        return tuple(a)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        out = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self.reduce(out)

    def scale(self, c: int, a):
        return tuple(c * x for x in a)

    def __eq__(self, other):
        return isinstance(other, CycloBase) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("CycloBase", self.conductor))


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class TnModel:
    """TN ring model: free power basis over Z[zeta_k] plus torsion symbols.

    ``free_names[0]`` is the multiplicative identity.  ``mult`` maps basis
    name pairs to (free coefficients, torsion coordinates); products that
    touch a torsion symbol must stay inside the torsion ideal.
    """

    conductor: int
    free_names: tuple[str, ...]
    tors_names: tuple[str, ...]
    tors_orders: tuple[int, ...]
    scalar_action: tuple[tuple[int, ...], ...]  # column j: coords of zeta*t_j
    mult: tuple  # flattened symmetric table, see _pair_index
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "base", CycloBase(self.conductor))
        object.__setattr__(self, "_spow", self._scalar_powers())
        validate_model(self)

    # layout ----------------------------------------------------------------

    def nfree(self) -> int:
        return len(self.free_names)

    def ntors(self) -> int:
        return len(self.tors_names)

    def _pair_index(self, a: int, b: int) -> int:
        # indices over free (0..f-1) then torsion (f..f+t-1)
        if a > b:
            a, b = b, a
        n = self.nfree() + self.ntors()
        return a * n - a * (a - 1) // 2 + (b - a)

    def table(self, a: int, b: int):
        """(free coeffs, torsion coords) of basis product a*b."""
        return self.mult[self._pair_index(a, b)]

    # elements ----------------------------------------------------------------

    def zero(self):
        return ((self.base.zero(),) * self.nfree(), (0,) * self.ntors())

    def one(self):
        free = tuple(self.base.one() if i == 0 else self.base.zero()
                     for i in range(self.nfree()))
        return (free, (0,) * self.ntors())

    def from_torsion(self, coords):
        return ((self.base.zero(),) * self.nfree(), tuple(coords))

    def add(self, x, y):
        free = tuple(self.base.add(a, b) for a, b in zip(x[0], y[0]))
        tors = tuple((a + b) % n for a, b, n in zip(x[1], y[1], self.tors_orders))
        return (free, tors)

    def neg(self, x):
        free = tuple(self.base.neg(a) for a in x[0])
        tors = tuple((-a) % n for a, n in zip(x[1], self.tors_orders))
        return (free, tors)

    def _scalar_powers(self):
        t = len(self.tors_names)
        deg = len(cyclotomic_poly(self.conductor).coefficients) - 1
        ident = [tuple(int(i == j) for i in range(t)) for j in range(t)]
        powers = [ident]
        cols = [list(c) for c in self.scalar_action]
        current = ident
        for _ in range(1, deg):
            nxt = []
            for j in range(t):
                acc = [0] * t
                for m, v in enumerate(current[j]):
                    if v:
                        for mm, w in enumerate(cols[m]):
                            acc[mm] += v * w
                nxt.append(tuple(a % n for a, n in zip(acc, self.tors_orders)))
            powers.append(nxt)
            current = nxt
        return powers

    def scalar_apply(self, coeff, tors_vec):
        """Action of a base element (poly in zeta) on a torsion vector."""
        t = self.ntors()
        acc = [0] * t
        for d, c in enumerate(coeff):
            if not c:
                continue
            mat = self._spow[d]
            for j, v in enumerate(tors_vec):
                if v:
                    for m, w in enumerate(mat[j]):
                        acc[m] += c * v * w
        return tuple(a % n for a, n in zip(acc, self.tors_orders))

    def mul(self, x, y):
        f, t = self.nfree(), self.ntors()
        xf, xt = x
        yf, yt = y
        rf = [list(self.base.zero()) for _ in range(f)]
        rt = [0] * t

        def add_tors(vec, scale=1):
            for m, v in enumerate(vec):
                if v:
                    rt[m] += scale * v

        for i, a in enumerate(xf):
            if not any(a):
                continue
            for i2, b in enumerate(yf):
                if not any(b):
                    continue
                c = self.base.mul(a, b)
                entry_free, entry_tors = self.table(i, i2)
                for e, coeff in enumerate(entry_free):
                    if any(coeff):
                        prodc = self.base.mul(c, coeff)
                        for m, v in enumerate(prodc):
                            rf[e][m] += v
                if any(entry_tors):
                    add_tors(self.scalar_apply(c, entry_tors))
            for j, nco in enumerate(yt):
                if nco:
                    _, entry_tors = self.table(i, f + j)
                    add_tors(self.scalar_apply(a, entry_tors), nco)
        for j, nco in enumerate(xt):
            if not nco:
                continue
            for i2, b in enumerate(yf):
                if any(b):
                    _, entry_tors = self.table(i2, f + j)
                    add_tors(self.scalar_apply(b, entry_tors), nco)
            for j2, nco2 in enumerate(yt):
                if nco2:
                    _, entry_tors = self.table(f + j, f + j2)
                    add_tors(entry_tors, nco * nco2)
        free = tuple(tuple(v for v in row) for row in rf)
        tors = tuple(a % n for a, n in zip(rt, self.tors_orders))
        return (free, tors)

    def torsion_elements(self):
        for coords in iproduct(*(range(n) for n in self.tors_orders)):
            yield self.from_torsion(coords)

    # text format -------------------------------------------------------------

    def to_presentation(self) -> str:
        scalar = {}
        for j, nm in enumerate(self.tors_names):
            scalar[nm] = {self.tors_names[m]: v
                          for m, v in enumerate(self.scalar_action[j]) if v}
        table = {}
        names = list(self.free_names) + list(self.tors_names)
        for ai, a in enumerate(names):
            for b in names[ai:]:
                bi = names.index(b)
                entry_free, entry_tors = self.table(ai, bi)
                fmap = {self.free_names[e]: tuple(coeff)
                        for e, coeff in enumerate(entry_free) if any(coeff)}
                tmap = {self.tors_names[m]: v
                        for m, v in enumerate(entry_tors) if v}
                table[(a, b)] = (fmap, tmap)
        return presentation.format_tn_document(
            self.name or "model", self.conductor, self.free_names,
            tuple(zip(self.tors_names, self.tors_orders)), scalar, table)

    @classmethod
    def from_presentation(cls, text: str) -> "TnModel":
        doc = presentation.parse_tn_document(text)
        free_names = doc["free_basis"]
        tors_pairs = doc["tors_basis"]
        tors_names = tuple(nm for nm, _ in tors_pairs)
        tors_orders = tuple(o for _, o in tors_pairs)
        base = CycloBase(doc["conductor"])
        scalar = []
        for nm in tors_names:
            row = doc["scalar_action"].get(nm)
            if row is None:
                raise InvalidModel(f"missing scalar_action for {nm}")
            scalar.append(tuple(row.get(m, 0) for m in tors_names))
        names = list(free_names) + list(tors_names)
        entries = []
        for ai, a in enumerate(names):
            for b in names[ai:]:
                key = (a, b) if (a, b) in doc["mult"] else (b, a)
                if key not in doc["mult"]:
                    raise InvalidModel(f"missing mult {a} {b}")
                fmap, tmap = doc["mult"][key]
                if (a in tors_names or b in tors_names) and fmap:
                    raise InvalidModel(f"product {a}*{b} leaves the torsion ideal")
                free = tuple(base.reduce(fmap.get(nm, ()))
                             for nm in free_names)
                tors = tuple(tmap.get(nm, 0) % o
                             for nm, o in zip(tors_names, tors_orders))
                entries.append((free, tors))
        return cls(doc["conductor"], free_names, tors_names, tors_orders,
                   tuple(scalar), tuple(entries), name=doc.get("name", ""))


def validate_model(A: TnModel) -> None:
    f, t = A.nfree(), A.ntors()
    base = A.base
    if f < 1:
        raise InvalidModel("need at least the identity free basis element")
    n = f + t
    if len(A.mult) != n * (n + 1) // 2:
        raise InvalidModel("multiplication table size mismatch")
    for j, col in enumerate(A.scalar_action):
        if len(col) != t:
            raise InvalidModel("scalar action has wrong shape")
        oj = A.tors_orders[j]
        for m, v in enumerate(col):
            if (oj * v) % A.tors_orders[m]:
                raise InvalidModel("scalar action does not respect orders")
    # Phi_k(S) must annihilate the torsion part
    for j in range(t):
        vec = [0] * t
        for d, c in enumerate(base.phi):
            if c:
                img = _matrix_power_column(A, d, j)
                for m, v in enumerate(img):
                    vec[m] += c * v
        if any(v % o for v, o in zip(vec, A.tors_orders)):
            raise InvalidModel("Phi_k(scalar action) is nonzero on the torsion part")
    # identity
    one = A.one()
    basis = _basis_elements(A)
    for b in basis:
        if A.mul(one, b) != b:
            raise InvalidModel("first free basis element is not an identity")
    # torsion entries stay torsion and respect the additive orders
    for a in range(n):
        for b in range(a, n):
            entry_free, entry_tors = A.mult[A._pair_index(a, b)]
            if a >= f or b >= f:
                if any(any(c) for c in entry_free):
                    raise InvalidModel("torsion ideal is not closed")
                kill = A.tors_orders[max(a, b) - f]
                if a >= f and b >= f:
                    kill = gcd(A.tors_orders[a - f], A.tors_orders[b - f])
                for m, v in enumerate(entry_tors):
                    if (kill * v) % A.tors_orders[m]:
                        raise InvalidModel(
                            f"product entry ({a},{b}) breaks bilinearity")
    # zeta-compatibility: (zeta t_j) * b = zeta * (t_j * b) on torsion coords
    zeta = base.zeta()
    for j in range(t):
        tj = A.from_torsion(tuple(int(m == j) for m in range(t)))
        ztj = A.from_torsion(A.scalar_apply(zeta, tj[1]))
        for b in basis:
            lhs = A.mul(ztj, b)[1]
            rhs = A.scalar_apply(zeta, A.mul(tj, b)[1])
            if lhs != rhs:
                raise InvalidModel("scalar action is incompatible with the table")
    # associativity on basis triples
    for x in basis:
        for y in basis:
            for z in basis:
                if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
                    raise InvalidModel("associativity fails on a basis triple")
    # nilpotency of the torsion ideal via the extracted radical components
    nil_torsion(A)


def _matrix_power_column(A: TnModel, d: int, j: int):
    t = A.ntors()
    vec = tuple(int(m == j) for m in range(t))
    for _ in range(d):
        acc = [0] * t
        for m, v in enumerate(vec):
            if v:
                for mm, w in enumerate(A.scalar_action[m]):
                    acc[mm] += v * w
        vec = tuple(a % n for a, n in zip(acc, A.tors_orders))
    return vec


def _basis_elements(A: TnModel):
    f, t = A.nfree(), A.ntors()
    out = []
    for i in range(f):
        free = tuple(A.base.one() if e == i else A.base.zero() for e in range(f))
        out.append((free, (0,) * t))
    for j in range(t):
        out.append(A.from_torsion(tuple(int(m == j) for m in range(t))))
    return out


# ---------------------------------------------------------------------------
# torsion ideal


@dataclass(frozen=True)
class TorsionIdeal:
    """N_tors of a model, split into single-prime radical rings."""

    components: tuple[RadicalRing, ...]

    def additive_group(self) -> FinAbGroup:
        g = FinAbGroup.trivial()
        for c in self.components:
            g = g * c.additive_group()
        return g

    def adjoint_group(self) -> FinAbGroup:
        g = FinAbGroup.trivial()
        for c in self.components:
            g = g * c.adjoint_group()
        return g

    def order(self) -> int:
        return prod(c.order() for c in self.components)

    def exponent(self) -> int:
        out = 1
        for c in self.components:
            out = lcm(out, c.additive_group().exponent())
        return out


def nil_torsion(A: TnModel) -> TorsionIdeal:
    """The torsion nilpotent ideal as per-prime radical rings."""
    primes = sorted({p for o in A.tors_orders for p, _ in factorize(o).pairs})
    comps = []
    for p in primes:
        idx = [j for j, o in enumerate(A.tors_orders) if o % p == 0]
        if any(factorize(A.tors_orders[j]).pairs[0][0] != p or
               len(factorize(A.tors_orders[j]).pairs) != 1 for j in idx):
            raise InvalidModel("torsion orders must be prime powers")
        elems = []
        for coords in iproduct(*(range(A.tors_orders[j]) for j in idx)):
            full = [0] * A.ntors()
            for j, c in zip(idx, coords):
                full[j] = c
            elems.append(tuple(full))

        def add(u, v):
            return tuple((a + b) % n for a, b, n in zip(u, v, A.tors_orders))

        def mul(u, v):
            return A.mul(A.from_torsion(u), A.from_torsion(v))[1]

        comps.append(radical_ring_from_mult(
            elems, add, (0,) * A.ntors(), mul, p,
            name=f"{A.name or 'model'} torsion {p}-part"))
    return TorsionIdeal(tuple(comps))


def adjoint_of_nil_torsion(A: TnModel) -> FinAbGroup:
    """Group structure of 1 + N_tors, computed inside the model."""
    elems = [x[1] for x in A.torsion_elements()]

    def circ(u, v):
        prod_t = A.mul(A.from_torsion(u), A.from_torsion(v))
        assert not any(any(c) for c in prod_t[0]), "torsion product left the ideal"
        w = tuple((a + b + c) % n for a, b, c, n in
                  zip(u, v, prod_t[1], A.tors_orders))
        return w

    return abelian_structure(elems, circ, (0,) * A.ntors())


# ---------------------------------------------------------------------------
# the torsion-free quotient B = A / N_tors and its torsion units


class _BaseAlgebra:
    """B = A/N_tors on the free basis (table with torsion coords dropped)."""

    def __init__(self, A: TnModel):
        self.A = A
        self.base = A.base
        self.f = A.nfree()

    def one(self):
        return tuple(self.base.one() if i == 0 else self.base.zero()
                     for i in range(self.f))

    def mul(self, x, y):
        rf = [list(self.base.zero()) for _ in range(self.f)]
        for i, a in enumerate(x):
            if not any(a):
                continue
            for i2, b in enumerate(y):
                if not any(b):
                    continue
                c = self.base.mul(a, b)
                entry_free, _ = self.A.table(i, i2)
                for e, coeff in enumerate(entry_free):
                    if any(coeff):
                        prodc = self.base.mul(c, coeff)
                        for m, v in enumerate(prodc):
                            rf[e][m] += v
        return tuple(tuple(row) for row in rf)


_ORDER_SEARCH_CAP = 4096


def _roots_of_unity(conductor: int):
    """All roots of unity of Z[zeta_m], as coordinate tuples: +-zeta^j."""
    base = CycloBase(conductor)
    out = set()
    z = base.one()
    for _ in range(conductor):
        out.add(z)
        out.add(base.neg(z))
        z = base.mul(z, base.zeta())
    assert len(out) == lcm(2, conductor)
    return sorted(out)


def _power_basis_relation(B: _BaseAlgebra):
    """Verify the free part is a power basis and return the generator's
    monic relation h(x) = x^f - tail as base coefficients [c_0..c_{f-1}]."""
    f = B.f
    base = B.base
    if f == 1:
        return None
    gen = tuple(base.one() if i == 1 else base.zero() for i in range(f))
    for i in range(1, f - 1):
        ei = tuple(base.one() if e == i else base.zero() for e in range(f))
        expected = tuple(base.one() if e == i + 1 else base.zero() for e in range(f))
        if B.mul(gen, ei) != expected:
            raise InvalidModel("free part is not a power basis of one generator")
    last = tuple(base.one() if e == f - 1 else base.zero() for e in range(f))
    return list(B.mul(gen, last))


@dataclass
class TorsionUnitData:
    one_plus_n: FinAbGroup
    b_tors: FinAbGroup
    a_tors: FinAbGroup
    b_tors_elements: list
    a_tors_elements: list


_torsion_cache: dict = {}


def _torsion_unit_data(A: TnModel) -> TorsionUnitData:
    if A in _torsion_cache:
        return _torsion_cache[A]
    base = A.base
    B = _BaseAlgebra(A)
    f = A.nfree()

    # (1) 1 + N_tors inside the model
    one_plus_n_elements = [
        (tuple(base.one() if i == 0 else base.zero() for i in range(f)), t[1])
        for t in A.torsion_elements()]
    one_plus_n = abelian_structure(one_plus_n_elements, A.mul, A.one())

    # (2) torsion units of B through the cyclotomic embedding
    if f == 1:
        b_units = [(z,) for z in _roots_of_unity(A.conductor)]
    else:
        b_units = _b_torsion_units(A, B)
    b_tors = abelian_structure(b_units, B.mul, B.one())

    # (3) lift each torsion unit of B and sweep its 1+N coset.  Units of A
    # over a unit of B are exactly lift * (1 + N): N is nilpotent, so any
    # preimage of a unit is a unit, and the fibers partition A*_tors.
    lifted = set()
    for bu in b_units:
        lift = (bu, (0,) * A.ntors())
        for n in one_plus_n_elements:
            lifted.add(A.mul(lift, n))
    assert len(lifted) == len(b_units) * len(one_plus_n_elements)
    a_tors = abelian_structure(sorted(lifted), A.mul, A.one())
    # order bound: u^exp(B*_tors) lands in 1+N_tors, so the exponent of
    # A*_tors divides exp(B*_tors) * exp(1+N_tors)
    assert (b_tors.exponent() * one_plus_n.exponent()) % a_tors.exponent() == 0, \
        "torsion unit order exceeded the exact-sequence bound"
    data = TorsionUnitData(one_plus_n, b_tors, a_tors,
                           sorted(b_units), sorted(lifted))
    _torsion_cache[A] = data
    return data


def _b_torsion_units(A: TnModel, B: _BaseAlgebra) -> list:
    base = A.base
    f = A.nfree()
    k = A.conductor
    tail = _power_basis_relation(B)

    # order of the generator x in B (must be finite for a TN model whose
    # base algebra is a product of cyclotomic rings)
    gen = tuple(base.one() if i == 1 else base.zero() for i in range(f))
    acc = gen
    order = 1
    while acc != B.one():
        acc = B.mul(acc, gen)
        order += 1
        if order > _ORDER_SEARCH_CAP:
            raise NonFiniteTorsion("generator has no small multiplicative order")
    M = order

    # components: x -> zeta_M^j for every j with h(zeta_M^j) = 0
    components = []
    for j in range(M):
        zord = M // gcd(j, M) if j else 1
        L = lcm(k, zord)
        big = CycloBase(L)
        zk = _embed_root(big, k, 1)      # zeta_k inside Z[zeta_L]
        rho = _embed_root(big, M, j)     # candidate image of x
        # evaluate h = x^f - tail at rho
        val = _eval_at(big, zk, rho, [base.neg(c) for c in tail], f)
        if not any(val):
            components.append((j, L, big, zk, rho))
    if not components:
        raise NonFiniteTorsion("generator relation has no root-of-unity roots")

    # embedding matrix: B basis zeta^d x^e -> stacked Z[zeta_L] coordinates
    cols = []
    for e in range(f):
        for d in range(base.degree):
            col = []
            for (_, _, big, zk, rho) in components:
                img = big.one()
                for _ in range(e):
                    img = big.mul(img, rho)
                zpow = big.one()
                for _ in range(d):
                    zpow = big.mul(zpow, zk)
                img = big.mul(img, zpow)
                col.extend(img)
            cols.append(col)
    nrows = len(cols[0])
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]

    # candidates: tuples of roots of unity, one per component
    unit_lists = []
    for (_, L, big, _, _) in components:
        unit_lists.append(_roots_of_unity(L))
    found = []
    diag, U, V = smith_normal_form(rows, want_transforms=True)
    ncols = len(cols)
    for combo in iproduct(*unit_lists):
        target = []
        for u in combo:
            target.extend(u)
        t = [sum(U[i][mm] * target[mm] for mm in range(len(target)))
             for i in range(len(U))]
        w = [0] * ncols
        ok = True
        for i in range(len(t)):
            if i < len(diag) and diag[i] != 0:
                if t[i] % diag[i]:
                    ok = False
                    break
                w[i] = t[i] // diag[i]
            elif t[i] != 0:
                ok = False
                break
        if not ok:
            continue
        z = [sum(V[i][jj] * w[jj] for jj in range(ncols)) for i in range(ncols)]
        elem = []
        for e in range(f):
            coeffs = z[e * base.degree:(e + 1) * base.degree]
            elem.append(tuple(coeffs))
        found.append(tuple(elem))
    return found


def _embed_root(big: CycloBase, m: int, j: int):
    """zeta_m^j inside Z[zeta_L], L = big.conductor (requires m | L or
    ord(zeta_m^j) | L)."""
    if j % m == 0:
        return big.one()
    ordj = m // gcd(j, m)
    step = big.conductor // ordj * (j // gcd(j, m))
    out = big.one()
    z = big.zeta()
    for _ in range(step % big.conductor):
        out = big.mul(out, z)
    return out


def _eval_at(big: CycloBase, zk, rho, neg_tail, f):
    """x^f + sum(neg_tail[e] x^e) at x = rho; neg_tail coeffs are over zeta_k."""
    acc = big.one()
    for _ in range(f):
        acc = big.mul(acc, rho)
    for e, coeff in enumerate(neg_tail):
        if not any(coeff):
            continue
        c_emb = big.zero()
        zpow = big.one()
        for d, cd in enumerate(coeff):
            if cd:
                c_emb = big.add(c_emb, big.scale(cd, zpow))
            zpow = big.mul(zpow, zk)
        term = c_emb
        for _ in range(e):
            term = big.mul(term, rho)
        acc = big.add(acc, term)
    return acc


def torsion_units(A: TnModel) -> FinAbGroup:
    """Isomorphism type of A*_tors.

    Computed through the exact unit sequence: B*_tors first (cyclotomic
    embedding), then every torsion unit of B is lifted and its coset of
    1 + N_tors swept; the result is recovered from the multiplication.
    """
    return _torsion_unit_data(A).a_tors


def quotient_torsion_units(A: TnModel) -> FinAbGroup:
    """(A/N_tors)*_tors, computed independently of the model's own units."""
    return _torsion_unit_data(A).b_tors


def sequence_splits(A: TnModel) -> bool:
    """Whether A*_tors = (1 + N_tors) x B*_tors as abstract groups."""
    data = _torsion_unit_data(A)
    return data.a_tors == data.one_plus_n * data.b_tors


# ---------------------------------------------------------------------------
# cyclotomic prime-power quotients, from first principles


@dataclass(frozen=True)
class PrimePowerIdealQuotient:
    """Z[zeta_k] / P^b for the prime P = (q, f(zeta)) picked by one
    irreducible factor f of Phi_k mod q."""

    conductor: int
    q: int
    factor: tuple[int, ...]
    b: int


def cyclotomic_quotient_group(Q: PrimePowerIdealQuotient) -> FinAbGroup:
    """Additive group of Z[zeta_k]/P^b via the relation lattice of the ideal
    power (computed by repeated ideal products, HNF-reduced), then checked
    against (Z/q^b)^lam.

    >>> Q = PrimePowerIdealQuotient(4, 3, (1, 0, 1), 1)
    >>> str(cyclotomic_quotient_group(Q))
    'Z/3Z x Z/3Z'
    """
    k, q, b = Q.conductor, Q.q, Q.b
    if gcd(q, k) != 1:
        raise NotCoprime(f"gcd({q}, {k}) != 1")
    base = CycloBase(k)
    deg = base.degree
    f_el = base.reduce(list(Q.factor))
    # sanity: the factor must divide Phi_k mod q
    from .numtheory import _poly_rem_mod
    if _poly_rem_mod(list(base.phi), [c % q for c in Q.factor], q):
        raise ValueError("factor does not divide Phi_k mod q")
    lam = len(Q.factor) - 1

    def ideal_lattice(gens):
        rows = []
        z = base.one()
        for _ in range(deg):
            for g in gens:
                rows.append(list(base.mul(g, z)))
            z = base.mul(z, base.zeta())
        return hermite_normal_form(rows)

    q_el = tuple(q if i == 0 else 0 for i in range(deg))
    lattice = ideal_lattice([q_el, f_el])
    for _ in range(b - 1):
        gens = [tuple(row) for row in lattice]
        prods = []
        for g in gens:
            for h in ([q_el, f_el]):
                prods.append(base.mul(g, h))
        lattice = ideal_lattice(prods)
    result = group_from_relations(lattice, deg)
    assert result.free_rank == 0
    expected = FinAbGroup.from_orders([q ** b] * lam)
    assert result.torsion == expected, \
        f"quotient structure {result.torsion} differs from (Z/{q}^{b})^{lam}"
    return result.torsion


# ---------------------------------------------------------------------------
# the rank-zero construction: B = Z[zeta_k], one generator per factor


def build_construction_model(k: int, H: FinAbGroup, name: str = "") -> TnModel:
    """A TN model over Z[zeta_k] whose torsion ideal realises H with square
    -zero generators, so that 1 + N_tors = N_tors = H.

    H must have odd order coprime to k, and each Sylow q-part must be a
    lam(q, k)-th power; otherwise HypothesisViolated names the bad prime.
    """
    if H.order() % 2 == 0:
        raise HypothesisViolated("|H| must be odd")
    if gcd(H.order(), k) != 1:
        raise HypothesisViolated("|H| must be coprime to the conductor")
    blocks = []  # (q, e, lam, lifted factor) one per generator
    for q in H.primes():
        lam = mult_order(q, k)
        for (p, e, mult_) in H.sylow(q).factors:
            if mult_ % lam:
                raise HypothesisViolated(
                    f"Sylow {q}-part is not a lam({q},{k})={lam} power")
            fq = factor_cyclo_mod(k, q)[0]
            lifted = hensel_lift_factor(k, fq, q, e) if e > 1 else fq
            for _ in range(mult_ // lam):
                blocks.append((q, e, lam, lifted))
    tors_names = []
    tors_orders = []
    scalar_cols = []
    offset = 0
    for gi, (q, e, lam, lifted) in enumerate(blocks):
        qe = q ** e
        for m in range(lam):
            tors_names.append(f"x{gi}_{m}" if lam > 1 else f"x{gi}")
            tors_orders.append(qe)
    for gi, (q, e, lam, lifted) in enumerate(blocks):
        qe = q ** e
        for m in range(lam):
            col = [0] * sum(1 for _ in tors_names)
            if m + 1 < lam:
                col[offset + m + 1] = 1
            else:
                # zeta^lam = -(lifted - x^lam) on this block
                for d in range(lam):
                    col[offset + d] = (-lifted[d]) % qe
            scalar_cols.append(tuple(col))
        offset += lam
    t = len(tors_names)
    free_names = ("u",)
    base = CycloBase(k)
    entries = []
    names_count = 1 + t
    for a in range(names_count):
        for bb in range(a, names_count):
            if a == 0 and bb == 0:
                entries.append(((base.one(),), (0,) * t))
            elif a == 0:
                entries.append(((base.zero(),),
                                tuple(int(m == bb - 1) for m in range(t))))
            else:
                entries.append(((base.zero(),), (0,) * t))
    model = TnModel(k, free_names, tuple(tors_names), tuple(tors_orders),
                    tuple(scalar_cols), tuple(entries),
                    name=name or f"construction(k={k}, H={format_group(H)})")
    ideal = nil_torsion(model)
    assert ideal.additive_group() == H, "construction failed to realise H"
    assert adjoint_of_nil_torsion(model) == H
    return model


def rank_bookkeeping(B_tors: FinAbGroup, laurent_vars: int) -> int:
    """Unit rank after adjoining laurent_vars invertible free variables to a
    torsion-free ring with torsion units B_tors: g(B_tors) + r."""
    from .realize import g_value
    if laurent_vars < 0:
        raise ValueError("rank increment must be nonnegative")
    return g_value(B_tors) + laurent_vars


# ---------------------------------------------------------------------------
# shipped example models


EXAMPLE_NAMES = ("paper-7-1", "paper-7-2-v2", "paper-7-2-v4")


def load_example(name: str) -> TnModel:
    """Load one of the shipped golden model files by name."""
    if name not in EXAMPLE_NAMES:
        raise ValueError(f"unknown example {name!r}; have {EXAMPLE_NAMES}")
    from importlib.resources import files
    text = files("fuchs.data").joinpath(f"{name}.tn").read_text(encoding="utf-8")
    return TnModel.from_presentation(text)


def example_one_model() -> TnModel:
    """The order-2^7 model with N = (Z/2)^4 but 1+N = Z/2 x Z/2 x Z/4:
    base Z[i], free {1, x} with x^2 = 1 + y, torsion {y, xy, y2, xy2}."""
    text = """\
name = paper-7-1
kind = tn
conductor = 4
free_basis = u x
tors_basis = y:2 xy:2 y2:2 xy2:2
scalar_action y = y
scalar_action xy = xy
scalar_action y2 = y2
scalar_action xy2 = xy2
mult u u = u
mult u x = x
mult u y = y
mult u xy = xy
mult u y2 = y2
mult u xy2 = xy2
mult x x = u + y
mult x y = xy
mult x xy = y + y2
mult x y2 = xy2
mult x xy2 = y2
mult y y = y2
mult y xy = xy2
mult y y2 = 0
mult y xy2 = 0
mult xy xy = y2
mult xy y2 = 0
mult xy xy2 = 0
mult y2 y2 = 0
mult y2 xy2 = 0
mult xy2 xy2 = 0
"""
    return TnModel.from_presentation(text)


def example_two_model(v: int) -> TnModel:
    """The Z/4 x Z/2v family: base Z[i], free power basis of x with
    x^v = 1 + y, a single torsion symbol y of order 2 killed by (x - 1)."""
    if v not in (2, 4):
        raise ValueError("the shipped family uses v in {2, 4}")
    free = ["u"] + [f"x{i}" if i > 1 else "x" for i in range(1, v)]
    lines = [f"name = paper-7-2-v{v}", "kind = tn", "conductor = 4",
             "free_basis = " + " ".join(free), "tors_basis = y:2",
             "scalar_action y = y"]
    def sym(i):
        return free[i]
    for i in range(v):
        for j in range(i, v):
            s = i + j
            if s == 0:
                val = "u"
            elif s < v:
                val = sym(s)
            else:
                wrapped = sym(s - v)
                val = f"{wrapped} + y"
            lines.append(f"mult {sym(i)} {sym(j)} = {val}")
    for i in range(v):
        lines.append(f"mult {sym(i)} y = y")
    lines.append("mult y y = 0")
    return TnModel.from_presentation("\n".join(lines) + "\n")
