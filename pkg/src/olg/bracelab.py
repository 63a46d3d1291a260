"""Desk-scale laboratory for G-twisted braces on finite-dimensional algebras.

Scalars live in Z[zeta_m] and are stored as int64 vectors of length phi(m)
(coefficients of 1, z, .., z^(phi(m)-1)).  A cochain of arity p is a dense
tensor of shape (d,)*p + (d, F): entry [a_1..a_p, b] is the b-th coordinate
of phi°(e_a1, .., e_ap).  All identities are checked by exact tensor equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .cyclo import Cyclotomic, totient
from .errors import InvalidArgument, MissingCurving, NotInvariant

_LIMIT = 2 ** 52
_LOWER = "abcdefghijklmnopqrstuvwxy"
_UPPER = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class ZetaRing:
    """Z[zeta_m] with elements as integer coordinate vectors."""

    def __init__(self, m: int):
        self.m = m
        self.F = totient(m)
        F = self.F
        T = np.zeros((F, F, F), dtype=np.int64)
        for p in range(F):
            for q in range(F):
                c = Cyclotomic.zeta(m, p + q).promote(m) if m > 1 else Cyclotomic.from_rational(1)
                T[p, q, :] = [int(x) for x in c.coefficients]
        self.T = T

    def one(self) -> np.ndarray:
        v = np.zeros(self.F, dtype=np.int64)
        v[0] = 1
        return v

    def zeta(self, k: int) -> np.ndarray:
        if self.m == 1:
            return self.one()
        c = Cyclotomic.zeta(self.m, k).promote(self.m)
        return np.array([int(x) for x in c.coefficients], dtype=np.int64)

    def einsum(self, specs: list, out: str, *ops) -> np.ndarray:
        """einsum over the explicit axes; ring coordinates are multiplied."""
        if len(ops) != len(specs):
            raise InvalidArgument("one spec per operand")
        letters = iter(_UPPER)
        ring = [next(letters) for _ in ops]
        terms = [s + r for s, r in zip(specs, ring)]
        args = list(ops)
        acc = ring[0]
        for r in ring[1:]:
            nxt = next(letters)
            terms.append(acc + r + nxt)
            args.append(self.T)
            acc = nxt
        res = np.einsum(",".join(terms) + "->" + out + acc, *args, optimize="greedy")
        if res.size and np.abs(res).max() >= _LIMIT:
            raise OverflowError("coefficient growth exceeded the int64 guard")
        return res

    def to_cyclotomic(self, v) -> Cyclotomic:
        return Cyclotomic.from_coefficients(self.m, [int(x) for x in v])

    def from_cyclotomic(self, c) -> np.ndarray:
        c = Cyclotomic.from_rational(c) if not isinstance(c, Cyclotomic) else c
        c = c.promote(self.m * c.m // _gcd(self.m, c.m))
        if c.m != self.m:
            raise InvalidArgument(f"value {c.pretty()} is not in Q(zeta_{self.m})")
        if c.den != 1:
            raise InvalidArgument("bracelab scalars must be cyclotomic integers")
        return np.array(c.num, dtype=np.int64)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------- algebras

class FiniteAlgebra:
    """Associative algebra with unit, optional central curving W and a finite
    group acting by automorphisms.

    ``mult[i, j, k]`` is the k-th coordinate vector (length F) of e_i e_j;
    group matrices are (d, d, F) with column j the image of e_j.
    """

    def __init__(self, ring: ZetaRing, mult, unit, W=None, group=None, name: str = ""):
        self.R = ring
        self.mult = np.asarray(mult, dtype=np.int64)
        self.d = self.mult.shape[0]
        self.unit = np.asarray(unit, dtype=np.int64)
        self.W = None if W is None else np.asarray(W, dtype=np.int64)
        self.name = name
        d, F = self.d, ring.F
        if self.mult.shape != (d, d, d, F) or self.unit.shape != (d, F):
            raise InvalidArgument("structure tensors have the wrong shape")
        ident = np.zeros((d, d, F), dtype=np.int64)
        for i in range(d):
            ident[i, i, 0] = 1
        mats = [np.asarray(g, dtype=np.int64) for g in (group or [])]
        if not any(np.array_equal(g, ident) for g in mats):
            mats.insert(0, ident)
        else:
            mats.sort(key=lambda g: 0 if np.array_equal(g, ident) else 1)
        for a in range(len(mats)):
            for b in range(a):
                if np.array_equal(mats[a], mats[b]):
                    raise InvalidArgument("group elements are stored as matrices; the action must be faithful")
        self.group = mats
        n = len(mats)
        self.table = [[self._index(self.compose(mats[a], mats[b])) for b in range(n)] for a in range(n)]
        self.inv = [self.table[a].index(0) for a in range(n)]
        self._validate()

    # group bookkeeping
    def compose(self, A, B):
        return self.R.einsum(["ij", "jk"], "ik", A, B)

    def _index(self, M) -> int:
        for k, g in enumerate(self.group):
            if np.array_equal(g, M):
                return k
        raise InvalidArgument("group matrices are not closed under composition")

    def mul_g(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod_g(self, seq) -> int:
        acc = 0
        for s in seq:
            acc = self.table[acc][s]
        return acc

    @property
    def order(self) -> int:
        return len(self.group)

    # basic products
    def multiply(self, x, y):
        return self.R.einsum(["i", "j", "ijk"], "k", x, y, self.mult)

    def act(self, g: int, x):
        return self.R.einsum(["ij", "j"], "i", self.group[g], x)

    def _validate(self):
        R, d = self.R, self.d
        left = R.einsum(["ijm", "mkl"], "ijkl", self.mult, self.mult)
        right = R.einsum(["jkm", "iml"], "ijkl", self.mult, self.mult)
        if not np.array_equal(left, right):
            raise InvalidArgument("structure constants are not associative")
        eye = np.zeros((d, d, R.F), dtype=np.int64)
        for i in range(d):
            eye[i, i, 0] = 1
        if not (np.array_equal(R.einsum(["i", "ijk"], "jk", self.unit, self.mult), eye)
                and np.array_equal(R.einsum(["j", "ijk"], "ik", self.unit, self.mult), eye)):
            raise InvalidArgument("unit vector is not a two-sided unit")
        for g in self.group:
            # g(e_i e_j) = g(e_i) g(e_j)
            lhs = R.einsum(["ijk", "lk"], "ijl", self.mult, g)
            rhs = R.einsum(["ai", "bj", "abl"], "ijl", g, g, self.mult)
            if not np.array_equal(lhs, rhs):
                raise InvalidArgument("group matrix is not an algebra automorphism")
        if self.W is not None:
            wl = R.einsum(["i", "ijk"], "jk", self.W, self.mult)
            wr = R.einsum(["j", "ijk"], "ik", self.W, self.mult)
            if not np.array_equal(wl, wr):
                raise InvalidArgument("W is not central")
            for g in self.group:
                if not np.array_equal(R.einsum(["ij", "j"], "i", g, self.W), self.W):
                    raise InvalidArgument("the group does not fix W")

    # cochains tied to the algebra
    def m2(self) -> "TwistedCochain":
        return TwistedCochain(2, 0, self.mult.copy())

    def m0(self) -> "TwistedCochain":
        if self.W is None:
            raise MissingCurving("the algebra has no curving element")
        return TwistedCochain(0, 0, self.W.copy())

    def zero(self, arity: int, sector: int = 0) -> "TwistedCochain":
        if arity < 0:  # negative degrees only ever hold zero
            return TwistedCochain(arity, sector, np.zeros((0,), dtype=np.int64))
        return TwistedCochain(arity, sector, np.zeros((self.d,) * (arity + 1) + (self.R.F,), dtype=np.int64))

    def random_cochain(self, rng, arity: int, sector: int | None = None) -> "TwistedCochain":
        if sector is None:
            sector = int(rng.integers(0, self.order))
        shape = (self.d,) * (arity + 1) + (self.R.F,)
        return TwistedCochain(arity, sector, rng.integers(-1, 2, size=shape).astype(np.int64))

    def to_json(self) -> dict:
        return {"name": self.name, "m": self.R.m, "mult": self.mult.tolist(), "unit": self.unit.tolist(),
                "W": None if self.W is None else self.W.tolist(), "group": [g.tolist() for g in self.group]}

    @classmethod
    def from_json(cls, obj) -> "FiniteAlgebra":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(ZetaRing(int(obj.get("m", 1))), obj["mult"], obj["unit"], obj.get("W"),
                   obj.get("group"), obj.get("name", ""))


def truncated_polynomial_algebra(n: int, m: int = 1, k: int = 0, W_power: int | None = None) -> FiniteAlgebra:
    """Q[x]/(x^n) with Z/m acting by x -> zeta_m^k x, optional W = x^W_power."""
    R = ZetaRing(m)
    F = R.F
    mult = np.zeros((n, n, n, F), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[i, j, i + j, 0] = 1
    unit = np.zeros((n, F), dtype=np.int64)
    unit[0, 0] = 1
    W = None
    if W_power is not None:
        W = np.zeros((n, F), dtype=np.int64)
        if W_power < n:
            W[W_power, 0] = 1
    group = []
    for t in range(m):
        g = np.zeros((n, n, F), dtype=np.int64)
        for i in range(n):
            g[i, i, :] = R.zeta(t * k * i)
        group.append(g)
    name = f"Q[x]/(x^{n})" + (f", Z/{m}" if m > 1 else "") + (f", W=x^{W_power}" if W_power is not None else "")
    return FiniteAlgebra(R, mult, unit, W, group, name)


def group_algebra_z2() -> FiniteAlgebra:
    """Q[Z/2] = Q[t]/(t^2 - 1) with the trivial group."""
    R = ZetaRing(1)
    mult = np.zeros((2, 2, 2, 1), dtype=np.int64)
    for i in range(2):
        for j in range(2):
            mult[i, j, (i + j) % 2, 0] = 1
    unit = np.array([[1], [0]], dtype=np.int64)
    return FiniteAlgebra(R, mult, unit, None, None, "Q[Z/2]")


# ---------------------------------------------------------------- cochains

@dataclass
class TwistedCochain:
    arity: int
    sector: int
    tensor: np.ndarray

    def __eq__(self, other):
        return (isinstance(other, TwistedCochain) and self.arity == other.arity
                and (self.sector == other.sector or (not self.tensor.any() and not other.tensor.any()))
                and np.array_equal(self.tensor, other.tensor))

    def is_zero(self) -> bool:
        return not self.tensor.any()

    def scale(self, c: int) -> "TwistedCochain":
        return TwistedCochain(self.arity, self.sector, self.tensor * c)

    def __neg__(self):
        return self.scale(-1)


def _twist_inputs(A: FiniteAlgebra, T: np.ndarray, arity: int, g: int, slots=None) -> np.ndarray:
    """phi°(.., ^g a_s, ..) on the given (default all) input slots."""
    if g == 0 or arity == 0:
        return T
    for s in (range(arity) if slots is None else slots):
        ax = list(_LOWER[: arity + 1])
        spec_in = "".join(ax)
        new = ax.copy()
        new[s] = "z"
        T = A.R.einsum([spec_in, ax[s] + "z"], "".join(new), T, A.group[g])
    return T


def _act_output(A: FiniteAlgebra, T: np.ndarray, arity: int, g: int) -> np.ndarray:
    if g == 0:
        return T
    ax = _LOWER[: arity + 1]
    new = ax[:-1] + "z"
    return A.R.einsum([ax, "z" + ax[-1]], new, T, A.group[g])


def cochain_group_action(A: FiniteAlgebra, h: int, phi: TwistedCochain) -> TwistedCochain:
    """h^*(phi)(a..) = h phi(^{h^-1} a ..) h^-1; the sector g goes to h g h^-1."""
    if phi.arity < 0:
        return TwistedCochain(phi.arity, A.prod_g([h, phi.sector, A.inv[h]]), phi.tensor)
    T = _twist_inputs(A, phi.tensor, phi.arity, A.inv[h])
    T = _act_output(A, T, phi.arity, h)
    return TwistedCochain(phi.arity, A.prod_g([h, phi.sector, A.inv[h]]), T)


def brace(A: FiniteAlgebra, phi: TwistedCochain, args) -> TwistedCochain:
    """phi{phi_1, .., phi_k} with the group twists of the twisted brace."""
    args = list(args)
    k, p = len(args), phi.arity
    if k == 0:
        return phi
    n = p + sum(a.arity - 1 for a in args)
    pref = [0]
    for a in args:
        pref.append(A.mul_g(a.sector, pref[-1]))  # g_j ... g_1
    sector = A.mul_g(phi.sector, pref[-1])
    out = A.zero(n, sector)
    if k > p or n < 0 or any(a.arity < 0 for a in args):
        return A.zero(n, sector)
    if n > len(_LOWER) - p - 2:
        raise InvalidArgument("arity too large for the dense lab")
    twisted_args = [_twist_inputs(A, a.tensor, a.arity, pref[j]) for j, a in enumerate(args)]
    out_letters = _LOWER[:n]
    slot_letters = _LOWER[n: n + p]
    res_letter = _LOWER[n + p]
    total = out.tensor
    for t in combinations(range(p), k):
        # twist raw slots by the product of sectors inserted before them
        raw_twist = {}
        j = 0
        for s in range(p):
            if j < k and t[j] == s:
                j += 1
            else:
                raw_twist[s] = pref[j]
        X = phi.tensor
        for s, h in raw_twist.items():
            if h:
                X = _twist_inputs(A, X, p, h, [s])
        specs = ["".join(slot_letters) + res_letter]
        ops = [X]
        pos = 0
        sign_exp = 0
        j = 0
        for s in range(p):
            if j < k and t[j] == s:
                a = args[j]
                sign_exp += pos * (a.arity - 1)  # (i_j - 1)(|phi_j| - 1)
                specs.append(out_letters[pos: pos + a.arity] + slot_letters[s])
                ops.append(twisted_args[j])
                pos += a.arity
                j += 1
            else:
                specs[0] = specs[0].replace(slot_letters[s], out_letters[pos])
                pos += 1
        term = A.R.einsum(specs, out_letters + res_letter, *ops)
        total = total + term if sign_exp % 2 == 0 else total - term
    return TwistedCochain(n, sector, total)


def add(*terms) -> dict:
    """Formal sum of cochains keyed by (arity, sector); zero parts dropped."""
    acc: dict = {}
    for c in terms:
        key = (c.arity, c.sector)
        acc[key] = acc[key] + c.tensor if key in acc else c.tensor.copy()
    return {k: v for k, v in acc.items() if v.any()}


def hochschild_d(A: FiniteAlgebra, phi: TwistedCochain) -> TwistedCochain:
    """d_H(phi) = (-1)^{|phi|-1} m2{phi} - phi{m2}."""
    if phi.arity < 0:
        return A.zero(phi.arity + 1, phi.sector)
    m2 = A.m2()
    left = brace(A, m2, [phi])
    right = brace(A, phi, [m2]) if phi.arity else A.zero(phi.arity + 1, phi.sector)
    left = left if (phi.arity - 1) % 2 == 0 else -left
    return TwistedCochain(phi.arity + 1, phi.sector, left.tensor - right.tensor)


def curving_d(A: FiniteAlgebra, phi: TwistedCochain) -> TwistedCochain:
    """d_W(phi) = phi{m0}; zero on 0-cochains."""
    m0 = A.m0()
    if phi.arity <= 0:
        return A.zero(phi.arity - 1, phi.sector)
    return brace(A, phi, [m0])


def cup(A: FiniteAlgebra, phi1: TwistedCochain, phi2: TwistedCochain) -> TwistedCochain:
    """phi1 u phi2 = (-1)^{|phi1|(|phi2|-1)} m2{phi1, g1^* phi2}."""
    c = brace(A, A.m2(), [phi1, cochain_group_action(A, phi1.sector, phi2)])
    return c if (phi1.arity * (phi2.arity - 1)) % 2 == 0 else -c


# ---------------------------------------------------------------- crossed product and Psi

def crossed_product(A: FiniteAlgebra) -> FiniteAlgebra:
    """A[G] with (a g)(b h) = a (^g b) gh; basis index g*d + i."""
    d, n, F = A.d, A.order, A.R.F
    D = d * n
    mult = np.zeros((D, D, D, F), dtype=np.int64)
    for g in range(n):
        # e_i (^g e_j) as a (d, d, d, F) tensor
        prod = A.R.einsum(["ikr", "kj"], "ijr", A.mult, A.group[g])
        for h in range(n):
            gh = A.mul_g(g, h)
            mult[g * d:(g + 1) * d, h * d:(h + 1) * d, gh * d:(gh + 1) * d, :] = prod
    unit = np.zeros((D, F), dtype=np.int64)
    unit[:d] = A.unit
    W = None
    if A.W is not None:
        W = np.zeros((D, F), dtype=np.int64)
        W[:d] = A.W
    return FiniteAlgebra(A.R, mult, unit, W, None, (A.name or "A") + "[G]")


@dataclass
class InvariantCochain:
    """A sum over sectors of same-arity twisted cochains."""
    arity: int
    parts: dict = field(default_factory=dict)  # sector -> tensor

    @classmethod
    def from_cochains(cls, arity: int, cochains) -> "InvariantCochain":
        parts: dict = {}
        for c in cochains:
            if c.arity != arity:
                raise InvalidArgument("arity mismatch")
            parts[c.sector] = parts[c.sector] + c.tensor if c.sector in parts else c.tensor.copy()
        return cls(arity, parts)

    def cochains(self):
        return [TwistedCochain(self.arity, g, t) for g, t in sorted(self.parts.items())]


def symmetrize(A: FiniteAlgebra, phi: TwistedCochain) -> InvariantCochain:
    """sum_h h^* phi, a G-invariant cochain."""
    return InvariantCochain.from_cochains(phi.arity, [cochain_group_action(A, h, phi) for h in range(A.order)])


def is_invariant(A: FiniteAlgebra, phi: InvariantCochain) -> bool:
    base = add(*phi.cochains())
    for h in range(A.order):
        if add(*[cochain_group_action(A, h, c) for c in phi.cochains()]).keys() != base.keys():
            return False
        moved = add(*[cochain_group_action(A, h, c) for c in phi.cochains()])
        if any(not np.array_equal(moved[k], base[k]) for k in base):
            return False
    return True


def psi_map(A: FiniteAlgebra, AG: FiniteAlgebra, phi: InvariantCochain,
            check_invariant: bool = True) -> TwistedCochain:
    """Psi(phi)(a_1 g_1, ..) = phi(a_1, ^{g_1} a_2, ..) g_1 .. g_p, a cochain of A[G]."""
    if check_invariant and not is_invariant(A, phi):
        raise NotInvariant("Psi is only defined on G-invariant cochains")
    d, n, p = A.d, A.order, phi.arity
    D = d * n
    out = np.zeros((D,) * (p + 1) + (A.R.F,), dtype=np.int64)
    for gs in product(range(n), repeat=p):
        for g, T in phi.parts.items():
            X = T
            for s in range(1, p):
                X = _twist_inputs(A, X, p, A.prod_g(gs[:s]), [s])
            target = A.mul_g(g, A.prod_g(gs))
            idx = tuple(slice(gg * d, (gg + 1) * d) for gg in gs) + (slice(target * d, (target + 1) * d),)
            out[idx] += X
    return TwistedCochain(p, 0, out)


# ---------------------------------------------------------------- identity suite

def pre_jacobi_sides(A: FiniteAlgebra, phi, phis, psis):
    """Both sides of the twisted higher pre-Jacobi identity."""
    lhs = brace(A, brace(A, phi, phis), psis)
    n, m = len(phis), len(psis)
    terms = []
    # each psi gets a region: 2i = between phi_i and phi_{i+1} (0 = before phi_1),
    # 2i+1 = inside phi_{i+1}; regions are non-decreasing in the psi order
    for regions in product(range(2 * n + 1), repeat=m):
        if any(regions[k] > regions[k + 1] for k in range(m - 1)):
            continue
        inside = [[k for k in range(m) if regions[k] == 2 * i + 1] for i in range(n)]
        if any(len(inside[i]) > phis[i].arity for i in range(n)):
            continue
        pref = [0]
        for f in phis:
            pref.append(A.mul_g(f.sector, pref[-1]))
        entries = []
        sign_exp = 0
        for i in range(n):
            for k in range(m):
                if regions[k] == 2 * i:
                    entries.append(cochain_group_action(A, pref[i], psis[k]))
            inner = [cochain_group_action(A, pref[i], psis[k]) for k in inside[i]]
            entries.append(brace(A, phis[i], inner))
            j_i = inside[i][0] if inside[i] else next((k for k in range(m) if regions[k] > 2 * i + 1), m)
            xi = sum(psis[k].arity for k in range(j_i)) - j_i
            sign_exp += xi * (phis[i].arity - 1)
        for k in range(m):
            if regions[k] == 2 * n:
                entries.append(cochain_group_action(A, pref[n], psis[k]))
        t = brace(A, phi, entries)
        terms.append(t if sign_exp % 2 == 0 else -t)
    return lhs, terms


def _same(lhs_terms, rhs_terms) -> bool:
    a = add(*lhs_terms)
    b = add(*rhs_terms)
    if a.keys() != b.keys():
        return False
    return all(np.array_equal(a[k], b[k]) for k in a)


@dataclass
class IdentityResult:
    name: str
    passed: int = 0
    failed: int = 0
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0


@dataclass
class SuiteReport:
    algebra: str
    seed: int
    samples: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "seed": self.seed, "samples": self.samples, "passed": self.passed,
                "identities": [{"name": r.name, "passed": r.passed, "failed": r.failed, "witness": r.witness}
                               for r in sorted(self.results, key=lambda r: r.name)]}


def identity_suite(A: FiniteAlgebra, samples: int = 100, seed: int = 0, max_arity: int = 2) -> SuiteReport:
    """Seeded random checks of the brace, differential and Psi identities."""
    rng = np.random.default_rng(seed)
    results = {}

    def rec(name, ok, info):
        r = results.setdefault(name, IdentityResult(name))
        if ok:
            r.passed += 1
        else:
            r.failed += 1
            if r.witness is None:
                r.witness = info

    def rand(arity=None, sector=None):
        a = int(rng.integers(0, max_arity + 1)) if arity is None else arity
        return A.random_cochain(rng, a, sector)

    AG = crossed_product(A)
    curved = A.W is not None
    for s in range(samples):
        info = {"sample": s}
        # pre-Jacobi for (n, m) in {1,2}^2
        for n_, m_ in ((1, 1), (1, 2), (2, 1), (2, 2)):
            phis = [rand() for _ in range(n_)]
            phi = rand(int(rng.integers(n_, max_arity + 2)))
            psis = [rand() for _ in range(m_)]
            lhs, rhs = pre_jacobi_sides(A, phi, phis, psis)
            rec(f"pre_jacobi_{n_}{m_}", _same([lhs], rhs), info)
        # G-equivariance of braces
        phi, p1, p2 = rand(2), rand(), rand()
        h = int(rng.integers(0, A.order))
        lhs = cochain_group_action(A, h, brace(A, phi, [p1, p2]))
        rhs = brace(A, cochain_group_action(A, h, phi),
                    [cochain_group_action(A, h, p1), cochain_group_action(A, h, p2)])
        rec("g_equivariance", _same([lhs], [rhs]), info)
        # n = 1 twisted commutativity up to homotopy
        phi, p1 = rand(), rand()
        s1 = 1 if p1.arity % 2 == 0 else -1
        left = [hochschild_d(A, brace(A, phi, [p1])).scale(s1),
                brace(A, hochschild_d(A, phi), [p1]),
                brace(A, phi, [hochschild_d(A, p1)]).scale(-s1)]
        right = [cup(A, p1, cochain_group_action(A, A.inv[p1.sector], phi)),
                 cup(A, phi, p1).scale(-(1 if (phi.arity * p1.arity) % 2 == 0 else -1))]
        rec("twisted_commutativity_homotopy", _same(left, right), info)
        # Leibniz for d_H and d_H + d_W
        p1, p2 = rand(), rand()
        sg = 1 if p1.arity % 2 == 0 else -1
        rec("leibniz_dH", _same([hochschild_d(A, cup(A, p1, p2))],
                                [cup(A, hochschild_d(A, p1), p2), cup(A, p1, hochschild_d(A, p2)).scale(sg)]), info)
        if curved:
            def D(c):
                return [hochschild_d(A, c), curving_d(A, c)]
            c12 = cup(A, p1, p2)
            lhs = D(c12)
            rhs = [cup(A, x, p2) for x in D(p1)] + [cup(A, p1, x).scale(sg) for x in D(p2)]
            rec("leibniz_dH_plus_dW", _same(lhs, rhs), info)
        # squares
        c = rand()
        rec("dH_squared", not hochschild_d(A, hochschild_d(A, c)).tensor.any(), info)
        if curved:
            rec("dW_squared", not curving_d(A, curving_d(A, c)).tensor.any(), info)
            mixed = [hochschild_d(A, hochschild_d(A, c)), hochschild_d(A, curving_d(A, c)),
                     curving_d(A, hochschild_d(A, c)), curving_d(A, curving_d(A, c))]
            rec("dH_plus_dW_squared", not add(*mixed), info)
        # Psi preserves braces on invariant cochains
        f = symmetrize(A, rand(int(rng.integers(1, max_arity + 1))))
        f1 = symmetrize(A, rand())
        lhs = brace(AG, psi_map(A, AG, f, False), [psi_map(A, AG, f1, False)])
        inner = [brace(A, a, [b]) for a in f.cochains() for b in f1.cochains()]
        arity = f.arity + f1.arity - 1
        rhs = psi_map(A, AG, InvariantCochain.from_cochains(arity, inner), False)
        rec("psi_brace", np.array_equal(lhs.tensor, rhs.tensor), info)
    return SuiteReport(A.name, seed, samples, list(results.values()))


# ---------------------------------------------------------------- cohomology comparison

def _rank(vectors) -> int:
    """Exact rank of sparse vectors {index: Cyclotomic}."""
    pivots: dict = {}
    rank = 0
    for v in vectors:
        v = {k: c for k, c in v.items() if not c.is_zero()}
        while v:
            col = min(v)
            if col not in pivots:
                lead = v[col]
                pivots[col] = {k: c / lead for k, c in v.items()}
                rank += 1
                break
            row = pivots[col]
            f = v[col]
            for k, c in row.items():
                nv = v.get(k)
                nv = -f * c if nv is None else nv - f * c
                if nv.is_zero():
                    v.pop(k, None)
                else:
                    v[k] = nv
    return rank


def _to_sparse(R: ZetaRing, parts: dict, offsets: dict) -> dict:
    out = {}
    for key, T in parts.items():
        flat = T.reshape(-1, R.F)
        nz = np.nonzero(flat.any(axis=1))[0]
        base = offsets[key]
        for i in nz:
            out[base + int(i)] = R.to_cyclotomic(flat[i])
    return out


def _basis(A: FiniteAlgebra, arity: int, sector: int):
    size = A.d ** (arity + 1)
    for i in range(size):
        t = np.zeros(size * A.R.F, dtype=np.int64)
        t[i * A.R.F] = 1
        yield TwistedCochain(arity, sector, t.reshape((A.d,) * (arity + 1) + (A.R.F,)))


def _offsets(A: FiniteAlgebra, arity: int) -> dict:
    size = A.d ** (arity + 1)
    return {(arity, g): g * size for g in range(A.order)}


def invariant_cohomology_dims(A: FiniteAlgebra, degrees=(0, 1, 2)) -> list:
    """dim H^p(C(A, A[G])^G, d_H) via the averaging projector."""
    def proj_images(p):
        return [add(*[cochain_group_action(A, h, b) for h in range(A.order)])
                for g in range(A.order) for b in _basis(A, p, g)]

    ranks_P = {}
    ranks_dP = {}
    for p in sorted(set(degrees) | {q - 1 for q in degrees if q > 0}):
        imgs = proj_images(p)
        ranks_P[p] = _rank([_to_sparse(A.R, im, _offsets(A, p)) for im in imgs])
        dimgs = []
        for im in imgs:
            terms = [hochschild_d(A, TwistedCochain(p, g, T)) for (_, g), T in im.items()]
            dimgs.append(_to_sparse(A.R, add(*terms), _offsets(A, p + 1)))
        ranks_dP[p] = _rank(dimgs)
    return [ranks_P[p] - ranks_dP[p] - (ranks_dP[p - 1] if p > 0 else 0) for p in degrees]


def hochschild_cohomology_dims(B: FiniteAlgebra, degrees=(0, 1, 2)) -> list:
    """dim HH^p(B, B) for an algebra with trivial group."""
    ranks = {}
    for p in sorted(set(degrees) | {q - 1 for q in degrees if q > 0}):
        ranks[p] = _rank([_to_sparse(B.R, add(hochschild_d(B, b)), _offsets(B, p + 1)) for b in _basis(B, p, 0)])
    return [B.d ** (p + 1) - ranks[p] - (ranks[p - 1] if p > 0 else 0) for p in degrees]


def psi_comparison(A: FiniteAlgebra, degrees=(0, 1, 2)) -> dict:
    inv = invariant_cohomology_dims(A, degrees)
    full = hochschild_cohomology_dims(crossed_product(A), degrees)
    return {"algebra": A.name, "degrees": list(degrees), "invariant": inv, "crossed_product": full,
            "agree": inv == full}
