"""The orbifold B-model state space of (W, G): sectors, cup product, group
action, pairing and the G-Frobenius axiom checks."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .core import GroupElement, Polynomial, group_act, sort_sign
from .cyclo import ONE, ZERO, Cyclotomic, root_of_unity
from .errors import IdentityElement, InvalidArgument
from .invertible import (Atom, SymmetryGroup, character_chi, decompose_atomic, fixed_locus,
                         symmetry_group, validate_invertible, weights)
from .milnor import JacClass, JacobianRing, build_jacobian, restricted_ring


def _local(g: GroupElement, block) -> GroupElement:
    return GroupElement(g.phases[v - 1] for v in block)


def _to_global(p: Polynomial, block, N: int) -> Polynomial:
    terms = {}
    for m, c in p.terms.items():
        e = [0] * N
        for a, v in enumerate(block):
            e[v - 1] = m[a]
        terms[tuple(e)] = c
    return Polynomial(N, terms)


def atom_twisted_hessian(atom: Atom, g: GroupElement) -> Polynomial:
    """Hess^g in the atom's local variables; g is given in local coordinates."""
    if g.is_identity():
        raise IdentityElement("the twisted Hessian needs g != e")
    n = atom.exponents
    k = len(n)
    lam = g.lambdas
    exps = [0] * k
    if atom.kind == "fermat":
        coef = Cyclotomic.from_rational(n[0]) / (1 - lam[0])
        exps[0] = n[0] - 2
    elif atom.kind == "loop":
        num = (-1) ** (k + 1)
        prod = 1
        for x in n:
            prod *= x
        coef = Cyclotomic.from_rational(num + prod)
        for i in range(k):
            coef = coef / (1 - lam[i])
            exps[i] = n[i] - 1
    else:
        l = chain_length(g)
        prod = 1
        coef = ONE
        for i in range(l):
            prod *= n[i]
            coef = coef / (1 - lam[i])
            exps[i] = n[i] - 1
        coef = coef * prod
        exps[0] -= 1
        if l < k:
            exps[l] += 1
    return Polynomial(k, {tuple(exps): coef})


def chain_length(g: GroupElement) -> int:
    l = 0
    for p in g.phases:
        if not p:
            break
        l += 1
    return l


def twisted_hessian(W: Polynomial, g: GroupElement) -> Polynomial:
    """Hess^g(W) for an atomic invertible W, in W's own variables."""
    dec = decompose_atomic(validate_invertible(W))
    if len(dec) != 1:
        raise InvalidArgument("twisted_hessian expects a single atom")
    atom = dec.atoms[0]
    return _to_global(atom_twisted_hessian(atom, _local(g, atom.block)), atom.block, W.N)


def rho_cocycle(g: GroupElement, h: GroupElement) -> Cyclotomic:
    """rho_{g,h} = prod over moving indices i of h of (lambda_i^g)^-1."""
    return root_of_unity(-sum((g.phases[i - 1] for i in h.moving()), Fraction(0)))


@dataclass
class Sector:
    g: GroupElement
    ring: JacobianRing
    parity: int

    @property
    def dim(self) -> int:
        return self.ring.mu


class SectorClass:
    """f * 1_g with f a class in Jac(W_g)."""

    __slots__ = ("algebra", "g", "cls")

    def __init__(self, algebra: "OrbifoldAlgebra", g: GroupElement, cls: JacClass):
        self.algebra = algebra
        self.g = g
        self.cls = cls

    @property
    def parity(self) -> int:
        return self.algebra.sectors[self.g].parity

    @property
    def coeffs(self):
        return self.cls.coeffs

    def is_zero(self) -> bool:
        return self.cls.is_zero()

    def __add__(self, other: "SectorClass") -> "SectorClass":
        if other.g != self.g:
            raise InvalidArgument("cannot add classes from different sectors")
        return SectorClass(self.algebra, self.g, self.cls + other.cls)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SectorClass":
        return SectorClass(self.algebra, self.g, self.cls.scale(c))

    def __eq__(self, other):
        if not isinstance(other, SectorClass):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.g == other.g and self.cls == other.cls

    __hash__ = None

    def pretty(self) -> str:
        return f"({self.cls.pretty()})*1_[{self.g}]"

    def __repr__(self):
        return f"SectorClass({self.pretty()})"

    def to_json(self) -> dict:
        return {"sector": str(self.g), "parity": self.parity,
                "coeffs": [c.to_json() for c in self.cls.coeffs], "pretty": self.pretty()}


class OrbifoldAlgebra:
    """HH(A_W, A_W[G]) presented sector by sector as Jacobian rings."""

    def __init__(self, W: Polynomial, G: SymmetryGroup):
        self.W = W
        self.N = W.N
        self.E = validate_invertible(W)
        self.decomposition = decompose_atomic(self.E)
        self.q = weights(self.E)
        self.G = G
        for g in G:
            if g.N != self.N:
                raise InvalidArgument("group and polynomial dimensions differ")
        self.J = build_jacobian(W, self.q)
        self.sectors = {}
        for g in G:
            ring = restricted_ring(self.J, g)
            self.sectors[g] = Sector(g, ring, len(g.moving()) % 2)
        self.chi = {g: character_chi(g) for g in G}
        self.rho = {(g, h): rho_cocycle(g, h) for g in G for h in G}
        self._gen_cache: dict = {}
        self._struct: dict = {}

    # ---- basics
    @property
    def elements(self):
        return self.G.elements

    def dimension(self) -> int:
        return sum(s.dim for s in self.sectors.values())

    def basis(self) -> list[tuple[GroupElement, int]]:
        return [(g, k) for g in self.elements for k in range(self.sectors[g].dim)]

    def basis_class(self, g: GroupElement, k: int) -> SectorClass:
        s = self.sectors[g]
        return SectorClass(self, g, s.ring.basis_class(k, s.parity))

    def zero(self, g: GroupElement) -> SectorClass:
        s = self.sectors[g]
        return SectorClass(self, g, s.ring.zero(s.parity))

    def unit(self) -> SectorClass:
        e = GroupElement.identity(self.N)
        return self.make(e, Polynomial.constant(self.N))

    def generator(self, g: GroupElement) -> SectorClass:
        return self.make(g, Polynomial.constant(self.N))

    def make(self, g: GroupElement, f: Polynomial) -> SectorClass:
        """The class Pi_g(f) * 1_g."""
        if g not in self.sectors:
            raise InvalidArgument(f"{g} is not in the group")
        s = self.sectors[g]
        return SectorClass(self, g, s.ring.normal_form(f.substitute_zero(g.moving()), s.parity))

    # ---- generator products
    def _generator_sign(self, g: GroupElement) -> int:
        seq = [v for atom in self.decomposition for v in atom.block if g.phases[v - 1]]
        return sort_sign(seq)

    def generator_product_lift(self, g: GroupElement, h: GroupElement):
        """Polynomial c with 1_g cup 1_h = Pi_gh(c) 1_gh, or None when it vanishes."""
        key = (g, h)
        if key in self._gen_cache:
            return self._gen_cache[key]
        c = Polynomial.constant(self.N)
        parities_g, parities_h = [], []
        result = c
        for atom in self.decomposition:
            gk, hk = _local(g, atom.block), _local(h, atom.block)
            parities_g.append(len(gk.moving()) % 2)
            parities_h.append(len(hk.moving()) % 2)
            if gk.is_identity() or hk.is_identity():
                continue
            if gk * hk != GroupElement.identity(len(atom.block)):
                result = None
                break
            l = len(gk.moving())
            hess = atom_twisted_hessian(atom, gk).scale((-1) ** (l * (l - 1) // 2))
            result = result * _to_global(hess, atom.block, self.N)
        if result is not None:
            sign = self._generator_sign(g) * self._generator_sign(h) * self._generator_sign(g * h)
            kos = sum(parities_g[k] * parities_h[l] for k in range(len(parities_g)) for l in range(k))
            result = result.scale(sign * (-1) ** kos)
        self._gen_cache[key] = result
        return result

    def cup_generators(self, g: GroupElement, h: GroupElement) -> SectorClass:
        c = self.generator_product_lift(g, h)
        if c is None:
            return self.zero(g * h)
        return self.make(g * h, c)

    # ---- general cup product
    def cup_lifted(self, g: GroupElement, f: Polynomial, h: GroupElement, f2: Polynomial,
                   c: Polynomial | None = None) -> SectorClass:
        """(f 1_g) cup (f2 1_h) computed from arbitrary lifts f, f2 (and c)."""
        if c is None:
            c = self.generator_product_lift(g, h)
            if c is None:
                return self.zero(g * h)
        return self.make(g * h, f * group_act(g, f2) * c)

    def structure_constant(self, g: GroupElement, i: int, h: GroupElement, j: int) -> SectorClass:
        key = (g, i, h, j)
        if key not in self._struct:
            m1 = Polynomial.monomial(self.sectors[g].ring.basis[i])
            m2 = Polynomial.monomial(self.sectors[h].ring.basis[j])
            self._struct[key] = self.cup_lifted(g, m1, h, m2)
        return self._struct[key]

    def cup(self, a: SectorClass, b: SectorClass) -> SectorClass:
        out = self.zero(a.g * b.g)
        for i, x in enumerate(a.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(b.coeffs):
                if y.is_zero():
                    continue
                out = out + self.structure_constant(a.g, i, b.g, j).scale(x * y)
        return out

    # ---- group action and pairing
    def act(self, g: GroupElement, a: SectorClass) -> SectorClass:
        ring = self.sectors[a.g].ring
        r = self.rho[(g, a.g)]
        coeffs = [c * g.scalar(m) * r for c, m in zip(a.coeffs, ring.basis)]
        return SectorClass(self, a.g, JacClass(ring, coeffs, a.cls.parity))

    def eta(self, a: SectorClass, b: SectorClass) -> Cyclotomic:
        if not (a.g * b.g).is_identity():
            return ZERO
        prod = self.cup(a, b)
        return self.J.residue(prod.cls)

    # ---- invariants
    def invariant_subalgebra(self):
        """Basis of G-invariant classes and the induced product table."""
        basis = []
        for h in self.elements:
            ring = self.sectors[h].ring
            dim = ring.mu
            rows = []
            for g in self.elements:
                for k in range(dim):
                    img = self.act(g, self.basis_class(h, k)).coeffs
                    rows.append([img[j] - (1 if j == k else 0) for j in range(dim)])
            # kernel of the stacked (rho(g) - 1); columns index the input basis
            cols = [[rows[r][c] for r in range(len(rows))] for c in range(dim)]
            for v in _kernel([[rows[r][c] for c in range(dim)] for r in range(len(rows))], dim):
                basis.append(SectorClass(self, h, JacClass(ring, v, self.sectors[h].parity)))
            del cols
        table = {}
        for a_i, a in enumerate(basis):
            for b_i, b in enumerate(basis):
                p = self.cup(a, b)
                coords = _express(p, [x for x in basis if x.g == p.g], self)
                if coords is None:
                    raise AssertionError("invariant classes are not closed under the product")
                table[(a_i, b_i)] = coords
        return basis, table

    def check_g_frobenius(self) -> "FrobeniusReport":
        return check_g_frobenius(self)

    def to_json(self) -> dict:
        return {
            "W": self.W.pretty(),
            "group_order": self.G.order,
            "sectors": [{"g": str(g), "parity": s.parity, "dim": s.dim,
                         "basis": [list(m) for m in s.ring.basis]}
                        for g, s in self.sectors.items()],
        }


def _kernel(rows, n):
    """Basis of {v : rows * v = 0} over Q(zeta)."""
    A = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv]
    out = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for i, pc in enumerate(piv):
            v[pc] = -A[i][fc]
        out.append(v)
    return out


def _rank(rows, n) -> int:
    return n - len(_kernel(rows, n))


def _express(p: SectorClass, basis, algebra):
    if p.is_zero():
        return [ZERO] * len(basis)
    if not basis:
        return None
    dim = len(p.coeffs)
    rows = [[b.coeffs[j] for b in basis] + [-p.coeffs[j]] for j in range(dim)]
    ker = _kernel(rows, len(basis) + 1)
    for v in ker:
        if not v[-1].is_zero():
            return [x / v[-1] for x in v[:-1]]
    return None


# ------------------------------------------------------------------ axioms

@dataclass
class FrobeniusReport:
    results: dict = field(default_factory=dict)  # axiom -> None (pass) or witness dict

    @property
    def passed(self) -> bool:
        return all(v is None for v in self.results.values())

    def record(self, axiom: str, witness=None):
        if axiom not in self.results or self.results[axiom] is None:
            self.results.setdefault(axiom, None)
            if witness is not None:
                self.results[axiom] = witness

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "axioms": {k: ("pass" if v is None else {"status": "fail", "witness": v})
                           for k, v in self.results.items()}}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["axiom", "status", "witness"])
        for k, v in self.results.items():
            w.writerow([k, "pass" if v is None else "fail", "" if v is None else json.dumps(v)])
        return buf.getvalue()


def _w(**kw):
    out = {}
    for k, v in kw.items():
        if isinstance(v, (SectorClass, Cyclotomic)):
            out[k] = v.to_json()
        elif isinstance(v, GroupElement):
            out[k] = str(v)
        else:
            out[k] = v
    return out


def _supertrace(O: OrbifoldAlgebra, g: GroupElement, op) -> Cyclotomic:
    """Supertrace on H_g of a linear map given on basis classes."""
    s = O.sectors[g]
    sign = -1 if s.parity else 1
    tr = ZERO
    for k in range(s.dim):
        img = op(O.basis_class(g, k))
        if img.g != g:
            raise AssertionError("operator leaves the sector")
        tr = tr + img.coeffs[k]
    return tr * sign


def check_g_frobenius(O: OrbifoldAlgebra) -> FrobeniusReport:
    rep = FrobeniusReport()
    G = O.elements
    basis = [O.basis_class(g, k) for g, k in O.basis()]
    e = GroupElement.identity(O.N)
    one = O.unit()

    # sector compatibility and parity additivity
    rep.record("sector_compatibility")
    for a in basis:
        for b in basis:
            p = O.cup(a, b)
            if p.g != a.g * b.g:
                rep.record("sector_compatibility", _w(alpha=a, beta=b, product=p))
            if not p.is_zero() and p.parity != (a.parity + b.parity) % 2:
                rep.record("sector_compatibility", _w(alpha=a, beta=b, product=p, reason="parity"))

    # unit and associativity
    rep.record("unit")
    for a in basis:
        if O.cup(one, a) != a or O.cup(a, one) != a:
            rep.record("unit", _w(alpha=a, lhs=O.cup(one, a), rhs=O.cup(a, one)))
    rep.record("associativity")
    for a in basis:
        for b in basis:
            ab = O.cup(a, b)
            for c in basis:
                lhs, rhs = O.cup(ab, c), O.cup(a, O.cup(b, c))
                if lhs != rhs:
                    rep.record("associativity", _w(alpha=a, beta=b, gamma=c, lhs=lhs, rhs=rhs))

    # group action
    rep.record("action_composition")
    rep.record("self_sector_scalar")
    rep.record("g_equivariance")
    for g in G:
        if O.act(g, one) != one:
            rep.record("g_equivariance", _w(g=g, lhs=O.act(g, one), rhs=one, reason="unit"))
        for a in basis:
            for h in G:
                if O.act(g, O.act(h, a)) != O.act(g * h, a):
                    rep.record("action_composition", _w(g=g, h=h, alpha=a))
            if a.g == g and O.act(g, a) != a.scale(O.chi[g].inverse()):
                rep.record("self_sector_scalar", _w(g=g, alpha=a, lhs=O.act(g, a)))
            for b in basis:
                lhs = O.act(g, O.cup(a, b))
                rhs = O.cup(O.act(g, a), O.act(g, b))
                if lhs != rhs:
                    rep.record("g_equivariance", _w(g=g, alpha=a, beta=b, lhs=lhs, rhs=rhs))

    # twisted commutativity
    rep.record("twisted_commutativity")
    for a in basis:
        for b in basis:
            lhs = O.cup(a, O.act(a.g.inverse(), b))
            rhs = O.cup(b, a).scale((-1) ** (a.parity * b.parity))
            if lhs != rhs:
                rep.record("twisted_commutativity", _w(g=a.g, h=b.g, alpha=a, beta=b, lhs=lhs, rhs=rhs))

    # pairing
    rep.record("eta_selection")
    rep.record("eta_equivariance")
    rep.record("frobenius_compatibility")
    for a in basis:
        for b in basis:
            v = O.eta(a, b)
            if not (a.g * b.g).is_identity() and not v.is_zero():
                rep.record("eta_selection", _w(alpha=a, beta=b, value=v))
            for g in G:
                lhs = O.eta(O.act(g, a), O.act(g, b))
                rhs = v * O.chi[g] ** -2
                if lhs != rhs:
                    rep.record("eta_equivariance", _w(g=g, alpha=a, beta=b, lhs=lhs, rhs=rhs))
            ab = O.cup(a, b)
            for c in basis:
                if not (a.g * b.g * c.g).is_identity():
                    continue
                lhs = O.eta(ab, c)
                rhs = O.eta(a, O.cup(b, c))
                if lhs != rhs:
                    rep.record("frobenius_compatibility", _w(alpha=a, beta=b, gamma=c, lhs=lhs, rhs=rhs))

    rep.record("eta_nondegenerate")
    gram = [[O.eta(a, b) for b in basis] for a in basis]
    r = _rank(gram, len(basis))
    if r != len(basis):
        rep.record("eta_nondegenerate", {"rank": r, "dimension": len(basis)})

    # projective trace axiom; alpha runs over H_{ghg^-1h^-1} = H_e
    rep.record("projective_trace")
    He = [O.basis_class(e, k) for k in range(O.sectors[e].dim)]
    for g in G:
        for h in G:
            comm = g * h * g.inverse() * h.inverse()
            alphas = He if comm.is_identity() else [O.basis_class(comm, k) for k in range(O.sectors[comm].dim)]
            for a in alphas:
                lhs = O.chi[h] * _supertrace(O, g, lambda x: O.cup(a, O.act(h, x)))
                rhs = O.chi[g].inverse() * _supertrace(O, h, lambda x: O.act(g.inverse(), O.cup(a, x)))
                if lhs != rhs:
                    rep.record("projective_trace", _w(g=g, h=h, alpha=a, lhs=lhs, rhs=rhs))
    return rep


def build_orbifold(W: Polynomial, G: SymmetryGroup | None = None) -> OrbifoldAlgebra:
    if G is None:
        G = symmetry_group(validate_invertible(W))
    return OrbifoldAlgebra(W, G)


def cup_generators(O: OrbifoldAlgebra, g: GroupElement, h: GroupElement) -> SectorClass:
    return O.cup_generators(g, h)


def cup_general(O: OrbifoldAlgebra, a: SectorClass, b: SectorClass) -> SectorClass:
    return O.cup(a, b)


def group_action(O: OrbifoldAlgebra, g: GroupElement, a: SectorClass) -> SectorClass:
    return O.act(g, a)


def pairing_eta(O: OrbifoldAlgebra, a: SectorClass, b: SectorClass) -> Cyclotomic:
    return O.eta(a, b)


def invariant_subalgebra(O: OrbifoldAlgebra):
    return O.invariant_subalgebra()


# ------------------------------------------------------------------ Kunneth

def kunneth_mismatches(O12: OrbifoldAlgebra, O1: OrbifoldAlgebra, O2: OrbifoldAlgebra) -> list:
    """Compare structure constants of W1 (+) W2 with the signed tensor product.

    Variables of W2 are placed after those of W1.  Returns a list of
    mismatching basis quadruples (empty when everything agrees).
    """
    N1, N = O1.N, O12.N

    def embed(a1: SectorClass, a2: SectorClass) -> SectorClass:
        g = GroupElement(a1.g.phases + a2.g.phases)
        f1 = a1.cls.lift()
        f2 = a2.cls.lift()
        p1 = Polynomial(N, {m + (0,) * (N - N1): c for m, c in f1.terms.items()})
        p2 = Polynomial(N, {(0,) * N1 + m: c for m, c in f2.terms.items()})
        seq = list(a1.g.moving()) + [N1 + i for i in a2.g.moving()]
        sign = sort_sign(seq) * O12._generator_sign(g)
        return O12.make(g, (p1 * p2).scale(sign))

    bad = []
    B1 = [O1.basis_class(g, k) for g, k in O1.basis()]
    B2 = [O2.basis_class(g, k) for g, k in O2.basis()]
    for a1 in B1:
        for a2 in B2:
            x = embed(a1, a2)
            for b1 in B1:
                for b2 in B2:
                    y = embed(b1, b2)
                    lhs = O12.cup(x, y)
                    rhs = embed(O1.cup(a1, b1), O2.cup(a2, b2)).scale((-1) ** (a2.parity * b1.parity))
                    if lhs != rhs:
                        bad.append((a1, a2, b1, b2, lhs, rhs))
    return bad
