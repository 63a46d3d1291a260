"""Graded Jacobian rings Jac(W) = A/(dW) by degreewise exact row reduction."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .core import GroupElement, Monomial, Polynomial, mono_degree, mono_mul, order_key, sort_sign
from .cyclo import ZERO, Cyclotomic, as_cyclotomic
from .errors import InvalidArgument, NonIsolated, SocleDegenerate


def _monomials_upto(N: int, variables: Sequence[int], q, bound: Fraction) -> dict:
    """All monomials in the given (1-based) variables of weighted degree <= bound."""
    out: dict = {}
    vs = list(variables)

    def rec(k, exps, deg):
        if k == len(vs):
            out.setdefault(deg, []).append(tuple(exps))
            return
        i = vs[k] - 1
        e = 0
        while deg + e * q[i] <= bound:
            exps[i] = e
            rec(k + 1, exps, deg + e * q[i])
            e += 1
        exps[i] = 0

    rec(0, [0] * N, Fraction(0))
    return out


def _rref(rows: list[list[Fraction]], ncols: int):
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


class JacClass:
    """A class in a Jacobian ring, as coefficients over the ring's basis."""

    __slots__ = ("ring", "coeffs", "parity")

    def __init__(self, ring: "JacobianRing", coeffs, parity: int = 0):
        self.ring = ring
        self.coeffs = tuple(as_cyclotomic(c) for c in coeffs)
        self.parity = parity % 2
        if len(self.coeffs) != ring.mu:
            raise InvalidArgument("coefficient vector length differs from the Milnor number")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "JacClass") -> "JacClass":
        return JacClass(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.parity)

    def __sub__(self, other: "JacClass") -> "JacClass":
        return JacClass(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.parity)

    def __neg__(self):
        return JacClass(self.ring, [-a for a in self.coeffs], self.parity)

    def scale(self, c) -> "JacClass":
        return JacClass(self.ring, [a * c for a in self.coeffs], self.parity)

    def __eq__(self, other):
        if not isinstance(other, JacClass):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    __hash__ = None

    def lift(self) -> Polynomial:
        """Canonical lift: basis monomials lift to themselves."""
        return Polynomial(self.ring.N, {m: c for m, c in zip(self.ring.basis, self.coeffs) if not c.is_zero()})

    def pretty(self) -> str:
        return self.lift().pretty()

    def __repr__(self):
        return f"JacClass({self.pretty()})"

    def to_json(self) -> dict:
        return {"basis": [list(m) for m in self.ring.basis],
                "coeffs": [c.to_json() for c in self.coeffs],
                "pretty": self.pretty()}


class JacobianRing:
    """Jac(W) on a subset of the variables (all of them by default).

    ``variables`` are 1-based indices; monomials keep the ambient length N so
    that classes of restricted rings stay comparable with A.
    """

    def __init__(self, W: Polynomial, q: Sequence, variables: Sequence[int] | None = None):
        self.W = W
        self.N = W.N
        self.q = tuple(Fraction(x) for x in q)
        if len(self.q) != self.N:
            raise InvalidArgument("one weight per variable is required")
        self.variables = tuple(sorted(variables)) if variables is not None else tuple(range(1, self.N + 1))
        extra = W.variables() - set(self.variables)
        if extra:
            raise InvalidArgument(f"W involves variables {sorted(extra)} outside the ring")
        for c in W.terms.values():
            if not c.is_rational():
                raise InvalidArgument("W must have rational coefficients")
        self.socle_degree = sum((1 - 2 * self.q[i - 1] for i in self.variables), Fraction(0))
        maxq = max((self.q[i - 1] for i in self.variables), default=Fraction(0))
        top = self.socle_degree + maxq
        self._by_degree = _monomials_upto(self.N, self.variables, self.q, top)
        self._partials = {i: W.derivative(i) for i in self.variables}
        self._nf: dict = {}
        basis_by_degree: dict = {}
        for d in sorted(self._by_degree):
            basis_by_degree[d] = self._reduce_degree(d)
        for d, b in basis_by_degree.items():
            if d > self.socle_degree and b:
                raise NonIsolated(f"Jacobian ring does not vanish in degree {d}")
        top_basis = basis_by_degree.get(self.socle_degree, [])
        if len(top_basis) != 1:
            raise NonIsolated(f"socle has dimension {len(top_basis)}")
        self.basis = sorted((m for b in basis_by_degree.values() for m in b),
                            key=lambda m: order_key(m, self.q))
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.mu = len(self.basis)
        self.socle = top_basis[0]
        self.socle_index = self.index[self.socle]
        self.basis_by_degree = {d: sorted(b, key=lambda m: order_key(m, self.q))
                                for d, b in basis_by_degree.items() if b}
        self.hessian = classical_hessian(W, self.variables)
        self.hessian_class = self.normal_form(self.hessian)
        self._hess_socle = self.hessian_class.coeffs[self.socle_index]

    def _reduce_degree(self, d: Fraction) -> list:
        monos = sorted(self._by_degree[d], key=lambda m: order_key(m, self.q), reverse=True)
        col = {m: k for k, m in enumerate(monos)}
        rows = []
        for i, dW in self._partials.items():
            if dW.is_zero():
                continue
            dd = d - (1 - self.q[i - 1])
            for mult in self._by_degree.get(dd, []):
                row = [Fraction(0)] * len(monos)
                for m, c in dW.terms.items():
                    row[col[mono_mul(m, mult)]] += c.to_fraction()
                rows.append(row)
        red, piv = _rref(rows, len(monos))
        pivset = set(piv)
        basis = [m for k, m in enumerate(monos) if k not in pivset]
        for m in basis:
            self._nf[m] = {m: Fraction(1)}
        for r, c in zip(red, piv):
            self._nf[monos[c]] = {monos[k]: -r[k] for k in range(len(monos))
                                  if k not in pivset and r[k] != 0}
        return basis

    def degree(self, m: Monomial) -> Fraction:
        return mono_degree(m, self.q)

    def monomial_nf(self, m: Monomial) -> dict:
        """Normal form of one monomial as {basis monomial: rational}."""
        if m in self._nf:
            return self._nf[m]
        for i, e in enumerate(m):
            if e and (i + 1) not in self.variables:
                raise InvalidArgument(f"variable x{i + 1} is not a variable of this ring")
        return {}  # above the socle degree

    def normal_form(self, f: Polynomial, parity: int = 0) -> JacClass:
        if f.N != self.N:
            raise InvalidArgument("dimension mismatch")
        acc: dict = {}
        for m, c in f.terms.items():
            for b, r in self.monomial_nf(m).items():
                k = self.index[b]
                v = c * r
                acc[k] = acc[k] + v if k in acc else v
        coeffs = [acc.get(k, ZERO) for k in range(self.mu)]
        return JacClass(self, coeffs, parity)

    def zero(self, parity: int = 0) -> JacClass:
        return JacClass(self, [ZERO] * self.mu, parity)

    def basis_class(self, k: int, parity: int = 0) -> JacClass:
        return JacClass(self, [1 if j == k else 0 for j in range(self.mu)], parity)

    def one(self) -> JacClass:
        return self.normal_form(Polynomial.constant(self.N))

    def multiply(self, a: JacClass, b: JacClass) -> JacClass:
        return self.normal_form(a.lift() * b.lift(), a.parity + b.parity)

    def socle_coefficient(self, a: JacClass) -> Cyclotomic:
        return a.coeffs[self.socle_index]

    def residue(self, a: JacClass) -> Cyclotomic:
        """Res[a dx / dW], normalised by Res[hess W] = mu."""
        if self._hess_socle.is_zero():
            raise SocleDegenerate("the Hessian class vanishes")
        return self.socle_coefficient(a) * self.mu / self._hess_socle

    def basis_dump(self) -> list:
        return [{"degree": str(d), "monomials": [list(m) for m in ms]}
                for d, ms in sorted(self.basis_by_degree.items())]

    def __repr__(self):
        return f"JacobianRing(W={self.W.pretty()}, variables={self.variables}, mu={self.mu})"


def build_jacobian(W: Polynomial, q: Sequence, variables: Sequence[int] | None = None) -> JacobianRing:
    return JacobianRing(W, q, variables)


def normal_form(J: JacobianRing, f: Polynomial) -> JacClass:
    return J.normal_form(f)


def residue_pairing(J: JacobianRing, f1: JacClass, f2: JacClass) -> Cyclotomic:
    if f1.ring is not J or f2.ring is not J:
        raise InvalidArgument("classes belong to a different ring")
    return J.residue(J.multiply(f1, f2))


def restriction_map(J_W: JacobianRing, g: GroupElement, f: JacClass | Polynomial) -> JacClass:
    """Pi_g: set the moving variables to zero and reduce in Jac(W_g)."""
    target = restricted_ring(J_W, g)
    poly = f.lift() if isinstance(f, JacClass) else f
    return target.normal_form(poly.substitute_zero(g.moving()))


def restricted_ring(J_W: JacobianRing, g: GroupElement) -> JacobianRing:
    cache = J_W.__dict__.setdefault("_restricted", {})
    key = g.moving()
    if key not in cache:
        fixed = [i for i in J_W.variables if i not in key]
        if not key:
            cache[key] = J_W
        else:
            cache[key] = JacobianRing(J_W.W.substitute_zero(key), J_W.q, fixed)
    return cache[key]


def determinant(M: list[list[Polynomial]], N: int) -> Polynomial:
    """Leibniz expansion; fine for the small sizes used here."""
    n = len(M)
    total = Polynomial.zero(N) if n else Polynomial.constant(N)
    for perm in permutations(range(n)):
        term = Polynomial.constant(N, sort_sign(perm))
        for i, j in enumerate(perm):
            if M[i][j].is_zero():
                break
            term = term * M[i][j]
        else:
            total = total + term
    return total


def classical_hessian(W: Polynomial, variables: Sequence[int] | None = None) -> Polynomial:
    vs = list(variables) if variables is not None else list(range(1, W.N + 1))
    M = [[W.derivative(i).derivative(j) for j in vs] for i in vs]
    return determinant(M, W.N)
