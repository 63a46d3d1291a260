"""Koszul model of twisted Hochschild cochains, and brute-force oracles for
the cup product of a g-sector with its inverse sector.

Cochains on the (reduced) bar side are evaluated concretely: a cochain is a
callable on tuples of monomials returning an element of A[G~], stored as a
dict {group element: Polynomial}.  Products in A[G~] follow
(a g)(b h) = a (^g b) gh.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

from .core import (GroupElement, KoszulElement, Monomial, Polynomial, group_act,
                   quantum_partial, rho_prefix, sort_sign)
from .cyclo import ONE, Cyclotomic, quantum_bracket
from .errors import IdentityElement, InvalidArgument, NonIdentityTarget, SingularTwist, UnsupportedWord
from .invertible import Atom, decompose_atomic, validate_invertible, weights
from .milnor import JacClass, JacobianRing, determinant, restricted_ring
from .orbifold import atom_twisted_hessian, chain_length


# ---------------------------------------------------------------- A[G~] helpers

def _ag_add(acc: dict, other: dict, c=1) -> dict:
    for g, f in other.items():
        f = f if c == 1 else f.scale(c)
        acc[g] = acc[g] + f if g in acc else f
    return acc


def _ag_clean(a: dict) -> dict:
    return {g: f for g, f in a.items() if not f.is_zero()}


def _ag_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for g, f in a.items():
        for h, f2 in b.items():
            p = f * group_act(g, f2)
            k = g * h
            out[k] = out[k] + p if k in out else p
    return _ag_clean(out)


def _ag_right(a: dict, poly: Polynomial) -> dict:
    """(f h) * b = f (^h b) h."""
    return _ag_clean({h: f * group_act(h, poly) for h, f in a.items()})


def _mono(N: int, exps) -> Polynomial:
    return Polynomial._raw(N, {tuple(exps): ONE})


def _unit_vector(N: int, i: int) -> Monomial:
    return tuple(1 if k == i - 1 else 0 for k in range(N))


# ---------------------------------------------------------------- Koszul side

def koszul_d(c: KoszulElement) -> KoszulElement:
    """d_K(phi g) = sum_i (x_i - ^g x_i) e_i phi g."""
    N = c.N
    out = KoszulElement(N)
    for (word, g), f in c.terms.items():
        piece = KoszulElement(N, {(word, g): f})
        for i in g.moving():
            coef = 1 - g.lambdas[i - 1]
            left = KoszulElement.term(Polynomial.variable(i, N).scale(coef), (i,), GroupElement.identity(N))
            out = out + left * piece
    return out


def p_values(W: Polynomial, g: GroupElement) -> list:
    """p_i = rho_i(g)(d^g_{x_i} W), the coefficients of the curving differential."""
    return [rho_prefix(g, i, quantum_partial(g, i, W)) for i in range(1, W.N + 1)]


def koszul_curving(c: KoszulElement, W: Polynomial) -> KoszulElement:
    """Contraction with the p_i: removes one e_i with the Koszul sign."""
    N = c.N
    cache: dict = {}
    acc: dict = {}
    for (word, g), f in c.terms.items():
        if g not in cache:
            cache[g] = p_values(W, g)
        p = cache[g]
        for k, i in enumerate(word):
            term = f * p[i - 1]
            if term.is_zero():
                continue
            if k % 2:
                term = -term
            key = (word[:k] + word[k + 1:], g)
            acc[key] = acc[key] + term if key in acc else term
    return KoszulElement(N, acc)


@dataclass
class ClosedReport:
    closed: bool
    residual: KoszulElement

    def __bool__(self):
        return self.closed


def check_closed(c: KoszulElement, W: Polynomial) -> ClosedReport:
    res = koszul_d(c) + koszul_curving(c, W)
    return ClosedReport(res.is_zero(), res)


def _atomic(W: Polynomial) -> Atom:
    dec = decompose_atomic(validate_invertible(W))
    if len(dec) != 1:
        raise InvalidArgument("expected a single invertible atom")
    atom = dec.atoms[0]
    if atom.block != tuple(range(1, W.N + 1)):
        raise InvalidArgument("atom variables must be listed in atom order x1..xN")
    return atom


def _check_sector(W: Polynomial, g: GroupElement):
    if g.N != W.N:
        raise InvalidArgument("dimension mismatch")
    if g.is_identity():
        raise IdentityElement("a sector representative needs g != e")


def _b_coefficients(atom: Atom, g: GroupElement) -> list:
    """b_i^g for the loop/chain representative (index i -> Polynomial)."""
    n = atom.exponents
    N = len(n)
    lam = g.lambdas
    out = []
    for i in range(N):
        if lam[i] == 1:
            out.append(None)  # only moving indices carry a coefficient
            continue
        e = [0] * N
        e[i] = n[i] - 1
        if atom.kind == "loop" and i == N - 1:
            coef = Cyclotomic.from_rational((-1) ** (N - 1)) / (1 - lam[i])
        else:
            coef = lam[i] ** n[i] / (1 - lam[i])
        out.append(Polynomial(N, {tuple(e): coef}))
    return out


def _gapped_subsets(candidates: Sequence[int], s: int, cyclic_N: int | None):
    """Subsets with consecutive gaps > 1 (and a wrap-around gap for loops)."""
    for b in combinations(candidates, s):
        if any(b[k + 1] - b[k] <= 1 for k in range(s - 1)):
            continue
        if cyclic_N is not None and s and b[0] + cyclic_N - b[-1] <= 1:
            continue
        yield b


def _atom_kappa(atom: Atom, g: GroupElement) -> KoszulElement:
    """kappa^g for one atom in its own variables; g is local and nontrivial."""
    N = len(atom.exponents)
    if atom.kind == "fermat":
        return KoszulElement.term(Polynomial.constant(N), (1,), g)
    b = _b_coefficients(atom, g)
    if atom.kind == "loop":
        I_g = list(range(1, N + 1))
        cands, cyc = I_g, N
    else:
        l = chain_length(g)
        I_g = list(range(1, l + 1))
        cands, cyc = list(range(1, l)), None
    total = KoszulElement(N)
    for s in range(0, len(I_g) // 2 + 1):
        for sel in _gapped_subsets(cands, s, cyc):
            covered = set()
            coef = Polynomial.constant(N)
            for i in sel:
                covered.add(i)
                covered.add(i % N + 1 if atom.kind == "loop" else i + 1)
                coef = coef * b[i - 1]
            rest = tuple(i for i in I_g if i not in covered)
            total = total + KoszulElement.term(coef, rest, g)
    return total


def _embed_koszul(k: KoszulElement, block, N: int, g_global: GroupElement) -> KoszulElement:
    out = {}
    for (word, _), f in k.terms.items():
        terms = {}
        for m, c in f.terms.items():
            e = [0] * N
            for a, v in enumerate(block):
                e[v - 1] = m[a]
            terms[tuple(e)] = c
        out[(tuple(block[i - 1] for i in word), g_global)] = Polynomial(N, terms)
    return KoszulElement(N, out)


def kappa_representative(W: Polynomial, g: GroupElement) -> KoszulElement:
    """Koszul cocycle representing the generator 1_g.

    For a sum of atoms the representative is the ordered product of the
    atom representatives (an atom on which g acts trivially contributes 1).
    """
    _check_sector(W, g)
    dec = decompose_atomic(validate_invertible(W))
    N = W.N
    e = GroupElement.identity(N)
    acc = KoszulElement.term(Polynomial.constant(N), (), e)
    for atom in dec:
        loc = GroupElement(g.phases[v - 1] for v in atom.block)
        if loc.is_identity():
            continue
        part = _embed_koszul(_atom_kappa(atom, loc), atom.block, N, e)
        acc = acc * part
    return KoszulElement(N, {(w, g): f for (w, _), f in acc.terms.items()})


# ---------------------------------------------------------------- second order operators

def _pure_coefficient(n: int, e1: Cyclotomic, e2: Cyclotomic) -> Cyclotomic:
    """sum_{s=0}^{n-2} [n-1-s]_{e1} (e1 e2)^s, the monomial formula."""
    total = Cyclotomic.from_rational(0)
    r = e1 * e2
    for s in range(n - 1):
        total = total + quantum_bracket(n - 1 - s, e1) * r ** s
    return total


def pure_coefficient_closed(n: int, e1: Cyclotomic, e2: Cyclotomic) -> Cyclotomic:
    """(e1^{n-1}[n]_{e2} - [n]_{e1 e2}) / (e1 - 1)."""
    if e1 == 1:
        raise SingularTwist("pure-type operator with a trivial first twist")
    if n < 2:
        return Cyclotomic.from_rational(0)
    return (e1 ** (n - 1) * quantum_bracket(n, e2) - quantum_bracket(n, e1 * e2)) / (e1 - 1)


def second_order_apply(i: int, j: int, g: GroupElement, h: GroupElement, f: Polynomial):
    """d^{g,h}_{i,j}(f); returns (Polynomial, group element g^(i) h^(j))."""
    N = f.N
    if not (1 <= i <= N and 1 <= j <= N):
        raise InvalidArgument("index out of range")
    grp = g.component(i) * h.component(j)
    if i != j:
        return quantum_partial(g, i, quantum_partial(h, j, f)), grp
    e1 = g.lambdas[i - 1]
    e2 = h.lambdas[i - 1]
    if e1 == 1:
        raise SingularTwist(f"g acts trivially on x{i}")
    out = {}
    for m, c in f.terms.items():
        n = m[i - 1]
        if n < 2:
            continue
        k = _pure_coefficient(n, e1, e2)
        if k.is_zero():
            continue
        mm = list(m)
        mm[i - 1] -= 2
        out[tuple(mm)] = c * k
    return Polynomial._raw(N, out), grp


# ---------------------------------------------------------------- bar-side cochains

class Cochain:
    """Multilinear map on monomials with values in A[G~] (memoized)."""

    arity: int
    N: int

    def __init__(self, N: int, arity: int):
        self.N = N
        self.arity = arity
        self._memo: dict = {}

    def __call__(self, *args) -> dict:
        if len(args) != self.arity:
            raise InvalidArgument(f"expected {self.arity} arguments, got {len(args)}")
        key = tuple(tuple(a) for a in args)
        if key not in self._memo:
            self._memo[key] = self._eval(key)
        return self._memo[key]

    def _eval(self, args) -> dict:
        raise NotImplementedError

    def evaluate(self, *polys: Polynomial) -> dict:
        """Multilinear extension to polynomial arguments."""
        acc: dict = {}
        for combo in product(*(list(p.terms.items()) for p in polys)):
            c = ONE
            for _, v in combo:
                c = c * v
            _ag_add(acc, self(*(m for m, _ in combo)), c)
        return _ag_clean(acc)


ATOM_KINDS = ("poly", "group", "d1", "d2")


class WordCochain(Cochain):
    """Formal sum of words; each word is (coefficient, atoms).

    Atoms: ("poly", f), ("group", h), ("d1", i, g), ("d2", i, j, g, h).  A word
    is evaluated as the cup product of its atoms, left to right.
    """

    def __init__(self, N: int, words: Sequence):
        ar = None
        clean = []
        for coef, atoms in words:
            atoms = tuple(atoms)
            a = 0
            for at in atoms:
                if not at or at[0] not in ATOM_KINDS:
                    raise UnsupportedWord(f"unknown atom {at!r} in word {atoms!r}")
                if at[0] in ("d1", "d2"):
                    a += 1
            if ar is None:
                ar = a
            elif ar != a:
                raise InvalidArgument("all words must have the same arity")
            clean.append((coef, atoms))
        super().__init__(N, ar or 0)
        self.words = clean

    def __mul__(self, other: "WordCochain") -> "WordCochain":
        return WordCochain(self.N, [(c1 * c2, a1 + a2) for c1, a1 in self.words for c2, a2 in other.words])

    def _eval(self, args) -> dict:
        N = self.N
        acc: dict = {}
        e = GroupElement.identity(N)
        for coef, atoms in self.words:
            val = {e: Polynomial.constant(N, coef)}
            k = 0
            for at in atoms:
                kind = at[0]
                if kind == "poly":
                    val = _ag_right(val, at[1])
                elif kind == "group":
                    val = _ag_mul(val, {at[1]: Polynomial.constant(N)})
                elif kind == "d1":
                    _, i, g = at
                    f = quantum_partial(g, i, _mono(N, args[k]))
                    val = _ag_mul(val, {g.component(i): f})
                    k += 1
                else:
                    _, i, j, g, h = at
                    f, grp = second_order_apply(i, j, g, h, _mono(N, args[k]))
                    val = _ag_mul(val, {grp: f})
                    k += 1
                if not val:
                    break
            _ag_add(acc, val)
        return _ag_clean(acc)


class CupCochain(Cochain):
    """phi1 u phi2 (a_1..a_{p+q}) = phi1(a_1..a_p) phi2(a_{p+1}..) in A[G~]."""

    def __init__(self, c1: Cochain, c2: Cochain):
        super().__init__(c1.N, c1.arity + c2.arity)
        self.c1, self.c2 = c1, c2

    def _eval(self, args):
        p = self.c1.arity
        left = self.c1(*args[:p])
        if not left:
            return {}
        return _ag_mul(left, self.c2(*args[p:]))


class SumCochain(Cochain):
    def __init__(self, parts: Sequence):
        parts = [(c, ch) for c, ch in parts]
        if not parts:
            raise InvalidArgument("empty sum")
        ar = {ch.arity for _, ch in parts}
        if len(ar) != 1:
            raise InvalidArgument("summands must share an arity")
        super().__init__(parts[0][1].N, ar.pop())
        self.parts = parts

    def _eval(self, args):
        acc: dict = {}
        for c, ch in self.parts:
            _ag_add(acc, ch(*args), c)
        return _ag_clean(acc)


class DWCochain(Cochain):
    """d_W psi (a_1..a_{p-1}) = sum_i (-1)^{i-1} psi(.., W in slot i, ..)."""

    def __init__(self, inner: Cochain, W: Polynomial):
        if inner.arity < 1:
            raise InvalidArgument("d_W lowers the arity; a 0-cochain maps to zero")
        super().__init__(inner.N, inner.arity - 1)
        self.inner, self.W = inner, W

    def _eval(self, args):
        acc: dict = {}
        for i in range(self.arity + 1):
            sign = 1 if i % 2 == 0 else -1
            for m, c in self.W.terms.items():
                _ag_add(acc, self.inner(*(args[:i] + (m,) + args[i:])), c * sign)
        return _ag_clean(acc)


class HCochain(Cochain):
    """H* psi = psi o H, H the homotopy between bar and Koszul resolutions
    (normalized bar: a constant in any slot is zero)."""

    def __init__(self, inner: Cochain):
        if inner.arity < 1:
            raise InvalidArgument("H* needs a cochain of positive arity")
        super().__init__(inner.N, inner.arity - 1)
        self.inner = inner

    def _eval(self, args):
        N = self.N
        p = len(args)
        acc: dict = {}
        for i in range(1, p + 1):
            prefix, rest = args[: i - 1], args[i - 1:]
            m = len(rest)
            sign_i = -1 if i % 2 else 1
            for I in combinations(range(1, N + 1), m):
                if any(rest[k][I[k] - 1] == 0 for k in range(m)):
                    continue
                ranges = [range(rest[k][I[k] - 1]) for k in range(m)]
                for s in product(*ranges):
                    L = [0] * N
                    R = [0] * N
                    for k in range(m):
                        a, ik = rest[k], I[k] - 1
                        for v in range(N):
                            if v < ik:
                                R[v] += a[v]
                            elif v > ik:
                                L[v] += a[v]
                        R[ik] += s[k]
                        L[ik] += a[ik] - 1 - s[k]
                    if not any(L):
                        continue
                    right = _mono(N, R)
                    for sigma in permutations(range(m)):
                        xs = tuple(_unit_vector(N, I[t]) for t in sigma)
                        val = self.inner(*(prefix + (tuple(L),) + xs))
                        if val:
                            _ag_add(acc, _ag_right(val, right), sign_i * sort_sign(sigma))
        return _ag_clean(acc)


def upsilon_word(f: Polynomial, word: Sequence[int], g: GroupElement) -> WordCochain:
    """Upsilon*(f e_I g) as a word of group scalars and first-order operators."""
    N = f.N
    atoms: list = [("poly", f)]
    I = set(word)
    for idx in range(1, N + 1):
        if idx in I:
            atoms.append(("d1", idx, g))
        elif g.phases[idx - 1]:
            atoms.append(("group", g.component(idx)))
    return WordCochain(N, [(1, atoms)])


def upsilon_star(k: KoszulElement) -> dict:
    """Upsilon* of a Koszul element, split by arity: {p: Cochain}."""
    by: dict = {}
    for (word, g), f in k.terms.items():
        by.setdefault(len(word), []).append((1, upsilon_word(f, word, g)))
    return {p: (parts[0][1] if len(parts) == 1 else SumCochain(parts)) for p, parts in by.items()}


def phi_star(c: Cochain) -> KoszulElement:
    """Phi*(psi) = sum_I sum_sigma sgn(sigma) psi(x_{i_sigma(1)}, ..) e_I."""
    N = c.N
    acc: dict = {}
    for I in combinations(range(1, N + 1), c.arity):
        for sigma in permutations(range(c.arity)):
            val = c(*(_unit_vector(N, I[t]) for t in sigma))
            for h, f in val.items():
                key = (I, h)
                f = f.scale(sort_sign(sigma))
                acc[key] = acc[key] + f if key in acc else f
    return KoszulElement(N, acc)


# ---------------------------------------------------------------- cup product oracles

def _single_sector(k: KoszulElement) -> GroupElement:
    groups = {g for (_, g) in k.terms}
    if len(groups) != 1:
        raise InvalidArgument("Koszul element must live in a single nonzero sector")
    return groups.pop()


def _jacobian(W: Polynomial, J: JacobianRing | None) -> JacobianRing:
    if J is not None:
        return J
    return JacobianRing(W, weights(validate_invertible(W)))


def retract_cup_oracle(a: KoszulElement, b: KoszulElement, W: Polynomial,
                       J: JacobianRing | None = None) -> JacClass:
    """[sum_k (-1)^k (d_W H*)^k phi_2k] for phi = Upsilon*(a) u Upsilon*(b)."""
    J = _jacobian(W, J)
    if a.is_zero() or b.is_zero():
        return J.zero()
    g, h = _single_sector(a), _single_sector(b)
    if not (g * h).is_identity():
        raise NonIdentityTarget(f"the product lands in sector {g * h}, not the identity")
    ua, ub = upsilon_star(a), upsilon_star(b)
    parts: dict = {}
    for p, ca in ua.items():
        for q, cb in ub.items():
            parts.setdefault(p + q, []).append((1, CupCochain(ca, cb)))
    total = Polynomial.zero(W.N)
    e = GroupElement.identity(W.N)
    for ar, pieces in sorted(parts.items()):
        if ar % 2:
            continue
        k = ar // 2
        c: Cochain = pieces[0][1] if len(pieces) == 1 else SumCochain(pieces)
        for _ in range(k):
            c = DWCochain(HCochain(c), W)
        val = c()
        stray = [x for x in val if x != e]
        if stray:
            raise UnsupportedWord(f"value escaped the identity sector: {stray}")
        if e in val:
            total = total + (val[e] if k % 2 == 0 else -val[e])
    return J.normal_form(total)


def graph_sum(I: Sequence[int], Jw: Sequence[int], g: GroupElement, W: Polynomial) -> Polynomial:
    """Permutation sum over V = {sigma : j_sigma(k) <= i_k}, as a polynomial."""
    N = W.N
    I, Jw = tuple(I), tuple(Jw)
    if len(I) != len(Jw):
        return Polynomial.zero(N)
    p = len(I)
    ginv = g.inverse()
    e = GroupElement.identity(N)

    def span(h: GroupElement, a: int, b: int) -> GroupElement:
        return GroupElement(h.phases[v - 1] if a <= v <= b else 0 for v in range(1, N + 1))

    total: dict = {}
    for sigma in permutations(range(p)):
        if any(Jw[sigma[k]] > I[k] for k in range(p)):
            continue
        val = {e: Polynomial.constant(N, sort_sign(sigma))}
        for k in range(p):
            i, j = I[k], Jw[sigma[k]]
            f, grp = second_order_apply(i, j, g, ginv, W)
            val = _ag_mul(val, {span(g, j, i - 1): Polynomial.constant(N)})
            val = _ag_mul(val, {grp: f})
            val = _ag_mul(val, {span(ginv, j + 1, i): Polynomial.constant(N)})
            if not val:
                break
        _ag_add(total, val)
    total = _ag_clean(total)
    stray = [x for x in total if x != e]
    if stray:
        raise UnsupportedWord(f"graph sum left a group factor {stray}")
    out = total.get(e, Polynomial.zero(N))
    return out.scale((-1) ** (p * (p - 1) // 2))


def graph_sum_cup(I: Sequence[int], Jw: Sequence[int], g: GroupElement, W: Polynomial,
                  J: JacobianRing | None = None) -> JacClass:
    J = _jacobian(W, J)
    return J.normal_form(graph_sum(I, Jw, g, W))


def graph_sum_kappa(a: KoszulElement, b: KoszulElement, W: Polynomial,
                    J: JacobianRing | None = None) -> JacClass:
    """Degreewise graph summation for sums of Koszul terms c e_I g and c' e_J g^-1."""
    J = _jacobian(W, J)
    if a.is_zero() or b.is_zero():
        return J.zero()
    g, h = _single_sector(a), _single_sector(b)
    if not (g * h).is_identity():
        raise NonIdentityTarget(f"the product lands in sector {g * h}, not the identity")
    total = Polynomial.zero(W.N)
    for (I, _), c in a.terms.items():
        for (Jw, _), c2 in b.terms.items():
            if len(I) != len(Jw):
                continue
            total = total + c * group_act(g, c2) * graph_sum(I, Jw, g, W)
    return J.normal_form(total)


# ---------------------------------------------------------------- quantum Hessians

@dataclass
class QuantumHessianMatrix:
    kind: str
    g: GroupElement
    entries: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.entries)

    def determinant(self) -> Polynomial:
        N = self.g.N
        return determinant(self.entries, N)

    def pretty(self) -> list:
        return [[e.pretty() for e in row] for row in self.entries]


def quantum_hessian_matrix(W: Polynomial, g: GroupElement) -> QuantumHessianMatrix:
    _check_sector(W, g)
    atom = _atomic(W)
    n = atom.exponents
    N = len(n)
    lam = g.lambdas
    if atom.kind == "fermat":
        raise InvalidArgument("the quantum Hessian matrix is defined for loop and chain atoms")
    size = N if atom.kind == "loop" else chain_length(g)
    zero = Polynomial.zero(N)
    M = [[zero for _ in range(size)] for _ in range(size)]

    def mono(coef, **exps):
        e = [0] * N
        for k, v in exps.items():
            e[int(k[1:]) - 1] += v
        return Polynomial(N, {tuple(e): coef})

    def nxt(i):
        return i % N + 1

    b = _b_coefficients(atom, g)
    for i in range(1, size + 1):
        li, ni = lam[i - 1], n[i - 1]
        diag = (quantum_bracket(ni, li) - ni) / (li - 1)
        e = [0] * N
        e[i - 1] = ni - 2
        if atom.kind == "loop" or i < N:
            e[nxt(i) - 1] += 1
        M[i - 1][i - 1] = M[i - 1][i - 1] + Polynomial(N, {tuple(e): diag})
        if atom.kind == "chain" and i == size:
            continue
        j = nxt(i)
        if atom.kind == "loop" and i == N:
            # corner entries close the cycle
            M[0][N - 1] = M[0][N - 1] + b[N - 1]
            low = mono(Cyclotomic.from_rational((-1) ** N) * li ** ni / (1 - li), **{f"x{i}": ni - 1})
            M[N - 1][0] = M[N - 1][0] + low
        else:
            M[i - 1][j - 1] = M[i - 1][j - 1] + b[i - 1]
            low = mono(Cyclotomic.from_rational(-1) / (1 - li), **{f"x{i}": ni - 1})
            M[j - 1][i - 1] = M[j - 1][i - 1] + low
    return QuantumHessianMatrix(atom.kind, g, M)


def det_quantum_hess(W: Polynomial, g: GroupElement, J: JacobianRing | None = None) -> JacClass:
    J = _jacobian(W, J)
    H = quantum_hessian_matrix(W, g)
    l = H.size
    return J.normal_form(H.determinant().scale((-1) ** (l * (l - 1) // 2)))


def signed_twisted_hessian(W: Polynomial, g: GroupElement, J: JacobianRing | None = None) -> JacClass:
    """(-1)^{l(l-1)/2} Hess^g(W), l = N for loops, l_g for chains, 1 for Fermat."""
    _check_sector(W, g)
    J = _jacobian(W, J)
    atom = _atomic(W)
    if atom.kind == "loop":
        l = W.N
    elif atom.kind == "chain":
        l = chain_length(g)
    else:
        l = 1
    return J.normal_form(atom_twisted_hessian(atom, g).scale((-1) ** (l * (l - 1) // 2)))


@dataclass
class CrossCheck:
    g: GroupElement
    graph_sum: JacClass
    det_hess: JacClass | None
    hess: JacClass
    retract: JacClass | None

    @property
    def agree(self) -> bool:
        vals = [v for v in (self.graph_sum, self.det_hess, self.hess, self.retract) if v is not None]
        return all(v == vals[0] for v in vals)

    def to_json(self) -> dict:
        def show(v):
            return None if v is None else v.pretty()
        return {"g": str(self.g), "graph_sum": show(self.graph_sum), "det_quantum_hess": show(self.det_hess),
                "signed_hess": show(self.hess), "retract": show(self.retract), "agree": self.agree,
                "assumption": "graph summation applied degreewise to mixed-degree representatives"}


def cross_check(W: Polynomial, g: GroupElement, J: JacobianRing | None = None,
                retract: bool = True) -> CrossCheck:
    """Four-way comparison for the class of 1_g u 1_{g^-1} in Jac(W)."""
    J = _jacobian(W, J)
    atom = _atomic(W)
    a = kappa_representative(W, g)
    b = kappa_representative(W, g.inverse())
    gs = graph_sum_kappa(a, b, W, J)
    dh = det_quantum_hess(W, g, J) if atom.kind != "fermat" else None
    hs = signed_twisted_hessian(W, g, J)
    rt = retract_cup_oracle(a, b, W, J) if retract else None
    return CrossCheck(g, gs, dh, hs, rt)
