"""Invertible polynomials: validation, atoms, mirror transpose, weights and
the group of diagonal symmetries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import GroupElement, Polynomial
from .cyclo import Cyclotomic, root_of_unity
from .errors import (BadWeights, Degenerate, InvalidArgument, NotASymmetry,
                     NotClassifiable, NotSquare)


@dataclass(frozen=True)
class ExponentMatrix:
    """Row i is the exponent vector of the monomial whose main variable is x_i."""

    rows: tuple

    @property
    def N(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "ExponentMatrix":
        return ExponentMatrix(tuple(zip(*self.rows)))

    def det(self) -> int:
        return int(_det([[Fraction(x) for x in r] for r in self.rows]))

    def polynomial(self) -> Polynomial:
        return Polynomial(self.N, {tuple(r): 1 for r in self.rows})

    def tolist(self) -> list:
        return [list(r) for r in self.rows]


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [r[:] for r in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def _solve(M: list[list], rhs: list) -> list[Fraction]:
    n = len(M)
    A = [[Fraction(x) for x in M[i]] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            raise Degenerate("exponent matrix is singular")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [A[i][n] for i in range(n)]


@dataclass(frozen=True)
class Atom:
    kind: str  # "fermat", "loop" or "chain"
    exponents: tuple  # n_1..n_k in atom order
    block: tuple  # 1-based global variable indices in atom order

    def local_polynomial(self) -> Polynomial:
        """The atom written in its own variables x_1..x_k."""
        k = len(self.block)
        terms = {}
        for a, n in enumerate(self.exponents):
            e = [0] * k
            e[a] = n
            if self.kind == "loop":
                e[(a + 1) % k] += 1
            elif self.kind == "chain" and a + 1 < k:
                e[a + 1] += 1
            terms[tuple(e)] = 1
        return Polynomial(k, terms)

    def global_polynomial(self, N: int) -> Polynomial:
        loc = self.local_polynomial()
        terms = {}
        for m, c in loc.terms.items():
            e = [0] * N
            for a, v in enumerate(self.block):
                e[v - 1] = m[a]
            terms[tuple(e)] = c
        return Polynomial(N, terms)

    def __str__(self):
        return f"{self.kind.capitalize()}({','.join(map(str, self.exponents))})"


@dataclass(frozen=True)
class AtomicDecomposition:
    atoms: tuple

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)


def validate_invertible(W: Polynomial) -> ExponentMatrix:
    """Check that W is an invertible polynomial and return its exponent matrix."""
    if W.is_zero():
        raise InvalidArgument("W must be nonzero")
    N = W.N
    monos = list(W.terms)
    if len(monos) != N:
        raise NotSquare(f"W has {len(monos)} monomials in {N} variables")
    for m, c in W.terms.items():
        if c != 1:
            raise NotClassifiable(
                f"coefficient {c} of monomial {m} is not 1; rescale the variables so that every coefficient is 1")
    rows: list = [None] * N
    for m in monos:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 2 and all(m[i] == 1 for i in support):
            raise NotClassifiable(f"cross term x{support[0] + 1}*x{support[1] + 1} is excluded")
        big = [i for i in support if m[i] >= 2]
        if len(big) != 1 or len(support) > 2:
            raise NotClassifiable(f"monomial {m} is not of Fermat, loop or chain shape")
        i = big[0]
        if rows[i] is not None:
            raise NotClassifiable(f"variable x{i + 1} is the main variable of two monomials")
        rows[i] = m
    if any(r is None for r in rows):
        raise NotClassifiable("some variable is not the main variable of any monomial")
    E = ExponentMatrix(tuple(tuple(r) for r in rows))
    if E.det() == 0:
        raise Degenerate("det E_W = 0")
    q = weights(E)
    for i, w in enumerate(q):
        if not (0 < w <= Fraction(1, 2)):
            raise BadWeights(f"weight q_{i + 1} = {w} is outside (0, 1/2]")
    decompose_atomic(E)
    return E


def decompose_atomic(E: ExponentMatrix) -> AtomicDecomposition:
    N = E.N
    succ: dict[int, int] = {}
    indeg = [0] * N
    for i in range(N):
        off = [j for j in range(N) if j != i and E[i, j] > 0]
        if len(off) > 1:
            raise NotClassifiable(f"row {i + 1} has more than one off-diagonal entry")
        if off:
            if E[i, off[0]] != 1:
                raise NotClassifiable(f"off-diagonal exponent in row {i + 1} must be 1")
            succ[i] = off[0]
            indeg[off[0]] += 1
        if E[i, i] < 2:
            raise NotClassifiable(f"diagonal exponent a_{i + 1}{i + 1} must be at least 2")
    if any(d > 1 for d in indeg):
        raise NotClassifiable("a variable is hit by two arrows; not a disjoint union of atoms")
    seen: set[int] = set()
    atoms = []
    # paths start at vertices with no incoming arrow
    for start in range(N):
        if indeg[start] == 0 and start not in seen:
            path = [start]
            while path[-1] in succ:
                path.append(succ[path[-1]])
            seen.update(path)
            kind = "fermat" if len(path) == 1 else "chain"
            atoms.append((min(path), Atom(kind, tuple(E[v, v] for v in path), tuple(v + 1 for v in path))))
    for start in range(N):
        if start in seen:
            continue
        cyc = [start]
        while succ[cyc[-1]] != start:
            cyc.append(succ[cyc[-1]])
        seen.update(cyc)
        atoms.append((start, Atom("loop", tuple(E[v, v] for v in cyc), tuple(v + 1 for v in cyc))))
    atoms.sort(key=lambda t: t[0])
    return AtomicDecomposition(tuple(a for _, a in atoms))


def transpose_mirror(E: ExponentMatrix):
    """(E^T, W^T).  Rows of E^T are re-ordered so the main variable sits on the diagonal."""
    T = E.transpose()
    return T, T.polynomial()


def weights(E: ExponentMatrix) -> tuple[Fraction, ...]:
    if E.det() == 0:
        raise Degenerate("det E_W = 0")
    return tuple(_solve([list(r) for r in E.rows], [1] * E.N))


# ---------------------------------------------------------------- Smith normal form

def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*M*V = D diagonal, U and V unimodular."""
    A = [list(map(int, r)) for r in M]
    n, m = len(A), len(A[0]) if A else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(X, i, j):
        X[i], X[j] = X[j], X[i]

    def swap_cols(X, i, j):
        for r in X:
            r[i], r[j] = r[j], r[i]

    def add_row(X, src, dst, f):  # row dst += f*row src
        X[dst] = [a + f * b for a, b in zip(X[dst], X[src])]

    def add_col(X, src, dst, f):
        for r in X:
            r[dst] += f * r[src]

    for t in range(min(n, m)):
        # pick the smallest nonzero entry in the remaining block as pivot
        while True:
            cands = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, m) if A[i][j]]
            if not cands:
                return U, A, V
            _, pi, pj = min(cands)
            swap_rows(A, t, pi)
            swap_rows(U, t, pi)
            swap_cols(A, t, pj)
            swap_cols(V, t, pj)
            done = True
            for i in range(t + 1, n):
                f = A[i][t] // A[t][t]
                if f:
                    add_row(A, t, i, -f)
                    add_row(U, t, i, -f)
                if A[i][t]:
                    done = False
            for j in range(t + 1, m):
                f = A[t][j] // A[t][t]
                if f:
                    add_col(A, t, j, -f)
                    add_col(V, t, j, -f)
                if A[t][j]:
                    done = False
            if not done:
                continue
            # divisibility condition d_t | rest
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(A, bad[0], t, 1)
            add_row(U, bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


# ---------------------------------------------------------------- symmetry groups

class SymmetryGroup:
    """A finite group of diagonal symmetries of W."""

    def __init__(self, E: ExponentMatrix, elements, generators=None, orders=None):
        self.E = E
        elems = sorted(set(elements), key=lambda g: (not g.is_identity(), g.sort_key()))
        self.elements = tuple(elems)
        self._set = frozenset(elems)
        self.generators = tuple(generators if generators is not None else _greedy_generators(elems))
        self.orders = tuple(orders if orders is not None else (g.order for g in self.generators))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def __contains__(self, g) -> bool:
        return g in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def sl_subgroup(self) -> "SymmetryGroup":
        return SymmetryGroup(self.E, [g for g in self.elements if sum(g.phases) % 1 == 0])

    def __repr__(self):
        return f"SymmetryGroup(order={self.order}, generators=[{'; '.join(map(str, self.generators))}])"


def _greedy_generators(elems) -> list:
    if not elems:
        return []
    N = elems[0].N
    span = {GroupElement.identity(N)}
    gens = []
    for g in sorted(elems, key=lambda x: (-x.order, x.phases)):
        if g not in span:
            gens.append(g)
            span = _closure(span, [g])
    return gens


def _closure(start, gens) -> set:
    out = set(start)
    frontier = list(out)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b not in out:
                    out.add(b)
                    nxt.append(b)
        frontier = nxt
    return out


def is_symmetry(E: ExponentMatrix, g: GroupElement) -> bool:
    return all(sum(E[i, j] * g.phases[j] for j in range(E.N)) % 1 == 0 for i in range(E.N))


def symmetry_group(E: ExponentMatrix) -> SymmetryGroup:
    """G_W = {q in (Q/Z)^N : E q in Z^N}, via the Smith form of E."""
    N = E.N
    _, D, V = smith_normal_form(E.rows)
    gens, orders = [], []
    for k in range(N):
        d = abs(D[k][k])
        if d > 1:
            gens.append(GroupElement(Fraction(V[i][k], d) for i in range(N)))
            orders.append(d)
    elems = []
    for ks in itertools.product(*(range(o) for o in orders)):
        g = GroupElement.identity(N)
        for gen, k in zip(gens, ks):
            g = g * (gen ** k)
        elems.append(g)
    if not gens:
        elems = [GroupElement.identity(N)]
    G = SymmetryGroup(E, elems, gens, orders)
    assert G.order == abs(E.det())
    return G


def subgroup_generate(G_W: SymmetryGroup, gens) -> SymmetryGroup:
    E = G_W.E
    gens = [g if isinstance(g, GroupElement) else GroupElement(g) for g in gens]
    for g in gens:
        if g.N != E.N or not is_symmetry(E, g):
            raise NotASymmetry(f"{g} is not a symmetry of W")
    elems = _closure({GroupElement.identity(E.N)}, gens)
    return SymmetryGroup(E, elems, [g for g in gens if not g.is_identity()] or None)


def parse_group_spec(spec: str, E: ExponentMatrix) -> SymmetryGroup:
    """``full``, ``SL`` or ``gens:1/3,2/3;0,1/2``."""
    G = symmetry_group(E)
    spec = spec.strip()
    if spec == "full":
        return G
    if spec.upper() == "SL":
        return G.sl_subgroup()
    if spec.startswith("gens:"):
        body = spec[5:].strip()
        gens = [GroupElement.parse(s) for s in body.split(";") if s.strip()]
        return subgroup_generate(G, gens)
    raise InvalidArgument(f"unknown group spec {spec!r}")


def character_chi(g: GroupElement) -> Cyclotomic:
    """chi(g) = det(g)."""
    return root_of_unity(sum(g.phases, Fraction(0)))


@dataclass(frozen=True)
class FixedLocusData:
    g: GroupElement
    fixed: tuple
    moving: tuple
    N_g: int
    W_g: Polynomial
    chain_lengths: dict = field(default_factory=dict)

    @property
    def l_g(self):
        """l_g of the (first) chain atom, or None when W has no chain atom."""
        return next(iter(self.chain_lengths.values()), None)


def fixed_locus(W: Polynomial, g: GroupElement, decomposition: AtomicDecomposition | None = None) -> FixedLocusData:
    if g.N != W.N:
        raise InvalidArgument("dimension mismatch")
    moving = g.moving()
    fixed = g.fixed()
    if decomposition is None:
        decomposition = decompose_atomic(validate_invertible(W))
    chains = {}
    for k, atom in enumerate(decomposition):
        if atom.kind == "chain":
            l = 0
            for v in atom.block:
                if g.phases[v - 1]:
                    l += 1
                else:
                    break
            chains[k] = l
    return FixedLocusData(g, fixed, moving, len(fixed), W.substitute_zero(moving), chains)
