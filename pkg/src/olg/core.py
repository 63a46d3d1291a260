"""Polynomials over Q(zeta), diagonal group elements, exterior words and
elements of the twisted Koszul algebra A[e_1..e_N][G].

Variable indices in the public functions are 1-based, matching the usual
mathematical notation x_1, ..., x_N.  Monomials are plain exponent tuples.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Mapping, Sequence

from .cyclo import ONE, Cyclotomic, as_cyclotomic, phase, quantum_bracket, root_of_unity
from .errors import InvalidArgument, NonHomogeneous

Monomial = tuple


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m: Monomial, q: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(e) * w for e, w in zip(m, q)), Fraction(0))


def order_key(m: Monomial, q: Sequence[Fraction] | None = None):
    """Sort key, smallest first: weighted degree, then reverse lexicographic."""
    deg = mono_degree(m, q) if q is not None else sum(m)
    return (deg, tuple(-e for e in reversed(m)))


class Polynomial:
    """Sparse polynomial in N variables with cyclotomic coefficients."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping[Monomial, object] | None = None):
        self.N = N
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != N:
                raise InvalidArgument(f"monomial {mono} does not have {N} exponents")
            c = as_cyclotomic(c)
            if mono in clean:
                c = clean[mono] + c
            if c.is_zero():
                clean.pop(mono, None)
            else:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, N: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.N = N
        p.terms = terms
        return p

    @classmethod
    def zero(cls, N: int) -> "Polynomial":
        return cls._raw(N, {})

    @classmethod
    def constant(cls, N: int, c=1) -> "Polynomial":
        return cls(N, {(0,) * N: c})

    @classmethod
    def monomial(cls, mono: Monomial, c=1) -> "Polynomial":
        return cls(len(mono), {tuple(mono): c})

    @classmethod
    def variable(cls, i: int, N: int) -> "Polynomial":
        e = [0] * N
        e[i - 1] = 1
        return cls(N, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, N: int | None = None) -> "Polynomial":
        return parse_polynomial(text, N)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Polynomial"):
        if other.N != self.N:
            raise InvalidArgument(f"dimension mismatch: {self.N} vs {other.N}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.N, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial._raw(self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.N, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.N, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_cyclotomic(c) if not isinstance(c, (int, Fraction)) else c
        if c == 0:
            return Polynomial.zero(self.N)
        return Polynomial._raw(self.N, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = c1 * c2
                out[m] = out[m] + v if m in out else v
        return Polynomial._raw(self.N, {m: c for m, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        acc = Polynomial.constant(self.N)
        for _ in range(e):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = Polynomial.constant(self.N, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    __hash__ = None

    def coefficient(self, mono: Monomial) -> Cyclotomic:
        return self.terms.get(tuple(mono), Cyclotomic.from_rational(0))

    def sorted_terms(self, q=None) -> list:
        """Terms from largest to smallest in the monomial order."""
        return sorted(self.terms.items(), key=lambda t: order_key(t[0], q), reverse=True)

    def substitute_zero(self, indices: Iterable[int]) -> "Polynomial":
        """Set the 1-based variables in ``indices`` to zero."""
        idx = [i - 1 for i in indices]
        return Polynomial._raw(self.N, {m: c for m, c in self.terms.items()
                                        if all(m[i] == 0 for i in idx)})

    def derivative(self, i: int) -> "Polynomial":
        k = i - 1
        out = {}
        for m, c in self.terms.items():
            if m[k]:
                e = list(m)
                e[k] -= 1
                out[tuple(e)] = c * m[k]
        return Polynomial._raw(self.N, out)

    def variables(self) -> set[int]:
        return {i + 1 for m in self.terms for i, e in enumerate(m) if e}

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.N)]
        pieces = []
        for mono, c in self.sorted_terms():
            factors = [names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
            text = c.pretty()
            neg = False
            if c.is_rational() and c.to_fraction() < 0:
                neg, text = True, (-c).pretty()
            if " " in text:
                text = f"({text})"
            if factors:
                body = "*".join(factors) if text == "1" else text + "*" + "*".join(factors)
            else:
                body = text
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"Polynomial({self.pretty()!r})"

    def to_json(self) -> dict:
        return {"N": self.N,
                "terms": [{"exp": list(m), "c": c.to_json()} for m, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        return cls(obj["N"], {tuple(t["exp"]): Cyclotomic.from_json(t["c"]) for t in obj["terms"]})


# ---------------------------------------------------------------- parsing

_ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4}
_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(x\d+|[xyzw])|(\^)|(\*)|([+-]))")


def parse_polynomial(text: str, N: int | None = None) -> Polynomial:
    """Parse e.g. ``x1^3*x2 + x2^4`` or ``x^2*y - 1/2*y^3``."""
    pos, toks = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidArgument(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        num, var, caret, star, sign = m.groups()
        if num is not None:
            toks.append(("num", Fraction(num)))
        elif var is not None:
            idx = _ALIASES[var] if var in _ALIASES else int(var[1:])
            if idx < 1:
                raise InvalidArgument("variables are numbered from x1")
            toks.append(("var", idx))
        elif caret:
            toks.append(("^", None))
        elif star:
            toks.append(("*", None))
        elif sign:
            toks.append((sign, None))
    if not toks:
        raise InvalidArgument("empty polynomial")
    terms = []  # list of (coefficient, {var: exp})
    i = 0
    expect_term = True
    sgn = 1
    cur_c, cur_v = None, None
    while i < len(toks):
        kind, val = toks[i]
        if expect_term:
            if kind in "+-":
                sgn *= -1 if kind == "-" else 1
                i += 1
                continue
            cur_c, cur_v = Fraction(sgn), {}
            while True:
                kind, val = toks[i] if i < len(toks) else (None, None)
                if kind == "num":
                    cur_c *= val
                    i += 1
                elif kind == "var":
                    e = 1
                    i += 1
                    if i < len(toks) and toks[i][0] == "^":
                        if i + 1 >= len(toks) or toks[i + 1][0] != "num" or toks[i + 1][1].denominator != 1:
                            raise InvalidArgument("exponent must be a non-negative integer")
                        e = int(toks[i + 1][1])
                        i += 2
                    cur_v[val] = cur_v.get(val, 0) + e
                else:
                    raise InvalidArgument("expected a coefficient or variable")
                if i < len(toks) and toks[i][0] == "*":
                    i += 1
                    continue
                break
            terms.append((cur_c, cur_v))
            expect_term = False
            sgn = 1
        else:
            if kind not in "+-":
                raise InvalidArgument("implicit multiplication is not allowed; use '*'")
            expect_term = True
    if expect_term:
        raise InvalidArgument("polynomial ends with an operator")
    used = max((v for _, vs in terms for v in vs), default=0)
    if N is None:
        N = max(used, 1)
    if used > N:
        raise InvalidArgument(f"variable x{used} exceeds dimension {N}")
    out: dict = {}
    for c, vs in terms:
        mono = tuple(vs.get(j + 1, 0) for j in range(N))
        out[mono] = out.get(mono, Fraction(0)) + c
    return Polynomial(N, out)


# ---------------------------------------------------------------- groups

class GroupElement:
    """Diagonal symmetry x_i -> exp(2 pi i q_i) x_i, stored by phases q_i."""

    __slots__ = ("phases", "__dict__")

    def __init__(self, phases: Iterable):
        self.phases = tuple(phase(p) for p in phases)

    @classmethod
    def identity(cls, N: int) -> "GroupElement":
        return cls([0] * N)

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        try:
            return cls([Fraction(p.strip()) for p in text.split(",")])
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"bad group element {text!r}") from exc

    @property
    def N(self) -> int:
        return len(self.phases)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.N != self.N:
            raise InvalidArgument("group elements of different dimension")
        return GroupElement(a + b for a, b in zip(self.phases, other.phases))

    def inverse(self) -> "GroupElement":
        return GroupElement(-a for a in self.phases)

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(a * k for a in self.phases)

    def is_identity(self) -> bool:
        return not any(self.phases)

    @property
    def order(self) -> int:
        return lcm(*(p.denominator for p in self.phases)) if self.phases else 1

    @cached_property
    def lambdas(self) -> tuple[Cyclotomic, ...]:
        return tuple(root_of_unity(p) for p in self.phases)

    def component(self, i: int) -> "GroupElement":
        """g^(i): keeps only the i-th phase (1-based)."""
        return GroupElement(p if k == i - 1 else 0 for k, p in enumerate(self.phases))

    def moving(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, p in enumerate(self.phases) if p)

    def fixed(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, p in enumerate(self.phases) if not p)

    def scalar(self, mono: Monomial) -> Cyclotomic:
        """Product of lambda_i^gamma_i."""
        t = sum((e * p for e, p in zip(mono, self.phases)), Fraction(0))
        return root_of_unity(t)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.phases == other.phases

    def __hash__(self):
        return hash(self.phases)

    def sort_key(self):
        return (self.order, self.phases)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return ",".join(str(p) for p in self.phases)

    def __repr__(self):
        return f"GroupElement({str(self)!r})"


def group_act(g: GroupElement, f: Polynomial) -> Polynomial:
    """The left action ^g f: x^gamma is scaled by prod lambda_i^gamma_i."""
    if g.N != f.N:
        raise InvalidArgument("group element and polynomial have different dimensions")
    if g.is_identity():
        return f
    return Polynomial._raw(f.N, {m: c * g.scalar(m) for m, c in f.terms.items()})


def quantum_partial(g: GroupElement, i: int, f: Polynomial) -> Polynomial:
    """x^gamma -> [gamma_i]_{lambda_i} x^gamma / x_i."""
    if not 1 <= i <= f.N:
        raise InvalidArgument(f"index {i} out of range")
    lam = g.lambdas[i - 1]
    out = {}
    for m, c in f.terms.items():
        e = m[i - 1]
        if e:
            b = quantum_bracket(e, lam)
            if not b.is_zero():
                mm = list(m)
                mm[i - 1] -= 1
                out[tuple(mm)] = c * b
    return Polynomial._raw(f.N, out)


def rho_prefix(g: GroupElement, i: int, f: Polynomial) -> Polynomial:
    """Act by g on the variables x_1..x_{i-1} only."""
    if not 1 <= i <= f.N + 1:
        raise InvalidArgument(f"index {i} out of range")
    pre = GroupElement(list(g.phases[: i - 1]) + [0] * (g.N - i + 1))
    return group_act(pre, f)


def weighted_degree(f: Polynomial, q: Sequence) -> Fraction:
    if f.is_zero():
        raise InvalidArgument("the zero polynomial has no degree")
    q = [Fraction(x) for x in q]
    degs = {mono_degree(m, q) for m in f.terms}
    if len(degs) != 1:
        raise NonHomogeneous(f"terms have weighted degrees {sorted(degs)}")
    return degs.pop()


# ---------------------------------------------------------------- exterior words

def sort_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if there is a repeat)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def exterior_product(w1: Sequence[int], w2: Sequence[int]):
    """Returns (sign, word); sign 0 and word None when an index repeats."""
    cat = list(w1) + list(w2)
    s = sort_sign(cat)
    if s == 0:
        return 0, None
    return s, tuple(sorted(cat))


class KoszulElement:
    """A finite sum of f * e_I * g in A[e_1..e_N][G].

    Terms are keyed by (word, group element); the word is a strictly
    increasing tuple of 1-based indices.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping | None = None):
        self.N = N
        clean: dict = {}
        for (word, g), f in (terms or {}).items():
            word = tuple(word)
            if list(word) != sorted(set(word)):
                raise InvalidArgument("exterior word must be strictly increasing")
            key = (word, g)
            f = clean[key] + f if key in clean else f
            if f.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = f
        self.terms = clean

    @classmethod
    def term(cls, f: Polynomial, word: Sequence[int], g: GroupElement) -> "KoszulElement":
        s = sort_sign(word)
        if s == 0:
            return cls(f.N)
        return cls(f.N, {(tuple(sorted(word)), g): f.scale(s)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "KoszulElement") -> "KoszulElement":
        t = dict(self.terms)
        for k, f in other.terms.items():
            t[k] = t[k] + f if k in t else f
        return KoszulElement(self.N, t)

    def __neg__(self):
        return KoszulElement(self.N, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KoszulElement":
        return KoszulElement(self.N, {k: f * c for k, f in self.terms.items()})

    def __mul__(self, other: "KoszulElement") -> "KoszulElement":
        """Product in A[e][G]: group elements act on coefficients to their right."""
        out = KoszulElement(self.N)
        acc: dict = {}
        for (w1, g1), f1 in self.terms.items():
            for (w2, g2), f2 in other.terms.items():
                s, w = exterior_product(w1, w2)
                if s == 0:
                    continue
                f = f1 * group_act(g1, f2)
                key = (w, g1 * g2)
                f = f.scale(s)
                acc[key] = acc[key] + f if key in acc else f
        out = KoszulElement(self.N, acc)
        return out

    def __eq__(self, other):
        return isinstance(other, KoszulElement) and self.N == other.N and self.terms == other.terms

    __hash__ = None

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (w, g), f in sorted(self.terms.items(), key=lambda t: (t[0][1].sort_key(), t[0][0])):
            e = "".join(f"e{i}" for i in w) or "1"
            parts.append(f"({f.pretty()})*{e}*[{g}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"KoszulElement({self.pretty()!r})"
