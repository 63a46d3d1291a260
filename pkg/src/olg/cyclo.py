"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element of Q(zeta_m) is stored as an integer coefficient vector over the
power basis 1, t, ..., t^(phi(m)-1) of Q[t]/Phi_m(t) together with one
positive common denominator.  Operands with different moduli are promoted to
the lcm modulus before any arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from .errors import DivisionByZero, InvalidArgument

Rational = Fraction
Number = Union[int, Fraction, "Cyclotomic"]


def phase(x) -> Fraction:
    """Canonical representative of a rational number modulo 1."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials (low degree first), b monic
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            out[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise InvalidArgument("modulus must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


def totient(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(coeffs: list[int], m: int) -> list[int]:
    """Reduce an integer polynomial modulo the monic Phi_m."""
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, n - 1, -1):
        a = c[k]
        if a:
            for j in range(n + 1):
                c[k - n + j] -= a * phi[j]
    c = c[:n]
    return c + [0] * (n - len(c))


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    # t^j mod Phi_m for j < m; all integral since Phi_m is monic
    n = totient(m)
    rows = []
    for j in range(m):
        v = [0] * max(j + 1, n)
        v[j] = 1
        rows.append(tuple(_reduce(v, m)))
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_m), immutable."""

    __slots__ = ("m", "num", "den")

    def __init__(self, m: int, num: Iterable[int], den: int = 1, _reduced: bool = False):
        if m < 1:
            raise InvalidArgument("modulus must be positive")
        num = list(num)
        if not _reduced:
            num = _reduce(num, m)
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            den, num = -den, [-a for a in num]
        g = den
        for a in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            num = [a // g for a in num]
            den //= g
        self.m = m
        self.num = tuple(num)
        self.den = den

    # construction helpers
    @classmethod
    def from_rational(cls, q, m: int = 1) -> "Cyclotomic":
        q = Fraction(q)
        n = totient(m)
        return cls(m, [q.numerator] + [0] * (n - 1), q.denominator, _reduced=True)

    @classmethod
    def from_coefficients(cls, m: int, coeffs: Iterable) -> "Cyclotomic":
        """Build from rational coefficients of 1, t, t^2, ... (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls(m, [int(c * den) for c in fr] or [0], den)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclotomic":
        return cls(m, _power_table(m)[k % m], 1, _reduced=True)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.num)

    # predicates
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvalidArgument("value is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    # modulus handling
    def promote(self, L: int) -> "Cyclotomic":
        if L == self.m:
            return self
        if L % self.m:
            raise InvalidArgument(f"cannot promote modulus {self.m} to {L}")
        s = L // self.m
        table = _power_table(L)
        out = [0] * totient(L)
        for j, a in enumerate(self.num):
            if a:
                row = table[(j * s) % L]
                for k, r in enumerate(row):
                    if r:
                        out[k] += a * r
        return Cyclotomic(L, out, self.den, _reduced=True)

    @staticmethod
    def _coerce(x, m: int) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(x, m)
        return NotImplemented

    def _common(self, other):
        o = self._coerce(other, self.m)
        if o is NotImplemented:
            return None, None
        L = _lcm(self.m, o.m)
        return self.promote(L), o.promote(L)

    # arithmetic
    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        d = _lcm(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return Cyclotomic(a.m, [x * fa + y * fb for x, y in zip(a.num, b.num)], d, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-x for x in self.num], self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other, self.m)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.m, [x * other for x in self.num], self.den, _reduced=True)
        if isinstance(other, Fraction):
            return Cyclotomic(self.m, [x * other.numerator for x in self.num],
                              self.den * other.denominator, _reduced=True)
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        if a.is_rational():
            return b * Fraction(a.num[0], a.den)
        if b.is_rational():
            return a * Fraction(b.num[0], b.den)
        n = len(a.num)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.m, prod, a.den * b.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under the automorphism zeta_m -> zeta_m^k (gcd(k, m) = 1)."""
        if gcd(k, self.m) != 1:
            raise InvalidArgument("Galois exponent must be coprime to the modulus")
        table = _power_table(self.m)
        out = [0] * len(self.num)
        for j, a in enumerate(self.num):
            if a:
                for i, r in enumerate(table[(j * k) % self.m]):
                    out[i] += a * r
        return Cyclotomic(self.m, out, self.den, _reduced=True)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(zeta_%d)" % self.m)
        if self.is_rational():
            return Cyclotomic.from_rational(1 / Fraction(self.num[0], self.den), self.m)
        # product of the nontrivial conjugates divided by the norm
        acc = Cyclotomic.from_rational(1, self.m)
        for k in range(2, self.m):
            if gcd(k, self.m) == 1:
                acc = acc * self.galois(k)
        norm = self * acc
        return acc * (1 / norm.to_fraction())

    def __truediv__(self, other):
        o = self._coerce(other, self.m)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        acc = Cyclotomic.from_rational(1, self.m)
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # comparison
    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        d = self.demote()
        return hash((d.m, d.num, d.den))

    # display and serialization
    def demote(self) -> "Cyclotomic":
        """Same value written in the smallest cyclotomic field containing it."""
        for d in _divisors(self.m):
            c = self._try_demote(d)
            if c is not None:
                return c
        return self

    def _try_demote(self, d: int):
        if d == self.m:
            return self
        n = totient(d)
        # images of 1, zeta_d, ... in the big field, solve by elimination
        cols = [Cyclotomic.zeta(d, j).promote(self.m).num for j in range(n)]
        target = [Fraction(a, self.den) for a in self.num]
        rows = [[Fraction(cols[j][i]) for j in range(n)] + [target[i]] for i in range(len(target))]
        sol = _solve_consistent(rows, n)
        if sol is None:
            return None
        return Cyclotomic.from_coefficients(d, sol)

    def pretty(self) -> str:
        d = self.demote()
        coeffs = d.coefficients
        parts = []
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                z = f"z{d.m}" + (f"^{k}" if k > 1 else "")
                body = z if abs(c) == 1 else f"{abs(c)}*{z}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"Cyclotomic({self.pretty()!r})"

    def to_json(self) -> dict:
        return {"m": self.m, "c": [str(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, obj) -> "Cyclotomic":
        if isinstance(obj, (int, str)):
            return cls.from_rational(Fraction(obj))
        m = int(obj["m"])
        c = [Fraction(x) for x in obj["c"]]
        if len(c) != totient(m):
            raise InvalidArgument("coefficient vector length must equal phi(m)")
        return cls.from_coefficients(m, c)


def _solve_consistent(rows: list[list[Fraction]], n: int):
    """Solve an augmented system; None when inconsistent."""
    rows = [r[:] for r in rows]
    piv = []
    r = 0
    for c in range(n):
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
        piv.append(c)
        r += 1
    if any(row[n] != 0 for row in rows[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv):
        sol[c] = rows[i][n]
    return sol


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


def as_cyclotomic(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    if isinstance(x, str):
        return Cyclotomic.from_rational(Fraction(x))
    raise InvalidArgument(f"cannot interpret {x!r} as a cyclotomic number")


def cyc_arith(a, b, op: str) -> Cyclotomic:
    a, b = as_cyclotomic(a), as_cyclotomic(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidArgument(f"unknown operation {op!r}")


def root_of_unity(p) -> Cyclotomic:
    """zeta_m^k for the phase p = k/m (reduced mod 1)."""
    p = phase(p)
    if p == 0:
        return ONE
    return Cyclotomic.zeta(p.denominator, p.numerator)


def quantum_bracket(gamma: int, lam) -> Cyclotomic:
    """[gamma]_lam = 1 + lam + ... + lam^(gamma-1)."""
    if gamma < 1:
        raise InvalidArgument("quantum bracket needs gamma >= 1")
    lam = as_cyclotomic(lam)
    acc = ONE
    power = ONE
    for _ in range(gamma - 1):
        power = power * lam
        acc = acc + power
    return acc
