"""Exact scalar arithmetic: rationals and cyclotomic numbers in power-basis form.

A field context fixes the coefficient field once per computation: either Q
(conductor 1) or Q(zeta_n) with elements written in the power basis
1, z, ..., z^(phi(n)-1) modulo the n-th cyclotomic polynomial.  All arithmetic
is exact; there are no floats anywhere in this package.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "ContextMismatchError",
    "totient",
    "lcm",
    "cyclotomic_polynomial",
    "FieldContext",
    "CycloNumber",
    "embed",
    "parse_scalar",
    "ScalarMatrix",
]


class ContextMismatchError(ValueError):
    """Raised when scalars from distinct field contexts are combined."""


def totient(n: int) -> int:
    """Euler's phi via trial-division factorization."""
    if n < 1:
        raise ValueError("totient is defined for positive integers")
    result = n
    remaining = n
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            while remaining % p == 0:
                remaining //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if remaining > 1:
        result -= result // remaining
    return result


def lcm(values) -> int:
    """Least common multiple of an iterable of positive integers."""
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials (ascending coefficients) by a
    # monic divisor; used only to build cyclotomic polynomials.
    num = list(num)
    dden = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(len(num) - dden, 0)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - dden] = c
        for j, d in enumerate(den):
            num[i - dden + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quot, num


_CYCLOTOMIC_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending, computed by dividing t^n - 1
    by the product of Phi_d over proper divisors d of n."""
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    cached = _CYCLOTOMIC_CACHE.get(n)
    if cached is not None:
        return cached
    num = [0] * (n + 1)
    num[0] = -1
    num[-1] = 1
    rem = num
    for d in range(1, n):
        if n % d == 0:
            rem, r = _int_poly_divmod(rem, list(cyclotomic_polynomial(d)))
            if r:
                raise AssertionError("cyclotomic division left a remainder")
    result = tuple(rem)
    _CYCLOTOMIC_CACHE[n] = result
    return result


_CONTEXT_CACHE: dict[int, "FieldContext"] = {}


class FieldContext:
    """The coefficient field of a computation: Q or Q(zeta_n).

    Instances are immutable and cached per conductor; all scalars carry a
    reference to their context and refuse arithmetic across distinct ones.
    """

    __slots__ = ("conductor", "degree", "modulus", "_powers", "zero", "one")

    def __new__(cls, conductor: int = 1):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        cached = _CONTEXT_CACHE.get(conductor)
        if cached is not None:
            return cached
        self = object.__new__(cls)
        self.conductor = conductor
        self.modulus = cyclotomic_polynomial(conductor)
        self.degree = len(self.modulus) - 1
        # Power table: integer power-basis coordinates of z^e for e in
        # 0..conductor-1, built by shifting and reducing once each step.
        deg = self.degree
        powers: list[tuple[int, ...]] = []
        cur = [0] * deg
        cur[0] = 1
        powers.append(tuple(cur))
        for _ in range(1, conductor):
            nxt = [0] * deg
            for j in range(deg - 1):
                nxt[j + 1] = cur[j]
            top = cur[deg - 1]
            if top:
                for j in range(deg):
                    nxt[j] -= top * self.modulus[j]
            powers.append(tuple(nxt))
            cur = nxt
        self._powers = tuple(powers)
        self.zero = CycloNumber(self, (0,) * deg, 1, _normalized=True)
        self.one = CycloNumber(self, (1,) + (0,) * (deg - 1), 1, _normalized=True)
        _CONTEXT_CACHE[conductor] = self
        return self

    @property
    def kind(self) -> str:
        return "rational" if self.conductor == 1 else "cyclotomic"

    def from_rational(self, value) -> CycloNumber:
        """Embed an int or Fraction."""
        if isinstance(value, CycloNumber):
            if value.context is not self:
                raise ContextMismatchError(
                    f"scalar from Q(zeta_{value.context.conductor}) used in "
                    f"Q(zeta_{self.conductor}) context"
                )
            return value
        frac = Fraction(value)
        nums = (frac.numerator,) + (0,) * (self.degree - 1)
        return CycloNumber(self, nums, frac.denominator, _normalized=False)

    def zeta(self, power: int = 1) -> CycloNumber:
        """The root of unity z^power (power taken mod the conductor)."""
        nums = self._powers[power % self.conductor]
        return CycloNumber(self, nums, 1, _normalized=True)

    def power_coords(self, e: int) -> tuple[int, ...]:
        return self._powers[e % self.conductor]

    def __repr__(self) -> str:
        if self.conductor == 1:
            return "FieldContext(rational)"
        return f"FieldContext(cyclotomic {self.conductor})"


def _normalize_coords(nums, den: int):
    if den < 0:
        den = -den
        nums = tuple(-a for a in nums)
    g = den
    for a in nums:
        g = math.gcd(g, a)
        if g == 1:
            break
    if g > 1:
        nums = tuple(a // g for a in nums)
        den //= g
    return tuple(nums), den


class CycloNumber:
    """An element of the context field, stored as an integer numerator vector
    over a single positive denominator (products stay integral until one final
    gcd because Phi_n is monic with integer coefficients)."""

    __slots__ = ("context", "nums", "den")

    def __init__(self, context: FieldContext, nums, den: int = 1, *, _normalized=False):
        self.context = context
        if _normalized:
            self.nums = tuple(nums)
            self.den = den
        else:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            self.nums, self.den = _normalize_coords(tuple(nums), den)
        if len(self.nums) != context.degree:
            raise ValueError("coordinate vector has wrong length for context")

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    @property
    def conductor(self) -> int:
        return self.context.conductor

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.nums)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.context is not self.context:
                raise ContextMismatchError(
                    f"cannot combine scalars of conductor {self.conductor} "
                    f"and {other.conductor}; embed explicitly first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        if a.den == b.den:
            return CycloNumber(a.context, tuple(x + y for x, y in zip(a.nums, b.nums)), a.den)
        l = math.lcm(a.den, b.den)
        fa, fb = l // a.den, l // b.den
        return CycloNumber(a.context, tuple(x * fa + y * fb for x, y in zip(a.nums, b.nums)), l)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.context, tuple(-a for a in self.nums), self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.context
        deg = ctx.degree
        a, b = self.nums, o.nums
        if deg == 1:
            return CycloNumber(ctx, (a[0] * b[0],), self.den * o.den)
        # Convolution followed by reduction of exponents >= deg via the
        # integer power table.
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        out = conv[:deg]
        powers = ctx._powers
        for e in range(deg, 2 * deg - 1):
            c = conv[e]
            if c == 0:
                continue
            # z^n = 1, so exponents fold mod the conductor before the table.
            row = powers[e % ctx.conductor]
            for j, rj in enumerate(row):
                if rj:
                    out[j] += c * rj
        return CycloNumber(ctx, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> CycloNumber:
        """Multiplicative inverse via the extended Euclidean algorithm against
        Phi_n in Q[z]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ctx = self.context
        if self.is_rational():
            return ctx.from_rational(1 / Fraction(self.nums[0], self.den))
        # xgcd(a, Phi_n) = (g, u, v) with u*a + v*Phi = g, g a nonzero rational
        # because Phi_n is irreducible and deg a < deg Phi.
        a = [Fraction(x, self.den) for x in self.nums]
        b = [Fraction(c) for c in ctx.modulus]
        u0, u1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = a, b

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        def poly_sub_scaled(p, q, c, shift):
            # p -= c * q * z^shift
            need = len(q) + shift
            while len(p) < need:
                p.append(Fraction(0))
            for i, qc in enumerate(q):
                p[i + shift] -= c * qc
            return trim(p)

        r0, r1 = trim(r0), trim(r1)
        while len(r1) > 1 or (len(r1) == 1 and r1[0] != 0):
            if len(r0) < len(r1):
                r0, r1 = r1, r0
                u0, u1 = u1, u0
                continue
            # One long-division step folded into the loop.
            q: list[tuple[Fraction, int]] = []
            while len(r0) >= len(r1) and r0:
                c = r0[-1] / r1[-1]
                shift = len(r0) - len(r1)
                q.append((c, shift))
                r0 = poly_sub_scaled(r0, r1, c, shift)
            for c, shift in q:
                u0 = poly_sub_scaled(u0, u1, c, shift)
            r0, r1 = r1, r0
            u0, u1 = u1, u0
        # r0 is the gcd: a nonzero constant.
        if len(r0) != 1 or r0[0] == 0:
            raise AssertionError("xgcd against an irreducible modulus must end at a constant")
        g = r0[0]
        inv_coords = [c / g for c in u0]
        inv_coords += [Fraction(0)] * (ctx.degree - len(inv_coords))
        den = 1
        for c in inv_coords:
            den = math.lcm(den, c.denominator)
        nums = tuple(int(c * den) for c in inv_coords)
        return CycloNumber(ctx, nums, den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.context.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> CycloNumber:
        """Complex conjugation: z maps to z^(n-1) = z^-1."""
        ctx = self.context
        if ctx.conductor <= 2:
            return self
        deg = ctx.degree
        out = [0] * deg
        powers = ctx._powers
        for k, c in enumerate(self.nums):
            if c == 0:
                continue
            row = powers[(-k) % ctx.conductor]
            for j, rj in enumerate(row):
                if rj:
                    out[j] += c * rj
        return CycloNumber(ctx, tuple(out), self.den)

    def multiplicative_order(self, bound: int = 4096):
        """Order of self as a root of unity, or None if none is found within
        the bound (finite order implies the order divides lcm(2, conductor))."""
        if self.is_zero():
            return None
        acc = self
        for k in range(1, bound + 1):
            if acc == self.context.one:
                return k
            acc = acc * self
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.from_rational(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return (
            self.context is other.context
            and self.den == other.den
            and self.nums == other.nums
        )

    def __hash__(self):
        return hash((self.context.conductor, self.nums, self.den))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for k, a in enumerate(self.nums):
            if a == 0:
                continue
            coeff = Fraction(a, self.den)
            if k == 0:
                parts.append(("" if coeff > 0 else "-") + str(abs(coeff)))
                continue
            z = "z" if k == 1 else f"z^{k}"
            mag = abs(coeff)
            body = z if mag == 1 else f"{mag}*{z}"
            parts.append(("" if coeff > 0 else "-") + body)
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def embed(self, target: FieldContext) -> "CycloNumber":
        return embed(self, target)

    def __repr__(self) -> str:
        return f"CycloNumber({self})"


def embed(value: CycloNumber, target: FieldContext) -> CycloNumber:
    """The field embedding Q(zeta_m) -> Q(zeta_N) for m dividing N, sending
    zeta_m to zeta_N^(N/m).  Commutes with all arithmetic."""
    src = value.context
    if src is target:
        return value
    if target.conductor % src.conductor != 0:
        raise ContextMismatchError(
            f"no canonical embedding of conductor {src.conductor} into {target.conductor}"
        )
    step = target.conductor // src.conductor
    out = [0] * target.degree
    for k, c in enumerate(value.nums):
        if c == 0:
            continue
        row = target.power_coords(k * step)
        for j, rj in enumerate(row):
            if rj:
                out[j] += c * rj
    return CycloNumber(target, tuple(out), value.den)


def parse_scalar(text: str, context: FieldContext) -> CycloNumber:
    """Parse the scalar grammar: a sum of terms, each a rational or
    rational*z^k, e.g. ``1/2 + 3*z^2 - z^5``."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    # Split into signed terms at top level (no parentheses in the grammar).
    terms: list[tuple[int, str]] = []
    sign, buf = 1, []
    i = 0
    first = True
    while i < len(s):
        ch = s[i]
        if ch in "+-" and (first or buf):
            if buf:
                terms.append((sign, "".join(buf).strip()))
                buf = []
            sign = 1 if ch == "+" else -1
            if first and not terms:
                pass
            i += 1
            first = False
            continue
        buf.append(ch)
        i += 1
        first = False
    if buf:
        terms.append((sign, "".join(buf).strip()))
    if not terms:
        raise ValueError(f"cannot parse scalar {text!r}")
    total = context.zero
    for sgn, term in terms:
        if not term:
            raise ValueError(f"cannot parse scalar {text!r}")
        coeff = Fraction(1)
        zpow = None
        for factor in term.split("*"):
            f = factor.strip()
            if not f:
                raise ValueError(f"cannot parse scalar term {term!r}")
            if f.startswith("z"):
                if zpow is not None:
                    raise ValueError(f"repeated z factor in {term!r}")
                if f == "z":
                    zpow = 1
                elif f.startswith("z^"):
                    try:
                        zpow = int(f[2:])
                    except ValueError:
                        raise ValueError(f"cannot parse scalar factor {f!r}")
                else:
                    raise ValueError(f"cannot parse scalar factor {f!r}")
            else:
                try:
                    coeff *= Fraction(f)
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"cannot parse scalar factor {f!r}")
        value = context.from_rational(sgn * coeff)
        if zpow is not None:
            if context.conductor == 1:
                raise ValueError("z is not available in the rational context")
            value = value * context.zeta(zpow)
        total = total + value
    return total


class ScalarMatrix:
    """An exact matrix over the context field."""

    __slots__ = ("context", "rows", "cols", "entries")

    def __init__(self, context: FieldContext, entries):
        self.context = context
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if not isinstance(e, CycloNumber) or e.context is not context:
                    raise ContextMismatchError("matrix entry from a different context")

    @classmethod
    def identity(cls, context: FieldContext, n: int) -> ScalarMatrix:
        one, zero = context.one, context.zero
        return cls(context, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, context: FieldContext, rows: int, cols: int) -> ScalarMatrix:
        z = context.zero
        return cls(context, [[z] * cols for _ in range(rows)])

    @classmethod
    def from_rows(cls, context: FieldContext, rows) -> ScalarMatrix:
        conv = [[context.from_rational(e) if not isinstance(e, CycloNumber) else e for e in row] for row in rows]
        return cls(context, conv)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.context is other.context and self.entries == other.entries

    def __hash__(self):
        return hash((self.context.conductor, self.entries))

    def __add__(self, other):
        self._check(other)
        return ScalarMatrix(
            self.context,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        self._check(other)
        return ScalarMatrix(
            self.context,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return ScalarMatrix(self.context, [[-a for a in row] for row in self.entries])

    def _check(self, other):
        if not isinstance(other, ScalarMatrix) or other.context is not self.context:
            raise ContextMismatchError("matrix contexts differ")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            c = self.context.from_rational(other) if not isinstance(other, CycloNumber) else other
            return ScalarMatrix(self.context, [[a * c for a in row] for row in self.entries])
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        if other.context is not self.context:
            raise ContextMismatchError("matrix contexts differ")
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        zero = self.context.zero
        bt = other.entries
        out = []
        for row in self.entries:
            new_row = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        b = bt[k][j]
                        if b:
                            acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return ScalarMatrix(self.context, out)

    __rmul__ = __mul__

    def transpose(self) -> ScalarMatrix:
        return ScalarMatrix(self.context, list(zip(*self.entries)) if self.entries else [])

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one, zero = self.context.one, self.context.zero
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e != (one if i == j else zero):
                    return False
        return True

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def _echelon(self, augment: ScalarMatrix | None = None):
        # Gauss-Jordan over the field; returns (reduced rows, rank, aug rows).
        work = [list(row) for row in self.entries]
        aug = [list(row) for row in augment.entries] if augment is not None else None
        rank = 0
        for col in range(self.cols):
            pivot = None
            for i in range(rank, self.rows):
                if work[i][col]:
                    pivot = i
                    break
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            if aug is not None:
                aug[rank], aug[pivot] = aug[pivot], aug[rank]
            inv = work[rank][col].inverse()
            work[rank] = [e * inv for e in work[rank]]
            if aug is not None:
                aug[rank] = [e * inv for e in aug[rank]]
            for i in range(self.rows):
                if i != rank and work[i][col]:
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
                    if aug is not None:
                        aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
            rank += 1
            if rank == self.rows:
                break
        return work, rank, aug

    def rank(self) -> int:
        return self._echelon()[1]

    def det(self) -> CycloNumber:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        work = [list(row) for row in self.entries]
        n = self.rows
        det = self.context.one
        for col in range(n):
            pivot = None
            for i in range(col, n):
                if work[i][col]:
                    pivot = i
                    break
            if pivot is None:
                return self.context.zero
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            det = det * work[col][col]
            inv = work[col][col].inverse()
            for i in range(col + 1, n):
                if work[i][col]:
                    f = work[i][col] * inv
                    work[i] = [a - f * b for a, b in zip(work[i], work[col])]
        return det

    def inverse(self) -> ScalarMatrix:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        reduced, rank, aug = self._echelon(ScalarMatrix.identity(self.context, self.rows))
        if rank != self.rows:
            raise ZeroDivisionError("matrix is singular")
        return ScalarMatrix(self.context, aug)

    def __pow__(self, exponent: int):
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        result = ScalarMatrix.identity(self.context, self.rows)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def commutes_with(self, other: ScalarMatrix) -> bool:
        return self * other == other * self

    def embed(self, target: FieldContext) -> ScalarMatrix:
        return ScalarMatrix(target, [[embed(e, target) for e in row] for row in self.entries])

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"

    def __repr__(self) -> str:
        return f"ScalarMatrix({self})"
