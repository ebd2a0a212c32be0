"""Exact fields of odd characteristic: Q, Q(i), quadratic towers, F_p and F_{p^e}.

Every context works on *raw* values (ints, Fractions, tuples) and the
:class:`FieldElement` wrapper gives them operator syntax.  Contexts are
interned by descriptor, so two contexts compare equal iff their
descriptors do.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

SUPPORTED_EXPONENTS = (1, 2, 4)
TOWER_CAP = 2


class FieldError(ValueError):
    """Malformed descriptor or literal, or an operation outside the field."""


class CharacteristicTwoError(FieldError):
    pass


class ExtensionBudgetExceeded(FieldError):
    """A square root would need more quadratic adjunctions than allowed."""

    def __init__(self, message: str, radicands: Sequence[str] = ()):
        super().__init__(message)
        self.radicands = list(radicands)


_CTX_CACHE: dict[str, "FieldCtx"] = {}


def _intern(ctx: "FieldCtx") -> "FieldCtx":
    return _CTX_CACHE.setdefault(ctx.descriptor, ctx)


class FieldCtx:
    kind: str
    descriptor: str
    characteristic: int
    degree: int

    is_finite = False

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"<{self.kind} {self.descriptor}>"

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldError(f"element of {value.ctx.descriptor} is not in {self.descriptor}")
            return value
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return FieldElement(self, self.from_fraction(value))
        raise FieldError(f"cannot coerce {value!r} into {self.descriptor}")

    @property
    def zero_el(self) -> "FieldElement":
        return FieldElement(self, self.zero)

    @property
    def one_el(self) -> "FieldElement":
        return FieldElement(self, self.one)

    def from_fraction(self, x: Fraction):
        den = self.from_int(x.denominator)
        if self.is_zero(den):
            raise FieldError(f"division by zero in {self.descriptor}")
        return self.mul(self.from_int(x.numerator), self.inv(den))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def canonical_root(self, r):
        """Of the two roots r, -r return the one with smaller coordinates."""
        s = self.neg(r)
        return r if self.coords(r) <= self.coords(s) else s

    def imag_unit(self):
        """Raw sqrt(-1) in this field, or None."""
        return self.sqrt(self.from_int(-1))


# ---------------------------------------------------------------- finite fields


class FiniteField(FieldCtx):
    is_finite = True
    p: int
    order: int

    def elements(self) -> Iterator:
        """Raw elements in lexicographic order of their coordinates."""
        raise NotImplementedError

    def sqrt(self, a):
        if self.is_zero(a):
            return self.zero
        r = tonelli_shanks(self, a)
        return None if r is None else self.canonical_root(r)

    def is_square(self, a) -> bool:
        return self.is_zero(a) or self.pow(a, (self.order - 1) // 2) == self.one


class PrimeField(FiniteField):
    kind = "PrimeField"

    def __init__(self, p: int):
        self.p = self.characteristic = self.order = p
        self.degree = 1
        self.descriptor = f"Fp:{p}"
        self.zero, self.one = 0, 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.descriptor}")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p)

    def coords(self, a):
        return (a,)

    def from_coords(self, cs):
        if len(cs) != 1:
            raise FieldError(f"{self.descriptor} elements have 1 coordinate")
        return int(cs[0]) % self.p

    def fmt(self, a):
        return str(a)

    def elements(self):
        return iter(range(self.p))


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Product of coefficient lists (low degree first) modulo a monic polynomial."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    prod = prod[:e] + [0] * max(0, e - len(prod))
    return prod


def _poly_divisible(f: Sequence[int], g: Sequence[int], p: int) -> bool:
    """Whether monic g divides f over F_p (both low degree first)."""
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for j in range(dg + 1):
                r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return not any(r[:dg])


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    # coefficient tuples written from x^{d-1} down to x^0, in lexicographic order
    for high_to_low in itertools.product(range(p), repeat=d):
        yield list(reversed(high_to_low)) + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    d = len(f) - 1
    return not any(
        _poly_divisible(f, g, p) for k in range(1, d // 2 + 1) for g in _monic_polys(p, k)
    )


@lru_cache(maxsize=None)
def lex_first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree e over F_p.

    Coefficients are returned low degree first; the ordering used for "first"
    reads the coefficients from x^{e-1} down to the constant term.
    """
    for f in _monic_polys(p, e):
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


class PrimePowerField(FiniteField):
    """F_{p^e} as F_p[x]/(m), elements coded as sum c_i p^i.

    Multiplication and addition go through exp/log/Zech tables built once
    from a primitive element.
    """

    kind = "PrimePowerField"

    def __init__(self, p: int, e: int):
        self.p = self.characteristic = p
        self.degree = e
        self.order = q = p**e
        self.descriptor = f"Fq:{p}^{e}"
        self.modulus = lex_first_irreducible(p, e)
        self.zero, self.one = 0, 1
        self._digits = [tuple(c // p**i % p for i in range(e)) for c in range(q)]
        self._neg = [self._encode([-d % p for d in ds]) for ds in self._digits]
        self._build_tables()

    def _encode(self, ds) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _build_tables(self):
        p, e, q, m = self.p, self.degree, self.order, self.modulus
        n = q - 1
        factors = _prime_factors(n)

        def poly_pow(base, k):
            result = [1] + [0] * (e - 1)
            while k:
                if k & 1:
                    result = _poly_mulmod(result, base, m, p)
                base = _poly_mulmod(base, base, m, p)
                k >>= 1
            return result

        one = [1] + [0] * (e - 1)
        for code in range(2, q):
            g = list(self._digits[code])
            if all(poly_pow(g, n // r) != one for r in factors):
                break
        else:  # pragma: no cover
            raise FieldError(f"no primitive element in {self.descriptor}")
        self.generator_code = code
        exp = [0] * n
        log = [None] * q
        cur = one
        for k in range(n):
            c = self._encode(cur)
            exp[k] = c
            log[c] = k
            cur = _poly_mulmod(cur, g, m, p)
        # zech[k] = log(1 + g^k), None when 1 + g^k = 0
        zech = [None] * n
        for k in range(n):
            ds = list(self._digits[exp[k]])
            ds[0] = (ds[0] + 1) % p
            s = self._encode(ds)
            zech[k] = log[s] if s else None
        self._exp, self._log, self._zech = exp, log, zech

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        return 0 if z is None else self._exp[(la + z) % (self.order - 1)]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.descriptor}")
        return self._exp[-self._log[a] % (self.order - 1)]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        return self._exp[self._log[a] * n % (self.order - 1)]

    def coords(self, a):
        return self._digits[a]

    def from_coords(self, cs):
        if len(cs) != self.degree:
            raise FieldError(f"{self.descriptor} elements have {self.degree} coordinates")
        return self._encode([int(c) % self.p for c in cs])

    def fmt(self, a):
        return "[" + ",".join(map(str, self._digits[a])) + "]"

    def elements(self):
        return iter(sorted(range(self.order), key=self._digits.__getitem__))

    def gen(self):
        """Raw code of the class of x."""
        return self.p


def tonelli_shanks(ctx: FiniteField, a):
    """A square root of raw a in a finite field of odd order, or None.

    q = 3 (mod 4) uses a^{(q+1)/4}; otherwise the quadratic non-residue is
    the first one met scanning elements in coordinate order.
    """
    q = ctx.order
    if ctx.is_zero(a):
        return ctx.zero
    if ctx.pow(a, (q - 1) // 2) != ctx.one:
        return None
    if q % 4 == 3:
        return ctx.pow(a, (q + 1) // 4)
    s, t = 0, q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    minus_one = ctx.neg(ctx.one)
    z = next(x for x in ctx.elements() if ctx.pow(x, (q - 1) // 2) == minus_one)
    m, c = s, ctx.pow(z, t)
    x, b = ctx.pow(a, (t + 1) // 2), ctx.pow(a, t)
    while b != ctx.one:
        i, b2 = 0, b
        while b2 != ctx.one:
            b2 = ctx.mul(b2, b2)
            i += 1
        f = c
        for _ in range(m - i - 1):
            f = ctx.mul(f, f)
        x, c = ctx.mul(x, f), ctx.mul(f, f)
        b, m = ctx.mul(b, c), i
    return x


# ------------------------------------------------------------- number fields


class Rationals(FieldCtx):
    kind = "Rational"
    descriptor = "Q"
    characteristic = 0
    degree = 1
    height = 0

    zero, one = Fraction(0), Fraction(1)

    @property
    def base(self):
        return self

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(1) / a

    def coords(self, a):
        return (a,)

    def from_coords(self, cs):
        if len(cs) != 1:
            raise FieldError("Q elements have 1 coordinate")
        return Fraction(cs[0])

    def fmt(self, a):
        return str(a)

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def imag_unit(self):
        return None


class QuadExt(FieldCtx):
    """below(sqrt(d)); raw elements are pairs (a, b) meaning a + b*sqrt(d)."""

    def __init__(self, below: FieldCtx, d):
        self.below = below
        self.d = d
        self.characteristic = 0
        self.degree = 2 * below.degree
        self.zero = (below.zero, below.zero)
        self.one = (below.one, below.zero)
        if isinstance(below, Rationals) and d == -1:
            self.kind = "GaussianRational"
            self.descriptor = "Qi"
            self.height = 0
            self.base = self
        else:
            self.kind = "QuadraticTower"
            self.height = below.height + 1
            self.base = below.base
            self.descriptor = f"{below.descriptor}|{below.fmt(d)}"

    @property
    def radicands(self) -> list[str]:
        out, ctx = [], self
        while isinstance(ctx, QuadExt) and ctx.kind == "QuadraticTower":
            out.append(ctx.below.fmt(ctx.d))
            ctx = ctx.below
        return out[::-1]

    def from_int(self, n):
        return (self.below.from_int(n), self.below.zero)

    def from_fraction(self, x):
        return (self.below.from_fraction(x), self.below.zero)

    def add(self, x, y):
        B = self.below
        return (B.add(x[0], y[0]), B.add(x[1], y[1]))

    def sub(self, x, y):
        B = self.below
        return (B.sub(x[0], y[0]), B.sub(x[1], y[1]))

    def neg(self, x):
        return (self.below.neg(x[0]), self.below.neg(x[1]))

    def mul(self, x, y):
        B = self.below
        a, b = x
        c, e = y
        return (
            B.add(B.mul(a, c), B.mul(self.d, B.mul(b, e))),
            B.add(B.mul(a, e), B.mul(b, c)),
        )

    def inv(self, x):
        B = self.below
        a, b = x
        norm = B.sub(B.mul(a, a), B.mul(self.d, B.mul(b, b)))
        if B.is_zero(norm):
            raise ZeroDivisionError(f"division by zero in {self.descriptor}")
        n = B.inv(norm)
        return (B.mul(a, n), B.neg(B.mul(b, n)))

    def coords(self, x):
        return self.below.coords(x[0]) + self.below.coords(x[1])

    def from_coords(self, cs):
        if len(cs) != self.degree:
            raise FieldError(f"{self.descriptor} elements have {self.degree} coordinates")
        h = len(cs) // 2
        return (self.below.from_coords(cs[:h]), self.below.from_coords(cs[h:]))

    def fmt(self, x):
        if self.kind == "GaussianRational":
            a, b = x
            if b == 0:
                return str(a)
            if a == 0:
                return f"{b}i"
            return f"{a}{'+' if b > 0 else '-'}{abs(b)}i"
        return "[" + ",".join(str(c) for c in self.coords(x)) + "]"

    def gen(self):
        return (self.below.zero, self.below.one)

    def sqrt(self, x):
        root = self._some_sqrt(x)
        return None if root is None else self.canonical_root(root)

    def _some_sqrt(self, x):
        B = self.below
        a, b = x
        if B.is_zero(b):
            s = B.sqrt(a)
            if s is not None:
                return (s, B.zero)
            s = B.sqrt(B.mul(a, B.inv(self.d)))
            return None if s is None else (B.zero, s)
        n = B.sqrt(B.sub(B.mul(a, a), B.mul(self.d, B.mul(b, b))))
        if n is None:
            return None
        half = B.inv(B.from_int(2))
        for sign_n in (n, B.neg(n)):
            s = B.sqrt(B.mul(B.add(a, sign_n), half))
            if s is not None and not B.is_zero(s):
                return (s, B.mul(b, B.inv(B.mul(B.from_int(2), s))))
        return None

    def imag_unit(self):
        lower = self.below.imag_unit()
        if lower is not None:
            return (lower, self.below.zero)
        if self.d == self.below.from_int(-1):
            return self.gen()
        return self.sqrt(self.from_int(-1))


# ----------------------------------------------------------------- elements


class FieldElement:
    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v):
        self.ctx = ctx
        self.v = v

    def _raw(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError(
                    f"mismatched contexts {self.ctx.descriptor} and {other.ctx.descriptor}"
                )
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ctx.from_int(other)
        if isinstance(other, Fraction):
            return self.ctx.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.v, o))

    def __rsub__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.v))

    def __mul__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.v, self.ctx.inv(o)))

    def __rtruediv__(self, other):
        o = self._raw(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(o, self.ctx.inv(self.v)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.v, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.v))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.v)

    def __bool__(self):
        return not self.ctx.is_zero(self.v)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.v == other.v
        o = self._raw(other)
        if o is NotImplemented:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.ctx.descriptor, self.v))

    @property
    def coords(self) -> tuple:
        return self.ctx.coords(self.v)

    def sort_key(self) -> tuple:
        return self.coords

    def __str__(self):
        return self.ctx.fmt(self.v)

    def __repr__(self):
        return f"{self.ctx.descriptor}({self.ctx.fmt(self.v)})"


# ----------------------------------------------------------------- factories

Q = _intern(Rationals())


def prime_field(p: int) -> PrimeField:
    if p == 2:
        raise CharacteristicTwoError("characteristic 2 is not supported (2 must be invertible)")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return _CTX_CACHE.get(f"Fp:{p}") or _intern(PrimeField(p))


def prime_power_field(p: int, e: int) -> FiniteField:
    if p == 2:
        raise CharacteristicTwoError("characteristic 2 is not supported (2 must be invertible)")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError("exponent must be at least 1")
    if e not in SUPPORTED_EXPONENTS:
        raise FieldError(f"F_{{p^e}} is only supported for e in {SUPPORTED_EXPONENTS}, got e={e}")
    if e == 1:
        return prime_field(p)
    return _CTX_CACHE.get(f"Fq:{p}^{e}") or _intern(PrimePowerField(p, e))


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    ps = _prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p, e = ps[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def finite_field(q: int) -> FiniteField:
    """The field with q elements."""
    p, e = factor_prime_power(q)
    return prime_power_field(p, e)


def gaussian_rationals() -> QuadExt:
    return _CTX_CACHE.get("Qi") or _intern(QuadExt(Q, Fraction(-1)))


def adjoin_sqrt(ctx: FieldCtx, d) -> QuadExt:
    """Number-field tower ctx(sqrt d) for a non-square d (element, int, Fraction or raw)."""
    if ctx.is_finite:
        raise FieldError("use quadratic_extension for finite fields")
    if isinstance(d, FieldElement):
        d = d.v
    elif isinstance(d, (int, Fraction)):
        d = ctx.from_fraction(Fraction(d))
    if ctx.sqrt(d) is not None:
        raise FieldError(f"{ctx.fmt(d)} is already a square in {ctx.descriptor}")
    if ctx is Q and d == -1:
        return gaussian_rationals()
    if ctx.height + 1 > TOWER_CAP:
        raise ExtensionBudgetExceeded(
            f"adjoining sqrt({ctx.fmt(d)}) to {ctx.descriptor} exceeds the tower cap {TOWER_CAP}",
            radicands=ctx.radicands + [ctx.fmt(d)],
        )
    new = QuadExt(ctx, d)
    return _CTX_CACHE.get(new.descriptor) or _intern(new)


def quadratic_extension(ctx: FiniteField) -> FiniteField:
    try:
        return prime_power_field(ctx.p, 2 * ctx.degree)
    except FieldError as exc:
        raise ExtensionBudgetExceeded(
            f"no supported quadratic extension of {ctx.descriptor}"
        ) from exc


_FP = re.compile(r"Fp:(\d+)")
_FQ = re.compile(r"Fq:(\d+)\^(\d+)")


def make_field(desc: str) -> FieldCtx:
    """Field from a descriptor: Q, Qi, Fp:<p>, Fq:<p>^<e>, or a tower base|d1|d2."""
    desc = desc.strip()
    if "|" in desc:
        base, *rads = desc.split("|")
        ctx = make_field(base)
        if ctx.is_finite or ctx.height != 0:
            raise FieldError(f"towers are built over Q or Qi, not {base!r}")
        for r in rads:
            ctx = adjoin_sqrt(ctx, parse_element(ctx, r).v)
        return ctx
    if desc == "Q":
        return Q
    if desc == "Qi":
        return gaussian_rationals()
    m = _FP.fullmatch(desc)
    if m:
        return prime_field(int(m.group(1)))
    m = _FQ.fullmatch(desc)
    if m:
        return prime_power_field(int(m.group(1)), int(m.group(2)))
    raise FieldError(f"malformed field descriptor {desc!r}")


# ------------------------------------------------------------------ literals

_INT = re.compile(r"[+-]?\d+")
_FRAC = re.compile(r"([+-]?\d+)/(\d+)")
_GAUSS = re.compile(
    r"(?:(?P<re>[+-]?\d+(?:/\d+)?)(?=[+-]))?(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i"
)


def _rational(tok: str) -> Fraction:
    m = _FRAC.fullmatch(tok)
    if m:
        if int(m.group(2)) == 0:
            raise FieldError(f"division by zero in literal {tok!r}")
        return Fraction(int(m.group(1)), int(m.group(2)))
    if _INT.fullmatch(tok):
        return Fraction(int(tok))
    raise FieldError(f"malformed rational {tok!r}")


def _reduce(ctx: FieldCtx, x: Fraction):
    try:
        return ctx.from_fraction(x)
    except ZeroDivisionError as exc:  # pragma: no cover - from_fraction raises FieldError
        raise FieldError(str(exc)) from exc


def parse_element(ctx: FieldCtx, literal: str) -> FieldElement:
    s = literal.strip().replace(" ", "")
    if s.startswith("[") and s.endswith("]"):
        parts = s[1:-1].split(",")
        if ctx.is_finite:
            if not all(_INT.fullmatch(c) for c in parts):
                raise FieldError(f"malformed coordinates {literal!r}")
            return FieldElement(ctx, ctx.from_coords([int(c) for c in parts]))
        return FieldElement(ctx, ctx.from_coords([_rational(c) for c in parts]))
    if _INT.fullmatch(s) or _FRAC.fullmatch(s):
        return FieldElement(ctx, _reduce(ctx, _rational(s)))
    m = _GAUSS.fullmatch(s)
    if m:
        i = ctx.imag_unit()
        if i is None:
            raise FieldError(f"literal {literal!r} needs sqrt(-1), which is not in {ctx.descriptor}")
        re_part = _rational(m.group("re")) if m.group("re") else Fraction(0)
        im_tok = m.group("im")
        im_part = Fraction(-1 if im_tok == "-" else 1) if im_tok in ("", "+", "-") else _rational(im_tok)
        v = ctx.add(_reduce(ctx, re_part), ctx.mul(_reduce(ctx, im_part), i))
        return FieldElement(ctx, v)
    raise FieldError(f"malformed literal {literal!r}")


def format_element(x: FieldElement) -> str:
    return str(x)


# ----------------------------------------------------------- extension logic


@lru_cache(maxsize=None)
def _finite_embedding(src: str, dst: str) -> tuple:
    s, t = make_field(src), make_field(dst)
    if s.p != t.p or t.degree % s.degree:
        raise FieldError(f"{src} does not embed in {dst}")
    if isinstance(s, PrimeField):
        return tuple(t.from_int(c) for c in range(s.order))
    m = s.modulus

    def is_root(r):
        acc = t.zero
        for c in reversed(m):
            acc = t.add(t.mul(acc, r), t.from_int(c))
        return t.is_zero(acc)

    r = next(x for x in t.elements() if is_root(x))
    table = []
    for code in range(s.order):
        acc = t.zero
        for c in reversed(s.coords(code)):
            acc = t.add(t.mul(acc, r), t.from_int(c))
        table.append(acc)
    return tuple(table)


def embed(x: FieldElement, target: FieldCtx) -> FieldElement:
    """Image of x under the fixed embedding of its field into target."""
    src = x.ctx
    if src == target:
        return x
    if src.is_finite and target.is_finite:
        return FieldElement(target, _finite_embedding(src.descriptor, target.descriptor)[x.v])
    chain, ctx = [], target
    while ctx != src:
        if not isinstance(ctx, QuadExt):
            raise FieldError(f"{src.descriptor} does not embed in {target.descriptor}")
        chain.append(ctx)
        ctx = ctx.below
    v = x.v
    for layer in reversed(chain):
        v = (v, layer.below.zero)
    return FieldElement(target, v)


def _squarefree_split(x: Fraction) -> tuple[Fraction, int]:
    """x = r^2 * s with s a squarefree integer."""
    n = x.numerator * x.denominator
    sign, n = (-1 if n < 0 else 1), abs(n)
    r, s, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            r *= d
        if n % d == 0:
            n //= d
            s *= d
        d += 1
    s *= n
    return Fraction(r, x.denominator), sign * s


def sqrt_or_extend(ctx: FieldCtx, a: FieldElement) -> tuple[FieldElement, FieldCtx, bool]:
    """A square root of a, adjoining one if a is not a square in ctx.

    When a is a square in ctx the root with the lexicographically smaller
    coordinates is returned.  A new number-field layer returns its adjoined
    generator (scaled by a rational over Q); a new finite field returns the
    coordinate-smaller root.
    """
    a = ctx(a) if not isinstance(a, FieldElement) else a
    if a.ctx != ctx:
        raise FieldError("element does not belong to ctx")
    if a.is_zero():
        return a, ctx, False
    r = ctx.sqrt(a.v)
    if r is not None:
        return FieldElement(ctx, r), ctx, False
    if ctx.is_finite:
        new = quadratic_extension(ctx)
        return FieldElement(new, new.sqrt(embed(a, new).v)), new, True
    if ctx is Q:
        scale, s = _squarefree_split(a.v)
        new = adjoin_sqrt(Q, Fraction(s))
        return FieldElement(new, (Fraction(0), scale)), new, True
    new = adjoin_sqrt(ctx, a.v)
    return FieldElement(new, new.gen()), new, True


def imag_unit(ctx: FieldCtx) -> FieldElement | None:
    i = ctx.imag_unit()
    return None if i is None else FieldElement(ctx, i)


def with_imag_unit(ctx: FieldCtx) -> tuple[FieldElement, FieldCtx]:
    """sqrt(-1) together with the smallest supported field containing it."""
    i = imag_unit(ctx)
    if i is not None:
        return i, ctx
    root, new, _ = sqrt_or_extend(ctx, ctx(-1))
    return imag_unit(new), new


def elements(ctx: FiniteField) -> list[FieldElement]:
    return [FieldElement(ctx, v) for v in ctx.elements()]
