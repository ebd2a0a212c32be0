"""Full flags 0 < L < V2 < F^3, points of P^2, and finite-field enumerations."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .config import check_q, resolve_cap
from .exactfield import FieldCtx, FieldElement, elements, finite_field
from .mat3 import Mat3, Vec3, bilinear, det3


class FlagError(ValueError):
    pass


def _normalize(v: Vec3) -> tuple[Vec3, int]:
    """Scale v so its first nonzero entry is 1; return it with the pivot index."""
    for i, a in enumerate(v.entries):
        if not a.is_zero():
            return v * a.inverse(), i
    raise FlagError("zero vector has no line")


def complete(v1: Vec3, v2: Vec3) -> Mat3:
    """(v1 | v2 | e_j / d) with the first e_j making it invertible, scaled to det 1."""
    ctx = v1.ctx
    for j in range(3):
        m = Mat3.from_columns(v1, v2, Vec3.basis(ctx, j))
        d = det3(m)
        if not d.is_zero():
            return Mat3.from_columns(v1, v2, Vec3.basis(ctx, j) * d.inverse())
    raise FlagError("columns are linearly dependent")


def canonical_form(v1: Vec3, v2: Vec3) -> Mat3:
    """Reduced column-echelon representative of the flag span(v1) < span(v1, v2)."""
    u1, r1 = _normalize(v1)
    w = v2 - u1 * v2[r1]
    if w.is_zero():
        raise FlagError("v1 and v2 are linearly dependent")
    u2, _ = _normalize(w)
    return complete(u1, u2)


class ProjPoint:
    """A point of P^2 with first nonzero coordinate 1."""

    __slots__ = ("coords",)

    def __init__(self, v: Vec3):
        self.coords, _ = _normalize(v)

    @classmethod
    def of(cls, ctx: FieldCtx, values) -> "ProjPoint":
        return cls(Vec3.of(ctx, values))

    @property
    def ctx(self) -> FieldCtx:
        return self.coords.ctx

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return self.coords.sort_key()

    def embed(self, ctx: FieldCtx) -> "ProjPoint":
        return ProjPoint(self.coords.embed(ctx))

    def __repr__(self):
        return "[" + ":".join(map(str, self.coords)) + "]"


class Flag:
    """A full flag given by an SL_3 representative; equality uses the canonical form."""

    __slots__ = ("rep", "canonical")

    def __init__(self, rep: Mat3, canonical: Mat3 | None = None):
        self.rep = rep
        self.canonical = canonical if canonical is not None else canonical_form(rep.col(0), rep.col(1))

    @property
    def ctx(self) -> FieldCtx:
        return self.rep.ctx

    @property
    def v1(self) -> Vec3:
        return self.rep.col(0)

    @property
    def v2(self) -> Vec3:
        return self.rep.col(1)

    @property
    def line(self) -> ProjPoint:
        return ProjPoint(self.rep.col(0))

    @property
    def plane_normal(self) -> ProjPoint:
        return ProjPoint(self.v1.cross(self.v2))

    def act(self, k: Mat3) -> "Flag":
        """k . flag, i.e. the flag of k g."""
        return Flag(k @ self.rep)

    def embed(self, ctx: FieldCtx) -> "Flag":
        if ctx == self.ctx:
            return self
        return Flag(self.rep.embed(ctx), self.canonical.embed(ctx))

    def canonicalized(self) -> "Flag":
        return Flag(self.canonical, self.canonical)

    def contains(self, v: Vec3) -> bool:
        """Whether v lies in V2."""
        return det3(Mat3.from_columns(self.v1, self.v2, v)).is_zero()

    def __eq__(self, other):
        return isinstance(other, Flag) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def sort_key(self):
        return self.canonical.sort_key()

    def __repr__(self):
        return f"Flag[{self.ctx.descriptor}]({self.canonical})"


def flag_from_matrix(g: Mat3) -> Flag:
    if not (det3(g) - 1).is_zero():
        raise FlagError(f"representative must have det 1, got {det3(g)}")
    return Flag(g)


def flag_from_line_plane(line: ProjPoint, plane_normal: ProjPoint) -> Flag:
    """Flag with L = line and V2 = {x : n . x = 0}; deterministic det-1 completion."""
    v, n = line.coords, plane_normal.coords
    if not bilinear(v, n).is_zero():
        raise FlagError("line is not contained in the plane")
    ctx = v.ctx
    piv = next(i for i, a in enumerate(n.entries) if not a.is_zero())
    for m in range(3):
        if m == piv:
            continue
        w = Vec3.basis(ctx, m) - Vec3.basis(ctx, piv) * n[m]
        if not v.cross(w).is_zero():
            return Flag(complete(v, w))
    raise FlagError("degenerate plane")  # pragma: no cover


def _points(ctx: FieldCtx, free: Iterable[int]) -> list[Vec3]:
    """Canonical points of P(span of the coordinates listed in free)."""
    free = list(free)
    els = elements(ctx)
    zero, one = ctx.zero_el, ctx.one_el
    out = []
    for k, pivot in enumerate(free):
        rest = free[k + 1 :]
        for tail in _product(els, len(rest)):
            e = [zero, zero, zero]
            e[pivot] = one
            for idx, val in zip(rest, tail):
                e[idx] = val
            out.append(Vec3(e))
    return out


def _product(els: list[FieldElement], n: int):
    if n == 0:
        yield ()
        return
    for x in els:
        for rest in _product(els, n - 1):
            yield (x,) + rest


def enumerate_lines(q: int, cap: int | None = None) -> list[ProjPoint]:
    check_q(q, resolve_cap(cap))
    ctx = finite_field(q)
    return sorted((ProjPoint(v) for v in _points(ctx, range(3))), key=ProjPoint.sort_key)


@lru_cache(maxsize=16)
def flags_over(ctx: FieldCtx) -> tuple[Flag, ...]:
    """Every full flag of ctx^3 once, sorted by canonical coordinates."""
    out = []
    for u1 in _points(ctx, range(3)):
        r1 = next(i for i, a in enumerate(u1.entries) if not a.is_zero())
        for u2 in _points(ctx, [i for i in range(3) if i != r1]):
            c = complete(u1, u2)
            out.append(Flag(c, c))
    out.sort(key=Flag.sort_key)
    return tuple(out)


def enumerate_flags(q: int, cap: int | None = None) -> tuple[Flag, ...]:
    check_q(q, resolve_cap(cap))
    return flags_over(finite_field(q))


def poincare_count(q: int) -> int:
    return q**3 + 2 * q**2 + 2 * q + 1


def unit_vectors(ctx: FieldCtx) -> list[Vec3]:
    """All v in ctx^3 with (v, v) = 1."""
    els = elements(ctx)
    sq = {}
    for x in els:
        sq.setdefault(x * x, []).append(x)
    one = ctx.one_el
    out = []
    for x in els:
        for y in els:
            rem = one - x * x - y * y
            for z in sq.get(rem, ()):
                out.append(Vec3((x, y, z)))
    return out


@lru_cache(maxsize=16)
def so3_over(ctx: FieldCtx) -> tuple[Mat3, ...]:
    """SO(3, ctx) for finite ctx: orthonormal v1, v2 and v3 = v1 x v2."""
    units = unit_vectors(ctx)
    out = []
    for v1 in units:
        for v2 in units:
            if bilinear(v1, v2).is_zero():
                out.append(Mat3.from_columns(v1, v2, v1.cross(v2)))
    out.sort(key=Mat3.sort_key)
    return tuple(out)


def enumerate_SO3(q: int, cap: int | None = None) -> tuple[Mat3, ...]:
    check_q(q, resolve_cap(cap))
    return so3_over(finite_field(q))


def upper_borel(ctx: FieldCtx) -> list[Mat3]:
    """B_std(F_q): upper triangular, det 1."""
    els = elements(ctx)
    units = [x for x in els if not x.is_zero()]
    zero = ctx.zero_el
    out = []
    for a in units:
        for b in units:
            c = (a * b).inverse()
            for x in els:
                for y in els:
                    for z in els:
                        out.append(Mat3([[a, x, y], [zero, b, z], [zero, zero, c]]))
    return out
