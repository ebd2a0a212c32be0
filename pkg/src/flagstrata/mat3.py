"""3-vectors and 3x3 matrices over an exact field, with the form (u, v) = sum u_i v_i."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactfield import FieldCtx, FieldElement, FieldError, embed, parse_element


class Vec3:
    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[FieldElement]):
        entries = tuple(entries)
        if len(entries) != 3:
            raise ValueError("Vec3 needs exactly 3 entries")
        ctx = entries[0].ctx
        if any(e.ctx != ctx for e in entries[1:]):
            raise FieldError("Vec3 entries must share one field")
        self.entries = entries

    @classmethod
    def of(cls, ctx: FieldCtx, values: Sequence) -> "Vec3":
        return cls(ctx(v) for v in values)

    @classmethod
    def basis(cls, ctx: FieldCtx, i: int) -> "Vec3":
        return cls(ctx.one_el if j == i else ctx.zero_el for j in range(3))

    @property
    def ctx(self) -> FieldCtx:
        return self.entries[0].ctx

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return 3

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "Vec3":
        return Vec3(-a for a in self.entries)

    def __mul__(self, scalar) -> "Vec3":
        return Vec3(a * scalar for a in self.entries)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Vec3) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.entries)

    def cross(self, other: "Vec3") -> "Vec3":
        a1, a2, a3 = self.entries
        b1, b2, b3 = other.entries
        return Vec3((a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1))

    def embed(self, ctx: FieldCtx) -> "Vec3":
        return Vec3(embed(a, ctx) for a in self.entries)

    def sort_key(self) -> tuple:
        return tuple(a.coords for a in self.entries)

    def __repr__(self):
        return "Vec3(" + ", ".join(map(str, self.entries)) + ")"


def bilinear(u: Vec3, v: Vec3) -> FieldElement:
    if u.ctx != v.ctx:
        raise FieldError(f"mismatched contexts {u.ctx.descriptor} and {v.ctx.descriptor}")
    a1, a2, a3 = u.entries
    b1, b2, b3 = v.entries
    return a1 * b1 + a2 * b2 + a3 * b3


class Mat3:
    """Row-major storage; ``col(i)`` is v_{i+1}(g)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[FieldElement]]):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs 3x3 entries")
        ctx = rows[0][0].ctx
        if any(e.ctx != ctx for r in rows for e in r):
            raise FieldError("Mat3 entries must share one field")
        self.rows = rows

    @classmethod
    def of(cls, ctx: FieldCtx, rows: Sequence[Sequence]) -> "Mat3":
        return cls([ctx(v) for v in r] for r in rows)

    @classmethod
    def from_columns(cls, c1: Vec3, c2: Vec3, c3: Vec3) -> "Mat3":
        return cls(zip(c1.entries, c2.entries, c3.entries))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Mat3":
        return diag(ctx, 1, 1, 1)

    @property
    def ctx(self) -> FieldCtx:
        return self.rows[0][0].ctx

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vec3:
        return Vec3(r[j] for r in self.rows)

    @property
    def columns(self) -> tuple[Vec3, Vec3, Vec3]:
        return self.col(0), self.col(1), self.col(2)

    @property
    def T(self) -> "Mat3":
        return Mat3(zip(*self.rows))

    def __matmul__(self, other):
        if isinstance(other, Vec3):
            x = other.entries
            return Vec3(r[0] * x[0] + r[1] * x[1] + r[2] * x[2] for r in self.rows)
        cols = list(zip(*other.rows))
        return Mat3(
            [r[0] * c[0] + r[1] * c[1] + r[2] * c[2] for c in cols] for r in self.rows
        )

    def __mul__(self, scalar) -> "Mat3":
        return Mat3([e * scalar for e in r] for r in self.rows)

    __rmul__ = __mul__

    def __add__(self, other: "Mat3") -> "Mat3":
        return Mat3([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __sub__(self, other: "Mat3") -> "Mat3":
        return Mat3([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __neg__(self) -> "Mat3":
        return Mat3([-a for a in r] for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Mat3) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def embed(self, ctx: FieldCtx) -> "Mat3":
        if ctx == self.ctx:
            return self
        return Mat3([embed(a, ctx) for a in r] for r in self.rows)

    def is_upper_triangular(self) -> bool:
        r = self.rows
        return r[1][0].is_zero() and r[2][0].is_zero() and r[2][1].is_zero()

    def is_identity(self) -> bool:
        return all(
            (e - 1 if i == j else e).is_zero()
            for i, row in enumerate(self.rows)
            for j, e in enumerate(row)
        )

    def sort_key(self) -> tuple:
        return tuple(e.coords for r in self.rows for e in r)

    def to_lists(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.rows]

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"Mat3[{self.ctx.descriptor}]({format_matrix(self)})"


def diag(ctx: FieldCtx, a, b, c) -> Mat3:
    z = ctx.zero_el
    return Mat3([[ctx(a), z, z], [z, ctx(b), z], [z, z, ctx(c)]])


def det3(m: Mat3) -> FieldElement:
    (a, b, c), (d, e, f), (g, h, i) = m.rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def inverse3(m: Mat3) -> Mat3:
    (a, b, c), (d, e, f), (g, h, i) = m.rows
    det = det3(m)
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    s = det.inverse()
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    return Mat3([x * s for x in r] for r in adj)


def gram(m: Mat3) -> Mat3:
    """Gram matrix ((v_i, v_j)) of the columns, i.e. m^T m."""
    return m.T @ m


@dataclass(frozen=True)
class GroupFlag:
    in_SL3: bool
    in_SO3: bool
    in_Bstd: bool


def group_membership(m: Mat3) -> GroupFlag:
    det_one = (det3(m) - 1).is_zero()
    orthogonal = gram(m).is_identity()
    return GroupFlag(
        in_SL3=det_one,
        in_SO3=det_one and orthogonal,
        in_Bstd=det_one and m.is_upper_triangular(),
    )


def in_SO3(m: Mat3) -> bool:
    return group_membership(m).in_SO3


def w0(ctx: FieldCtx) -> Mat3:
    return diag(ctx, 1, -1, -1)


def K3(ctx: FieldCtx) -> Mat3:
    """Antidiagonal permutation matrix; B_std^T = (-K3) B_std (-K3)^{-1}."""
    return Mat3.of(ctx, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def _split_top(s: str, sep: str) -> list[str]:
    """Split on sep outside square brackets."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_vector(ctx: FieldCtx, literal: str) -> Vec3:
    parts = _split_top(literal.strip(), ",")
    if len(parts) != 3:
        raise FieldError(f"vector literal needs 3 entries: {literal!r}")
    return Vec3(parse_element(ctx, p) for p in parts)


def parse_matrix(ctx: FieldCtx, literal: str) -> Mat3:
    """Rows separated by ';', entries by ',' (e.g. "1,0,0;0,1,0;0,0,1")."""
    rows = _split_top(literal.strip(), ";")
    if len(rows) != 3:
        raise FieldError(f"matrix literal needs 3 rows: {literal!r}")
    return Mat3(parse_vector(ctx, r).entries for r in rows)


def format_vector(v: Vec3) -> str:
    return ",".join(map(str, v.entries))


def format_matrix(m: Mat3) -> str:
    return ";".join(",".join(map(str, r)) for r in m.rows)
