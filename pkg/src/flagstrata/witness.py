"""Explicit SO(3) elements carrying a stratum's reference flag to a given flag.

Each construction right-multiplies the representative by upper triangular
matrices (which does not move the flag) until its columns are in a normal
form, then reads an orthogonal matrix off the columns.  Square roots that
are missing from the field are adjoined on the way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactfield import (
    FieldCtx,
    FieldElement,
    FieldError,
    embed,
    sqrt_or_extend,
    with_imag_unit,
)
from .flagvariety import Flag, complete, flag_from_matrix
from .mat3 import Mat3, Vec3, bilinear, det3, format_matrix, gram, inverse3
from .strata import Stratum, classify_flag


class WrongStratum(ValueError):
    pass


class NotOnSphere(ValueError):
    pass


# ---------------------------------------------------------------- references


def g1_prime(ctx: FieldCtx, i: FieldElement) -> Mat3:
    """g1 with its third column halved, so det = 1."""
    return Mat3.of(ctx, [[1, -i, 0], [-i, 1, 0], [0, 0, ctx(1) / 2]])


def g2_prime(ctx: FieldCtx, i: FieldElement) -> Mat3:
    """g2 with its third column halved, so det = 1 (v1, v2 unchanged)."""
    h = ctx(1) / 2
    return Mat3.of(ctx, [[1, 0, 0], [0, 1, -i * h], [0, -i, h]])


def gclo_prime(ctx: FieldCtx, i: FieldElement) -> Mat3:
    """g_clo with its third column scaled by -1/2, so det = 1."""
    h = -ctx(1) / 2
    return Mat3.of(ctx, [[1, 0, -i * h], [-i, 0, h], [0, 1, 0]])


@dataclass(frozen=True)
class ReferenceFlags:
    ctx: FieldCtx
    B_std_flag: Flag
    B1_flag: Flag
    B2_flag: Flag
    Bclo_flag: Flag

    def for_stratum(self, s: Stratum) -> Flag:
        return {
            Stratum.O: self.B_std_flag,
            Stratum.LC1: self.B1_flag,
            Stratum.LC2: self.B2_flag,
            Stratum.C: self.Bclo_flag,
        }[s]


def reference_flags(ctx: FieldCtx) -> ReferenceFlags:
    """Reference flags over ctx; raises FieldError when sqrt(-1) is not in ctx."""
    i, ictx = with_imag_unit(ctx)
    if ictx != ctx:
        raise FieldError(f"sqrt(-1) is not in {ctx.descriptor}; pass {ictx.descriptor}")
    return ReferenceFlags(
        ctx,
        flag_from_matrix(Mat3.identity(ctx)),
        flag_from_matrix(g1_prime(ctx, i)),
        flag_from_matrix(g2_prime(ctx, i)),
        flag_from_matrix(gclo_prime(ctx, i)),
    )


# ---------------------------------------------------------------- results


@dataclass
class WitnessResult:
    k: Mat3
    new_ctx: FieldCtx
    extension_degree: int
    reference: Flag
    flag: Flag  # the input flag, embedded in new_ctx
    stratum: Stratum
    final_factor: Mat3 | None = None  # LC1 only: b with (k^{-1} g) b = g1'
    reproduces_reference: bool | None = None
    bridge: Mat3 = field(init=False)  # (k . ref)^{-1} g, upper triangular
    verified: bool = field(init=False)

    def __post_init__(self):
        self.bridge = inverse3(self.k @ self.reference.rep) @ self.flag.rep
        self.verified = (
            gram(self.k).is_identity()
            and (det3(self.k) - 1).is_zero()
            and self.bridge.is_upper_triangular()
            and (det3(self.bridge) - 1).is_zero()
        )

    def to_json(self) -> dict:
        return {
            "stratum": str(self.stratum),
            "k": self.k.to_lists(),
            "field": self.new_ctx.descriptor,
            "degree": self.extension_degree,
            "verified": self.verified,
        }


class _Tower:
    """The working field and the base field it was extended from."""

    def __init__(self, ctx: FieldCtx):
        self.base = ctx
        self.ctx = ctx

    def lift(self, x):
        if isinstance(x, FieldElement):
            return embed(x, self.ctx)
        return x.embed(self.ctx)

    def sqrt(self, a: FieldElement) -> FieldElement:
        root, new, _ = sqrt_or_extend(self.ctx, self.lift(a))
        self.ctx = new
        return root

    def imag(self) -> FieldElement:
        i, self.ctx = with_imag_unit(self.ctx)
        return i

    @property
    def degree(self) -> int:
        return self.ctx.degree // self.base.degree


def _result(f: Flag, k: Mat3, tower: _Tower, s: Stratum) -> WitnessResult:
    ctx = tower.ctx
    refs = reference_flags_or_std(ctx, s)
    return WitnessResult(k.embed(ctx), ctx, tower.degree, refs, f.embed(ctx), s)


def reference_flags_or_std(ctx: FieldCtx, s: Stratum) -> Flag:
    if s is Stratum.O:
        return flag_from_matrix(Mat3.identity(ctx))
    return reference_flags(ctx).for_stratum(s)


def _require(f: Flag, s: Stratum):
    actual = classify_flag(f)
    if actual is not s:
        raise WrongStratum(f"flag is in stratum {actual}, not {s}")


def _upper(ctx, a, b, c, d, e, g) -> Mat3:
    z = ctx.zero_el
    return Mat3([[ctx(a), ctx(b), ctx(c)], [z, ctx(d), ctx(e)], [z, z, ctx(g)]])


# ---------------------------------------------------------------- strata


def witness_open(f: Flag) -> WitnessResult:
    """Gram-Schmidt: k with k . B_std = f."""
    _require(f, Stratum.O)
    t = _Tower(f.ctx)
    g = f.rep
    v1, v2 = g.col(0), g.col(1)
    c1, c12 = bilinear(v1, v1), bilinear(v1, v2)
    r1 = t.sqrt(c1)
    g, c1, c12 = t.lift(g), t.lift(c1), t.lift(c12)
    ctx = t.ctx
    g = g @ _upper(ctx, r1.inverse(), -c12 / c1, 0, 1, 0, r1)
    # now (v1, v1) = 1 and (v1, v2) = 0
    r2 = t.sqrt(bilinear(g.col(1), g.col(1)))
    g = t.lift(g)
    ctx = t.ctx
    g = g @ _upper(ctx, 1, 0, 0, r2.inverse(), 0, r2)
    v1, v2, v3 = g.columns
    w3 = v3 - v1 * bilinear(v1, v3) - v2 * bilinear(v2, v3)
    k = Mat3.from_columns(v1, v2, w3)
    return _result(f, k, t, Stratum.O)


def _lc1_normal_form(g: Mat3) -> Mat3:
    """Right Borel factor making c3 = 1 and (v2, v2) = 1 (needs c1 = 0, c3 != 0)."""
    ctx = g.ctx
    v1, v2 = g.col(0), g.col(1)
    c3, n2 = bilinear(v1, v2), bilinear(v2, v2)
    return g @ _upper(ctx, c3.inverse(), (1 - n2) / (2 * c3), 0, 1, 0, c3)


def _lc1_rotation(g: Mat3, i: FieldElement) -> Mat3:
    v1, v2, v3 = g.columns
    c1 = v2
    c2 = (v2 - v1) * -i
    c3 = (v3 + v1 * bilinear(v1 - v2, v3) - v2 * bilinear(v1, v3)) * i
    return Mat3.from_columns(c1, c2, c3)


def lc1_final_factor(h: Mat3, i: FieldElement) -> Mat3:
    """b with h b = g1' when h has v1 = e1 - i e2, v2 = e1 and det h = 1."""
    ctx = h.ctx
    h13, h23 = h[0, 2], h[1, 2]
    return _upper(ctx, 1, i, h23 / 2, -2 * i, -i * h13 / 2 - h23 / 2, i / 2)


def witness_lc1(f: Flag) -> WitnessResult:
    _require(f, Stratum.LC1)
    t = _Tower(f.ctx)
    i = t.imag()
    g = _lc1_normal_form(t.lift(f.rep))
    k = _lc1_rotation(g, i)
    res = _result(f, k, t, Stratum.LC1)
    h = inverse3(k) @ g
    res.final_factor = lc1_final_factor(h, i)
    res.reproduces_reference = (h @ res.final_factor) == g1_prime(t.ctx, i)
    return res


def witness_lc2(f: Flag) -> WitnessResult:
    _require(f, Stratum.LC2)
    t = _Tower(f.ctx)
    g = f.rep
    v1, v2 = g.col(0), g.col(1)
    c1, c12 = bilinear(v1, v1), bilinear(v1, v2)
    r1 = t.sqrt(c1)
    i = t.imag()
    g, c1, c12, r1 = t.lift(g), t.lift(c1), t.lift(c12), t.lift(r1)
    ctx = t.ctx
    g = g @ _upper(ctx, r1.inverse(), -c12 / c1, 0, 1, 0, r1)
    # c1 = 1, (v1, v2) = (v2, v2) = 0, hence (v2, v3)^2 = -1
    v2, v3 = g.col(1), g.col(2)
    b = bilinear(v2, v3)
    s = (bilinear(v3, v3) - 1) * b / 2
    g = g @ _upper(ctx, 1, 0, 0, 1, s, 1)
    v1, v2, v3 = g.columns
    a = bilinear(v1, v3)
    w = v3 - v1 * a - v2 * (a * a * b / 2)
    k3 = w * (i * b)
    k = Mat3.from_columns(v1 * (i * b), v2 + k3 * i, k3)
    return _result(f, k, t, Stratum.LC2)


def witness_closed(f: Flag) -> WitnessResult:
    """Move span(1, -i, 0) onto the isotropic line; V2 = v1^perp follows."""
    _require(f, Stratum.C)
    ctx = f.ctx
    v1 = f.v1
    u = next(
        Vec3.basis(ctx, j) for j in range(3) if not bilinear(v1, Vec3.basis(ctx, j)).is_zero()
    )
    aux = flag_from_matrix(complete(v1, u))
    lc1 = witness_lc1(aux)
    t = _Tower(lc1.new_ctx)
    t.base = ctx
    return _result(f, lc1.k, t, Stratum.C)


WITNESSES = {
    Stratum.O: witness_open,
    Stratum.LC1: witness_lc1,
    Stratum.LC2: witness_lc2,
    Stratum.C: witness_closed,
}


def witness(f: Flag) -> WitnessResult:
    return WITNESSES[classify_flag(f)](f)


# ---------------------------------------------------------------- sphere

CHARTS = ("xy", "yz", "zx")


def _chart_matrix(chart: str, x, y, z, s) -> Mat3:
    if chart == "xy":
        rows = [[z * x / s, -y / s, x], [z * y / s, x / s, y], [-s, 0 * s, z]]
    elif chart == "yz":
        rows = [[-s, 0 * s, x], [x * y / s, -z / s, y], [x * z / s, y / s, z]]
    else:
        rows = [[x * y / s, z / s, x], [-s, 0 * s, y], [y * z / s, -x / s, z]]
    return Mat3(rows)


def _denominator(chart: str, x, y, z):
    return {"xy": x * x + y * y, "yz": y * y + z * z, "zx": z * z + x * x}[chart]


def choose_chart(p: Vec3) -> str:
    """First chart whose denominator is a nonzero square, else the first nonzero one."""
    x, y, z = p.entries
    ctx = p.ctx
    nonzero = [c for c in CHARTS if not _denominator(c, x, y, z).is_zero()]
    for c in nonzero:
        if ctx.sqrt(_denominator(c, x, y, z).v) is not None:
            return c
    return nonzero[0]


def sphere_section(p: Vec3, chart: str | None = None) -> Mat3:
    """g in SO(3) with g e3 = p for p on x^2 + y^2 + z^2 = 1, over at most one extension."""
    x, y, z = p.entries
    ctx = p.ctx
    if not (x * x + y * y + z * z - 1).is_zero():
        raise NotOnSphere(f"{p} is not on the unit sphere")
    if chart is None:
        if x.is_zero() and y.is_zero() and (z - 1).is_zero():
            return Mat3.identity(ctx)
        chart = choose_chart(p)
    den = _denominator(chart, x, y, z)
    if den.is_zero():
        raise ValueError(f"chart {chart} is singular at {p}")
    t = _Tower(ctx)
    s = t.sqrt(den)
    x, y, z = (t.lift(c) for c in (x, y, z))
    return _chart_matrix(chart, x, y, z, s)


__all__ = [
    "ReferenceFlags",
    "WitnessResult",
    "WrongStratum",
    "NotOnSphere",
    "reference_flags",
    "witness",
    "witness_open",
    "witness_lc1",
    "witness_lc2",
    "witness_closed",
    "sphere_section",
    "choose_chart",
    "format_matrix",
]
