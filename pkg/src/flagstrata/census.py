"""Exhaustive finite-field census of the strata, orbits, and the P^2 decomposition."""

from __future__ import annotations

import io
import json
import random
from collections import Counter
from dataclasses import dataclass, field

from .config import CapExceeded, check_q, resolve_cap
from .exactfield import FiniteField, elements, finite_field, quadratic_extension
from .flagvariety import Flag, enumerate_lines, flags_over, poincare_count, so3_over
from .mat3 import Mat3
from .strata import (
    STRATUM_PREDICATES,
    LineStratum,
    Stratum,
    c_invariants,
    classify_flag,
    classify_line,
)

SCHEMA_VERSION = 1
STRATA = (Stratum.O, Stratum.LC1, Stratum.LC2, Stratum.C)


def _square_histogram(ctx: FiniteField) -> Counter:
    return Counter(ctx.mul(x, x) for x in ctx.elements())


def sum_of_three_squares_count(ctx: FiniteField, target) -> int:
    """#{(x, y, z) in F^3 : x^2 + y^2 + z^2 = target} for raw target."""
    h = _square_histogram(ctx)
    pairs = Counter()
    for a, na in h.items():
        for b, nb in h.items():
            pairs[ctx.add(a, b)] += na * nb
    return sum(n * h.get(ctx.sub(target, s), 0) for s, n in pairs.items())


def sphere_minus1_count(q: int) -> int:
    ctx = finite_field(q)
    return sum_of_three_squares_count(ctx, ctx.neg(ctx.one))


def conic_count(q: int) -> int:
    """Points of x^2 + y^2 + z^2 = 0 in P^2(F_q)."""
    ctx = finite_field(q)
    affine = sum_of_three_squares_count(ctx, ctx.zero)
    return (affine - 1) // (q - 1)


@dataclass
class CensusReport:
    q: int
    total_flags: int
    stratum_sizes: dict
    sphere_minus1_count: int
    conic_count: int
    p2_sizes: dict
    so3_order: int | None = None
    orbit_sizes: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def check(self) -> list[str]:
        """Names of violated report invariants (empty when all hold)."""
        q, s = self.q, self.stratum_sizes
        out = []
        if sum(s.values()) != self.total_flags or self.total_flags != poincare_count(q):
            out.append("partition: strata do not sum to q^3+2q^2+2q+1")
        if s[Stratum.C] != self.conic_count:
            out.append("closed stratum size differs from conic point count")
        if not (s[Stratum.LC1] == s[Stratum.LC2] == self.sphere_minus1_count):
            out.append("middle strata sizes differ from the twisted sphere count")
        p2 = self.p2_sizes
        if p2[LineStratum.Oprime] + p2[LineStratum.Cprime] != q * q + q + 1:
            out.append("P^2 pieces do not sum to q^2+q+1")
        if p2[LineStratum.Cprime] != self.conic_count:
            out.append("C' count differs from conic point count")
        if self.orbit_sizes:
            for st, sizes in self.orbit_sizes.items():
                if sum(sizes) != s[st]:
                    out.append(f"orbits of {st} do not cover the stratum")
                if any(self.so3_order % n for n in sizes):
                    out.append(f"an orbit size in {st} does not divide |SO(3)|")
        return out

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "q": self.q,
            "total": self.total_flags,
        }
        d.update({str(st): self.stratum_sizes[st] for st in STRATA})
        d["sphere_minus1"] = self.sphere_minus1_count
        d["conic"] = self.conic_count
        d["p2"] = {str(k): self.p2_sizes[k] for k in (LineStratum.Oprime, LineStratum.Cprime)}
        d["so3_order"] = self.so3_order
        d["orbits"] = {str(st): list(self.orbit_sizes[st]) for st in STRATA} if self.orbit_sizes else None
        d["failures"] = list(self.failures)
        return d


TSV_COLUMNS = (
    "q", "total", "O", "LC1", "LC2", "C", "sphere_minus1", "conic", "so3_order",
    "orbits_O", "orbits_LC1", "orbits_LC2", "orbits_C", "p2_O'", "p2_C'",
)


def _tsv_row(r: CensusReport) -> list[str]:
    def orbits(st):
        if not r.orbit_sizes:
            return "-"
        return ",".join(map(str, r.orbit_sizes[st]))

    return [
        str(r.q),
        str(r.total_flags),
        *(str(r.stratum_sizes[st]) for st in STRATA),
        str(r.sphere_minus1_count),
        str(r.conic_count),
        "-" if r.so3_order is None else str(r.so3_order),
        *(orbits(st) for st in STRATA),
        str(r.p2_sizes[LineStratum.Oprime]),
        str(r.p2_sizes[LineStratum.Cprime]),
    ]


def format_report(reports, fmt: str = "json") -> str:
    """Render one report or a list of them as JSON or TSV."""
    single = isinstance(reports, CensusReport)
    rs = [reports] if single else list(reports)
    if fmt == "json":
        payload = rs[0].to_json() if single else [r.to_json() for r in rs]
        return json.dumps(payload, indent=2)
    if fmt == "tsv":
        buf = io.StringIO()
        buf.write("\t".join(TSV_COLUMNS) + "\n")
        for r in rs:
            buf.write("\t".join(_tsv_row(r)) + "\n")
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def p2_census(q: int, cap: int | None = None) -> tuple[int, int]:
    """(number of O' lines, number of C' lines) in P^2(F_q)."""
    counts = Counter(classify_line(p) for p in enumerate_lines(q, cap))
    return counts[LineStratum.Oprime], counts[LineStratum.Cprime]


def stratum_census(q: int, cap: int | None = None) -> CensusReport:
    check_q(q, resolve_cap(cap))
    ctx = finite_field(q)
    flags = flags_over(ctx)
    sizes = Counter(classify_flag(f) for f in flags)
    o, c = p2_census(q, cap)
    report = CensusReport(
        q=q,
        total_flags=len(flags),
        stratum_sizes={st: sizes[st] for st in STRATA},
        sphere_minus1_count=sphere_minus1_count(q),
        conic_count=conic_count(q),
        p2_sizes={LineStratum.Oprime: o, LineStratum.Cprime: c},
    )
    report.failures = report.check()
    return report


def orbits(flags: list[Flag], group: list[Mat3]) -> list[list[Flag]]:
    """Partition flags into orbits by applying every group element."""
    seen: set = set()
    out = []
    for f in flags:
        if f in seen:
            continue
        orbit = {f.act(k).canonicalized() for k in group}
        seen |= orbit
        out.append(sorted(orbit, key=Flag.sort_key))
    return out


def _check_orbit_cap(q: int, orbit_cap: int | None) -> None:
    limit = resolve_cap(orbit_cap, "orbit")
    if q > limit:
        raise CapExceeded(f"q={q} exceeds the orbit cap {limit}")


def orbit_census(q: int, cap: int | None = None, orbit_cap: int | None = None) -> CensusReport:
    _check_orbit_cap(q, orbit_cap)
    report = stratum_census(q, cap)
    ctx = finite_field(q)
    group = so3_over(ctx)
    by_stratum: dict = {st: [] for st in STRATA}
    for f in flags_over(ctx):
        by_stratum[classify_flag(f)].append(f)
    mixed = []
    sizes = {}
    for st in STRATA:
        orbs = orbits(by_stratum[st], group)
        if any(classify_flag(f) is not st for orb in orbs for f in orb):
            mixed.append(f"an orbit starting in {st} leaves the stratum")
        sizes[st] = sorted(len(o) for o in orbs)
    report.so3_order = len(group)
    report.orbit_sizes = sizes
    report.failures = report.check() + mixed
    return report


def stabilizer(f: Flag, q: int, orbit_cap: int | None = None) -> list[Mat3]:
    """All k in SO(3, F_q) with k . f = f (f must be defined over F_q)."""
    check_q(q, resolve_cap(orbit_cap, "orbit"))
    ctx = finite_field(q)
    if f.ctx != ctx:
        raise ValueError(f"flag is over {f.ctx.descriptor}, not F_{q}")
    return [k for k in so3_over(ctx) if f.act(k) == f]


@dataclass
class PartitionResult:
    ok: bool
    diagnostics: list

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"partition": self.ok, "diagnostics": list(self.diagnostics)}


def _raw_partition_violations(ctx: FiniteField, limit: int = 10) -> tuple[int, list[str]]:
    """Flag count over ctx and flags not in exactly one stratum, working on raw codes."""
    add, mul, zero = ctx.add, ctx.mul, ctx.zero
    els = list(ctx.elements())
    one = ctx.one

    def points(free):
        for k, pivot in enumerate(free):
            rest = free[k + 1 :]
            for tail in _raw_product(els, len(rest)):
                e = [zero, zero, zero]
                e[pivot] = one
                for idx, val in zip(rest, tail):
                    e[idx] = val
                yield e

    def dot(u, v):
        return add(add(mul(u[0], v[0]), mul(u[1], v[1])), mul(u[2], v[2]))

    count, bad = 0, []
    for u1 in points([0, 1, 2]):
        r1 = next(i for i in range(3) if u1[i] != zero)
        c1 = dot(u1, u1)
        for u2 in points([i for i in range(3) if i != r1]):
            count += 1
            c3 = dot(u1, u2)
            c2 = ctx.sub(mul(c1, dot(u2, u2)), mul(c3, c3))
            hits = (
                (c1 != zero and c2 != zero)
                + (c1 != zero and c2 == zero)
                + (c1 == zero and c3 != zero)
                + (c1 == zero and c3 == zero)
            )
            if hits != 1 and len(bad) < limit:
                bad.append(f"{ctx.descriptor} flag {u1}/{u2} lies in {hits} strata")
    return count, bad


def _raw_product(els, n):
    if n == 0:
        yield ()
        return
    for x in els:
        for rest in _raw_product(els, n - 1):
            yield (x,) + rest


def verify_partition(q: int, cap: int | None = None) -> PartitionResult:
    """Exactly one stratum per flag over F_q and F_{q^2}, and strata stable under F_q -> F_{q^2}."""
    check_q(q, resolve_cap(cap))
    diag: list[str] = []
    ctx = finite_field(q)
    flags = flags_over(ctx)
    if len(flags) != poincare_count(q) or len(set(flags)) != len(flags):
        diag.append(f"F_{q}: {len(flags)} flags enumerated, expected {poincare_count(q)} distinct")
    big = quadratic_extension(ctx)
    for f in flags:
        c = c_invariants(f)
        hits = [st for st, pred in STRATUM_PREDICATES.items() if pred(c)]
        if len(hits) != 1:
            diag.append(f"F_{q}: {f} lies in strata {hits}")
            continue
        lifted = f.embed(big)
        if classify_flag(lifted) is not hits[0]:
            diag.append(f"base change moves {f} from {hits[0]} to {classify_flag(lifted)}")
    n_big, bad = _raw_partition_violations(big)
    diag.extend(bad)
    if n_big != poincare_count(big.order):
        diag.append(f"F_{big.order}: {n_big} flags enumerated, expected {poincare_count(big.order)}")
    return PartitionResult(not diag, diag)


def _zero_pattern(c) -> tuple[bool, ...]:
    z1 = c.c1.is_zero()
    return (z1, c.c2.is_zero(), c.c3.is_zero() if z1 else None)


@dataclass
class InvarianceResult:
    q: int
    samples: int
    seed: int | None
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"q": self.q, "samples": self.samples, "seed": self.seed, "failures": list(self.failures)}


def random_borel(ctx: FiniteField, rng: random.Random) -> Mat3:
    els = elements(ctx)
    a, b = (rng.choice([x for x in els if not x.is_zero()]) for _ in range(2))
    x, y, z = (rng.choice(els) for _ in range(3))
    zero = ctx.zero_el
    return Mat3([[a, x, y], [zero, b, z], [zero, zero, (a * b).inverse()]])


def kgb_invariance(q: int, samples: int, seed: int | None = 0, cap: int | None = None) -> InvarianceResult:
    """Random triples (k, g, b): the zero pattern of c1, c2 (c3 when c1 = 0) of k g b matches g's."""
    check_q(q, resolve_cap(cap))
    rng = random.Random(seed)
    ctx = finite_field(q)
    flags, group = flags_over(ctx), so3_over(ctx)
    bad = []
    for _ in range(samples):
        k, b = rng.choice(group), random_borel(ctx, rng)
        g = rng.choice(flags).rep @ random_borel(ctx, rng)
        before = _zero_pattern(c_invariants(Flag(g)))
        after = _zero_pattern(c_invariants(Flag(k @ g @ b)))
        if before != after:
            bad.append(f"k={k.to_lists()} g={g.to_lists()} b={b.to_lists()}")
    return InvarianceResult(q, samples, seed, bad)


__all__ = [
    "CensusReport",
    "PartitionResult",
    "stratum_census",
    "orbit_census",
    "p2_census",
    "verify_partition",
    "stabilizer",
    "format_report",
    "sphere_minus1_count",
    "conic_count",
    "orbits",
    "kgb_invariance",
    "InvarianceResult",
]
