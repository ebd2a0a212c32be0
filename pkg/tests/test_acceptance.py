"""Acceptance criteria AC1-AC11.

Each test carries ``@pytest.mark.acceptance(n)``; conftest prints one PASS/FAIL
line per criterion at the end of the run.  Oracles here are deliberately
independent of the library code paths they check (integer loops, direct
enumeration, recomputed postconditions).
"""

import random
import time
from itertools import product

import pytest

from flagstrata.census import kgb_invariance, orbits, p2_census, stabilizer, verify_partition
from flagstrata.exactfield import elements, finite_field, quadratic_extension
from flagstrata.flagvariety import Flag, enumerate_flags, enumerate_lines, enumerate_SO3
from flagstrata.mat3 import Mat3, Vec3, bilinear, det3, diag, gram, inverse3
from flagstrata.strata import (
    STRATUM_PREDICATES,
    LineStratum,
    Stratum,
    c_invariants,
    classify_flag,
    classify_line,
    flag_property_oracle,
    theta_stable,
)
from flagstrata.witness import reference_flags, sphere_section, witness

QS = [3, 5, 7, 9, 11, 13]


def acceptance(n):
    return pytest.mark.acceptance(n)


def _strata_counts(q):
    counts = {s: 0 for s in Stratum}
    for f in enumerate_flags(q):
        counts[classify_flag(f)] += 1
    return counts


# ---------------------------------------------------------------- AC1


@acceptance(1)
def test_ac1_partition():
    start = time.perf_counter()
    for q in QS:
        flags = enumerate_flags(q)
        for f in flags:
            c = c_invariants(f)
            assert sum(pred(c) for pred in STRATUM_PREDICATES.values()) == 1
        assert sum(_strata_counts(q).values()) == len(flags) == q**3 + 2 * q**2 + 2 * q + 1
    assert len(enumerate_flags(3)) == 52 and len(enumerate_flags(5)) == 186
    assert time.perf_counter() - start < 10


# ---------------------------------------------------------------- AC2


@acceptance(2)
def test_ac2_classifier_matches_property_oracle():
    start = time.perf_counter()
    for q in (3, 5, 7):
        for f in enumerate_flags(q):
            assert classify_flag(f) is flag_property_oracle(f), f
    assert time.perf_counter() - start < 30


# ---------------------------------------------------------------- AC3


def _pattern(g):
    v1, v2 = g.col(0), g.col(1)
    a, b, c = bilinear(v1, v1), bilinear(v1, v2), bilinear(v2, v2)
    z1 = a.is_zero()
    return z1, (a * c - b * b).is_zero(), (b.is_zero() if z1 else None)


def _borel(ctx):
    els = elements(ctx)
    units = [x for x in els if not x.is_zero()]
    z = ctx.zero_el
    return [
        Mat3([[a, x, y], [z, b, w], [z, z, (a * b).inverse()]])
        for a in units
        for b in units
        for x, y, w in product(els, repeat=3)
    ]


@acceptance(3)
def test_ac3_kgb_exhaustive_q3():
    ctx = finite_field(3)
    group, borel = enumerate_SO3(3), _borel(ctx)
    assert len(group) == 24 and len(borel) == 108
    rng = random.Random(2024)
    flags = enumerate_flags(3)
    failures = 0
    for _ in range(50):
        g = rng.choice(flags).rep @ rng.choice(borel)
        before = _pattern(g)
        for k in group:
            kg = k @ g
            for b in borel:
                failures += _pattern(kg @ b) != before
    assert failures == 0


@acceptance(3)
def test_ac3_kgb_random_triples():
    total, failures = 0, []
    for q in (5, 7, 9, 11, 13):
        res = kgb_invariance(q, 2000, seed=q)
        total += res.samples
        failures += res.failures
    assert total >= 10_000
    assert failures == []


# ---------------------------------------------------------------- AC4


@acceptance(4)
def test_ac4_witness_soundness():
    start = time.perf_counter()
    for q in (3, 5):
        for f in enumerate_flags(q):
            res = witness(f)
            ctx, k = res.new_ctx, res.k
            assert res.extension_degree in (1, 2, 4) and ctx.order == q**res.extension_degree
            assert gram(k).is_identity() and det3(k) == 1
            s = classify_flag(f)
            ref_rep = Mat3.identity(ctx) if s is Stratum.O else reference_flags(ctx).for_stratum(s).rep
            bridge = inverse3(k @ ref_rep) @ f.embed(ctx).rep
            assert bridge.is_upper_triangular() and det3(bridge) == 1
    assert time.perf_counter() - start < 60


# ---------------------------------------------------------------- AC5


@acceptance(5)
def test_ac5_borel_stabilizer():
    for q in (3, 5, 7):
        ctx = finite_field(q)
        signs = [ctx(1), ctx(-1)]
        expected = {diag(ctx, a, b, a * b) for a in signs for b in signs}
        std = Flag(Mat3.identity(ctx))
        assert set(stabilizer(std, q)) == expected and len(expected) == 4
        # independent: SO(3) n B_std by direct membership
        assert {k for k in enumerate_SO3(q) if k.is_upper_triangular()} == expected


@acceptance(5)
def test_ac5_B1_stabilizer():
    for q in (5, 13):
        ctx = finite_field(q)
        z, one = ctx.zero_el, ctx.one_el
        so2 = {
            Mat3([[a, -b, z], [b, a, z], [z, z, one]])
            for a, b in product(elements(ctx), repeat=2)
            if a * a + b * b == 1
        }
        assert set(stabilizer(reference_flags(ctx).B1_flag, q)) == so2


# ---------------------------------------------------------------- AC6


def _count_sum_of_squares(q, target):
    ctx = finite_field(q)
    sq = {}
    for x in elements(ctx):
        sq[x * x] = sq.get(x * x, 0) + 1
    return sum(
        na * nb * nc
        for (a, na), (b, nb), (c, nc) in product(sq.items(), repeat=3)
        if a + b + c == target
    )


@acceptance(6)
def test_ac6_cross_model_counts():
    for q in QS:
        counts = _strata_counts(q)
        sphere = _count_sum_of_squares(q, -1)
        conic = (_count_sum_of_squares(q, 0) - 1) // (q - 1)
        assert counts[Stratum.C] == conic
        assert counts[Stratum.LC1] == counts[Stratum.LC2] == sphere
    c3 = _strata_counts(3)
    assert c3[Stratum.C] == 4 and c3[Stratum.LC1] == c3[Stratum.LC2] == 12


# ---------------------------------------------------------------- AC7


@acceptance(7)
def test_ac7_projective_plane_split():
    for q in QS:
        lines = enumerate_lines(q)
        cprime = sum(classify_line(p) is LineStratum.Cprime for p in lines)
        assert len(lines) == q * q + q + 1
        assert p2_census(q) == (len(lines) - cprime, cprime)
        assert cprime == _strata_counts(q)[Stratum.C]


# ---------------------------------------------------------------- AC8


@acceptance(8)
def test_ac8_base_change():
    for q in (3, 5):
        big = quadratic_extension(finite_field(q))
        assert big.order == q * q
        for f in enumerate_flags(q):
            assert classify_flag(f.embed(big)) is classify_flag(f)
        assert verify_partition(q).ok


# ---------------------------------------------------------------- AC9


@acceptance(9)
def test_ac9_theta_stability():
    for q in (3, 5):
        for f in enumerate_flags(q):
            c = c_invariants(f)
            zero_pair = c.c1.is_zero() and c.c3.is_zero()
            assert theta_stable(f) == (classify_flag(f) is Stratum.C) == zero_pair


# ---------------------------------------------------------------- AC10


@acceptance(10)
def test_ac10_orbit_refinement():
    rng = random.Random(10)
    for q in (3, 5, 7):
        group = enumerate_SO3(q)
        flags = enumerate_flags(q)
        for orb in orbits(list(flags), group):
            assert len({classify_flag(f) for f in orb}) == 1
        for f in rng.choices(flags, k=100):
            orbit = {f.act(k) for k in group}
            stab = [k for k in group if f.act(k) == f]
            assert len(orbit) * len(stab) == len(group)
    closed3 = [f for f in enumerate_flags(3) if classify_flag(f) is Stratum.C]
    c_orbits = orbits(closed3, enumerate_SO3(3))
    assert [len(o) for o in c_orbits] == [4]


# ---------------------------------------------------------------- AC11


@acceptance(11)
def test_ac11_sphere_sections():
    for q in (3, 5, 7):
        ctx = finite_field(q)
        big = quadratic_extension(ctx)
        n = 0
        for x, y, z in product(elements(ctx), repeat=3):
            if not (x * x + y * y + z * z - 1).is_zero():
                continue
            n += 1
            p = Vec3((x, y, z))
            g = sphere_section(p)
            assert g.ctx in (ctx, big)
            assert gram(g).is_identity() and det3(g) == 1
            assert g @ Vec3.basis(g.ctx, 2) == p.embed(g.ctx)
        assert n > 0
