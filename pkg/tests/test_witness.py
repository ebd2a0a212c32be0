from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from _strategies import element_of
from flagstrata.census import stabilizer
from flagstrata.exactfield import (
    Q,
    ExtensionBudgetExceeded,
    FieldError,
    elements,
    finite_field,
    imag_unit,
    make_field,
)
from flagstrata.flagvariety import Flag, ProjPoint, complete, enumerate_flags, enumerate_SO3, flag_from_line_plane, flag_from_matrix
from flagstrata.mat3 import Mat3, Vec3, det3, diag, gram, in_SO3, inverse3
from flagstrata.strata import Stratum, c_invariants, classify_flag
from flagstrata.witness import (
    NotOnSphere,
    WrongStratum,
    choose_chart,
    g2_prime,
    reference_flags,
    sphere_section,
    witness,
    witness_closed,
    witness_lc1,
    witness_lc2,
    witness_open,
)

Qi = make_field("Qi")
F3, F5, F7, F9 = (finite_field(q) for q in (3, 5, 7, 9))


def first(q, stratum, pred=lambda f: True):
    return next(f for f in enumerate_flags(q) if classify_flag(f) is stratum and pred(f))


def closed(ctx, v):
    p = ProjPoint.of(ctx, v)
    return flag_from_line_plane(p, p)


def check(res, f):
    """Postconditions, recomputed here rather than trusted from res.verified."""
    k, ctx = res.k, res.new_ctx
    assert gram(k).is_identity() and det3(k) == 1
    bridge = inverse3(k @ res.reference.rep) @ f.embed(ctx).rep
    assert bridge.is_upper_triangular() and det3(bridge) == 1
    assert res.verified
    assert classify_flag(f.embed(ctx).act(inverse3(k))) is classify_flag(res.reference)


# ---------------------------------------------------------------- reference flags


def test_reference_flags_over_Qi():
    refs = reference_flags(Qi)
    for s in Stratum:
        assert classify_flag(refs.for_stratum(s)) is s
    assert refs.Bclo_flag.line == ProjPoint.of(Qi, [1, -imag_unit(Qi), 0])


def test_reference_flags_need_i():
    with pytest.raises(FieldError):
        reference_flags(F3)
    assert classify_flag(reference_flags(F5).B1_flag) is Stratum.LC1


# ---------------------------------------------------------------- open


def test_open_identity():
    f = flag_from_matrix(Mat3.identity(F7))
    res = witness_open(f)
    assert res.k.is_identity() and res.extension_degree == 1


def test_open_diagonal_over_F7():
    f = flag_from_matrix(diag(F7, 2, 4, (F7(2) * 4).inverse()))
    assert c_invariants(f).c1 == 4
    res = witness_open(f)
    assert res.extension_degree == 1 and res.new_ctx is F7
    assert in_SO3(res.k)
    check(res, f)


def test_open_nonsquare_c1_over_F3():
    f = first(3, Stratum.O, lambda f: c_invariants(f).c1 == 2)
    res = witness_open(f)
    assert res.extension_degree == 2 and res.new_ctx is F9
    check(res, f)


# ---------------------------------------------------------------- middle strata


def test_lc1_self_witness_over_Qi():
    B1 = reference_flags(Qi).B1_flag
    res = witness_lc1(B1)
    assert res.extension_degree == 1
    assert B1.act(res.k) == B1


def test_lc1_example_over_F5():
    g = Mat3.of(F5, [[1, 1, 0], [2, 0, 0], [0, 0, 2]])
    assert det3(g) == 1
    f = flag_from_matrix(g)
    res = witness_lc1(f)
    assert res.extension_degree == 1 and res.new_ctx is F5
    check(res, f)
    assert res.reproduces_reference


def test_lc1_over_F3_needs_i():
    f = first(3, Stratum.LC1)
    res = witness_lc1(f)
    assert res.extension_degree == 2 and res.new_ctx is F9
    check(res, f)


@pytest.mark.parametrize("q", [5, 9, 13])
def test_lc1_final_factor_reaches_reference(q):
    for f in enumerate_flags(q):
        if classify_flag(f) is Stratum.LC1:
            res = witness_lc1(f)
            b = res.final_factor
            assert b.is_upper_triangular() and det3(b) == 1
            assert res.reproduces_reference


def test_lc2_self_witness_over_Qi():
    B2 = reference_flags(Qi).B2_flag
    res = witness_lc2(B2)
    assert res.extension_degree == 1
    assert B2.act(res.k) == B2


def test_lc2_g2_over_F5():
    f = flag_from_matrix(g2_prime(F5, imag_unit(F5)))
    res = witness_lc2(f)
    assert res.extension_degree == 1
    check(res, f)


def test_lc2_nonsquare_c1_over_F3():
    f = first(3, Stratum.LC2, lambda f: c_invariants(f).c1 == 2)
    res = witness_lc2(f)
    assert res.extension_degree in (2, 4)
    check(res, f)


# ---------------------------------------------------------------- closed


def test_closed_self_witness():
    B = reference_flags(Qi).Bclo_flag
    res = witness_closed(B)
    assert res.extension_degree == 1 and B.act(res.k) == B


def test_closed_examples():
    f = closed(F3, [1, 1, 1])
    res = witness_closed(f)
    assert res.new_ctx is F9
    check(res, f)
    g = closed(F5, [1, 2, 0])
    res = witness_closed(g)
    assert res.extension_degree == 1
    check(res, g)


# ---------------------------------------------------------------- dispatch and errors


def test_wrong_stratum():
    std = flag_from_matrix(Mat3.identity(F5))
    for fn in (witness_lc1, witness_lc2, witness_closed):
        with pytest.raises(WrongStratum):
            fn(std)
    with pytest.raises(WrongStratum):
        witness_open(closed(F5, [1, 2, 0]))


@pytest.mark.parametrize("q", [7, 9])
def test_all_flags_have_verified_witnesses(q):
    for f in enumerate_flags(q):
        res = witness(f)
        assert res.verified and res.extension_degree in (1, 2, 4)
        assert res.new_ctx.order == q ** res.extension_degree


def test_witness_json_shape():
    res = witness(first(3, Stratum.LC1))
    doc = res.to_json()
    assert set(doc) == {"stratum", "k", "field", "degree", "verified"}
    assert doc["field"] == "Fq:3^2" and doc["verified"] is True
    assert len(doc["k"]) == 3 and all(len(r) == 3 for r in doc["k"])


def test_budget_exceeded_over_a_tall_tower():
    K = make_field("Q|2|3")
    f = Flag(complete(Vec3.of(K, [1, 2, 0]), Vec3.of(K, [0, 0, 1])))  # c1 = 5
    with pytest.raises(ExtensionBudgetExceeded) as info:
        witness(f)
    assert info.value.radicands[-1].startswith("[5")


@settings(max_examples=25)
@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), min_size=6, max_size=6))
def test_rational_witnesses(xs):
    v1, v2 = Vec3.of(Q, xs[:3]), Vec3.of(Q, xs[3:])
    if v1.cross(v2).is_zero():
        return
    f = Flag(complete(v1, v2))
    res = witness(f)
    assert res.new_ctx.height <= 2
    check(res, f)


@settings(max_examples=25)
@given(st.lists(element_of(Qi), min_size=6, max_size=6))
def test_gaussian_witnesses(xs):
    v1, v2 = Vec3(xs[:3]), Vec3(xs[3:])
    if v1.cross(v2).is_zero():
        return
    f = Flag(complete(v1, v2))
    check(witness(f), f)


def test_gaussian_witnesses_every_stratum():
    i = imag_unit(Qi)
    flags = [
        flag_from_matrix(Mat3.of(Qi, [[1, 0, 0], [0, 2, 0], [0, 0, Qi(1) / 2]])),
        Flag(complete(Vec3.of(Qi, [1, i, 0]), Vec3.of(Qi, [3, 0, 1]))),
        Flag(complete(Vec3.of(Qi, [2, 0, 0]), Vec3.of(Qi, [0, 1, i]))),
        closed(Qi, [3, 4, 5 * i]),
    ]
    assert [classify_flag(f) for f in flags] == list(Stratum)
    for f in flags:
        check(witness(f), f)


# ---------------------------------------------------------------- stabilizers


def _sign_diagonals(ctx):
    signs = [ctx(1), ctx(-1)]
    return {diag(ctx, a, b, a * b) for a in signs for b in signs}


@pytest.mark.parametrize("q", [3, 5, 7])
def test_borel_stabilizer(q):
    ctx = finite_field(q)
    stab = stabilizer(flag_from_matrix(Mat3.identity(ctx)), q)
    assert set(stab) == _sign_diagonals(ctx)


def _so2_block(ctx):
    z = ctx.zero_el
    out = set()
    for a, b in product(elements(ctx), repeat=2):
        if a * a + b * b == 1:
            out.add(Mat3([[a, -b, z], [b, a, z], [z, z, ctx.one_el]]))
    return out


@pytest.mark.parametrize("q", [5, 13])
def test_B1_stabilizer_is_SO2(q):
    ctx = finite_field(q)
    stab = set(stabilizer(reference_flags(ctx).B1_flag, q))
    assert stab == _so2_block(ctx)
    assert len(stab) == q - 1


def test_Bclo_stabilizer_over_F9():
    stab = stabilizer(reference_flags(F9).Bclo_flag, 9)
    assert len(stab) == len(enumerate_SO3(9)) // 10 == 72


def test_stabilizer_rejects_foreign_flag():
    with pytest.raises(ValueError):
        stabilizer(flag_from_matrix(Mat3.identity(F5)), 3)


# ---------------------------------------------------------------- sphere sections


def _check_section(p, g):
    assert gram(g).is_identity() and det3(g) == 1
    e3 = Vec3.basis(g.ctx, 2)
    assert g @ e3 == p.embed(g.ctx)


def test_sphere_identity_fast_path():
    assert sphere_section(Vec3.of(Q, [0, 0, 1])).is_identity()


def test_sphere_zx_chart_example():
    g = sphere_section(Vec3.of(Q, [1, 0, 0]), chart="zx")
    assert g == Mat3.of(Q, [[0, 0, 1], [-1, 0, 0], [0, -1, 0]])
    _check_section(Vec3.of(Q, [1, 0, 0]), g)


def test_sphere_default_chart_for_e1():
    p = Vec3.of(Q, [1, 0, 0])
    assert choose_chart(p) == "xy"
    g = sphere_section(p)
    assert g == Mat3.of(Q, [[0, 0, 1], [0, 1, 0], [-1, 0, 0]])


def test_sphere_over_Q_extends_by_sqrt2():
    p = Vec3.of(Q, [Q(2) / 3, Q(2) / 3, Q(1) / 3])
    assert choose_chart(p) == "xy"
    g = sphere_section(p)
    assert g.ctx.descriptor == "Q|2"
    _check_section(p, g)


def test_sphere_rejects_points_off_the_sphere():
    with pytest.raises(NotOnSphere):
        sphere_section(Vec3.of(Q, [1, 1, 0]))


@pytest.mark.parametrize("chart", ["xy", "yz", "zx"])
def test_every_chart_works_where_defined(chart):
    for x, y, z in product(elements(F7), repeat=3):
        p = Vec3((x, y, z))
        if not (x * x + y * y + z * z - 1).is_zero():
            continue
        den = {"xy": x * x + y * y, "yz": y * y + z * z, "zx": z * z + x * x}[chart]
        if den.is_zero():
            with pytest.raises(ValueError):
                sphere_section(p, chart=chart)
        else:
            _check_section(p, sphere_section(p, chart=chart))


def test_sphere_prefers_rational_charts():
    # over F5 some sphere point has a square yz denominator but non-square xy
    seen = set()
    for x, y, z in product(elements(F5), repeat=3):
        p = Vec3((x, y, z))
        if (x * x + y * y + z * z - 1).is_zero() and not (x.is_zero() and y.is_zero()):
            g = sphere_section(p)
            if g.ctx is F5:
                seen.add(choose_chart(p))
    assert seen <= {"xy", "yz", "zx"} and "xy" in seen
