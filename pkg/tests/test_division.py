"""Division engine: normal forms, standard bases, syzygies, ideal operations."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from localring.rings import GF, GLOBAL, LOCAL, QQ, Vector, parse_polynomial
from localring import division as dv

from conftest import truncated_membership


def test_weak_normal_form_unit(P):
    # dividing x by (x - x^2) locally needs the unit 1 - x
    cert = dv.weak_normal_form(P("x"), [P("x - x^2")])
    assert cert.remainder.is_zero()
    assert str(cert.unit) == "1 - x"


def test_weak_normal_form_global(P):
    cert = dv.weak_normal_form(P("x"), [P("x - x^2")], order=GLOBAL)
    assert cert.remainder == P("x")


def test_weak_normal_form_remainder(P):
    cert = dv.weak_normal_form(P("x*z^3"), [P("x^2"), P("x*y"), P("y - z^3")])
    assert cert.remainder == P("x*z^3")
    assert cert.verify()


def test_certificate_identity(P):
    basis = [P("x^2"), P("x*y"), P("y - z^3")]
    cert = dv.weak_normal_form(P("x^2*y + z^6"), basis)
    lhs = cert.f * cert.unit
    rhs = cert.remainder
    for a, g in zip(cert.cofactors, basis):
        rhs = rhs + a * g
    assert lhs == rhs
    assert cert.unit.constant_term() == 1


def test_standard_basis_fixture(P):
    basis = dv.standard_basis([P("x^2"), P("x*y"), P("y - z^3")])
    got = sorted(str(g) for g in basis.elements)
    assert got == ["x*z^3", "x^2", "y - z^3"]
    assert sorted(basis.orders_v) == [1, 2, 4]


def test_initial_module_fixture(P):
    basis = dv.standard_basis([P("x^2"), P("x*y"), P("y - z^3")])
    init = sorted(str(g) for g in dv.initial_module(basis))
    assert init == ["x*z^3", "x^2", "y"]


def test_lift_certificate(P):
    gens = [P("x^2"), P("x*y"), P("y - z^3")]
    unit, cof = dv.lift(P("x*z^3"), gens)
    lhs = P("x*z^3") * unit
    rhs = gens[0].ring.zero()
    for a, g in zip(cof, gens):
        rhs = rhs + a * g
    assert lhs == rhs
    assert unit.constant_term() != 0


def test_lift_non_member(P):
    with pytest.raises(dv.NotAMember):
        dv.lift(P("z"), [P("x^2"), P("y")])


def test_membership(P):
    gens = [P("x^2"), P("x*y"), P("y - z^3")]
    assert dv.membership(P("x*z^3"), gens)
    assert dv.membership(P("x^2 + x*y"), gens)
    assert not dv.membership(P("x"), gens)
    assert not dv.membership(P("z^3"), gens)


def test_syzygies_fixtures(P, R3):
    syz = dv.syzygies([P("x"), P("y")])
    assert len(syz) == 1
    assert [str(c) for c in syz[0].polys] in (["y", "-x"], ["-y", "x"])
    assert dv.syzygies([P("x")]) == []
    syz2 = dv.syzygies([P("x^2"), P("y")])
    assert len(syz2) == 1


def test_syzygies_annihilate(P):
    gens = [P("x^2"), P("x*y"), P("y - z^3")]
    for z in dv.syzygies(gens):
        acc = gens[0].ring.zero()
        for c, g in zip(z.polys, gens):
            acc = acc + c * g
        assert acc.is_zero()


def test_colon_fixtures(P):
    assert sorted(str(g) for g in dv.colon([P("x*y")], P("x"))) == ["y"]
    assert sorted(str(g) for g in dv.colon([P("x^2")], P("x"))) == ["x"]
    got = dv.colon([P("x^2"), P("x*y")], P("x"))
    basis = dv.standard_basis(got)
    assert dv.membership(P("x"), None, basis=basis)
    assert dv.membership(P("y"), None, basis=basis)
    assert not dv.membership(P("1"), None, basis=basis)


def test_intersect_fixtures(P):
    got = dv.intersect([P("x")], [P("y")])
    basis = dv.standard_basis(got)
    assert dv.membership(P("x*y"), None, basis=basis)
    assert not dv.membership(P("x"), None, basis=basis)
    got2 = dv.intersect([P("x^2"), P("y")], [P("x")])
    b2 = dv.standard_basis(got2)
    assert dv.membership(P("x^2"), None, basis=b2)
    assert dv.membership(P("x*y"), None, basis=b2)
    assert not dv.membership(P("x"), None, basis=b2)
    assert not dv.membership(P("y"), None, basis=b2)


def test_minimal_generators(P):
    got = dv.minimal_generators([P("x^2"), P("x*y"), P("y - z^3"), P("x")])
    assert sorted(str(g) for g in got) == ["x", "y - z^3"]


def test_minimalize_standard_basis(P):
    basis = dv.standard_basis([P("x^2"), P("x*y"), P("y - z^3")])
    minimal = dv.minimalize(basis)
    assert sorted(minimal.orders_v) == [1, 2, 4]
    assert minimal.minimal


def test_generator_order_independence(P):
    gens = [P("x^2"), P("x*y"), P("y - z^3")]
    rng = random.Random(3)
    reference = sorted(str(g) for g in dv.standard_basis(gens).elements)
    for _ in range(5):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        got = sorted(str(g) for g in dv.standard_basis(shuffled).elements)
        assert got == reference


def test_membership_agrees_with_truncation_oracle():
    ring = GF(32003, "x", "y")
    rng = random.Random(11)
    from localring import perturb as pb

    for _ in range(15):
        gens = pb.random_ideal(ring, rng, max_gens=2, max_degree=3)
        f = pb.random_polynomial(ring, rng, 3)
        member = dv.membership(f, gens)
        if member:
            # membership implies containment in I + m^D for every window
            for D in (4, 6, 8):
                assert truncated_membership(f, gens, D)


def test_module_standard_basis(P, R3):
    v1 = Vector([P("x"), P("y")], R3)
    v2 = Vector([P("y"), P("x")], R3)
    basis = dv.standard_basis([v1, v2])
    assert basis.rank == 2
    assert dv.membership(v1, None, basis=basis)
    combo = v1.mul_poly(P("z")) + v2.mul_poly(P("x^2"))
    assert dv.membership(combo, None, basis=basis)


def test_division_idempotent(P):
    basis = dv.standard_basis([P("x^2"), P("x*y"), P("y - z^3")])
    cert = dv.weak_normal_form(P("x*z^3 + x^3"), basis.elements)
    again = dv.weak_normal_form(cert.remainder, basis.elements)
    assert again.remainder == cert.remainder


small_polys = st.sampled_from(
    ["x", "y", "x^2", "x*y", "y^2", "x + y^2", "x^2 - y^3", "x*y + x^3"]
)


@given(st.lists(small_polys, min_size=1, max_size=3), small_polys)
@settings(max_examples=30, deadline=None)
def test_remainder_zero_iff_member(gen_strs, f_str):
    R = QQ("x", "y")
    gens = [parse_polynomial(s, R) for s in gen_strs]
    f = parse_polynomial(f_str, R)
    basis = dv.standard_basis(gens)
    cert = dv.weak_normal_form(f, basis.elements)
    assert cert.remainder.is_zero() == dv.membership(f, gens)


@given(st.lists(small_polys, min_size=2, max_size=3))
@settings(max_examples=30, deadline=None)
def test_syzygies_always_annihilate(gen_strs):
    R = QQ("x", "y")
    gens = [parse_polynomial(s, R) for s in gen_strs]
    for z in dv.syzygies(gens):
        acc = R.zero()
        for c, g in zip(z.polys, gens):
            acc = acc + c * g
        assert acc.is_zero()
