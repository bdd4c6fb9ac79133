import pytest
from hypothesis import given, strategies as st

from ydlab import catalog
from ydlab.errors import DimensionMismatch, GradingMismatch, NotInvertible, PreconditionFailed
from ydlab.exactmat import LinMap, compose, eq, flip, identity, kron, scalar
from ydlab.involution import (Character, GrouplikeElement, check_involution_pair, convolution,
                              convolution_inverse, convolution_unit, iso_backward, iso_forward,
                              iso_morphism, lambda_helper_identities, make_pair, yd_from_tau_pair)
from ydlab.ydcat import YDMorphism, verify_morphism, verify_yd


@pytest.fixture(scope="module")
def pairs(h4, s2, phi_neg1, grouplike):
    e = h4.identity_aut()
    return {
        "eps_eta": make_pair(h4, h4, h4.counit, h4.unit, e, e, name="eps_eta"),
        "eps_eta_neg": make_pair(h4, h4, h4.counit, h4.unit, phi_neg1, phi_neg1, name="eps_eta_neg"),
        "eps_g": make_pair(h4, h4, h4.counit, grouplike, s2, e, name="eps_g"),
        "eps_g_neg": make_pair(h4, h4, h4.counit, grouplike, e, phi_neg1, name="eps_g_neg"),
    }


def test_antipode_is_convolution_inverse_of_identity(h4, qz2):
    for b in (h4, qz2):
        assert eq(convolution(b, b.id, b.antipode), convolution_unit(b, (b.dim, b.dim)))
        assert eq(convolution_inverse(b, b.id), b.antipode)


def test_conjugation_by_grouplike_is_square_of_antipode(h4, grouplike, s2):
    # h -> g^-1 h g written as a triple convolution with f the counit
    g_inv_f = compose(grouplike, h4.counit)  # g is its own inverse
    g_f_inv = compose(grouplike, h4.counit)
    assert eq(convolution(h4, convolution(h4, g_inv_f, h4.id), g_f_inv), s2.map)


def test_convolution_inverses_of_characters_and_grouplikes(h4, qz2, grouplike):
    assert eq(convolution_inverse(h4, h4.counit), h4.counit)
    assert eq(convolution_inverse(h4, grouplike), grouplike)
    sign = LinMap([[1, -1]])
    assert eq(convolution_inverse(qz2, sign), sign)
    assert eq(convolution(qz2, sign, sign), qz2.counit)


def test_non_invertible_map(h4):
    with pytest.raises(NotInvertible):
        convolution_inverse(h4, LinMap([[0, 0, 1, 0]]))


def test_convolution_shape_checks(h4):
    with pytest.raises(DimensionMismatch):
        convolution(h4, h4.counit, h4.unit)
    with pytest.raises(DimensionMismatch):
        convolution(h4, identity(3), identity(3))


@given(st.lists(st.fractions(), min_size=4, max_size=4), st.lists(st.fractions(), min_size=4, max_size=4),
       st.lists(st.fractions(), min_size=4, max_size=4))
def test_convolution_associative_and_unital(u, v, w):
    h4 = catalog.sweedler()
    U, V, W = (LinMap([row]) for row in (u, v, w))
    assert eq(convolution(h4, convolution(h4, U, V), W), convolution(h4, U, convolution(h4, V, W)))
    assert eq(convolution(h4, U, h4.counit), U)
    assert eq(convolution(h4, h4.counit, U), U)


def test_character_and_grouplike_checks(h4, grouplike):
    rep = check_involution_pair(make_pair(h4, h4, LinMap([[1, 2, 0, 0]]), grouplike,
                                          h4.identity_aut(), h4.identity_aut()))
    assert "f-mult" in rep.failed_labels
    rep = check_involution_pair(make_pair(h4, h4, h4.counit, LinMap([[0], [0], [1], [0]]),
                                          h4.identity_aut(), h4.identity_aut()))
    assert "g-comult" in rep.failed_labels
    with pytest.raises(DimensionMismatch):
        Character(h4, h4.unit)
    with pytest.raises(DimensionMismatch):
        GrouplikeElement(h4, h4.counit)


def test_bundled_pairs_pass(pairs):
    for p in pairs.values():
        rep = check_involution_pair(p)
        assert rep.passed, rep.render()


def test_pair_at_wrong_grading_fails_every_form(h4, grouplike):
    e = h4.identity_aut()
    rep = check_involution_pair(make_pair(h4, h4, h4.counit, grouplike, e, e))
    assert {"form-1", "form-2", "form-3"} <= set(rep.failed_labels)
    assert rep["forms-agree"].passed


def test_sign_pair_on_qz2(qz2):
    e = qz2.identity_aut()
    p = make_pair(qz2, qz2, LinMap([[1, -1]]), LinMap([[0], [1]]), e, e)
    assert check_involution_pair(p).passed


def test_helper_identities(pairs):
    for p in pairs.values():
        rep = lambda_helper_identities(p)
        assert rep.passed, rep.render()


def test_helper_identities_refuse_bad_grouplike(h4, s2):
    p = make_pair(h4, h4, h4.counit, LinMap([[0], [1], [1], [0]]), s2, h4.identity_aut())
    with pytest.raises(PreconditionFailed) as err:
        lambda_helper_identities(p)
    assert err.value.condition == "g-comult"


def test_helper_identities_refuse_bad_tau(pairs):
    with pytest.raises(PreconditionFailed):
        lambda_helper_identities(pairs["eps_g"], identity(16))


def test_iso_round_trip(h4, pairs):
    objs = [catalog.yd_regular(h4), catalog.yd_trivial(h4)]
    for p in pairs.values():
        for x in objs:
            y = iso_backward(p, x)
            assert (y.alpha.name, y.beta.name) == (p.alpha.name, p.beta.name)
            assert verify_yd(y).passed
            back = iso_forward(p, y)
            assert back.same_as(x)
            assert iso_backward(p, back).same_as(y)


def test_iso_moves_a_failing_object_to_a_passing_one(h4, pairs, s2):
    # the adjoint structure regraded at (S2, id) is not YD there; the functor repairs that
    x = catalog.yd_regular(h4)
    assert not verify_yd(x, s2, h4.identity_aut()).passed
    assert verify_yd(iso_backward(pairs["eps_g"], x)).passed


def test_iso_requires_matching_component(h4, pairs):
    x = catalog.yd_regular(h4)
    with pytest.raises(GradingMismatch):
        iso_forward(pairs["eps_g"], x)


def test_iso_refuses_non_pair(h4, grouplike):
    e = h4.identity_aut()
    bad = make_pair(h4, h4, h4.counit, grouplike, e, e)
    with pytest.raises(PreconditionFailed):
        iso_backward(bad, catalog.yd_regular(h4))


def test_iso_on_morphisms(h4, pairs):
    x, t = catalog.yd_regular(h4), catalog.yd_trivial(h4)
    z = YDMorphism(t, x, h4.unit)
    for p in pairs.values():
        moved = iso_morphism(p, z, "backward")
        assert verify_morphism(moved).passed
        assert verify_morphism(iso_morphism(p, moved, "forward")).passed


def test_tau_build_with_flip(h4, pairs):
    obj = yd_from_tau_pair(h4, h4, flip(4, 4), flip(4, 4), pairs["eps_g"], name="tau")
    assert (obj.alpha.name, obj.beta.name) == ("S2", "id")
    assert verify_yd(obj).passed
    assert iso_backward(pairs["eps_g"], iso_forward(pairs["eps_g"], obj)).same_as(obj)


def test_tau_build_rejects_ybe_violation(h4, pairs):
    bad = flip(4, 4).with_entry(0, 0, 2)
    with pytest.raises(PreconditionFailed) as err:
        yd_from_tau_pair(h4, h4, flip(4, 4), flip(4, 4), pairs["eps_g"], tau_FF=bad)
    assert err.value.condition == "YBE"


def test_tau_build_rejects_non_inverse(h4, pairs):
    with pytest.raises(PreconditionFailed) as err:
        yd_from_tau_pair(h4, h4, flip(4, 4), flip(4, 4).scale(2), pairs["eps_g"])
    assert err.value.condition.startswith("tau-XF-comonadic")


def test_trivial_bimonad_pair():
    k = catalog.trivial_bimonad()
    e = k.identity_aut()
    p = make_pair(k, k, scalar(1), scalar(1), e, e)
    assert check_involution_pair(p).passed
    assert lambda_helper_identities(p).passed
