"""Acceptance criteria, one test per criterion; the conftest hook prints a PASS/FAIL line for each."""

import itertools
import sys
import time
from fractions import Fraction

import pytest

from ydlab import catalog
from ydlab.bimonad import (AutFusion, AutGroup, Bimonad, LambdaFamily, ZeroAutomorphism, group_closure,
                           verify_bimonad,
                           verify_fusion, verify_lambda_consequences, verify_zero_automorphism)
from ydlab.exactmat import LinMap, eq, flip
from ydlab.groupsys import (FusionMap, GradedGroupSystem, GradedPair, transitive_product,
                            verify_system_axioms)
from ydlab.involution import check_involution_pair, iso_backward, iso_forward, make_pair, yd_from_tau_pair
from ydlab.workspace import load_workspace
from ydlab.ydcat import (GradedYDObject, YDMorphism, apply_phi, compose_yd, default_projection, pair_mul,
                         verify_braided_ab_equivalence, verify_morphism, verify_phi_monoidal, verify_yd)

SCALINGS = [1, -1, 2, -3, "1/2"]


@pytest.fixture(scope="module")
def ws_all():
    return {name: load_workspace(name) for name in ("trivial", "sweedler", "cyclic2")}


def _pair_closure(gens, j):
    e = (gens[0][0].owner.identity_aut(), gens[0][1].owner.identity_aut())
    found = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = pair_mul(p, g, j)
                if not any(eq(q[0].map, r[0].map) and eq(q[1].map, r[1].map) for r in found):
                    found.append(q)
                    nxt.append(q)
        frontier = nxt
    return found


def test_criterion_01_sweedler_bimonad_identities():
    start = time.perf_counter()
    rep = verify_bimonad(catalog.sweedler())
    elapsed = time.perf_counter() - start
    assert rep.passed, rep.render()
    assert len(rep.checks) >= 11
    for label in ("monadic-dl-mult", "monadic-dl-unit", "comonadic-dl-comult", "comonadic-dl-counit",
                  "mult-comult-compat"):
        assert rep[label].passed
    assert elapsed < 1.0


def test_criterion_02_scaling_automorphisms(h4, phi_neg1):
    auts = {}
    for c in SCALINGS:
        auts[c] = catalog.sweedler_scaling(h4, c)
        assert verify_zero_automorphism(h4, auts[c].map).passed
    for c, d in itertools.product(SCALINGS, repeat=2):
        expect = catalog.sweedler_scaling(h4, Fraction(c) * Fraction(d))
        assert eq((auts[c] * auts[d]).map, expect.map)
    assert len(group_closure(h4, [phi_neg1])) == 2


def test_criterion_03_group_system_axioms(sweedler_ws):
    start = time.perf_counter()
    names = {"z6": "Z6", "s3": "S3", "d4": "D4", "d4_plain": "D4"}
    for name in names:
        rep = verify_system_axioms(sweedler_ws.system(name))
        assert rep.passed, rep.render()
        assert rep.seed is None  # exhaustive, no sampling
        for label in ("conjugation-compatibility", "coassociativity", "counit-law", "antipode-rule",
                      "transitive-associativity"):
            assert label in rep.labels(), rep.labels()
    assert time.perf_counter() - start < 10.0


def test_criterion_04_composition_law(h4, qz2, phi_neg1, sweedler_ws, cyclic2_ws):
    H = sweedler_ws
    Q = cyclic2_ws
    pairs = [
        (H.object("regular"), H.object("trivial")),
        (H.object("regular"), H.object("regular_neg")),
        (H.object("antiYD"), H.object("regular")),
        (H.object("trivial"), H.object("antiYD")),
        (H.object("regular_neg"), H.object("antiYD")),
        (Q.object("regular"), Q.object("sign")),
        (Q.object("sign"), Q.object("regular")),
    ]
    for x, y in pairs:
        b = x.source
        G = AutGroup.closure(b, group_closure(b, [phi_neg1]) if b.same_as(h4) else [])
        tab = AutFusion.identity(b).table(G, G)
        z = compose_yd(x, y)
        assert verify_yd(z).passed, (x.name, y.name)
        expect = transitive_product(GradedPair(G.index(x.alpha), G.index(x.beta)),
                                    GradedPair(G.index(y.alpha), G.index(y.beta)), tab, tab)
        assert (G.index(z.alpha), G.index(z.beta)) == tuple(expect)
    triples = [
        (H.object("regular"), H.object("trivial"), H.object("antiYD")),
        (H.object("trivial"), H.object("regular_neg"), H.object("trivial")),
        (H.object("antiYD"), H.object("unit"), H.object("trivial")),
        (Q.object("sign"), Q.object("regular"), Q.object("sign")),
    ]
    for x, y, w in triples:
        assert compose_yd(compose_yd(x, y), w).same_as(compose_yd(x, compose_yd(y, w)))


def test_criterion_05_twisting_functor_laws(ws_all, h4, phi_neg1, sweedler_ws):
    for ws in ws_all.values():
        for obj in ws.objects.values():
            j = ws.fusion_between(obj.source, obj.target)
            e = (obj.target.identity_aut(), obj.source.identity_aut())
            assert apply_phi(e, obj, j).same_as(obj), obj.name
    j = AutFusion.identity(h4)
    group = _pair_closure([(phi_neg1, phi_neg1)], j)
    assert len(group) == 2
    h4_objects = [o for o in sweedler_ws.objects.values() if o.source.same_as(h4) and o.target.same_as(h4)]
    for obj in h4_objects:
        for p, q in itertools.product(group, repeat=2):
            assert apply_phi(pair_mul(p, q, j), obj).same_as(apply_phi(p, apply_phi(q, obj)))
    full = _pair_closure([(phi_neg1, h4.identity_aut()), (h4.identity_aut(), phi_neg1)], j)
    composable = [("regular", "trivial"), ("antiYD", "regular"), ("regular_neg", "antiYD")]
    for xn, yn in composable:
        x, y = sweedler_ws.object(xn), sweedler_ws.object(yn)
        for p in full:
            rep = verify_phi_monoidal(p, x, y)
            assert rep.passed, rep.render()


def test_criterion_06_lambda_consequences(h4, qz2, phi_neg1):
    h4_auts = group_closure(h4, [phi_neg1])
    for b, auts in ((h4, h4_auts), (qz2, [qz2.identity_aut()])):
        for fam in (LambdaFamily.conjugated(b, auts), LambdaFamily.braided(b, auts)):
            rep = verify_lambda_consequences(fam)
            assert rep.passed, rep.render()
            for k in range(1, 9):
                assert rep[f"l{k}"].passed
    fam = LambdaFamily.conjugated(h4, h4_auts)
    corrupt = fam.replace(h4_auts[1], fam[h4_auts[1]].with_entry(5, 5, 3))
    rep = verify_lambda_consequences(corrupt)
    assert not rep["l1"].passed
    assert "flat" in rep["l1"].counterexample


def test_criterion_07_pairs_in_involution(h4, phi_neg1, s2, grouplike, sweedler_ws):
    for a in (h4.identity_aut(), phi_neg1):
        assert check_involution_pair(make_pair(h4, h4, h4.counit, h4.unit, a, a)).passed
    rep = check_involution_pair(make_pair(h4, h4, h4.counit, grouplike, s2, h4.identity_aut()))
    assert rep.passed
    assert all(rep[k].passed for k in ("form-1", "form-2", "form-3", "forms-agree"))
    eps_g = sweedler_ws.pair("eps_g")
    tau_obj = yd_from_tau_pair(h4, h4, flip(4, 4), flip(4, 4), eps_g)
    graded = [sweedler_ws.object("antiYD"), tau_obj, iso_backward(eps_g, sweedler_ws.object("trivial")),
              iso_backward(eps_g, sweedler_ws.object("unit"))]
    for y in graded:
        x = iso_forward(eps_g, y)
        assert x.alpha.is_identity() and x.beta.is_identity()
        assert verify_yd(x).passed
        back = iso_backward(eps_g, x)
        assert eq(back.alpha.map, s2.map) and back.beta.is_identity()
        assert back.same_as(y)
        assert iso_forward(eps_g, back).same_as(x)


def test_criterion_08_braided_equivalence(h4, grouplike, phi_neg1):
    adj = catalog.adjoint_action(h4)
    eps, eta = catalog.trivial_module(h4)
    objects = {
        "adjoint-comult": (adj, h4.comult),
        "trivial": (eps, eta),
        "left-comult": (h4.mult, h4.comult),
        "adjoint-twisted": (adj, catalog.twisted_coaction(h4, grouplike)),
        "left-trivial": (h4.mult, LinMap.from_columns(16, [{i: 1} for i in range(4)])),
        "trivial-comult": (LinMap.from_rows(4, 16, {i: {i: 1, 4 + i: 1} for i in range(4)}), h4.comult),
    }
    auts = group_closure(h4, [phi_neg1])
    verdicts = set()
    for name, (act, coact) in objects.items():
        for a, b in itertools.product(auts, repeat=2):
            rep = verify_braided_ab_equivalence(h4, act, coact, a, b)
            assert rep["agree"].passed, (name, a.name, b.name, rep.render())
            verdicts.add(rep["braided-ab"].passed)
    assert verdicts == {True, False}  # both outcomes occur, so agreement is not vacuous


def _coordinate(check):
    ce = check.counterexample
    return ce is not None and (("row" in ce and "col" in ce) or "elements" in ce or "flat" in ce)


def test_criterion_09_mutation_sensitivity(h4, phi_neg1, grouplike, s2, sweedler_ws):
    """Each verifier passes on an input and fails, with a coordinate, after one entry changes."""
    e = h4.identity_aut()
    obj = sweedler_ws.object("regular")
    auts = group_closure(h4, [phi_neg1])
    fam = LambdaFamily.conjugated(h4, auts)
    s3 = sweedler_ws.system("s3")
    H2 = sweedler_ws.bimonad("sweedler_b")
    iso = sweedler_ws.aut_fusions["rescale"].iso
    x, y = sweedler_ws.object("regular"), sweedler_ws.object("antiYD")
    adj = catalog.adjoint_action(h4)

    def skewed(pair, jy, jx):
        first, (c, d) = default_projection(pair, jy, jx)
        return first, (c, ZeroAutomorphism.of(h4, d.map.with_entry(2, 3, 1), "skewed"))

    def bimonad_with(mult):
        return Bimonad.braided("m", mult, h4.unit, h4.comult, h4.counit, h4.antipode)

    def system_with(images):
        return GradedGroupSystem(s3.groups[:2], [FusionMap.unchecked(s3.groups[0], s3.groups[1], images)])

    def yd_with(psi):
        return GradedYDObject(h4, h4, 4, psi, obj.phi, obj.alpha, obj.beta)

    def pair_with(f):
        return make_pair(h4, h4, f, grouplike, s2, e)

    # monoidality holds for any structure maps, so its perturbed input is the grading projection
    cases = {
        "bimonad": lambda m: verify_bimonad(bimonad_with(m)),
        "automorphism": lambda m: verify_zero_automorphism(h4, m),
        "yd": lambda m: verify_yd(yd_with(m)),
        "lambda": lambda m: verify_lambda_consequences(fam.replace(auts[1], m)),
        "pair": lambda m: check_involution_pair(pair_with(m)),
        "morphism": lambda m: verify_morphism(YDMorphism(obj, obj, m)),
        "fusion": lambda m: verify_fusion(AutFusion(h4, H2, m, "m")),
        "braided": lambda m: verify_braided_ab_equivalence(h4, adj, h4.comult, ZeroAutomorphism(h4, m, m, "m"), e),
    }
    inputs = {
        "bimonad": (h4.mult, (0, 6, 1)),
        "automorphism": (phi_neg1.map, (0, 2, 1)),
        "yd": (obj.psi, (0, 0, 2)),
        "lambda": (fam[auts[1]], (5, 5, 3)),
        "pair": (h4.counit, (0, 2, 1)),
        "morphism": (h4.id, (0, 2, 1)),
        "fusion": (iso, (3, 3, 2)),
        "braided": (h4.id, (2, 3, 1)),
    }
    failures = {}
    for name, check in cases.items():
        good, (i, j, v) = inputs[name]
        before = check(good)
        assert before.passed, (name, before.render())
        after = check(good.with_entry(i, j, v))
        bad = [c for c in after.checks if not c.passed]
        assert bad, name
        failures[name] = bad[0]
    # fusion images must stay a bijection, so the smallest change swaps two of them
    assert verify_system_axioms(system_with([0, 1, 2, 3, 4, 5])).passed
    failures["group-system"] = [c for c in verify_system_axioms(system_with([0, 2, 1, 3, 4, 5])).checks
                                if not c.passed][0]
    assert verify_phi_monoidal((phi_neg1, phi_neg1), x, y).passed
    failures["monoidal"] = [c for c in verify_phi_monoidal((phi_neg1, phi_neg1), x, y, projection=skewed).checks
                            if not c.passed][0]
    for name, check in failures.items():
        assert _coordinate(check), (name, check)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
