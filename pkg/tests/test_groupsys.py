import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ydlab.errors import ClosureTooLarge, EmptyHom, GroupMismatch, MalformedInput
from ydlab.groupsys import (FiniteGroup, FusionMap, GradedGroupSystem, conjugate_grading, cyclic, dihedral,
                            pair_elements, pair_inverse, pair_product, pair_unit, project_pi, symmetric,
                            transitive_product, trivial_group, verify_system_axioms)

S3 = symmetric(3)
D4 = dihedral(4)
Z6 = cyclic(6)


def chain_system(G, images_list, name=""):
    groups = [FiniteGroup(G.table, G.unit, f"{G.name}_{i}") for i in range(len(images_list) + 1)]
    fusions = [FusionMap(groups[i], groups[i + 1], imgs) for i, imgs in enumerate(images_list)]
    return GradedGroupSystem(groups, fusions, name)


def inner_images(G, g):
    return [G.mul(G.mul(g, x), G.inv(g)) for x in range(G.order)]


# Plain-Python oracles written straight from the defining formulas.

def oracle_pair_product(G1, G, j, p, q):
    a, b = p
    c, d = q
    ji = {int(j(x)): x for x in range(G.order)}
    m = G.mul
    return G1.mul(a, c), m(m(m(d, ji[G1.inv(c)]), b), ji[c])


def oracle_transitive(G2, G1, G, j, j2, p, q):
    a, b = p
    c, d = q
    ji = {int(j(x)): x for x in range(G.order)}
    return G2.mul(a, int(j2(c))), G.mul(d, ji[G1.mul(G1.mul(G1.inv(c), b), c)])


def test_group_tables_are_validated():
    with pytest.raises(MalformedInput):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(MalformedInput):
        FiniteGroup([[0, 1, 2], [1, 2, 0]])
    assert S3.order == 6 and D4.order == 8
    assert all(S3.mul(a, S3.inv(a)) == S3.unit for a in range(6))


def test_fusion_maps_are_validated():
    with pytest.raises(EmptyHom):
        FusionMap(Z6, D4, list(range(6)))
    with pytest.raises(GroupMismatch):
        FusionMap(S3, S3, [0, 0, 1, 2, 3, 4])
    with pytest.raises(GroupMismatch):
        FusionMap(Z6, Z6, [0, 2, 1, 3, 4, 5])
    j = FusionMap.inner(S3, S3, 1)
    assert np.array_equal(j.inverse().then(j).images, np.arange(6))


def test_pair_product_examples():
    j = FusionMap.identity(S3)
    for q in pair_elements(j):
        assert pair_product(pair_unit(j), q, j) == q
    jz = FusionMap.identity(Z6)
    for (a, b), (c, d) in itertools.product(pair_elements(jz), repeat=2):
        assert pair_product((a, b), (c, d), jz) == ((a + c) % 6, (b + d) % 6)
    # Checked by hand against the S3 table.
    assert pair_product((1, 2), (3, 4), j) == (5, 1)


def test_pair_inverse_examples():
    for G, g in ((S3, 1), (S3, 2), (D4, 1)):
        j = FusionMap.inner(G, G, g)
        e = pair_unit(j)
        assert pair_inverse(e, j) == e
        for p in pair_elements(j):
            q = pair_inverse(p, j)
            assert pair_product(p, q, j) == e and pair_product(q, p, j) == e
            found = [r for r in pair_elements(j) if pair_product(p, r, j) == e]
            assert found == [q]
    jz = FusionMap.identity(Z6)
    assert pair_inverse((2, 5), jz) == (4, 1)


def test_pair_group_is_a_group_exhaustively():
    j = FusionMap.inner(S3, S3, 2)
    elems = pair_elements(j)
    for p, q, r in itertools.product(elems, repeat=3):
        assert pair_product(pair_product(p, q, j), r, j) == pair_product(p, pair_product(q, r, j), j)
    for p, q in itertools.product(elems, repeat=2):
        assert pair_product(p, q, j) == oracle_pair_product(S3, S3, j, p, q)


def test_transitive_product_examples():
    sys = chain_system(S3, [inner_images(S3, 1), inner_images(S3, 2)])
    G, G1, G2 = sys.groups
    j, j2 = sys.fusions
    for g, d in itertools.product(range(6), repeat=2):
        assert transitive_product((G2.unit, G1.unit), (g, d), j, j2) == (j2(g), d)
    for a, b in itertools.product(range(6), repeat=2):
        assert transitive_product((a, b), (G1.unit, G.unit), j, j2) == (a, j.inv(b))
    for p, q in itertools.product(itertools.product(range(6), repeat=2), repeat=2):
        assert transitive_product(p, q, j, j2) == oracle_transitive(G2, G1, G, j, j2, p, q)
    zsys = chain_system(Z6, [list(range(6))] * 2)
    jz, jz2 = zsys.fusions
    assert transitive_product((1, 2), (3, 5), jz, jz2) == (4, 1)
    with pytest.raises(GroupMismatch):
        transitive_product((0, 0), (0, 0), j2, j)


def test_projection_examples():
    sys = chain_system(S3, [inner_images(S3, 1), inner_images(S3, 2)])
    j, j2 = sys.fusions
    assert project_pi((0, 0), j, j2) == ((0, 0), (0, 0))
    G, G1, G2 = sys.groups
    for p in itertools.product(range(6), repeat=2):
        left, right = project_pi(p, j, j2)
        assert transitive_product(left, (G1.unit, G.unit), j, j2) == p
        assert transitive_product((G2.unit, G1.unit), right, j, j2) == p
    flat = chain_system(S3, [list(range(6))] * 2)
    for p in itertools.product(range(6), repeat=2):
        assert project_pi(p, *flat.fusions) == (p, p)


def test_conjugation_examples():
    j = FusionMap.inner(S3, S3, 1)
    e = pair_unit(j)
    for p in pair_elements(j):
        assert conjugate_grading(e, p, j) == p
        for a in pair_elements(j):
            expect = pair_product(a, pair_product(p, pair_inverse(a, j), j), j)
            assert conjugate_grading(a, p, j) == expect
    jz = FusionMap.identity(Z6)
    for a, p in itertools.product(pair_elements(jz), repeat=2):
        assert conjugate_grading(a, p, jz) == p


def test_system_fusions_compose_and_invert():
    sys = chain_system(D4, [inner_images(D4, 1), inner_images(D4, 4), inner_images(D4, 2)])
    assert np.array_equal(sys.fusion(0, 0).images, np.arange(8))
    assert np.array_equal(sys.fusion(0, 2).images, sys.fusions[1].images[sys.fusions[0].images])
    assert np.array_equal(sys.fusion(2, 0).images, sys.fusion(0, 2).back)


@pytest.mark.parametrize("G, gens", [
    (trivial_group(), [0, 0]),
    (Z6, [0, 0]),
    (S3, [1, 2]),
    (D4, [1, 4]),
])
def test_verify_system_axioms_pass(G, gens):
    sys = chain_system(G, [inner_images(G, g) for g in gens])
    rep = verify_system_axioms(sys)
    assert rep.passed, rep.render()
    assert rep.seed is None
    assert {"transitive-associativity", "conjugation-compatibility", "coassociativity", "counit-law",
            "antipode-rule", "unit-laws"} <= set(rep.labels())


def test_verify_system_detects_bad_fusion():
    groups = [FiniteGroup(S3.table, 0, f"S3_{i}") for i in range(3)]
    good = FusionMap.inner(groups[0], groups[1], 1)
    imgs = good.images.copy()
    imgs[[1, 2]] = imgs[[2, 1]]
    sys = GradedGroupSystem(groups, [FusionMap.unchecked(groups[0], groups[1], imgs),
                                     FusionMap.inner(groups[1], groups[2], 2)])
    rep = verify_system_axioms(sys)
    assert not rep.passed
    ce = rep[rep.failed_labels[0]].counterexample
    assert ce and "elements" in ce


def test_verify_system_detects_bad_table():
    t = S3.table.copy()
    t[1, 2], t[1, 3] = t[1, 3], t[1, 2]
    rep = verify_system_axioms(GradedGroupSystem([FiniteGroup.unchecked(t, 0, "bad")], []))
    assert "pair-group" in rep.failed_labels


def test_large_orders_are_sampled_with_seed():
    G = dihedral(7)
    sys = chain_system(G, [inner_images(G, 1)])
    a = verify_system_axioms(sys, seed=5)
    b = verify_system_axioms(sys, seed=5)
    assert a.passed and a.seed == 5
    assert a.labels() == b.labels() and a.notes == b.notes


def test_oversized_systems_are_refused():
    G = cyclic(25)
    with pytest.raises(ClosureTooLarge):
        verify_system_axioms(GradedGroupSystem([G], []))


def test_system_shape_errors():
    with pytest.raises(MalformedInput):
        GradedGroupSystem([], [])
    with pytest.raises(MalformedInput):
        GradedGroupSystem([S3, S3], [])
    with pytest.raises(GroupMismatch):
        GradedGroupSystem([S3, D4], [FusionMap.identity(S3)])


elements = st.integers(0, 7)


@given(st.tuples(elements, elements), st.tuples(elements, elements), st.integers(0, 7))
def test_projection_is_a_homomorphism(p, q, g):
    sys = chain_system(D4, [inner_images(D4, g), inner_images(D4, 3)])
    j, j2 = sys.fusions
    j02 = sys.fusion(0, 2)
    pq = pair_product(p, q, j02)
    (p1, p2), (q1, q2) = project_pi(p, j, j2), project_pi(q, j, j2)
    assert project_pi(pq, j, j2) == (pair_product(p1, q1, j2), pair_product(p2, q2, j))


@given(st.tuples(elements, elements), st.tuples(elements, elements), st.tuples(elements, elements))
def test_transitive_product_associative(p, q, r):
    sys = chain_system(D4, [inner_images(D4, 1), inner_images(D4, 5), inner_images(D4, 6)])
    j01, j12, j23 = sys.fusions
    lhs = transitive_product(transitive_product(p, q, j12, j23), r, j01, sys.fusion(1, 3))
    rhs = transitive_product(p, transitive_product(q, r, j01, j12), sys.fusion(0, 2), j23)
    assert lhs == rhs


@given(st.tuples(elements, elements), st.tuples(elements, elements))
def test_products_agree_when_fusions_are_trivial(p, q):
    sys = chain_system(D4, [list(range(8))] * 2)
    j, j2 = sys.fusions
    assert transitive_product(p, q, j, j2) == pair_product(p, q, j)
