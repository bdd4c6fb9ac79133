"""Concrete bialgebras, automorphisms and objects used by the bundled workspaces."""

from __future__ import annotations

from fractions import Fraction

from .bimonad import AutFusion, Bimonad, ZeroAutomorphism, zero_automorphism
from .exactmat import LinMap, chain, compose, flip, identity, inverse, kron
from .groupsys import FiniteGroup
from .ydcat import GradedYDObject, build_yd_from_action_coaction


def _structure(name, basis, mul, unit, comul, counit, antipode=None) -> Bimonad:
    """Assemble a braided bimonad from functions on basis labels returning ``{label: coeff}``."""
    n = len(basis)
    idx = {b: i for i, b in enumerate(basis)}

    def vec(d):
        return {idx[k]: v for k, v in d.items() if v}

    mult = LinMap.from_columns(n, [vec(mul(a, b)) for a in basis for b in basis])
    comult = LinMap.from_columns(n * n, [
        {idx[x] * n + idx[y]: v for (x, y), v in comul(a).items() if v} for a in basis])
    eta = LinMap.from_columns(n, [vec(unit)])
    eps = LinMap.from_rows(1, n, {0: {idx[a]: counit(a) for a in basis}})
    s = LinMap.from_columns(n, [vec(antipode(a)) for a in basis]) if antipode else None
    return Bimonad.braided(name, mult, eta, comult, eps, s)


def sweedler(name: str = "sweedler") -> Bimonad:
    """Four-dimensional Hopf algebra on ``1, g, x, gx`` with ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``."""
    basis = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b

    def mul(p, q):
        a, b = p
        c, d = q
        if b + d > 1:
            return {}
        sign = -1 if (b and c) else 1
        return {((a + c) % 2, b + d): sign}

    def comul(p):
        a, b = p
        if b == 0:
            return {((a, 0), (a, 0)): 1}
        return {((a, 1), (a, 0)): 1, (((a + 1) % 2, 0), (a, 1)): 1}

    def antipode(p):
        a, b = p
        if b == 0:
            return {(a, 0): 1}
        return {((a + 1) % 2, 1): 1 if a else -1}

    return _structure(name, basis, mul, {(0, 0): 1}, comul, lambda p: 1 - p[1], antipode)


def group_algebra(group: FiniteGroup, name: str | None = None) -> Bimonad:
    basis = list(range(group.order))
    return _structure(
        name or f"Q[{group.name}]", basis,
        lambda a, b: {group.mul(a, b): 1},
        {group.unit: 1},
        lambda a: {(a, a): 1},
        lambda a: 1,
        lambda a: {group.inv(a): 1},
    )


def trivial_bimonad(name: str = "k") -> Bimonad:
    one = LinMap([[1]])
    return Bimonad(name, 1, one, one, one, one, one, one)


def sweedler_scaling(b: Bimonad, c, name: str | None = None) -> ZeroAutomorphism:
    """``x -> c x``, ``gx -> c gx`` on the Sweedler algebra."""
    c = Fraction(c)
    m = LinMap([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, c, 0], [0, 0, 0, c]])
    label = name or f"phi_{c}".replace("-", "neg").replace("/", "_")
    return zero_automorphism(b, m, label)


def sweedler_grouplike(b: Bimonad) -> LinMap:
    return LinMap.from_rows(b.dim, 1, {1: {0: 1}})


def square_of_antipode(b: Bimonad, name: str = "S2") -> ZeroAutomorphism:
    return zero_automorphism(b, compose(b.antipode, b.antipode), name)


def transport(b: Bimonad, iso: LinMap, name: str) -> tuple[Bimonad, AutFusion]:
    """Copy of ``b`` in a new basis together with the fusion map given by the change of basis."""
    t, ti = iso, inverse(iso)
    s = chain(t, b.antipode, ti) if b.antipode is not None else None
    copy = Bimonad(name, b.dim, chain(t, b.mult, kron(ti, ti)), compose(t, b.unit),
                   chain(kron(t, t), b.comult, ti), compose(b.counit, ti),
                   chain(kron(t, t), b.lam, kron(ti, ti)), s)
    return copy, AutFusion(b, copy, iso, f"{b.name}->{name}")


def inner_automorphism(b: Bimonad, group: FiniteGroup, g: int, name: str = "") -> ZeroAutomorphism:
    """Conjugation by the group element ``g`` on a group algebra."""
    cols = [{group.mul(group.mul(g, x), group.inv(g)): 1} for x in range(group.order)]
    return zero_automorphism(b, LinMap.from_columns(group.order, cols), name or f"inn{g}")


def adjoint_action(b: Bimonad) -> LinMap:
    """``h . x = h1 x S(h2)``."""
    n = b.dim
    return chain(b.mult, kron(b.mult, b.antipode), kron(identity(n), flip(n, n)), kron(b.comult, identity(n)))


def regular_action(b: Bimonad) -> LinMap:
    return b.mult


def twisted_coaction(b: Bimonad, g: LinMap) -> LinMap:
    """``x -> g x1 (x) x2``."""
    return compose(kron(b.left_mult(g), identity(b.dim)), b.comult)


def trivial_module(b: Bimonad) -> tuple[LinMap, LinMap]:
    """Action through the counit and coaction through the unit on a one-dimensional space."""
    return b.counit, b.unit


def yd_regular(b: Bimonad, name: str = "regular") -> GradedYDObject:
    """The algebra acting on itself by the adjoint action and coacting by its comultiplication."""
    e = b.identity_aut()
    return build_yd_from_action_coaction(b, b, adjoint_action(b), b.comult, e, e, name)


def yd_left_regular(b: Bimonad, name: str = "left-regular") -> GradedYDObject:
    """Left multiplication with the comultiplication as coaction; fails the YD condition."""
    e = b.identity_aut()
    return build_yd_from_action_coaction(b, b, b.mult, b.comult, e, e, name)


def yd_trivial(b: Bimonad, name: str = "trivial") -> GradedYDObject:
    e = b.identity_aut()
    act, coact = trivial_module(b)
    return build_yd_from_action_coaction(b, b, act, coact, e, e, name)
