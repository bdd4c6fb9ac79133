"""Graded Yetter-Drinfeld objects between bimonads.

An object from ``F`` (the source, dimension n) to ``F'`` (the target,
dimension n') has a carrier of dimension m and two structure maps::

    psi: F' (x) X -> X (x) F      (m*n) x (n'*m)
    phi: X (x) F  -> F' (x) X     (n'*m) x (m*n)

It is graded by ``alpha`` in Aut(F') and ``beta`` in Aut(F). Index-level
example for F = F' and m = 1: ``psi`` is an n x n matrix whose column ``h``
holds the image of ``e_h (x) 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

from .bimonad import (AutFusion, Bimonad, ZeroAutomorphism, check_comonadic_law,
                      check_monadic_law)
from .errors import DimensionMismatch, GradingMismatch, GroupMismatch, PreconditionFailed
from .exactmat import LinMap, chain, compose, eq, flip, identity, inverse, kron
from .report import VerificationReport


@dataclass(eq=False)
class GradedYDObject:
    source: Bimonad
    target: Bimonad
    xdim: int
    psi: LinMap
    phi: LinMap
    alpha: ZeroAutomorphism
    beta: ZeroAutomorphism
    name: str = ""

    def __post_init__(self):
        n1, n, m = self.target.dim, self.source.dim, self.xdim
        if self.psi.shape != (m * n, n1 * m):
            raise DimensionMismatch(f"psi has shape {self.psi.shape}, expected {(m * n, n1 * m)}")
        if self.phi.shape != (n1 * m, m * n):
            raise DimensionMismatch(f"phi has shape {self.phi.shape}, expected {(n1 * m, m * n)}")
        if not self.alpha.owner.same_as(self.target):
            raise GroupMismatch(f"alpha must be an automorphism of the target {self.target.name}")
        if not self.beta.owner.same_as(self.source):
            raise GroupMismatch(f"beta must be an automorphism of the source {self.source.name}")

    @property
    def grading(self) -> tuple[ZeroAutomorphism, ZeroAutomorphism]:
        return self.alpha, self.beta

    def grading_label(self) -> str:
        return f"({self.alpha.name or '?'}, {self.beta.name or '?'})"

    def regraded(self, alpha: ZeroAutomorphism, beta: ZeroAutomorphism) -> GradedYDObject:
        return replace(self, alpha=alpha, beta=beta)

    def same_as(self, other: GradedYDObject) -> bool:
        """Component-exact equality: carrier, both maps and both grading automorphisms."""
        return (self.xdim == other.xdim and self.source.same_as(other.source)
                and self.target.same_as(other.target) and eq(self.psi, other.psi)
                and eq(self.phi, other.phi) and eq(self.alpha.map, other.alpha.map)
                and eq(self.beta.map, other.beta.map))

    def __repr__(self) -> str:
        return (f"GradedYDObject({self.name or '?'}: {self.source.name} -> {self.target.name}, "
                f"dim {self.xdim}, grading {self.grading_label()})")


@dataclass(eq=False)
class YDMorphism:
    src: GradedYDObject
    dst: GradedYDObject
    map: LinMap


def twisted_yd_sides(obj: GradedYDObject, alpha: ZeroAutomorphism | None = None,
                     beta: ZeroAutomorphism | None = None) -> tuple[LinMap, LinMap]:
    """Both sides of the twisted compatibility as maps F' (x) X (x) F -> F' (x) X (x) F."""
    alpha = obj.alpha if alpha is None else alpha
    beta = obj.beta if beta is None else beta
    F, F1, m = obj.source, obj.target, obj.xdim
    lam_b = F.lambda_at(beta)
    lam_a = F1.lambda_at(alpha)
    lhs = chain(kron(obj.phi, F.id), kron(identity(m), lam_b), kron(obj.psi, F.id))
    rhs = chain(kron(F1.id, obj.psi), kron(lam_a, identity(m)), kron(F1.id, obj.phi))
    return lhs, rhs


def verify_yd(obj: GradedYDObject, alpha: ZeroAutomorphism | None = None,
              beta: ZeroAutomorphism | None = None) -> VerificationReport:
    """The two distributive laws for each structure map and the twisted compatibility."""
    alpha = obj.alpha if alpha is None else alpha
    beta = obj.beta if beta is None else beta
    report = VerificationReport(
        f"object {obj.name or '?'} at ({alpha.name or '?'}, {beta.name or '?'})")
    with report.timed():
        check_monadic_law(report, obj.target, obj.source, obj.psi, obj.xdim)
        check_comonadic_law(report, obj.target, obj.source, obj.phi, obj.xdim)
        lhs, rhs = twisted_yd_sides(obj, alpha, beta)
        report.add_equal("twisted-YD", lhs, rhs)
    return report


def psi_from_action(F1: Bimonad, action: LinMap, m: int) -> LinMap:
    """``psi(h (x) x) = h1 . x (x) h2``."""
    n1 = F1.dim
    return chain(kron(action, identity(n1)), kron(identity(n1), flip(n1, m)), kron(F1.comult, identity(m)))


def phi_from_coaction(F1: Bimonad, coaction: LinMap, m: int) -> LinMap:
    """``phi(x (x) h) = x(-1) h (x) x(0)``."""
    n1 = F1.dim
    return chain(kron(F1.mult, identity(m)), kron(identity(n1), flip(m, n1)), kron(coaction, identity(n1)))


def check_module(F1: Bimonad, action: LinMap, coaction: LinMap, m: int) -> VerificationReport:
    n1 = F1.dim
    if action.shape != (m, n1 * m):
        raise DimensionMismatch(f"action must be {m}x{n1 * m}, got {action.shape}")
    if coaction.shape != (n1 * m, m):
        raise DimensionMismatch(f"coaction must be {n1 * m}x{m}, got {coaction.shape}")
    rep = VerificationReport("module and comodule")
    I = identity(m)
    rep.add_equal("action-assoc", compose(action, kron(F1.mult, I)),
                  compose(action, kron(F1.id, action)))
    rep.add_equal("action-unit", compose(action, kron(F1.unit, I)), I)
    rep.add_equal("coaction-coassoc", compose(kron(F1.comult, I), coaction),
                  compose(kron(F1.id, coaction), coaction))
    rep.add_equal("coaction-counit", compose(kron(F1.counit, I), coaction), I)
    return rep


def build_yd_from_action_coaction(target: Bimonad, source: Bimonad, action: LinMap, coaction: LinMap,
                                  alpha: ZeroAutomorphism, beta: ZeroAutomorphism,
                                  name: str = "") -> GradedYDObject:
    """Structure maps from a module and comodule over the target.

    The source must have the same underlying space as the target (the
    comultiplication leg lands in it unchanged). The grading is recorded but
    not asserted.
    """
    if source.dim != target.dim:
        raise PreconditionFailed("same-space", "source and target must share the underlying space")
    m = action.cod_dim
    rep = check_module(target, action, coaction, m)
    if not rep.passed:
        raise PreconditionFailed(rep.failed_labels[0], "not a module and comodule")
    return GradedYDObject(source, target, m, psi_from_action(target, action, m),
                          phi_from_coaction(target, coaction, m), alpha, beta, name)


def action_of(obj: GradedYDObject) -> LinMap:
    """Recover ``h . x = (id (x) counit) psi(h (x) x)``."""
    return compose(kron(identity(obj.xdim), obj.source.counit), obj.psi)


def coaction_of(obj: GradedYDObject) -> LinMap:
    """Recover ``x -> phi(x (x) 1)``."""
    return compose(obj.phi, kron(identity(obj.xdim), obj.source.unit))


def classify_grading(obj: GradedYDObject,
                     pool: Iterable[tuple[ZeroAutomorphism, ZeroAutomorphism]]) -> list:
    """All gradings in ``pool`` at which the twisted compatibility holds exactly."""
    hits = []
    for alpha, beta in pool:
        lhs, rhs = twisted_yd_sides(obj, alpha, beta)
        if eq(lhs, rhs):
            hits.append((alpha, beta))
    return hits


def _fusion(obj: GradedYDObject, j: AutFusion | None) -> AutFusion:
    if j is None:
        return AutFusion.identity(obj.source)
    if not (j.source.same_as(obj.source) and j.target.same_as(obj.target)):
        raise GroupMismatch(f"fusion {j.name} does not run from {obj.source.name} to {obj.target.name}")
    return j


def twist_psi(obj: GradedYDObject, mode: str, aut: ZeroAutomorphism, j: AutFusion | None = None) -> LinMap:
    """Twist ``psi`` by an automorphism of the source (``mode='source'``) or target."""
    j = _fusion(obj, j)
    m = obj.xdim
    if mode == "source":
        if not aut.owner.same_as(obj.source):
            raise GroupMismatch("source-mode twist needs an automorphism of the source")
        return chain(kron(identity(m), aut.inverse), obj.psi, kron(j(aut).map, identity(m)))
    if mode == "target":
        if not aut.owner.same_as(obj.target):
            raise GroupMismatch("target-mode twist needs an automorphism of the target")
        return chain(kron(identity(m), j.inv(aut.inv()).map), obj.psi, kron(aut.map, identity(m)))
    raise ValueError(f"mode must be 'source' or 'target', not {mode!r}")


def identity_cell(F: Bimonad) -> GradedYDObject:
    """The unit object: one-dimensional carrier, both structure maps the identity."""
    e = F.identity_aut()
    return GradedYDObject(F, F, 1, F.id, F.id, e, e, "unit")


def fusion_cell(j: AutFusion) -> GradedYDObject:
    """One-dimensional object from ``j.source`` to ``j.target`` carried by the fusion isomorphism."""
    if j.iso is None:
        return identity_cell(j.source)
    return GradedYDObject(j.source, j.target, 1, j.iso_inv, j.iso,
                          j.target.identity_aut(), j.source.identity_aut(), f"cell[{j.name}]")


def composite_grading(x: GradedYDObject, y: GradedYDObject, jy: AutFusion, jx: AutFusion):
    """``(a, b) * (c, d) = (a . jx(c), d . jy^-1(c^-1 b c))``."""
    a, b, c, d = x.alpha, x.beta, y.alpha, y.beta
    return a * jx(c), d * jy.inv(c.inv() * b * c)


def compose_yd(x: GradedYDObject, y: GradedYDObject, jy: AutFusion | None = None,
               jx: AutFusion | None = None, name: str = "") -> GradedYDObject:
    """The object ``X.Y`` from ``y.source`` to ``x.target``; ``X`` is the slower tensor factor."""
    if not x.source.same_as(y.target):
        raise GroupMismatch(f"cannot compose: {x.source.name} is not {y.target.name}")
    jy = _fusion(y, jy)
    jx = _fusion(x, jx)
    gamma, beta = y.alpha, x.beta
    mx, my = x.xdim, y.xdim
    psi_x = twist_psi(x, "source", gamma, jx)
    psi_y = twist_psi(y, "target", gamma.inv() * beta * gamma, jy)
    psi = compose(kron(identity(mx), psi_y), kron(psi_x, identity(my)))
    phi = compose(kron(x.phi, identity(my)), kron(identity(mx), y.phi))
    alpha2, beta2 = composite_grading(x, y, jy, jx)
    return GradedYDObject(y.source, x.target, mx * my, psi, phi, alpha2, beta2,
                          name or f"{x.name or '?'}.{y.name or '?'}")


def conjugate_pair(a: ZeroAutomorphism, b: ZeroAutomorphism, c: ZeroAutomorphism,
                   d: ZeroAutomorphism, j: AutFusion):
    """``(a, b) * (c, d) * (a, b)^-1`` in closed form."""
    ji = j.inv
    left = a * c * a.inv()
    right = ji(a) * b.inv() * d * ji(c.inv()) * b * ji(c * a.inv())
    return left, right


def apply_phi(pair: tuple[ZeroAutomorphism, ZeroAutomorphism], obj: GradedYDObject,
              j: AutFusion | None = None) -> GradedYDObject:
    """The twisting functor for ``pair = (a, b)`` in Aut(target) x Aut(source)."""
    j = _fusion(obj, j)
    a, b = pair
    if not a.owner.same_as(obj.target) or not b.owner.same_as(obj.source):
        raise GroupMismatch("pair must lie in Aut(target) x Aut(source)")
    c = obj.alpha
    twist = c.inv() * j(b) * c * a.inv()
    psi = twist_psi(obj, "target", twist, j)
    B = b * j.inv(a.inv())
    m = obj.xdim
    phi = chain(kron(j(B.inv()).map, identity(m)), obj.phi, kron(identity(m), B.map))
    left, right = conjugate_pair(a, b, obj.alpha, obj.beta, j)
    return GradedYDObject(obj.source, obj.target, m, psi, phi, left, right, obj.name)


def pair_mul(p, q, j: AutFusion):
    """Product in Aut(F') x Aut(F): ``(a, b)(c, d) = (ac, d j^-1(c^-1) b j^-1(c))``."""
    a, b = p
    c, d = q
    return a * c, d * j.inv(c.inv()) * b * j.inv(c)


def pair_inv(p, j: AutFusion):
    a, b = p
    return a.inv(), j.inv(a) * b.inv() * j.inv(a.inv())


def default_projection(pair, jy: AutFusion, jx: AutFusion):
    mu, nu = pair
    return (mu, jy(nu)), (jx.inv(mu), nu)


def _compare_objects(report: VerificationReport, prefix: str, lhs: GradedYDObject, rhs: GradedYDObject):
    if lhs.xdim != rhs.xdim:
        report.add(f"{prefix}-carrier", False, {"lhs": lhs.xdim, "rhs": rhs.xdim})
        return
    report.add_equal(f"{prefix}-psi", lhs.psi, rhs.psi)
    report.add_equal(f"{prefix}-phi", lhs.phi, rhs.phi)
    report.add_equal(f"{prefix}-alpha", lhs.alpha.map, rhs.alpha.map)
    report.add_equal(f"{prefix}-beta", lhs.beta.map, rhs.beta.map)


def verify_phi_monoidal(pair, x: GradedYDObject, y: GradedYDObject, jy: AutFusion | None = None,
                        jx: AutFusion | None = None,
                        projection: Callable | None = None) -> VerificationReport:
    """Twisting a composite equals composing the twisted factors with the split grading."""
    jy = _fusion(y, jy)
    jx = _fusion(x, jx)
    proj = projection or default_projection
    report = VerificationReport(f"monoidality on {x.name or '?'}.{y.name or '?'}")
    report.notes.append(f"fusions: {jy.name or 'identity'} then {jx.name or 'identity'}")
    with report.timed():
        whole = jy.then(jx)
        lhs = apply_phi(pair, compose_yd(x, y, jy, jx), whole)
        p1, p2 = proj(pair, jy, jx)
        rhs = compose_yd(apply_phi(p1, x, jx), apply_phi(p2, y, jy), jy, jx)
        _compare_objects(report, "monoidal", lhs, rhs)
    return report


def verify_morphism(z: YDMorphism) -> VerificationReport:
    src, dst = z.src, z.dst
    if not (eq(src.alpha.map, dst.alpha.map) and eq(src.beta.map, dst.beta.map)):
        raise GradingMismatch("morphism endpoints lie in different graded components")
    if not (src.source.same_as(dst.source) and src.target.same_as(dst.target)):
        raise GradingMismatch("morphism endpoints have different bimonads")
    if z.map.shape != (dst.xdim, src.xdim):
        raise DimensionMismatch(f"morphism must be {dst.xdim}x{src.xdim}")
    F, F1 = src.source, src.target
    report = VerificationReport(f"morphism {src.name or '?'} -> {dst.name or '?'}")
    with report.timed():
        report.add_equal("psi-natural", compose(kron(z.map, F.id), src.psi),
                         compose(dst.psi, kron(F1.id, z.map)))
        report.add_equal("phi-natural", compose(kron(F1.id, z.map), src.phi),
                         compose(dst.phi, kron(z.map, F.id)))
    return report


def underlying_restriction(objs: Sequence[GradedYDObject]) -> list[GradedYDObject]:
    """Keep only the objects graded by the identity pair."""
    return [o for o in objs if o.alpha.is_identity() and o.beta.is_identity()]


def braided_ab_sides(F: Bimonad, action: LinMap, coaction: LinMap, alpha, beta) -> tuple[LinMap, LinMap]:
    """``(h1.x)(-1) beta(h2) (x) (h1.x)(0)`` against ``alpha(h1) x(-1) (x) h2.x(0)``."""
    n, m = F.dim, action.cod_dim
    I, Im = F.id, identity(m)
    lhs = chain(kron(F.mult, Im), kron(I, flip(m, n)), kron(coaction, I), kron(Im, beta.map),
                kron(action, I), kron(I, flip(n, m)), kron(F.comult, Im))
    rhs = chain(kron(F.mult, action), kron(alpha.map, flip(n, n), Im), kron(F.comult, coaction))
    return lhs, rhs


def other_yd_sides(F: Bimonad, action: LinMap, coaction: LinMap, alpha, beta_conv_inv: LinMap):
    """``rho(h . x)`` against ``alpha(h1) x(-1) b(h3) (x) h2 . x(0)`` with ``b`` the convolution inverse of beta."""
    n, m = F.dim, action.cod_dim
    I, Im = F.id, identity(m)
    lhs = compose(coaction, action)
    # h -> h1 h2 h3, x -> x(-1) x(0)
    split = kron(compose(kron(I, F.comult), F.comult), coaction)
    # swap h2 and h3
    s1 = kron(I, flip(n, n), I, Im)
    # decorate h1 by alpha and h3 by the convolution inverse of beta
    s2 = kron(alpha.map, beta_conv_inv, I, I, Im)
    # move x(-1) left past h2, then past the decorated h3
    s3 = kron(I, I, flip(n, n), Im)
    s4 = kron(I, flip(n, n), I, Im)
    # multiply x(-1) b(h3), act with h2 on x(0), then multiply alpha(h1) in front
    s5 = kron(I, F.mult, action)
    s6 = kron(F.mult, Im)
    rhs = chain(s6, s5, s4, s3, s2, s1, split)
    return lhs, rhs


def verify_braided_ab_equivalence(F: Bimonad, action: LinMap, coaction: LinMap,
                                  alpha: ZeroAutomorphism, beta: ZeroAutomorphism,
                                  subject: str = "") -> VerificationReport:
    """Evaluate both module-level forms of the twisted compatibility and whether they agree."""
    from .involution import convolution_inverse

    m = action.cod_dim
    rep = check_module(F, action, coaction, m)
    if not rep.passed:
        raise PreconditionFailed(rep.failed_labels[0], "not a module and comodule")
    report = VerificationReport(subject or f"braided forms at ({alpha.name}, {beta.name})")
    with report.timed():
        l1, r1 = braided_ab_sides(F, action, coaction, alpha, beta)
        report.add_equal("braided-ab", l1, r1)
        l2, r2 = other_yd_sides(F, action, coaction, alpha, convolution_inverse(F, beta.map))
        report.add_equal("other-YD", l2, r2)
        a, b = report["braided-ab"].passed, report["other-YD"].passed
        report.add("agree", a == b, None if a == b else {"braided-ab": a, "other-YD": b})
    return report
