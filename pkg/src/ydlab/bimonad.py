"""Bialgebras with a distributive law, their automorphisms and lambda families.

Maps follow the tensor convention of ``exactmat``. For a bimonad of
dimension n: ``mult`` is n x n^2, ``unit`` n x 1, ``comult`` n^2 x n,
``counit`` 1 x n and ``lam`` n^2 x n^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (ClosureTooLarge, DimensionMismatch, GroupMismatch, MalformedInput,
                     NotInvertible, PreconditionFailed)
from .exactmat import LinMap, chain, compose, eq, flip, identity, inverse, kron
from .groupsys import FiniteGroup, FusionMap
from .report import VerificationReport

DEFAULT_CAP = 10000


@dataclass(eq=False)
class Bimonad:
    name: str
    dim: int
    mult: LinMap
    unit: LinMap
    comult: LinMap
    counit: LinMap
    lam: LinMap
    antipode: LinMap | None = None
    _lambda_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.dim
        expected = {
            "mult": (self.mult, (n, n * n)),
            "unit": (self.unit, (n, 1)),
            "comult": (self.comult, (n * n, n)),
            "counit": (self.counit, (1, n)),
            "lambda": (self.lam, (n * n, n * n)),
        }
        if self.antipode is not None:
            expected["antipode"] = (self.antipode, (n, n))
        for label, (m, shape) in expected.items():
            if m.shape != shape:
                raise DimensionMismatch(f"{self.name}: {label} has shape {m.shape}, expected {shape}")

    @classmethod
    def braided(cls, name: str, mult: LinMap, unit: LinMap, comult: LinMap, counit: LinMap,
                antipode: LinMap | None = None) -> Bimonad:
        """Bimonad whose distributive law is the flip-induced one, h (x) k -> h1 k (x) h2."""
        n = mult.cod_dim
        lam = chain(kron(mult, identity(n)), kron(identity(n), flip(n, n)), kron(comult, identity(n)))
        return cls(name, n, mult, unit, comult, counit, lam, antipode)

    @property
    def id(self) -> LinMap:
        return identity(self.dim)

    def same_as(self, other: Bimonad) -> bool:
        if self is other:
            return True
        return (self.dim == other.dim and eq(self.mult, other.mult) and eq(self.unit, other.unit)
                and eq(self.comult, other.comult) and eq(self.counit, other.counit)
                and eq(self.lam, other.lam))

    def left_mult(self, element: LinMap) -> LinMap:
        """Left multiplication by an element given as an n x 1 column."""
        return compose(self.mult, kron(element, self.id))

    def identity_aut(self) -> ZeroAutomorphism:
        return ZeroAutomorphism(self, self.id, self.id, "id")

    def lambda_at(self, alpha: ZeroAutomorphism) -> LinMap:
        """The twisted law ``(alpha (x) id) . lam . (id (x) alpha^-1)``."""
        if not alpha.owner.same_as(self):
            raise GroupMismatch(f"automorphism {alpha.name} does not belong to {self.name}")
        key = alpha.map.key()
        if key not in self._lambda_cache:
            self._lambda_cache[key] = chain(kron(alpha.map, self.id), self.lam, kron(self.id, alpha.inverse))
        return self._lambda_cache[key]

    def __repr__(self) -> str:
        return f"Bimonad({self.name!r}, dim={self.dim})"


@dataclass(eq=False)
class ZeroAutomorphism:
    owner: Bimonad
    map: LinMap
    inverse: LinMap
    name: str = ""

    def __post_init__(self):
        n = self.owner.dim
        if self.map.shape != (n, n) or self.inverse.shape != (n, n):
            raise DimensionMismatch(f"automorphism of {self.owner.name} must be {n}x{n}")

    @classmethod
    def of(cls, owner: Bimonad, m: LinMap, name: str = "") -> ZeroAutomorphism:
        try:
            inv = inverse(m)
        except NotInvertible:
            raise PreconditionFailed("invertible", f"{name or 'map'} is singular") from None
        return cls(owner, m, inv, name)

    def __mul__(self, other: ZeroAutomorphism) -> ZeroAutomorphism:
        """``self * other`` is the composite that applies ``other`` first."""
        if not self.owner.same_as(other.owner):
            raise GroupMismatch("automorphisms of different bimonads cannot be multiplied")
        name = f"{self.name}.{other.name}" if self.name and other.name else ""
        if self.name == "id":
            name = other.name
        elif other.name == "id":
            name = self.name
        out = ZeroAutomorphism(self.owner, compose(self.map, other.map),
                               compose(other.inverse, self.inverse), name)
        if out.is_identity():
            out.name = "id"
        return out

    def inv(self) -> ZeroAutomorphism:
        if self.name == "id" or eq(self.map, self.inverse):
            name = self.name
        else:
            name = f"{self.name}^-1" if self.name else ""
        return ZeroAutomorphism(self.owner, self.inverse, self.map, name)

    def is_identity(self) -> bool:
        return eq(self.map, identity(self.owner.dim))

    def key(self):
        return self.map.key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZeroAutomorphism):
            return NotImplemented
        return self.owner.same_as(other.owner) and eq(self.map, other.map)

    def __hash__(self) -> int:
        return hash(self.map.key())

    def __repr__(self) -> str:
        return f"ZeroAutomorphism({self.name or '?'} of {self.owner.name})"


def _as_map(a) -> LinMap:
    return a.map if isinstance(a, ZeroAutomorphism) else a


# Distributive-law checks shared with the graded-object module.

def check_monadic_law(report: VerificationReport, top: Bimonad, bottom: Bimonad,
                      psi: LinMap, xdim: int, prefix: str = "monadic-dl") -> None:
    """``psi: top (x) X -> X (x) bottom`` respects multiplication and unit."""
    n1, n, m = top.dim, bottom.dim, xdim
    if psi.shape != (m * n, n1 * m):
        raise DimensionMismatch(f"psi has shape {psi.shape}, expected {(m * n, n1 * m)}")
    lhs = chain(kron(identity(m), bottom.mult), kron(psi, identity(n)), kron(identity(n1), psi))
    rhs = compose(psi, kron(top.mult, identity(m)))
    report.add_equal(f"{prefix}-mult", lhs, rhs)
    report.add_equal(f"{prefix}-unit", compose(psi, kron(top.unit, identity(m))),
                     kron(identity(m), bottom.unit))


def check_comonadic_law(report: VerificationReport, top: Bimonad, bottom: Bimonad,
                        phi: LinMap, xdim: int, prefix: str = "comonadic-dl") -> None:
    """``phi: X (x) bottom -> top (x) X`` respects comultiplication and counit."""
    n1, n, m = top.dim, bottom.dim, xdim
    if phi.shape != (n1 * m, m * n):
        raise DimensionMismatch(f"phi has shape {phi.shape}, expected {(n1 * m, m * n)}")
    lhs = chain(kron(identity(n1), phi), kron(phi, identity(n)), kron(identity(m), bottom.comult))
    rhs = compose(kron(top.comult, identity(m)), phi)
    report.add_equal(f"{prefix}-comult", lhs, rhs)
    report.add_equal(f"{prefix}-counit", compose(kron(top.counit, identity(m)), phi),
                     kron(identity(m), bottom.counit))


def verify_bimonad(b: Bimonad) -> VerificationReport:
    report = VerificationReport(f"bimonad {b.name}")
    n, I = b.dim, b.id
    mu, eta, delta, eps = b.mult, b.unit, b.comult, b.counit
    with report.timed():
        report.add_equal("mult-assoc", compose(mu, kron(mu, I)), compose(mu, kron(I, mu)))
        report.add_equal("unit-left", compose(mu, kron(eta, I)), I)
        report.add_equal("unit-right", compose(mu, kron(I, eta)), I)
        report.add_equal("comult-coassoc", compose(kron(delta, I), delta), compose(kron(I, delta), delta))
        report.add_equal("counit-left", compose(kron(eps, I), delta), I)
        report.add_equal("counit-right", compose(kron(I, eps), delta), I)
        report.add_equal("mult-comult-compat", compose(delta, mu),
                         chain(kron(I, mu), kron(b.lam, I), kron(I, delta)))
        report.add_equal("counit-mult", kron(eps, eps), compose(eps, mu))
        report.add_equal("unit-comult", kron(eta, eta), compose(delta, eta))
        report.add_equal("counit-unit", compose(eps, eta), identity(1))
        check_monadic_law(report, b, b, b.lam, n)
        check_comonadic_law(report, b, b, b.lam, n)
        if b.antipode is not None:
            s = b.antipode
            unit_counit = compose(eta, eps)
            report.add_equal("antipode-left", chain(mu, kron(s, I), delta), unit_counit)
            report.add_equal("antipode-right", chain(mu, kron(I, s), delta), unit_counit)
    return report


def braided_lambda(b: Bimonad, alpha) -> LinMap:
    """``(mult (x) id) . (alpha (x) flip) . (comult (x) id)``: h (x) k -> alpha(h1) k (x) h2."""
    a = _as_map(alpha)
    n = b.dim
    if a.shape != (n, n):
        raise DimensionMismatch(f"alpha must be {n}x{n}")
    return chain(kron(b.mult, identity(n)), kron(a, flip(n, n)), kron(b.comult, identity(n)))


def check_tau(b: Bimonad, tau: LinMap) -> VerificationReport:
    rep = VerificationReport(f"tau on {b.name}")
    check_monadic_law(rep, b, b, tau, b.dim, "tau-monadic")
    check_comonadic_law(rep, b, b, tau, b.dim, "tau-comonadic")
    return rep


def lambda_from_tau(b: Bimonad, tau: LinMap, alpha, checked: bool = True) -> LinMap:
    """``(mult (x) id) . (alpha (x) tau) . (comult (x) id)``.

    ``alpha`` may be any n x n map; the convolution identities use non-invertible ones.
    """
    n = b.dim
    if tau.shape != (n * n, n * n):
        raise DimensionMismatch(f"tau must be {n * n}x{n * n}")
    if checked:
        rep = check_tau(b, tau)
        if not rep.passed:
            raise PreconditionFailed(rep.failed_labels[0], "tau is not a distributive law")
    a = _as_map(alpha)
    return chain(kron(b.mult, identity(n)), kron(a, tau), kron(b.comult, identity(n)))


def verify_zero_automorphism(b: Bimonad, m: LinMap, name: str = "") -> VerificationReport:
    n, I = b.dim, b.id
    if m.shape != (n, n):
        raise MalformedInput(f"automorphism of {b.name} must be {n}x{n}, got {m.shape}")
    report = VerificationReport(f"automorphism {name or '?'} of {b.name}")
    with report.timed():
        try:
            mi = inverse(m)
            report.add("invertible", True)
        except NotInvertible:
            mi = None
            report.add("invertible", False, {"detail": "singular matrix"})
        report.add_equal("alg-m-mult", compose(m, b.mult), compose(b.mult, kron(m, m)))
        report.add_equal("alg-m-unit", compose(m, b.unit), b.unit)
        report.add_equal("coalg-m-comult", compose(b.comult, m), compose(kron(m, m), b.comult))
        report.add_equal("coalg-m-counit", compose(b.counit, m), b.counit)
        if mi is None:
            report.add("yd-cond", False, {"detail": "needs an invertible map"})
        else:
            report.add_equal("yd-cond", chain(kron(mi, I), b.lam, kron(m, I)),
                             chain(kron(I, m), b.lam, kron(I, mi)))
    return report


def zero_automorphism(b: Bimonad, m: LinMap, name: str = "") -> ZeroAutomorphism:
    """Verified constructor; raises PreconditionFailed naming the first violated identity."""
    rep = verify_zero_automorphism(b, m, name)
    if not rep.passed:
        raise PreconditionFailed(rep.failed_labels[0], f"{name or 'map'} is not a 0-automorphism")
    return ZeroAutomorphism(b, m, inverse(m), name)


def group_closure(b: Bimonad, gens: Sequence, cap: int = DEFAULT_CAP) -> list[ZeroAutomorphism]:
    """Closure of ``gens`` and their inverses under composition, identity first."""
    auts = []
    for k, g in enumerate(gens):
        if isinstance(g, ZeroAutomorphism):
            g_map, g_name = g.map, g.name
        else:
            g_map, g_name = g, f"g{k}"
        auts.append(zero_automorphism(b, g_map, g_name))
    steps = auts + [a.inv() for a in auts]
    ident = b.identity_aut()
    seen = {ident.key(): ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in steps:
                y = s * x
                k = y.key()
                if k not in seen:
                    if len(order) >= cap:
                        raise ClosureTooLarge(f"closure exceeds {cap} elements")
                    seen[k] = y
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return order


@dataclass(eq=False)
class AutGroup:
    """A finite working set of 0-automorphisms together with its Cayley table.

    Element ``i`` of ``group`` is ``elements[i]``; this indexing is the bridge
    between matrix-level gradings and the table-level pair groups.
    """

    owner: Bimonad
    elements: list[ZeroAutomorphism]
    group: FiniteGroup

    @classmethod
    def closure(cls, b: Bimonad, gens: Sequence, cap: int = DEFAULT_CAP, name: str = "") -> AutGroup:
        elems = group_closure(b, gens, cap)
        return cls.from_elements(b, elems, name)

    @classmethod
    def from_elements(cls, b: Bimonad, elems: Sequence[ZeroAutomorphism], name: str = "") -> AutGroup:
        index = {a.key(): i for i, a in enumerate(elems)}
        table = []
        for x in elems:
            row = []
            for y in elems:
                k = (x * y).key()
                if k not in index:
                    raise PreconditionFailed("closure", "working set is not closed under composition")
                row.append(index[k])
            table.append(row)
        return cls(b, list(elems), FiniteGroup(table, name=name or f"Aut({b.name})"))

    def index(self, a: ZeroAutomorphism) -> int:
        for i, x in enumerate(self.elements):
            if eq(x.map, a.map):
                return i
        raise GroupMismatch(f"{a.name or 'automorphism'} is not in the working set")

    def __getitem__(self, i: int) -> ZeroAutomorphism:
        return self.elements[i]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


class AutFusion:
    """Fusion map between automorphism groups induced by a bialgebra isomorphism.

    With ``iso: source -> target`` the map is ``a -> iso . a . iso^-1``; the
    identity fusion of a bimonad uses ``iso = None``.
    """

    def __init__(self, source: Bimonad, target: Bimonad, iso: LinMap | None = None, name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        if iso is None:
            if not source.same_as(target):
                raise GroupMismatch("identity fusion needs identical bimonads")
            self.iso = self.iso_inv = None
        else:
            if iso.shape != (target.dim, source.dim):
                raise DimensionMismatch(f"fusion isomorphism must be {target.dim}x{source.dim}")
            self.iso = iso
            self.iso_inv = inverse(iso)

    @classmethod
    def identity(cls, b: Bimonad) -> AutFusion:
        return cls(b, b, None, "identity")

    def __call__(self, a: ZeroAutomorphism) -> ZeroAutomorphism:
        if not a.owner.same_as(self.source):
            raise GroupMismatch(f"{a.name or 'automorphism'} is not an automorphism of {self.source.name}")
        if self.iso is None:
            return a
        return ZeroAutomorphism(self.target, chain(self.iso, a.map, self.iso_inv),
                                chain(self.iso, a.inverse, self.iso_inv), a.name)

    def inv(self, a: ZeroAutomorphism) -> ZeroAutomorphism:
        if not a.owner.same_as(self.target):
            raise GroupMismatch(f"{a.name or 'automorphism'} is not an automorphism of {self.target.name}")
        if self.iso is None:
            return a
        return ZeroAutomorphism(self.source, chain(self.iso_inv, a.map, self.iso),
                                chain(self.iso_inv, a.inverse, self.iso), a.name)

    def inverse(self) -> AutFusion:
        if self.iso is None:
            return self
        return AutFusion(self.target, self.source, self.iso_inv, f"{self.name}^-1")

    def then(self, other: AutFusion) -> AutFusion:
        """The composite ``other . self``."""
        if not other.source.same_as(self.target):
            raise GroupMismatch("fusion maps are not composable")
        if self.iso is None and other.iso is None:
            return AutFusion.identity(self.source)
        a = self.iso if self.iso is not None else identity(self.source.dim)
        b = other.iso if other.iso is not None else identity(other.target.dim)
        return AutFusion(self.source, other.target, compose(b, a), f"{other.name}.{self.name}")

    def table(self, src: AutGroup, dst: AutGroup) -> FusionMap:
        """The induced map between working-set Cayley tables."""
        return FusionMap(src.group, dst.group, [dst.index(self(a)) for a in src])

    def __repr__(self) -> str:
        return f"AutFusion({self.source.name} -> {self.target.name})"


def verify_fusion(j: AutFusion) -> VerificationReport:
    """The isomorphism must be a bialgebra map intertwining the distributive laws."""
    rep = VerificationReport(f"fusion {j.name or '?'} {j.source.name} -> {j.target.name}")
    with rep.timed():
        if j.iso is None:
            rep.add("identity", True)
            return rep
        t, s, d = j.iso, j.source, j.target
        rep.add_equal("iso-mult", compose(t, s.mult), compose(d.mult, kron(t, t)))
        rep.add_equal("iso-unit", compose(t, s.unit), d.unit)
        rep.add_equal("iso-comult", compose(d.comult, t), compose(kron(t, t), s.comult))
        rep.add_equal("iso-counit", compose(d.counit, t), s.counit)
        rep.add_equal("iso-lambda", compose(kron(t, t), s.lam), compose(d.lam, kron(t, t)))
    return rep


class LambdaFamily:
    """Twisted distributive laws ``lam_a`` indexed by a finite automorphism set."""

    def __init__(self, owner: Bimonad, members: Iterable[tuple[ZeroAutomorphism, LinMap]]):
        self.owner = owner
        self._members: dict = {}
        self._auts: dict = {}
        for a, lam in members:
            if not a.owner.same_as(owner):
                raise GroupMismatch(f"{a.name} is not an automorphism of {owner.name}")
            self._members[a.key()] = lam
            self._auts[a.key()] = a

    @classmethod
    def conjugated(cls, b: Bimonad, auts: Iterable[ZeroAutomorphism]) -> LambdaFamily:
        return cls(b, [(a, b.lambda_at(a)) for a in auts])

    @classmethod
    def braided(cls, b: Bimonad, auts: Iterable[ZeroAutomorphism]) -> LambdaFamily:
        return cls(b, [(a, braided_lambda(b, a)) for a in auts])

    def replace(self, a: ZeroAutomorphism, lam: LinMap) -> LambdaFamily:
        members = [(x, self._members[k]) for k, x in self._auts.items()]
        return LambdaFamily(self.owner, [(x, lam if eq(x.map, a.map) else m) for x, m in members])

    def __getitem__(self, a: ZeroAutomorphism) -> LinMap:
        try:
            return self._members[a.key()]
        except KeyError:
            raise PreconditionFailed("closure", f"{a.name or 'automorphism'} is not in the family") from None

    def __contains__(self, a: ZeroAutomorphism) -> bool:
        return a.key() in self._members

    @property
    def auts(self) -> list[ZeroAutomorphism]:
        return list(self._auts.values())


def verify_lambda_consequences(fam: LambdaFamily) -> VerificationReport:
    """Check the identities that follow from the twisted family for every pair in the set."""
    b = fam.owner
    n, I = b.dim, b.id
    auts = fam.auts
    report = VerificationReport(f"lambda family of {b.name}")
    ident = [a for a in auts if a.is_identity()]
    if not ident:
        raise PreconditionFailed("closure", "the family has no member at the identity")
    for a in auts:
        for c in auts:
            for needed in (a.inv(), a * c, a.inv() * c):
                if needed not in fam:
                    raise PreconditionFailed("closure", "automorphism set is not closed under the products used")
    lam = fam[ident[0]]
    if not eq(lam, b.lam):
        report.notes.append("member at the identity differs from the bimonad's own law")

    def K(x, y):
        return kron(x, y)

    labels = ["l1", "l2", "l3", "l4", "l3-shifted", "l3-shifted-dual",
              "l5", "l6", "l7", "l8", "lambda-alpha-beta", "member-distributive-laws"]
    first_fail: dict[str, dict] = {}

    def test(label, lhs, rhs, a, c=None):
        if label in first_fail:
            return
        probe = VerificationReport("")
        probe.add_equal(label, lhs, rhs)
        if not probe.passed:
            ce = dict(probe.checks[0].counterexample)
            ce["alpha"] = a.name
            if c is not None:
                ce["beta"] = c.name
            first_fail[label] = ce

    with report.timed():
        for a in auts:
            A, Ai = a.map, a.inverse
            la = fam[a]
            test("l1", la, chain(K(A, I), lam, K(I, Ai)), a)
            test("l2", la, chain(K(I, Ai), lam, K(A, I)), a)
            test("l5", compose(lam, K(A, I)), compose(K(I, A), la), a)
            test("l6", compose(la, K(Ai, I)), compose(K(I, Ai), lam), a)
            test("l7", compose(lam, K(I, Ai)), compose(K(Ai, I), la), a)
            if "member-distributive-laws" not in first_fail:
                probe = VerificationReport("")
                check_monadic_law(probe, b, b, la, n)
                check_comonadic_law(probe, b, b, la, n)
                if not probe.passed:
                    bad = next(c for c in probe.checks if not c.passed)
                    first_fail["member-distributive-laws"] = dict(bad.counterexample, alpha=a.name,
                                                                  identity=bad.label)
            for c in auts:
                B, Bi = c.map, c.inverse
                lb, lab = fam[c], fam[a * c]
                test("l3", lab, chain(K(A, I), lb, K(I, Ai)), a, c)
                test("l4", lab, chain(K(I, Bi), la, K(B, I)), a, c)
                test("l3-shifted", compose(K(I, B), lab), compose(la, K(B, I)), a, c)
                test("l3-shifted-dual", compose(lab, K(I, A)), compose(K(A, I), lb), a, c)
                aib = (a.inv() * c).map
                test("l8", compose(la, K(aib, I)), compose(K(I, aib), lb), a, c)
                test("lambda-alpha-beta", lab, chain(K(A, Bi), lam, K(B, Ai)), a, c)
        for label in labels:
            report.add(label, label not in first_fail, first_fail.get(label))
    return report
