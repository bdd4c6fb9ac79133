"""Finite groups, fusion maps, pair groups and the transitive product.

A graded pair ``(left, right)`` lives in ``G' x G`` where a fusion map
``j: G -> G'`` links the two factors. Group elements are table indices.
All formulas are written against numpy index arrays so the same code serves
single elements and the exhaustive axiom sweeps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ClosureTooLarge, EmptyHom, GroupMismatch, MalformedInput
from .report import VerificationReport

EXHAUSTIVE_MAX_ORDER = 12
SAMPLE_COUNT = 1000


class FiniteGroup:
    """A group given by its Cayley table. Construction verifies the axioms."""

    def __init__(self, table, unit: int | None = None, name: str = ""):
        t = np.asarray(table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise MalformedInput(f"group table must be square and non-empty, got shape {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise MalformedInput("group table has entries outside the element range")
        if unit is None:
            rng = np.arange(n)
            units = [e for e in range(n) if (t[e] == rng).all() and (t[:, e] == rng).all()]
            if not units:
                raise MalformedInput("group table has no two-sided unit")
            unit = units[0]
        rng = np.arange(n)
        if not (0 <= unit < n) or not ((t[unit] == rng).all() and (t[:, unit] == rng).all()):
            raise MalformedInput(f"element {unit} is not a two-sided unit")
        inv = np.full(n, -1, dtype=np.int32)
        for a in range(n):
            hits = np.nonzero((t[a] == unit) & (t[:, a] == unit))[0]
            if len(hits) == 0:
                raise MalformedInput(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        lhs = t[t[:, :, None], rng[None, None, :]]
        rhs = t[rng[:, None, None], t[None, :, :]]
        if not (lhs == rhs).all():
            raise MalformedInput("group table is not associative")
        self.table = t
        self.table.setflags(write=False)
        self.flat = t.ravel().copy()
        self.flat.setflags(write=False)
        self.unit = int(unit)
        self.inverse = inv
        self.inverse.setflags(write=False)
        self.name = name

    @classmethod
    def unchecked(cls, table, unit: int, name: str = "") -> FiniteGroup:
        """Build without validating the axioms; the system verifier then judges it."""
        g = cls.__new__(cls)
        t = np.asarray(table, dtype=np.int32)
        n = t.shape[0]
        inv = np.zeros(n, dtype=np.int32)
        for a in range(n):
            hits = np.nonzero(t[a] == unit)[0]
            inv[a] = hits[0] if len(hits) else 0
        g.table, g.unit, g.inverse, g.name = t, int(unit), inv, name
        g.flat = t.ravel().copy()
        return g

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def check_element(self, a) -> None:
        if not (0 <= int(a) < self.order):
            raise GroupMismatch(f"{a} is not an element of {self.name or 'group'} of order {self.order}")

    def same_table(self, other: FiniteGroup) -> bool:
        return self.order == other.order and bool((self.table == other.table).all())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @classmethod
    def from_elements(cls, elements: Sequence, mul, name: str = "") -> FiniteGroup:
        """Tabulate a group from hashable elements and a multiplication function."""
        index = {e: i for i, e in enumerate(elements)}
        try:
            table = [[index[mul(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise MalformedInput(f"elements are not closed under multiplication: {exc}") from None
        return cls(table, name=name)

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name: str = "", cap: int = 10000) -> FiniteGroup:
        """Group generated by permutations (tuples of images); identity listed first."""
        gens = [tuple(g) for g in gens]
        n = len(gens[0]) if gens else 1
        ident = tuple(range(n))
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(n))
                    if q not in seen:
                        seen.add(q)
                        elems.append(q)
                        nxt.append(q)
                        if len(elems) > cap:
                            raise ClosureTooLarge(f"permutation group exceeds {cap} elements")
            frontier = nxt
        return cls.from_elements(elems, lambda p, q: tuple(p[q[i]] for i in range(n)), name)


def cyclic(n: int, name: str | None = None) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], 0, name or f"Z{n}")


def symmetric(n: int, name: str | None = None) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])] if n > 1 else [(0,)]
    return FiniteGroup.from_permutations(gens, name or f"S{n}")


def dihedral(n: int, name: str | None = None) -> FiniteGroup:
    """Symmetry group of the regular n-gon, of order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], name or f"D{n}")


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup([[0]], 0, name)


class FusionMap:
    """A group isomorphism ``source -> target`` given by its images."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]):
        if source.order != target.order:
            raise EmptyHom(
                f"{source.name} (order {source.order}) and {target.name} (order {target.order}) "
                "are not isomorphic; the pair group is trivial"
            )
        img = np.asarray(images, dtype=np.int32)
        if img.shape != (source.order,):
            raise MalformedInput(f"fusion map needs {source.order} images, got {img.shape}")
        if img.min() < 0 or img.max() >= target.order or len(set(img.tolist())) != source.order:
            raise GroupMismatch("fusion map images are not a bijection onto the target")
        if img[source.unit] != target.unit:
            raise GroupMismatch("fusion map does not send unit to unit")
        if not (img[source.table] == target.table[img[:, None], img[None, :]]).all():
            raise GroupMismatch("fusion map is not a homomorphism")
        back = np.empty_like(img)
        back[img] = np.arange(source.order)
        self.source = source
        self.target = target
        self.images = img
        self.back = back
        self.images.setflags(write=False)
        self.back.setflags(write=False)

    @classmethod
    def unchecked(cls, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> FusionMap:
        """Build without the bijection and homomorphism checks (for mutation tests)."""
        f = cls.__new__(cls)
        f.source, f.target = source, target
        f.images = np.asarray(images, dtype=np.int32)
        back = np.zeros(target.order, dtype=np.int32)
        back[f.images] = np.arange(source.order)
        f.back = back
        return f

    def __call__(self, a):
        return self.images[a]

    def inv(self, a):
        return self.back[a]

    def inverse(self) -> FusionMap:
        return FusionMap.unchecked(self.target, self.source, self.back)

    def then(self, other: FusionMap) -> FusionMap:
        """The composite ``other . self``."""
        if other.source is not self.target:
            raise GroupMismatch("fusion maps are not composable")
        return FusionMap.unchecked(self.source, other.target, other.images[self.images])

    @classmethod
    def identity(cls, group: FiniteGroup) -> FusionMap:
        return cls(group, group, np.arange(group.order))

    @classmethod
    def inner(cls, source: FiniteGroup, target: FiniteGroup, g: int) -> FusionMap:
        """``x -> g x g^-1`` between groups with identical tables."""
        if not source.same_table(target):
            raise GroupMismatch("inner fusion needs identical multiplication tables")
        t = source.table
        x = np.arange(source.order)
        return cls(source, target, t[t[g, x], source.inverse[g]])

    def __repr__(self) -> str:
        return f"FusionMap({self.source.name} -> {self.target.name})"


class GradedPair(NamedTuple):
    left: int
    right: int


def _check_pair(p, left: FiniteGroup, right: FiniteGroup) -> None:
    left.check_element(p[0])
    right.check_element(p[1])


# Array-level formulas. Arguments may be numpy arrays or scalars.

def _m(G: FiniteGroup, x, y):
    return np.take(G.flat, x * G.order + y)


def _pp(a, b, c, d, j: FusionMap):
    G1, G = j.target, j.source
    jb = j.back
    return _m(G1, a, c), _m(G, _m(G, _m(G, d, jb[G1.inverse[c]]), b), jb[c])


def _pinv(a, b, j: FusionMap):
    G1, G = j.target, j.source
    jb = j.back
    return G1.inverse[a], _m(G, _m(G, jb[a], G.inverse[b]), jb[G1.inverse[a]])


def _tp(a, b, c, d, j: FusionMap, j2: FusionMap):
    G1, G = j.target, j.source
    inner = _m(G1, _m(G1, G1.inverse[c], b), c)
    return _m(j2.target, a, j2.images[c]), _m(G, d, j.back[inner])


def _pi(a, b, j: FusionMap, j2: FusionMap):
    return (a, j.images[b]), (j2.back[a], b)


def _conj(a, b, c, d, j: FusionMap):
    G1, G = j.target, j.source
    ai, ci = G1.inverse[a], G1.inverse[c]
    jb = j.back
    left = _m(G1, _m(G1, a, c), ai)
    right = _m(G, _m(G, _m(G, _m(G, _m(G, jb[a], G.inverse[b]), d), jb[ci]), b), jb[_m(G1, c, ai)])
    return left, right


def _check_fusions(j: FusionMap, j2: FusionMap | None = None) -> None:
    if j2 is not None and j2.source is not j.target:
        raise GroupMismatch("middle groups of the two fusion maps differ")


def pair_product(p: GradedPair, q: GradedPair, j: FusionMap) -> GradedPair:
    """Product in ``G' x G`` twisted by the fusion map ``j: G -> G'``."""
    _check_pair(p, j.target, j.source)
    _check_pair(q, j.target, j.source)
    a, b = _pp(p[0], p[1], q[0], q[1], j)
    return GradedPair(int(a), int(b))


def pair_inverse(p: GradedPair, j: FusionMap) -> GradedPair:
    _check_pair(p, j.target, j.source)
    a, b = _pinv(p[0], p[1], j)
    return GradedPair(int(a), int(b))


def pair_unit(j: FusionMap) -> GradedPair:
    return GradedPair(j.target.unit, j.source.unit)


def transitive_product(p: GradedPair, q: GradedPair, j: FusionMap, j2: FusionMap) -> GradedPair:
    """``(G'' x G') x (G' x G) -> G'' x G`` for ``j: G -> G'`` and ``j2: G' -> G''``."""
    _check_fusions(j, j2)
    _check_pair(p, j2.target, j2.source)
    _check_pair(q, j.target, j.source)
    a, b = _tp(p[0], p[1], q[0], q[1], j, j2)
    return GradedPair(int(a), int(b))


def project_pi(p: GradedPair, j: FusionMap, j2: FusionMap) -> tuple[GradedPair, GradedPair]:
    _check_fusions(j, j2)
    _check_pair(p, j2.target, j.source)
    (a, b), (c, d) = _pi(p[0], p[1], j, j2)
    return GradedPair(int(a), int(b)), GradedPair(int(c), int(d))


def conjugate_grading(a: GradedPair, p: GradedPair, j: FusionMap) -> GradedPair:
    """``a * p * a^-1`` in closed form."""
    _check_pair(a, j.target, j.source)
    _check_pair(p, j.target, j.source)
    x, y = _conj(a[0], a[1], p[0], p[1], j)
    return GradedPair(int(x), int(y))


def pair_elements(j: FusionMap) -> list[GradedPair]:
    return [GradedPair(a, b) for a in range(j.target.order) for b in range(j.source.order)]


@dataclass
class GradedGroupSystem:
    """Groups ``G_0, ..., G_k`` linked by fusion maps ``G_i -> G_{i+1}``.

    The pair group for indices ``(a, b)`` is ``G_b x G_a`` with the fusion
    map from ``G_a`` to ``G_b`` obtained by composing (or inverting) the chain.
    """

    groups: list[FiniteGroup]
    fusions: list[FusionMap]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.groups:
            raise MalformedInput("a group system needs at least one group")
        if len(self.fusions) != len(self.groups) - 1:
            raise MalformedInput("need exactly one fusion map between consecutive groups")
        for i, f in enumerate(self.fusions):
            if f.source is not self.groups[i] or f.target is not self.groups[i + 1]:
                raise GroupMismatch(f"fusion map {i} does not connect groups {i} and {i + 1}")

    def fusion(self, a: int, b: int) -> FusionMap:
        key = (a, b)
        if key not in self._cache:
            if a == b:
                f = FusionMap.identity(self.groups[a])
            elif a < b:
                f = self.fusions[a]
                for k in range(a + 1, b):
                    f = f.then(self.fusions[k])
            else:
                f = self.fusion(b, a).inverse()
            self._cache[key] = f
        return self._cache[key]

    def max_order(self) -> int:
        return max(g.order for g in self.groups)


class _Encoded:
    """Pair groups and transitive products of a system as lookup tables.

    An element ``(x, y)`` of ``G_b x G_a`` is encoded as ``x * |G_a| + y``.
    """

    def __init__(self, sys: GradedGroupSystem):
        self.sys = sys
        self._pp: dict = {}
        self._tp: dict = {}

    def size(self, a, b):
        return self.sys.groups[a].order * self.sys.groups[b].order

    def split(self, a, p):
        n = self.sys.groups[a].order
        return p // n, p % n

    def join(self, a, x, y):
        return x * self.sys.groups[a].order + y

    def elements(self, a, b):
        return self.split(a, np.arange(self.size(a, b), dtype=np.int32))

    def pair(self, a, b):
        """(product table, inverse array, unit) for ``G_b x G_a``."""
        if (a, b) not in self._pp:
            j = self.sys.fusion(a, b)
            P = self.size(a, b)
            p, q = np.meshgrid(np.arange(P, dtype=np.int32), np.arange(P, dtype=np.int32), indexing="ij")
            prod = self.join(a, *_pp(*self.split(a, p.ravel()), *self.split(a, q.ravel()), j))
            inv = self.join(a, *_pinv(*self.elements(a, b), j))
            unit = self.join(a, *pair_unit(j))
            self._pp[(a, b)] = (prod.astype(np.int32), inv.astype(np.int32), int(unit))
        return self._pp[(a, b)]

    def trans(self, a, b, c):
        """Flat table of ``G_{b,c} x G_{a,b} -> G_{a,c}``."""
        if (a, b, c) not in self._tp:
            P, Q = self.size(b, c), self.size(a, b)
            p, q = np.meshgrid(np.arange(P, dtype=np.int32), np.arange(Q, dtype=np.int32), indexing="ij")
            r = _tp(*self.split(b, p.ravel()), *self.split(a, q.ravel()),
                    self.sys.fusion(a, b), self.sys.fusion(b, c))
            self._tp[(a, b, c)] = self.join(a, *r).astype(np.int32)
        return self._tp[(a, b, c)]

    def mul(self, a, b, x, y):
        return np.take(self.pair(a, b)[0], x * self.size(a, b) + y)

    def inv(self, a, b, x):
        return self.pair(a, b)[1][x]

    def tprod(self, a, b, c, x, y):
        return np.take(self.trans(a, b, c), x * self.size(a, b) + y)

    def pi(self, a, b, c, w):
        """Split ``w`` in ``G_{a,c}`` into its legs in ``G_{b,c}`` and ``G_{a,b}``."""
        (l1, r1), (l2, r2) = _pi(*self.split(a, w), self.sys.fusion(a, b), self.sys.fusion(b, c))
        return self.join(b, l1, r1), self.join(a, l2, r2)

    def grid(self, shapes, rng, samples):
        sizes = [self.size(a, b) for a, b in shapes]
        if samples is None:
            g = np.meshgrid(*[np.arange(s, dtype=np.int32) for s in sizes], indexing="ij")
            return [x.ravel() for x in g]
        return [rng.integers(0, s, size=samples, dtype=np.int32) for s in sizes]


def _first_bad(mask, cols, labels, enc: _Encoded, shapes) -> dict | None:
    bad = np.nonzero(~mask)[0]
    if len(bad) == 0:
        return None
    k = bad[0]
    elems = [[int(v) for v in enc.split(a, c[k])] for c, (a, _) in zip(cols, shapes)]
    return {"indices": list(labels), "elements": elems}


def verify_system_axioms(sys: GradedGroupSystem, seed: int = 0) -> VerificationReport:
    """Check the transitive-system axioms on every nondecreasing index tuple.

    Exhaustive when every group has order at most 12, otherwise 1000 random
    samples per index tuple drawn from ``seed``.
    """
    if len(sys.groups) > 4 or sys.max_order() > 24:
        raise ClosureTooLarge("systems are limited to 4 groups of order at most 24")
    report = VerificationReport(f"group system {sys.name}".strip())
    exhaustive = sys.max_order() <= EXHAUSTIVE_MAX_ORDER
    rng = None if exhaustive else np.random.default_rng(seed)
    samples = None if exhaustive else SAMPLE_COUNT
    if not exhaustive:
        report.seed = seed
        report.notes.append(f"sampled {SAMPLE_COUNT} elements per index tuple (seed {seed})")
    k = len(sys.groups)
    J = sys.fusion
    enc = _Encoded(sys)

    def tuples(r):
        return list(itertools.combinations_with_replacement(range(k), r))

    def record(label, failures):
        report.add(label, not failures, failures[0] if failures else None)

    with report.timed():
        fails = []
        for a, b in tuples(2):
            shapes = [(a, b)] * 3
            x, y, z = enc.grid(shapes, rng, samples)
            ok = enc.mul(a, b, enc.mul(a, b, x, y), z) == enc.mul(a, b, x, enc.mul(a, b, y, z))
            unit = enc.pair(a, b)[2]
            xi = enc.inv(a, b, x)
            ok &= (enc.mul(a, b, x, xi) == unit) & (enc.mul(a, b, xi, x) == unit)
            ok &= (enc.mul(a, b, unit, x) == x) & (enc.mul(a, b, x, unit) == x)
            ce = _first_bad(ok, [x, y, z], (a, b), enc, shapes)
            if ce:
                fails.append(ce)
        record("pair-group", fails)

        fails = []
        for a, b, c, d in tuples(4):
            shapes = [(c, d), (b, c), (a, b)]
            x, y, z = enc.grid(shapes, rng, samples)
            l1 = enc.tprod(a, b, d, enc.tprod(b, c, d, x, y), z)
            l2 = enc.tprod(a, c, d, x, enc.tprod(a, b, c, y, z))
            ok = l1 == l2
            ok &= l1 == _closed_left(enc, (a, b, c, d), x, y, z)
            ok &= l2 == _closed_right(enc, (a, b, c, d), x, y, z)
            ce = _first_bad(ok, [x, y, z], (a, b, c, d), enc, shapes)
            if ce:
                fails.append(ce)
        record("transitive-associativity", fails)

        fails = []
        for a, b in tuples(2):
            x, = enc.grid([(a, b)], rng, samples)
            ok = enc.tprod(a, b, b, enc.pair(b, b)[2], x) == x
            ok &= enc.tprod(a, a, b, x, enc.pair(a, a)[2]) == x
            ce = _first_bad(ok, [x], (a, b), enc, [(a, b)])
            if ce:
                fails.append(ce)
        for a, b, c in tuples(3):
            u = enc.tprod(a, b, c, enc.pair(b, c)[2], enc.pair(a, b)[2])
            if int(u) != enc.pair(a, c)[2]:
                fails.append({"indices": [a, b, c], "elements": [[int(v) for v in enc.split(a, u)]]})
        for a in range(k):
            x, y = enc.grid([(a, a)] * 2, rng, samples)
            ok = enc.tprod(a, a, a, x, y) == enc.mul(a, a, x, y)
            ce = _first_bad(ok, [x, y], (a, a, a), enc, [(a, a)] * 2)
            if ce:
                fails.append(ce)
        record("unit-laws", fails)

        conj, counit, anti, hom = [], [], [], []
        for a, b, c in tuples(3):
            shapes = [(a, c), (b, c), (a, b)]
            w, be, al = enc.grid(shapes, rng, samples)
            w1, w2 = enc.pi(a, b, c, w)
            lhs = enc.mul(a, c, enc.mul(a, c, w, enc.tprod(a, b, c, be, al)), enc.inv(a, c, w))
            rhs = enc.tprod(a, b, c, enc.mul(b, c, w1, be), enc.mul(a, b, al, enc.inv(a, b, w2)))
            ce = _first_bad(lhs == rhs, [w, be, al], (a, b, c), enc, shapes)
            if ce:
                conj.append(ce)

            w, = enc.grid([(a, c)], rng, samples)
            w1, w2 = enc.pi(a, b, c, w)
            ok = (enc.tprod(a, b, c, w1, enc.pair(a, b)[2]) == w)
            ok &= (enc.tprod(a, b, c, enc.pair(b, c)[2], w2) == w)
            ce = _first_bad(ok, [w], (a, b, c), enc, [(a, c)])
            if ce:
                counit.append(ce)

            ok = enc.tprod(a, b, c, enc.inv(b, c, w1), w2) == enc.pair(a, c)[2]
            if a == b == c:
                ok &= enc.mul(a, a, w1, enc.inv(a, a, w2)) == enc.pair(a, a)[2]
            ce = _first_bad(ok, [w], (a, b, c), enc, [(a, c)])
            if ce:
                anti.append(ce)

            x, y = enc.grid([(a, c)] * 2, rng, samples)
            s1, s2 = enc.pi(a, b, c, enc.mul(a, c, x, y))
            x1, x2 = enc.pi(a, b, c, x)
            y1, y2 = enc.pi(a, b, c, y)
            ok = (s1 == enc.mul(b, c, x1, y1)) & (s2 == enc.mul(a, b, x2, y2))
            ce = _first_bad(ok, [x, y], (a, b, c), enc, [(a, c)] * 2)
            if ce:
                hom.append(ce)
        record("conjugation-compatibility", conj)
        record("projection-homomorphism", hom)

        fails = []
        for a, b, c, d in tuples(4):
            w, = enc.grid([(a, d)], rng, samples)
            p, q = enc.pi(a, b, d, w)
            r, s = enc.pi(b, c, d, p)
            t, u = enc.pi(a, c, d, w)
            v, x = enc.pi(a, b, c, u)
            ok = (r == t) & (s == v) & (q == x)
            ce = _first_bad(ok, [w], (a, b, c, d), enc, [(a, d)])
            if ce:
                fails.append(ce)
        record("coassociativity", fails)
        record("counit-law", counit)
        record("antipode-rule", anti)
    return report


def _closed_left(enc: _Encoded, idx, x, y, z):
    """``((x*y)*z)`` from its closed form, evaluated on small component grids."""
    a, b, c, d = idx
    J = enc.sys.fusion
    jab, jbc, jcd, jbd = J(a, b), J(b, c), J(c, d), J(b, d)
    G0, G1, G2, G3 = (enc.sys.groups[i] for i in (a, b, c, d))
    al, be = enc.split(c, x)
    ga, de = enc.split(b, y)
    mu, nu = enc.split(a, z)
    A, C, M = np.meshgrid(np.arange(G3.order), np.arange(G2.order), np.arange(G1.order), indexing="ij")
    first = _m(G3, _m(G3, A, jcd.images[C]), jbd.images[M])
    B, C, D, M, N = np.meshgrid(np.arange(G2.order), np.arange(G2.order), np.arange(G1.order),
                                np.arange(G1.order), np.arange(G0.order), indexing="ij")
    gbg = _m(G2, _m(G2, G2.inverse[C], B), C)
    inner = _m(G1, _m(G1, G1.inverse[M], _m(G1, D, jbc.back[gbg])), M)
    second = _m(G0, N, jab.back[inner])
    return enc.join(a, first[al, ga, mu], second[be, ga, de, mu, nu])


def _closed_right(enc: _Encoded, idx, x, y, z):
    """``(x*(y*z))`` from its closed form."""
    a, b, c, d = idx
    J = enc.sys.fusion
    jab, jbc, jcd, jac = J(a, b), J(b, c), J(c, d), J(a, c)
    G0, G1, G2, G3 = (enc.sys.groups[i] for i in (a, b, c, d))
    al, be = enc.split(c, x)
    ga, de = enc.split(b, y)
    mu, nu = enc.split(a, z)
    A, C, M = np.meshgrid(np.arange(G3.order), np.arange(G2.order), np.arange(G1.order), indexing="ij")
    first = _m(G3, A, jcd.images[_m(G2, C, jbc.images[M])])
    B, C, D, M, N = np.meshgrid(np.arange(G2.order), np.arange(G2.order), np.arange(G1.order),
                                np.arange(G1.order), np.arange(G0.order), indexing="ij")
    jm = jbc.images[M]
    t1 = jab.back[_m(G1, _m(G1, G1.inverse[M], D), M)]
    t2 = jac.back[_m(G2, _m(G2, G2.inverse[jm], _m(G2, _m(G2, G2.inverse[C], B), C)), jm)]
    second = _m(G0, _m(G0, N, t1), t2)
    return enc.join(a, first[al, ga, mu], second[be, ga, de, mu, nu])
