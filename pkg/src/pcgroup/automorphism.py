"""Homomorphisms given by generator images, inner and class-preserving
automorphisms, and exhaustive automorphism groups of small p-groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .analysis import CapExceeded, ClassPartition, EnumeratedGroup, center, class_labels, tables
from .families import GenMap
from .pc import NormalWord, PcPresentation

DEFAULT_AUT_CAP = 2**7


class RelationViolated(ValueError):
    def __init__(self, relation: str):
        super().__init__(f"relation {relation} is not preserved")
        self.relation = relation


class MissingDefinitions(ValueError):
    pass


# -- lifting generator images ---------------------------------------------------------


def _relations(pres: PcPresentation):
    """Yield ((kind, i, j), rhs word) for every power and conjugate relation."""
    for i, w in enumerate(pres.power_rhs):
        yield ("power", i, None), w
    for i in range(pres.ngens):
        for j in range(i + 1, pres.ngens):
            w = pres.conj_rhs.get((i, j), pres.identity())
            yield ("conj", i, j), w


def _relation_label(pres: PcPresentation, rel) -> str:
    kind, i, j = rel
    if kind == "power":
        return f"{pres.gen_name(i)}^{pres.prime}"
    return f"{pres.gen_name(j)}^{pres.gen_name(i)}"


def _support(rel, w) -> set[int]:
    kind, i, j = rel
    s = {k for k, e in enumerate(w) if e}
    s.add(i)
    if j is not None:
        s.add(j)
    return s


class _Lifter:
    """Extends minimal-generator images to all pc-generators and checks relations,
    working on element indices of an enumerated group."""

    def __init__(self, grp: EnumeratedGroup):
        self.grp = grp
        pres = grp.pres
        defs = pres.generator_definitions
        missing = [k for k in range(pres.min_gens, pres.ngens) if k not in defs]
        if missing:
            names = ", ".join(pres.gen_name(k) for k in missing)
            raise MissingDefinitions(f"no definition available for {names}")
        self.defs = defs
        self.relations = []
        for rel, w in _relations(pres):
            self.relations.append((rel, w, max(_support(rel, w))))

    def word_image(self, images: list[int], w) -> int:
        grp = self.grp
        out = 0
        for k, e in enumerate(w):
            for _ in range(e):
                out = grp.mul1(out, images[k])
        return out

    def extend(self, images: list[int], upto: int) -> None:
        """Fill images of defined generators whose ingredients are known (< upto)."""
        grp, p = self.grp, self.grp.pres.prime
        for k in range(len(images), upto):
            d = self.defs[k]
            if d.kind == "comm":
                a, b = images[d.a], images[d.b]
                val = grp.mul1(int(grp.inv[a]), grp.mul1(int(grp.inv[b]), grp.mul1(a, b)))
            else:
                val = 0
                for _ in range(p):
                    val = grp.mul1(val, images[d.a])
            images.append(val)

    def violated(self, images: list[int], lo: int, hi: int):
        """First relation with highest generator in [lo, hi) that fails, or None."""
        grp, p = self.grp, self.grp.pres.prime
        for rel, w, top in self.relations:
            if not lo <= top < hi:
                continue
            kind, i, j = rel
            if kind == "power":
                lhs = 0
                for _ in range(p):
                    lhs = grp.mul1(lhs, images[i])
                rhs = self.word_image(images, w)
            else:
                xi, xj = images[i], images[j]
                lhs = grp.mul1(int(grp.inv[xi]), grp.mul1(xj, xi))
                rhs = grp.mul1(xj, self.word_image(images, w))
            if lhs != rhs:
                return rel
        return None


def _needs(defn) -> set[int]:
    return {defn.a} if defn.kind == "pow" else {defn.a, defn.b}


@dataclass(frozen=True, eq=False)
class ElementMap:
    """A homomorphism of an enumerated group into itself, stored as its full image table."""

    group: EnumeratedGroup
    gen_images: tuple[int, ...]  # images of all pc-generators, as indices

    @property
    def pres(self) -> PcPresentation:
        return self.group.pres

    @cached_property
    def table(self) -> np.ndarray:
        grp = self.group
        out = np.zeros(grp.order, dtype=np.int64)
        for k in range(grp.pres.ngens):
            col = grp.digits[:, k]
            for r in range(grp.pres.prime - 1):
                m = col > r
                out[m] = grp.rmul_by(out[m], self.gen_images[k])
        return out

    @property
    def key(self) -> tuple[int, ...]:
        return self.gen_images[: self.pres.min_gens]

    def __call__(self, w: NormalWord) -> NormalWord:
        return self.group.word(int(self.table[self.group.index(w)]))

    def then(self, other: "ElementMap") -> "ElementMap":
        """Apply self first, then other."""
        return ElementMap(self.group, tuple(int(other.table[a]) for a in self.gen_images))

    def inverse(self) -> "ElementMap":
        inv = np.empty_like(self.table)
        inv[self.table] = self.group.all
        return ElementMap(self.group, tuple(int(inv[self.group.index(self.pres.gen(k))])
                                            for k in range(self.pres.ngens)))

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementMap) and self.gen_images == other.gen_images

    def __hash__(self):
        return hash(self.gen_images)


def induce(pres: PcPresentation, gm: GenMap, cap: int | None = None) -> ElementMap:
    """Lift images of the minimal generators to a homomorphism, checking every relation."""
    if len(gm.images) != pres.min_gens:
        raise ValueError(f"expected {pres.min_gens} images, got {len(gm.images)}")
    grp = tables(pres, cap)
    lifter = _Lifter(grp)
    images = [grp.index(pres.check(w)) for w in gm.images]
    lifter.extend(images, pres.ngens)
    rel = lifter.violated(images, 0, pres.ngens)
    if rel is not None:
        raise RelationViolated(_relation_label(pres, rel))
    return ElementMap(grp, tuple(images))


def conjugation_map(pres: PcPresentation, g: NormalWord, cap: int | None = None) -> ElementMap:
    grp = tables(pres, cap)
    table = grp.conj_by(grp.index(pres.check(g)))
    return ElementMap(grp, tuple(int(table[grp.index(pres.gen(k))]) for k in range(pres.ngens)))


def is_automorphism(pres: PcPresentation, em: ElementMap) -> bool:
    grp = em.group
    return grp.closure(em.key).size == grp.order


def _inner_witnesses(grp: EnumeratedGroup, key: tuple[int, ...]) -> np.ndarray:
    ok = np.ones(grp.order, dtype=bool)
    for k, img in enumerate(key):
        # x_k^g for every g
        ok &= grp.mul(grp.rmul_by(grp.inv, grp.index(grp.pres.gen(k))), grp.all) == img
    return np.flatnonzero(ok)


def is_inner(pres: PcPresentation, em: ElementMap) -> NormalWord | None:
    """Some g with em = conjugation by g, or None. The witness returned is the least
    element of its coset of the centre."""
    hits = _inner_witnesses(em.group, em.key)
    return em.group.word(int(hits[0])) if hits.size else None


def is_class_preserving(
    pres: PcPresentation, em: ElementMap, classes: ClassPartition | None = None
) -> tuple[bool, NormalWord | None]:
    """Whether em maps every conjugacy class to itself; else a class representative
    that is moved."""
    grp = em.group
    labels = classes.labels if classes is not None else _labels(grp)
    reps = np.unique(labels)
    moved = labels[em.table[reps]] != labels[reps]
    if moved.any():
        return False, grp.word(int(reps[np.argmax(moved)]))
    return True, None


def _labels(grp: EnumeratedGroup) -> np.ndarray:
    labels = getattr(grp, "_class_labels", None)
    if labels is None:
        labels = grp._class_labels = class_labels(grp)
    return labels


# -- exhaustive automorphism group ---------------------------------------------------


@dataclass
class AutSet:
    group: EnumeratedGroup
    automorphisms: list[ElementMap]
    inner: np.ndarray  # boolean masks aligned with automorphisms
    class_preserving: np.ndarray
    search_nodes: int = 0

    @property
    def order(self) -> int:
        return len(self.automorphisms)

    @property
    def inner_maps(self) -> list[ElementMap]:
        return [a for a, f in zip(self.automorphisms, self.inner) if f]

    @property
    def class_preserving_maps(self) -> list[ElementMap]:
        return [a for a, f in zip(self.automorphisms, self.class_preserving) if f]


def frattini(grp: EnumeratedGroup) -> np.ndarray:
    """Phi(G) = G^p [G, G], as sorted indices."""
    pres = grp.pres
    n = pres.ngens
    gens = [grp.index(pres.gen(k)) for k in range(n)]
    seeds = [int(grp.power(np.array([g]), pres.prime)[0]) for g in gens]
    for i in range(n):
        for j in range(i + 1, n):
            seeds.append(int(grp.commutators_with(np.array([gens[i]]), j)[0]))
    return grp.closure(seeds, normal=True)


def enumerate_automorphisms(
    pres: PcPresentation, cap: int = DEFAULT_AUT_CAP
) -> AutSet:
    """All automorphisms, by backtracking over images of the minimal generators.

    A candidate image must have the generator's order and lie outside the
    subgroup generated by the Frattini subgroup and the images already placed;
    each relation is tested as soon as all generators it mentions have images.
    """
    size = pres.prime**pres.ngens
    if size > cap:
        raise CapExceeded(f"group order {size} exceeds automorphism search cap {cap}")
    grp = tables(pres)
    lifter = _Lifter(grp)
    d, n = pres.min_gens, pres.ngens
    orders = grp.orders
    phi = frattini(grp)
    lead_weight = np.zeros(grp.order, dtype=np.int64)
    nz = grp.digits[1:] != 0
    lead_weight[1:] = np.asarray(pres.weights)[np.argmax(nz, axis=1)]

    # generators whose images are determined once m minimal generators are placed
    avail: list[set[int]] = []
    for m in range(d + 1):
        known = set(range(m))
        for k in range(d, n):
            if _needs(lifter.defs[k]) <= known:
                known.add(k)
        avail.append(known)
    # relations become checkable at the first level that knows all their generators
    checks: list[list] = [[] for _ in range(d + 1)]
    for rel, w, _top in lifter.relations:
        s = _support(rel, w)
        level = next(m for m in range(d + 1) if s <= avail[m])
        checks[level].append((rel, w))

    found: list[ElementMap] = []
    nodes = 0

    def candidates(k: int, placed: list[int]) -> list[int]:
        sub = grp.closure(phi.tolist() + placed) if placed else phi
        ok = orders == orders[grp.index(pres.gen(k))]
        ok[sub] = False
        cand = np.flatnonzero(ok).tolist()
        return sorted(cand, key=lambda a: (orders[a], lead_weight[a], a))

    def search(placed: list[int]) -> None:
        nonlocal nodes
        m = len(placed)
        if m == d:
            images = list(placed)
            lifter.extend(images, n)
            em = ElementMap(grp, tuple(images))
            if grp.closure(em.key).size == grp.order:
                found.append(em)
            return
        for c in candidates(m, placed):
            nodes += 1
            placed.append(c)
            images = _partial_images(lifter, placed, avail[m + 1])
            if not any(_relation_fails(grp, images, rel, w) for rel, w in checks[m + 1]):
                search(placed)
            placed.pop()

    search([])

    inner_keys = _inner_keys(grp)
    inner = np.array([a.key in inner_keys for a in found], dtype=bool)
    labels = _labels(grp)
    cp = np.array([bool(np.all(labels[a.table] == labels)) for a in found], dtype=bool)
    return AutSet(grp, found, inner, cp, nodes)


def _partial_images(lifter: _Lifter, placed: list[int], known: set[int]) -> dict[int, int]:
    grp, p = lifter.grp, lifter.grp.pres.prime
    images = {k: v for k, v in enumerate(placed)}
    for k in sorted(known - set(images)):
        d = lifter.defs[k]
        if d.kind == "comm":
            a, b = images[d.a], images[d.b]
            images[k] = grp.mul1(int(grp.inv[a]), grp.mul1(int(grp.inv[b]), grp.mul1(a, b)))
        else:
            val = 0
            for _ in range(p):
                val = grp.mul1(val, images[d.a])
            images[k] = val
    return images


def _relation_fails(grp: EnumeratedGroup, images: dict[int, int], rel, w) -> bool:
    kind, i, j = rel
    p = grp.pres.prime
    rhs = 0
    for k, e in enumerate(w):
        for _ in range(e):
            rhs = grp.mul1(rhs, images[k])
    if kind == "power":
        lhs = 0
        for _ in range(p):
            lhs = grp.mul1(lhs, images[i])
        return lhs != rhs
    xi, xj = images[i], images[j]
    return grp.mul1(int(grp.inv[xi]), grp.mul1(xj, xi)) != grp.mul1(xj, rhs)


def _inner_keys(grp: EnumeratedGroup) -> set[tuple[int, ...]]:
    pres = grp.pres
    cols = []
    for k in range(pres.min_gens):
        cols.append(grp.mul(grp.rmul_by(grp.inv, grp.index(pres.gen(k))), grp.all))
    return {tuple(int(c[g]) for c in cols) for g in range(grp.order)}


@dataclass
class OutcResult:
    order: int
    aut_order: int
    aut_c_order: int
    inn_order: int
    center_order: int
    representatives: list[ElementMap] = field(default_factory=list)


def out_c(pres: PcPresentation, cap: int = DEFAULT_AUT_CAP, auts: AutSet | None = None) -> OutcResult:
    """|Aut_c(G) / Inn(G)| with one representative per coset."""
    auts = enumerate_automorphisms(pres, cap) if auts is None else auts
    grp = auts.group
    z = len(center(pres))
    inn = grp.order // z
    if int(auts.inner.sum()) != inn:
        raise AssertionError("inner automorphism count disagrees with |G|/|Z(G)|")
    aut_c = auts.class_preserving_maps
    inner_maps = auts.inner_maps
    covered: set[tuple[int, ...]] = set()
    reps = []
    for a in aut_c:
        if a.key in covered:
            continue
        reps.append(a)
        for i in inner_maps:
            covered.add(a.then(i).key)
    if len(aut_c) % inn:
        raise AssertionError("Inn(G) does not divide Aut_c(G)")
    return OutcResult(
        order=len(aut_c) // inn,
        aut_order=auts.order,
        aut_c_order=len(aut_c),
        inn_order=inn,
        center_order=z,
        representatives=reps,
    )
