"""Whole-group computations by exhaustive enumeration.

Elements of a consistent presentation are indexed by their exponent vectors
read as base-p numerals with x_1 most significant, so index order is the
lexicographic order on normal words.
"""

from __future__ import annotations

import os
import weakref
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .pc import NormalWord, PcPresentation, identity

DEFAULT_CAP = 2**20


class CapExceeded(RuntimeError):
    pass


def enumeration_cap() -> int:
    env = os.environ.get("PCGROUP_CAP")
    return int(env) if env else DEFAULT_CAP


class EnumeratedGroup:
    """Right-regular multiplication tables for all pc-generators."""

    def __init__(self, pres: PcPresentation, cap: int | None = None):
        cap = enumeration_cap() if cap is None else cap
        size = pres.prime**pres.ngens
        if size > cap:
            raise CapExceeded(f"group order {size} exceeds enumeration cap {cap}")
        self.pres = pres
        self.order = size
        n, p = pres.ngens, pres.prime
        self.place = np.array([p ** (n - 1 - k) for k in range(n)], dtype=np.int64)
        ar = np.arange(size, dtype=np.int64)
        self.digits = ((ar[:, None] // self.place[None, :]) % p).astype(np.int8)
        self.right = np.empty((n, size), dtype=np.int64)
        # Fill from the last generator down. Split a = u v with u the part up to
        # x_k and v the part above it; then a x_k = (u x_k) v^{x_k}, and both
        # factors only need tables of later generators.
        for k in reversed(range(n)):
            u = self.digits[:, : k + 1].astype(np.int64) @ self.place[: k + 1]
            over = self.digits[:, k] == p - 1
            col = np.where(over, u - (p - 1) * self.place[k], u + self.place[k])
            col[over] = self._times_word(col[over], pres.power_rhs[k])
            for j in range(k + 1, n):
                xj = list(pres.conj_rhs.get((k, j), identity(n)))
                xj[j] += 1  # x_j^{x_k} = x_j t as a normal word
                for r in range(p - 1):
                    m = self.digits[:, j] > r
                    col[m] = self._times_word(col[m], xj)
            self.right[k] = col
        self._right_lists = [row.tolist() for row in self.right]

    def _times_word(self, a: np.ndarray, w) -> np.ndarray:
        for g, e in enumerate(w):
            for _ in range(e):
                a = self.right[g][a]
        return a

    # -- conversions --------------------------------------------------------------

    def index(self, w: NormalWord) -> int:
        return int(np.dot(w, self.place))

    def word(self, a: int) -> NormalWord:
        return tuple(int(v) for v in self.digits[a])

    def words(self, idx: Iterable[int]) -> list[NormalWord]:
        return [self.word(a) for a in idx]

    @property
    def identity(self) -> int:
        return 0

    # -- vectorised arithmetic -----------------------------------------------------

    def mul(self, a, b):
        """Elementwise product of index arrays (or scalars) a * b."""
        a = np.array(a, dtype=np.int64, copy=True)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = a.copy()
        bd = self.digits[b]
        for k in range(self.pres.ngens):
            col = bd[..., k]
            for r in range(self.pres.prime - 1):
                m = col > r
                if m.any():
                    out[m] = self.right[k][out[m]]
        return out

    def mul1(self, a: int, b: int) -> int:
        """Scalar product via table walks."""
        right = self._right_lists
        for k, e in enumerate(self.digits[b].tolist()):
            for _ in range(e):
                a = right[k][a]
        return a

    def rmul_by(self, a, b: int):
        """a * b for an index array a and a fixed element b."""
        out = np.array(a, dtype=np.int64, copy=True)
        for k, e in enumerate(self.digits[b].tolist()):
            for _ in range(e):
                out = self.right[k][out]
        return out

    @cached_property
    def left(self) -> np.ndarray:
        """left[k][a] = x_k * a."""
        return np.stack([self.mul(np.full(self.order, self.place[k]), self.all)
                         for k in range(self.pres.ngens)])

    def lmul_by(self, b: int, a):
        """b * a for a fixed element b and an index array a."""
        out = np.array(a, dtype=np.int64, copy=True)
        for k, e in reversed(list(enumerate(self.digits[b].tolist()))):
            for _ in range(e):
                out = self.left[k][out]
        return out

    @cached_property
    def all(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @cached_property
    def inv(self) -> np.ndarray:
        pres = self.pres
        inv_gen = [self.index(pres.inverse(pres.gen(k))) for k in range(pres.ngens)]
        out = np.zeros(self.order, dtype=np.int64)
        for k in reversed(range(pres.ngens)):
            col = self.digits[:, k]
            for r in range(pres.prime - 1):
                m = col > r
                out[m] = self.rmul_by(out[m], inv_gen[k])
        return out

    def conj_by(self, g: int) -> np.ndarray:
        """Table of a -> a^g = g^-1 a g over all a."""
        return self.rmul_by(self.lmul_by(int(self.inv[g]), self.all), g)

    @cached_property
    def gen_conj(self) -> np.ndarray:
        """gen_conj[k][a] = a^{x_k}."""
        unit = [self.index(self.pres.gen(k)) for k in range(self.pres.ngens)]
        return np.stack([self.conj_by(u) for u in unit])

    def power(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        base = a.copy()
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    @cached_property
    def orders(self) -> np.ndarray:
        p = self.pres.prime
        orders = np.ones(self.order, dtype=np.int64)
        x = self.all.copy()
        while True:
            live = x != 0
            if not live.any():
                return orders
            orders[live] *= p
            x = self.power(x, p)

    def commutators_with(self, a, k: int):
        """[a, x_k] = a^-1 a^{x_k} elementwise."""
        a = np.asarray(a, dtype=np.int64)
        return self.mul(self.inv[a], self.gen_conj[k][a])

    # -- closures ------------------------------------------------------------------

    def closure(self, gens: Sequence[int], normal: bool = False) -> np.ndarray:
        """Sorted indices of <gens>, or of its normal closure."""
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        frontier = np.array([0], dtype=np.int64)
        gens = sorted({int(g) for g in gens} - {0})
        while frontier.size:
            found = [self.rmul_by(frontier, g) for g in gens]
            if normal:
                found += [self.gen_conj[k][frontier] for k in range(self.pres.ngens)]
            if not found:
                break
            cand = np.unique(np.concatenate(found))
            new = cand[~member[cand]]
            member[new] = True
            frontier = new
        return np.flatnonzero(member)

    def set_closure(self, elements: np.ndarray, normal: bool = False) -> np.ndarray:
        """Closure of a possibly large generating set, via a greedy generator basis."""
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        basis: list[int] = []
        for g in np.asarray(elements, dtype=np.int64):
            if not member[g]:
                basis.append(int(g))
                member[:] = False
                member[self.closure(basis, normal=normal)] = True
        return np.flatnonzero(member)


_CACHE: "weakref.WeakKeyDictionary[PcPresentation, EnumeratedGroup]" = weakref.WeakKeyDictionary()


def tables(pres: PcPresentation, cap: int | None = None) -> EnumeratedGroup:
    cap = enumeration_cap() if cap is None else cap
    size = pres.prime**pres.ngens
    if size > cap:
        raise CapExceeded(f"group order {size} exceeds enumeration cap {cap}")
    grp = _CACHE.get(pres)
    if grp is None:
        grp = _CACHE[pres] = EnumeratedGroup(pres, cap)
    return grp


@dataclass(frozen=True, eq=False)
class ElementSet:
    """A sorted set of elements of an enumerated group."""

    group: EnumeratedGroup
    indices: np.ndarray
    is_subgroup: bool = False

    @property
    def pres(self) -> PcPresentation:
        return self.group.pres

    @cached_property
    def elements(self) -> list[NormalWord]:
        return self.group.words(self.indices)

    def __len__(self) -> int:
        return int(self.indices.size)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w) -> bool:
        a = self.group.index(w)
        i = np.searchsorted(self.indices, a)
        return bool(i < self.indices.size and self.indices[i] == a)

    def __eq__(self, other) -> bool:
        if isinstance(other, ElementSet):
            return np.array_equal(self.indices, other.indices)
        return NotImplemented

    def __hash__(self):
        return hash(self.indices.tobytes())

    def intersect(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(
            self.group,
            np.intersect1d(self.indices, other.indices),
            self.is_subgroup and other.is_subgroup,
        )


@dataclass(frozen=True, eq=False)
class ClassPartition:
    group: EnumeratedGroup
    labels: np.ndarray  # labels[a] = least element of the class of a
    classes: list[ElementSet]

    @property
    def representatives(self) -> list[NormalWord]:
        return [c.elements[0] for c in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self, w: NormalWord) -> ElementSet:
        rep = self.labels[self.group.index(w)]
        return next(c for c in self.classes if c.indices[0] == rep)


def enumerate_elements(pres: PcPresentation, cap: int | None = None) -> ElementSet:
    grp = tables(pres, cap)
    return ElementSet(grp, grp.all, True)


def centralizer(pres: PcPresentation, a: NormalWord, cap: int | None = None) -> ElementSet:
    grp = tables(pres, cap)
    ai = grp.index(pres.check(a))
    ga = grp.rmul_by(grp.all, ai)
    ag = grp.lmul_by(ai, grp.all)
    return ElementSet(grp, np.flatnonzero(ga == ag), True)


def center(pres: PcPresentation, cap: int | None = None) -> ElementSet:
    grp = tables(pres, cap)
    fixed = np.all(grp.gen_conj == grp.all[None, :], axis=0)
    return ElementSet(grp, np.flatnonzero(fixed), True)


def class_labels(grp: EnumeratedGroup) -> np.ndarray:
    n, size = grp.pres.ngens, grp.order
    rows = np.tile(grp.all, n)
    cols = grp.gen_conj.reshape(-1)
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size))
    _, comp = connected_components(graph, directed=True, connection="weak")
    least = np.full(comp.max() + 1, size, dtype=np.int64)
    np.minimum.at(least, comp, grp.all)
    return least[comp]


def conjugacy_classes(pres: PcPresentation, cap: int | None = None) -> ClassPartition:
    grp = tables(pres, cap)
    labels = class_labels(grp)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    classes = [ElementSet(grp, np.sort(chunk)) for chunk in np.split(order, bounds)]
    return ClassPartition(grp, labels, classes)


def subgroup_closure(
    pres: PcPresentation, gens: Sequence[NormalWord], cap: int | None = None
) -> ElementSet:
    grp = tables(pres, cap)
    return ElementSet(grp, grp.closure([grp.index(pres.check(g)) for g in gens]), True)


def normal_closure(
    pres: PcPresentation, gens: Sequence[NormalWord], cap: int | None = None
) -> ElementSet:
    grp = tables(pres, cap)
    idx = [grp.index(pres.check(g)) for g in gens]
    return ElementSet(grp, grp.closure(idx, normal=True), True)


def lower_central_series(pres: PcPresentation, cap: int | None = None) -> list[ElementSet]:
    """gamma_1 = G, gamma_{i+1} = [gamma_i, G], down to the trivial group.

    [N, G] is the normal closure of {[g, x_k] : g in N, x_k a pc-generator},
    so each term is built from every element of the previous one.
    """
    grp = tables(pres, cap)
    series = [ElementSet(grp, grp.all, True)]
    while len(series[-1]) > 1:
        current = series[-1].indices
        comms = np.unique(
            np.concatenate([grp.commutators_with(current, k) for k in range(pres.ngens)])
        )
        nxt = grp.set_closure(comms, normal=True)
        if nxt.size == current.size:
            break  # not nilpotent; cannot happen for p-groups
        series.append(ElementSet(grp, nxt, True))
    return series


def nilpotency_class(pres: PcPresentation, cap: int | None = None) -> int:
    return len(lower_central_series(pres, cap)) - 1


def is_conjugate(
    pres: PcPresentation, a: NormalWord, b: NormalWord, cap: int | None = None
) -> tuple[bool, NormalWord | None]:
    """Decide whether a^g = b for some g; the witness is the least such g."""
    grp = tables(pres, cap)
    ai, bi = grp.index(pres.check(a)), grp.index(pres.check(b))
    conj = grp.mul(grp.rmul_by(grp.inv, ai), grp.all)  # g^-1 a g
    hits = np.flatnonzero(conj == bi)
    if hits.size == 0:
        return False, None
    return True, grp.word(int(hits[0]))


@dataclass
class GroupSummary:
    order: int
    log_order: int
    nilpotency_class: int
    coclass: int
    center_order: int
    class_count: int
    series_orders: list[int]


def analyze(pres: PcPresentation, cap: int | None = None) -> GroupSummary:
    series = lower_central_series(pres, cap)
    c = len(series) - 1
    return GroupSummary(
        order=pres.prime**pres.ngens,
        log_order=pres.ngens,
        nilpotency_class=c,
        coclass=pres.ngens - c,
        center_order=len(center(pres, cap)),
        class_count=len(conjugacy_classes(pres, cap).classes),
        series_orders=[len(s) for s in series],
    )
