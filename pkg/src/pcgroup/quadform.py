"""Quadratic maps V = GF(2)^4 -> W = (Z/2)[t]/(t^2) attached to the families,
and their classification up to pseudo-isometry.

A pseudo-isometry from q to q' is a pair (g, h), g in GL(4,2), h in GL(2,2),
with q'(v g) = h(q(v)) for all v (row vectors).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .families import EPSILONS, CLASS_REPRESENTATIVES

GF2Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class WElem:
    """a + b t with t^2 = 0."""

    a: int = 0
    b: int = 0

    def __add__(self, other: "WElem") -> "WElem":
        return WElem(self.a ^ other.a, self.b ^ other.b)

    def __mul__(self, other: "WElem") -> "WElem":
        return WElem(self.a & other.a, (self.a & other.b) ^ (self.b & other.a))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __int__(self) -> int:
        return self.a | (self.b << 1)

    @classmethod
    def from_int(cls, v: int) -> "WElem":
        return cls(v & 1, (v >> 1) & 1)

    def __str__(self) -> str:
        return {(0, 0): "0", (1, 0): "1", (0, 1): "t", (1, 1): "1+t"}[(self.a, self.b)]


ZERO, ONE, T = WElem(0, 0), WElem(1, 0), WElem(0, 1)

QuadMatrix = tuple[tuple[WElem, ...], ...]


def quad_matrix(eps) -> QuadMatrix:
    e = [WElem(int(v), 0) for v in eps]
    return (
        (e[0], ONE, T, ONE),
        (ZERO, e[1], ONE, ZERO),
        (ZERO, ZERO, e[2], ZERO),
        (ZERO, ZERO, ZERO, e[3]),
    )


def bilinear_matrix(q: QuadMatrix) -> QuadMatrix:
    return tuple(tuple(q[i][j] + q[j][i] for j in range(4)) for i in range(4))


def eval_form(m: QuadMatrix, u, v) -> WElem:
    """u M v^T."""
    out = ZERO
    for i in range(4):
        if u[i]:
            for j in range(4):
                if v[j]:
                    out = out + m[i][j]
    return out


def eval_quad(q: QuadMatrix, v) -> WElem:
    return eval_form(q, v, v)


def apply_w(h: GF2Matrix, w: WElem) -> WElem:
    """Row-vector action: (a, b) h, where row 0 of h is h(1) and row 1 is h(t)."""
    return WElem((w.a & h[0][0]) ^ (w.b & h[1][0]), (w.a & h[0][1]) ^ (w.b & h[1][1]))


def apply_h(h: GF2Matrix, m: QuadMatrix) -> QuadMatrix:
    return tuple(tuple(apply_w(h, x) for x in row) for row in m)


def congruence(g: GF2Matrix, m: QuadMatrix) -> QuadMatrix:
    """g M g^T."""
    return tuple(tuple(eval_form(m, g[i], g[j]) for j in range(4)) for i in range(4))


# -- GF(2) matrices ---------------------------------------------------------------------


def gf2_rank(rows: list[int]) -> int:
    work = list(rows)
    rank = 0
    for bit in range(max((r.bit_length() for r in work), default=0)):
        pivot = next((r for r in range(rank, len(work)) if work[r] >> bit & 1), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and work[r] >> bit & 1:
                work[r] ^= work[rank]
        rank += 1
    return rank


def _rows_to_bits(m: GF2Matrix) -> list[int]:
    return [sum(b << k for k, b in enumerate(row)) for row in m]


def is_invertible(m: GF2Matrix) -> bool:
    return gf2_rank(_rows_to_bits(m)) == len(m)


def matmul(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][l] & b[l][j] for l in range(k)) & 1 for j in range(m)) for i in range(n)
    )


def matinv(a: GF2Matrix) -> GF2Matrix:
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                aug[r] = [x ^ y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def identity_matrix(n: int) -> GF2Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def gl(n: int) -> tuple[GF2Matrix, ...]:
    """All invertible n x n matrices over GF(2), in lexicographic order of their entries."""
    out = []
    for bits in product((0, 1), repeat=n * n):
        m = tuple(tuple(bits[i * n:(i + 1) * n]) for i in range(n))
        if is_invertible(m):
            out.append(m)
    return tuple(out)


# -- pseudo-isometries --------------------------------------------------------------------


def induced_h(g: GF2Matrix, eps, delta) -> GF2Matrix | None:
    """The unique h with g B^delta g^T = (B^eps)^h, or None when there is none.

    B^eps takes the values 1 and t on (e_1, e_2) and (e_1, e_3), which pins h down.
    """
    b_eps = bilinear_matrix(quad_matrix(eps))
    return _induced_h(g, b_eps, bilinear_matrix(quad_matrix(delta)))


def _induced_h(g: GF2Matrix, b_eps: QuadMatrix, b_delta: QuadMatrix) -> GF2Matrix | None:
    moved = congruence(g, b_delta)
    if b_eps[0][1] != ONE or b_eps[0][2] != T:
        raise ValueError("bilinear form does not have the expected spanning values")
    h1, ht = moved[0][1], moved[0][2]
    h = ((h1.a, h1.b), (ht.a, ht.b))
    if not is_invertible(h):
        return None
    if apply_h(h, b_eps) != moved:
        return None
    return h


@lru_cache(maxsize=None)
def _compatible(b_eps: QuadMatrix, b_delta: QuadMatrix) -> tuple[tuple[GF2Matrix, GF2Matrix], ...]:
    out = []
    for g in gl(4):
        h = _induced_h(g, b_eps, b_delta)
        if h is not None:
            out.append((g, h))
    return tuple(out)


def satisfies(eps, delta, g: GF2Matrix, h: GF2Matrix, full: bool = False) -> bool:
    """Both pseudo-isometry conditions; the quadratic one on basis vectors, or on
    all of V when ``full``."""
    q_eps, q_delta = quad_matrix(eps), quad_matrix(delta)
    if congruence(g, bilinear_matrix(q_delta)) != apply_h(h, bilinear_matrix(q_eps)):
        return False
    vectors = list(product((0, 1), repeat=4)) if full else list(identity_matrix(4))
    for v in vectors:
        vg = matmul((tuple(v),), g)[0]
        if eval_quad(q_delta, vg) != apply_w(h, eval_quad(q_eps, v)):
            return False
    return True


@dataclass(frozen=True)
class PseudoIsometry:
    g: GF2Matrix
    h: GF2Matrix


def pseudo_isometric(eps, delta) -> PseudoIsometry | None:
    """Least (in GL(4,2) enumeration order) witness g taking q^eps to q^delta."""
    q_eps, q_delta = quad_matrix(eps), quad_matrix(delta)
    for g, h in _compatible(bilinear_matrix(q_eps), bilinear_matrix(q_delta)):
        # v_i (g Q g^T) v_i^T is the value of q^delta on row i of g
        if all(
            eval_quad(q_delta, g[i]) == apply_w(h, q_eps[i][i]) for i in range(4)
        ):
            return PseudoIsometry(g, h)
    return None


@dataclass
class Classification:
    classes: list[list[tuple[int, ...]]]
    witnesses: dict[tuple[int, ...], tuple[tuple[int, ...], PseudoIsometry]]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self, eps) -> int:
        eps = tuple(eps)
        return next(i for i, c in enumerate(self.classes) if eps in c)


def classify_epsilons(order=None) -> Classification:
    """Partition {0,1}^4 under pseudo-isometry. Class leaders are taken from
    ``order`` (default: the four standard representatives first, then the rest)."""
    if order is None:
        order = list(CLASS_REPRESENTATIVES) + [e for e in EPSILONS if e not in CLASS_REPRESENTATIVES]
    classes: list[list[tuple[int, ...]]] = []
    witnesses = {}
    for eps in order:
        eps = tuple(eps)
        for cls in classes:
            w = pseudo_isometric(cls[0], eps)
            if w is not None:
                cls.append(eps)
                witnesses[eps] = (cls[0], w)
                break
        else:
            classes.append([eps])
    for cls in classes:
        cls.sort()
    classes.sort(key=lambda c: min(CLASS_REPRESENTATIVES.index(e) if e in CLASS_REPRESENTATIVES else 99 for e in c))
    return Classification(classes, witnesses)
