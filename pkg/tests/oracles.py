"""Brute-force reference computations used only by the tests.

Everything here goes through direct collection (``PcPresentation.multiply``)
and plain Python loops, never through the enumeration tables.
"""

from __future__ import annotations

from itertools import product

from pcgroup.pc import PcPresentation, load_presentation


def all_words(pres: PcPresentation):
    return [tuple(v) for v in product(range(pres.prime), repeat=pres.ngens)]


def brute_inverse(pres, a):
    e = pres.identity()
    return next(b for b in all_words(pres) if pres.multiply(a, b) == e)


def brute_conj(pres, a, g):
    # g^-1 a g, with g^-1 found by search
    return pres.multiply(pres.multiply(brute_inverse(pres, g), a), g)


def brute_centralizer(pres, a):
    return [g for g in all_words(pres) if pres.multiply(g, a) == pres.multiply(a, g)]


def brute_center(pres):
    gens = [pres.gen(k) for k in range(pres.ngens)]
    return [
        g for g in all_words(pres)
        if all(pres.multiply(g, x) == pres.multiply(x, g) for x in gens)
    ]


def brute_class(pres, a):
    inverses = {g: brute_inverse(pres, g) for g in all_words(pres)}
    return sorted({pres.multiply(pres.multiply(inverses[g], a), g) for g in inverses})


def brute_closure(pres, gens):
    seen = {pres.identity()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for s in gens:
                k = pres.multiply(h, s)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(seen)


def repeated_squaring_order(pres, a):
    e, order, x = pres.identity(), 1, a
    while x != e:
        x = pres.multiply(x, x) if pres.prime == 2 else pres.product([x] * pres.prime)
        order *= pres.prime
    return order


def doc(p, n, d, weights, powers=None, conjugates=None, **extra):
    out = {"p": p, "ngens": n, "dgens": d, "weights": weights,
           "powers": powers or {}, "conjugates": conjugates or {}}
    out.update(extra)
    return out


KLEIN = doc(2, 2, 2, [1, 1])
CYCLIC4 = doc(2, 2, 1, [1, 2], {"1": [[2, 1]]})
CYCLIC8 = doc(2, 3, 1, [1, 2, 3], {"1": [[2, 1]], "2": [[3, 1]]})
QUATERNION = doc(2, 3, 2, [1, 1, 2], {"1": [[3, 1]], "2": [[3, 1]]}, {"1,2": [[3, 1]]})
DIHEDRAL8 = doc(2, 3, 2, [1, 1, 2], {"2": [[3, 1]]}, {"1,2": [[3, 1]]})
C2_C4 = doc(2, 3, 2, [1, 1, 2], {"2": [[3, 1]]})
CYCLIC9 = doc(3, 2, 1, [1, 2], {"1": [[2, 1]]})
EXTRASPECIAL27 = doc(3, 3, 2, [1, 1, 2], {}, {"1,2": [[3, 1]]})


def small(name):
    return load_presentation(globals()[name])
