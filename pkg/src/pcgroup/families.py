"""The four-parameter families H_n^eps of 2-groups of coclass 4.

Generators, in pc order: x_1, x_2, x_3, x_4, z, y_1, ..., y_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .pc import Definition, NormalWord, PcPresentation, identity

EPSILONS: tuple[tuple[int, int, int, int], ...] = tuple(product((0, 1), repeat=4))
CLASS_REPRESENTATIVES = ((0, 0, 0, 0), (0, 1, 0, 0), (0, 1, 1, 0), (0, 0, 0, 1))


@dataclass(frozen=True)
class FamilySpec:
    n: int
    epsilon: tuple[int, int, int, int] = (0, 0, 0, 0)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        eps = tuple(self.epsilon)
        if len(eps) != 4 or any(e not in (0, 1) for e in eps):
            raise ValueError(f"epsilon must be four bits, got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class GenMap:
    """Images of the minimal generators x_1..x_d."""

    images: tuple[NormalWord, ...]


# generator positions
def x(i: int) -> int:
    return i - 1


Z = 4


def y(i: int) -> int:
    return 4 + i


def parse_eps(text: str) -> tuple[int, int, int, int]:
    """``"0110"`` -> (0, 1, 1, 0)."""
    text = text.strip().strip("()").replace(",", "")
    if len(text) != 4 or set(text) - {"0", "1"}:
        raise ValueError(f"epsilon must be four bits such as 0110, got {text!r}")
    return tuple(int(c) for c in text)  # type: ignore[return-value]


def eps_str(eps) -> str:
    return "".join(str(e) for e in eps)


def build_family(spec: FamilySpec) -> PcPresentation:
    n = spec.n
    ngens = n + 5

    def word(*gens: int) -> NormalWord:
        w = list(identity(ngens))
        for g in gens:
            w[g] = 1
        return tuple(w)

    powers = [identity(ngens)] * ngens
    for j in range(1, 5):
        if spec.epsilon[j - 1]:
            powers[x(j)] = word(Z)
    for i in range(1, n - 1):
        powers[y(i)] = word(y(i + 1), y(i + 2))
    if n >= 2:
        powers[y(n - 1)] = word(y(n))

    conj = {
        (x(1), x(2)): word(Z),
        (x(2), x(3)): word(Z),
        (x(1), x(4)): word(Z),
        (x(1), x(3)): word(y(1)),
    }
    for i in range(1, n):
        conj[(x(1), y(i))] = word(y(i + 1))
        conj[(x(3), y(i))] = word(y(i + 1))

    definitions = {Z: Definition("comm", x(2), x(1)), y(1): Definition("comm", x(3), x(1))}
    for i in range(1, n):
        definitions[y(i + 1)] = Definition("comm", y(i), x(1))

    weights = (1, 1, 1, 1, 2) + tuple(i + 1 for i in range(1, n + 1))
    names = ("x_1", "x_2", "x_3", "x_4", "z") + tuple(f"y_{i}" for i in range(1, n + 1))
    return PcPresentation(
        prime=2,
        ngens=ngens,
        min_gens=4,
        weights=weights,
        power_rhs=tuple(powers),
        conj_rhs=conj,
        definitions=definitions,
        names=names,
    )


def family(n: int, eps=(0, 0, 0, 0)) -> PcPresentation:
    return build_family(FamilySpec(n, tuple(eps)))


def theta(spec: FamilySpec) -> GenMap:
    """x_4 -> x_4 z, all other generators fixed."""
    ngens = spec.n + 5
    images = [tuple(int(k == i) for k in range(ngens)) for i in range(4)]
    images[3] = tuple(int(k in (x(4), Z)) for k in range(ngens))
    return GenMap(tuple(images))


def family_catalog(n: int) -> list[tuple[tuple[int, int, int, int], PcPresentation]]:
    return [(eps, build_family(FamilySpec(n, eps))) for eps in EPSILONS]
