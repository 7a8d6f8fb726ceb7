"""Consistency test for weighted pc-presentations of 2-groups.

Each test compares the two bracketings of a short generator word; the
parenthesised product is collected first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .pc import NormalWord, PcPresentation

MAX_STORED_FAILURES = 100

# kinds, written as the word (a b) c with a >= b >= c in pc order
KJI, JJI, JII, III = "kji", "jji", "jii", "iii"


class ConsistencyTriple(NamedTuple):
    kind: str
    word: tuple[int, int, int]  # (a, b, c): compare (a b) c with a (b c)

    def describe(self, pres: PcPresentation) -> str:
        a, b, c = (pres.gen_name(g) for g in self.word)
        return f"({a},{b},{c})"


@dataclass
class ConsistencyReport:
    consistent: bool = True
    triples_checked: int = 0
    failures: list[tuple[ConsistencyTriple, NormalWord, NormalWord]] = field(
        default_factory=list
    )
    failure_count: int = 0


def default_class_bound(pres: PcPresentation) -> int:
    return sum(pres.weights)


def consistency_triples(pres: PcPresentation, c: int | None = None) -> list[ConsistencyTriple]:
    """All triples required by the weighted 2-group test, in lexicographic order of (i, j, k)."""
    if c is None:
        c = default_class_bound(pres)
    n, d, w = pres.ngens, pres.min_gens, pres.weights
    out = []
    for i in range(n):
        if 2 * w[i] < c:
            out.append(ConsistencyTriple(III, (i, i, i)))
        for j in range(i + 1, n):
            if i < d and w[i] + w[j] < c:
                out.append(ConsistencyTriple(JJI, (j, j, i)))
            if w[i] + w[j] < c:
                out.append(ConsistencyTriple(JII, (j, i, i)))
            if i < d:
                for k in range(j + 1, n):
                    if w[i] + w[j] + w[k] <= c:
                        out.append(ConsistencyTriple(KJI, (k, j, i)))
    out.sort(key=lambda t: (t.word[2], t.word[1], t.word[0], t.kind))
    return out


def bracketings(pres: PcPresentation, triple: ConsistencyTriple) -> tuple[NormalWord, NormalWord]:
    """Normal forms of (a b) c and a (b c)."""
    a, b, c = (pres.gen(g) for g in triple.word)
    left = pres.multiply(pres.multiply(a, b), c)
    right = pres.multiply(a, pres.multiply(b, c))
    return left, right


def check_consistency(pres: PcPresentation, c: int | None = None) -> ConsistencyReport:
    if pres.prime != 2:
        raise ValueError(
            f"the consistency test is implemented for p = 2 only (got p = {pres.prime})"
        )
    report = ConsistencyReport()
    for triple in consistency_triples(pres, c):
        left, right = bracketings(pres, triple)
        report.triples_checked += 1
        if left != right:
            report.consistent = False
            report.failure_count += 1
            if len(report.failures) < MAX_STORED_FAILURES:
                report.failures.append((triple, left, right))
    return report
