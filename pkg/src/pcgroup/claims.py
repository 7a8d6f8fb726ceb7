"""Desk-scale reproduction of the structural claims about the families."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import analysis
from .automorphism import induce, is_automorphism, is_class_preserving, is_inner, out_c
from .consistency import check_consistency
from .families import CLASS_REPRESENTATIVES, EPSILONS, Z, FamilySpec, build_family, theta, x, y
from .pc import NormalWord, PcPresentation
from .quadform import classify_epsilons


@dataclass
class Claim:
    name: str
    passed: bool = True
    checked: int = 0
    details: list[str] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def fail(self, msg: str) -> None:
        self.passed = False
        if len(self.details) < 20:
            self.details.append(msg)


Corruption = Callable[[PcPresentation], PcPresentation]


def drop_relation(key: str) -> Corruption:
    """Test hook: ``"conj:1,3"`` or ``"power:1"`` (1-based) removes that relation."""
    kind, _, where = key.partition(":")
    idx = [int(s) - 1 for s in where.split(",")]

    def corrupt(pres: PcPresentation) -> PcPresentation:
        if kind == "conj":
            conj = {k: v for k, v in pres.conj_rhs.items() if k != tuple(idx)}
            return replace(pres, conj_rhs=conj, definitions=None)
        if kind == "power":
            powers = list(pres.power_rhs)
            powers[idx[0]] = pres.identity()
            return replace(pres, power_rhs=tuple(powers), definitions=None)
        raise ValueError(f"unknown relation kind {kind!r}")

    return corrupt


def _word(pres: PcPresentation, *gens: int) -> NormalWord:
    w = [0] * pres.ngens
    for g in gens:
        w[g] ^= 1
    return tuple(w)


def normal_form_rows(n: int, eps) -> list[tuple[str, tuple[int, int, int], list[int]]]:
    """The tabulated triples (a, b, c) with the listed word for a(bc) and (ab)c.

    The listed word is normal except for (y_1, x_3, x_1), where it reads y_1 y_1.
    """
    rows = [
        ("(x3,x2,x1)", (x(3), x(2), x(1)), [x(1), x(2), x(3), y(1)]),
        ("(x4,x2,x1)", (x(4), x(2), x(1)), [x(1), x(2), x(4)]),
        ("(x4,x3,x1)", (x(4), x(3), x(1)), [x(1), x(3), x(4), Z, y(1)]),
        ("(x4,x3,x2)", (x(4), x(3), x(2)), [x(2), x(3), x(4), Z]),
    ]
    for s in range(1, n - 1):
        rows += [
            (f"(y{s},x2,x1)", (y(s), x(2), x(1)), [x(1), x(2), Z, y(s), y(s + 1)]),
            (f"(y{s},x3,x1)", (y(s), x(3), x(1)), [x(1), x(3), y(1), y(s)]),
            (f"(y{s},x4,x1)", (y(s), x(4), x(1)), [x(1), x(4), Z, y(s), y(s + 1)]),
            (f"(y{s},x3,x2)", (y(s), x(3), x(2)), [x(2), x(3), Z, y(s), y(s + 1)]),
            (f"(y{s},x4,x2)", (y(s), x(4), x(2)), [x(2), x(4), y(s)]),
            (f"(y{s},x4,x3)", (y(s), x(4), x(3)), [x(3), x(4), y(s), y(s + 1)]),
        ]
    zs = lambda j: [Z] if eps[j - 1] else []  # noqa: E731
    for i in range(1, 5):
        for j in range(i + 1, 5):
            rows.append((f"(x{j},x{j},x{i})", (x(j), x(j), x(i)), [x(i)] + zs(j)))
            rows.append((f"(x{j},x{i},x{i})", (x(j), x(i), x(i)), [x(j)] + zs(i)))
    for s in range(1, n - 1):
        for i in (1, 3):
            rows.append((f"(y{s},y{s},x{i})", (y(s), y(s), x(i)), [x(i), y(s + 1)]))
        for i in range(1, 5):
            rows.append((f"(y{s},x{i},x{i})", (y(s), x(i), x(i)), zs(i) + [y(s)]))
    for i in range(1, 5):
        rows.append((f"(x{i},x{i},x{i})", (x(i), x(i), x(i)), [x(i)] + zs(i)))
    return rows


def lemma_dichotomy_violations(pres: PcPresentation) -> int:
    """Count h with x_4-exponent 1 for which neither h^{x_2} = hz nor h^{x_1 x_3} = hz."""
    grp = analysis.tables(pres)
    zi = grp.index(pres.gen(Z))
    h = np.flatnonzero(grp.digits[:, x(4)] == 1)
    hz = grp.rmul_by(h, zi)
    by_x2 = grp.gen_conj[x(2)][h]
    by_x1x3 = grp.gen_conj[x(3)][grp.gen_conj[x(1)][h]]
    return int(np.count_nonzero((by_x2 != hz) & (by_x1x3 != hz)))


def run_claims(n_max: int = 6, corrupt: Corruption | None = None, outc: bool = True) -> list[Claim]:
    build = build_family if corrupt is None else (lambda spec: corrupt(build_family(spec)))
    consistency = Claim("consistency and order 2^(n+5)")
    structure = Claim("class n+1, coclass 4, lower central series orders")
    centre = Claim("centre = {1, z, y_n, z y_n}")
    table = Claim("normal forms of the tabulated triples")
    theta_claim = Claim("theta is a class-preserving, non-inner automorphism")
    dichotomy = Claim("h^{x_2} = hz or h^{x_1x_3} = hz whenever h has x_4-exponent 1")
    claims = [consistency, structure, centre, table, theta_claim, dichotomy]

    for n in range(1, n_max + 1):
        for eps in EPSILONS:
            spec = FamilySpec(n, eps)
            pres = build(spec)
            tag = f"n={n} eps={''.join(map(str, eps))}"
            rep = check_consistency(pres, n + 1)
            full = check_consistency(pres)
            consistency.checked += 1
            if not (rep.consistent and full.consistent):
                bad = (rep.failures or full.failures)[0]
                consistency.fail(
                    f"{tag}: triple {bad[0].describe(pres)} gives "
                    f"{pres.format(bad[1])} vs {pres.format(bad[2])}"
                )
                continue
            elements = analysis.enumerate_elements(pres)
            if len(elements) != 2 ** (n + 5):
                consistency.fail(f"{tag}: {len(elements)} elements")

            series = [len(s) for s in analysis.lower_central_series(pres)]
            expected = [2 ** (n + 5), 2 ** (n + 1)] + [2 ** (n - j + 2) for j in range(3, n + 2)] + [1]
            structure.checked += 1
            if series != expected:
                structure.fail(f"{tag}: series orders {series}, expected {expected}")

            centre.checked += 1
            got = set(analysis.center(pres).elements)
            want = {pres.identity(), _word(pres, Z), _word(pres, y(n)), _word(pres, Z, y(n))}
            if got != want:
                centre.fail(f"{tag}: centre {sorted(pres.format(w) for w in got)}")

            for label, (a, b, c), gens in normal_form_rows(n, eps):
                table.checked += 1
                ga, gb, gc = pres.gen(a), pres.gen(b), pres.gen(c)
                left = pres.multiply(ga, pres.multiply(gb, gc))
                right = pres.multiply(pres.multiply(ga, gb), gc)
                want_w = pres.collect([(g, 1) for g in gens])
                if not left == right == want_w:
                    table.fail(f"{tag} {label}: {pres.format(left)}, {pres.format(right)}")

            theta_claim.checked += 1
            try:
                em = induce(pres, theta(spec))
            except ValueError as exc:
                theta_claim.fail(f"{tag}: {exc}")
            else:
                if not is_automorphism(pres, em):
                    theta_claim.fail(f"{tag}: not bijective")
                if is_inner(pres, em) is not None:
                    theta_claim.fail(f"{tag}: inner")
                ok, moved = is_class_preserving(pres, em, analysis.conjugacy_classes(pres))
                if not ok:
                    theta_claim.fail(f"{tag}: moves the class of {pres.format(moved)}")

            dichotomy.checked += 1
            bad = lemma_dichotomy_violations(pres)
            if bad:
                dichotomy.fail(f"{tag}: {bad} elements")

    quad = Claim("four pseudo-isometry classes with the standard representatives apart")
    cls = classify_epsilons()
    quad.checked = 16
    quad.values = {"sizes": cls.sizes}
    if len(cls.classes) != 4 or len({cls.class_of(e) for e in CLASS_REPRESENTATIVES}) != 4:
        quad.fail(f"classes: {cls.classes}")
    claims.append(quad)

    if outc:
        oc = Claim("|Out_c(H_1^eps)| >= 2 for the four representatives")
        for eps in CLASS_REPRESENTATIVES:
            pres = build(FamilySpec(1, eps))
            oc.checked += 1
            try:
                res = out_c(pres)
            except ValueError as exc:
                oc.fail(f"eps={''.join(map(str, eps))}: {exc}")
                continue
            oc.values["".join(map(str, eps))] = res.order
            if res.order < 2:
                oc.fail(f"eps={''.join(map(str, eps))}: |Out_c| = {res.order}")
        claims.append(oc)
    return claims
