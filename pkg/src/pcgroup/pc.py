"""Weighted power-conjugate presentations of finite p-groups and collection.

Generator indices are 0-based throughout the Python API; presentation
documents and printed output use 1-based indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

NormalWord = tuple[int, ...]
GenWord = Sequence[tuple[int, int]]

DOC_KEYS = {"p", "ngens", "dgens", "weights", "powers", "conjugates"}
OPTIONAL_DOC_KEYS = {"definitions", "names"}


class PresentationError(ValueError):
    pass


class Definition(NamedTuple):
    """How a non-minimal generator x_k arises from earlier ones.

    ``("comm", j, i)`` means x_j^{x_i} = x_j x_k, i.e. x_k = [x_j, x_i];
    ``("pow", i, -1)`` means x_i^p = x_k.
    """

    kind: str
    a: int
    b: int = -1


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True, eq=False)
class PcPresentation:
    """An immutable weighted pc-presentation.

    ``power_rhs[i]`` is the normal word equal to x_i^p. ``conj_rhs[(i, j)]``
    (i < j) is the tail t in x_j^{x_i} = x_j t; absent pairs commute.
    """

    prime: int
    ngens: int
    min_gens: int
    weights: tuple[int, ...]
    power_rhs: tuple[NormalWord, ...]
    conj_rhs: Mapping[tuple[int, int], NormalWord] = field(default_factory=dict)
    definitions: Mapping[int, Definition] | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        p, n = self.prime, self.ngens
        if not _is_prime(p) or p >= 256:
            raise PresentationError(f"prime must be a prime below 256, got {p}")
        if n < 0 or not 0 <= self.min_gens <= n:
            raise PresentationError("need 0 <= dgens <= ngens")
        if len(self.weights) != n:
            raise PresentationError("weights must have one entry per generator")
        if any(w < 1 for w in self.weights):
            raise PresentationError("weights must be positive")
        if any(a > b for a, b in zip(self.weights, self.weights[1:])):
            raise PresentationError("weights must be non-decreasing")
        if any(w != 1 for w in self.weights[: self.min_gens]):
            raise PresentationError("minimal generators must have weight 1")
        if len(self.power_rhs) != n:
            raise PresentationError("power_rhs must have one word per generator")
        for i, word in enumerate(self.power_rhs):
            self._check_word(word, above=i, what=f"power relation of x{i + 1}")
        for (i, j), word in self.conj_rhs.items():
            if not 0 <= i < j < n:
                raise PresentationError(f"bad conjugate pair ({i + 1},{j + 1})")
            what = f"conjugate relation ({i + 1},{j + 1})"
            self._check_word(word, above=j, what=what)
            floor = self.weights[i] + self.weights[j]
            for k, e in enumerate(word):
                if e and self.weights[k] < floor:
                    raise PresentationError(
                        f"{what}: x{k + 1} has weight {self.weights[k]} < {floor}"
                    )
        if self.names is not None and len(self.names) != n:
            raise PresentationError("names must have one entry per generator")
        if self.definitions is not None:
            for k, d in self.definitions.items():
                self._check_definition(k, d)

    def _check_word(self, word: NormalWord, above: int, what: str) -> None:
        if len(word) != self.ngens:
            raise PresentationError(f"{what}: word has wrong length")
        for k, e in enumerate(word):
            if not 0 <= e < self.prime:
                raise PresentationError(f"{what}: exponent {e} out of range")
            if e and k <= above:
                raise PresentationError(
                    f"{what}: generator x{k + 1} not above x{above + 1}"
                )

    def _check_definition(self, k: int, d: Definition) -> None:
        if not self.min_gens <= k < self.ngens:
            raise PresentationError(f"definition given for minimal or bad x{k + 1}")
        target = unit(self.ngens, k)
        if d.kind == "comm":
            rel = self.conj_rhs.get((d.b, d.a), identity(self.ngens))
            ok = d.b < d.a < k and rel == target
        elif d.kind == "pow":
            ok = d.a < k and self.power_rhs[d.a] == target
        else:
            ok = False
        if not ok:
            raise PresentationError(f"definition of x{k + 1} does not match a relation")

    # -- derived data used by the collector ---------------------------------

    @cached_property
    def _power_letters(self) -> list[list[int]]:
        return [word_letters(w) for w in self.power_rhs]

    @cached_property
    def _conj_letters(self) -> list[list[list[int]]]:
        n = self.ngens
        table = [[[] for _ in range(n)] for _ in range(n)]
        for (i, j), w in self.conj_rhs.items():
            table[i][j] = word_letters(w)
        return table

    @cached_property
    def _inverse_letters(self) -> list[list[int]]:
        # inv(x_g) = x_g^{p-1} * inv(x_g^p); the power word lives above g
        n, p = self.ngens, self.prime
        inv: list[list[int]] = [[] for _ in range(n)]
        for g in reversed(range(n)):
            letters = [g] * (p - 1)
            for k in reversed(range(n)):
                letters += inv[k] * self.power_rhs[g][k]
            exps = [0] * n
            self._run(exps, list(reversed(letters)))
            inv[g] = word_letters(exps)
        return inv

    @cached_property
    def generator_definitions(self) -> dict[int, Definition]:
        """Definitions for the non-minimal generators, derived if not given.

        A generator x_k is derivable when some relation has right-hand side
        exactly x_k and involves only generators below k.
        """
        if self.definitions is not None:
            defs = dict(self.definitions)
        else:
            defs = {}
            for k in range(self.min_gens, self.ngens):
                target = unit(self.ngens, k)
                for i in range(k):
                    if self.power_rhs[i] == target:
                        defs[k] = Definition("pow", i)
                        break
                else:
                    for (i, j), w in sorted(self.conj_rhs.items()):
                        if j < k and w == target:
                            defs[k] = Definition("comm", j, i)
                            break
        return defs

    # -- collection ------------------------------------------------------------

    def _run(self, exps: list[int], stack: list[int]) -> int:
        """Multiply the normal word ``exps`` on the right by the letters in
        ``stack`` (top of stack first). Returns the number of letters placed."""
        n, p = self.ngens, self.prime
        powers, conj = self._power_letters, self._conj_letters
        steps = 0
        while stack:
            g = stack.pop()
            steps += 1
            e = exps[g] + 1
            overflow = e == p
            row = conj[g]
            start = n
            if overflow:
                start = g + 1
            else:
                # generators commuting with x_g stay put until the first that doesn't
                for k in range(g + 1, n):
                    if exps[k] and row[k]:
                        start = k
                        break
            pending: list[int] = []
            for k in range(start, n):
                ek = exps[k]
                if ek:
                    exps[k] = 0
                    tail = row[k]
                    for _ in range(ek):
                        pending.append(k)
                        pending += tail
            if overflow:
                exps[g] = 0
                pending[0:0] = powers[g]
            else:
                exps[g] = e
            stack += reversed(pending)
        return steps

    def letters_of(self, word: GenWord) -> list[int]:
        """Expand a generator word into non-negative letters."""
        out: list[int] = []
        for k, e in word:
            if not 0 <= k < self.ngens:
                raise IndexError(f"generator index {k} out of range")
            if e >= 0:
                out += [k] * e
            else:
                out += self._inverse_letters[k] * (-e)
        return out

    def collect_with_steps(self, word: GenWord) -> tuple[NormalWord, int]:
        exps = [0] * self.ngens
        steps = self._run(exps, list(reversed(self.letters_of(word))))
        return tuple(exps), steps

    def collect(self, word: GenWord) -> NormalWord:
        """Collect a word of (generator, exponent) pairs to normal form."""
        return self.collect_with_steps(word)[0]

    # -- arithmetic ------------------------------------------------------------

    def identity(self) -> NormalWord:
        return identity(self.ngens)

    def gen(self, k: int) -> NormalWord:
        return unit(self.ngens, k)

    def check(self, a: NormalWord) -> NormalWord:
        if len(a) != self.ngens or any(not 0 <= e < self.prime for e in a):
            raise PresentationError(f"{a!r} is not a normal word of this presentation")
        return tuple(a)

    def multiply(self, a: NormalWord, b: NormalWord) -> NormalWord:
        self.check(a)
        self.check(b)
        exps = list(a)
        self._run(exps, list(reversed(word_letters(b))))
        return tuple(exps)

    def product(self, words: Iterable[NormalWord]) -> NormalWord:
        exps = [0] * self.ngens
        for w in words:
            self._run(exps, list(reversed(word_letters(self.check(w)))))
        return tuple(exps)

    def inverse(self, a: NormalWord) -> NormalWord:
        inv = self._inverse_letters
        letters: list[int] = []
        for k in reversed(range(self.ngens)):
            letters += inv[k] * self.check(a)[k]
        exps = [0] * self.ngens
        self._run(exps, list(reversed(letters)))
        return tuple(exps)

    def power(self, a: NormalWord, k: int) -> NormalWord:
        if k < 0:
            a, k = self.inverse(a), -k
        result, base = self.identity(), self.check(a)
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def conjugate(self, a: NormalWord, g: NormalWord) -> NormalWord:
        """a^g = g^-1 a g."""
        return self.product((self.inverse(g), a, g))

    def commutator(self, a: NormalWord, b: NormalWord) -> NormalWord:
        """[a, b] = a^-1 a^b."""
        return self.multiply(self.inverse(a), self.conjugate(a, b))

    def element_order(self, a: NormalWord) -> int:
        order, x = 1, self.check(a)
        e = self.identity()
        while x != e:
            x = self.power(x, self.prime)
            order *= self.prime
        return order

    # -- printing ------------------------------------------------------------

    def gen_name(self, k: int) -> str:
        return self.names[k] if self.names else f"x_{k + 1}"

    def format(self, a: NormalWord) -> str:
        """Canonical string such as ``x_1x_3^2zy_1``, or ``1`` for the identity."""
        parts = []
        for k, e in enumerate(a):
            if e:
                parts.append(self.gen_name(k) + (f"^{e}" if e != 1 else ""))
        return "".join(parts) or "1"

    # -- documents -------------------------------------------------------------

    def to_document(self) -> dict:
        doc = {
            "p": self.prime,
            "ngens": self.ngens,
            "dgens": self.min_gens,
            "weights": list(self.weights),
            "powers": {
                str(i + 1): _pairs(w) for i, w in enumerate(self.power_rhs) if any(w)
            },
            "conjugates": {
                f"{i + 1},{j + 1}": _pairs(w)
                for (i, j), w in sorted(self.conj_rhs.items())
                if any(w)
            },
        }
        if self.definitions is not None:
            doc["definitions"] = {
                str(k + 1): [d.kind, d.a + 1] + ([d.b + 1] if d.kind == "comm" else [])
                for k, d in sorted(self.definitions.items())
            }
        if self.names is not None:
            doc["names"] = list(self.names)
        return doc


def identity(n: int) -> NormalWord:
    return (0,) * n


def unit(n: int, k: int) -> NormalWord:
    return tuple(1 if i == k else 0 for i in range(n))


def word_letters(w: Sequence[int]) -> list[int]:
    out: list[int] = []
    for k, e in enumerate(w):
        out += [k] * e
    return out


def _pairs(w: NormalWord) -> list[list[int]]:
    return [[k + 1, e] for k, e in enumerate(w) if e]


def _word_from_pairs(pairs, n: int, p: int, what: str) -> NormalWord:
    if not isinstance(pairs, list):
        raise PresentationError(f"{what}: expected a list of [index, exponent] pairs")
    exps = [0] * n
    for item in pairs:
        if not (isinstance(item, list) and len(item) == 2
                and all(isinstance(v, int) for v in item)):
            raise PresentationError(f"{what}: malformed pair {item!r}")
        k, e = item
        if not 1 <= k <= n:
            raise PresentationError(f"{what}: generator index {k} out of range")
        if not 0 <= e < p:
            raise PresentationError(f"{what}: exponent {e} out of range [0, {p})")
        if exps[k - 1]:
            raise PresentationError(f"{what}: generator {k} repeated")
        exps[k - 1] = e
    return tuple(exps)


def load_presentation(doc: Mapping) -> PcPresentation:
    """Validate a presentation document (parsed JSON) and build the presentation."""
    if not isinstance(doc, Mapping):
        raise PresentationError("document must be a JSON object")
    unknown = set(doc) - DOC_KEYS - OPTIONAL_DOC_KEYS
    if unknown:
        raise PresentationError(f"unknown keys: {sorted(unknown)}")
    missing = DOC_KEYS - set(doc)
    if missing:
        raise PresentationError(f"missing keys: {sorted(missing)}")
    p, n, d = doc["p"], doc["ngens"], doc["dgens"]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (p, n, d)):
        raise PresentationError("p, ngens and dgens must be integers")
    if not _is_prime(p) or p >= 256:
        raise PresentationError(f"p must be a prime below 256, got {p}")
    weights = doc["weights"]
    if not isinstance(weights, list) or not all(isinstance(w, int) for w in weights):
        raise PresentationError("weights must be a list of integers")

    powers = [identity(n) for _ in range(n)]
    if not isinstance(doc["powers"], Mapping):
        raise PresentationError("powers must be an object")
    for key, pairs in doc["powers"].items():
        try:
            i = int(key)
        except ValueError:
            raise PresentationError(f"bad power key {key!r}") from None
        if not 1 <= i <= n:
            raise PresentationError(f"power key {key!r} out of range")
        powers[i - 1] = _word_from_pairs(pairs, n, p, f"power relation {key}")

    conj: dict[tuple[int, int], NormalWord] = {}
    if not isinstance(doc["conjugates"], Mapping):
        raise PresentationError("conjugates must be an object")
    for key, pairs in doc["conjugates"].items():
        try:
            i, j = (int(s) for s in key.split(","))
        except ValueError:
            raise PresentationError(f"bad conjugate key {key!r}") from None
        if not 1 <= i < j <= n:
            raise PresentationError(f"conjugate key {key!r} needs 1 <= i < j <= ngens")
        word = _word_from_pairs(pairs, n, p, f"conjugate relation {key}")
        if any(word):
            conj[(i - 1, j - 1)] = word

    definitions = None
    if "definitions" in doc:
        definitions = {}
        for key, spec in doc["definitions"].items():
            try:
                kind, *args = spec
                k = int(key) - 1
                if kind == "comm" and len(args) == 2:
                    definitions[k] = Definition("comm", args[0] - 1, args[1] - 1)
                elif kind == "pow" and len(args) == 1:
                    definitions[k] = Definition("pow", args[0] - 1)
                else:
                    raise ValueError
            except (TypeError, ValueError):
                raise PresentationError(f"bad definition for {key!r}") from None

    names = doc.get("names")
    if names is not None:
        if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
            raise PresentationError("names must be a list of strings")
        names = tuple(names)

    return PcPresentation(
        prime=p,
        ngens=n,
        min_gens=d,
        weights=tuple(weights),
        power_rhs=tuple(powers),
        conj_rhs=conj,
        definitions=definitions,
        names=names,
    )


def read_presentation(path: str | Path) -> PcPresentation:
    with open(path, encoding="utf-8") as fh:
        return load_presentation(json.load(fh))


def write_presentation(pres: PcPresentation, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pres.to_document(), fh, indent=1)
        fh.write("\n")
