"""Concrete equidecomposable magmas used as oracles and demonstrations.

Every model exposes the same small surface: a binary `op`, a `decompose`
oracle returning the unique components or None, a reproducible `enumerate`,
and element `equal`. Enumeration orders: integers ascending, sequences by
period length then lexicographic, languages by total size then
lexicographic, terms in term order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd, isqrt

from magmakit.congruence import build_rewrite_system, normalize
from magmakit.terms import Alphabet, Term, generate_bounded, term_sort_key

__all__ = [
    "MagmaModel",
    "DiamondNat",
    "UpArrowNat",
    "PeriodicSeq",
    "SequenceModel",
    "FiniteLanguage",
    "LanguageModel",
    "FreeMagmaModel",
    "EFormModel",
    "EquidecReport",
    "diamond",
    "diamond_decompose",
    "uparrow",
    "uparrow_decompose",
    "shuffle",
    "shuffle_decompose",
    "lang_oplus",
    "lang_decompose",
    "term_to_language",
    "check_equidec_sampled",
    "MODEL_NAMES",
]

ALPHA = "a"
BETA = "b"


class MagmaModel:
    """Interface shared by all models."""

    def op(self, x, y):
        raise NotImplementedError

    def decompose(self, z):
        """The unique (x, y) with op(x, y) == z, or None if indecomposable."""
        raise NotImplementedError

    def enumerate(self, limit):
        raise NotImplementedError

    def equal(self, x, y):
        return x == y


# --- the pairing magma on positive integers -----------------------------------

def diamond(x: int, y: int) -> int:
    """Anti-diagonal pairing: (x^2 + y^2 + 2xy - x - 3y + 2) / 2, exactly."""
    if x < 1 or y < 1:
        raise ValueError("arguments must be >= 1")
    num = x * x + y * y + 2 * x * y - x - 3 * y + 2
    assert num % 2 == 0
    return num // 2


def diamond_decompose(z: int) -> tuple:
    """Invert the anti-diagonal enumeration: find the diagonal d with
    d(d-1)/2 < z <= d(d+1)/2, then the position within it."""
    if z < 1:
        raise ValueError("argument must be >= 1")
    d = (isqrt(8 * z - 7) + 1) // 2
    while d * (d + 1) // 2 < z:
        d += 1
    while d * (d - 1) // 2 >= z:
        d -= 1
    x = z - d * (d - 1) // 2
    return (x, d + 1 - x)


class DiamondNat(MagmaModel):
    """Positive integers under the anti-diagonal pairing; full and
    equidecomposable."""

    def op(self, x, y):
        return diamond(x, y)

    def decompose(self, z):
        return diamond_decompose(z)

    def enumerate(self, limit):
        return list(range(1, limit + 1))


# --- 2^x 3^y -------------------------------------------------------------------

def uparrow(x: int, y: int) -> int:
    if x < 1 or y < 1:
        raise ValueError("arguments must be >= 1")
    return 2**x * 3**y


def uparrow_decompose(z: int):
    """(a, b) when z = 2^a 3^b with a, b >= 1; None otherwise."""
    if z < 1:
        raise ValueError("argument must be >= 1")
    a = 0
    while z % 2 == 0:
        z //= 2
        a += 1
    b = 0
    while z % 3 == 0:
        z //= 3
        b += 1
    if z == 1 and a >= 1 and b >= 1:
        return (a, b)
    return None


class UpArrowNat(MagmaModel):
    """Positive integers under x, y -> 2^x 3^y; free but not finitely
    generated, semigraded by the identity."""

    def op(self, x, y):
        return uparrow(x, y)

    def decompose(self, z):
        return uparrow_decompose(z)

    def enumerate(self, limit):
        return list(range(1, limit + 1))


# --- periodic sequences ----------------------------------------------------------

class PeriodicSeq:
    """A periodic sequence stored as its minimal period word, so equality of
    sequences is equality of stored words."""

    __slots__ = ("word",)

    def __init__(self, word: str):
        if not word:
            raise ValueError("period word must be nonempty")
        n = len(word)
        for d in range(1, n + 1):
            if n % d == 0 and word[:d] * (n // d) == word:
                word = word[:d]
                break
        self.word = word

    @property
    def period(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, PeriodicSeq) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"PeriodicSeq({self.word!r})"


def shuffle(a: PeriodicSeq, b: PeriodicSeq) -> PeriodicSeq:
    """Interleave: a1, b1, a2, b2, ...; the result's minimal period divides
    2*lcm of the operand periods."""
    ta, tb = a.period, b.period
    span = 2 * ta * tb // gcd(ta, tb)
    chars = []
    for i in range(span):
        if i % 2 == 0:
            chars.append(a.word[(i // 2) % ta])
        else:
            chars.append(b.word[(i // 2) % tb])
    return PeriodicSeq("".join(chars))


def shuffle_decompose(s: PeriodicSeq) -> tuple:
    """Odd- and even-indexed subsequences, re-minimized; a section of the
    interleaving bijection."""
    tau = s.period
    evens = "".join(s.word[(2 * i) % tau] for i in range(tau))
    odds = "".join(s.word[(2 * i + 1) % tau] for i in range(tau))
    return (PeriodicSeq(evens), PeriodicSeq(odds))


class SequenceModel(MagmaModel):
    """Periodic sequences over a finite alphabet under interleaving; full
    and equidecomposable."""

    def __init__(self, alphabet: str = "01"):
        if len(set(alphabet)) != len(alphabet) or not alphabet:
            raise ValueError("alphabet must be nonempty without repeats")
        self.alphabet = alphabet

    def op(self, x, y):
        return shuffle(x, y)

    def decompose(self, z):
        return shuffle_decompose(z)

    def enumerate(self, limit):
        out = []
        seen = set()
        for n in itertools.count(1):
            for chars in itertools.product(self.alphabet, repeat=n):
                s = PeriodicSeq("".join(chars))
                if s not in seen:
                    seen.add(s)
                    out.append(s)
                    if len(out) >= limit:
                        return out
            if n > 24:  # safety; never reached for sane limits
                return out


# --- finite languages -------------------------------------------------------------

@dataclass(frozen=True)
class FiniteLanguage:
    """A finite set of words over {a, b}; the empty language is allowed."""

    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for w in self.words:
            if not isinstance(w, str) or any(c not in (ALPHA, BETA) for c in w):
                raise ValueError(f"word {w!r} is not over the alphabet a, b")

    def __repr__(self):
        if not self.words:
            return "FiniteLanguage(0)"
        body = ",".join(w or "-" for w in sorted(self.words))
        return f"FiniteLanguage({body})"


def lang_oplus(L: FiniteLanguage, M: FiniteLanguage) -> FiniteLanguage:
    """Prefix-map union aL | bM; the sizes add because the parts are
    disjoint."""
    return FiniteLanguage(frozenset(
        {ALPHA + w for w in L.words} | {BETA + w for w in M.words}))


def lang_decompose(L: FiniteLanguage):
    """Strip the leading letters; defined exactly when the empty word is
    absent (the empty language splits as 0 = 0 (+) 0)."""
    if "" in L.words:
        return None
    return (FiniteLanguage(frozenset(w[1:] for w in L.words if w[0] == ALPHA)),
            FiniteLanguage(frozenset(w[1:] for w in L.words if w[0] == BETA)))


class LanguageModel(MagmaModel):
    """Finite languages over {a, b} under the prefix-map union."""

    _POOL_DEPTH = 14

    def op(self, x, y):
        return lang_oplus(x, y)

    def decompose(self, z):
        return lang_decompose(z)

    def enumerate(self, limit):
        pool = [""]
        for n in range(1, 4):
            pool.extend("".join(c) for c in itertools.product(ALPHA + BETA,
                                                              repeat=n))
        pool = pool[:self._POOL_DEPTH]
        langs = []
        for mask in range(1 << len(pool)):
            words = frozenset(w for i, w in enumerate(pool) if mask >> i & 1)
            langs.append(FiniteLanguage(words))
        langs.sort(key=lambda L: (len(L.words) + sum(len(w) for w in L.words),
                                  tuple(sorted(L.words))))
        return langs[:limit]


def term_to_language(t: Term) -> FiniteLanguage:
    """Leaf-path language of a term over {1}: the root-to-leaf words with a
    for left edges and b for right edges. A monomorphism into languages."""
    if any(name != "1" for name in t.leaf_names()):
        raise ValueError("term must be over the cyclic alphabet {1}")

    def go(u):
        if u.is_leaf:
            return {""}
        return ({ALPHA + w for w in go(u.left)}
                | {BETA + w for w in go(u.right)})

    return FiniteLanguage(frozenset(go(t)))


# --- term models -------------------------------------------------------------------

class FreeMagmaModel(MagmaModel):
    """The free magma on an alphabet, with structural decomposition."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def op(self, x, y):
        return x + y

    def decompose(self, z):
        if z.is_leaf:
            return None
        return (z.left, z.right)

    def enumerate(self, limit):
        gens = {Term.leaf(a) for a in self.alphabet}
        out = []
        bound = 1
        while True:
            terms = sorted(generate_bounded(gens, bound), key=term_sort_key)
            if len(terms) >= limit or bound > 16:
                return terms[:limit]
            bound += 1


class EFormModel(MagmaModel):
    """A finitely presented equidecomposable magma as a model: elements are
    the rewrite normal forms of its presentation."""

    _LENGTH_CAP = 14

    def __init__(self, eform, max_rules: int = 10**4):
        self.eform = eform
        self.rs = build_rewrite_system(eform, max_rules)
        if not self.rs.completed:
            raise ValueError("rewrite system did not complete; "
                             "the model is unavailable for this presentation")

    def op(self, x, y):
        return normalize(self.rs, x + y)

    def decompose(self, z):
        z = normalize(self.rs, z)
        if not z.is_leaf:
            return (z.left, z.right)
        image = self.eform.phi[z.name]
        if image is z:
            return None
        return (normalize(self.rs, image.left), normalize(self.rs, image.right))

    def enumerate(self, limit):
        gens = {Term.leaf(a) for a in self.eform.alphabet}
        out = []
        for bound in range(1, self._LENGTH_CAP + 1):
            out = [t for t in sorted(generate_bounded(gens, bound),
                                     key=term_sort_key)
                   if normalize(self.rs, t) is t]
            if len(out) >= limit:
                return out[:limit]
        return out[:limit]

    def equal(self, x, y):
        return normalize(self.rs, x) is normalize(self.rs, y)


MODEL_NAMES = {
    "diamond": DiamondNat,
    "uparrow": UpArrowNat,
    "seq": SequenceModel,
    "lang": LanguageModel,
}


# --- sampled validation ---------------------------------------------------------

@dataclass
class EquidecReport:
    samples: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_equidec_sampled(model: MagmaModel, n_samples: int,
                          seed: int = 0) -> EquidecReport:
    """Sample argument pairs; flag any op collision across distinct pairs
    and any decompose that fails to invert op."""
    rng = random.Random(seed)
    pool = model.enumerate(max(32, isqrt(n_samples) + 8))
    seen: dict = {}
    violations = []
    for _ in range(n_samples):
        x = rng.choice(pool)
        y = rng.choice(pool)
        z = model.op(x, y)
        prev = seen.get(z)
        if prev is not None and prev != (x, y):
            violations.append(
                f"collision: op{(prev)} and op({x!r}, {y!r}) both give {z!r}")
        else:
            seen[z] = (x, y)
        parts = model.decompose(z)
        if parts is None:
            violations.append(f"decompose(op({x!r}, {y!r})) undefined")
        elif not (model.equal(parts[0], x) and model.equal(parts[1], y)):
            violations.append(
                f"decompose(op({x!r}, {y!r})) = {parts!r} is not the pair")
        if len(violations) >= 25:
            break
    return EquidecReport(n_samples, violations)
