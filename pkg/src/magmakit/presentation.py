"""Finite presentations of equidecomposable magmas and their reduction.

A presentation is reduced by a fixed repertoire of magma-preserving
transformations, tagged I..VII:

  I    split a relation between two composite terms into the component
       relations it generates in the square free magma
  II   a generator with two distinct composite images keeps the smaller one;
       the two images become component relations (as a degenerate sub-case,
       a redundant diagonal relation a=a next to another a=y is dropped)
  III  mirror of II for two composite terms sharing a generator image
  IV   flip a relation whose first component is composite
  V    give a relationless generator its diagonal relation a=a
  VI   two generators with the same image are merged: the duplicate is
       deleted and substituted away (also used to merge two generators
       related directly by a=b)
  VII  a generator whose single relation a=y does not mention a is a mere
       name for y: delete it and substitute y for it everywhere

Run to fixpoint with the deterministic schedule below, every finite
presentation lands on a relation set that is a total injective generator
map sending each generator to a term that mentions it: an E-form.
"""
from __future__ import annotations

from dataclasses import dataclass

from magmakit.terms import (
    Alphabet,
    Term,
    format_term,
    pair_sort_key,
    pair_split,
    parse_term,
    substitute,
    term_sort_key,
)

__all__ = [
    "Presentation",
    "EForm",
    "ReductionStep",
    "ReductionTrace",
    "FreeProduct",
    "apply_transformation",
    "reduce_presentation",
    "alpha_measure",
    "beta_measure",
    "free_product",
    "cyclic",
    "parse_presentation",
    "render_presentation",
    "parse_eform",
    "render_eform",
]

TAGS = ("I", "II", "III", "IV", "V", "VI", "VII")


def _check_over(alphabet: Alphabet, t: Term):
    for name in t.leaf_names():
        if name not in alphabet:
            raise ValueError(f"term {format_term(t)} uses unknown generator {name!r}")


class Presentation:
    """Generators plus a finite relation set, kept deduplicated and in a
    canonical order so reduction is reproducible."""

    __slots__ = ("alphabet", "relations")

    def __init__(self, alphabet: Alphabet, relations):
        self.alphabet = alphabet
        seen = []
        have = set()
        for x, y in relations:
            _check_over(alphabet, x)
            _check_over(alphabet, y)
            if (x, y) not in have:
                have.add((x, y))
                seen.append((x, y))
        seen.sort(key=pair_sort_key)
        self.relations = tuple(seen)

    def __eq__(self, other):
        return (isinstance(other, Presentation)
                and self.alphabet == other.alphabet
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.alphabet, self.relations))

    def __repr__(self):
        rels = ", ".join(f"{format_term(x)}={format_term(y)}"
                         for x, y in self.relations)
        return f"({' '.join(self.alphabet)} | {rels})"


class EForm:
    """Injective generator map phi with a occurring in phi(a) for every a;
    the canonical datum of a finitely presented equidecomposable magma."""

    __slots__ = ("alphabet", "phi")

    def __init__(self, alphabet: Alphabet, phi: dict):
        missing = [a for a in alphabet if a not in phi]
        if missing:
            raise ValueError(f"map not total; missing {missing}")
        extra = [a for a in phi if a not in alphabet]
        if extra:
            raise ValueError(f"map defined outside the alphabet: {extra}")
        images = set()
        for a in alphabet:
            t = phi[a]
            _check_over(alphabet, t)
            if a not in t.leaf_names():
                raise ValueError(
                    f"{a} does not occur in its image {format_term(t)}")
            if t in images:
                raise ValueError(
                    f"map not injective: duplicate image {format_term(t)}")
            images.add(t)
        self.alphabet = alphabet
        self.phi = {a: phi[a] for a in alphabet}

    def image_pairs(self):
        """The relation pairs (a, phi(a)) as terms."""
        return tuple((Term.leaf(a), self.phi[a]) for a in self.alphabet)

    def as_presentation(self) -> Presentation:
        return Presentation(self.alphabet, self.image_pairs())

    def max_image_length(self) -> int:
        return max(t.length for t in self.phi.values())

    def __eq__(self, other):
        return (isinstance(other, EForm)
                and self.alphabet == other.alphabet
                and self.phi == other.phi)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.phi[a] for a in self.alphabet)))

    def __repr__(self):
        body = "; ".join(f"{a} -> {format_term(self.phi[a], True)}"
                         for a in self.alphabet)
        return f"EForm({body})"


@dataclass(frozen=True)
class ReductionStep:
    tag: str
    before: Presentation
    after: Presentation
    detail: str


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple

    def tags(self):
        return [s.tag for s in self.steps]

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class FreeProduct:
    eform: EForm
    left_renaming: dict
    right_renaming: dict


# --- measures ----------------------------------------------------------------

def alpha_measure(relations) -> int:
    """Largest component length over all relation pairs (0 when empty)."""
    relations = tuple(relations)
    if not relations:
        return 0
    return max(max(x.length, y.length) for x, y in relations)


def beta_measure(p: Presentation) -> int:
    """Generator count + relation count + relations with generator second
    component + generators whose diagonal pair is absent."""
    return (len(p.alphabet)
            + len(p.relations)
            + sum(1 for _, y in p.relations if y.is_leaf)
            + _beta4(p))


def _beta4(p: Presentation) -> int:
    diag = {x.name for x, y in p.relations if x.is_leaf and x is y}
    return sum(1 for a in p.alphabet if a not in diag)


def pair_maxlen_multiset(relations):
    """Sorted multiset of per-pair max component lengths; the phase-one
    transformations strictly decrease it in the Dershowitz-Manna order."""
    return sorted(max(x.length, y.length) for x, y in relations)


# --- the transformations -----------------------------------------------------

def _subst_relations(relations, mapping, skip=None):
    out = []
    for rel in relations:
        if rel == skip:
            continue
        out.append((substitute(rel[0], mapping), substitute(rel[1], mapping)))
    return out


def _identity_map(alphabet: Alphabet) -> dict:
    return {a: Term.leaf(a) for a in alphabet}


def _try_I(p: Presentation):
    if all(x.is_leaf or y.is_leaf for x, y in p.relations):
        return None
    worst = min((r for r in p.relations
                 if not r[0].is_leaf and not r[1].is_leaf),
                key=pair_sort_key)
    new_rels = []
    for r in p.relations:
        new_rels.extend(sorted(pair_split(r), key=pair_sort_key))
    after = Presentation(p.alphabet, new_rels)
    detail = f"split {format_term(worst[0])} = {format_term(worst[1])}"
    return after, "I", detail


def _composite_images(p: Presentation):
    """Generator -> sorted composite images, for generators with two or more."""
    by_gen: dict = {}
    for x, y in p.relations:
        if x.is_leaf and not y.is_leaf:
            by_gen.setdefault(x.name, []).append(y)
    return {a: sorted(ys, key=term_sort_key)
            for a, ys in by_gen.items() if len(ys) > 1}


def _try_II(p: Presentation):
    # A generator with two composite images keeps the smallest; the largest
    # is dropped and the two images split into component relations.
    multi = _composite_images(p)
    if multi:
        a = min(multi, key=p.alphabet.index)
        images = multi[a]
        keep, drop = images[0], images[-1]
        rels = [r for r in p.relations if r != (Term.leaf(a), drop)]
        rels.extend(sorted(pair_split((keep, drop)), key=pair_sort_key))
        after = Presentation(p.alphabet, rels)
        detail = (f"merge images of {a}: keep {format_term(keep)},"
                  f" split against {format_term(drop)}")
        return after, "II", detail
    # Degenerate sub-case: a=a is redundant next to any other relation for a.
    firsts: dict = {}
    for x, y in p.relations:
        if x.is_leaf:
            firsts.setdefault(x.name, []).append(y)
    for a in p.alphabet:
        ys = firsts.get(a, [])
        if len(ys) > 1 and any(y.is_leaf and y.name == a for y in ys):
            la = Term.leaf(a)
            rels = [r for r in p.relations if r != (la, la)]
            after = Presentation(p.alphabet, rels)
            return after, "II", f"drop redundant {a} = {a}"
    return None


def _try_III(p: Presentation):
    by_gen: dict = {}
    for x, y in p.relations:
        if y.is_leaf and not x.is_leaf:
            by_gen.setdefault(y.name, []).append(x)
    multi = {b: sorted(xs, key=term_sort_key)
             for b, xs in by_gen.items() if len(xs) > 1}
    if not multi:
        return None
    b = min(multi, key=p.alphabet.index)
    xs = multi[b]
    keep, drop = xs[0], xs[-1]
    rels = [r for r in p.relations if r != (drop, Term.leaf(b))]
    rels.extend(sorted(pair_split((keep, drop)), key=pair_sort_key))
    after = Presentation(p.alphabet, rels)
    detail = (f"merge preimages of {b}: keep {format_term(keep)},"
              f" split against {format_term(drop)}")
    return after, "III", detail


def _try_IV(p: Presentation):
    flips = [r for r in p.relations if not r[0].is_leaf]
    if not flips:
        return None
    x, y = min(flips, key=pair_sort_key)
    rels = [r for r in p.relations if r != (x, y)]
    rels.append((y, x))
    after = Presentation(p.alphabet, rels)
    return after, "IV", f"flip {format_term(x)} = {format_term(y)}"


def _try_V(p: Presentation):
    firsts = {x.name for x, _ in p.relations if x.is_leaf}
    bare = [a for a in p.alphabet if a not in firsts]
    if not bare:
        return None
    a = bare[0]
    la = Term.leaf(a)
    after = Presentation(p.alphabet, list(p.relations) + [(la, la)])
    return after, "V", f"add {a} = {a}"


def _smaller_alphabet(alphabet: Alphabet, drop: str) -> Alphabet:
    return Alphabet(tuple(a for a in alphabet if a != drop))


def _try_VII(p: Presentation):
    counts: dict = {}
    for x, _ in p.relations:
        if x.is_leaf:
            counts[x.name] = counts.get(x.name, 0) + 1
    for a in p.alphabet:
        if counts.get(a) != 1:
            continue
        la = Term.leaf(a)
        y = next(y for x, y in p.relations if x is la)
        if a in y.leaf_names():
            continue
        mapping = _identity_map(p.alphabet)
        mapping[a] = y
        rels = _subst_relations(p.relations, mapping, skip=(la, y))
        after = Presentation(_smaller_alphabet(p.alphabet, a), rels)
        return after, "VII", f"drop {a}, rewrite {a}->{format_term(y)}"
    return None


def _try_VI(p: Presentation):
    # Two generators with one image: delete the alphabet-larger one.
    by_image: dict = {}
    for x, y in p.relations:
        if x.is_leaf:
            by_image.setdefault(y, []).append(x.name)
    cands = [(y, sorted(names, key=p.alphabet.index))
             for y, names in by_image.items() if len(names) > 1]
    if cands:
        y, names = min(cands, key=lambda c: term_sort_key(c[0]))
        keep, drop = names[0], names[1]
        mapping = _identity_map(p.alphabet)
        mapping[drop] = Term.leaf(keep)
        rels = _subst_relations(p.relations, mapping, skip=(Term.leaf(drop), y))
        after = Presentation(_smaller_alphabet(p.alphabet, drop), rels)
        return after, "VI", f"drop {drop}, rewrite {drop}->{keep}"
    # Two generators related directly by a = b: merge them the same way.
    direct = [(x, y) for x, y in p.relations
              if x.is_leaf and y.is_leaf and x is not y]
    if direct:
        x, y = min(direct, key=pair_sort_key)
        keep, drop = sorted((x.name, y.name), key=p.alphabet.index)
        mapping = _identity_map(p.alphabet)
        mapping[drop] = Term.leaf(keep)
        rels = _subst_relations(p.relations, mapping, skip=(x, y))
        after = Presentation(_smaller_alphabet(p.alphabet, drop), rels)
        return after, "VI", f"drop {drop}, rewrite {drop}->{keep}"
    return None


# Phase one first; phase two tries VII ahead of VI so that a chain of pure
# renamings is eliminated by VII, matching the canonical reduction order.
_SCHEDULE = (_try_I, _try_II, _try_III, _try_IV, _try_V, _try_VII, _try_VI)

_BY_TAG = {
    "I": (_try_I,),
    "II": (_try_II,),
    "III": (_try_III,),
    "IV": (_try_IV,),
    "V": (_try_V,),
    "VI": (_try_VI,),
    "VII": (_try_VII,),
}


def apply_transformation(p: Presentation, which: str):
    """Apply one tagged transformation; None when it is not applicable."""
    if which not in _BY_TAG:
        raise ValueError(f"unknown transformation tag {which!r}")
    res = _BY_TAG[which][0](p)
    return res[0] if res else None


def reduce_presentation(p: Presentation):
    """Reduce to E-form; returns (EForm, ReductionTrace).

    Always terminates: each step strictly decreases the lexicographic
    measure (generator count, bare-generator count, relation max-length
    multiset, composite-first relation count, redundant-diagonal count).
    """
    steps = []
    cap = 1000 + 50 * (alpha_measure(p.relations) + beta_measure(p))
    while True:
        for tryer in _SCHEDULE:
            res = tryer(p)
            if res is not None:
                after, tag, detail = res
                steps.append(ReductionStep(tag, p, after, detail))
                p = after
                break
        else:
            break
        if len(steps) > cap:
            raise RuntimeError(
                "reduction did not terminate within the step cap; "
                "this is a bug in the transformation schedule")
    phi: dict = {}
    for x, y in p.relations:
        if not x.is_leaf or x.name in phi:
            raise RuntimeError(
                f"irreducible presentation is not a generator map: {p!r}")
        phi[x.name] = y
    eform = EForm(p.alphabet, phi)  # validates injectivity + self-reference
    return eform, ReductionTrace(tuple(steps))


# --- constructions -----------------------------------------------------------

def cyclic(x: Term) -> EForm:
    """The one-generator magma with the single relation 1 = x."""
    if any(name != "1" for name in x.leaf_names()):
        raise ValueError("cyclic relation term must be over the alphabet {1}")
    return EForm(Alphabet(("1",)), {"1": x})


def _fresh(base: str, taken: set) -> str:
    stem = base if base != "1" else "one"  # "11" would not be a valid name
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def free_product(e1: EForm, e2: EForm) -> FreeProduct:
    """Disjoint union of the two generator maps; colliding names get numeric
    suffixes on both sides and the renamings are returned."""
    collide = set(e1.alphabet) & set(e2.alphabet)
    taken = set(e1.alphabet) | set(e2.alphabet)
    ren1, ren2 = {}, {}
    for name in e1.alphabet:
        if name in collide:
            ren1[name] = _fresh(name, taken)
            taken.add(ren1[name])
    for name in e2.alphabet:
        if name in collide:
            ren2[name] = _fresh(name, taken)
            taken.add(ren2[name])

    def rename(e: EForm, ren: dict):
        names = tuple(ren.get(a, a) for a in e.alphabet)
        leafmap = {a: Term.leaf(ren.get(a, a)) for a in e.alphabet}
        phi = {ren.get(a, a): substitute(e.phi[a], leafmap) for a in e.alphabet}
        return names, phi

    names1, phi1 = rename(e1, ren1)
    names2, phi2 = rename(e2, ren2)
    alphabet = Alphabet(names1 + names2)
    phi = {**phi1, **phi2}
    return FreeProduct(EForm(alphabet, phi), ren1, ren2)


# --- text formats ------------------------------------------------------------

def parse_presentation(text: str) -> Presentation:
    """Line format: a `gens:` header, then `rel: term = term` lines.
    `#` starts a comment; blank lines are ignored."""
    alphabet = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if alphabet is not None:
                raise ValueError(f"line {lineno}: duplicate gens: line")
            names = line[len("gens:"):].split()
            if not names:
                raise ValueError(f"line {lineno}: empty generator list")
            alphabet = Alphabet(names)
        elif line.startswith("rel:"):
            if alphabet is None:
                raise ValueError(f"line {lineno}: rel: before gens:")
            body = line[len("rel:"):]
            if body.count("=") != 1:
                raise ValueError(f"line {lineno}: expected one '=' in relation")
            lhs, rhs = body.split("=")
            try:
                relations.append((parse_term(lhs, alphabet),
                                  parse_term(rhs, alphabet)))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        else:
            raise ValueError(f"line {lineno}: expected gens: or rel:")
    if alphabet is None:
        raise ValueError("missing gens: line")
    return Presentation(alphabet, relations)


def render_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.alphabet)]
    lines.extend(f"rel: {format_term(x)} = {format_term(y)}"
                 for x, y in p.relations)
    return "\n".join(lines) + "\n"


def parse_eform(text: str) -> EForm:
    """`eform:` header, then one `map: gen -> term` line per generator."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines or lines[0][1] != "eform:":
        raise ValueError("missing eform: header")
    names = []
    bodies = []
    for lineno, line in lines[1:]:
        if not line.startswith("map:"):
            raise ValueError(f"line {lineno}: expected map: line")
        body = line[len("map:"):]
        if "->" not in body:
            raise ValueError(f"line {lineno}: expected '->'")
        name, image = body.split("->", 1)
        names.append(name.strip())
        bodies.append((lineno, image))
    alphabet = Alphabet(names)
    phi = {}
    for name, (lineno, image) in zip(names, bodies):
        try:
            phi[name] = parse_term(image, alphabet)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return EForm(alphabet, phi)


def render_eform(e: EForm) -> str:
    lines = ["eform:"]
    lines.extend(f"map: {a} -> {format_term(e.phi[a])}" for a in e.alphabet)
    return "\n".join(lines) + "\n"
