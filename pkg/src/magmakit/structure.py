"""Structural theory of presented equidecomposable magmas: the initial/full
split, freeness and fullness tests, isomorphism via conjugacy of the
generator maps, mirror utilities, and bounded checks of the product theorem.
"""
from __future__ import annotations

from dataclasses import dataclass

from magmakit.congruence import build_rewrite_system, normalize
from magmakit.presentation import EForm, Presentation
from magmakit.terms import (
    Alphabet,
    Term,
    generate_bounded,
    substitute,
    term_sort_key,
)

__all__ = [
    "SplitResult",
    "SearchTooLarge",
    "split",
    "is_free",
    "is_full",
    "in_initial_part",
    "conjugate",
    "verify_conjugacy",
    "isomorphic",
    "mirror",
    "mirror_eform",
    "product_indecomposables_bounded",
    "jonsson_tarski",
]


class SearchTooLarge(RuntimeError):
    """The conjugacy search space exceeds the configured generator cap."""


@dataclass(frozen=True)
class SplitResult:
    """Partition of the generators into the initial (fixed-point) part and
    the full part. The initial part is a free magma on its generators; the
    full part is reported as the sub-presentation over the original alphabet
    together with the membership predicate `in_initial_part`."""

    initial_gens: tuple
    full_gens: tuple
    initial_eform: EForm | None
    full_part_presentation: Presentation


def split(e: EForm) -> SplitResult:
    initial = tuple(a for a in e.alphabet if e.phi[a] is Term.leaf(a))
    full = tuple(a for a in e.alphabet if a not in initial)
    initial_eform = None
    if initial:
        alpha = Alphabet(initial)
        initial_eform = EForm(alpha, {a: Term.leaf(a) for a in initial})
    rels = [(Term.leaf(a), e.phi[a]) for a in full]
    return SplitResult(initial, full, initial_eform,
                       Presentation(e.alphabet, rels))


def is_free(e: EForm) -> bool:
    """Free iff the generator map is the identity."""
    return all(e.phi[a] is Term.leaf(a) for a in e.alphabet)


def is_full(e: EForm) -> bool:
    """Full iff the generator map has no fixed point."""
    return all(e.phi[a] is not Term.leaf(a) for a in e.alphabet)


def in_initial_part(e: EForm, t: Term, max_rules: int = 10**4) -> bool:
    """Whether the class of t has a representative generated by the
    fixed-point generators: its normal form uses only those."""
    fixed = {a for a in e.alphabet if e.phi[a] is Term.leaf(a)}
    rs = build_rewrite_system(e, max_rules)
    if not rs.completed:
        raise ValueError("rewrite system did not complete")
    return normalize(rs, t).leaf_names() <= fixed


# --- conjugacy / isomorphism ---------------------------------------------------

def _skeleton(t: Term):
    if t.is_leaf:
        return 0
    return (_skeleton(t.left), _skeleton(t.right))


def conjugate(e1: EForm, e2: EForm, max_gens: int = 12):
    """Search for a generator bijection g with g(phi(a)) = psi(g(a)) for
    every a; returns the bijection dict or None.

    Backtracking with forced propagation: pairing a with b forces the leaf
    sequences of their images to pair up, so the branching factor collapses
    after the first few choices. Pruned by image shape and fixed-point
    status. A returned witness is re-verified independently.
    """
    A, B = e1.alphabet.names, e2.alphabet.names
    if len(A) != len(B):
        return None
    if len(A) > max_gens:
        raise SearchTooLarge(
            f"{len(A)} generators exceed the search cap {max_gens}")

    shape1 = {a: _skeleton(e1.phi[a]) for a in A}
    shape2 = {b: _skeleton(e2.phi[b]) for b in B}
    fixed1 = {a: e1.phi[a] is Term.leaf(a) for a in A}
    fixed2 = {b: e2.phi[b] is Term.leaf(b) for b in B}

    def extended(assign: dict, u: str, v: str):
        out = dict(assign)
        used = set(out.values())
        stack = [(u, v)]
        while stack:
            u, v = stack.pop()
            cur = out.get(u)
            if cur is not None:
                if cur != v:
                    return None
                continue
            if v in used:
                return None
            if shape1[u] != shape2[v] or fixed1[u] != fixed2[v]:
                return None
            out[u] = v
            used.add(v)
            stack.extend(zip(e1.phi[u].leaves(), e2.phi[v].leaves()))
        return out

    def search(assign: dict):
        if len(assign) == len(A):
            return assign
        u = next(a for a in A if a not in assign)
        used = set(assign.values())
        for v in B:
            if v in used:
                continue
            nxt = extended(assign, u, v)
            if nxt is not None:
                done = search(nxt)
                if done is not None:
                    return done
        return None

    witness = search({})
    if witness is None:
        return None
    assert verify_conjugacy(e1, e2, witness)
    return witness


def verify_conjugacy(e1: EForm, e2: EForm, mapping: dict) -> bool:
    """Exact check that mapping is a bijection with g(phi(a)) = psi(g(a))."""
    if sorted(mapping) != sorted(e1.alphabet.names):
        return False
    if sorted(mapping.values()) != sorted(e2.alphabet.names):
        return False
    leafmap = {a: Term.leaf(b) for a, b in mapping.items()}
    return all(substitute(e1.phi[a], leafmap) is e2.phi[mapping[a]]
               for a in e1.alphabet)


def isomorphic(e1: EForm, e2: EForm, max_gens: int = 12,
               with_witness: bool = False):
    """The presented magmas are isomorphic iff the generator maps are
    conjugated."""
    witness = conjugate(e1, e2, max_gens)
    if with_witness:
        return (witness is not None, witness)
    return witness is not None


# --- mirror --------------------------------------------------------------------

def mirror(t: Term) -> Term:
    """Swap the operands of every sum; an involution."""
    if t.is_leaf:
        return t
    return mirror(t.right) + mirror(t.left)


def mirror_eform(e: EForm) -> EForm:
    """Mirror every generator image; gives the anti-isomorphic magma."""
    return EForm(e.alphabet, {a: mirror(e.phi[a]) for a in e.alphabet})


# --- product theorem, bounded --------------------------------------------------

def product_indecomposables_bounded(alphabet: Alphabet, model, size_bound: int):
    """Indecomposable elements of (free magma over alphabet) x model, among
    terms up to size_bound paired with the first size_bound model elements.

    A pair (t, x) decomposes iff t is a sum and x decomposes, so the result
    must equal (generators x model) union (terms x indecomposables)."""
    gens = {Term.leaf(a) for a in alphabet}
    terms = sorted(generate_bounded(gens, size_bound), key=term_sort_key)
    try:
        elems = model.enumerate(size_bound)
    except NotImplementedError:
        raise ValueError("model is not enumerable") from None
    out = set()
    for t in terms:
        for x in elems:
            if t.is_leaf or model.decompose(x) is None:
                out.add((t, x))
    return out


# --- projections ----------------------------------------------------------------

def jonsson_tarski(model):
    """The projections p, q of a full equidecomposable model: the unique
    first and second components of each element's decomposition."""

    def p(z):
        parts = model.decompose(z)
        if parts is None:
            raise ValueError(f"element {z!r} is indecomposable; model not full")
        return parts[0]

    def q(z):
        parts = model.decompose(z)
        if parts is None:
            raise ValueError(f"element {z!r} is indecomposable; model not full")
        return parts[1]

    return p, q
