"""Bounded closed-congruence saturation, ground rewriting, and the word
problem for presented magmas.

The saturation engine enumerates every term up to a length bound as a node
of an int-array DAG and drives a union-find closure over it (see
``_satcore_py``). The compiled kernel is preferred when built; set
``MAGMAKIT_PURE=1`` to force the pure twin.
"""
from __future__ import annotations

import os
from array import array
from dataclasses import dataclass

from magmakit.terms import Alphabet, Term, format_term, term_sort_key

__all__ = [
    "SaturationCapExceeded",
    "Undecided",
    "PairSet",
    "RewriteSystem",
    "kernel_name",
    "saturate_bounded",
    "is_closed_bounded",
    "build_rewrite_system",
    "normalize",
    "word_equal",
    "classes_bounded",
    "solve_equation",
    "evaluate_polynomial",
    "verdict_text",
    "universe_node_count",
]

if os.environ.get("MAGMAKIT_PURE", "") not in ("", "0"):
    from magmakit import _satcore_py as _kernel
else:
    try:
        from magmakit import _satcore as _kernel  # type: ignore
    except ImportError:
        from magmakit import _satcore_py as _kernel

DEFAULT_MAX_PAIRS = 10**6
DEFAULT_MAX_NODES = 4_000_000
DEFAULT_MAX_RULES = 10**4


def kernel_name() -> str:
    """Which saturation kernel is active: 'compiled' or 'pure'."""
    return _kernel.kernel_name()


class SaturationCapExceeded(RuntimeError):
    """A configured resource cap would be exceeded; distinct from failure."""


@dataclass(frozen=True)
class Undecided:
    """Third outcome of the word problem: neither engine could confirm
    equality or inequality within its caps."""
    bound: int


def universe_node_count(num_gens: int, bound: int) -> int:
    """Number of terms over num_gens generators with length <= bound."""
    counts = [0] * (bound + 1)
    if bound >= 1:
        counts[1] = num_gens
    for k in range(2, bound + 1):
        counts[k] = sum(counts[i] * counts[k - i] for i in range(1, k))
    return sum(counts)


class _Universe:
    """The term DAG of all terms over an alphabet up to a length bound.

    Node ids are ordered by length, then by the construction order of the
    layered enumeration, so an alphabet-and-bound pair always produces the
    identical id assignment.
    """

    _cache: dict = {}

    def __init__(self, alphabet: Alphabet, bound: int):
        g = len(alphabet)
        left = array("i", [-1] * g)
        right = array("i", [-1] * g)
        starts = [0, 0, g]  # starts[k] = first id of length k (k >= 1)
        sum_ids: dict = {}
        for k in range(2, bound + 1):
            for i in range(1, k):
                for x in range(starts[i], starts[i + 1]):
                    for y in range(starts[k - i], starts[k - i + 1]):
                        sum_ids[(x << 22) | y] = len(left)
                        left.append(x)
                        right.append(y)
            starts.append(len(left))
        self.alphabet = alphabet
        self.bound = bound
        self.n = len(left)
        self.left = left
        self.right = right
        self.starts = starts
        self._sum_ids = sum_ids
        self._term_ids: dict = {}
        self._terms: dict = {}

    @classmethod
    def get(cls, alphabet: Alphabet, bound: int, max_nodes: int) -> "_Universe":
        count = universe_node_count(len(alphabet), bound)
        if count > max_nodes or count >= (1 << 22):
            raise SaturationCapExceeded(
                f"universe of terms up to length {bound} needs {count} nodes"
                f" (cap {min(max_nodes, (1 << 22) - 1)})")
        key = (alphabet.names, bound)
        uni = cls._cache.get(key)
        if uni is None:
            uni = cls._cache[key] = cls(alphabet, bound)
        return uni

    def term_id(self, t: Term) -> int:
        hit = self._term_ids.get(t)
        if hit is not None:
            return hit
        if t.length > self.bound:
            raise ValueError(
                f"term {format_term(t)} exceeds the bound {self.bound}")
        if t.is_leaf:
            i = self.alphabet.index(t.name)
        else:
            i = self._sum_ids[(self.term_id(t.left) << 22) | self.term_id(t.right)]
        self._term_ids[t] = i
        return i

    def term_of(self, i: int) -> Term:
        hit = self._terms.get(i)
        if hit is not None:
            return hit
        if self.left[i] < 0:
            t = Term.leaf(self.alphabet.names[i])
        else:
            t = self.term_of(self.left[i]) + self.term_of(self.right[i])
        self._terms[i] = t
        return t

    def ids_up_to(self, max_len: int) -> range:
        max_len = min(max_len, self.bound)
        return range(self.starts[max_len + 1])


class PairSet:
    """A bounded congruence presented as a partition of all terms up to the
    bound; conceptually the set of all related pairs."""

    __slots__ = ("alphabet", "size_bound", "_uni", "_root")

    def __init__(self, alphabet, size_bound, uni, root):
        self.alphabet = alphabet
        self.size_bound = size_bound
        self._uni = uni
        self._root = root

    def related(self, s: Term, t: Term) -> bool:
        return self._root[self._uni.term_id(s)] == self._root[self._uni.term_id(t)]

    def terms(self, max_len: int | None = None):
        uni = self._uni
        return [uni.term_of(i)
                for i in uni.ids_up_to(max_len or self.size_bound)]

    def classes(self, max_len: int | None = None):
        """Equivalence classes among terms up to max_len, each sorted in
        term order; classes ordered by their smallest member."""
        uni = self._uni
        groups: dict = {}
        for i in uni.ids_up_to(max_len or self.size_bound):
            groups.setdefault(self._root[i], []).append(uni.term_of(i))
        out = [sorted(g, key=term_sort_key) for g in groups.values()]
        out.sort(key=lambda g: term_sort_key(g[0]))
        return out

    def partition_labels(self, max_len: int | None = None):
        """Canonical integer labels for the partition restricted to terms up
        to max_len; two saturations over the same alphabet and bound agree on
        those terms iff their labels are equal."""
        labels = {}
        out = []
        for i in self._uni.ids_up_to(max_len or self.size_bound):
            r = self._root[i]
            out.append(labels.setdefault(r, len(labels)))
        return tuple(out)

    def class_count(self, max_len: int | None = None) -> int:
        ids = self._uni.ids_up_to(max_len or self.size_bound)
        return len({self._root[i] for i in ids})

    def pair_count(self) -> int:
        """Number of related ordered pairs (diagonal included)."""
        sizes: dict = {}
        for i in range(self._uni.n):
            r = self._root[i]
            sizes[r] = sizes.get(r, 0) + 1
        return sum(c * c for c in sizes.values())

    def pairs(self, limit: int = 2_000_000):
        """Materialize the related ordered pairs; guarded by limit."""
        count = self.pair_count()
        if count > limit:
            raise SaturationCapExceeded(
                f"refusing to materialize {count} pairs (limit {limit})")
        out = set()
        for cls in self.classes():
            for s in cls:
                for t in cls:
                    out.add((s, t))
        return out


def _check_relations(R, alphabet, size_bound):
    rels = []
    for x, y in R:
        for t in (x, y):
            for name in t.leaf_names():
                if name not in alphabet:
                    raise ValueError(f"unknown generator {name!r} in relation")
            if t.length > size_bound:
                raise ValueError(
                    f"relation component {format_term(t)} exceeds the bound"
                    f" {size_bound}; pass a bound covering every relation")
        rels.append((x, y))
    return rels


def saturate_bounded(R, alphabet: Alphabet, size_bound: int, *,
                     decomposition: bool = True,
                     max_pairs: int = DEFAULT_MAX_PAIRS,
                     max_nodes: int = DEFAULT_MAX_NODES) -> PairSet:
    """Least set of term pairs within the bound containing R and closed
    under reflexivity, symmetry, transitivity, componentwise sums that stay
    within the bound and, when `decomposition` is set, splitting of related
    sums into related components."""
    if size_bound < 1:
        raise ValueError("size_bound must be >= 1")
    rels = _check_relations(R, alphabet, size_bound)
    uni = _Universe.get(alphabet, size_bound, max_nodes)
    pa = array("i", [uni.term_id(x) for x, _ in rels])
    pb = array("i", [uni.term_id(y) for _, y in rels])
    root = _kernel.saturate_core(uni.n, uni.left, uni.right, pa, pb,
                                 decomposition)
    ps = PairSet(alphabet, size_bound, uni, root)
    count = ps.pair_count()
    if count > max_pairs:
        raise SaturationCapExceeded(
            f"saturation holds {count} pairs (cap {max_pairs})")
    return ps


def is_closed_bounded(R, alphabet: Alphabet, size_bound: int, *,
                      max_pairs: int = DEFAULT_MAX_PAIRS,
                      max_nodes: int = DEFAULT_MAX_NODES) -> bool:
    """Saturate R as a plain congruence (no decomposition rule), then check
    that every related pair of sums has related components."""
    ps = saturate_bounded(R, alphabet, size_bound, decomposition=False,
                          max_pairs=max_pairs, max_nodes=max_nodes)
    uni, root = ps._uni, ps._root
    child_sig: dict = {}
    for i in range(len(uni.alphabet), uni.n):
        r = root[i]
        key = (root[uni.left[i]], root[uni.right[i]])
        seen = child_sig.get(r)
        if seen is None:
            child_sig[r] = key
        elif seen != key:
            return False
    return True


# --- ground rewriting ---------------------------------------------------------

def _reduction_key(t: Term):
    return (t.length, term_sort_key(t))


def _occurs(big: Term, small: Term) -> bool:
    if big is small:
        return True
    if big.is_leaf:
        return False
    return _occurs(big.left, small) or _occurs(big.right, small)


def _nf(rules: dict, t: Term, cache: dict) -> Term:
    hit = cache.get(t)
    if hit is not None:
        return hit
    if t.is_leaf:
        cur = t
    else:
        cur = _nf(rules, t.left, cache) + _nf(rules, t.right, cache)
    nxt = rules.get(cur)
    while nxt is not None:
        cur = _nf(rules, nxt, cache)
        nxt = rules.get(cur)
    cache[t] = cur
    return cur


class RewriteSystem:
    """Oriented ground rules with pairwise distinct left sides. `completed`
    is False when the completion cap was hit; callers must then fall back to
    saturation."""

    __slots__ = ("rules", "completed", "_map", "_cache")

    def __init__(self, rules: dict, completed: bool):
        self.rules = tuple(sorted(rules.items(),
                                  key=lambda lr: _reduction_key(lr[0])))
        self.completed = completed
        self._map = dict(rules)
        self._cache: dict = {}

    def __repr__(self):
        body = ", ".join(f"{format_term(l)} -> {format_term(r)}"
                         for l, r in self.rules)
        return f"RewriteSystem({body or 'empty'}, completed={self.completed})"


def build_rewrite_system(e, max_rules: int = DEFAULT_MAX_RULES) -> RewriteSystem:
    """Orient the relations of an E-form by term size and complete them into
    a confluent ground system.

    Completion keeps every rule inter-reduced: when a new rule can rewrite an
    existing rule's side, that rule is pulled back into the equation queue.
    At fixpoint no left side overlaps another, so the system is confluent.
    """
    queue = [(e.phi[a], Term.leaf(a)) for a in e.alphabet
             if e.phi[a] is not Term.leaf(a)]
    rules: dict = {}
    completed = True
    steps = 0
    while queue:
        steps += 1
        if steps > 50 * (max_rules + 10):
            completed = False
            break
        s, t = queue.pop()
        s = _nf(rules, s, {})
        t = _nf(rules, t, {})
        if s is t:
            continue
        if _reduction_key(s) < _reduction_key(t):
            s, t = t, s
        requeue = [(l1, r1) for l1, r1 in rules.items()
                   if _occurs(l1, s) or _occurs(r1, s)]
        for l1, _ in requeue:
            del rules[l1]
        rules[s] = t
        queue.extend(requeue)
        if len(rules) > max_rules:
            completed = False
            break
    return RewriteSystem(rules, completed)


def normalize(rs: RewriteSystem, t: Term) -> Term:
    """Unique normal form under a completed system; innermost, exhaustive."""
    if not rs.completed:
        raise ValueError("rewrite system is incomplete; use saturation")
    return _nf(rs._map, t, rs._cache)


_RS_CACHE: dict = {}


def _rs_for(e, max_rules: int) -> RewriteSystem:
    rs = _RS_CACHE.get(e)
    if rs is None or (not rs.completed and max_rules > DEFAULT_MAX_RULES):
        rs = _RS_CACHE[e] = build_rewrite_system(e, max_rules)
    return rs


def word_equal(e, s: Term, t: Term, *,
               max_rules: int = DEFAULT_MAX_RULES,
               max_pairs: int = DEFAULT_MAX_PAIRS,
               max_nodes: int = DEFAULT_MAX_NODES):
    """Decide whether s and t denote the same element of the magma presented
    by the E-form e.

    Returns True, False, or Undecided. With a completed rewrite system the
    answer is exact via normal forms. Otherwise the pair is searched by
    saturation with the bound doubled until it reaches twice the query size
    (the documented soundness margin); hitting a cap first yields Undecided.
    """
    rs = _rs_for(e, max_rules)
    if rs.completed:
        return normalize(rs, s) is normalize(rs, t)
    return _word_equal_by_saturation(e, s, t, max_pairs, max_nodes)


def _word_equal_by_saturation(e, s, t, max_pairs=DEFAULT_MAX_PAIRS,
                              max_nodes=DEFAULT_MAX_NODES):
    q = max(s.length, t.length)
    bound = max(q, e.max_image_length())
    target = max(2 * q, bound)
    reached = 0
    while True:
        try:
            ps = saturate_bounded(e.image_pairs(), e.alphabet, bound,
                                  max_pairs=max_pairs, max_nodes=max_nodes)
        except SaturationCapExceeded:
            return Undecided(bound=reached)
        if ps.related(s, t):
            return True
        if bound >= target:
            return False
        reached = bound
        bound = min(2 * bound, target)


def verdict_text(result) -> str:
    """Serialize a word_equal outcome: equal, unequal, undecided(bound=n)."""
    if result is True:
        return "equal"
    if result is False:
        return "unequal"
    return f"undecided(bound={result.bound})"


def classes_bounded(e, size_bound: int, *,
                    max_pairs: int = DEFAULT_MAX_PAIRS,
                    max_nodes: int = DEFAULT_MAX_NODES):
    """Equivalence classes of the presented congruence among all terms of
    length up to size_bound. The working bound is lifted to cover the
    generator images, then the partition is restricted."""
    working = max(size_bound, e.max_image_length())
    ps = saturate_bounded(e.image_pairs(), e.alphabet, working,
                          max_pairs=max_pairs, max_nodes=max_nodes)
    return ps.classes(max_len=size_bound)


# --- equations -----------------------------------------------------------------

def solve_equation(model, poly: Term, k):
    """Solve P(x1..xn) = k in an equidecomposable model with a decomposition
    oracle; returns the unique assignment dict or None.

    Mirrors the uniqueness argument: a leaf binds its variable to k; a sum
    forces the decomposition of k onto the two halves, and bindings merged
    from both halves must agree.
    """
    if not hasattr(model, "decompose"):
        raise TypeError("model lacks a decomposition oracle")

    def go(p, val):
        if p.is_leaf:
            return {p.name: val}
        parts = model.decompose(val)
        if parts is None:
            return None
        lhs = go(p.left, parts[0])
        if lhs is None:
            return None
        rhs = go(p.right, parts[1])
        if rhs is None:
            return None
        for var, v in rhs.items():
            if var in lhs and not model.equal(lhs[var], v):
                return None
            lhs[var] = v
        return lhs

    return go(poly, k)


def evaluate_polynomial(model, poly: Term, assignment: dict):
    if poly.is_leaf:
        return assignment[poly.name]
    return model.op(evaluate_polynomial(model, poly.left, assignment),
                    evaluate_polynomial(model, poly.right, assignment))
