"""Immutable free-magma terms over a generator alphabet.

Terms are hash-consed: building the same tree twice yields the same object,
so structural equality is identity and terms can be used as dict keys at no
cost. The intern table is guarded by a lock; reads need no synchronisation
because entries are never removed.
"""
from __future__ import annotations

import re
import threading

__all__ = [
    "Alphabet",
    "Term",
    "TermSyntaxError",
    "CYCLIC",
    "parse_term",
    "format_term",
    "length",
    "n_minus",
    "n_plus",
    "substitute",
    "magma_product",
    "generate_bounded",
    "submagma_contains",
    "minimal_generators",
    "pair_generators_check",
    "pair_split",
    "term_sort_key",
]

# "1" is admitted as a generator name so the cyclic free magma can be written
# with its customary symbol; every other name must be an ordinary identifier.
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _valid_name(name: str) -> bool:
    return name == "1" or bool(_NAME_RE.match(name))


class Alphabet:
    """Ordered set of generator names; iteration order is declaration order."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("alphabet must not be empty")
        seen = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not _valid_name(name):
                raise ValueError(f"invalid generator name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name: {name!r}")
            seen[name] = i
        self.names = names
        self._index = seen

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({', '.join(self.names)})"


class Term:
    """A free-magma term: a leaf naming a generator, or a sum of two terms.

    Do not call the constructor; use ``Term.leaf``, the ``+`` operator, or
    ``parse_term``. Interning guarantees one object per tree, so ``==`` is
    object identity.
    """

    __slots__ = ("name", "left", "right", "length", "uid", "_key")

    _lock = threading.Lock()
    _leaves: dict = {}
    _sums: dict = {}
    _next_uid = 0

    def __init__(self, name, left, right, length, uid):
        self.name = name
        self.left = left
        self.right = right
        self.length = length
        self.uid = uid
        self._key = None

    @staticmethod
    def leaf(name: str) -> "Term":
        t = Term._leaves.get(name)
        if t is not None:
            return t
        if not _valid_name(name):
            raise ValueError(f"invalid generator name: {name!r}")
        with Term._lock:
            t = Term._leaves.get(name)
            if t is None:
                t = Term(name, None, None, 1, Term._next_uid)
                Term._next_uid += 1
                Term._leaves[name] = t
        return t

    def __add__(self, other: "Term") -> "Term":
        if not isinstance(other, Term):
            return NotImplemented
        key = (self.uid, other.uid)
        t = Term._sums.get(key)
        if t is not None:
            return t
        with Term._lock:
            t = Term._sums.get(key)
            if t is None:
                t = Term(None, self, other, self.length + other.length,
                         Term._next_uid)
                Term._next_uid += 1
                Term._sums[key] = t
        return t

    @property
    def is_leaf(self) -> bool:
        return self.name is not None

    def leaves(self):
        """Yield leaf names left to right (with repetitions)."""
        stack = [self]
        while stack:
            t = stack.pop()
            if t.name is not None:
                yield t.name
            else:
                stack.append(t.right)
                stack.append(t.left)

    def leaf_names(self) -> frozenset:
        return frozenset(self.leaves())

    def __str__(self):
        return format_term(self)

    def __repr__(self):
        return f"Term({format_term(self)})"

    def __reduce__(self):
        raise TypeError("terms are interned and cannot be pickled")


CYCLIC = Alphabet(("1",))


def length(t: Term) -> int:
    """Number of leaves; additive over sums."""
    return t.length


def format_term(t: Term, outer_parens: bool = False) -> str:
    """Canonical printing: fully parenthesized except the outermost sum."""
    if t.is_leaf:
        return t.name
    inner = f"{format_term(t.left, True)}+{format_term(t.right, True)}"
    return f"({inner})" if outer_parens else inner


class TermSyntaxError(ValueError):
    """Raised on malformed term text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*|1)|([()+])|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(3):
            raise TermSyntaxError(f"unexpected character {m.group(3)!r}",
                                  m.start(3))
        kind = "ident" if m.group(1) else m.group(2)
        value = m.group(1) or m.group(2)
        tokens.append((kind, value, m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_term(text: str, alphabet: Alphabet) -> Term:
    """Parse ``ident | '(' term '+' term ')'`` with optional outermost parens.

    Raises TermSyntaxError on bad syntax and ValueError on generator names
    not in the alphabet.
    """
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx]

    def advance():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_inner() -> Term:
        kind, value, pos = advance()
        if kind == "ident":
            if value not in alphabet:
                raise ValueError(
                    f"unknown generator {value!r} (at position {pos})")
            return Term.leaf(value)
        if kind == "(":
            left = parse_inner()
            kind, _, pos = advance()
            if kind != "+":
                raise TermSyntaxError("expected '+'", pos)
            right = parse_inner()
            kind, _, pos = advance()
            if kind != ")":
                raise TermSyntaxError("expected ')'", pos)
            return left + right
        raise TermSyntaxError("expected generator or '('", pos)

    first = parse_inner()
    kind, _, pos = peek()
    if kind == "+":
        advance()
        second = parse_inner()
        first = first + second
        kind, _, pos = peek()
    if kind != "end":
        raise TermSyntaxError("trailing input", pos)
    return first


def n_minus(n: int) -> Term:
    """Left-comb term of length n over the cyclic alphabet: ((1+1)+1)+..."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = Term.leaf("1")
    one = t
    for _ in range(n - 1):
        t = t + one
    return t


def n_plus(n: int) -> Term:
    """Right-comb term of length n over the cyclic alphabet: 1+(1+(1+...))"""
    if n < 1:
        raise ValueError("n must be >= 1")
    one = Term.leaf("1")
    t = one
    for _ in range(n - 1):
        t = one + t
    return t


def substitute(t: Term, mapping: dict) -> Term:
    """Homomorphic extension of a generator-to-term mapping.

    The mapping must cover every generator occurring in t (identity entries
    are fine and may simply be present).
    """
    cache: dict = {}

    def go(u: Term) -> Term:
        r = cache.get(u)
        if r is not None:
            return r
        if u.is_leaf:
            try:
                r = mapping[u.name]
            except KeyError:
                raise ValueError(
                    f"substitution not defined on generator {u.name!r}")
        else:
            r = go(u.left) + go(u.right)
        cache[u] = r
        return r

    return go(t)


def _require_cyclic(t: Term):
    if any(name != "1" for name in t.leaves()):
        raise ValueError("term is not over the cyclic alphabet {1}")


def magma_product(x: Term, y: Term) -> Term:
    """Product on the cyclic free magma: replace every leaf of y by x."""
    _require_cyclic(x)
    _require_cyclic(y)
    cache: dict = {}

    def go(u: Term) -> Term:
        if u.is_leaf:
            return x
        r = cache.get(u)
        if r is None:
            r = cache[u] = go(u.left) + go(u.right)
        return r

    return go(y)


def generate_bounded(X, max_length: int) -> set:
    """All elements of the submagma generated by X with length <= max_length.

    Layered recursion indexed by term length: the length-k layer is the
    length-k members of X plus all sums of earlier layers.
    """
    X = set(X)
    if not X:
        raise ValueError("generating set must not be empty")
    by_len: dict[int, set] = {k: set() for k in range(1, max_length + 1)}
    for t in X:
        if t.length <= max_length:
            by_len[t.length].add(t)
    for k in range(2, max_length + 1):
        layer = by_len[k]
        for i in range(1, k):
            for a in by_len[i]:
                for b in by_len[k - i]:
                    layer.add(a + b)
    out: set = set()
    for layer in by_len.values():
        out |= layer
    return out


def submagma_contains(X, t: Term, _memo: dict | None = None) -> bool:
    """Membership in the submagma generated by X.

    t is in <X> iff t is in X, or t = x+y with both halves in <X>.
    """
    X = frozenset(X)
    memo = _memo if _memo is not None else {}

    def go(u: Term) -> bool:
        r = memo.get(u)
        if r is None:
            if u in X:
                r = True
            elif u.is_leaf:
                r = False
            else:
                r = go(u.left) and go(u.right)
            memo[u] = r
        return r

    return go(t)


def minimal_generators(X) -> set:
    """The unique minimal generating set of <X>; always a subset of X."""
    X = frozenset(X)
    if not X:
        raise ValueError("generating set must not be empty")
    memo: dict = {}
    gens: set = set()

    def g(z: Term):
        if (not z.is_leaf
                and submagma_contains(X, z.left, memo)
                and submagma_contains(X, z.right, memo)):
            g(z.left)
            g(z.right)
        else:
            gens.add(z)

    for x in X:
        g(x)
    return gens


def pair_generators_check(pair, alphabet: Alphabet) -> bool:
    """True iff the pair is a generator of the square free magma, i.e. at
    least one component is a single generator."""
    x, y = pair
    for t in (x, y):
        for name in t.leaves():
            if name not in alphabet:
                raise ValueError(f"unknown generator {name!r}")
    return x.is_leaf or y.is_leaf


def pair_split(pair) -> set:
    """Decompose a pair of terms into its generator pairs in the square
    free magma: split (x+x', y+y') into the splits of (x,y) and (x',y');
    pairs with a leaf component stay as they are."""
    out: set = set()
    stack = [pair]
    while stack:
        x, y = stack.pop()
        if x.is_leaf or y.is_leaf:
            out.add((x, y))
        else:
            stack.append((x.left, y.left))
            stack.append((x.right, y.right))
    return out


def term_sort_key(t: Term):
    """Deterministic total order: length first, then leftmost-leaf name,
    then recursive lexicographic comparison of children."""
    key = t._key
    if key is None:
        if t.is_leaf:
            key = (1, 0, t.name)
        else:
            u = t
            while not u.is_leaf:
                u = u.left
            key = (t.length, 1, u.name,
                   term_sort_key(t.left), term_sort_key(t.right))
        t._key = key
    return key


def pair_sort_key(pair):
    x, y = pair
    return (term_sort_key(x), term_sort_key(y))
