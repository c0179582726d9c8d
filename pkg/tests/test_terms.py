import random

import pytest
from hypothesis import given, settings, strategies as st

from magmakit.terms import (
    Alphabet,
    Term,
    TermSyntaxError,
    CYCLIC,
    parse_term,
    format_term,
    length,
    n_minus,
    n_plus,
    substitute,
    magma_product,
    generate_bounded,
    submagma_contains,
    minimal_generators,
    pair_generators_check,
    pair_split,
    term_sort_key,
)

AB = Alphabet("ab")
ABCD = Alphabet("abcd")
a, b = Term.leaf("a"), Term.leaf("b")
c, d = Term.leaf("c"), Term.leaf("d")
one = Term.leaf("1")


def rand_term(rng, alphabet, size):
    if size == 1:
        return Term.leaf(rng.choice(alphabet.names))
    cut = rng.randint(1, size - 1)
    return rand_term(rng, alphabet, cut) + rand_term(rng, alphabet, size - cut)


terms_st = st.integers(0, 2**32 - 1).map(
    lambda seed: rand_term(random.Random(seed), AB,
                           random.Random(seed ^ 0xA5A5).randint(1, 64)))


# --- construction / equality -------------------------------------------------

def test_interning_gives_identity_equality():
    t1 = a + (b + a)
    t2 = Term.leaf("a") + (Term.leaf("b") + Term.leaf("a"))
    assert t1 is t2


def test_alphabet_rules():
    assert list(Alphabet(("b", "a"))) == ["b", "a"]
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("2x",))
    Alphabet(("1",))  # the cyclic symbol is the one digit-led name allowed


# --- parsing / printing ------------------------------------------------------

def test_parse_single_leaf():
    assert parse_term("a", AB) is a


def test_parse_nested():
    assert parse_term("(a+(b+a))", AB) is a + (b + a)


def test_parse_worked_example_lhs():
    t = parse_term("(c+d)+(a+c)", ABCD)
    assert t is (c + d) + (a + c)


def test_parse_errors_report_position():
    with pytest.raises(TermSyntaxError) as exc:
        parse_term("(a+b", AB)
    assert "position" in str(exc.value)
    with pytest.raises(ValueError) as exc:
        parse_term("a+z", AB)
    assert "z" in str(exc.value)
    with pytest.raises(TermSyntaxError):
        parse_term("a b", AB)
    with pytest.raises(TermSyntaxError):
        parse_term("", AB)


def test_print_outermost_sum_unparenthesized():
    assert format_term((c + d) + (a + c)) == "(c+d)+(a+c)"
    assert format_term(a + (b + a)) == "a+(b+a)"
    assert format_term(a) == "a"


@settings(max_examples=200)
@given(terms_st)
def test_roundtrip_parse_print(t):
    assert parse_term(format_term(t), AB) is t


# --- length ------------------------------------------------------------------

def test_length_base_case():
    assert length(a) == 1


def test_length_counts_leaves():
    t = (one + one) + (one + (one + one))
    assert length(t) == 5


def test_length_of_combs():
    assert length(n_minus(4)) == 4


@settings(max_examples=200)
@given(terms_st, terms_st)
def test_length_additive(s, t):
    assert length(s + t) == length(s) + length(t)


# --- comb notations ----------------------------------------------------------

def test_n_minus_base():
    assert n_minus(1) is one


def test_n_minus_unfolds_left():
    assert n_minus(3) is (one + one) + one


def test_n_plus_unfolds_right():
    assert n_plus(3) is one + (one + one)


def test_combs_reject_zero():
    with pytest.raises(ValueError):
        n_minus(0)
    with pytest.raises(ValueError):
        n_plus(0)


# --- substitution ------------------------------------------------------------

def test_substitute_leafwise():
    t = a + (a + b)
    out = substitute(t, {"a": b + b, "b": b})
    assert out is (b + b) + ((b + b) + b)


def test_substitute_identity():
    t = (a + b) + a
    assert substitute(t, {"a": a, "b": b}) is t


def test_substitute_renames_generator():
    aa = Term.leaf("a_prime")
    t = aa + b
    assert substitute(t, {"a_prime": a, "b": b}) is a + b


def test_substitute_requires_total_mapping():
    with pytest.raises(ValueError):
        substitute(a + b, {"a": a})


# --- cyclic product ----------------------------------------------------------

def test_product_right_unit():
    rng = random.Random(7)
    for _ in range(20):
        x = rand_term(rng, CYCLIC, rng.randint(1, 10))
        assert magma_product(x, one) is x
        assert magma_product(one, x) is x


def test_product_substitutes_both_leaves():
    two = one + one
    assert magma_product(two, two) is two + two


def test_product_laws():
    rng = random.Random(13)
    for _ in range(50):
        x = rand_term(rng, CYCLIC, rng.randint(1, 10))
        y = rand_term(rng, CYCLIC, rng.randint(1, 10))
        z = rand_term(rng, CYCLIC, rng.randint(1, 10))
        assert magma_product(magma_product(x, y), z) is \
            magma_product(x, magma_product(y, z))
        assert magma_product(x, y + z) is \
            magma_product(x, y) + magma_product(x, z)
        assert length(magma_product(x, y)) == length(x) * length(y)


def test_product_rejects_non_cyclic():
    with pytest.raises(ValueError):
        magma_product(a, one)


# --- bounded generation / membership ----------------------------------------

def test_generate_bounded_single_generator():
    got = generate_bounded({a}, 3)
    assert got == {a, a + a, a + (a + a), (a + a) + a}


def test_generate_bounded_long_generator():
    assert generate_bounded({a + b}, 2) == {a + b}


def test_generate_bounded_two_generators():
    got = generate_bounded({a, b}, 2)
    assert got == {a, b, a + a, a + b, b + a, b + b}


def test_submagma_contains_basic():
    assert submagma_contains({a}, (a + a) + a)
    assert not submagma_contains({a + b}, a)
    assert submagma_contains({a, b + b}, (b + b) + a)


def test_membership_coherence_with_generation():
    rng = random.Random(99)
    for _ in range(30):
        X = {rand_term(rng, AB, rng.randint(1, 4)) for _ in range(rng.randint(1, 4))}
        t = rand_term(rng, AB, rng.randint(1, 6))
        assert submagma_contains(X, t) == (t in generate_bounded(X, t.length))


# --- minimal generators ------------------------------------------------------

def test_minimal_generators_drops_generated():
    assert minimal_generators({a, a + a}) == {a}


def test_minimal_generators_decomposes():
    assert minimal_generators({a + b, a, b}) == {a, b}


def test_minimal_generators_keeps_opaque():
    assert minimal_generators({a + b}) == {a + b}


def closure_size_estimate(X, bound):
    """Upper bound on |<X> up to length bound| by the layered count DP."""
    counts = [0] * (bound + 1)
    for t in X:
        if t.length <= bound:
            counts[t.length] += 1
    for k in range(2, bound + 1):
        counts[k] += sum(counts[i] * counts[k - i] for i in range(1, k))
    return sum(counts)


def test_galois_connection_random():
    # B runs up to 12 whenever the closure stays at checkable size; dense
    # generating sets (both leaves present) cap out earlier.
    rng = random.Random(4242)
    for _ in range(40):
        X = {rand_term(rng, AB, rng.randint(1, 6))
             for _ in range(rng.randint(1, 8))}
        G = minimal_generators(X)
        assert G <= X
        bound = 12
        while bound > 1 and closure_size_estimate(X, bound) > 60_000:
            bound -= 1
        assert generate_bounded(G, bound) == generate_bounded(X, bound)


# --- pair operations ---------------------------------------------------------

def test_pair_generators_check():
    assert pair_generators_check((a, (a + a) + a), AB)
    assert not pair_generators_check((a + b, c + d), ABCD)
    assert pair_generators_check((a, b), AB)


def test_pair_split_worked_example():
    got = pair_split(((c + d) + (a + c), (a + a) + a))
    assert got == {(c, a), (d, a), (a + c, a)}


def test_pair_split_generator_pair_fixed():
    y = (b + b) + a
    assert pair_split((a, y)) == {(a, y)}


def test_pair_split_diagonal():
    assert pair_split((a + b, a + b)) == {(a, a), (b, b)}


def test_pair_split_outputs_are_generator_pairs():
    rng = random.Random(5)
    for _ in range(50):
        x = rand_term(rng, AB, rng.randint(1, 8))
        y = rand_term(rng, AB, rng.randint(1, 8))
        parts = pair_split((x, y))
        assert all(pair_generators_check(p, AB) for p in parts)


def test_pair_split_reassembles_when_shapes_agree():
    # When both sides have the same shape the split is a exact tiling:
    # summing the pieces left to right regenerates the pair.
    x = (a + b) + (b + a)
    y = (b + a) + (a + b)
    parts = pair_split((x, y))
    assert parts == {(a, b), (b, a)}


# --- ordering ----------------------------------------------------------------

def test_term_sort_key_is_total_order():
    rng = random.Random(77)
    ts = [rand_term(rng, AB, rng.randint(1, 6)) for _ in range(100)]
    keys = [term_sort_key(t) for t in ts]
    order = sorted(range(len(ts)), key=lambda i: keys[i])
    for i, j in zip(order, order[1:]):
        assert keys[i] <= keys[j]
    assert term_sort_key(a) < term_sort_key(a + a)
    assert term_sort_key(a + a) < term_sort_key(b + b)


def test_interning_is_thread_safe():
    import threading

    results = [None] * 8
    barrier = threading.Barrier(8)

    def build(i):
        barrier.wait()
        rng = random.Random(12345)  # same stream in every thread
        results[i] = [rand_term(rng, AB, rng.randint(1, 32))
                      for _ in range(300)]

    threads = [threading.Thread(target=build, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    first = results[0]
    for other in results[1:]:
        assert all(s is t for s, t in zip(first, other))
