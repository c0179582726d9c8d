import random

import pytest

from magmakit.models import DiamondNat, EFormModel, FreeMagmaModel
from magmakit.presentation import EForm, Presentation, cyclic, free_product
from magmakit.structure import (
    SearchTooLarge,
    conjugate,
    in_initial_part,
    is_free,
    is_full,
    isomorphic,
    jonsson_tarski,
    mirror,
    mirror_eform,
    product_indecomposables_bounded,
    split,
    verify_conjugacy,
)
from magmakit.terms import Alphabet, Term, generate_bounded, n_minus, n_plus
from magmakit.congruence import classes_bounded

from gen import random_eform, renamed_copy

A = Alphabet("a")
AB = Alphabet("ab")
XY = Alphabet("xy")
a, b = Term.leaf("a"), Term.leaf("b")
x, y = Term.leaf("x"), Term.leaf("y")
one = Term.leaf("1")

MIXED = EForm(AB, {"a": a + a, "b": b})
DIAMOND_PRESENTED = EForm(AB, {"a": a + a, "b": a + b})


# --- split ----------------------------------------------------------------------

def test_split_mixed():
    res = split(MIXED)
    assert res.initial_gens == ("b",)
    assert res.full_gens == ("a",)
    assert res.initial_eform == EForm(Alphabet("b"), {"b": b})
    assert res.full_part_presentation == Presentation(AB, [(a, a + a)])


def test_split_identity_eform_is_all_initial():
    e = EForm(AB, {"a": a, "b": b})
    res = split(e)
    assert res.initial_gens == ("a", "b")
    assert res.full_gens == ()
    assert res.initial_eform == e
    assert res.full_part_presentation.relations == ()


def test_split_diamond_presentation_is_all_full():
    res = split(DIAMOND_PRESENTED)
    assert res.initial_gens == ()
    assert res.full_gens == ("a", "b")
    assert res.initial_eform is None


def test_split_partitions_alphabet():
    rng = random.Random(3)
    for _ in range(30):
        e = random_eform(rng)
        res = split(e)
        assert set(res.initial_gens) | set(res.full_gens) == set(e.alphabet)
        assert not (set(res.initial_gens) & set(res.full_gens))


def test_initial_part_membership():
    # b is fixed; a+a collapses into the full part.
    assert in_initial_part(MIXED, b)
    assert in_initial_part(MIXED, b + b)
    assert not in_initial_part(MIXED, a)
    assert not in_initial_part(MIXED, a + b)


# --- free / full -----------------------------------------------------------------

def test_is_free_identity():
    e = EForm(AB, {"a": a, "b": b})
    assert is_free(e) and not is_full(e)


def test_cyclic_two_is_full():
    e = cyclic(one + one)
    assert is_full(e) and not is_free(e)


def test_mixed_is_neither():
    assert not is_free(MIXED) and not is_full(MIXED)


# --- conjugacy --------------------------------------------------------------------

def test_combs_are_not_conjugated():
    assert conjugate(cyclic(n_minus(3)), cyclic(n_plus(3))) is None


def test_conjugate_swaps_roles():
    e2 = EForm(XY, {"x": x, "y": y + y})
    witness = conjugate(MIXED, e2)
    assert witness == {"a": "y", "b": "x"}
    assert verify_conjugacy(MIXED, e2, witness)


def test_conjugate_with_itself_identity():
    rng = random.Random(8)
    for _ in range(10):
        e = random_eform(rng)
        witness = conjugate(e, e)
        assert witness == {name: name for name in e.alphabet}
        assert verify_conjugacy(e, e, witness)


def test_conjugate_search_cap():
    names = tuple(f"g{i}" for i in range(13))
    alphabet = Alphabet(names)
    e = EForm(alphabet, {n: Term.leaf(n) for n in names})
    with pytest.raises(SearchTooLarge):
        conjugate(e, e)


def test_verify_rejects_wrong_mapping():
    e2 = EForm(XY, {"x": x, "y": y + y})
    assert not verify_conjugacy(MIXED, e2, {"a": "x", "b": "y"})


# --- isomorphism ------------------------------------------------------------------

def test_cyclic_separation_small():
    terms = sorted(generate_bounded({one}, 4), key=lambda t: t.length)
    for s in terms:
        for t in terms:
            assert isomorphic(cyclic(s), cyclic(t)) == (s is t)


def test_free_products_commute():
    rng = random.Random(10)
    for _ in range(10):
        e1 = random_eform(rng)
        e2, _ = renamed_copy(rng, random_eform(rng))
        p12 = free_product(e1, e2).eform
        p21 = free_product(e2, e1).eform
        assert isomorphic(p12, p21)


def test_different_alphabet_sizes_not_isomorphic():
    assert not isomorphic(EForm(AB, {"a": a, "b": b}), EForm(A, {"a": a}))


def test_isomorphism_is_an_equivalence():
    rng = random.Random(2211)
    for _ in range(15):
        e1 = random_eform(rng, max_gens=5)
        e2, _ = renamed_copy(rng, e1)
        e3, _ = renamed_copy(rng, e2)
        ok12, w12 = isomorphic(e1, e2, with_witness=True)
        ok23, w23 = isomorphic(e2, e3, with_witness=True)
        assert ok12 and ok23
        # symmetry: the inverse mapping is a witness
        inv = {v: k for k, v in w12.items()}
        assert verify_conjugacy(e2, e1, inv)
        # transitivity: the composite mapping is a witness
        comp = {k: w23[v] for k, v in w12.items()}
        assert verify_conjugacy(e1, e3, comp)


def test_class_profiles_refute_isomorphism():
    # Profile equality is necessary for isomorphism, so a mismatch at any
    # bound must coincide with a None from the conjugacy search.
    rng = random.Random(555)
    for _ in range(40):
        e1 = random_eform(rng)
        e2 = random_eform(rng)
        profiles_differ = any(
            sorted(len(c) for c in classes_bounded(e1, k))
            != sorted(len(c) for c in classes_bounded(e2, k))
            for k in (3, 4, 5))
        if profiles_differ:
            assert conjugate(e1, e2) is None


# --- mirror -----------------------------------------------------------------------

def test_mirror_swaps_combs():
    assert mirror(n_plus(3)) is n_minus(3)


def test_mirror_fixes_leaves():
    assert mirror(a) is a


def test_mirror_is_involution():
    rng = random.Random(6)
    from gen import random_term
    for _ in range(50):
        t = random_term(rng, AB, rng.randint(1, 12))
        assert mirror(mirror(t)) is t


def test_mirror_eform_of_right_comb():
    assert mirror_eform(cyclic(n_plus(3))) == cyclic(n_minus(3))


def test_anti_isomorphic_is_not_isomorphic():
    e = cyclic(n_plus(3))
    assert conjugate(e, mirror_eform(e)) is None


# --- product theorem ---------------------------------------------------------------

def test_product_indecomposables_full_model():
    m = DiamondNat()
    got = product_indecomposables_bounded(A, m, 3)
    terms = sorted(generate_bounded({a}, 3), key=lambda t: t.length)
    expected = {(a, z) for z in m.enumerate(3)}
    assert got == expected
    assert all(t in terms for t, _ in got)


def test_product_indecomposables_free_model():
    m = FreeMagmaModel(Alphabet("c"))
    got = product_indecomposables_bounded(A, m, 3)
    c = Term.leaf("c")
    elems = m.enumerate(3)
    expected = {(a, z) for z in elems}
    terms = generate_bounded({a}, 3)
    expected |= {(t, c) for t in terms}
    assert got == expected


def test_product_indecomposables_trivial_model():
    m = EFormModel(EForm(A, {"a": a + a}))  # one-element magma
    got = product_indecomposables_bounded(AB, m, 3)
    assert got == {(a, a), (b, a)}


# --- projections -------------------------------------------------------------------

def test_jonsson_tarski_diamond_values():
    p, q = jonsson_tarski(DiamondNat())
    assert p(1) == 1 and q(1) == 1
    assert p(2) == 1 and q(2) == 2


def test_jonsson_tarski_axioms_sampled():
    m = DiamondNat()
    p, q = jonsson_tarski(m)
    rng = random.Random(1)
    for _ in range(200):
        xx = rng.randint(1, 10**6)
        yy = rng.randint(1, 10**6)
        z = m.op(xx, yy)
        assert p(z) == xx and q(z) == yy
        w = rng.randint(1, 10**9)
        assert m.op(p(w), q(w)) == w


def test_jonsson_tarski_error_identifies_element():
    p, _ = jonsson_tarski(FreeMagmaModel(A))
    with pytest.raises(ValueError) as exc:
        p(a)
    assert "indecomposable" in str(exc.value)
