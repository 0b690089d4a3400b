"""Both directions of the correspondence, quotients, and restrictions."""

import random

import pytest

import partcat as pc
from partcat.closure import closure
from partcat.correspondence import (
    F_of_category,
    MembershipOracle,
    bounded_oracle,
    canonical_letters,
    category_of_subgroup,
    dihedral_profile,
    exponent_oracle,
    inductive_limit_check,
    parity_oracle,
    quotient_enumerate,
    reduced_words,
    restrict_to_n,
    roundtrip_check,
    subgroup_from_oracle,
    trivial_oracle,
    words_of_members,
)
from partcat.partition import (
    EMPTY,
    PartitionError,
    make_named,
    parse,
    simplify,
    word_of,
)
from partcat.words import (
    E,
    WordError,
    abelianize,
    conjugate,
    from_free,
    identify,
    inv,
    mult,
    parse_free,
    parse_z2,
    subgroup_closure,
    to_free,
)


# -- oracles -------------------------------------------------------------------

def test_oracle_decisions():
    assert trivial_oracle().decide(E) == "yes"
    assert trivial_oracle().decide(parse_z2("a1.a2")) == "no"
    assert parity_oracle().decide(parse_z2("a1.a2.a3.a1.a2.a3")) == "yes"
    assert parity_oracle().decide(parse_z2("(a1.a2)^2")) == "no"
    assert exponent_oracle(3).decide(parse_z2("(a1.a2)^3")) == "yes"
    assert exponent_oracle(3).decide(parse_z2("(a1.a2)^2")) == "no"
    assert exponent_oracle(3).decide(parse_z2("a1.a2.a1")) == "no"


def test_bounded_oracle_relabels():
    sub = subgroup_closure([parse_z2("(a1.a2)^2")], 4, "s0", alphabet_bound=2)
    oracle = bounded_oracle(sub)
    # a letter-permuted copy is recognized through canonicalization
    assert oracle.decide(parse_z2("(a3.a4)^2")) == "yes"
    assert oracle.decide(parse_z2("a1.a2")) == "unknown"
    assert canonical_letters(parse_z2("a3.a4.a3.a4")) == parse_z2("a1.a2.a1.a2")


# -- F on closures -------------------------------------------------------------

def test_trivial_subgroup_of_primary(primary_closure):
    sub = F_of_category(primary_closure)
    assert set(sub.elements) == {E}


def test_parity_subgroup_of_halflib_fourblock(halflib_fourblock_closure):
    sub = F_of_category(halflib_fourblock_closure)
    want = set(subgroup_from_oracle(parity_oracle()).elements)
    assert set(sub.elements) == want


def test_subgroup_contains_alternating_powers():
    c = closure(
        [make_named("h", 3), make_named("fourblock"), make_named("primary")],
        8, 10, cap=8000)
    sub = F_of_category(c)
    assert parse_z2("(a1.a2)^3") in sub


def test_refuses_nonsimplifiable(fourblock_closure):
    with pytest.raises(PartitionError):
        F_of_category(fourblock_closure)


def test_refuses_double_singleton():
    c = closure([make_named("doubleton"), make_named("primary")], 6, 8,
                stop_targets=[make_named("doubleton")])
    with pytest.raises(PartitionError):
        F_of_category(c)


# -- categories from oracles ----------------------------------------------------

def test_category_of_trivial_subgroup():
    cat = category_of_subgroup(trivial_oracle())
    assert cat.decide(make_named("primary")) == "yes"
    assert cat.decide(make_named("fourblock")) == "yes"
    assert cat.decide(make_named("pair")) == "yes"
    assert cat.decide(make_named("doubleton")) == "no"
    assert cat.decide(make_named("halflib")) == "no"
    # membership agrees with having an empty single-leg form
    for p in pc.all_partitions(6):
        want = "yes" if simplify(p) == EMPTY else "no"
        assert cat.decide(p) == want


def test_category_of_parity_subgroup():
    cat = category_of_subgroup(parity_oracle())
    assert cat.decide(make_named("halflib")) == "yes"
    assert cat.decide(make_named("crossing")) == "no"
    assert cat.decide(make_named("h", 2)) == "no"


# -- round trips -----------------------------------------------------------------

@pytest.mark.parametrize("oracle", [
    trivial_oracle(), parity_oracle(), exponent_oracle(3)],
    ids=["trivial", "parity", "exp3"])
def test_roundtrip_oracle_seeds(oracle):
    r = roundtrip_check(oracle)
    assert r["ok"], r["disagreements"][:3]


def test_roundtrip_category_seed(trivial_slice):
    r = roundtrip_check([make_named("primary")], stop_targets=trivial_slice)
    assert r["ok"], r["disagreements"][:3]


# -- invariants of the word image -------------------------------------------------

def test_image_is_proper_even_subgroup(halflib_fourblock_closure):
    sub = F_of_category(halflib_fourblock_closure)
    assert sub.even_only
    for w in sub.elements:
        counts = {}
        for a in w.letters:
            counts[a] = counts.get(a, 0) + 1
        assert all(v >= 2 for v in counts.values())


def test_image_group_closure_at_bound(halflib_fourblock_closure):
    sub = F_of_category(halflib_fourblock_closure)
    elements = sorted(sub.elements)
    rng = random.Random(7)
    for _ in range(300):
        u, v = rng.choice(elements), rng.choice(elements)
        w = mult(u, v)
        if len(w.letters) <= sub.length_bound and w.max_letter() <= 4:
            assert w in sub
        assert inv(u) in sub


def test_image_semigroup_invariance_at_bound(halflib_fourblock_closure):
    sub = F_of_category(halflib_fourblock_closure)
    rng = random.Random(11)
    elements = sorted(sub.elements)
    for _ in range(200):
        u = rng.choice(elements)
        mapping = {a: rng.randrange(1, 5) for a in u.support}
        assert identify(u, mapping) in sub
        k = rng.randrange(1, 5)
        w = conjugate(u, k)
        if len(w.letters) <= sub.length_bound:
            assert w in sub


def test_lattice_monotone(primary_closure, halflib_fourblock_closure):
    f1 = set(F_of_category(primary_closure).elements)
    f2 = set(F_of_category(halflib_fourblock_closure).elements)
    assert f1 <= f2


def test_exponent_extraction_structure():
    # the words of the exponent-3 family are generated, as a bounded
    # free-word closure, by the third power together with the commutator
    # part; universes are matched through the basis change
    K = subgroup_from_oracle(exponent_oracle(3))
    free_f = {to_free(w) for w in K.elements}
    commutator_part = {f for f in free_f if not any(abelianize(f))}
    seed = sorted(f for f in (commutator_part | {parse_free("x1^3")})
                  if len(f) <= 6)
    closed = subgroup_closure(seed, 6, "s", alphabet_bound=3)
    got = {f for f in closed.elements if len(from_free(f).letters) <= 8}
    assert got == {f for f in free_f if len(f) <= 6}


def test_embedding_in_exponent_kernel():
    c = closure(
        [make_named("h", 3), make_named("fourblock"), make_named("primary")],
        8, 10, cap=8000)
    k3 = exponent_oracle(3)
    for p in c.members:
        assert k3.decide(word_of(p)) == "yes"


# -- restriction -------------------------------------------------------------------

def test_restrict_trivial():
    r = restrict_to_n(trivial_oracle(), 2)
    assert r.decide(E) == "yes"
    assert r.decide(parse_z2("a1.a2")) == "no"


def test_restrict_closure():
    sub = subgroup_closure([parse_z2("(a1.a2)^3")], 6, "s0", alphabet_bound=3)
    r2 = restrict_to_n(sub, 2)
    six = {w for w in r2.elements if len(w.letters) == 6}
    assert six == {parse_z2("(a1.a2)^3"), parse_z2("(a2.a1)^3")}
    # support monotonicity
    r3 = restrict_to_n(sub, 3)
    assert set(r2.elements) <= set(r3.elements)


def test_restrict_validation():
    with pytest.raises(WordError):
        restrict_to_n(trivial_oracle(), 0)
    with pytest.raises(WordError):
        restrict_to_n("nonsense", 2)


# -- quotients ---------------------------------------------------------------------

@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_dihedral_quotients(s):
    rel = subgroup_closure([parse_z2(f"(a1.a2)^{s}")], 2 * s, "s0",
                           alphabet_bound=2)
    table = quotient_enumerate(2, rel, length_cap=s + 3)
    order, lengths = dihedral_profile(s)
    assert table.complete
    assert table.order() == order
    assert sorted(table.lengths.values()) == lengths


def test_quotient_free_product():
    table = quotient_enumerate(2, [], length_cap=5)
    assert not table.complete
    assert len(table.elements) == 11


def test_quotient_rank_one():
    table = quotient_enumerate(1, [], length_cap=8)
    assert table.complete
    assert [str(w) for w in table.elements] == ["e", "a1"]


def test_quotient_length_function_is_lipschitz():
    rel = subgroup_closure([parse_z2("(a1.a2)^3")], 6, "s0", alphabet_bound=2)
    table = quotient_enumerate(2, rel, length_cap=8)
    rules_lengths = table.lengths
    for w, l in rules_lengths.items():
        for a in (1, 2):
            h = mult(w, parse_z2(f"a{a}"))
            # the table is complete, so the product's class is present
            matches = [l2 for w2, l2 in rules_lengths.items()
                       if quotient_words_equal(w2, h, rel)]
            assert matches and abs(matches[0] - l) <= 1


def quotient_words_equal(u, v, rel) -> bool:
    from partcat.correspondence import _canonical_form, _rewrite_rules

    rules = _rewrite_rules([w for w in rel.elements if w.letters])
    return _canonical_form(u, rules, 10) == _canonical_form(v, rules, 10)


def test_quotient_relator_validation():
    with pytest.raises(WordError):
        quotient_enumerate(0, [])
    with pytest.raises(WordError):
        quotient_enumerate(2, [parse_z2("a1.a3")])


def test_quotient_from_oracle():
    table = quotient_enumerate(1, trivial_oracle(), length_cap=6)
    assert [str(w) for w in table.elements] == ["e", "a1"]


# -- inductive limits -----------------------------------------------------------

def test_inductive_limit_oracles():
    for oracle in (trivial_oracle(), parity_oracle()):
        assert inductive_limit_check(oracle, 4, length_bound=6)["ok"]


def test_inductive_limit_closure_seed():
    r = inductive_limit_check([parse_z2("(a1.a2)^3")], 4, length_bound=8)
    assert r["ok"], r["failures"]
