"""Tensor maps, relation checks, and the separating matrix family."""

import itertools
import random

import numpy as np
import pytest

import partcat as pc
from partcat import intertwiner as tw
from partcat.partition import PartitionError, all_partitions, compose, make_named, parse


# -- index compatibility and tensor maps ---------------------------------------

def test_delta_examples():
    assert tw.delta(parse(":aaaa"), (), (2, 2, 2, 2)) == 1
    assert tw.delta(make_named("crossing"), (1, 2), (2, 1)) == 1
    assert tw.delta(make_named("crossing"), (1, 2), (1, 2)) == 0
    assert tw.delta(parse(":aa"), (), (1, 2)) == 0
    with pytest.raises(PartitionError):
        tw.delta(parse(":aa"), (1,), (1, 1))


def test_T_of_examples():
    unit = tw.T_of(parse("a:a"), 4)
    assert len(unit) == 4
    assert all(j == i for j, i in unit.entries)
    pair = tw.T_of(parse(":aa"), 5)
    assert len(pair) == 5
    assert all(j[0] == j[1] and i == () for j, i in pair.entries)
    fb = tw.T_of(parse(":aaaa"), 2)
    assert sorted(fb.entries) == [((0, 0, 0, 0), ()), ((1, 1, 1, 1), ())]


def test_T_budget():
    with pytest.raises(tw.BudgetError):
        tw.T_of(parse(":" + "ab" * 10), 10, budget=100)


def test_T_composition_scaling_exhaustive():
    # the composite of two diagram maps is the map of the glued diagram,
    # scaled by the base dimension per erased middle loop
    parts = [p for p in all_partitions(6)
             if p.n_upper <= 3 and p.n_lower <= 3]
    for n in (2, 3):
        for p in parts:
            for q in parts:
                if q.n_lower != p.n_upper:
                    continue
                pq, loops = compose(p, q)
                coeffs = tw.compose_tensor_maps(tw.T_of(p, n), tw.T_of(q, n))
                assert tw.equals_scaled_map(coeffs, tw.T_of(pq, n), n ** loops)


# -- representations ------------------------------------------------------------

def test_counterexample_flags_and_relations():
    rep = tw.counterexample_rep()
    flags = tw.check_flags(rep)
    assert flags["ok"], flags
    assert tw.relation_check(rep, "i")
    assert tw.relation_check(rep, "ii")
    assert tw.relation_check(rep, "iii")
    assert not tw.relation_check(rep, "iv")


def test_counterexample_defining_inequality():
    rep = tw.counterexample_rep()
    w11, w22 = rep.u[0][0], rep.u[1][1]
    p1 = w22
    e1 = np.array([1, 0, 0])
    assert np.array_equal(w11 @ p1 @ e1, np.array([0, 1, 0]))
    assert np.array_equal(p1 @ w11 @ e1, np.zeros(3, dtype=np.int64))
    # the square of the swap-with-kernel entry is a projection
    sq = w11 @ w11
    assert np.array_equal(sq, np.diag([1, 1, 0]).astype(np.int64))
    assert np.array_equal(sq @ sq, sq)


def test_counterexample_intertwiners():
    rep = tw.counterexample_rep()
    assert tw.intertwines(rep, make_named("fatcross"))
    assert not tw.intertwines(rep, make_named("primary"))
    assert tw.intertwines(rep, make_named("fourblock"))
    assert tw.intertwines(rep, make_named("pair"))


def test_diagonal_rep_everything_holds():
    rep = tw.diagonal_sign_rep(3)
    assert tw.check_flags(rep)["ok"]
    for kind in ("i", "ii", "iii", "iv"):
        assert tw.relation_check(rep, kind)
    assert tw.intertwines(rep, make_named("fatcross"))
    assert tw.intertwines(rep, make_named("primary"))


def test_flag_rejection():
    bad = tw.Representation(
        2, 1,
        ((np.array([[1]]), np.array([[1]])),
         (np.array([[1]]), np.array([[1]]))),
    )
    assert not tw.check_flags(bad)["ok"]
    with pytest.raises(PartitionError):
        tw.intertwines(bad, make_named("pair"))


def test_intertwiner_budget():
    rep = tw.diagonal_sign_rep(3)
    with pytest.raises(tw.BudgetError):
        tw.intertwines(rep, parse(":" + "ab" * 5), budget=10)


def test_relation_intertwiner_biconditional_random():
    rng = random.Random(90125)
    iv_false = 0
    for _ in range(25):
        rep = tw.random_signed_perm_rep(rng, rng.choice((2, 3)))
        assert tw.check_flags(rep)["ok"]
        assert tw.intertwines(rep, make_named("fatcross")) == tw.relation_check(rep, "iii")
        got_iv = tw.relation_check(rep, "iv")
        assert tw.intertwines(rep, make_named("primary")) == got_iv
        iv_false += not got_iv
    assert iv_false >= 3


def test_squares_commuting_projection_algebra():
    rng = random.Random(4)
    reps = [tw.counterexample_rep(), tw.diagonal_sign_rep(2)]
    reps += [tw.random_signed_perm_rep(rng, 3) for _ in range(4)]
    for rep in reps:
        if not tw.relation_check(rep, "iii"):
            continue
        n = rep.n
        squares = [rep.u[i][j] @ rep.u[i][j] for i in range(n) for j in range(n)]
        for a, b in itertools.combinations(squares, 2):
            assert np.array_equal(a @ b, b @ a)
            prod = a @ b
            assert np.array_equal(prod @ prod, prod)
        if tw.relation_check(rep, "iv"):
            # supports are central against every entry
            for sq in squares:
                for i in range(n):
                    for j in range(n):
                        assert np.array_equal(sq @ rep.u[i][j], rep.u[i][j] @ sq)


# -- word projections -------------------------------------------------------------

def test_word_projection_requires_single_leg():
    rep = tw.diagonal_sign_rep(2)
    with pytest.raises(PartitionError):
        tw.word_projection_check(rep, parse(":aabb"), {0: (0, 0), 1: (1, 1)})


def test_word_projection_diagonal_rep():
    rep = tw.diagonal_sign_rep(3)
    res = tw.word_projection_all_choices(rep, parse(":abab"))
    assert res["all_hold"]


def test_word_projection_counterexample_fails_somewhere():
    rep = tw.counterexample_rep()
    res = tw.word_projection_all_choices(rep, parse(":abab"))
    assert not res["all_hold"]
    assert res["failures"] > 0
    assert res["choices"] == 81


def test_word_projection_orthogonal_supports_vanish():
    rep = tw.counterexample_rep()
    # the (0, 2) entry is zero, so both sides collapse to zero
    res = tw.word_projection_check(rep, parse(":abab"),
                                   {0: (0, 2), 1: (1, 1)}, split=2)
    assert res["product_equals_projection"]
    assert res["split_form"]


def test_word_projection_split_form():
    rep = tw.diagonal_sign_rep(2)
    res = tw.word_projection_check(rep, parse(":abab"),
                                   {0: (0, 0), 1: (1, 1)}, split=2)
    assert res["product_equals_projection"] and res["split_form"]


# -- transpose symmetry ------------------------------------------------------------

def test_transpose_symmetry():
    assert tw.transpose_symmetry_check(tw.counterexample_rep())["ok"]
    assert tw.transpose_symmetry_check(tw.diagonal_sign_rep(3))["ok"]
    rng = random.Random(17)
    for _ in range(5):
        assert tw.transpose_symmetry_check(tw.random_signed_perm_rep(rng, 3))["ok"]


# -- file format --------------------------------------------------------------------

def test_rep_file_round_trip(tmp_path):
    rep = tw.counterexample_rep()
    path = tmp_path / "rep.txt"
    tw.save_rep(rep, str(path))
    back = tw.load_rep(str(path))
    assert back.n == rep.n and back.dim == rep.dim
    for i in range(3):
        for j in range(3):
            assert np.array_equal(back.u[i][j], rep.u[i][j])


def test_rep_file_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n1 0\n")
    with pytest.raises(PartitionError):
        tw.load_rep(str(path))
