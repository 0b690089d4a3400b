"""Shared fixtures: the expensive closures are built once per session."""

import pytest

import partcat as pc
from partcat.closure import closure
from partcat.correspondence import exponent_oracle, parity_oracle, trivial_oracle
from partcat.partition import all_partitions, make_named, word_of
from partcat.words import E, abelianize, is_even, to_free


def oracle_slice(oracle, max_points=8):
    """All diagrams up to max_points accepted by the word oracle."""
    return {p for p in all_partitions(max_points)
            if oracle.decide(word_of(p)) == "yes"}


@pytest.fixture(scope="session")
def trivial_slice():
    return oracle_slice(trivial_oracle())


@pytest.fixture(scope="session")
def parity_slice():
    return oracle_slice(parity_oracle())


@pytest.fixture(scope="session")
def primary_closure(trivial_slice):
    """Closure of the pair shifter, complete on the 8-point slice."""
    c = closure([make_named("primary")], 8, 10, cap=400_000,
                stop_targets=trivial_slice)
    assert all(p in c for p in trivial_slice)
    return c


@pytest.fixture(scope="session")
def halflib_fourblock_closure(parity_slice):
    """Closure of half-liberating + four block, complete on the slice."""
    c = closure([make_named("halflib"), make_named("fourblock")], 8, 10,
                cap=400_000, stop_targets=parity_slice)
    assert all(p in c for p in parity_slice)
    return c


@pytest.fixture(scope="session")
def fourblock_closure():
    """Fully saturated closure of the four block at W=10."""
    return closure([make_named("fourblock")], 8, 10, cap=400_000)
