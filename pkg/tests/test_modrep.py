import random
from dataclasses import replace

import pytest

from qtet import linalg as la
from qtet.gen import conjugate, corrupt, random_unimodular, trivial_module
from qtet.modrep import (
    ModuleRep,
    check_flag_intersection,
    check_module,
    decomposition_rs,
    flag_of,
    four_flags,
    normalize_type,
    shape,
    verify_action_tables,
    verify_module,
)
from qtet.reports import InputError
from qtet.tetra import GENERATOR_NAMES, GenAssignment, apply_sign_flip


def test_example_modules_are_certified(modules):
    for d, M in modules.items():
        assert M.epsilon == 1
        assert M.d == d
        assert M.dim == d + 1


def test_trivial_modules(q2):
    assert trivial_module(1, q2).d == 0
    M = trivial_module(-1, q2)
    assert M.epsilon == -1 and M.dim == 1
    with pytest.raises(InputError):
        trivial_module(2, q2)


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_shape_is_all_ones(modules, d):
    assert shape(modules[d]) == (1,) * (d + 1)


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_structure_checks_pass(modules, d):
    rep = check_module(modules[d])
    assert rep.ok, rep.checks()
    assert rep.details["shape"] == [1] * (d + 1)


def test_inversion_pairs(modules):
    M = modules[3]
    for r in range(4):
        assert decomposition_rs(M, (r, r + 2)).inversion() == decomposition_rs(M, (r + 2, r))


def test_flags_are_mutually_opposite(modules):
    M = modules[2]
    flags = four_flags(M)
    assert flags[0] == flag_of(M, 0)
    for a in range(4):
        for b in range(4):
            if a != b:
                assert la.flags_opposite(flags[a], flags[b]) is not None
    assert check_flag_intersection(M, flags).ok


def test_sign_flip_and_normalize(modules):
    M = modules[2]
    ok, flipped = verify_module(apply_sign_flip(M.assignment))
    assert ok
    assert flipped.epsilon == -1 and flipped.d == 2
    back = normalize_type(flipped)
    assert back.epsilon == 1
    assert back.assignment == M.assignment


def test_type_minus_one_rejected_by_structure_ops(modules):
    _, flipped = verify_module(apply_sign_flip(modules[1].assignment))
    with pytest.raises(InputError):
        check_module(flipped)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_structure_survives_conjugation(modules, d):
    rng = random.Random(100 + d)
    for _ in range(3):
        T = random_unimodular(d + 1, rng, modules[d].q.domain)
        M = conjugate(modules[d], T)
        assert shape(M) == shape(modules[d])
        assert check_module(M).ok


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("name", GENERATOR_NAMES)
def test_corrupted_generator_breaks_relations(modules, d, name):
    ok, rep = verify_module(corrupt(modules[d], name, (0, 1), 1))
    assert not ok
    assert rep.checks()
    assert all(c.startswith("relation.") for c in rep.checks())


def test_reducible_assignment_rejected(q2):
    ok, rep = verify_module(GenAssignment.constant(q2, 2, 1))
    assert not ok
    assert rep.checks() == ["module.irreducible"]


def test_wrong_decomposition_fails_tables(modules):
    M = modules[1]
    decomps = list(M.decompositions)
    decomps[0] = decomps[0].inversion()
    broken = replace(M, decompositions=tuple(decomps))
    assert isinstance(broken, ModuleRep)
    rep = verify_action_tables(broken)
    assert not rep.ok
    assert "tables.adjacent" in rep.checks()


def test_action_tables_hold(modules):
    assert verify_action_tables(modules[1]).ok


def test_normalize_trivial(q2):
    assert normalize_type(trivial_module(-1, q2)).assignment == trivial_module(1, q2).assignment


def test_zero_corruption_still_certifies(modules):
    ok, _ = verify_module(corrupt(modules[1], "x01", (0, 0), 0))
    assert ok


def test_scalar_conjugation_is_identity(modules, q2):
    M = modules[2]
    assert conjugate(M, la.scale(la.identity(3, q2.domain), q2.convert(2))).assignment == M.assignment
