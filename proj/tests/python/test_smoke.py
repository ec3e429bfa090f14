from fractions import Fraction

import pytest

import cacgames as cg


def anti19():
    return cg.Population.from_thresholds(["anti"] * 19, ["1/2"] * 19)


def test_discoordination_has_no_equilibrium():
    pop = cg.Population(["coord", "anti"], [0, 0])
    assert pop.game_class == "mixed"
    assert cg.solve(pop) == []
    assert cg.count(pop) == 0
    assert cg.brute_force(pop) == []
    assert not cg.four_cycle_test(pop)


def test_anti19_counts():
    pop = anti19()
    sols = cg.solve(pop)
    assert [s["z"] for s in sols] == [Fraction(9, 19), Fraction(10, 19)]
    assert [s["count"] for s in sols] == [92378, 92378]
    assert cg.count(pop) == 184756
    assert sols[0]["canonical"] == "+" * 9 + "-" * 10
    assert cg.is_nash(pop, sols[0]["canonical"])
    assert cg.construct(pop, 10) == "+" * 10 + "-" * 9
    assert len(cg.enumerate(pop, 9, limit=4)) == 4


def test_count_is_exact_beyond_64_bits():
    n = 80
    pop = cg.Population.from_thresholds(["anti"] * n, [Fraction(1, 2)] * n)
    from math import comb

    assert cg.count(pop) == comb(n, 40)


def test_solver_matches_brute_force():
    pop = cg.Population.from_thresholds(
        ["coord", "coord", "anti", "anti", "coord", "anti"],
        ["0", "1/5", "2/5", "3/5", "1", "1/2"],
    )
    expected = set(cg.brute_force(pop))
    found = set()
    for s in cg.solve(pop):
        found.update(cg.enumerate(pop, s["plus"]))
    assert found == expected


def test_potential_and_size_guard():
    pop = cg.Population(["coord"] * 5, [0, 1, -1, 2, Fraction(1, 2)])
    assert cg.is_exact_potential(pop)
    with pytest.raises(cg.SizeLimitExceeded):
        cg.brute_force(anti19(), max_n=10)


def test_invalid_input():
    with pytest.raises(ValueError):
        cg.Population(["coord"], [0])
    with pytest.raises(ValueError):
        cg.Population(["sideways", "coord"], [0, 0])


def test_continuum_uniform():
    sols = cg.solve_continuum(0.3)
    assert len(sols) == 1
    assert abs(sols[0]["z"] - 0.5) <= 1e-10
    assert sols[0]["residual"] <= 1e-12


def test_dynamics():
    pop = cg.Population(["coord"] * 4, [0] * 4)
    run = cg.run_dynamics(pop, x0="+-+-", seed=7)
    assert run["converged"]
    assert cg.is_nash(pop, run["final"])
    assert run == cg.run_dynamics(pop, x0="+-+-", seed=7)
    sync = cg.run_dynamics(cg.Population(["coord", "anti"], [0, 0]), x0="++", schedule="sync")
    assert not sync["converged"]
