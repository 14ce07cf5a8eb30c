# Copyright 2026 The dynstack Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools

import numpy as np
import pytest
from scipy.optimize import linprog

import dynstack


def test_fixtures_round_trip():
    ids = dynstack.list_fixtures()
    assert "example1" in ids
    game = dynstack.load_fixture("example1")
    assert dynstack.solve_bse(game)["leader_utility"] == pytest.approx(31 / 6)


def test_dynamic_values():
    game = dynstack.load_fixture("example1")
    dse = dynstack.solve_dse(game, 2)
    assert dse["total_leader_utility"] == pytest.approx(10.75)
    assert dse["certified"]
    lv = dynstack.load_fixture("learning-vs-comm")
    for T in (2, 3):
        assert dynstack.solve_dse(lv, T)["total_leader_utility"] == pytest.approx(T - 0.5)
    assert dynstack.solve_rme(lv)["leader_utility"] == pytest.approx(0.5)


def test_errors_map_to_python():
    game = dynstack.load_fixture("ssg3")
    with pytest.raises(dynstack.ProblemTooLarge):
        dynstack.solve_dse(game, 3, budget=10)
    with pytest.raises(ValueError):
        dynstack.solve_dse(game, 0)
    with pytest.raises(ValueError):
        dynstack.load_fixture("nope")
    with pytest.raises(ValueError):
        dynstack.construct_learning_policy(dynstack.load_fixture("example1"), [0])


def _bse_by_scipy(game):
    """Bayesian Stackelberg value by enumerating response profiles."""
    R = np.array(game["R"], dtype=float)
    types = game["types"]
    m, n = R.shape
    best = -np.inf
    for profile in itertools.product(range(n), repeat=len(types)):
        c = np.zeros(m)
        rows, rhs = [], []
        for t, j in zip(types, profile):
            C = np.array(t["C"], dtype=float)
            c += t["prior"] * R[:, j]
            for jp in range(n):
                if jp != j:
                    rows.append(C[:, jp] - C[:, j])
                    rhs.append(0.0)
        res = linprog(-c, A_ub=np.array(rows) if rows else None,
                      b_ub=np.array(rhs) if rows else None,
                      A_eq=np.ones((1, m)), b_eq=[1.0], bounds=[(0, None)] * m,
                      method="highs")
        if res.status == 0:
            best = max(best, -res.fun)
    return best


def _learnable_by_scipy(game, eps=1e-6):
    """Brute-force learnable sub-group test at the reported BSE strategy."""
    R = np.array(game["R"], dtype=float)
    types = game["types"]
    x = np.array(dynstack.solve_bse(game)["strategy"], dtype=float)

    def br(t, y):
        v = y @ np.array(types[t]["C"], dtype=float)
        return {j for j in range(len(v)) if v[j] >= v.max() - eps}

    def favored(t, y):
        return max(sorted(br(t, y)), key=lambda j: y @ R[:, j])

    brs = [br(t, x) for t in range(len(types))]
    K = len(types)
    for size in range(1, K):
        for sub in itertools.combinations(range(K), size):
            rest = [t for t in range(K) if t not in sub]
            inside = set().union(*(brs[t] for t in sub))
            outside = set().union(*(brs[t] for t in rest))
            if inside & outside:
                continue
            mass = sum(types[t]["prior"] for t in sub)
            sub_game = dict(game)
            sub_game["types"] = [dict(types[t], prior=types[t]["prior"] / mass)
                                 for t in sub]
            sub_value = _bse_by_scipy(sub_game)
            base = sum(types[t]["prior"] * (x @ R[:, favored(t, x)])
                       for t in sub) / mass
            if sub_value > base + 1e-7:
                return True
    return False


@pytest.mark.parametrize("shape", [(3, 3, 2), (3, 4, 3)])
@pytest.mark.parametrize("seed", range(8))
def test_static_and_learnability_against_scipy(shape, seed):
    game = dynstack.generate_random_game(*shape, "uniform", seed)
    assert dynstack.solve_bse(game)["leader_utility"] == pytest.approx(
        _bse_by_scipy(game), abs=1e-7)
    report = dynstack.check_assumption(game)
    assert report["assumption_satisfied"] == _learnable_by_scipy(game)


def test_lp_against_scipy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n, k = rng.integers(2, 5), rng.integers(2, 6)
        A = rng.uniform(-2, 2, size=(k, n))
        b = rng.uniform(0.5, 3, size=k)
        c = rng.uniform(-1, 1, size=n)
        status, x, obj = dynstack.solve_lp(c, A, ["<="] * k, b,
                                           upper=[4.0] * n)
        ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, 4)] * n, method="highs")
        assert status == "optimal"
        assert obj == pytest.approx(-ref.fun, abs=1e-7)


def test_constructive_policies():
    lv = dynstack.load_fixture("learning-vs-comm")
    p = dynstack.construct_learning_policy(lv, [0])
    assert p["certified"] and p["T_star"] == 2
    menu = dynstack.construct_menu_simulation_policy(lv, 6)
    assert menu["certified"]
    est = dynstack.estimate_assumption_frequency(3, 3, 2, samples=20, seed=1,
                                                 threads=2)
    assert est["total"] == 20
    assert dynstack.round_to_k_uniform([0.45, 0.55], 2) == [0.5, 0.5]
