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

"""Python access to the dynstack solvers.

Games are plain dicts in the JSON game format. Every solver returns the
same dict the command-line tool writes.
"""

import json
import math

from dynstack import _dynstack
from dynstack._dynstack import (
    InputError,
    MalformedProblem,
    PreconditionError,
    ProblemTooLarge,
    round_to_k_uniform,
)

__all__ = [
    "InputError",
    "MalformedProblem",
    "PreconditionError",
    "ProblemTooLarge",
    "check_assumption",
    "construct_learning_policy",
    "construct_menu_simulation_policy",
    "estimate_assumption_frequency",
    "generate_random_game",
    "inducibility_gap",
    "list_fixtures",
    "load_fixture",
    "round_to_k_uniform",
    "solve_bse",
    "solve_dse",
    "solve_first_k",
    "solve_lp",
    "solve_markovian",
    "solve_rme",
    "solve_sse",
]

_DEFAULT_BUDGET = 1e6


def _dump(game):
    return json.dumps(game)


def list_fixtures():
    return _dynstack.list_fixtures()


def load_fixture(fixture_id):
    return json.loads(_dynstack.load_fixture(fixture_id))


def generate_random_game(m, n, types, distribution="uniform", seed=0):
    return json.loads(
        _dynstack.generate_random_game(m, n, types, distribution, seed))


def solve_sse(game, type_index):
    return json.loads(_dynstack.solve_sse(_dump(game), type_index))


def solve_bse(game):
    return json.loads(_dynstack.solve_bse(_dump(game)))


def solve_rme(game):
    return json.loads(_dynstack.solve_rme(_dump(game)))


def inducibility_gap(game):
    """Returns (delta, vacuous)."""
    return _dynstack.inducibility_gap(_dump(game))


def solve_dse(game, horizon, budget=_DEFAULT_BUDGET, exhaustive=False):
    return json.loads(
        _dynstack.solve_dse(_dump(game), horizon, budget, exhaustive))


def solve_markovian(game, horizon, budget=_DEFAULT_BUDGET, exhaustive=False):
    return json.loads(
        _dynstack.solve_markovian(_dump(game), horizon, budget, exhaustive))


def solve_first_k(game, horizon, k, budget=_DEFAULT_BUDGET, exhaustive=False):
    return json.loads(
        _dynstack.solve_first_k(_dump(game), horizon, k, budget, exhaustive))


def check_assumption(game):
    return json.loads(_dynstack.check_assumption(_dump(game)))


def construct_learning_policy(game, subgroup, horizon=0):
    return json.loads(
        _dynstack.construct_learning_policy(_dump(game), list(subgroup),
                                            horizon))


def construct_menu_simulation_policy(game, horizon):
    return json.loads(
        _dynstack.construct_menu_simulation_policy(_dump(game), horizon))


def estimate_assumption_frequency(m, n, types, samples, seed=0,
                                  distribution="uniform", threads=1):
    return json.loads(
        _dynstack.estimate_assumption_frequency(m, n, types, distribution,
                                                samples, seed, threads))


def solve_lp(c, A, senses, b, lower=None, upper=None):
    """Maximizes c.x subject to rows A x (<=, >=, =) b and variable bounds.

    Bounds default to x >= 0. Returns (status, x, objective).
    """
    n = len(c)
    lower = [0.0] * n if lower is None else [
        -math.inf if v is None else float(v) for v in lower]
    upper = [math.inf] * n if upper is None else [
        math.inf if v is None else float(v) for v in upper]
    return _dynstack.solve_lp(list(map(float, c)),
                              [list(map(float, row)) for row in A],
                              list(senses), list(map(float, b)), lower, upper)
