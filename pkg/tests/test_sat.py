import random

import pytest

from conftest import random_cnf, tt_model_count, tt_models, truth_table_mask
from fmnet.cnf import CnfFormula
from fmnet.errors import EnumerationLimitError
from fmnet.sat import (
    SatEngine,
    SatOutcome,
    Status,
    enumerate_models,
    solve_under_assumptions,
)


def satisfies(model, formula):
    return all(any(model[abs(l)] == (l > 0) for l in c) for c in formula.clauses)


class TestSatOutcome:
    def test_model_required_exactly_for_sat(self):
        with pytest.raises(ValueError):
            SatOutcome(status=Status.SAT)
        with pytest.raises(ValueError):
            SatOutcome(status=Status.UNSAT, model=(False, True))

    def test_literals(self):
        outcome = SatOutcome(status=Status.SAT, model=(False, True, False, True))
        assert outcome.literals() == frozenset({1, -2, 3})
        with pytest.raises(ValueError):
            SatOutcome(status=Status.UNSAT).literals()


class TestSolve:
    def test_simple_sat(self):
        formula = CnfFormula(num_vars=2, clauses=((1, 2), (-1, 2)))
        outcome = solve_under_assumptions(formula)
        assert outcome.status is Status.SAT
        assert outcome.model[2]

    def test_simple_unsat(self):
        formula = CnfFormula(num_vars=1, clauses=((1,), (-1,)))
        assert solve_under_assumptions(formula).status is Status.UNSAT

    def test_trivially_unsat(self):
        formula = CnfFormula(num_vars=1, clauses=(), trivially_unsat=True)
        assert solve_under_assumptions(formula).status is Status.UNSAT

    def test_zero_vars_sat(self):
        outcome = solve_under_assumptions(CnfFormula(num_vars=0, clauses=()))
        assert outcome.status is Status.SAT
        assert outcome.model == (False,)

    def test_assumptions_force_polarity(self):
        formula = CnfFormula(num_vars=2, clauses=((1, 2),))
        outcome = solve_under_assumptions(formula, (-1,))
        assert outcome.status is Status.SAT
        assert not outcome.model[1] and outcome.model[2]

    def test_contradictory_assumptions(self):
        formula = CnfFormula(num_vars=2, clauses=((1, 2),))
        assert solve_under_assumptions(formula, (1, -1)).status is Status.UNSAT

    def test_assumption_conflicts_with_clauses(self):
        formula = CnfFormula(num_vars=2, clauses=((1,), (-1, 2)))
        assert solve_under_assumptions(formula, (-2,)).status is Status.UNSAT
        assert solve_under_assumptions(formula, (2,)).status is Status.SAT

    def test_assumption_out_of_range(self):
        engine = SatEngine(CnfFormula(num_vars=2, clauses=()))
        with pytest.raises(ValueError, match="assumption"):
            engine.solve((3,))
        with pytest.raises(ValueError, match="assumption"):
            engine.solve((0,))

    def test_solve_call_counter(self):
        engine = SatEngine(CnfFormula(num_vars=1, clauses=((1,),)))
        assert engine.num_solve_calls == 0
        engine.solve()
        engine.solve((1,))
        assert engine.num_solve_calls == 2

    def test_incremental_clauses_between_solves(self):
        engine = SatEngine(CnfFormula(num_vars=2, clauses=((1, 2),)))
        assert engine.solve().status is Status.SAT
        engine.add_clause([-1])
        engine.add_clause([-2])
        assert engine.solve().status is Status.UNSAT

    def test_unsat_is_sticky(self):
        engine = SatEngine(CnfFormula(num_vars=1, clauses=((1,), (-1,))))
        assert engine.solve().status is Status.UNSAT
        engine.add_clause([1])
        assert engine.solve().status is Status.UNSAT
        assert engine.solve((1,)).status is Status.UNSAT

    def test_model_is_total_and_satisfying(self):
        rng = random.Random(3)
        for _ in range(50):
            formula = random_cnf(rng, rng.randint(1, 15), rng.uniform(1.0, 3.0))
            outcome = solve_under_assumptions(formula)
            if outcome.status is Status.SAT:
                assert len(outcome.model) == formula.num_vars + 1
                assert satisfies(outcome.model, formula)

    def test_agrees_with_truth_table(self):
        # The load-bearing check: 500 random instances against an oracle
        # that shares no code with the solver.
        rng = random.Random(20240814)
        sat_seen = unsat_seen = 0
        for _ in range(500):
            num_vars = rng.randint(1, 20)
            formula = random_cnf(rng, num_vars, rng.uniform(1.0, 5.0))
            expected_sat = truth_table_mask(formula) != 0
            outcome = solve_under_assumptions(formula)
            assert (outcome.status is Status.SAT) == expected_sat
            if expected_sat:
                sat_seen += 1
                assert satisfies(outcome.model, formula)
            else:
                unsat_seen += 1
        assert sat_seen > 50 and unsat_seen > 50

    def test_assumptions_agree_with_conditioned_truth_table(self):
        rng = random.Random(97)
        for _ in range(200):
            num_vars = rng.randint(2, 12)
            formula = random_cnf(rng, num_vars, rng.uniform(1.5, 4.0))
            picked = rng.sample(range(1, num_vars + 1), 2)
            assumptions = tuple(v if rng.random() < 0.5 else -v for v in picked)
            conditioned = CnfFormula(
                num_vars=num_vars,
                clauses=formula.clauses + tuple((a,) for a in assumptions),
            )
            expected_sat = truth_table_mask(conditioned) != 0
            outcome = solve_under_assumptions(formula, assumptions)
            assert (outcome.status is Status.SAT) == expected_sat
            if expected_sat:
                assert all(outcome.model[abs(a)] == (a > 0) for a in assumptions)


class TestEnumerateModels:
    def test_models_distinct_and_complete(self):
        rng = random.Random(5)
        for _ in range(100):
            formula = random_cnf(rng, rng.randint(1, 10), rng.uniform(0.8, 3.0))
            models = list(enumerate_models(formula))
            assert len(set(models)) == len(models)
            assert len(models) == tt_model_count(formula)
            assert sorted(models) == sorted(tt_models(formula))

    def test_zero_var_formula_has_one_empty_model(self):
        models = list(enumerate_models(CnfFormula(num_vars=0, clauses=())))
        assert models == [(False,)]

    def test_unsat_yields_nothing(self):
        formula = CnfFormula(num_vars=1, clauses=((1,), (-1,)))
        assert list(enumerate_models(formula)) == []

    def test_var_limit(self):
        # All units, so raising the limit keeps the enumeration tiny.
        formula = CnfFormula(num_vars=26, clauses=tuple((v,) for v in range(1, 27)))
        with pytest.raises(EnumerationLimitError, match="26 variables"):
            list(enumerate_models(formula))
        assert len(list(enumerate_models(formula, var_limit=26))) == 1

    def test_free_variables_enumerated(self):
        # 2 constrained + 1 free variable: every model pair appears.
        formula = CnfFormula(num_vars=3, clauses=((1,), (-1, 2)))
        assert len(list(enumerate_models(formula))) == 2
