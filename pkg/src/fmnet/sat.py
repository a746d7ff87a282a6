"""Incremental CDCL SAT solving under assumptions.

The engine is self-contained: conflict-driven clause learning with two
watched literals, first-UIP learning, activity-based decisions, phase
saving, and Luby restarts. Assumptions are handled the classic way, as
forced decisions on the first levels of the search, so a learned clause is
always implied by the formula alone and can be kept across calls.

Everything here is deterministic: same formula, same call sequence, same
answer, including the returned model. Only the SAT/UNSAT status is part of
the semantic contract; which model comes back is an implementation detail
that tests must not rely on beyond "it satisfies the formula".

Any object with ``num_vars``, ``solve(assumptions)`` and ``add_clause``
can stand in for SatEngine (see SolverLike); that is the seam for plugging
in an external incremental solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Iterator, Protocol, Sequence

from .cnf import CnfFormula, normalize_clause
from .errors import EnumerationLimitError

# Variable truth values. The encoding makes literal evaluation a xor:
# value(lit) == _VALUES[var] ^ (sign bit), giving 1 for true, 0 for false
# and >= 2 for unassigned.
_FALSE, _TRUE, _UNASSIGNED = 0, 1, 2

_RESTART_BASE = 100
_ACTIVITY_DECAY = 1.0 / 0.95
_ACTIVITY_LIMIT = 1e100


class Status(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass(frozen=True)
class SatOutcome:
    """Result of one solve call.

    ``model`` is a total assignment indexed by variable (entry 0 is unused
    padding) and is present exactly when the status is SAT.
    """

    status: Status
    model: tuple[bool, ...] | None = None

    def __post_init__(self):
        if (self.status is Status.SAT) != (self.model is not None):
            raise ValueError("model must be present exactly for SAT outcomes")

    def literals(self) -> frozenset[int]:
        """The model as a set of signed literals, one per variable."""
        if self.model is None:
            raise ValueError("UNSAT outcome has no model")
        return frozenset(v if self.model[v] else -v for v in range(1, len(self.model)))


class SolverLike(Protocol):
    """Adapter seam for swapping in another incremental solver."""

    num_vars: int

    def solve(self, assumptions: Sequence[int] = ()) -> SatOutcome: ...

    def add_clause(self, literals: Iterable[int]) -> None: ...


def _luby(i: int) -> int:
    """The i-th term (1-based) of the Luby restart sequence."""
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while (1 << k) - 1 != i:
        i -= (1 << (k - 1))
        k -= 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


class SatEngine:
    """CDCL solver over a fixed variable universe.

    Clauses can be added between solve calls (that is how blocking-clause
    enumeration works); learned clauses persist, which never changes the
    status relative to a fresh engine because learned clauses are implied.
    """

    def __init__(self, formula: CnfFormula):
        n = formula.num_vars
        self.num_vars = n
        self.num_solve_calls = 0
        self._ok = not formula.trivially_unsat
        # Literal codes: positive v -> 2v, negative v -> 2v + 1.
        self._values = [_UNASSIGNED] * (n + 1)
        self._levels = [0] * (n + 1)
        self._reasons: list[int] = [-1] * (n + 1)
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0
        self._clauses: list[list[int]] = []
        self._watches: list[list[int]] = [[] for _ in range(2 * n + 2)]
        self._activity = [0.0] * (n + 1)
        self._activity_inc = 1.0
        self._saved_phase = [False] * (n + 1)
        self._heap: list[tuple[float, int]] = [(0.0, v) for v in range(1, n + 1)]
        for clause in formula.clauses:
            self.add_clause(clause)

    # ---- public API ----

    def add_clause(self, literals: Iterable[int]) -> None:
        """Add a clause; safe between solve calls."""
        if not self._ok:
            return
        self._cancel_until(0)
        normalized = normalize_clause(literals)
        if normalized is None:  # tautology
            return
        lits = []
        for lit in normalized:
            var = abs(lit)
            if var > self.num_vars:
                raise ValueError(f"literal {lit} out of range")
            code = (var << 1) | (lit < 0)
            value = self._values[var] ^ (code & 1)
            if value == _TRUE and self._levels[var] == 0:
                return  # already satisfied at the root
            if value == _FALSE and self._levels[var] == 0:
                continue  # permanently false literal
            lits.append(code)
        if not lits:
            self._ok = False
            return
        if len(lits) == 1:
            self._assign(lits[0], -1)
            if self._propagate() is not None:
                self._ok = False
            return
        cid = len(self._clauses)
        self._clauses.append(lits)
        self._watches[lits[0]].append(cid)
        self._watches[lits[1]].append(cid)

    def solve(self, assumptions: Sequence[int] = ()) -> SatOutcome:
        """Decide satisfiability of the clauses under the given assumptions."""
        self.num_solve_calls += 1
        assumption_codes = []
        for lit in assumptions:
            var = abs(lit)
            if not isinstance(lit, int) or lit == 0 or var > self.num_vars:
                raise ValueError(f"assumption {lit} out of range 1..{self.num_vars}")
            assumption_codes.append((var << 1) | (lit < 0))
        if not self._ok:
            return SatOutcome(Status.UNSAT)

        self._cancel_until(0)
        if self._propagate() is not None:
            self._ok = False
            return SatOutcome(Status.UNSAT)

        conflicts = 0
        restarts = 0
        restart_limit = _RESTART_BASE * _luby(1)
        while True:
            conflict = self._propagate()
            if conflict is not None:
                conflicts += 1
                if not self._trail_lim:  # conflict at root level
                    self._ok = False
                    return SatOutcome(Status.UNSAT)
                learnt, backjump = self._analyze(conflict)
                self._cancel_until(backjump)
                self._record_learnt(learnt)
                self._decay_activity()
                continue
            if conflicts >= restart_limit:
                restarts += 1
                restart_limit = conflicts + _RESTART_BASE * _luby(restarts + 1)
                self._cancel_until(0)
                continue
            # Next decision: pending assumptions first, then the heuristic.
            code = None
            level = len(self._trail_lim)
            while level < len(assumption_codes):
                candidate = assumption_codes[level]
                value = self._values[candidate >> 1] ^ (candidate & 1)
                if value == _TRUE:
                    self._trail_lim.append(len(self._trail))
                    level += 1
                elif value == _FALSE:
                    return SatOutcome(Status.UNSAT)
                else:
                    code = candidate
                    break
            if code is None:
                var = self._pick_var()
                if var is None:
                    model = tuple(value == _TRUE for value in self._values)
                    return SatOutcome(Status.SAT, model)
                code = (var << 1) | (not self._saved_phase[var])
            self._trail_lim.append(len(self._trail))
            self._assign(code, -1)

    # ---- internals ----

    def _assign(self, code: int, reason: int) -> None:
        var = code >> 1
        self._values[var] = (code & 1) ^ 1
        self._levels[var] = len(self._trail_lim)
        self._reasons[var] = reason
        self._trail.append(code)

    def _cancel_until(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        bound = self._trail_lim[level]
        values, phases, activity, heap = (
            self._values, self._saved_phase, self._activity, self._heap
        )
        for code in reversed(self._trail[bound:]):
            var = code >> 1
            phases[var] = values[var] == _TRUE
            values[var] = _UNASSIGNED
            heappush(heap, (-activity[var], var))
        del self._trail[bound:]
        del self._trail_lim[level:]
        self._qhead = min(self._qhead, len(self._trail))

    def _pick_var(self) -> int | None:
        values, heap = self._values, self._heap
        while heap:
            act, var = heappop(heap)
            if values[var] == _UNASSIGNED and act == -self._activity[var]:
                return var
        for var in range(1, self.num_vars + 1):  # stale-heap fallback
            if values[var] == _UNASSIGNED:
                return var
        return None

    def _propagate(self) -> int | None:
        """Unit propagation; returns a conflicting clause id or None."""
        values, clauses, watches = self._values, self._clauses, self._watches
        trail = self._trail
        while self._qhead < len(trail):
            code = trail[self._qhead]
            self._qhead += 1
            false_code = code ^ 1
            watch_list = watches[false_code]
            kept: list[int] = []
            i = 0
            try:
                for i, cid in enumerate(watch_list):
                    clause = clauses[cid]
                    if clause[0] == false_code:
                        clause[0], clause[1] = clause[1], clause[0]
                    first = clause[0]
                    if values[first >> 1] ^ (first & 1) == _TRUE:
                        kept.append(cid)
                        continue
                    for k in range(2, len(clause)):
                        other = clause[k]
                        if values[other >> 1] ^ (other & 1) != _FALSE:
                            clause[1], clause[k] = other, false_code
                            watches[other].append(cid)
                            break
                    else:
                        kept.append(cid)
                        if values[first >> 1] == _UNASSIGNED:
                            self._assign(first, cid)
                        else:  # conflict
                            kept.extend(watch_list[i + 1:])
                            self._qhead = len(trail)
                            return cid
            finally:
                watches[false_code] = kept
        return None

    def _analyze(self, conflict: int) -> tuple[list[int], int]:
        """First-UIP conflict analysis.

        Returns the learned clause (asserting literal first, a literal of the
        backjump level second) and the backjump level.
        """
        levels, reasons, trail = self._levels, self._reasons, self._trail
        current = len(self._trail_lim)
        seen = bytearray(self.num_vars + 1)
        learnt: list[int] = [0]  # slot 0 reserved for the asserting literal
        path = 0
        index = len(trail)
        clause = self._clauses[conflict]
        skip_var = -1
        while True:
            for code in clause:
                var = code >> 1
                if var == skip_var or seen[var] or levels[var] == 0:
                    continue
                seen[var] = 1
                self._bump_activity(var)
                if levels[var] == current:
                    path += 1
                else:
                    learnt.append(code)
            while True:
                index -= 1
                if seen[trail[index] >> 1]:
                    break
            uip = trail[index]
            skip_var = uip >> 1
            seen[skip_var] = 0
            path -= 1
            if path == 0:
                break
            clause = self._clauses[reasons[skip_var]]
        learnt[0] = uip ^ 1

        if len(learnt) == 1:
            return learnt, 0
        # Move a literal of the highest remaining level into the watch slot.
        best = max(range(1, len(learnt)), key=lambda i: levels[learnt[i] >> 1])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, levels[learnt[1] >> 1]

    def _record_learnt(self, learnt: list[int]) -> None:
        if len(learnt) == 1:
            self._assign(learnt[0], -1)
            return
        cid = len(self._clauses)
        self._clauses.append(learnt)
        self._watches[learnt[0]].append(cid)
        self._watches[learnt[1]].append(cid)
        self._assign(learnt[0], cid)

    def _bump_activity(self, var: int) -> None:
        self._activity[var] += self._activity_inc
        if self._activity[var] > _ACTIVITY_LIMIT:
            scale = 1e-100
            for v in range(1, self.num_vars + 1):
                self._activity[v] *= scale
            self._activity_inc *= scale
            self._heap = [(-self._activity[v], v)
                          for v in range(1, self.num_vars + 1)
                          if self._values[v] == _UNASSIGNED]
            self._heap.sort()
            return
        if self._values[var] == _UNASSIGNED:
            heappush(self._heap, (-self._activity[var], var))

    def _decay_activity(self) -> None:
        self._activity_inc *= _ACTIVITY_DECAY


def solve_under_assumptions(
    formula: CnfFormula, assumptions: Sequence[int] = ()
) -> SatOutcome:
    """One-shot satisfiability check with assumption literals."""
    return SatEngine(formula).solve(assumptions)


def enumerate_models(
    formula: CnfFormula, var_limit: int = 25
) -> Iterator[tuple[bool, ...]]:
    """Yield every satisfying total assignment exactly once.

    Standard blocking-clause loop: after each model, a clause forbidding
    exactly that total assignment is added, so the count is exact and no
    model repeats. Refuses formulas wider than ``var_limit`` variables
    since the model count can be exponential.
    """
    if formula.num_vars > var_limit:
        raise EnumerationLimitError(
            f"enumeration over {formula.num_vars} variables exceeds the limit of {var_limit}"
        )
    engine = SatEngine(formula)
    while True:
        outcome = engine.solve()
        if outcome.status is Status.UNSAT:
            return
        model = outcome.model
        assert model is not None
        yield model
        blocking = [-v if model[v] else v for v in range(1, formula.num_vars + 1)]
        if not blocking:  # zero-variable formula has the one empty model
            return
        engine.add_clause(blocking)
