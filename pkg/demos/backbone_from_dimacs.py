"""Backbone analysis on a hand-written DIMACS formula.

The backbone is the set of literals fixed in every satisfying assignment.
This script parses a small named CNF, enumerates all of its models to show
the backbone really is the intersection, then conditions on an assumption
and watches forced literals appear.
"""

from fmnet.backbone import compute_backbone
from fmnet.cnf import parse_dimacs
from fmnet.sat import enumerate_models

TEXT = """\
c 1 ROOT
c 2 BASE
c 3 EXTRA
c 4 SOLO
p cnf 4 4
1 0
-3 2 0
-4 -2 0
2 4 0
"""


def show(formula, literals) -> str:
    parts = []
    for lit in sorted(literals, key=abs):
        name = formula.name_of(abs(lit))
        parts.append(name if lit > 0 else f"!{name}")
    return "{" + ", ".join(parts) + "}"


def main() -> None:
    formula = parse_dimacs(TEXT)
    print(f"parsed {formula.num_vars} variables, {len(formula.clauses)} clauses")

    models = list(enumerate_models(formula))
    print(f"\nall {len(models)} satisfying assignments:")
    for model in models:
        row = [formula.name_of(v) for v in formula.variables() if model[v]]
        print(f"  {{{', '.join(row)}}}")

    backbone = compute_backbone(formula)
    print(f"\nbackbone: {show(formula, backbone.literals)}")
    print(f"found with {backbone.sat_calls} solver calls "
          f"(budget is variables + 1 = {formula.num_vars + 1})")

    # every backbone literal must hold in every model above
    for lit in backbone.literals:
        assert all(model[abs(lit)] is (lit > 0) for model in models)
    print("cross-checked against the enumeration: consistent")

    # force EXTRA on and the picture tightens
    conditioned = compute_backbone(formula, assumptions=(3,))
    print(f"\nbackbone with EXTRA forced on: {show(formula, conditioned.literals)}")
    gained = conditioned.literals - backbone.literals
    print(f"newly forced: {show(formula, gained)}")


if __name__ == "__main__":
    main()
