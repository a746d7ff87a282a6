"""A small line-oriented feature-model dialect and its CNF encoding.

The dialect describes a feature tree plus cross-tree constraints::

    # comment
    feature Root
        mandatory Child
        optional Extra
            optional Nested
        alternative { OneOf TwoOf }
        or { Any Some }
        constraint OneOf => !Extra

``feature`` opens the single root. Nesting is by indentation: a line
indented deeper than the previous feature line becomes its child. Group
lines declare their members inline; members are leaf features. A
``constraint`` line holds a boolean expression over feature names built
from ``!``, ``&``, ``|``, ``=>`` and parentheses, and may appear at any
indentation; constraints are global either way.

Encoding: one variable per feature, numbered by preorder traversal of the
tree. Clauses are the usual tree semantics (root always selected, child
implies parent, mandatory parent implies child, or-group parent implies
some member, alternative-group additionally at most one member) followed by
the cross-tree constraints converted to clauses. Constraints are limited to
shapes that convert without auxiliary variables: implications expand,
negations push inward, conjunctions split, and a disjunction may combine
multi-clause operands on at most one side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .cnf import Clause, CnfFormula, normalize_clause
from .errors import ConstraintError, DialectError

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN_RE = re.compile(r"\s*(=>|[!&|()]|[A-Za-z_][A-Za-z0-9_]*)")


# ---- constraint expressions ----

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Implies:
    left: "Expr"
    right: "Expr"


Expr = Union[Var, Not, And, Or, Implies]


class _ExprParser:
    """Recursive descent with precedence ! > & > | > => (=> right-associative)."""

    def __init__(self, text: str, line: int):
        self._line = line
        self._tokens: list[str] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match:
                if text[pos:].strip():
                    raise DialectError(
                        f"bad character {text[pos:].strip()[0]!r} in constraint", line
                    )
                break
            self._tokens.append(match.group(1))
            pos = match.end()
        self._index = 0

    def parse(self) -> Expr:
        expr = self._implication()
        if self._index < len(self._tokens):
            raise DialectError(
                f"unexpected token {self._tokens[self._index]!r} in constraint", self._line
            )
        return expr

    def _peek(self) -> str | None:
        return self._tokens[self._index] if self._index < len(self._tokens) else None

    def _take(self) -> str:
        token = self._peek()
        if token is None:
            raise DialectError("constraint ends unexpectedly", self._line)
        self._index += 1
        return token

    def _implication(self) -> Expr:
        left = self._disjunction()
        if self._peek() == "=>":
            self._take()
            return Implies(left, self._implication())
        return left

    def _disjunction(self) -> Expr:
        expr = self._conjunction()
        while self._peek() == "|":
            self._take()
            expr = Or(expr, self._conjunction())
        return expr

    def _conjunction(self) -> Expr:
        expr = self._negation()
        while self._peek() == "&":
            self._take()
            expr = And(expr, self._negation())
        return expr

    def _negation(self) -> Expr:
        if self._peek() == "!":
            self._take()
            return Not(self._negation())
        return self._atom()

    def _atom(self) -> Expr:
        token = self._take()
        if token == "(":
            expr = self._implication()
            if self._take() != ")":
                raise DialectError("missing closing parenthesis in constraint", self._line)
            return expr
        if _NAME_RE.match(token):
            return Var(token)
        raise DialectError(f"unexpected token {token!r} in constraint", self._line)


# ---- the model ----

@dataclass
class Group:
    kind: str  # "alternative" or "or"
    members: list["Feature"]


@dataclass
class Feature:
    name: str
    mandatory: bool = False
    children: list["Feature"] = field(default_factory=list)
    groups: list[Group] = field(default_factory=list)


@dataclass
class Constraint:
    expression: Expr
    text: str
    line: int


@dataclass
class FeatureModel:
    root: Feature
    constraints: list[Constraint]

    def preorder(self) -> Iterator[Feature]:
        """Depth-first feature order: each feature, then its direct children
        in declaration order, then its group members in declaration order."""
        stack = [self.root]
        while stack:
            feature = stack.pop()
            yield feature
            rear: list[Feature] = []
            for group in feature.groups:
                rear.extend(group.members)
            stack.extend(reversed(feature.children + rear))

    def feature_names(self) -> list[str]:
        return [f.name for f in self.preorder()]


def parse_fm(text: str | bytes) -> FeatureModel:
    """Parse dialect text into a FeatureModel.

    Errors carry the line number: unknown keyword, bad indentation, duplicate
    feature name, group with fewer than two members, constraint referencing
    an undeclared feature.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    root: Feature | None = None
    # Stack of (indent, feature) from root to the innermost open feature.
    stack: list[tuple[int, Feature]] = []
    seen: dict[str, int] = {}
    raw_constraints: list[Constraint] = []

    def declare(name: str, line_no: int) -> None:
        if not _NAME_RE.match(name):
            raise DialectError(f"invalid feature name {name!r}", line_no)
        if name in seen:
            raise DialectError(
                f"feature {name!r} already declared on line {seen[name]}", line_no
            )
        seen[name] = line_no

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "\t" in line[: len(line) - len(line.lstrip())]:
            raise DialectError("indentation must use spaces, not tabs", line_no)
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        keyword, _, rest = body.partition(" ")
        rest = rest.strip()

        if keyword == "feature":
            if root is not None:
                raise DialectError("only one root feature is allowed", line_no)
            if indent != 0:
                raise DialectError("root feature must start at column 0", line_no)
            declare(rest, line_no)
            root = Feature(rest, mandatory=True)
            stack = [(indent, root)]
            continue
        if root is None:
            raise DialectError("expected a root 'feature' declaration first", line_no)

        if keyword == "constraint":
            if not rest:
                raise DialectError("constraint line has no expression", line_no)
            expression = _ExprParser(rest, line_no).parse()
            raw_constraints.append(Constraint(expression, rest, line_no))
            continue

        # Tree lines must be indented under some open feature.
        while stack and indent <= stack[-1][0]:
            stack.pop()
        if not stack:
            raise DialectError("line is not indented under any feature", line_no)
        parent = stack[-1][1]

        if keyword in ("mandatory", "optional"):
            declare(rest, line_no)
            child = Feature(rest, mandatory=(keyword == "mandatory"))
            parent.children.append(child)
            stack.append((indent, child))
        elif keyword in ("alternative", "or"):
            match = re.fullmatch(r"\{\s*(.*?)\s*\}", rest)
            if not match:
                raise DialectError(f"{keyword} group must list members in braces", line_no)
            member_names = match.group(1).split()
            if len(member_names) < 2:
                raise DialectError(
                    f"{keyword} group needs at least two members", line_no
                )
            members = []
            for name in member_names:
                declare(name, line_no)
                members.append(Feature(name))
            parent.groups.append(Group(keyword, members))
        else:
            raise DialectError(f"unknown keyword {keyword!r}", line_no)

    if root is None:
        raise DialectError("input declares no features")

    model = FeatureModel(root, raw_constraints)
    declared = set(model.feature_names())
    for constraint in raw_constraints:
        for name in _names_in(constraint.expression):
            if name not in declared:
                raise DialectError(
                    f"constraint references undeclared feature {name!r}", constraint.line
                )
    return model


def _names_in(expr: Expr) -> Iterator[str]:
    if isinstance(expr, Var):
        yield expr.name
    elif isinstance(expr, Not):
        yield from _names_in(expr.operand)
    else:
        yield from _names_in(expr.left)
        yield from _names_in(expr.right)


# ---- CNF encoding ----

def _expr_clauses(expr: Expr, index: dict[str, int], negate: bool,
                  constraint: Constraint) -> list[list[int]]:
    """Clauses of ``expr`` (or of its negation), no auxiliary variables.

    Disjunction distributes only when at most one operand produced several
    clauses; two multi-clause operands would need quadratic distribution or
    fresh variables, and the dialect rejects that shape.
    """
    if isinstance(expr, Var):
        lit = index[expr.name]
        return [[-lit if negate else lit]]
    if isinstance(expr, Not):
        return _expr_clauses(expr.operand, index, not negate, constraint)
    if isinstance(expr, Implies):
        rewritten = Or(Not(expr.left), expr.right)
        return _expr_clauses(rewritten, index, negate, constraint)
    if isinstance(expr, And) != negate:  # conjunction: plain And, or negated Or
        return (_expr_clauses(expr.left, index, negate, constraint)
                + _expr_clauses(expr.right, index, negate, constraint))
    left = _expr_clauses(expr.left, index, negate, constraint)
    right = _expr_clauses(expr.right, index, negate, constraint)
    if len(left) > 1 and len(right) > 1:
        raise ConstraintError(
            f"constraint {constraint.text!r} (line {constraint.line}) is not "
            "convertible to clauses without auxiliary variables"
        )
    return [lc + rc for lc in left for rc in right]


def fm_to_cnf(model: FeatureModel) -> CnfFormula:
    """Encode the feature tree and constraints as CNF.

    Variables are numbered by preorder traversal; the names map records each
    feature's name. Clause order is deterministic: root unit, per-feature
    tree clauses in preorder, then constraints in declaration order.
    """
    features = list(model.preorder())
    index = {f.name: i for i, f in enumerate(features, start=1)}
    clauses: list[Clause] = []

    def push(raw: list[int]) -> None:
        clause = normalize_clause(raw)
        if clause is not None:
            clauses.append(clause)

    push([index[model.root.name]])
    for feature in features:
        parent = index[feature.name]
        for child in feature.children:
            push([-index[child.name], parent])
            if child.mandatory:
                push([-parent, index[child.name]])
        for group in feature.groups:
            members = [index[m.name] for m in group.members]
            for member in members:
                push([-member, parent])
            push([-parent] + members)
            if group.kind == "alternative":
                for i, a in enumerate(members):
                    for b in members[i + 1:]:
                        push([-a, -b])
    for constraint in model.constraints:
        for raw in _expr_clauses(constraint.expression, index, False, constraint):
            push(raw)

    return CnfFormula(
        num_vars=len(features),
        clauses=tuple(clauses),
        names={index[f.name]: f.name for f in features},
    )


def parse_fm_to_cnf(text: str | bytes) -> CnfFormula:
    """Convenience: dialect text straight to its CNF encoding."""
    return fm_to_cnf(parse_fm(text))
