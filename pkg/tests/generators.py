"""Random input generators shared by the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from caba.arguments import ConstrainedArgument
from caba.constraints import LinearConstraint, LinearTerm, is_consistent
from caba.framework import Atom, CabaFramework, Rule

RELS = ("<", "<=", "=", "!=", ">=", ">")


def random_term(rng: random.Random, vars_: list[str], max_terms: int = 2) -> LinearTerm:
    coeffs = {}
    for v in rng.sample(vars_, k=rng.randint(0, min(max_terms, len(vars_)))):
        coeffs[v] = Fraction(rng.randint(-5, 5))
    return LinearTerm.build(coeffs, Fraction(rng.randint(-5, 5)))


def random_constraint(rng: random.Random, vars_: list[str]) -> LinearConstraint:
    return LinearConstraint.make(
        random_term(rng, vars_), rng.choice(RELS), random_term(rng, vars_)
    )


def random_consistent_set(
    rng: random.Random, vars_: list[str], max_constraints: int = 3
) -> frozenset[LinearConstraint]:
    """Rejection-samples a consistent conjunction."""
    while True:
        cs = frozenset(
            random_constraint(rng, vars_)
            for _ in range(rng.randint(1, max_constraints))
        )
        if is_consistent(cs):
            return cs


def sample_points(vars_: list[str], values=None):
    """A small grid of rational sample points over the variables."""
    from itertools import product

    if values is None:
        values = [Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(2)]
    for combo in product(values, repeat=len(vars_)):
        yield {v: LinearTerm.constant(q) for v, q in zip(vars_, combo)}


def random_argument(
    rng: random.Random, claim_pred: str = "p", assumption_preds=("a", "b")
) -> ConstrainedArgument:
    """A small single-variable argument for attack/split properties."""
    vars_ = ["X", "Y"][: rng.randint(1, 2)]
    constraints = random_consistent_set(rng, vars_, 2)
    assumptions = frozenset(
        Atom(p, (LinearTerm.variable(rng.choice(vars_)),))
        for p in assumption_preds
        if rng.random() < 0.6
    )
    return ConstrainedArgument(
        f"g{rng.randrange(10**6)}",
        Atom(claim_pred, (LinearTerm.variable(vars_[0]),)),
        constraints,
        assumptions,
        frozenset(),
    )


def random_bounded_framework(rng: random.Random) -> CabaFramework:
    """A framework whose constraints pin every variable to an integer
    point in 0..8, with zero-arity assumptions, so that the finite
    grounding over 0..8 captures the full semantics exactly.

    Shape: up to two 0-ary assumptions with 0-ary contraries, up to two
    derived unary predicates layered acyclically, and up to five rules.
    """
    n_assum = rng.randint(1, 2)
    assumption_decl = {f"asm{i}": (f"con{i}", 0) for i in range(n_assum)}
    derived = ["p", "q"][: rng.randint(1, 2)]
    heads = derived + [f"con{i}" for i in range(n_assum)]
    rules: list[Rule] = []
    n_rules = rng.randint(1, 5)
    for k in range(n_rules):
        head_pred = rng.choice(heads)
        constraints: list[LinearConstraint] = []
        body: list[Atom] = []
        if head_pred in derived:
            arity = 1
            var = LinearTerm.variable("X")
            head = Atom(head_pred, (var,))
            point = rng.randint(0, 8)
            constraints.append(
                LinearConstraint.make(var, "=", LinearTerm.constant(point))
            )
            if rng.random() < 0.3:  # a redundant compatible bound
                constraints.append(
                    LinearConstraint.make(
                        var, "<=", LinearTerm.constant(point + rng.randint(0, 3))
                    )
                )
            if rng.random() < 0.1:  # occasionally an unusable rule
                constraints.append(
                    LinearConstraint.make(var, "<", LinearTerm.constant(point))
                )
        else:
            head = Atom(head_pred, ())
        # acyclic body: q-rules may use p, contraries may use p or q
        usable = []
        if head_pred == "q" or head_pred.startswith("con"):
            if "p" in derived:
                usable.append("p")
        if head_pred.startswith("con") and "q" in derived:
            usable.append("q")
        for pred in usable:
            if rng.random() < 0.5:
                v = LinearTerm.variable(f"Y{pred}")
                body.append(Atom(pred, (v,)))
                constraints.append(
                    LinearConstraint.make(
                        v, "=", LinearTerm.constant(rng.randint(0, 8))
                    )
                )
        for i in range(n_assum):
            if rng.random() < 0.5:
                body.append(Atom(f"asm{i}", ()))
        rules.append(
            Rule(f"R{k + 1}", head, frozenset(constraints), tuple(body))
        )
    return CabaFramework.build(rules, assumption_decl)
