"""Full and partial attacks between constrained arguments.

An argument attacks another on an assumption whose contrary predicate
matches the attacker's claim.  Both argument tuples are rewritten onto
one fresh shared tuple with equality constraints; the attack is full
when the target's region is entirely covered by the attacker's claim
region (universal entailment after projection), partial when the two
regions merely overlap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .arguments import ConstrainedArgument
from .constraints import (
    LinearConstraint,
    LinearTerm,
    entails_projected,
    is_consistent,
)
from .framework import Atom


@dataclass(frozen=True)
class AttackEdge:
    attacker: str
    target: str
    kind: str  # "full" | "partial"
    target_assumption: Atom

    def render(self) -> str:
        return (
            f"{self.attacker} ={self.kind}=> {self.target} "
            f"[on {self.target_assumption.render()}]"
        )

    def to_object(self) -> dict:
        return {
            "attacker": self.attacker,
            "target": self.target,
            "kind": self.kind,
            "assumption": self.target_assumption.render(),
        }


def _aligned_pair(
    attacker: ConstrainedArgument,
    target: ConstrainedArgument,
    assumption: Atom,
) -> tuple[frozenset[LinearConstraint], frozenset[LinearConstraint], frozenset[str]]:
    """Rename the two arguments apart and equate the attacker's claim
    tuple and the attacked assumption's tuple to one fresh tuple."""
    a = attacker.rename({v: f"_a_{v}" for v in attacker.vars()})
    bmap = {v: f"_t_{v}" for v in target.vars()}
    batom = assumption.rename(bmap)
    shared = tuple(f"_x{i}" for i in range(len(assumption.args)))
    c = set(a.constraints)
    d = {cc.rename(bmap) for cc in target.constraints}
    for x, t in zip(shared, a.claim.args):
        c.add(LinearConstraint.make(LinearTerm.variable(x), "=", t))
    for x, t in zip(shared, batom.args):
        d.add(LinearConstraint.make(LinearTerm.variable(x), "=", t))
    return frozenset(c), frozenset(d), frozenset(shared)


def _matching_assumptions(
    attacker: ConstrainedArgument,
    target: ConstrainedArgument,
    contraries: Mapping[str, str],
) -> list[Atom]:
    return [
        a
        for a in sorted(target.assumptions, key=Atom.render)
        if contraries.get(a.predicate) == attacker.claim.predicate
    ]


def fully_attacks(
    attacker: ConstrainedArgument,
    target: ConstrainedArgument,
    contraries: Mapping[str, str],
    assumption: Atom | None = None,
) -> bool:
    """Every instance of the target is defeated by some attacker instance."""
    atoms = (
        [assumption]
        if assumption is not None
        else _matching_assumptions(attacker, target, contraries)
    )
    for atom in atoms:
        c, d, shared = _aligned_pair(attacker, target, atom)
        if entails_projected(d, c, shared):
            return True
    return False


def partially_attacks(
    attacker: ConstrainedArgument,
    target: ConstrainedArgument,
    contraries: Mapping[str, str],
    assumption: Atom | None = None,
) -> bool:
    """Some instance of the target is defeated by some attacker instance."""
    atoms = (
        [assumption]
        if assumption is not None
        else _matching_assumptions(attacker, target, contraries)
    )
    for atom in atoms:
        c, d, shared = _aligned_pair(attacker, target, atom)
        # renamed apart off the shared tuple, so joint consistency of the
        # union coincides with consistency of the conjoined projections
        if is_consistent(c | d):
            return True
    return False


def attack_graph(
    args: Iterable[ConstrainedArgument],
    contraries: Mapping[str, str],
) -> list[AttackEdge]:
    """Per-assumption attack edges with the strongest kind recorded."""
    pool = list(args)
    edges: list[AttackEdge] = []
    for a in pool:
        for b in pool:
            for atom in _matching_assumptions(a, b, contraries):
                if fully_attacks(a, b, contraries, atom):
                    edges.append(AttackEdge(a.id, b.id, "full", atom))
                elif partially_attacks(a, b, contraries, atom):
                    edges.append(AttackEdge(a.id, b.id, "partial", atom))
    return edges
