"""Constrained assumption-based argumentation over linear rational arithmetic."""

from .arguments import ConstrainedArgument, GroundArgument, build_mgcarg
from .attacks import AttackEdge, attack_graph, fully_attacks, partially_attacks
from .constraints import (
    ConstraintDNF,
    LinearConstraint,
    LinearTerm,
    constraint,
    constraint_split,
    entails_projected,
    equivalent_dnf,
    eval_ground,
    is_consistent,
    negate,
    project,
)
from .equivalence import (
    common_instances,
    instance_disjoint,
    non_overlapping,
    set_equiv,
)
from .framework import Atom, CabaFramework, Rule
from .oracle import (
    GroundAbaFramework,
    Report,
    classical_arguments,
    classical_attacks,
    classical_extensions,
    cross_check,
    ground,
    is_confined,
)
from .parser import parse, parse_file
from .semantics import Extension, check_stable_native, enumerate_extensions
from .splitting import argument_splitting, split_ci, split_pa

__all__ = [
    "Atom",
    "AttackEdge",
    "CabaFramework",
    "ConstrainedArgument",
    "ConstraintDNF",
    "Extension",
    "GroundAbaFramework",
    "GroundArgument",
    "LinearConstraint",
    "LinearTerm",
    "Report",
    "Rule",
    "argument_splitting",
    "attack_graph",
    "build_mgcarg",
    "check_stable_native",
    "classical_arguments",
    "classical_attacks",
    "classical_extensions",
    "common_instances",
    "constraint",
    "constraint_split",
    "cross_check",
    "entails_projected",
    "enumerate_extensions",
    "equivalent_dnf",
    "eval_ground",
    "fully_attacks",
    "ground",
    "instance_disjoint",
    "is_confined",
    "is_consistent",
    "negate",
    "non_overlapping",
    "parse",
    "parse_file",
    "partially_attacks",
    "project",
    "set_equiv",
    "split_ci",
    "split_pa",
]

__version__ = "0.1.0"
