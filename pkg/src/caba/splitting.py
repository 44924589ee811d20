"""Argument splitting: repair a set into instance-disjoint,
non-overlapping form while preserving its denotation.

Two repairs exist.  ``split_ci`` removes from one argument the region
it shares with another (the survivor keeps the overlap).  ``split_pa``
cuts an argument attacked only partially into a piece that is fully
attacked and pieces that are not attacked at all.  The repair loop
applies them until no violating pair remains.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .arguments import ConstrainedArgument, canonicalise
from .attacks import fully_attacks, partially_attacks
from .constraints import (
    LinearConstraint,
    LinearTerm,
    _conj_consistent,
    _exclusive,
    _subtract,
    constraint_split,
    project,
)
from .equivalence import common_instances, denotation, shape_atoms
from .errors import IterationLimit, PreconditionViolated
from .framework import Atom

DEFAULT_MAX_ITERS = 10_000


def split_ci(
    a: ConstrainedArgument, b: ConstrainedArgument
) -> list[ConstrainedArgument]:
    """Replace b by pieces sharing no instance with a or each other."""
    if not common_instances(a, b):
        raise PreconditionViolated(
            f"{a.id} and {b.id} have no common constrained instances"
        )
    da, db = denotation(a), denotation(b)
    out: list[ConstrainedArgument] = []
    k = 0
    for shape in sorted(db):
        regions = list(_exclusive(db[shape]))
        for cover in da.get(shape, ()):
            regions = [p for r in regions for p in _subtract(r, cover)]
        claim, assumption_atoms = shape_atoms(shape, len(b.claim.args))
        for region in regions:
            k += 1
            piece = ConstrainedArgument(
                f"{b.id}.{k}",
                claim,
                region,
                frozenset(assumption_atoms),
                b.rules_used,
            )
            out.append(canonicalise(piece, sorted(piece.vars())))
    return out


def _attack_witness(
    a: ConstrainedArgument,
    b: ConstrainedArgument,
    contraries: Mapping[str, str],
) -> Atom | None:
    """The assumption on which a partially but not fully attacks b,
    else the first partially attacked one."""
    fallback = None
    for atom in sorted(b.assumptions, key=Atom.render):
        if contraries.get(atom.predicate) != a.claim.predicate:
            continue
        if partially_attacks(a, b, contraries, atom):
            if not fully_attacks(a, b, contraries, atom):
                return atom
            fallback = fallback or atom
    return fallback


def split_pa(
    a: ConstrainedArgument,
    b: ConstrainedArgument,
    contraries: Mapping[str, str],
    assumption: Atom | None = None,
) -> list[ConstrainedArgument]:
    """Cut b along a's attack region on the matched assumption: the
    fully attacked remainder first, then the unattacked pieces."""
    atom = assumption or _attack_witness(a, b, contraries)
    if atom is None or not partially_attacks(a, b, contraries, atom):
        raise PreconditionViolated(f"{a.id} does not partially attack {b.id}")
    ar = a.rename({v: f"_a_{v}" for v in a.vars()})
    shared = tuple(f"_x{i}" for i in range(len(atom.args)))
    c = set(ar.constraints)
    for x, t in zip(shared, ar.claim.args):
        c.add(LinearConstraint.make(LinearTerm.variable(x), "=", t))
    d = set(b.constraints)
    for x, t in zip(shared, atom.args):
        d.add(LinearConstraint.make(LinearTerm.variable(x), "=", t))
    keep = b.atom_vars()

    regions: list[frozenset[LinearConstraint]] = []
    # fully attacked remainder: joint region of attack and target
    joint = frozenset(c) | frozenset(d)
    if _conj_consistent(joint):
        regions.extend(project(joint, keep).disjuncts)
    # unattacked pieces: target region outside the attack's projection
    for piece in constraint_split(frozenset(c), frozenset(d), frozenset(shared)).disjuncts:
        regions.extend(project(piece, keep).disjuncts)

    out = []
    for k, region in enumerate(regions, start=1):
        piece = ConstrainedArgument(
            f"{b.id}.{k}", b.claim, region, b.assumptions, b.rules_used
        )
        out.append(canonicalise(piece, sorted(piece.vars())))
    return out


def argument_splitting(
    args: Iterable[ConstrainedArgument],
    contraries: Mapping[str, str],
    max_iters: int = DEFAULT_MAX_ITERS,
) -> list[ConstrainedArgument]:
    """Repair until instance-disjoint and non-overlapping; denotation
    preserving.  Common-instance repairs run before attack repairs;
    pairs are processed in canonical order."""
    pool = list(args)
    for _ in range(max_iters):
        step = _first_violation(pool, contraries)
        if step is None:
            return pool
        kind, a, b, atom = step
        pool = [x for x in pool if x is not b]
        if kind == "ci":
            pool.extend(split_ci(a, b))
        else:
            pool.extend(split_pa(a, b, contraries, atom))
    raise IterationLimit(
        f"argument splitting did not converge within {max_iters} repairs",
        partial=pool,
    )


def _first_violation(
    pool: list[ConstrainedArgument], contraries: Mapping[str, str]
):
    ci_pairs = []
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            x, y = pool[i], pool[j]
            if x.claim.predicate != y.claim.predicate:
                continue
            if common_instances(x, y):
                # the lexicographically larger rendering is replaced
                alpha, beta = sorted((x, y), key=ConstrainedArgument.render)
                ci_pairs.append((alpha.id, beta.id, alpha, beta))
    if ci_pairs:
        _, _, alpha, beta = min(ci_pairs, key=lambda t: (t[0], t[1]))
        return ("ci", alpha, beta, None)
    pa_pairs = []
    for a in pool:
        for b in pool:
            for atom in sorted(b.assumptions, key=Atom.render):
                if contraries.get(atom.predicate) != a.claim.predicate:
                    continue
                if partially_attacks(a, b, contraries, atom) and not fully_attacks(
                    a, b, contraries, atom
                ):
                    pa_pairs.append((a.id, b.id, a, b, atom))
    if pa_pairs:
        _, _, a, b, atom = min(pa_pairs, key=lambda t: (t[0], t[1]))
        return ("pa", a, b, atom)
    return None
