"""Extension enumeration over a split argument basis.

Enumeration relies on the basis being instance-disjoint and
non-overlapping, so that full attacks carry the complete conflict
structure: conflict-free sets have no internal full attack, admissible
sets counter every full attacker, and stable sets fully attack all
outsiders.  A native check for stability without enumeration is also
provided: a set is stable when it is conflict-free (no partial attack)
and, together with everything it fully attacks, denotes the whole
argument set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .arguments import ConstrainedArgument
from .attacks import fully_attacks, partially_attacks
from .equivalence import instance_disjoint, non_overlapping, set_equiv
from .errors import BasisNotCompliant

SEMANTICS = ("conflict_free", "admissible", "stable")


@dataclass(frozen=True)
class Extension:
    members: frozenset[str]
    semantics: str
    basis: tuple[str, ...]

    def to_object(self) -> dict:
        return {
            "members": sorted(self.members),
            "semantics": self.semantics,
        }


def is_ngcf(
    sigma: Iterable[ConstrainedArgument], contraries: Mapping[str, str]
) -> bool:
    """Conflict-free in the strong sense: no internal partial attack."""
    pool = list(sigma)
    return not any(
        partially_attacks(a, b, contraries) for a in pool for b in pool
    )


def fatt(
    sigma: Iterable[ConstrainedArgument],
    delta: Iterable[ConstrainedArgument],
    contraries: Mapping[str, str],
) -> list[ConstrainedArgument]:
    """Members of delta fully attacked by some member of sigma."""
    pool = list(sigma)
    return [
        b
        for b in delta
        if any(fully_attacks(a, b, contraries) for a in pool)
    ]


def check_stable_native(
    sigma: Iterable[ConstrainedArgument],
    delta: Iterable[ConstrainedArgument],
    contraries: Mapping[str, str],
) -> bool:
    sigma = list(sigma)
    delta = list(delta)
    if not is_ngcf(sigma, contraries):
        return False
    return set_equiv(sigma + fatt(sigma, delta, contraries), delta)


def enumerate_extensions(
    delta: Iterable[ConstrainedArgument],
    semantics: str,
    contraries: Mapping[str, str],
) -> list[Extension]:
    """All subsets of the basis accepted under the given semantics."""
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    basis = sorted(delta, key=lambda a: a.id)
    if not instance_disjoint(basis):
        raise BasisNotCompliant("basis is not instance-disjoint")
    if not non_overlapping(basis, contraries):
        raise BasisNotCompliant("basis is not non-overlapping")

    n = len(basis)
    attacks = [
        [
            j
            for j in range(n)
            if fully_attacks(basis[i], basis[j], contraries)
        ]
        for i in range(n)
    ]
    attacked_by = [
        [i for i in range(n) if j in attacks[i]] for j in range(n)
    ]
    out: list[Extension] = []
    ids = tuple(a.id for a in basis)

    def accept(chosen: frozenset[int]) -> bool:
        if semantics == "conflict_free":
            return True
        if semantics == "admissible":
            return all(
                any(b in attacks[g] for g in chosen)
                for m in chosen
                for b in attacked_by[m]
            )
        return all(
            any(j in attacks[g] for g in chosen)
            for j in range(n)
            if j not in chosen
        )

    def search(i: int, chosen: set[int]):
        if i == n:
            frozen = frozenset(chosen)
            if accept(frozen):
                out.append(
                    Extension(
                        frozenset(ids[k] for k in frozen), semantics, ids
                    )
                )
            return
        search(i + 1, chosen)  # exclude basis[i]
        # include basis[i] unless it conflicts with the current choice
        if all(
            i not in attacks[g] and g not in attacks[i] for g in chosen
        ) and i not in attacks[i]:
            chosen.add(i)
            search(i + 1, chosen)
            chosen.remove(i)

    search(0, set())
    out.sort(key=lambda e: (len(e.members), sorted(e.members)))
    return out
