import random
from fractions import Fraction

import pytest

from caba.constraints import (
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
from caba.errors import InconsistentInput, NonGroundInput

from generators import random_consistent_set, random_constraint, sample_points

X = LinearTerm.variable("X")
Y = LinearTerm.variable("Y")
Z = LinearTerm.variable("Z")
X1 = LinearTerm.variable("X1")
X2 = LinearTerm.variable("X2")


def c(val):
    return LinearTerm.constant(val)


class TestIsConsistent:
    def test_contradictory_bounds(self):
        assert not is_consistent([constraint(X, "<", c(0)), constraint(X, ">", c(0))])

    def test_two_upper_bounds_and_independent_lower(self):
        assert is_consistent(
            [
                constraint(X1, "<", c(10)),
                constraint(X1, "<", c(5)),
                constraint(X2, ">", c(3)),
            ]
        )

    def test_pinched_interval(self):
        assert is_consistent(
            [constraint(X, ">=", Y), constraint(Y, ">=", c(0)), constraint(X, "<=", c(0))]
        )

    def test_empty_set(self):
        assert is_consistent([])

    def test_disequality_chain(self):
        assert is_consistent([constraint(X, "!=", c(0))])
        assert not is_consistent([constraint(X, "!=", c(0)), constraint(X, "=", c(0))])


class TestNegate:
    def test_strict_to_nonstrict(self):
        out = negate(constraint(X, "<", c(1)))
        assert out.disjuncts == (frozenset({constraint(X, ">=", c(1))}),)

    def test_equality_trichotomy(self):
        out = negate(constraint(X, "=", c(0)))
        assert set(out.disjuncts) == {
            frozenset({constraint(X, "<", c(0))}),
            frozenset({constraint(X, ">", c(0))}),
        }

    def test_relational(self):
        out = negate(constraint(X, ">=", Y))
        assert out.disjuncts == (frozenset({constraint(X, "<", Y)}),)


class TestProject:
    def test_pinched_interval_collapses_to_point(self):
        out = project(
            [constraint(X, ">=", Y), constraint(Y, ">=", c(0)), constraint(X, "<=", c(0))],
            {"X"},
        )
        assert out.disjuncts == (frozenset({constraint(X, "=", c(0))}),)

    def test_drops_uncoupled_variable(self):
        out = project([constraint(X, ">", c(0)), constraint(Y, "<", c(2))], {"X"})
        assert out.disjuncts == (frozenset({constraint(X, ">", c(0))}),)

    def test_empty_conjunction(self):
        assert project([], {"X"}).disjuncts == (frozenset(),)

    def test_rejects_inconsistent_input(self):
        with pytest.raises(InconsistentInput):
            project([constraint(X, "<", c(0)), constraint(X, ">", c(0))], {"X"})


class TestEntailsProjected:
    def test_full_attack_validity(self):
        assert entails_projected(
            [constraint(X, ">", c(10)), constraint(Z, "<", c(3))],
            [constraint(X, ">", c(0)), constraint(Y, "<", c(2))],
            {"X"},
        )

    def test_covering_upper_bound(self):
        assert entails_projected(
            [constraint(X, "<", c(1)), constraint(Y, ">", c(0))],
            [constraint(X, "<", c(10))],
            {"X"},
        )

    def test_non_covering(self):
        assert not entails_projected(
            [constraint(X, "<", c(1)), constraint(Y, ">", c(0))],
            [constraint(X, "<", c(5)), constraint(Y, ">", c(3))],
            {"X", "Y"},
        )


class TestEquivalentDnf:
    def test_case_split_is_identity(self):
        p = ConstraintDNF((frozenset({constraint(Y, "<", c(10))}),))
        q = ConstraintDNF(
            (
                frozenset({constraint(Y, "<", c(10)), constraint(Y, ">=", c(5))}),
                frozenset({constraint(Y, "<", c(10)), constraint(Y, "<", c(5))}),
            )
        )
        assert equivalent_dnf(p, q, {"X", "Y"})

    def test_interval_equals_point(self):
        p = ConstraintDNF((frozenset({constraint(X, "=", c(0))}),))
        q = ConstraintDNF(
            (frozenset({constraint(X, "<=", c(0)), constraint(X, ">=", c(0))}),)
        )
        assert equivalent_dnf(p, q, {"X"})

    def test_strict_shift_differs(self):
        p = ConstraintDNF((frozenset({constraint(X, ">", c(0))}),))
        q = ConstraintDNF((frozenset({constraint(X, ">", c(1))}),))
        assert not equivalent_dnf(p, q, {"X"})


class TestConstraintSplit:
    def test_pinched_complement(self):
        out = constraint_split(
            [constraint(X, ">=", Y), constraint(Y, ">=", c(0))],
            [constraint(X, "<=", c(0))],
            {"X"},
        )
        assert out.disjuncts == (frozenset({constraint(X, "<", c(0))}),)

    def test_absorbed_region_derived(self):
        # oracle: not(X>0) and X>3 means X<=0 and X>3, inconsistent
        assert not is_consistent([constraint(X, "<=", c(0)), constraint(X, ">", c(3))])
        out = constraint_split([constraint(X, ">", c(0))], [constraint(X, ">", c(3))], {"X"})
        assert out.disjuncts == ()

    def test_self_split_empty(self):
        out = constraint_split([constraint(X, ">", c(0))], [constraint(X, ">", c(0))], {"X"})
        assert out.disjuncts == ()

    def test_rejects_inconsistent_operands(self):
        bad = [constraint(X, "<", c(0)), constraint(X, ">", c(0))]
        with pytest.raises(InconsistentInput):
            constraint_split(bad, [constraint(X, ">", c(0))], {"X"})
        with pytest.raises(InconsistentInput):
            constraint_split([constraint(X, ">", c(0))], bad, {"X"})


class TestEvalGround:
    def test_arithmetic_identities(self):
        assert eval_ground(
            [constraint(c(0), "<", c(10)), constraint(c(2) + c(1), "=", c(1) + c(2))]
        )

    def test_empty(self):
        assert eval_ground([])

    def test_false_constraint(self):
        assert not eval_ground([constraint(c(5), "<", c(3))])

    def test_rejects_variables(self):
        with pytest.raises(NonGroundInput):
            eval_ground([constraint(X, "<", c(3))])


def _holds(cs, point):
    return all(cc.substitute(point).eval_ground() for cc in cs)


class TestProperties:
    def test_project_soundness_sampled(self):
        rng = random.Random(7)
        for _ in range(60):
            vars_ = ["X", "Y", "Z"][: rng.randint(1, 3)]
            cs = random_consistent_set(rng, vars_)
            keep = sorted(set(rng.sample(vars_, k=rng.randint(0, len(vars_)))))
            proj = project(cs, keep)
            for point in sample_points(keep):
                in_proj = any(_holds(d, point) for d in proj.disjuncts)
                extended = frozenset(cc.substitute(point) for cc in cs)
                assert in_proj == is_consistent(extended)

    def test_negate_partitions_space(self):
        rng = random.Random(11)
        for _ in range(80):
            cc = random_constraint(rng, ["X", "Y"])
            pieces = negate(cc).disjuncts
            for point in sample_points(sorted(cc.vars())):
                holds = [_holds([cc], point)] + [_holds(d, point) for d in pieces]
                assert sum(holds) == 1

    def test_split_conditions(self):
        rng = random.Random(13)
        for _ in range(40):
            vars_ = ["X", "Y"]
            cset = random_consistent_set(rng, vars_, 2)
            dset = random_consistent_set(rng, vars_, 2)
            from caba.constraints import constraints_vars

            shared = constraints_vars(cset) & constraints_vars(dset)
            out = constraint_split(cset, dset, shared)
            for d in out.disjuncts:
                assert is_consistent(d)
            for i, a in enumerate(out.disjuncts):
                for b in out.disjuncts[i + 1 :]:
                    assert not is_consistent(a | b)
            # membership agrees with the defining formula on a point grid
            proj = project(cset, shared)
            allv = sorted(constraints_vars(cset | dset))
            for point in sample_points(allv, [Fraction(-1), Fraction(0), Fraction(1)]):
                lhs = _holds(dset, point) and not any(
                    _holds(p, point) for p in proj.disjuncts
                )
                rhs = any(_holds(e, point) for e in out.disjuncts)
                assert lhs == rhs

    def test_renaming_invariance(self):
        rng = random.Random(17)
        mapping = {"X": "U", "Y": "W"}
        for _ in range(60):
            cs = frozenset(
                random_constraint(rng, ["X", "Y"]) for _ in range(rng.randint(1, 3))
            )
            renamed = frozenset(cc.rename(mapping) for cc in cs)
            assert is_consistent(cs) == is_consistent(renamed)

    def test_entailment_monotone_in_antecedent(self):
        rng = random.Random(19)
        for _ in range(40):
            dset = random_consistent_set(rng, ["X", "Y"], 2)
            cset = random_consistent_set(rng, ["X", "Z"], 2)
            if not entails_projected(dset, cset, {"X"}):
                continue
            extra = random_constraint(rng, ["X", "Y"])
            stronger = dset | {extra}
            if is_consistent(stronger):
                assert entails_projected(stronger, cset, {"X"})
