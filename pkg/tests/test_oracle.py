"""Tests for the linear-algebra membership oracle and its agreement
with the rewriting engine."""

import random
from fractions import Fraction

import pytest

from hopfcheck.errors import DegreeOverflow
from hopfcheck.freealg import Alphabet, FreeElement, commutator
from hopfcheck.oracle import (MEMBER_AT_ALL_POINTS, NON_MEMBER_WITNESS,
                              GradedBasis, IdealSlice, evaluate_element,
                              oracle_membership, oracle_membership_many,
                              sample_points)
from hopfcheck.rewrite import MEMBER, complete, ideal_membership, orient
from hopfcheck.scalars import Scalar

AB = Alphabet.base(["a", "b", "c", "d"])
A, B, C, D = (FreeElement.letter(AB, n) for n in "abcd")


def illy_relations():
    return [
        commutator(A, B) - B * B,
        commutator(A, C),
        commutator(B, C) + D * B,
        commutator(B, D),
        commutator(A, D) - D * B,
        commutator(C, D) - (D * D - A * D + C * B),
    ]


def glghb_relations():
    """The exchanged specialization: [a,b]=b^2, [a,c]=0, [c,b]=db,
    [d,b]=0, [d,a]=-db, [d,c]=ad-cb-d^2."""
    return [
        commutator(A, B) - B * B,
        commutator(A, C),
        commutator(C, B) - D * B,
        commutator(D, B),
        commutator(D, A) + D * B,
        commutator(D, C) - (A * D - C * B - D * D),
    ]


def glgh_relations():
    g, h = Scalar.var("g"), Scalar.var("h")
    return [
        commutator(D, C) - (C * C).scale(h),
        commutator(D, B) - (A * D - B * C + (A * C).scale(h) - D * D).scale(g),
        commutator(B, C) - (D * C).scale(g) - (A * C).scale(h)
        + (C * C).scale(g * h),
        commutator(A, C) - (C * C).scale(g),
        commutator(A, D) - (D * C).scale(g) + (A * C).scale(h),
        commutator(A, B) - (D * A - B * C + (D * C).scale(g) - A * A).scale(h),
    ]


def test_graded_basis_count():
    basis = GradedBasis(AB, 4)
    assert len(basis) == 1 + 4 + 16 + 64 + 256 == 341
    assert basis.index[()] == 0
    # positions follow the word order
    ws = basis.words
    assert all(len(ws[i]) <= len(ws[i + 1]) for i in range(len(ws) - 1))


def test_exchanged_relations_are_members():
    # each relation of the exchanged presentation lies in the base ideal
    report = oracle_membership_many(glghb_relations(), illy_relations(),
                                    degree_cap=4, trials=5, seed=1)
    assert report.verdict == MEMBER_AT_ALL_POINTS
    assert all(all(t.members) for t in report.trials)
    assert report.note  # parameter-free collapses to one evaluation point
    assert len(report.trials) == 1


def test_degree_one_non_member():
    report = oracle_membership(B, illy_relations(), degree_cap=4)
    assert report.verdict == NON_MEMBER_WITNESS
    assert report.witness == ()


def test_perturbed_relation_non_member():
    # ac - ca + b^2: the negative control; b^2 is not in the ideal
    x = A * C - C * A + B * B
    report = oracle_membership(x, illy_relations(), degree_cap=4)
    assert report.verdict == NON_MEMBER_WITNESS


def test_rank_matches_flat_quotient_dimension():
    # span rank + quotient dimension = number of words; the quotient of
    # a flat deformation has commutative dimensions 1, 4, 10, 20, 35
    report = oracle_membership(B, illy_relations(), degree_cap=4)
    t = report.trials[0]
    assert t.cols == 341
    assert t.rank == 341 - (1 + 4 + 10 + 20 + 35) == 271


def test_rank_stability_across_points():
    rels = glgh_relations()
    report = oracle_membership(rels[0], rels, degree_cap=4, trials=5, seed=9)
    ranks = [t.rank for t in report.trials]
    assert len(ranks) == 5
    # generic rank at >= 4 of 5 random points
    top = max(set(ranks), key=ranks.count)
    assert ranks.count(top) >= 4
    assert top == 341 - 70


def test_symbolic_members_at_random_points():
    rels = glgh_relations()
    # random two-sided combinations of the relations are members
    rng = random.Random(31)
    for _ in range(5):
        combo = FreeElement.zero(AB)
        for _ in range(rng.randint(1, 2)):
            r = rels[rng.randrange(len(rels))]
            u = tuple(rng.randrange(4) for _ in range(rng.randint(0, 1)))
            v = tuple(rng.randrange(4) for _ in range(rng.randint(0, 1)))
            combo = combo + r.mul_words(u, v)
        if combo.is_zero():
            continue
        report = oracle_membership(combo, rels, degree_cap=4, trials=5,
                                   seed=7)
        assert report.verdict == MEMBER_AT_ALL_POINTS


def test_specialization_point_included():
    rels = glgh_relations()
    pt = {"g": Fraction(0), "h": Fraction(1)}
    report = oracle_membership(rels[0], rels, degree_cap=4, trials=3,
                               seed=3, extra_points=(pt,))
    assert report.trials[0].assignment == (("g", Fraction(0)),
                                           ("h", Fraction(1)))
    assert len(report.trials) == 4


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        oracle_membership(A * B * C * D * A, illy_relations(), degree_cap=4)


def test_agreement_with_rewriting():
    # rewriting and the oracle agree on random degree-<=4 elements
    rels = illy_relations()
    system = complete(orient(rels), 8)
    rng = random.Random(77)
    basis = GradedBasis(AB, 4)
    span = IdealSlice(basis, [evaluate_element(r, {}) for r in rels])
    checked_members = 0
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
            terms[w] = Scalar.const(rng.randint(-4, 4))
        x = FreeElement(AB, terms)
        if rng.random() < 0.5 and not x.is_zero():
            # shift into the ideal to exercise the member branch
            r = rels[rng.randrange(len(rels))]
            x = r.mul_words((), ()) * 0 + r  # keep degree small
        engine = ideal_membership(x, system)
        assert span.contains(evaluate_element(x, {})) \
            == (engine.verdict == MEMBER)
        if engine.verdict == MEMBER:
            checked_members += 1
    assert checked_members > 0


def test_sample_points_avoid_poles():
    g = Scalar.var("g")
    avoid = (g.inverse(),)  # den = g, pole at g = 0
    pts = sample_points(["g"], trials=20, seed=0, scalars_to_avoid=avoid)
    assert len(pts) == 20
    assert all(pt["g"] != 0 for pt in pts)
    assert all(-97 <= pt["g"].numerator <= 97 for pt in pts)
