"""Independent linear-algebra ideal-membership oracle.

Validates the rewriting engine on a second, unrelated route: at a random
rational parameter point, the degree-<= cap slice of the two-sided ideal
is spanned by the vectors u*r*v (r a relation, u, v words, total degree
within the cap) over the graded word basis; membership of an element is
exact rational Gaussian elimination against that span.

The verdict is probabilistic evidence, not proof: the rewriting trace is
the proof object, and any disagreement between the two routes fails the
build.  For homogeneous degree-2 relations (every presentation in the
built-in library) the cap-slice span equals the ideal slice exactly, so
a refutation at one point refutes membership at that point outright.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DegreeOverflow
from .freealg import Alphabet, FreeElement, word_key

MEMBER_AT_ALL_POINTS = "member_at_all_points"
NON_MEMBER_WITNESS = "non_member_witness"
MIXED = "mixed"

POINT_RANGE = 97  # numerators/denominators drawn uniformly in [-97, 97]


class GradedBasis:
    """All words of length <= degree_cap in deglex order, with positions."""

    def __init__(self, alphabet: Alphabet, degree_cap: int):
        n = len(alphabet)
        words = []
        for deg in range(degree_cap + 1):
            words.extend(itertools.product(range(n), repeat=deg))
        self.alphabet = alphabet
        self.degree_cap = degree_cap
        self.words = tuple(words)
        self.index = {w: i for i, w in enumerate(words)}

    def __len__(self):
        return len(self.words)


def evaluate_element(x: FreeElement, point: Mapping[str, Fraction]) -> dict:
    """x with scalars evaluated at the point, as a word -> Fraction dict."""
    out = {}
    for w, c in x.terms.items():
        v = c.eval(point) if c.variables() else c.const_value()
        if v:
            out[w] = v
    return out


class IdealSlice:
    """Row-echelon span of {u*r*v : deg <= cap} at one rational point."""

    def __init__(self, basis: GradedBasis, evaluated_relations: Sequence[dict]):
        self.basis = basis
        self.pivots: dict = {}  # leading column -> monic row (col -> Fraction)
        self.rows = 0
        cap = basis.degree_cap
        n = len(basis.alphabet)
        for rel in evaluated_relations:
            if not rel:
                continue
            deg = max(len(w) for w in rel)
            if deg > cap:
                raise DegreeOverflow("relation degree %d above cap %d"
                                     % (deg, cap))
            room = cap - deg
            for du in range(room + 1):
                for u in itertools.product(range(n), repeat=du):
                    for dv in range(room - du + 1):
                        for v in itertools.product(range(n), repeat=dv):
                            row = {self.basis.index[u + w + v]: c
                                   for w, c in rel.items()}
                            self.rows += 1
                            self._insert(row)

    def _insert(self, row: dict) -> None:
        row = self._reduce(row)
        if row:
            lead = max(row)
            inv = 1 / row[lead]
            self.pivots[lead] = {c: k * inv for c, k in row.items()}

    def _reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            lead = max(row)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return row
            c = row[lead]
            for col, k in pivot.items():
                s = row.get(col, 0) - c * k
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)
        return row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, x_eval: dict) -> bool:
        """Exact membership of the evaluated element in the span."""
        for w in x_eval:
            if len(w) > self.basis.degree_cap:
                raise DegreeOverflow("element degree %d above cap %d"
                                     % (len(w), self.basis.degree_cap))
        row = {self.basis.index[w]: c for w, c in x_eval.items()}
        return not self._reduce(row)


@dataclass
class TrialReport:
    assignment: tuple      # ((name, Fraction), ...) in parameter order
    rows: int
    cols: int
    rank: int
    members: tuple         # bool per queried element


@dataclass
class OracleReport:
    verdict: str
    trials: list
    witness: Optional[tuple] = None   # refuting assignment, if any
    note: str = ""


def sample_points(params: Sequence[str], trials: int, seed: int,
                  scalars_to_avoid=(), extra_points=()) -> list:
    """extra_points first, then seeded random rational points off poles."""
    points = [dict(p) for p in extra_points]
    if not params:
        return points or [{}]
    rng = random.Random(seed)
    attempts = 0
    while len(points) < trials + len(extra_points):
        pt = {p: Fraction(rng.randint(-POINT_RANGE, POINT_RANGE),
                          rng.randint(1, POINT_RANGE)) for p in params}
        attempts += 1
        if attempts > 1000 * (trials + 1):
            raise RuntimeError("could not sample pole-free points")
        if any(s.den.evaluate(pt) == 0 for s in scalars_to_avoid):
            continue
        points.append(pt)
    return points


def _all_scalars(elements: Iterable[FreeElement]):
    for e in elements:
        yield from e.terms.values()


def oracle_membership(x: FreeElement, relations: Sequence[FreeElement],
                      degree_cap: int, trials: int = 5, seed: int = 0,
                      extra_points: Sequence[Mapping[str, Fraction]] = ()
                      ) -> OracleReport:
    """Aggregate span-membership verdicts over random parameter points."""
    report = oracle_membership_many([x], relations, degree_cap,
                                    trials=trials, seed=seed,
                                    extra_points=extra_points)
    return report


def oracle_membership_many(queries: Sequence[FreeElement],
                           relations: Sequence[FreeElement],
                           degree_cap: int, trials: int = 5, seed: int = 0,
                           extra_points: Sequence[Mapping[str, Fraction]] = ()
                           ) -> OracleReport:
    """One span per trial point, shared by all queried elements.

    Verdict aggregates over the FIRST query; per-query verdicts are in
    each trial's ``members`` tuple.
    """
    if not queries:
        raise ValueError("no queries")
    for x in queries:
        if x.degree() > degree_cap:
            raise DegreeOverflow("element degree %d above cap %d"
                                 % (x.degree(), degree_cap))
    alphabet = queries[0].alphabet
    params = set()
    for e in itertools.chain(queries, relations):
        params |= e.variables()
    params = sorted(params)
    note = "" if params else "parameter-free: single evaluation point"
    points = sample_points(params, trials, seed,
                           scalars_to_avoid=tuple(_all_scalars(
                               itertools.chain(queries, relations))),
                           extra_points=extra_points)
    basis = GradedBasis(alphabet, degree_cap)
    trials_out = []
    witness = None
    member_votes = []
    for pt in points:
        ev_rels = [evaluate_element(r, pt) for r in relations]
        span = IdealSlice(basis, ev_rels)
        members = tuple(span.contains(evaluate_element(q, pt))
                        for q in queries)
        trials_out.append(TrialReport(
            assignment=tuple(sorted(pt.items())),
            rows=span.rows, cols=len(basis), rank=span.rank,
            members=members))
        member_votes.append(members[0])
        if not members[0] and witness is None:
            witness = tuple(sorted(pt.items()))
    if all(member_votes):
        verdict = MEMBER_AT_ALL_POINTS
    elif not any(member_votes):
        verdict = NON_MEMBER_WITNESS
    else:
        verdict = MIXED
    return OracleReport(verdict, trials_out, witness, note)
