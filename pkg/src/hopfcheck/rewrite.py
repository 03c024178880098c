"""Noncommutative rewriting: orientation, completion, normal forms.

Relations are oriented into rules lhs -> rhs with lhs the deglex-largest
word scaled monic and every rhs word strictly smaller, so rewriting
terminates.  Completion resolves overlap ambiguities (diamond lemma) up
to a degree bound; inclusion ambiguities are removed eagerly by
inter-reduction.  The outcome is graded honestly:

* ``saturated``              -- no ambiguity was skipped: the rule set is a
                                full Groebner basis and normal forms are
                                canonical in every degree;
* ``confluent_up_to_bound``  -- ambiguities above the bound were skipped;
                                normal forms are canonical for elements whose
                                degree stays within the bound;
* ``inconclusive``           -- a work budget was exhausted first.

Deterministic strategy everywhere: reduce the globally largest reducible
word, apply the earliest-indexed rule at its leftmost position.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import BoundTooSmall, BudgetExceeded, NonOrientable
from .freealg import Alphabet, FreeElement, tensor_embed, word_key
from .scalars import ONE, Scalar

SATURATED = "saturated"
CONFLUENT_UP_TO_BOUND = "confluent_up_to_bound"
INCONCLUSIVE = "inconclusive"

MEMBER = "member"
NON_MEMBER_UP_TO_BOUND = "non_member_up_to_bound"

# a nonzero normal form refutes membership only with this much headroom
# between the element degree and the certified confluence bound
NON_MEMBER_SLACK = 2

NORMAL_FORM_STEP_BUDGET = 1_000_000
COMPLETION_PAIR_BUDGET = 100_000


class RewriteRule:
    """Oriented monic relation lhs - rhs = 0 with provenance note."""

    __slots__ = ("lhs", "rhs", "source")

    def __init__(self, lhs, rhs: FreeElement, source: str = ""):
        self.lhs = tuple(lhs)
        self.rhs = rhs
        self.source = source

    def element(self) -> FreeElement:
        return FreeElement.word(self.rhs.alphabet, self.lhs) - self.rhs

    def degree(self) -> int:
        return len(self.lhs)

    def __repr__(self):
        from .freealg import format_word
        return "RewriteRule(%s -> %s)" % (
            format_word(self.rhs.alphabet, self.lhs), self.rhs)


class TraceStep(NamedTuple):
    """One rewrite: coeff * left * (lhs_rule - rhs_rule) * right removed."""
    rule: int
    pos: int
    left: tuple
    right: tuple
    coeff: Scalar


@dataclass
class MembershipVerdict:
    verdict: str            # member | non_member_up_to_bound | inconclusive
    remainder: FreeElement
    trace: Optional[tuple] = None  # tuple of TraceStep when recorded

    @property
    def is_member(self) -> bool:
        return self.verdict == MEMBER


def orient(relations: Iterable[FreeElement], sources=None) -> list:
    """Turn relations into monic rewrite rules.

    Each nonzero relation is scaled so its deglex-largest word has
    coefficient 1 and split as lhs -> lhs - relation.  Zero relations are
    skipped, duplicates (constant multiples) removed.  Division by a
    parameter-dependent leading coefficient is legal over the rational
    function field but is recorded in the rule's provenance note.
    """
    rules = []
    seen = set()
    for n, rel in enumerate(relations):
        src = sources[n] if sources else "rel %d" % (n + 1)
        if rel.is_zero():
            continue
        if rel.support() == [()]:
            raise NonOrientable("relation %s is a nonzero constant" % src)
        lc = rel.leading_coeff()
        if lc.is_zero():
            raise NonOrientable("zero leading coefficient in %s" % src)
        if lc.variables():
            src += " [divided by leading coefficient %s]" % lc
        monic = rel.monic()
        if monic in seen:
            continue
        seen.add(monic)
        lhs = monic.leading_word()
        rhs = FreeElement.word(rel.alphabet, lhs) - monic
        rules.append(RewriteRule(lhs, rhs, src))
    return rules


def _find_sub(w: tuple, s: tuple) -> int:
    n, m = len(w), len(s)
    for i in range(n - m + 1):
        if w[i:i + m] == s:
            return i
    return -1


def _find_reduction(word: tuple, rules: Sequence) -> Optional[tuple]:
    """(rule index, position) for the earliest rule, leftmost position."""
    for ri, rule in enumerate(rules):
        if rule is None:
            continue
        pos = _find_sub(word, rule.lhs)
        if pos >= 0:
            return ri, pos
    return None


def normal_form(x: FreeElement, rules: Sequence, trace=None,
                step_budget=NORMAL_FORM_STEP_BUDGET, rng=None) -> FreeElement:
    """Reduce x to an irreducible element.

    Deterministic strategy by default; pass ``rng`` to randomize the
    choice of reducible word/rule/position (used by confluence tests).
    Appends TraceStep entries to ``trace`` when given.
    """
    work = x
    steps = 0
    irreducible: set = set()  # rules are fixed for the whole call
    while work.terms:
        choice = None
        if rng is None:
            for w in sorted((w for w in work.terms if w not in irreducible),
                            key=word_key, reverse=True):
                hit = _find_reduction(w, rules)
                if hit is None:
                    irreducible.add(w)
                    continue
                choice = (w, hit[0], hit[1])
                break
        else:
            candidates = []
            for w in sorted(work.terms, key=word_key):
                for ri, rule in enumerate(rules):
                    if rule is None:
                        continue
                    for pos in range(len(w) - len(rule.lhs) + 1):
                        if w[pos:pos + len(rule.lhs)] == rule.lhs:
                            candidates.append((w, ri, pos))
            if candidates:
                choice = candidates[rng.randrange(len(candidates))]
        if choice is None:
            return work
        steps += 1
        if steps > step_budget:
            raise BudgetExceeded("normal form exceeded %d steps" % step_budget)
        w, ri, pos = choice
        rule = rules[ri]
        c = work.terms[w]
        left, right = w[:pos], w[pos + len(rule.lhs):]
        # replace c*w by c * left*rhs*right
        terms = dict(work.terms)
        del terms[w]
        repl = rule.rhs.mul_words(left, right)
        for rw, rc in repl.terms.items():
            s = terms.get(rw, None)
            s = rc * c if s is None else s + rc * c
            if s.is_zero():
                terms.pop(rw, None)
            else:
                terms[rw] = s
        work = FreeElement(work.alphabet, terms)
        if trace is not None:
            trace.append(TraceStep(ri, pos, left, right, c))
    return work


class RewriteSystem:
    """Inter-reduced, degree-bounded completed rule set (immutable)."""

    def __init__(self, alphabet: Alphabet, rules, degree_bound: int,
                 status: str, warnings=(), stats=None):
        self.alphabet = alphabet
        self.rules = tuple(rules)
        self.degree_bound = degree_bound
        self.status = status
        self.warnings = tuple(warnings)
        self.stats = dict(stats or {})

    def normal_form(self, x: FreeElement, trace=None, rng=None) -> FreeElement:
        return normal_form(x, self.rules, trace=trace, rng=rng)

    def __repr__(self):
        return "RewriteSystem(%d rules, bound %d, %s)" % (
            len(self.rules), self.degree_bound, self.status)


def _overlaps(r1: RewriteRule, r2: RewriteRule):
    """Proper overlap lengths k with suffix_k(lhs1) == prefix_k(lhs2)."""
    l1, l2 = r1.lhs, r2.lhs
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield k


def complete(rules: Sequence, degree_bound: int,
             pair_budget=COMPLETION_PAIR_BUDGET) -> RewriteSystem:
    """Degree-bounded overlap completion of oriented rules."""
    rules = list(rules)
    if not rules:
        return RewriteSystem(Alphabet.base(()), (), degree_bound, SATURATED)
    alphabet = rules[0].rhs.alphabet
    maxdeg = max(r.degree() for r in rules)
    if degree_bound < maxdeg:
        raise BoundTooSmall("degree bound %d below max rule degree %d"
                            % (degree_bound, maxdeg))

    live: list = []            # rules or None tombstones
    pending = deque((r.element(), r.source) for r in rules)
    pairs: list = []           # heap of (overlap degree, i, j, k)
    skipped = False
    budget_hit = False
    pair_count = 0
    warnings = []

    def add_rule(rule: RewriteRule) -> None:
        idx = len(live)
        live.append(rule)
        if "[divided by" in rule.source:
            warnings.append(rule.source)
        # eager inter-reduction: retire rules whose lhs the new lhs divides
        for i, r in enumerate(live[:-1]):
            if r is not None and _find_sub(r.lhs, rule.lhs) >= 0:
                live[i] = None
                pending.append((r.element(), r.source))
        for i, r in enumerate(live):
            if r is None:
                continue
            for k in _overlaps(r, rule):
                heapq.heappush(pairs, (len(r.lhs) + len(rule.lhs) - k,
                                       i, idx, k))
            if i != idx:
                for k in _overlaps(rule, r):
                    heapq.heappush(pairs, (len(rule.lhs) + len(r.lhs) - k,
                                           idx, i, k))

    while pending or pairs:
        if pending:
            elem, src = pending.popleft()
            nf = normal_form(elem, live)
            if nf.is_zero():
                continue
            add_rule(orient([nf], [src])[0])
            continue
        deg, i, j, k = heapq.heappop(pairs)
        if live[i] is None or live[j] is None:
            continue
        if deg > degree_bound:
            skipped = True
            continue
        pair_count += 1
        if pair_count > pair_budget:
            budget_hit = True
            break
        r1, r2 = live[i], live[j]
        tail = r2.lhs[k:]
        head = r1.lhs[:len(r1.lhs) - k]
        s_elem = r1.rhs.mul_words((), tail) - r2.rhs.mul_words(head, ())
        if not s_elem.is_zero():
            pending.append((s_elem, "overlap(%d,%d;%d)" % (i, j, k)))

    final = sorted((r for r in live if r is not None),
                   key=lambda r: word_key(r.lhs))
    # normalize right-hand sides against the finished rule set
    final = [RewriteRule(r.lhs, normal_form(r.rhs, final), r.source)
             for r in final]
    status = (INCONCLUSIVE if budget_hit
              else CONFLUENT_UP_TO_BOUND if skipped else SATURATED)
    stats = {"pairs_processed": pair_count, "rules": len(final)}
    return RewriteSystem(alphabet, final, degree_bound, status,
                         warnings, stats)


def ideal_membership(x: FreeElement, system: RewriteSystem,
                     record_trace: bool = True) -> MembershipVerdict:
    """Decide membership of x in the two-sided ideal behind the system.

    ``member`` iff the normal form is zero.  A nonzero normal form only
    refutes membership when confluence is certified with enough headroom
    over deg(x); otherwise the verdict is explicitly inconclusive.
    """
    trace: list = [] if record_trace else None
    rem = system.normal_form(x, trace=trace)
    if rem.is_zero():
        return MembershipVerdict(MEMBER, rem,
                                 tuple(trace) if record_trace else None)
    if system.status == SATURATED:
        return MembershipVerdict(NON_MEMBER_UP_TO_BOUND, rem,
                                 tuple(trace) if record_trace else None)
    if (system.status == CONFLUENT_UP_TO_BOUND
            and system.degree_bound >= x.degree() + NON_MEMBER_SLACK):
        return MembershipVerdict(NON_MEMBER_UP_TO_BOUND, rem,
                                 tuple(trace) if record_trace else None)
    return MembershipVerdict(INCONCLUSIVE, rem,
                             tuple(trace) if record_trace else None)


def replay_trace(x: FreeElement, system: RewriteSystem,
                 trace: Sequence, remainder: FreeElement) -> bool:
    """Check that x = sum of traced ideal multiples + remainder.

    Every traced step removed coeff * left * (lhs - rhs) * right from the
    work element, so summing those ideal elements reconstructs x from the
    remainder.  This is the proof object for a ``member`` verdict.
    """
    total = remainder
    for step in trace:
        rule = system.rules[step.rule]
        total = total + rule.element().mul_words(step.left, step.right).scale(step.coeff)
    return total == x


def tensor_relations(presentation, arity: int):
    """Relation list presenting the arity-fold tensor power.

    The presentation's relations rewritten into each factor's letters,
    plus cross-factor commutators x(j) y(i) - y(i) x(j) for i < j (these
    orient factor-ascending, x(j) y(i) -> y(i) x(j), automatically).
    Shared by the completion route and the linear-algebra oracle.
    """
    if arity not in (2, 3):
        raise ValueError("tensor power supports arity 2 or 3")
    base = presentation.alphabet
    target = base.tensor_power(arity)
    relations = []
    sources = []
    for factor in range(1, arity + 1):
        for n, rel in enumerate(presentation.relations):
            relations.append(tensor_embed(rel, factor, arity))
            sources.append("rel %d @ factor %d" % (n + 1, factor))
    nbase = len(base)
    for i in range(1, arity + 1):
        for j in range(i + 1, arity + 1):
            for xi in range(nbase):
                for yi in range(nbase):
                    xj = xi + (j - 1) * nbase
                    yi_ = yi + (i - 1) * nbase
                    elem = FreeElement(target, {(xj, yi_): ONE}) \
                        - FreeElement(target, {(yi_, xj): ONE})
                    relations.append(elem)
                    sources.append("comm %s,%s" % (target.display(xj),
                                                   target.display(yi_)))
    return relations, sources


def tensor_quotient(presentation, arity: int, degree_bound: int) -> RewriteSystem:
    """Completed system presenting the arity-fold tensor power."""
    relations, sources = tensor_relations(presentation, arity)
    return complete(orient(relations, sources), degree_bound)
