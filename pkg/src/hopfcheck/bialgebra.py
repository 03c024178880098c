"""Presentations, generator maps, and the bialgebra verification passes.

A Presentation bundles generators, parameters, relations, a coproduct
table and a counit table.  The checks certify, by reduction in completed
rewrite systems:

* ``check_delta_hom``        -- the coproduct respects every relation,
* ``check_coassoc``          -- coassociativity on generators,
* ``check_counit``           -- the counit axioms,
* ``check_algebra_morphism`` -- relation images lie in the target ideal,
* ``check_coalgebra_morphism`` -- the map intertwines the coproducts,
* ``check_equivalence``      -- both directions of both, certifying a
                                bialgebra isomorphism up to the bound.

Every pass verdict carries a replayable trace; every fail carries a
nonzero remainder in canonical form.  Verdicts can additionally be
cross-validated against the linear-algebra oracle at random parameter
points (any disagreement forces the report to fail).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import oracle as oracle_mod
from .errors import MissingParameter, NonInvertibleMap, PresentationError
from .freealg import (Alphabet, FreeElement, apply_gen_map, coproduct_extend,
                      counit_extend, format_element, format_scalar,
                      tensor_embed)
from .rewrite import (INCONCLUSIVE, MEMBER, NON_MEMBER_UP_TO_BOUND,
                      RewriteSystem, complete, ideal_membership, orient,
                      tensor_quotient, tensor_relations)
from .scalars import Scalar, scalar

DEFAULT_DEGREE_BOUND = 8

PASS = "pass"
FAIL = "fail"

VERDICT_MEMBER = "member"
VERDICT_FAIL = "fail"
VERDICT_INCONCLUSIVE = "inconclusive"


class Presentation:
    """Generators + parameters + relations + coproduct + counit.

    Immutable by convention; completed rewrite systems are cached per
    (tensor arity, degree bound).  The generator declaration order is
    the word order used for orientation and normal forms.
    """

    def __init__(self, name: str, params: Sequence[str],
                 gens: Sequence[str], relations: Sequence[FreeElement],
                 coproduct: Mapping[str, FreeElement],
                 counit: Mapping[str, Scalar],
                 specialized_at: Optional[Mapping[str, Fraction]] = None):
        self.name = name
        self.params = tuple(params)
        if len(set(self.params)) != len(self.params):
            raise PresentationError("duplicate parameter names")
        self.alphabet = Alphabet.base(gens)
        self.relations = _canonical_distinct(relations)
        for rel in self.relations:
            if rel.alphabet != self.alphabet:
                raise PresentationError("relation over a foreign alphabet")
        self.coproduct = dict(coproduct)
        self.counit = {n: scalar(c) for n, c in counit.items()}
        self.specialized_at = dict(specialized_at) if specialized_at else None
        self._systems: dict = {}
        self._validate_tables()

    @property
    def gens(self):
        return self.alphabet.base_names

    def _validate_tables(self):
        T = self.tensor_alphabet(2)
        for g in self.gens:
            if g not in self.coproduct:
                raise PresentationError("coproduct image missing for %s" % g)
            if g not in self.counit:
                raise PresentationError("counit value missing for %s" % g)
        for g, img in self.coproduct.items():
            if g not in self.gens:
                raise PresentationError("coproduct for undeclared %s" % g)
            if img.alphabet != T:
                raise PresentationError(
                    "coproduct image of %s not over the tensor square" % g)
            for w in img.terms:
                tags = [T.factor(i) for i in w]
                if sorted(tags) != [1, 2]:
                    raise PresentationError(
                        "coproduct image of %s is not bilinear "
                        "(matrix-comultiplication shape)" % g)

    # -- derived structures -------------------------------------------
    def tensor_alphabet(self, arity: int) -> Alphabet:
        return self.alphabet.tensor_power(arity)

    def system(self, degree_bound: int = DEFAULT_DEGREE_BOUND) -> RewriteSystem:
        key = (1, degree_bound)
        if key not in self._systems:
            self._systems[key] = complete(orient(self.relations), degree_bound)
        return self._systems[key]

    def tensor_system(self, arity: int,
                      degree_bound: int = DEFAULT_DEGREE_BOUND) -> RewriteSystem:
        key = (arity, degree_bound)
        if key not in self._systems:
            self._systems[key] = tensor_quotient(self, arity, degree_bound)
        return self._systems[key]

    def coproduct_by_index(self) -> dict:
        return {self.alphabet.index(g): img
                for g, img in self.coproduct.items()}

    def counit_by_index(self) -> dict:
        return {self.alphabet.index(g): c for g, c in self.counit.items()}

    def canonical_relations(self) -> frozenset:
        return frozenset(r.monic() for r in self.relations)

    def reordered(self, gens: Sequence[str]) -> "Presentation":
        """Same presentation with a different generator precedence."""
        gens = tuple(gens)
        if sorted(gens) != sorted(self.gens):
            raise PresentationError("order %r is not a permutation of %r"
                                    % (gens, self.gens))
        if gens == self.gens:
            return self
        new_alpha = Alphabet.base(gens)
        new_tensor = new_alpha.tensor_power(2)
        old_t = self.tensor_alphabet(2)

        def rekey(x: FreeElement, old: Alphabet, new: Alphabet) -> FreeElement:
            conv = {i: new.index(*old.letters[i]) for i in range(len(old))}
            return FreeElement(new, {tuple(conv[i] for i in w): c
                                     for w, c in x.terms.items()})

        return Presentation(
            self.name, self.params, gens,
            [rekey(r, self.alphabet, new_alpha) for r in self.relations],
            {g: rekey(img, old_t, new_tensor)
             for g, img in self.coproduct.items()},
            self.counit, self.specialized_at)

    def __repr__(self):
        return "Presentation(%s: %d gens, %d relations)" % (
            self.name, len(self.gens), len(self.relations))


def _canonical_distinct(relations) -> tuple:
    out = []
    seen = set()
    for rel in relations:
        if rel.is_zero():
            continue
        key = rel.monic()
        if key in seen:
            continue
        seen.add(key)
        out.append(rel)
    return tuple(out)


def same_relation_ideals_syntactically(p: Presentation, q: Presentation) -> bool:
    """Set equality of canonicalized relations (not ideal equality).

    Presentations may use different generator precedences; q's relations
    are re-keyed into p's alphabet before comparing monic forms.
    """
    if sorted(p.gens) != sorted(q.gens):
        return False
    q_aligned = q.reordered(p.gens)
    return p.canonical_relations() == q_aligned.canonical_relations()


class GenMap:
    """Morphism datum: generator images plus a parameter substitution.

    Source parameters without an explicit substitute pass through
    unchanged (as formal parameters adjoined to the target's scalars),
    which is what a generic-parameter morphism check needs.
    """

    def __init__(self, source: Presentation, target: Presentation,
                 gen_images: Mapping[str, FreeElement],
                 param_subst: Optional[Mapping[str, Scalar]] = None,
                 name: str = "map"):
        self.source = source
        self.target = target
        self.name = name
        self.gen_images = dict(gen_images)
        for g in source.gens:
            if g not in self.gen_images:
                raise PresentationError("no image for generator %s" % g)
        subst = {p: scalar(v) for p, v in (param_subst or {}).items()}
        for p in source.params:
            subst.setdefault(p, Scalar.var(p))
        self.param_subst = subst

    def _images_by_index(self) -> dict:
        return {self.source.alphabet.index(g): img
                for g, img in self.gen_images.items()}

    def apply(self, x: FreeElement) -> FreeElement:
        return apply_gen_map(self._images_by_index(), self.param_subst,
                             x, self.target.alphabet)

    def tensor_apply(self, x: FreeElement, arity: int = 2) -> FreeElement:
        """(m (x) ... (x) m) on an element of the source tensor power."""
        src_t = self.source.tensor_alphabet(arity)
        tgt_t = self.target.tensor_alphabet(arity)
        images = {}
        for i in range(len(src_t)):
            name, tag = src_t.letters[i]
            images[i] = tensor_embed(self.gen_images[name], tag, arity)
        return apply_gen_map(images, self.param_subst, x, tgt_t)

    def inverse(self) -> "GenMap":
        """Inverse map when every image is a single bare generator."""
        back = {}
        for g, img in self.gen_images.items():
            if len(img.terms) != 1:
                raise NonInvertibleMap("image of %s is not a generator" % g)
            (w, c), = img.terms.items()
            if len(w) != 1 or not c.is_one():
                raise NonInvertibleMap("image of %s is not a generator" % g)
            back[self.target.alphabet.letters[w[0]][0]] = g
        if len(back) != len(self.target.gens):
            raise NonInvertibleMap("generator images are not a permutation")
        inv_images = {g: FreeElement.letter(self.source.alphabet, back[g])
                      for g in self.target.gens}
        inv_subst = {}
        for p, s in self.param_subst.items():
            if s == Scalar.var(p):
                continue
            sv = s.variables()
            if len(sv) == 1 and s == Scalar.var(next(iter(sv))):
                inv_subst[next(iter(sv))] = Scalar.var(p)
            else:
                raise NonInvertibleMap(
                    "parameter substitution for %s is not a renaming" % p)
        return GenMap(self.target, self.source, inv_images, inv_subst,
                      name=self.name + "^-1")

    def __repr__(self):
        imgs = ", ".join("%s->%s" % (g, format_element(i))
                         for g, i in sorted(self.gen_images.items()))
        return "GenMap(%s: %s)" % (self.name, imgs)


def exchange_map(source: Presentation, target: Presentation) -> GenMap:
    """The generator exchange a<->d, b<->c (its own inverse)."""
    swap = {"a": "d", "b": "c", "c": "b", "d": "a"}
    images = {g: FreeElement.letter(target.alphabet, swap[g])
              for g in source.gens}
    return GenMap(source, target, images, name="exchange")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class CheckItem:
    label: str
    verdict: str                 # member | fail | inconclusive
    remainder: str = ""
    trace: Optional[tuple] = None
    query: Optional[FreeElement] = None   # reduced element, for the oracle


@dataclass
class CheckReport:
    check_name: str
    presentations: tuple
    items: list = field(default_factory=list)
    engine: dict = field(default_factory=dict)

    @property
    def overall(self) -> str:
        verdicts = [i.verdict for i in self.items]
        if any(v == VERDICT_FAIL for v in verdicts):
            return FAIL
        if any(v == VERDICT_INCONCLUSIVE for v in verdicts):
            return INCONCLUSIVE
        return PASS


def _verdict_of(membership) -> str:
    if membership.verdict == MEMBER:
        return VERDICT_MEMBER
    if membership.verdict == NON_MEMBER_UP_TO_BOUND:
        return VERDICT_FAIL
    return VERDICT_INCONCLUSIVE


def _membership_item(label: str, x: FreeElement,
                     system: RewriteSystem) -> CheckItem:
    v = ideal_membership(x, system)
    return CheckItem(label, _verdict_of(v),
                     "" if v.is_member else format_element(v.remainder),
                     v.trace, query=x)


def _system_meta(tag: str, system: RewriteSystem) -> dict:
    return {tag: {"rules": len(system.rules), "status": system.status,
                  "warnings": list(system.warnings)}}


def _run_oracle(report: CheckReport, relations,
                trials: int, seed: int, extra_points=()) -> None:
    """Cross-validate every membership item; disagreement fails the report."""
    queries = [i for i in report.items if i.query is not None]
    if not queries or trials <= 0:
        return
    degree_cap = max([4] + [i.query.degree() for i in queries]
                     + [r.degree() for r in relations])
    oracle_report = oracle_mod.oracle_membership_many(
        [i.query for i in queries], relations, degree_cap,
        trials=trials, seed=seed, extra_points=extra_points)
    agreements = []
    for pos, item in enumerate(queries):
        engine_member = item.verdict == VERDICT_MEMBER
        agree = all(t.members[pos] == engine_member
                    for t in oracle_report.trials)
        agreements.append(agree)
        if not agree:
            item.verdict = VERDICT_FAIL
            item.remainder = (item.remainder or
                              "oracle disagrees with the rewriting verdict")
    report.engine["oracle"] = {
        "trials": len(oracle_report.trials),
        "points": [[ "%s=%s" % (n, v) for n, v in t.assignment]
                   for t in oracle_report.trials],
        "ranks": [t.rank for t in oracle_report.trials],
        "dims": ["%dx%d" % (t.rows, t.cols) for t in oracle_report.trials],
        "agreement": all(agreements),
        "note": oracle_report.note,
    }


# ---------------------------------------------------------------------------
# verification passes
# ---------------------------------------------------------------------------

def check_delta_hom(p: Presentation, degree_bound: int = DEFAULT_DEGREE_BOUND,
                    oracle_trials: int = 0, oracle_seed: int = 0,
                    oracle_points=()) -> CheckReport:
    """The coproduct extends to an algebra morphism: Delta(r) = 0 in the
    tensor-square quotient for every relation r."""
    system = p.tensor_system(2, degree_bound)
    T = p.tensor_alphabet(2)
    images = p.coproduct_by_index()
    report = CheckReport("delta_hom", (p.name,),
                         engine={"degree_bound": degree_bound,
                                 **_system_meta("tensor2", system)})
    for i, rel in enumerate(p.relations):
        dr = coproduct_extend(images, rel, T)
        report.items.append(_membership_item("REL %d" % (i + 1), dr, system))
    if oracle_trials:
        relations, _ = tensor_relations(p, 2)
        _run_oracle(report, relations, oracle_trials, oracle_seed,
                    oracle_points)
    return report


def check_coassoc(p: Presentation,
                  degree_bound: int = DEFAULT_DEGREE_BOUND) -> CheckReport:
    """(Delta x id) Delta = (id x Delta) Delta on generators, reduced in
    the tensor-cube quotient (identically zero for matrix coproducts)."""
    system = p.tensor_system(3, degree_bound)
    T2 = p.tensor_alphabet(2)
    T3 = p.tensor_alphabet(3)
    images2 = p.coproduct_by_index()

    def reembed(x: FreeElement, fac1: int, fac2: int) -> FreeElement:
        conv = {}
        for i in range(len(T2)):
            name, tag = T2.letters[i]
            conv[i] = FreeElement.letter(T3, name, fac1 if tag == 1 else fac2)
        return apply_gen_map(conv, {}, x, T3)

    left_images = {}    # Delta on factor 1, identity into factor 3
    right_images = {}   # identity into factor 1, Delta on factor 2
    for i in range(len(T2)):
        name, tag = T2.letters[i]
        dx = coproduct_extend(images2, FreeElement.letter(p.alphabet, name), T2)
        if tag == 1:
            left_images[i] = reembed(dx, 1, 2)
            right_images[i] = FreeElement.letter(T3, name, 1)
        else:
            left_images[i] = FreeElement.letter(T3, name, 3)
            right_images[i] = reembed(dx, 2, 3)

    report = CheckReport("coassoc", (p.name,),
                         engine={"degree_bound": degree_bound,
                                 **_system_meta("tensor3", system)})
    for g in p.gens:
        dx = coproduct_extend(images2, FreeElement.letter(p.alphabet, g), T2)
        lhs = apply_gen_map(left_images, {}, dx, T3)
        rhs = apply_gen_map(right_images, {}, dx, T3)
        report.items.append(_membership_item("GEN %s" % g, lhs - rhs, system))
    return report


def check_counit(p: Presentation,
                 degree_bound: int = DEFAULT_DEGREE_BOUND) -> CheckReport:
    """(eps x id) Delta = id = (id x eps) Delta, and eps kills relations."""
    system = p.system(degree_bound)
    T = p.tensor_alphabet(2)
    images = p.coproduct_by_index()
    eps = p.counit_by_index()

    left_images = {}
    right_images = {}
    for i in range(len(T)):
        name, tag = T.letters[i]
        as_scalar = FreeElement.unit(p.alphabet, p.counit[name])
        as_letter = FreeElement.letter(p.alphabet, name)
        left_images[i] = as_scalar if tag == 1 else as_letter
        right_images[i] = as_letter if tag == 1 else as_scalar

    report = CheckReport("counit", (p.name,),
                         engine={"degree_bound": degree_bound,
                                 **_system_meta("base", system)})
    for g in p.gens:
        x = FreeElement.letter(p.alphabet, g)
        dx = coproduct_extend(images, x, T)
        left = apply_gen_map(left_images, {}, dx, p.alphabet) - x
        right = apply_gen_map(right_images, {}, dx, p.alphabet) - x
        bad = [nf for nf in (system.normal_form(left),
                             system.normal_form(right))
               if not nf.is_zero()]
        if bad:
            report.items.append(CheckItem("GEN %s" % g, VERDICT_FAIL,
                                          format_element(bad[0])))
        else:
            report.items.append(CheckItem("GEN %s" % g, VERDICT_MEMBER))
    for i, rel in enumerate(p.relations):
        val = counit_extend(eps, rel)
        if val.is_zero():
            report.items.append(CheckItem("REL %d" % (i + 1), VERDICT_MEMBER))
        else:
            report.items.append(CheckItem("REL %d" % (i + 1), VERDICT_FAIL,
                                          format_scalar(val)))
    return report


def check_algebra_morphism(m: GenMap,
                           degree_bound: int = DEFAULT_DEGREE_BOUND,
                           oracle_trials: int = 0, oracle_seed: int = 0,
                           oracle_points=()) -> CheckReport:
    """Images of source relations lie in the target ideal."""
    system = m.target.system(degree_bound)
    report = CheckReport(
        "algebra_morphism", (m.source.name, m.target.name),
        engine={"degree_bound": degree_bound, "map": m.name,
                **_system_meta("target", system)})
    for i, rel in enumerate(m.source.relations):
        report.items.append(_membership_item(
            "REL %d" % (i + 1), m.apply(rel), system))
    if oracle_trials:
        _run_oracle(report, list(m.target.relations), oracle_trials,
                    oracle_seed, oracle_points)
    return report


def check_coalgebra_morphism(m: GenMap,
                             degree_bound: int = DEFAULT_DEGREE_BOUND,
                             oracle_trials: int = 0, oracle_seed: int = 0,
                             oracle_points=()) -> CheckReport:
    """(m x m) Delta_source = Delta_target m on generators."""
    system = m.target.tensor_system(2, degree_bound)
    src_T = m.source.tensor_alphabet(2)
    src_images = m.source.coproduct_by_index()
    tgt_images = m.target.coproduct_by_index()
    tgt_T = m.target.tensor_alphabet(2)
    report = CheckReport(
        "coalgebra_morphism", (m.source.name, m.target.name),
        engine={"degree_bound": degree_bound, "map": m.name,
                **_system_meta("target_tensor2", system)})
    for g in m.source.gens:
        x = FreeElement.letter(m.source.alphabet, g)
        lhs = m.tensor_apply(coproduct_extend(src_images, x, src_T), 2)
        rhs = coproduct_extend(tgt_images, m.apply(x), tgt_T)
        report.items.append(_membership_item("GEN %s" % g, lhs - rhs, system))
    if oracle_trials:
        relations, _ = tensor_relations(m.target, 2)
        _run_oracle(report, relations, oracle_trials, oracle_seed,
                    oracle_points)
    return report


def check_equivalence(p: Presentation, q: Presentation, m: GenMap,
                      degree_bound: int = DEFAULT_DEGREE_BOUND,
                      oracle_trials: int = 0, oracle_seed: int = 0,
                      oracle_points=()) -> CheckReport:
    """Bialgebra isomorphism up to the bound: both morphism checks in
    both directions (the inverse map is derived, so images must be bare
    generators)."""
    if m.source is not p or m.target is not q:
        m = GenMap(p, q, m.gen_images, m.param_subst, m.name)
    minv = m.inverse()
    report = CheckReport("equivalence", (p.name, q.name),
                         engine={"degree_bound": degree_bound,
                                 "map": m.name})
    for sub in (check_algebra_morphism(m, degree_bound, oracle_trials,
                                       oracle_seed, oracle_points),
                check_algebra_morphism(minv, degree_bound, oracle_trials,
                                       oracle_seed, oracle_points),
                check_coalgebra_morphism(m, degree_bound, oracle_trials,
                                         oracle_seed, oracle_points),
                check_coalgebra_morphism(minv, degree_bound, oracle_trials,
                                         oracle_seed, oracle_points)):
        prefix = "%s %s->%s" % (sub.check_name, sub.presentations[0],
                                sub.presentations[1])
        for item in sub.items:
            report.items.append(CheckItem(
                "%s %s" % (prefix, item.label), item.verdict,
                item.remainder, item.trace, item.query))
        for key, val in sub.engine.items():
            if key not in ("degree_bound", "map"):
                report.engine["%s %s" % (prefix, key)] = val
    return report


def specialize(p: Presentation, assignment: Mapping[str, Fraction],
               name: Optional[str] = None) -> Presentation:
    """Evaluate the deformation parameters at exact rational values."""
    values = {}
    for param in p.params:
        if param not in assignment:
            raise MissingParameter("no value for parameter %s" % param)
        values[param] = Fraction(assignment[param])
    subst = {param: Scalar.const(v) for param, v in values.items()}

    def image(x: FreeElement) -> FreeElement:
        return x.map_scalars(
            lambda c: c.substitute(subst) if c.variables() else c)

    if name is None:
        bits = ["%s%s" % (param, str(values[param]).replace("-", "m")
                          .replace("/", "_"))
                for param in p.params]
        name = "_".join([p.name] + bits) if bits else p.name
    return Presentation(
        name, (), p.gens,
        [image(r) for r in p.relations],
        {g: image(img) for g, img in p.coproduct.items()},
        {g: (c.substitute(subst) if c.variables() else c)
         for g, c in p.counit.items()},
        specialized_at=values)
