"""Construction and certification of Hovey triples.

Given two complete hereditary cotorsion pairs, the cofibration pair
(cofibrant, trivially fibrant) and the fibration pair (trivially
cofibrant, fibrant), this module checks the two compatibility conditions,
computes the thick class W of trivial objects by both of its descriptions,
verifies thickness and the defining intersection identities, and
classifies morphisms against the resulting triple.

Membership in W is semi-decidable under the witness dimension bound: a
witness is exact evidence, while an absent answer is qualified by the
bound. The two descriptions must agree on every catalog object; any
disagreement is a hard error rather than a silently absorbed discrepancy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .catalog import (Catalog, CotorsionPair, ObjectClass, _CLASS_ENUM_CAP,
                      _iter_multisets, _search_witness, class_membership,
                      object_class)
from .exceptions import DescriptionMismatchError, PreconditionError
from .homological import (CommutingSquare, bicartesian_check, ext1,
                          extension_class, pullback_extension,
                          pushout_extension, realize_extension)
from .modules import (Module, Morphism, ShortExactSequence, cokernel_of,
                      kernel_of, split_mono_retraction)
from .verification import FAIL, INCONCLUSIVE, PASS, CheckResult, VerificationReport

DEFAULT_THICKNESS_BOUND = 6


# -- compatibility -------------------------------------------------------------


def check_compatibility(cofibration_pair: CotorsionPair,
                        fibration_pair: CotorsionPair) -> CheckResult:
    """The two conditions tying the pairs together.

    (1) the trivially fibrant class sits inside the fibrant one and the
        trivially cofibrant class inside the cofibrant one;
    (2) the cores (left intersect right) of the two pairs agree.
    """
    rt = cofibration_pair.right.member_ids       # trivially fibrant
    r = fibration_pair.right.member_ids          # fibrant
    qt = fibration_pair.left.member_ids          # trivially cofibrant
    q = cofibration_pair.left.member_ids         # cofibrant
    cond1_rt = sorted(rt - r)
    cond1_qt = sorted(qt - q)
    core_cofib = cofibration_pair.core_ids
    core_fib = fibration_pair.core_ids
    only_cofib = sorted(core_cofib - core_fib)
    only_fib = sorted(core_fib - core_cofib)
    ok = not (cond1_rt or cond1_qt or only_cofib or only_fib)
    return CheckResult("compatibility", PASS if ok else FAIL, {
        "condition1_trivially_fibrant_outside_fibrant": cond1_rt,
        "condition1_trivially_cofibrant_outside_cofibrant": cond1_qt,
        "condition2_core_only_in_cofibration_pair": only_cofib,
        "condition2_core_only_in_fibration_pair": only_fib,
    })


# -- the two descriptions of W ---------------------------------------------


def coresolution_witness(X: Module, cofibration_pair: CotorsionPair,
                         fibration_pair: CotorsionPair,
                         bound: int | None = None):
    """X >--> r -->> q with r trivially fibrant, q trivially cofibrant."""
    cat = cofibration_pair.left.catalog
    bound = bound if bound is not None else cat.default_witness_bound()
    return _search_witness(X, fibration_pair.left, cofibration_pair.right,
                           "coresolution", bound)


def resolution_witness(X: Module, cofibration_pair: CotorsionPair,
                       fibration_pair: CotorsionPair,
                       bound: int | None = None):
    """r' >--> q' -->> X with r' trivially fibrant, q' trivially cofibrant."""
    cat = cofibration_pair.left.catalog
    bound = bound if bound is not None else cat.default_witness_bound()
    return _search_witness(X, cofibration_pair.right, fibration_pair.left,
                           "resolution", bound)


@dataclass(frozen=True)
class TrivialWitnesses:
    coresolution: ShortExactSequence
    resolution: ShortExactSequence


@dataclass(frozen=True)
class TrivialClassResult:
    trivial_class: ObjectClass
    witnesses: dict[int, TrivialWitnesses]
    absent: dict[int, int]        # id -> bound that limited the search
    inconclusive: list[int]


def compute_trivial_class(cofibration_pair: CotorsionPair,
                          fibration_pair: CotorsionPair,
                          bound: int | None = None) -> TrivialClassResult:
    """Compute W by both descriptions and insist that they coincide."""
    cat = cofibration_pair.left.catalog
    bound = bound if bound is not None else cat.default_witness_bound()
    witnesses: dict[int, TrivialWitnesses] = {}
    absent: dict[int, int] = {}
    inconclusive: list[int] = []
    for e in cat.entries:
        cw, undec1 = coresolution_witness(e.module, cofibration_pair,
                                          fibration_pair, bound)
        rw, undec2 = resolution_witness(e.module, cofibration_pair,
                                        fibration_pair, bound)
        if undec1 or undec2:
            inconclusive.append(e.id)
        if (cw is None) != (rw is None):
            present = "coresolution" if cw is not None else "resolution"
            raise DescriptionMismatchError(
                f"object M{e.id}: only the {present} description produced a "
                f"witness; the other search was exhaustive up to middle "
                f"dimension {bound}, so this is a bound artifact or a bug",
                object_id=e.id, bound=bound)
        if cw is not None:
            witnesses[e.id] = TrivialWitnesses(cw, rw)
        else:
            absent[e.id] = bound
    W = ObjectClass(cat, frozenset(witnesses), "W")
    return TrivialClassResult(W, witnesses, absent, inconclusive)


# -- constructive transfer between the two descriptions ----------------------


def coresolution_to_resolution(S: ShortExactSequence,
                               cofibration_pair: CotorsionPair,
                               bound: int | None = None):
    """Turn a coresolution witness for X into a resolution witness.

    Uses a precover of the middle term through the cofibration pair and a
    pullback whose corner square is bicartesian. Returns
    (new witness, the square) or None when the precover search fails.
    """
    from .catalog import special_precover
    cover = special_precover(S.middle, cofibration_pair, bound)
    if cover is None:
        return None
    pulled = pullback_extension(cover, S.mono)
    return pulled.ses, pulled.square


def resolution_to_coresolution(S: ShortExactSequence,
                               fibration_pair: CotorsionPair,
                               bound: int | None = None):
    """Dual transfer, via a preenvelope of the middle term and a pushout."""
    from .catalog import special_preenvelope
    env = special_preenvelope(S.middle, fibration_pair, bound)
    if env is None:
        return None
    pushed = pushout_extension(env, S.epi)
    return pushed.ses, pushed.square


# -- thickness ------------------------------------------------------------------


def verify_thickness(W: ObjectClass, catalog: Catalog,
                     ends_bound: int = DEFAULT_THICKNESS_BOUND) -> CheckResult:
    """Retract closure sanity plus two-out-of-three on enumerated sequences.

    Retract closure is automatic for an id-set class; the sanity pass
    assembles sums of up to three catalog entries and checks that decided
    membership matches the id arithmetic. Two-out-of-three walks every
    realised sequence whose end terms are catalog sums with total
    dimension at most ``ends_bound``.
    """
    cat = catalog
    dims = {i: cat.module(i).total_dim for i in cat.ids()}
    retract_checks = 0
    retract_failures = []
    for size in (1, 2, 3):
        for combo in itertools.combinations_with_replacement(cat.ids(), size):
            M = cat.sum_of(combo)
            mem = class_membership(W, M)
            expected = all(i in W.member_ids for i in combo)
            retract_checks += 1
            if mem.value is None or mem.value != expected:
                retract_failures.append({"summands": list(combo),
                                         "expected": expected,
                                         "got": mem.value})
    sequences = 0
    violations = []
    inconclusive = 0
    kernel_multisets = list(_iter_multisets(tuple(sorted(cat.ids())), dims,
                                            ends_bound))
    for a_ids in kernel_multisets:
        a_dim = sum(dims[i] for i in a_ids)
        for c_ids in _iter_multisets(tuple(sorted(cat.ids())), dims,
                                     ends_bound - a_dim):
            A = cat.sum_of(a_ids)
            C = cat.sum_of(c_ids)
            space = ext1(C, A)
            if cat.algebra.p ** space.dimension > _CLASS_ENUM_CAP:
                inconclusive += 1
                continue
            a_in = all(i in W.member_ids for i in a_ids)
            c_in = all(i in W.member_ids for i in c_ids)
            for cls in space.classes():
                S = realize_extension(cls)
                bmem = class_membership(W, S.middle)
                sequences += 1
                if bmem.value is None:
                    inconclusive += 1
                    continue
                b_in = bmem.value
                bad = ((a_in and b_in and not c_in)
                       or (b_in and c_in and not a_in)
                       or (a_in and c_in and not b_in))
                if bad:
                    violations.append({
                        "kernel": list(a_ids), "quotient": list(c_ids),
                        "class": list(cls.coords),
                        "membership": [a_in, b_in, c_in]})
    status = FAIL if (violations or retract_failures) else (
        INCONCLUSIVE if inconclusive else PASS)
    return CheckResult("thickness", status, {
        "ends_bound": ends_bound,
        "retract_checks": retract_checks,
        "retract_failures": retract_failures,
        "sequences_checked": sequences,
        "two_of_three_violations": violations,
        "inconclusive": inconclusive,
    })


# -- the intersection identities -----------------------------------------------


def verify_identities(cofibration_pair: CotorsionPair,
                      fibration_pair: CotorsionPair,
                      trivial: TrivialClassResult) -> CheckResult:
    """Q cap W = trivially cofibrant and W cap R = trivially fibrant.

    For every object in W cap R the coresolution witness must split, and
    the splitting retraction is recorded as evidence.
    """
    W = trivial.trivial_class.member_ids
    q = cofibration_pair.left.member_ids
    r = fibration_pair.right.member_ids
    qt = fibration_pair.left.member_ids
    rt = cofibration_pair.right.member_ids
    qw = frozenset(q & W)
    wr = frozenset(W & r)
    problems = {}
    if qw != qt:
        problems["q_cap_w_vs_trivially_cofibrant"] = {
            "extra": sorted(qw - qt), "missing": sorted(qt - qw)}
    if wr != rt:
        problems["w_cap_r_vs_trivially_fibrant"] = {
            "extra": sorted(wr - rt), "missing": sorted(rt - wr)}
    retractions = {}
    missing_retraction = []
    for i in sorted(wr):
        witness = trivial.witnesses[i].coresolution
        retr = split_mono_retraction(witness.mono)
        if retr is None:
            missing_retraction.append(i)
        else:
            retractions[i] = retr
    ok = not problems and not missing_retraction
    return CheckResult("triple-identities", PASS if ok else FAIL, {
        "q_cap_w": sorted(qw), "trivially_cofibrant": sorted(qt),
        "w_cap_r": sorted(wr), "trivially_fibrant": sorted(rt),
        "problems": problems,
        "splitting_retractions_found": sorted(retractions),
        "missing_retractions": missing_retraction,
    })


# -- morphism classification ----------------------------------------------------


@dataclass(frozen=True)
class MorphismClassification:
    is_mono: bool
    is_epi: bool
    cofibration: bool
    trivial_cofibration: bool
    fibration: bool
    trivial_fibration: bool
    weak_equivalence: bool | None    # None: not determined (neither mono nor epi)

    def to_dict(self) -> dict:
        return {
            "is_mono": self.is_mono, "is_epi": self.is_epi,
            "cofibration": self.cofibration,
            "trivial_cofibration": self.trivial_cofibration,
            "fibration": self.fibration,
            "trivial_fibration": self.trivial_fibration,
            "weak_equivalence": self.weak_equivalence,
        }


@dataclass(frozen=True)
class HoveyTriple:
    cofibrant: ObjectClass
    trivial: ObjectClass
    fibrant: ObjectClass
    cofibration_pair: CotorsionPair
    fibration_pair: CotorsionPair
    witnesses: dict[int, TrivialWitnesses]
    report: VerificationReport

    @property
    def trivially_cofibrant(self) -> ObjectClass:
        return self.fibration_pair.left

    @property
    def trivially_fibrant(self) -> ObjectClass:
        return self.cofibration_pair.right


def classify_morphism(f: Morphism, triple: HoveyTriple) -> MorphismClassification:
    """Model-structure flags of a morphism against a certified triple."""
    mono = f.is_mono()
    epi = f.is_epi()
    coker, _ = cokernel_of(f)
    ker, _ = kernel_of(f)
    in_q = class_membership(triple.cofibrant, coker).value
    in_qt = class_membership(triple.trivially_cofibrant, coker).value
    in_r = class_membership(triple.fibrant, ker).value
    in_rt = class_membership(triple.trivially_fibrant, ker).value
    if mono:
        weak = class_membership(triple.trivial, coker).value
    elif epi:
        weak = class_membership(triple.trivial, ker).value
    else:
        weak = None
    return MorphismClassification(
        is_mono=mono, is_epi=epi,
        cofibration=bool(mono and in_q),
        trivial_cofibration=bool(mono and in_qt),
        fibration=bool(epi and in_r),
        trivial_fibration=bool(epi and in_rt),
        weak_equivalence=weak,
    )


# -- orchestration ---------------------------------------------------------------


@dataclass(frozen=True)
class BuildOutcome:
    triple: HoveyTriple | None
    report: VerificationReport

    @property
    def certified(self) -> bool:
        return self.triple is not None


def build_hovey_triple(cofibration_pair: CotorsionPair,
                       fibration_pair: CotorsionPair,
                       catalog: Catalog,
                       bound: int | None = None,
                       ends_bound: int = DEFAULT_THICKNESS_BOUND) -> BuildOutcome:
    """Run every gate in order; certify only when all of them pass."""
    if cofibration_pair.left.catalog is not catalog:
        raise PreconditionError("pairs must live over the given catalog")
    bound = bound if bound is not None else catalog.default_witness_bound()
    report = VerificationReport(bounds={
        "witness_dim": bound, "thickness_ends_dim": ends_bound,
        "catalog_max_dim": catalog.algebra.bounds.max_dim})
    for label, pair in (("cofibration-pair", cofibration_pair),
                        ("fibration-pair", fibration_pair)):
        report.add(CheckResult(f"{label}-orthogonality",
                               pair.orthogonality.status,
                               pair.orthogonality.details))
        report.add(CheckResult(f"{label}-hereditary",
                               pair.heredity.status, pair.heredity.details))
        report.add(CheckResult(f"{label}-completeness",
                               pair.completeness_check.status,
                               pair.completeness_check.details))
    if any(c.status == FAIL for c in report.checks):
        return BuildOutcome(None, report)
    compat = report.add(check_compatibility(cofibration_pair, fibration_pair))
    if compat.status == FAIL:
        return BuildOutcome(None, report)
    try:
        trivial = compute_trivial_class(cofibration_pair, fibration_pair, bound)
    except DescriptionMismatchError as e:
        report.add(CheckResult("trivial-class-descriptions", FAIL, {
            "object": e.object_id, "bound": e.bound, "message": str(e)}))
        return BuildOutcome(None, report)
    report.add(CheckResult(
        "trivial-class-descriptions",
        INCONCLUSIVE if trivial.inconclusive else PASS,
        {"members": sorted(trivial.trivial_class.member_ids),
         "absent_within_bound": {str(k): v for k, v in trivial.absent.items()},
         "inconclusive_objects": trivial.inconclusive}))
    contained = (fibration_pair.left.member_ids <= trivial.trivial_class.member_ids
                 and cofibration_pair.right.member_ids
                 <= trivial.trivial_class.member_ids)
    report.add(CheckResult(
        "trivial-subclasses-contained", PASS if contained else FAIL,
        {"trivially_cofibrant": sorted(fibration_pair.left.member_ids),
         "trivially_fibrant": sorted(cofibration_pair.right.member_ids),
         "trivial": sorted(trivial.trivial_class.member_ids)}))
    report.add(verify_thickness(trivial.trivial_class, catalog, ends_bound))
    report.add(verify_identities(cofibration_pair, fibration_pair, trivial))
    if not report.certified:
        return BuildOutcome(None, report)
    triple = HoveyTriple(
        cofibrant=cofibration_pair.left,
        trivial=trivial.trivial_class,
        fibrant=fibration_pair.right,
        cofibration_pair=cofibration_pair,
        fibration_pair=fibration_pair,
        witnesses=trivial.witnesses,
        report=report)
    return BuildOutcome(triple, report)
