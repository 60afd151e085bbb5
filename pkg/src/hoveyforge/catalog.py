"""Catalogs of indecomposables, object classes, and cotorsion pairs.

A :class:`Catalog` is the finite stand-in for the object class of the whole
category: every simple, indecomposable projective and indecomposable
injective, closed under syzygies, cosyzygies and the summands of realised
extension middles, up to the configured dimension bound. Object classes
are sets of catalog ids, automatically closed under finite sums and
summands; the zero module belongs to every class.

All verification here is extensional and explicitly scoped "relative to
the catalog and its dimension bound": completeness witnesses are found by
bounded exhaustive search, and a missing witness is reported as
inconclusive, never as a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import Algebra
from .decomp import decompose, is_isomorphic, iter_hom_combinations
from .exceptions import PreconditionError, UndecidedError
from .homological import (cosyzygy, ext1, ext_dim, is_injective,
                          is_projective, realize_extension, syzygy)
from .modules import (Module, ShortExactSequence, direct_sum_many, hom_basis,
                      identity_morphism, injective_module, kernel_of,
                      projective_module, simple_module, solve_for_morphism,
                      zero_module)
from .verification import CheckResult

_CLASS_ENUM_CAP = 4096
_PEEL_CAP = 4096


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    module: Module
    provenance: str
    projective: bool
    injective: bool

    @property
    def label(self) -> str:
        return f"M{self.id}"


class Catalog:
    """Deduplicated indecomposables of an algebra with stable integer ids."""

    def __init__(self, algebra: Algebra, entries: list[CatalogEntry],
                 truncated: bool):
        self.algebra = algebra
        self.entries = entries
        self.truncated = truncated
        self._sum_cache: dict[tuple[int, ...], Module] = {}
        self._ids_cache: dict = {}

    def ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.entries)

    def module(self, i: int) -> Module:
        return self.entries[i].module

    @property
    def max_entry_dim(self) -> int:
        return max((e.module.total_dim for e in self.entries), default=1)

    def default_witness_bound(self) -> int:
        configured = self.algebra.bounds.max_witness_dim
        return configured if configured is not None else 3 * self.max_entry_dim

    def find_id(self, M: Module) -> int | None:
        for e in self.entries:
            if e.module.dims == M.dims and is_isomorphic(M, e.module) is not None:
                return e.id
        return None

    def sum_of(self, ids: tuple[int, ...]) -> Module:
        """The direct sum of catalog entries, memoised by id multiset."""
        ids = tuple(sorted(ids))
        if ids not in self._sum_cache:
            self._sum_cache[ids] = direct_sum_many(
                [self.module(i) for i in ids], algebra=self.algebra).module
        return self._sum_cache[ids]

    # -- decomposition against the catalog --------------------------------

    def summand_ids(self, M: Module) -> tuple[int, ...] | None:
        """The multiset of catalog ids of M's summands, or None when some
        summand is not in the catalog. Raises UndecidedError only when a
        splitting search exhausts its budget."""
        ck = M.key()
        if ck in self._ids_cache:
            out = self._ids_cache[ck]
            if isinstance(out, UndecidedError):
                raise out
            return out
        try:
            out = self._summand_ids_impl(M)
        except UndecidedError as e:
            self._ids_cache[ck] = e
            raise
        self._ids_cache[ck] = out
        return out

    def _summand_ids_impl(self, M: Module) -> tuple[int, ...] | None:
        found: list[int] = []
        remaining = M
        while remaining.total_dim:
            peeled = False
            for e in self.entries:
                if e.module.total_dim > remaining.total_dim:
                    continue
                if any(a > b for a, b in zip(e.module.dims, remaining.dims)):
                    continue
                rest = _peel_summand(e.module, remaining)
                if rest is not None:
                    found.append(e.id)
                    remaining = rest
                    peeled = True
                    break
            if peeled:
                continue
            for piece, mult in decompose(remaining).pieces:
                pid = self.find_id(piece)
                if pid is None:
                    return None
                found.extend([pid] * mult)
            remaining = zero_module(self.algebra)
        return tuple(sorted(found))


def _peel_summand(C: Module, M: Module) -> Module | None:
    """If C is a direct summand of M, the complement; otherwise None."""
    basis = hom_basis(C, M)
    p = C.algebra.p
    if not basis or p ** len(basis) > _PEEL_CAP:
        return None
    ident = identity_morphism(C)
    for phi in iter_hom_combinations(basis, skip_zero=True):
        if not phi.is_mono():
            continue
        psi = solve_for_morphism(M, C, [("right", phi, ident)])
        if psi is not None:
            complement, _ = kernel_of(phi @ psi)
            return complement
    return None


def build_catalog(algebra: Algebra) -> Catalog:
    """Seed with simples / projectives / injectives and close up to bound."""
    cat = Catalog(algebra, [], truncated=False)
    max_dim = algebra.bounds.max_dim

    def absorb(M: Module, note: str) -> bool:
        changed = False
        if M.total_dim == 0:
            return False
        if M.total_dim > max_dim:
            cat.truncated = True
            return False
        for piece, _mult in decompose(M).pieces:
            if piece.total_dim > max_dim:
                cat.truncated = True
                continue
            if cat.find_id(piece) is None:
                cat.entries.append(CatalogEntry(
                    id=len(cat.entries), module=piece, provenance=note,
                    projective=False, injective=False))
                changed = True
        return changed

    for v in algebra.vertices:
        absorb(simple_module(algebra, v), f"simple at {v}")
    for v in algebra.vertices:
        absorb(projective_module(algebra, v), f"projective at {v}")
    for v in algebra.vertices:
        absorb(injective_module(algebra, v), f"injective at {v}")

    processed_pairs: set[tuple[int, int]] = set()
    processed_omega: set[int] = set()
    rounds = 0
    while True:
        rounds += 1
        if rounds > algebra.bounds.max_iter:
            cat.truncated = True
            break
        changed = False
        for e in list(cat.entries):
            if e.id in processed_omega:
                continue
            processed_omega.add(e.id)
            changed |= absorb(syzygy(e.module), f"syzygy of M{e.id}")
            changed |= absorb(cosyzygy(e.module), f"cosyzygy of M{e.id}")
        snapshot = [e.id for e in cat.entries]
        for i in snapshot:
            for j in snapshot:
                if (i, j) in processed_pairs:
                    continue
                processed_pairs.add((i, j))
                space = ext1(cat.module(i), cat.module(j))
                p = algebra.p
                if p ** space.dimension > _CLASS_ENUM_CAP:
                    cat.truncated = True
                    continue
                for cls in space.classes():
                    if cls.is_zero:
                        continue
                    S = realize_extension(cls)
                    changed |= absorb(S.middle, f"extension middle of (M{i}, M{j})")
        if not changed:
            break

    cat.entries = [
        CatalogEntry(e.id, e.module, e.provenance,
                     is_projective(e.module), is_injective(e.module))
        for e in cat.entries
    ]
    return cat


# -- object classes -----------------------------------------------------------


@dataclass(frozen=True)
class ObjectClass:
    """A sum/summand-closed class given by its indecomposable catalog ids."""

    catalog: Catalog
    member_ids: frozenset[int]
    label: str

    def __post_init__(self):
        for i in self.member_ids:
            if not 0 <= i < len(self.catalog.entries):
                raise PreconditionError(f"unknown catalog id {i}")

    def sorted_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.member_ids))

    def __eq__(self, other):
        return (isinstance(other, ObjectClass)
                and self.catalog is other.catalog
                and self.member_ids == other.member_ids)

    def __hash__(self):
        return hash((id(self.catalog), self.member_ids))


def object_class(catalog: Catalog, spec, label: str | None = None) -> ObjectClass:
    """Build a class from "all" | "proj" | "inj" | an iterable of ids."""
    if isinstance(spec, str):
        if spec == "all":
            ids = frozenset(catalog.ids())
        elif spec == "proj":
            ids = frozenset(e.id for e in catalog.entries if e.projective)
        elif spec == "inj":
            ids = frozenset(e.id for e in catalog.entries if e.injective)
        else:
            raise PreconditionError(f"unknown class builder '{spec}'")
        return ObjectClass(catalog, ids, label or spec)
    ids = frozenset(int(i) for i in spec)
    return ObjectClass(catalog, ids, label or f"ids{sorted(ids)}")


@dataclass(frozen=True)
class MembershipResult:
    value: bool | None          # None means undecided
    summand_ids: tuple[int, ...] | None
    detail: str

    def __bool__(self):
        return bool(self.value)


def class_membership(cls: ObjectClass, M: Module) -> MembershipResult:
    """Decide membership by decomposing M against the catalog."""
    if M.algebra is not cls.catalog.algebra:
        raise PreconditionError("module over a different algebra")
    if M.total_dim == 0:
        return MembershipResult(True, (), "zero module belongs to every class")
    try:
        ids = cls.catalog.summand_ids(M)
    except UndecidedError as e:
        return MembershipResult(None, None, str(e))
    if ids is None:
        return MembershipResult(False, None,
                                "a summand is not in the catalog")
    missing = [i for i in ids if i not in cls.member_ids]
    if missing:
        return MembershipResult(False, ids,
                                f"summands {sorted(set(missing))} outside class")
    return MembershipResult(True, ids, "all summands in class")


# -- orthogonality and pair verification --------------------------------------


def right_orthogonal(cls: ObjectClass) -> ObjectClass:
    """Catalog objects r with Ext^1(q, r) = 0 for every member q."""
    cat = cls.catalog
    ids = frozenset(
        r for r in cat.ids()
        if all(ext1(cat.module(q), cat.module(r)).dimension == 0
               for q in cls.member_ids))
    return ObjectClass(cat, ids, f"rperp({cls.label})")


def left_orthogonal(cls: ObjectClass) -> ObjectClass:
    """Catalog objects q with Ext^1(q, r) = 0 for every member r."""
    cat = cls.catalog
    ids = frozenset(
        q for q in cat.ids()
        if all(ext1(cat.module(q), cat.module(r)).dimension == 0
               for r in cls.member_ids))
    return ObjectClass(cat, ids, f"lperp({cls.label})")


def verify_cotorsion_pair(left: ObjectClass, right: ObjectClass) -> CheckResult:
    """Check mutual orthogonality maximality, relative to the catalog."""
    expected_left = left_orthogonal(right)
    expected_right = right_orthogonal(left)
    details = {
        "scope": "relative to catalog and dimension bound",
        "left": sorted(left.member_ids),
        "right": sorted(right.member_ids),
        "left_should_be": sorted(expected_left.member_ids),
        "right_should_be": sorted(expected_right.member_ids),
    }
    ok = (left.member_ids == expected_left.member_ids
          and right.member_ids == expected_right.member_ids)
    return CheckResult("cotorsion-pair-orthogonality",
                       "pass" if ok else "fail", details)


def verify_hereditary(left: ObjectClass, right: ObjectClass,
                      spot_check_bound: int = 6) -> CheckResult:
    """Ext^2 vanishing across the pair, plus a closure spot check.

    The spot check walks realised sequences A >--> B -->> C between
    catalog objects within the bound: if B and C lie in the left class
    then so must A, and dually for the right class.
    """
    cat = left.catalog
    violations = []
    for q in sorted(left.member_ids):
        for r in sorted(right.member_ids):
            d = ext_dim(cat.module(q), cat.module(r), 2)
            if d:
                violations.append({"ext2_of": [q, r], "dimension": d})
    spot = {"checked": 0, "violations": []}
    for c in cat.ids():
        for a in cat.ids():
            C, A = cat.module(c), cat.module(a)
            if A.total_dim + C.total_dim > spot_check_bound:
                continue
            space = ext1(C, A)
            if cat.algebra.p ** space.dimension > _CLASS_ENUM_CAP:
                continue
            for cls in space.classes():
                S = realize_extension(cls)
                mid = class_membership(
                    ObjectClass(cat, left.member_ids, left.label), S.middle)
                spot["checked"] += 1
                if mid.value and c in left.member_ids and a not in left.member_ids:
                    spot["violations"].append(
                        {"kind": "left-kernel", "kernel": a, "quotient": c})
                midr = class_membership(
                    ObjectClass(cat, right.member_ids, right.label), S.middle)
                if midr.value and a in right.member_ids and c not in right.member_ids:
                    spot["violations"].append(
                        {"kind": "right-cokernel", "kernel": a, "quotient": c})
    ok = not violations and not spot["violations"]
    return CheckResult("cotorsion-pair-hereditary",
                       "pass" if ok else "fail",
                       {"ext2_violations": violations, "spot_check": spot})


# -- completeness witnesses ----------------------------------------------------


def _iter_multisets(ids: tuple[int, ...], dims: dict[int, int], max_total: int):
    """Multisets of ids with bounded total dimension.

    Ascending by (total dimension, id tuple); includes the empty multiset.
    """
    out: list[tuple[int, tuple[int, ...]]] = []

    def rec(start: int, acc: tuple[int, ...], total: int):
        out.append((total, acc))
        for k in range(start, len(ids)):
            i = ids[k]
            if total + dims[i] <= max_total:
                rec(k, acc + (i,), total + dims[i])

    rec(0, (), 0)
    out.sort()
    for _total, ms in out:
        yield ms


def _search_witness(X: Module, end_class: ObjectClass,
                    middle_class: ObjectClass, orientation: str,
                    bound: int) -> tuple[ShortExactSequence | None, bool]:
    """Bounded exhaustive witness search shared by all four search ops.

    orientation "coresolution" looks for X >--> E -->> Q with Q a sum over
    end_class and E in middle_class; "resolution" looks for
    R >--> E -->> X with R a sum over end_class and E in middle_class.
    Returns (witness or None, hit_undecided).
    """
    cat = end_class.catalog
    dims = {i: cat.module(i).total_dim for i in cat.ids()}
    ids = end_class.sorted_ids()
    hit_undecided = False
    budget = bound - X.total_dim
    for ms in _iter_multisets(ids, dims, max(budget, 0)):
        other = cat.sum_of(ms)
        space = (ext1(other, X) if orientation == "coresolution"
                 else ext1(X, other))
        if cat.algebra.p ** space.dimension > _CLASS_ENUM_CAP:
            hit_undecided = True
            continue
        for cls in space.classes():
            S = realize_extension(cls)
            mem = class_membership(middle_class, S.middle)
            if mem.value is None:
                hit_undecided = True
                continue
            if mem.value:
                return S, hit_undecided
    return None, hit_undecided


@dataclass(frozen=True)
class CompletenessWitness:
    object_id: int
    preenvelope: ShortExactSequence | None   # X >--> r -->> q
    precover: ShortExactSequence | None      # r >--> q -->> X
    bound: int

    @property
    def complete(self) -> bool:
        return self.preenvelope is not None and self.precover is not None


def special_preenvelope(X: Module, pair: "CotorsionPair",
                        bound: int | None = None) -> ShortExactSequence | None:
    """X >--> r -->> q with r in the right class and q in the left class."""
    bound = bound if bound is not None else pair.left.catalog.default_witness_bound()
    ses, _ = _search_witness(X, pair.left, pair.right, "coresolution", bound)
    return ses


def special_precover(X: Module, pair: "CotorsionPair",
                     bound: int | None = None) -> ShortExactSequence | None:
    """r >--> q -->> X with r in the right class and q in the left class."""
    bound = bound if bound is not None else pair.left.catalog.default_witness_bound()
    ses, _ = _search_witness(X, pair.right, pair.left, "resolution", bound)
    return ses


@dataclass(frozen=True)
class CotorsionPair:
    left: ObjectClass
    right: ObjectClass
    orthogonality: CheckResult
    heredity: CheckResult
    completeness: dict[int, CompletenessWitness]
    completeness_check: CheckResult

    @property
    def core_ids(self) -> frozenset[int]:
        return self.left.member_ids & self.right.member_ids

    @property
    def verified(self) -> bool:
        return (self.orthogonality.status == "pass"
                and self.heredity.status == "pass"
                and self.completeness_check.status == "pass")


def build_cotorsion_pair(left: ObjectClass, right: ObjectClass,
                         bound: int | None = None) -> CotorsionPair:
    """Verify orthogonality, heredity, and per-object completeness."""
    cat = left.catalog
    if cat is not right.catalog:
        raise PreconditionError("classes over different catalogs")
    bound = bound if bound is not None else cat.default_witness_bound()
    orth = verify_cotorsion_pair(left, right)
    hered = verify_hereditary(left, right)
    pair_stub = CotorsionPair(left, right, orth, hered, {},
                              CheckResult("completeness", "pass", {}))
    witnesses = {}
    missing = []
    for e in cat.entries:
        env = special_preenvelope(e.module, pair_stub, bound)
        cov = special_precover(e.module, pair_stub, bound)
        witnesses[e.id] = CompletenessWitness(e.id, env, cov, bound)
        if env is None:
            missing.append({"object": e.id, "missing": "preenvelope"})
        if cov is None:
            missing.append({"object": e.id, "missing": "precover"})
    check = CheckResult(
        "cotorsion-pair-completeness",
        "pass" if not missing else "inconclusive",
        {"bound": bound, "not_found_within_bound": missing})
    return CotorsionPair(left, right, orth, hered, witnesses, check)
