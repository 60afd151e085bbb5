import itertools

import pytest

import hoveyforge as hf
from hoveyforge.catalog import CompletenessWitness


class TestBuildCatalog:
    def test_lambda2_contents(self, lambda2_cat):
        dims = sorted(e.module.total_dim for e in lambda2_cat.entries)
        assert dims == [1, 2]
        assert not lambda2_cat.truncated

    def test_a2_contents(self, a2_cat):
        assert sorted(e.module.dims for e in a2_cat.entries) == [
            (0, 1), (1, 0), (1, 1)]

    def test_n3_contents(self, n3_cat):
        assert sorted(e.module.total_dim for e in n3_cat.entries) == [1, 2, 3]

    def test_flags(self, a2_cat):
        flags = {e.module.dims: (e.projective, e.injective)
                 for e in a2_cat.entries}
        assert flags[(1, 0)] == (False, True)   # S1 = I1
        assert flags[(0, 1)] == (True, False)   # S2 = P2
        assert flags[(1, 1)] == (True, True)    # P1 = I2

    def test_rebuild_is_idempotent(self, n3):
        first = hf.build_catalog(n3)
        second = hf.build_catalog(n3)
        assert len(first.entries) == len(second.entries)
        for a, b in zip(first.entries, second.entries):
            assert hf.is_isomorphic(a.module, b.module) is not None

    def test_entries_certified_indecomposable(self, all_cats):
        for cat in all_cats.values():
            for e in cat.entries:
                assert hf.decompose(e.module).is_indecomposable

    def test_pairwise_non_isomorphic(self, all_cats):
        for cat in all_cats.values():
            for a, b in itertools.combinations(cat.entries, 2):
                assert hf.is_isomorphic(a.module, b.module) is None


class TestClassMembership:
    def test_zero_module_in_every_class(self, lambda2_cat, lambda2):
        empty = hf.object_class(lambda2_cat, [])
        assert hf.class_membership(empty, hf.zero_module(lambda2)).value

    def test_summand_closure(self, lambda2_cat, lambda2_modules):
        addp = hf.object_class(lambda2_cat, "proj")
        k, P = lambda2_modules["k"], lambda2_modules["P"]
        mixed = hf.direct_sum(k, P).module
        res = hf.class_membership(addp, mixed)
        assert res.value is False

    def test_sum_of_members(self, lambda2_cat, lambda2_modules):
        addp = hf.object_class(lambda2_cat, "proj")
        P = lambda2_modules["P"]
        res = hf.class_membership(addp, hf.direct_sum(P, P).module)
        assert res.value is True
        assert res.summand_ids is not None

    def test_membership_is_iso_invariant(self, lambda2, lambda2_cat):
        addp = hf.object_class(lambda2_cat, "proj")
        twisted = hf.validate_module(lambda2, (2,), [[[1, 1], [1, 1]]])
        assert hf.class_membership(addp, twisted).value is True


class TestOrthogonals:
    def test_right_orth_of_all_over_lambda2(self, lambda2_cat):
        allc = hf.object_class(lambda2_cat, "all")
        inj = hf.object_class(lambda2_cat, "inj")
        assert hf.right_orthogonal(allc) == inj

    def test_left_orth_of_all_over_lambda2(self, lambda2_cat):
        allc = hf.object_class(lambda2_cat, "all")
        proj = hf.object_class(lambda2_cat, "proj")
        assert hf.left_orthogonal(allc) == proj

    def test_right_orth_of_trivial_class_is_everything(self, lambda2_cat):
        empty = hf.object_class(lambda2_cat, [])
        assert hf.right_orthogonal(empty) == hf.object_class(lambda2_cat, "all")

    def test_antitone_and_galois_on_all_subclasses(self, all_cats):
        for cat in all_cats.values():
            ids = cat.ids()
            subsets = [frozenset(s) for r in range(len(ids) + 1)
                       for s in itertools.combinations(ids, r)]
            classes = [hf.object_class(cat, s) for s in subsets]
            for c in classes:
                for d in classes:
                    if c.member_ids <= d.member_ids:
                        assert (hf.right_orthogonal(d).member_ids
                                <= hf.right_orthogonal(c).member_ids)
                        assert (hf.left_orthogonal(d).member_ids
                                <= hf.left_orthogonal(c).member_ids)
                galois = hf.left_orthogonal(hf.right_orthogonal(c))
                assert c.member_ids <= galois.member_ids


class TestVerifyCotorsionPair:
    def test_all_addp_passes(self, lambda2_cat):
        allc = hf.object_class(lambda2_cat, "all")
        addp = hf.object_class(lambda2_cat, "inj")
        assert hf.verify_cotorsion_pair(allc, addp).status == "pass"

    def test_addp_all_passes(self, lambda2_cat):
        allc = hf.object_class(lambda2_cat, "all")
        addp = hf.object_class(lambda2_cat, "proj")
        assert hf.verify_cotorsion_pair(addp, allc).status == "pass"

    def test_addk_all_fails(self, lambda2_cat, lambda2_modules):
        k_id = next(e.id for e in lambda2_cat.entries
                    if e.module.total_dim == 1)
        addk = hf.object_class(lambda2_cat, [k_id])
        allc = hf.object_class(lambda2_cat, "all")
        res = hf.verify_cotorsion_pair(addk, allc)
        assert res.status == "fail"
        assert res.details["scope"] == "relative to catalog and dimension bound"


class TestVerifyHereditary:
    def test_all_addp_lambda2(self, lambda2_cat):
        allc = hf.object_class(lambda2_cat, "all")
        addp = hf.object_class(lambda2_cat, "inj")
        res = hf.verify_hereditary(allc, addp)
        assert res.status == "pass"
        assert res.details["spot_check"]["checked"] > 0

    def test_a2_pairs_hereditary(self, a2_cat):
        allc = hf.object_class(a2_cat, "all")
        assert hf.verify_hereditary(allc, hf.object_class(a2_cat, "inj")).status == "pass"
        assert hf.verify_hereditary(hf.object_class(a2_cat, "proj"), allc).status == "pass"

    def test_spot_check_catches_non_closed_left_class(self, a2_cat):
        # inj = {S1, P1} is not closed under kernels of epis between its
        # members (the kernel of P1 -->> S1 is S2), and the spot check sees it.
        allc = hf.object_class(a2_cat, "all")
        res = hf.verify_hereditary(hf.object_class(a2_cat, "inj"), allc)
        assert res.status == "fail"
        assert res.details["spot_check"]["violations"]

    def test_n3_all_addm3(self, n3_cat):
        allc = hf.object_class(n3_cat, "all")
        addm3 = hf.object_class(n3_cat, "inj")
        assert hf.verify_hereditary(allc, addm3).status == "pass"


class TestCompletenessWitnesses:
    def test_preenvelope_fast_path(self, stable_pairs, lambda2_modules):
        cofib, _ = stable_pairs
        P = lambda2_modules["P"]
        S = hf.special_preenvelope(P, cofib)
        assert S is not None and S.quotient.is_zero
        assert S.mono.is_iso()

    def test_preenvelope_of_k_over_lambda2(self, stable_pairs, lambda2_modules):
        cofib, _ = stable_pairs
        k, P = lambda2_modules["k"], lambda2_modules["P"]
        S = hf.special_preenvelope(k, cofib)
        assert S is not None
        assert hf.is_isomorphic(S.middle, P) is not None
        assert hf.is_isomorphic(S.quotient, k) is not None

    def test_precover_fast_path(self, stable_pairs, lambda2_modules):
        _, fib = stable_pairs
        # For the (add P, all) pair, anything in the left class has the
        # trivial precover 0 >--> X -->> X.
        P = lambda2_modules["P"]
        S = hf.special_precover(P, fib)
        assert S is not None and S.kernel.is_zero

    def test_precover_of_k_over_lambda2(self, lambda2_cat, lambda2_modules):
        addp = hf.object_class(lambda2_cat, "proj")
        allc = hf.object_class(lambda2_cat, "all")
        pair = hf.build_cotorsion_pair(addp, allc)
        k, P = lambda2_modules["k"], lambda2_modules["P"]
        S = hf.special_precover(k, pair)
        assert S is not None
        assert hf.is_isomorphic(S.middle, P) is not None

    def test_precover_of_s1_is_projective_cover(self, a2_cat):
        proj = hf.object_class(a2_cat, "proj")
        allc = hf.object_class(a2_cat, "all")
        pair = hf.build_cotorsion_pair(proj, allc)
        s1, s2, p1 = (a2_cat.module(0), a2_cat.module(1), a2_cat.module(2))
        S = hf.special_precover(s1, pair)
        assert S is not None
        assert hf.is_isomorphic(S.kernel, s2) is not None
        assert hf.is_isomorphic(S.middle, p1) is not None

    def test_n3_preenvelope_of_m2_smallest_found(self, n3_cat):
        allc = hf.object_class(n3_cat, "all")
        addm3 = hf.object_class(n3_cat, "inj")
        pair = hf.build_cotorsion_pair(allc, addm3)
        m2 = n3_cat.module(2)
        S = hf.special_preenvelope(m2, pair)
        assert S is not None
        # smallest witness: middle M3 with quotient M1
        assert hf.is_isomorphic(S.middle, n3_cat.module(1)) is not None
        assert hf.is_isomorphic(S.quotient, n3_cat.module(0)) is not None

    def test_canonical_pairs_complete_on_every_object(self, all_cats):
        for cat in all_cats.values():
            allc = hf.object_class(cat, "all")
            for left, right in ((hf.object_class(cat, "proj"), allc),
                                (allc, hf.object_class(cat, "inj"))):
                pair = hf.build_cotorsion_pair(left, right)
                assert pair.completeness_check.status == "pass"
                for w in pair.completeness.values():
                    assert w.complete

    def test_every_witness_validates_and_is_member(self, stable_pairs):
        cofib, _ = stable_pairs
        cat = cofib.left.catalog
        for i, w in cofib.completeness.items():
            for S, orientation in ((w.preenvelope, "env"), (w.precover, "cov")):
                assert S is not None
                hf.ses_validate(S.mono, S.epi)
                if orientation == "env":
                    assert hf.class_membership(cofib.right, S.middle).value
                    assert hf.class_membership(cofib.left, S.quotient).value
                else:
                    assert hf.class_membership(cofib.right, S.kernel).value
                    assert hf.class_membership(cofib.left, S.middle).value
