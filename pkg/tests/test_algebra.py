import pytest

import hoveyforge as hf
from hoveyforge.exceptions import SpecError


def test_lambda2_is_valid(lambda2):
    assert lambda2.p == 2
    assert lambda2.dimension == 2
    assert [a.name for a in lambda2.arrows] == ["x"]


def test_a2_is_valid(a2):
    assert a2.dimension == 3
    assert len(a2.relations) == 0


def test_n3_dimension(n3):
    assert n3.dimension == 3


def test_non_prime_modulus_rejected():
    spec = hf.demo_spec("lambda2")["algebra"]
    spec["prime"] = 4
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)


def test_non_composable_relation_rejected():
    spec = {
        "prime": 2,
        "vertices": ["1", "2", "3", "4"],
        "arrows": [{"name": "a", "from": "1", "to": "2"},
                   {"name": "b", "from": "3", "to": "4"}],
        "relations": [[{"coeff": 1, "path": ["a", "b"]}]],
    }
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)


def test_non_parallel_relation_rejected():
    spec = {
        "prime": 2,
        "vertices": ["1", "2", "3"],
        "arrows": [{"name": "a", "from": "1", "to": "2"},
                   {"name": "b", "from": "2", "to": "3"},
                   {"name": "c", "from": "1", "to": "2"},
                   {"name": "d", "from": "2", "to": "1"}],
        "relations": [[{"coeff": 1, "path": ["a", "b"]},
                       {"coeff": 1, "path": ["c", "d"]}]],
    }
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)


def test_dangling_arrow_endpoint_rejected():
    spec = {
        "prime": 2,
        "vertices": ["1"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}],
        "relations": [],
    }
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)


def test_short_relation_path_rejected():
    spec = hf.demo_spec("lambda2")["algebra"]
    spec["relations"] = [[{"coeff": 1, "path": ["x"]}]]
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)


def test_vanishing_relation_rejected():
    spec = hf.demo_spec("lambda2")["algebra"]
    spec["relations"] = [[{"coeff": 2, "path": ["x", "x"]}]]
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)


def test_infinite_dimensional_algebra_rejected():
    spec = {
        "prime": 2,
        "vertices": ["v"],
        "arrows": [{"name": "x", "from": "v", "to": "v"}],
        "relations": [],
        "bounds": {"max_iter": 8},
    }
    alg = hf.validate_algebra(spec)
    with pytest.raises(SpecError):
        _ = alg.dimension


def test_inhomogeneous_relation_rejected_at_basis_time():
    spec = {
        "prime": 2,
        "vertices": ["v"],
        "arrows": [{"name": "x", "from": "v", "to": "v"}],
        "relations": [[{"coeff": 1, "path": ["x", "x"]},
                       {"coeff": 1, "path": ["x", "x", "x"]}]],
    }
    alg = hf.validate_algebra(spec)
    with pytest.raises(SpecError):
        _ = alg.dimension


def test_opposite_is_involutive(a2):
    op = a2.opposite()
    assert op.opposite() is a2
    assert op.arrows[0].source == "2" and op.arrows[0].target == "1"


def test_algebra_roundtrip(n3):
    d = hf.algebra_to_dict(n3)
    again = hf.validate_algebra(d)
    assert again.dimension == n3.dimension
    assert hf.algebra_to_dict(again) == d


def test_bounds_must_be_positive():
    spec = hf.demo_spec("lambda2")["algebra"]
    spec["bounds"]["max_dim"] = -1
    with pytest.raises(SpecError):
        hf.validate_algebra(spec)
