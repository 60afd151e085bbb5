import pytest

import hoveyforge as hf


@pytest.fixture(scope="session")
def lambda2():
    return hf.validate_algebra(hf.demo_spec("lambda2")["algebra"])


@pytest.fixture(scope="session")
def a2():
    return hf.validate_algebra(hf.demo_spec("a2")["algebra"])


@pytest.fixture(scope="session")
def n3():
    return hf.validate_algebra(hf.demo_spec("n3")["algebra"])


@pytest.fixture(scope="session")
def lambda2_cat(lambda2):
    return hf.build_catalog(lambda2)


@pytest.fixture(scope="session")
def a2_cat(a2):
    return hf.build_catalog(a2)


@pytest.fixture(scope="session")
def n3_cat(n3):
    return hf.build_catalog(n3)


@pytest.fixture(scope="session")
def all_cats(lambda2_cat, a2_cat, n3_cat):
    return {"lambda2": lambda2_cat, "a2": a2_cat, "n3": n3_cat}


def entry_by_dims(cat, dims):
    """Look a catalog entry up by its dimension vector."""
    matches = [e for e in cat.entries if e.module.dims == tuple(dims)]
    assert len(matches) == 1, f"no unique entry with dims {dims}"
    return matches[0]


@pytest.fixture(scope="session")
def lambda2_modules(lambda2, lambda2_cat):
    k = entry_by_dims(lambda2_cat, (1,)).module
    P = entry_by_dims(lambda2_cat, (2,)).module
    return {"k": k, "P": P}


@pytest.fixture(scope="session")
def stable_pairs(lambda2_cat):
    """The (all, add P) / (add P, all) configuration over F2[x]/(x^2)."""
    allc = hf.object_class(lambda2_cat, "all")
    addp = hf.object_class(lambda2_cat, "inj")
    return (hf.build_cotorsion_pair(allc, addp),
            hf.build_cotorsion_pair(addp, allc))
