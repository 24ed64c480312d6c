import pytest

import treeshift as ts
from treeshift import specio


@pytest.fixture(scope="session")
def k2():
    """k-tree with k=2: gamma(n) = n + 1, the smallest strictly growing case."""
    return ts.materialize(ts.build("k_tree", {"k": 2}).spec, 10)


@pytest.fixture(scope="session")
def homog2():
    return ts.materialize(ts.build("homogeneous", {"q": 2}).spec, 14)


@pytest.fixture(scope="session")
def periodic21():
    return ts.materialize(ts.build("periodic", {"q": [2, 1]}).spec, 12)


@pytest.fixture(scope="session")
def path_tree():
    """Single branch: gamma(n) = 1 everywhere."""
    return ts.materialize(ts.build("homogeneous", {"q": 1}).spec, 8)


@pytest.fixture(scope="session")
def leafy():
    """Root has two children; the left one is a leaf, everything else is binary."""
    spec = specio.parse_tree_ref(
        {"kind": "degree_table", "params": {"rows": [[2], [0, 2]], "default_degree": 2}}
    )
    return ts.materialize(spec, 8)
