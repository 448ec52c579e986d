import pytest

from leechdesign.construct import build_design
from leechdesign.lattice import (
    A_ALTERNATE,
    A_CANONICAL,
    B_ALTERNATE,
    B_CANONICAL,
    default_context,
)
from leechdesign.unique import (
    build_dual_frame,
    enumerate_candidates,
    integralize_X1,
    split_candidates,
    twin_design,
)


@pytest.fixture(scope="session")
def ctx():
    return default_context()


@pytest.fixture(scope="session")
def design(ctx):
    return build_design(A_CANONICAL, B_CANONICAL, ctx)


@pytest.fixture(scope="session")
def alt_design(ctx):
    return build_design(A_ALTERNATE, B_ALTERNATE, ctx)


@pytest.fixture(scope="session")
def partition(design):
    from leechdesign.coherent import classify_pairs

    return classify_pairs(design)


@pytest.fixture(scope="session")
def tensor(partition):
    from leechdesign.coherent import intersection_numbers

    return intersection_numbers(partition)


@pytest.fixture(scope="session")
def alt_tensor(alt_design):
    from leechdesign.coherent import classify_pairs, intersection_numbers

    return intersection_numbers(classify_pairs(alt_design))


@pytest.fixture(scope="session")
def x1_integral(design):
    return integralize_X1(design)


@pytest.fixture(scope="session")
def dual_frame(x1_integral):
    return build_dual_frame(x1_integral)


@pytest.fixture(scope="session")
def candidates(dual_frame, x1_integral):
    return enumerate_candidates(dual_frame, x1_integral)


@pytest.fixture(scope="session")
def split(candidates, design):
    return split_candidates(candidates, design)


@pytest.fixture(scope="session")
def twin(design, split):
    return twin_design(design, split)
