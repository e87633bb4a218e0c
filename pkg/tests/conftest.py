import pytest

from gadgetforge import (
    build_ap,
    build_expander_distribution,
    build_gadget_from_colored_graph,
    build_sqr_coloring,
)


@pytest.fixture(scope="session")
def ap3():
    return build_ap(3)


@pytest.fixture(scope="session")
def sqr3():
    return build_sqr_coloring(3)


@pytest.fixture(scope="session")
def gadget3(ap3, sqr3):
    return build_gadget_from_colored_graph(ap3, sqr3)


@pytest.fixture(scope="session")
def dist3(ap3, sqr3):
    return {b: build_expander_distribution(ap3, sqr3, b) for b in (0, 1)}
