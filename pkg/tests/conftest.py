import pytest

from sqfree import build_graph, build_lambda, run_fixed_point


@pytest.fixture(scope="session")
def lam2():
    return build_lambda(2, 4)


@pytest.fixture(scope="session")
def lam3():
    return build_lambda(3, 4)


@pytest.fixture(scope="session")
def lam4():
    return build_lambda(4, 4)


@pytest.fixture(scope="session")
def graph2(lam2):
    return build_graph(lam2)


@pytest.fixture(scope="session")
def graph3(lam3):
    return build_graph(lam3)


@pytest.fixture(scope="session")
def graph4(lam4):
    return build_graph(lam4)


@pytest.fixture(scope="session")
def cert3(graph3):
    return run_fixed_point(graph3, 50, 100000)


@pytest.fixture(scope="session")
def cert4(graph4):
    return run_fixed_point(graph4, 50, 100000)
