import pytest

from singzeta.formats import load_fixture, model_from_json, semigroup_from_json

SEMIGROUPS = ["naturals", "cusp", "cusp_2_5", "numerical_3_4_5", "numerical_4_6_13",
              "node", "tacnode", "triple"]
SINGULAR = ["cusp", "cusp_2_5", "node", "tacnode", "triple"]

# (model fixture, matching semigroup fixture)
MODELS = [
    ("cusp_model_p2", "cusp"), ("cusp_model_p3", "cusp"),
    ("cusp_2_5_model_p2", "cusp_2_5"), ("cusp_2_5_model_p3", "cusp_2_5"),
    ("node_model_p2", "node"), ("node_model_p3", "node"),
    ("tacnode_model_p2", "tacnode"), ("tacnode_model_p3", "tacnode"),
    ("triple_model_p3", "triple"),
]

ACCEPTANCE_LINES: list[str] = []


def semigroup(name):
    return semigroup_from_json(load_fixture(name))


def model(name):
    return model_from_json(load_fixture(name))


@pytest.fixture(params=SEMIGROUPS)
def any_semigroup(request):
    return semigroup(request.param)


@pytest.fixture
def cusp():
    return semigroup("cusp")


@pytest.fixture
def node():
    return semigroup("node")


@pytest.fixture
def tacnode():
    return semigroup("tacnode")


@pytest.fixture
def triple():
    return semigroup("triple")


@pytest.fixture
def naturals():
    return semigroup("naturals")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
