import pytest

from teichscan import ConeSpec, MultiLaurentPoly
from teichscan.cli import BUILTINS


@pytest.fixture(scope="session")
def theta1():
    return MultiLaurentPoly.from_literal(2, BUILTINS["hironaka1"]["polynomial"])


@pytest.fixture(scope="session")
def cone1():
    b = BUILTINS["hironaka1"]
    return ConeSpec(2, b["cone_ineqs"], b["cone_witness"])


@pytest.fixture(scope="session")
def theta2():
    return MultiLaurentPoly.from_literal(2, BUILTINS["hironaka2"]["polynomial"])


@pytest.fixture(scope="session")
def cone2():
    b = BUILTINS["hironaka2"]
    return ConeSpec(2, b["cone_ineqs"], b["cone_witness"])
