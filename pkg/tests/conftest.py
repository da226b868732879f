import os
import sys

import pytest

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from tools.cyclotomy import cyclotomic_numbers, cyclotomic_system
from tools.gf import FieldSpec, field_new

# x^5 + x^4 + x^3 + x^2 + 2x + 1 over F_3, ascending coefficients
GF243_MODULUS = (1, 2, 1, 1, 1, 1)


@pytest.fixture(scope="session")
def gf243_spec():
    return FieldSpec(p=3, m=5, modulus=GF243_MODULUS)


@pytest.fixture(scope="session")
def gf243(gf243_spec):
    return field_new(gf243_spec)


@pytest.fixture(scope="session")
def order11_system(gf243):
    return cyclotomic_system(gf243, 11)


@pytest.fixture(scope="session")
def order11_table(order11_system):
    return cyclotomic_numbers(order11_system)


@pytest.fixture(autouse=True)
def no_config_override(monkeypatch):
    monkeypatch.delenv("SEDF_CONFIG", raising=False)
