import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from largediv.intersection import DivisorClass, GeneratorBasis, IntersectionForm  # noqa: E402

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("ci")

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS = os.path.join(ROOT, "configs")


def form_p2():
    return IntersectionForm(GeneratorBasis(("H",), 2), {("H", "H"): 1}, nef=frozenset({"H"}))


def form_p1xp1():
    """Generators D1, D2 (fibres over two points) and D3 (a section)."""
    basis = GeneratorBasis(("D1", "D2", "D3"), 2)
    entries = {("D1", "D1"): 0, ("D1", "D2"): 0, ("D2", "D2"): 0, ("D3", "D3"): 0,
               ("D1", "D3"): 1, ("D2", "D3"): 1}
    return IntersectionForm(basis, entries, nef=frozenset(basis.names))


def cls(**kw):
    return DivisorClass({k: Fraction(v) for k, v in kw.items()})


@pytest.fixture
def p2():
    return form_p2()


@pytest.fixture
def p1xp1():
    return form_p1xp1()
