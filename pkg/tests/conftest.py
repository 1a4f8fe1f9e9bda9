"""Shared fixtures for fuchsian-growth tests."""

from __future__ import annotations

import pytest

from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.fields import builtin_field_table, get_field
from fuchsian_growth.policy import POLICY_DEFAULT, Policy
from fuchsian_growth.signature import parse_signature
from fuchsian_growth.trace import Tracer
from fuchsian_growth.types import FuchsianSignature, NumberFieldInvariants

# The hom-count corpus: name → signature text.
CORPUS = {
    "genus2": "g=2",
    "triangle237": "(2,3,7)",
    "modular": "(2,3,inf)",
    "quad2223": "(2,2,2,3)",
    "free2": "(inf,inf,inf)",
    "klein": "n;2;;0;0",
}


@pytest.fixture
def policy() -> Policy:
    return POLICY_DEFAULT.replace(threads=1)


@pytest.fixture
def threaded_policy() -> Policy:
    return POLICY_DEFAULT.replace(threads=4)


@pytest.fixture
def cache() -> CharacterCache:
    return CharacterCache()


@pytest.fixture
def tracer() -> Tracer:
    return Tracer(enabled=True)


@pytest.fixture
def corpus() -> dict[str, FuchsianSignature]:
    return {name: parse_signature(text) for name, text in CORPUS.items()}


@pytest.fixture
def genus2() -> FuchsianSignature:
    return parse_signature("g=2")


@pytest.fixture
def triangle237() -> FuchsianSignature:
    return parse_signature("(2,3,7)")


@pytest.fixture
def modular() -> FuchsianSignature:
    return parse_signature("(2,3,inf)")


@pytest.fixture
def free2() -> FuchsianSignature:
    return parse_signature("(inf,inf,inf)")


@pytest.fixture
def field_table() -> tuple[NumberFieldInvariants, ...]:
    return builtin_field_table()


@pytest.fixture
def rationals(field_table: tuple[NumberFieldInvariants, ...]) -> NumberFieldInvariants:
    return get_field(field_table, "Q")


@pytest.fixture
def sqrt5(field_table: tuple[NumberFieldInvariants, ...]) -> NumberFieldInvariants:
    return get_field(field_table, "Q(sqrt5)")
