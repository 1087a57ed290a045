from __future__ import annotations

import pytest

from orbiloop.field import Field
from orbiloop.graded import GradedPresentation

F2, F5, F7, Q = Field(2), Field(5), Field(7), Field(0)


def exterior_times_polynomial(name: str = "L(a)(x)k[u]") -> GradedPresentation:
    """Lambda(a) with |a| = -3 tensor k[u] with |u| = 2 (the odd-sphere ring for S^3)."""
    return GradedPresentation.build([("a", -3, 2), ("u", 2)], name=name)


def ground_field_only() -> GradedPresentation:
    return GradedPresentation.build([], name="k")


@pytest.fixture
def au():
    return exterior_times_polynomial()


@pytest.fixture
def kk():
    return ground_field_only()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
