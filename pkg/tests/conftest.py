from __future__ import annotations

import pytest

from regsub.enumeration import DegreeCounter


@pytest.fixture(scope="session")
def counter() -> DegreeCounter:
    return DegreeCounter()
