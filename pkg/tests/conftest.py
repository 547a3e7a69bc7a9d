from __future__ import annotations

import pytest

from germ_calculus.models.profile import load_profile


@pytest.fixture
def quick_profile(monkeypatch):
    """Small scenario profile, independent of GERMCALC_ORDER"""
    monkeypatch.delenv("GERMCALC_ORDER", raising=False)
    return load_profile("Quick", order=6, cases=3, degree=2, trials=3)
