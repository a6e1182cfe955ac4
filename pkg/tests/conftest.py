import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from groupeq.parsing import parse

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DOCUMENTS = Path(__file__).resolve().parents[1] / "src" / "groupeq" / "documents"


def load(name: str):
    return parse((DOCUMENTS / name).read_text())


@pytest.fixture
def corpus():
    return load


C2 = """group C2 = finite { table = [[0, 1], [1, 0]]; labels = [e, a] }
vars x;
"""


def c2_system(eq: str):
    return parse(C2 + f"eq: {eq} = 1;\n")
