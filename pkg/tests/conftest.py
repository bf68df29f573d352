import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "boolsd", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("boolsd")

ORACLE_FILE = Path(__file__).parent / "oracles" / "derived.json"


@pytest.fixture(scope="session")
def oracle():
    """Frozen high-precision values produced by ``tests/oracles/generate.py``."""
    with open(ORACLE_FILE, encoding="utf-8") as fh:
        return json.load(fh)


def cplx(pair):
    return complex(pair[0], pair[1])
