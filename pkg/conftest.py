import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(params=[1, 7, 42, 1234, 99991])
def seeded_rng(request):
    return random.Random(request.param)
