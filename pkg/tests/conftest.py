import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import CORPUS  # noqa: E402
from helpers import compiled  # noqa: E402


@pytest.fixture(scope="session")
def corpus_outputs():
    return {t: compiled(t) for t in CORPUS}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
