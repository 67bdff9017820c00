from pathlib import Path

import numpy as np
import pytest

from bluestego.image import RgbImage

GOLDEN = Path(__file__).parent / "golden"


def random_image(rng: np.random.Generator, width: int, height: int, low: int = 0, high: int = 256) -> RgbImage:
    return RgbImage(rng.integers(low, high, size=(height, width, 3), dtype=np.uint8))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def golden_dir():
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and (rep.when == "call" or outcome == "error"):
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL", props.get("detail", "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for crit, verdict, detail in sorted(lines, key=lambda t: int(t[0].split()[0])):
        terminalreporter.write_line(f"[{verdict}] criterion {crit}" + (f" -- {detail}" if detail else ""))
