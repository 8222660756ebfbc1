import csv
from collections import Counter
from pathlib import Path

import pytest

from hexconvex.honeycomb_oracle import oracle_census
from hexconvex.series_core import qt_grid
from hexconvex.symmetry_series import all_fix_series

DATA = Path(__file__).parent / "data"

# oracle-backed checks run jointly in (area, half-perimeter) up to this area
JOINT_AREA = 10


def read_rows(name: str) -> list[tuple[int, ...]]:
    with open(DATA / name, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        return [tuple(int(x) for x in row) for row in reader if row]


def read_errata() -> list[dict]:
    with open(DATA / "errata.csv", newline="") as fh:
        return [
            {**row, "value": int(row["value"]), "printed": int(row["printed"]), "corrected": int(row["corrected"])}
            for row in csv.DictReader(fh)
        ]


def grid(f) -> Counter:
    return Counter({k: c for k, c in qt_grid(f).items() if c})


def clip(counts: Counter, bound_q: int, bound_t: int) -> Counter:
    return Counter({k: c for k, c in counts.items() if c and k[0] <= bound_q and k[1] <= bound_t})


@pytest.fixture(scope="session")
def census():
    return oracle_census(JOINT_AREA, 2 * JOINT_AREA + 1, threads=2)


@pytest.fixture(scope="session")
def fix_small():
    return all_fix_series(JOINT_AREA, 2 * JOINT_AREA + 1)


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        status = "FAIL" if failed else ("SKIP" if report.skipped else "PASS")
        previous = _ACCEPTANCE.get(number)
        if previous is None or previous[1] == "PASS":
            note = getattr(item, "acceptance_note", "")
            _ACCEPTANCE[number] = (title, status, note)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, note = _ACCEPTANCE[number]
        line = f"[{status}] criterion {number}: {title}"
        terminalreporter.write_line(line + (f" ({note})" if note else ""))


@pytest.fixture
def note(request):
    """Attach a short remark to the acceptance line of the running test."""

    def add(text: str) -> None:
        request.node.acceptance_note = text

    return add
