from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

from semdiff.cd import flatten, read_cd
from semdiff.engine import DiffProblem
from semdiff.om import evaluate, parse_od

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

# reproducible property tests: same examples on every run
settings.register_profile("deterministic", derandomize=True, deadline=None,
                          print_blob=False)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def cds():
    return {p.stem: read_cd(p) for p in sorted(FIXTURES.glob("*.cd"))}


@pytest.fixture(scope="session")
def flats(cds):
    return {name: flatten(cd) for name, cd in cds.items()}


@pytest.fixture(scope="session")
def oms():
    return {p.stem: parse_od(p.read_text()) for p in sorted(FIXTURES.glob("*.od"))}


# -- soundness audit --------------------------------------------------------
# Every witness any test obtains from the engine is re-checked here with the
# independent evaluator, on the stripped and on the restored model.

AUDIT = {"checked": 0, "failed": []}


def _audited(original):
    def next_witness(self):
        w = original(self)
        if w is not None:
            AUDIT["checked"] += 1
            enc = self.encoded
            ok = (evaluate(enc.left, w.om).satisfied
                  and not evaluate(enc.right, w.om).satisfied
                  and evaluate(enc.original_left, w.full_om).satisfied
                  and not evaluate(enc.original_right, w.full_om).satisfied)
            if not ok:
                AUDIT["failed"].append(w.canonical.canonical_text)
        return w
    return next_witness


@pytest.fixture(scope="session", autouse=True)
def soundness_audit():
    cls = DiffProblem
    original = cls.next_witness
    cls.next_witness = _audited(original)
    yield AUDIT
    cls.next_witness = original


# -- acceptance summary -----------------------------------------------------

ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_ac"):
        label = name[len("test_"):].split("_", 1)[0].upper()
        ACCEPTANCE[label] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    tr = terminalreporter
    if ACCEPTANCE:
        tr.section("acceptance criteria")
        for label in sorted(ACCEPTANCE, key=lambda s: int(s[2:])):
            tr.write_line(f"{label}: {ACCEPTANCE[label]}")
    tr.section("soundness audit")
    failed = AUDIT["failed"]
    tr.write_line(f"witnesses re-checked: {AUDIT['checked']}, "
                  f"failed: {len(failed)}")
    for text in failed[:10]:
        tr.write_line(f"  unsound witness: {text}")


def pytest_sessionfinish(session, exitstatus):
    if AUDIT["failed"] and exitstatus == 0:
        session.exitstatus = 1
