from datetime import datetime, timezone

import pytest

from hatecode.corpus import Tweet
from hatecode.pipeline import fit_model
from hatecode.synth import generate_corpus, generate_stream


def make_tweet(id_, text="gas the skypes", handle="u1", ts="2016-10-04T12:00:00Z"):
    stamp = datetime.fromisoformat(ts.replace("Z", "+00:00")).astimezone(timezone.utc)
    return Tweet(id=str(id_), handle=handle, timestamp=stamp, text=text)


@pytest.fixture(scope="session")
def synthetic():
    return generate_corpus(n=400, seed=42)


@pytest.fixture(scope="session")
def stream():
    return generate_stream(seed=43)


@pytest.fixture(scope="session")
def synthetic_model(synthetic):
    return fit_model(list(synthetic.labeled))


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion, reported in the summary")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = dict(report.user_properties).get("criterion", report.nodeid)
        _ACCEPTANCE[report.nodeid] = (label, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_ACCEPTANCE.values()):
        terminalreporter.write_line(f"{outcome}  {label}")


@pytest.fixture
def criterion(record_property):
    def mark(label):
        record_property("criterion", label)

    return mark
