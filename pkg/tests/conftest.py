"""Shared fixtures: paths to the bundled car data and demo specs."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from dataspeak import load_dataset, parse_spec
from dataspeak.model import DataSourceRef

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.skipped:
        status = "SKIP"
    else:
        status = "PASS" if report.passed else "FAIL"
    sys.stdout.write(f"[{status}] {name}\n")
    sys.stdout.flush()


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def cars_path() -> Path:
    return FIXTURES / "cars.json"


@pytest.fixture(scope="session")
def cars_records(cars_path) -> list[dict]:
    return json.loads(cars_path.read_text())


@pytest.fixture(scope="session")
def cars_dataset(cars_path):
    return load_dataset(DataSourceRef(url=cars_path.name), base_dir=FIXTURES)


@pytest.fixture(scope="session")
def snippet_records() -> list[dict]:
    return json.loads((FIXTURES / "cars_snippet.json").read_text())


@pytest.fixture(scope="session")
def snippet_dataset():
    return load_dataset(DataSourceRef(url="cars_snippet.json"), base_dir=FIXTURES)


def _spec_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def demo1_text() -> str:
    return _spec_text("demo1.json")


@pytest.fixture(scope="session")
def demo2_text() -> str:
    return _spec_text("demo2.json")


@pytest.fixture(scope="session")
def demo3_text() -> str:
    return _spec_text("demo3.json")


def _parsed(text: str):
    result = parse_spec(text)
    assert result.ok, result.diagnostics
    return result.document


@pytest.fixture(scope="session")
def demo1_spec(demo1_text):
    return _parsed(demo1_text)


@pytest.fixture(scope="session")
def demo2_spec(demo2_text):
    return _parsed(demo2_text)


@pytest.fixture(scope="session")
def demo3_spec(demo3_text):
    return _parsed(demo3_text)
