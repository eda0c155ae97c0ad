import os
from pathlib import Path

import numpy as np
import pytest

import shockssi as S

_RESULTS = []

DATA_DIR = os.environ.get("SHOCKSSI_DATA_DIR")


def record(criterion, status, detail=""):
    _RESULTS.append((criterion, status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, detail in _RESULTS:
        terminalreporter.write_line(f"{status:<6} criterion {crit}: {detail}")


@pytest.fixture
def accept():
    return record


def synthetic_suite():
    """Signals used across the bound and acceptance checks."""
    sigs = [
        S.gen_half_sine(1000.0, 0.0005, 5e-6, 0.02, label="halfsine-0.5ms"),
        S.gen_half_sine(500.0, 0.002, 5e-6, 0.03, label="halfsine-2ms"),
        S.gen_damped_sine_sum(
            [(800, 3000, 150, 0.0), (3000, 8000, 600, 1.0), (9000, 12000, 2000, 2.0)],
            0.04, 5e-6, label="dsines-3"),
        S.gen_damped_sine_sum(
            [(1500, 5000, 300, 0.0), (6000, 7000, 900, 0.5)], 0.03, 5e-6, label="dsines-2"),
    ]
    sigs += [S.pyroshock_like(seed, duration=0.03) for seed in range(4)]
    return sigs


@pytest.fixture(scope="session")
def bank():
    return S.OscillatorBank.log_spaced(100.0, 25600.0, 6, 10.0)


@pytest.fixture(scope="session")
def suite_matrices(bank):
    return [S.build_response_matrix(sig, bank) for sig in synthetic_suite()]


@pytest.fixture(scope="session")
def pyro_matrix(bank):
    return S.build_response_matrix(S.pyroshock_like(0, duration=0.03), bank)


def released_signal_paths():
    """Map RVS/MIS/RAS/RSS to files under $SHOCKSSI_DATA_DIR, if present."""
    if not DATA_DIR:
        return {}
    root = Path(DATA_DIR)
    found = {}
    for name in ("RVS", "MIS", "RAS", "RSS"):
        hits = sorted(p for p in root.rglob("*")
                      if p.is_file() and p.suffix.lower() in (".csv", ".txt", ".dat")
                      and name.lower() in p.stem.lower())
        if hits:
            found[name] = hits[0]
    return found


def random_nonneg(rng, m, n):
    return np.abs(rng.standard_normal((m, n))) * rng.uniform(0.1, 10.0, n)
