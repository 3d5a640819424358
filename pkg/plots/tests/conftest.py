"""Shared fixtures: sweep CSVs produced through the simulator's CLI.

The plotting package consumes the simulator only through its external
interfaces, so every fixture table here is generated by running the sweep
CLI as a subprocess and reading the CSV it writes.
"""

import subprocess
import sys

import pytest


def run_sweep_cli(out_path, *, antennas, users, snr, trials, seed, schemes="all"):
    """Run the simulator CLI and return the written CSV path."""
    cmd = [
        sys.executable,
        "-m",
        "rsma.harness",
        "--antennas",
        str(antennas),
        "--users",
        str(users),
        "--snr",
        snr,
        "--trials",
        str(trials),
        "--seed",
        str(seed),
        "--schemes",
        schemes,
        "--out",
        str(out_path),
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0, f"sweep CLI failed: {proc.stderr}"
    return out_path


@pytest.fixture(scope="session")
def sweep_csv(tmp_path_factory):
    """All four schemes over nine SNR points: 36 rows."""
    path = tmp_path_factory.mktemp("tables") / "sweep_4x6.csv"
    return run_sweep_cli(
        path, antennas=4, users=6, snr="0:5:40", trials=20, seed=3
    )


@pytest.fixture(scope="session")
def single_scheme_csv(tmp_path_factory):
    """One scheme over three SNR points: the degenerate single-line input."""
    path = tmp_path_factory.mktemp("tables") / "sweep_zf_only.csv"
    return run_sweep_cli(
        path,
        antennas=4,
        users=6,
        snr="0:10:20",
        trials=10,
        seed=5,
        schemes="sdma-zf",
    )


@pytest.fixture(scope="session")
def second_csv(tmp_path_factory):
    """A second system size, for multi-panel figures."""
    path = tmp_path_factory.mktemp("tables") / "sweep_2x3.csv"
    return run_sweep_cli(
        path, antennas=2, users=3, snr="0:10:20", trials=10, seed=7
    )
