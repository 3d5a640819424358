"""Experiment driver and command-line interface.

A sweep walks a list of SNR points (defined as 10 log10(min_k v_k * P), the
average SNR of the weakest user) and records, per requested scheme, the
achieved Monte Carlo minimum rate together with the allocation parameters that
produced it. Rows follow a fixed CSV schema and are emitted in sorted order
(snr_db, then scheme), byte-identically for a fixed seed regardless of thread
count.

Schemes
-------
rsma-proposed : closed-form allocator parameters, Monte Carlo achieved rate.
rsma-oracle   : grid-search optimum of the bound objective, Monte Carlo
                achieved rate at that point (with --oracle, the top five grid
                points are re-scored by Monte Carlo and the best is kept).
sdma-zf       : grouped zero-forcing baseline, no common stream.
sdma-mrt      : matched-filter baseline, no common stream.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from rsma.allocator import SCHEME_ZF, select
from rsma.channel import SystemConfig, draw_large_scale
from rsma.oracle import exhaustive_search
from rsma.precoding import default_groups
from rsma.rates import (
    ergodic_rates_mrt,
    ergodic_rates_zf,
    min_rate_rsma_mrt,
    min_rate_rsma_zf,
    sdma_mrt,
    sdma_zf_grouped,
)

CSV_FIELDS = (
    "snr_db",
    "scheme",
    "min_rate",
    "t",
    "beta",
    "n_hat",
    "r1",
    "r2",
    "r3",
    "r4",
    "trials",
    "seed",
)
CSV_HEADER = ",".join(CSV_FIELDS)

SCHEME_PROPOSED = "rsma-proposed"
SCHEME_ORACLE = "rsma-oracle"
SCHEME_SDMA_ZF = "sdma-zf"
SCHEME_SDMA_MRT = "sdma-mrt"
ALL_SCHEMES = (SCHEME_PROPOSED, SCHEME_ORACLE, SCHEME_SDMA_ZF, SCHEME_SDMA_MRT)

THREADS_ENV = "RSMA_THREADS"


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row. Fields that do not apply to a scheme are None and render
    as empty CSV cells."""

    snr_db: float
    scheme: str
    min_rate: float
    t: float = None
    beta: float = None
    n_hat: int = None
    r1: float = None
    r2: float = None
    r3: float = None
    r4: float = None
    trials: int = 0
    seed: int = 0

    def __post_init__(self):
        if not math.isfinite(self.snr_db):
            raise ValueError("snr_db must be finite")
        if self.min_rate < 0:
            raise ValueError("min_rate must be nonnegative")


class SweepAborted(RuntimeError):
    """A sweep task failed; `records` holds the completed rows in sorted
    order so callers can flush partial results before propagating."""

    def __init__(self, message, records):
        super().__init__(message)
        self.records = records


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".12g")


def record_to_row(record):
    return ",".join(_fmt(getattr(record, name)) for name in CSV_FIELDS)


def write_csv(records, path):
    """Write records (sorted rows assumed) under the fixed schema header."""
    lines = [CSV_HEADER]
    lines.extend(record_to_row(r) for r in records)
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def sort_records(records):
    return sorted(records, key=lambda r: (r.snr_db, r.scheme))


# ---------------------------------------------------------------------------
# Sweep execution
# ---------------------------------------------------------------------------


def power_for_snr(snr_db, v_min):
    """Total power P such that the weakest user's average SNR is snr_db:
    P = 10^(snr/10) / min_k v_k."""
    return 10.0 ** (snr_db / 10.0) / v_min


def _evaluate_scheme(config, groups, scheme, snr_db, mc_top_k):
    base = dict(trials=config.trials, seed=config.seed, snr_db=snr_db)
    n, k = config.n_antennas, config.n_users
    if scheme == SCHEME_PROPOSED:
        decision = select(config, groups)
        t_opt = decision.chosen.t
        if decision.chosen.scheme == SCHEME_ZF:
            rates = ergodic_rates_zf(config, groups, t_opt)
            achieved = min_rate_rsma_zf(rates, 0.0, n, k)
        else:
            rates = ergodic_rates_mrt(config, t_opt)
            achieved = min_rate_rsma_mrt(rates, k)
        r = [c.r_mm for c in decision.all]
        return SweepRecord(
            scheme=scheme,
            min_rate=achieved,
            t=t_opt,
            beta=0.0,
            n_hat=decision.chosen.index,
            r1=r[0],
            r2=r[1],
            r3=r[2],
            r4=r[3],
            **base,
        )
    if scheme == SCHEME_ORACLE:
        result = exhaustive_search(config, groups, mc_top_k=mc_top_k)
        if result.mc_evaluations:
            best = result.mc_best
            point_scheme, t_star, beta_star, achieved = (
                best[0],
                best[1],
                best[2],
                best[4],
            )
        else:
            point_scheme, t_star, beta_star = result.scheme, result.t, result.beta
            if point_scheme == SCHEME_ZF:
                rates = ergodic_rates_zf(config, groups, t_star)
                achieved = min_rate_rsma_zf(rates, beta_star, n, k)
            else:
                rates = ergodic_rates_mrt(config, t_star)
                achieved = min_rate_rsma_mrt(rates, k)
        return SweepRecord(
            scheme=scheme, min_rate=achieved, t=t_star, beta=beta_star, **base
        )
    if scheme == SCHEME_SDMA_ZF:
        return SweepRecord(
            scheme=scheme, min_rate=sdma_zf_grouped(config), t=1.0, **base
        )
    if scheme == SCHEME_SDMA_MRT:
        return SweepRecord(scheme=scheme, min_rate=sdma_mrt(config), t=1.0, **base)
    raise ValueError(f"unknown scheme {scheme!r}")


def resolve_threads(threads=None):
    """Worker count: explicit argument wins, then the RSMA_THREADS environment
    variable, then 1. A value of 0 means one worker per CPU."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "").strip()
        if raw:
            try:
                threads = int(raw)
            except ValueError as exc:
                raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
        else:
            threads = 1
    if threads < 0:
        raise ValueError(f"thread count must be >= 0, got {threads}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def run_sweep(template, snr_list, schemes, mc_top_k=0, threads=None):
    """Run every (SNR point, scheme) cell and return sorted SweepRecords.

    `template` is a SystemConfig carrying N, K, the large-scale gains, the
    trial count, and the seed; its power field is ignored and recomputed per
    SNR point so the weakest user hits the requested average SNR. The
    large-scale gains are fixed across the whole sweep. Results are
    deterministic for a fixed seed and independent of the thread count; on a
    task failure the completed rows are attached to the raised SweepAborted.
    """
    snr_list = [float(s) for s in snr_list]
    if not snr_list:
        raise ValueError("snr_list must not be empty")
    schemes = list(schemes)
    for s in schemes:
        if s not in ALL_SCHEMES:
            raise ValueError(f"unknown scheme {s!r}; valid: {', '.join(ALL_SCHEMES)}")
    groups = default_groups(template)
    v_min = template.v_min

    tasks = []
    for snr_db in snr_list:
        config = dataclasses.replace(template, power=power_for_snr(snr_db, v_min))
        for scheme in schemes:
            tasks.append((config, scheme, snr_db))

    workers = resolve_threads(threads)
    records = []
    failure = None
    if workers <= 1:
        for config, scheme, snr_db in tasks:
            try:
                records.append(
                    _evaluate_scheme(config, groups, scheme, snr_db, mc_top_k)
                )
            except Exception as exc:  # noqa: BLE001 - repackaged with partial rows
                failure = exc
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_evaluate_scheme, config, groups, scheme, snr_db, mc_top_k)
                for config, scheme, snr_db in tasks
            ]
            for future in futures:
                try:
                    records.append(future.result())
                except Exception as exc:  # noqa: BLE001
                    if failure is None:
                        failure = exc
    records = sort_records(records)
    if failure is not None:
        raise SweepAborted(str(failure), records) from failure
    return records


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def parse_snr_spec(spec):
    """Parse an SNR axis: 'start:step:stop' (inclusive), a comma list, or a
    single value, all in dB."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"SNR range must be start:step:stop, got {spec!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"SNR step must be positive, got {step}")
        if stop < start:
            raise ValueError(f"SNR range end {stop} is below start {start}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    return [float(p) for p in spec.split(",") if p.strip() != ""]


def parse_schemes(spec):
    spec = spec.strip()
    if spec == "all":
        return list(ALL_SCHEMES)
    out = []
    for name in spec.split(","):
        name = name.strip()
        if name not in ALL_SCHEMES:
            raise ValueError(
                f"unknown scheme {name!r}; valid: all, {', '.join(ALL_SCHEMES)}"
            )
        if name not in out:
            out.append(name)
    if not out:
        raise ValueError("no schemes requested")
    return out


def parse_vk(spec, k_users, seed):
    spec = spec.strip()
    if spec == "random":
        return draw_large_scale(k_users, seed)
    values = tuple(float(p) for p in spec.split(","))
    if len(values) != k_users:
        raise ValueError(
            f"--vk needs one gain per user ({k_users}), got {len(values)}"
        )
    for v in values:
        if not (0.0 < v <= 1.0):
            raise ValueError(f"large-scale gains must lie in (0, 1], got {v}")
    return values


def read_config_file(path):
    """Flat key=value file mirroring the long CLI flags; '#' starts a
    comment. Values stay as strings and go through the same parsing as CLI
    arguments."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


_FILE_KEYS = {
    "antennas",
    "users",
    "snr",
    "trials",
    "seed",
    "schemes",
    "out",
    "vk",
    "oracle",
    "allocate-only",
}

_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def _file_bool(value, key):
    lowered = value.lower()
    if lowered in _TRUE_WORDS:
        return True
    if lowered in _FALSE_WORDS:
        return False
    raise ValueError(f"config key {key} must be boolean-like, got {value!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rsma",
        description=(
            "SNR sweeps of rate-splitting and SDMA schemes in an overloaded "
            "multi-antenna downlink; emits a fixed-schema CSV."
        ),
    )
    parser.add_argument("--antennas", type=int, default=None, help="transmit antennas N")
    parser.add_argument("--users", type=int, default=None, help="single-antenna users K (K > N)")
    parser.add_argument(
        "--snr",
        default=None,
        help="SNR axis in dB: start:step:stop (inclusive), a comma list, or one value",
    )
    parser.add_argument("--trials", type=int, default=None, help="Monte Carlo trials (default 100)")
    parser.add_argument("--seed", type=int, default=None, help="base seed (default 0)")
    parser.add_argument(
        "--schemes",
        default=None,
        help=f"comma list or 'all'; valid: {', '.join(ALL_SCHEMES)}",
    )
    parser.add_argument("--out", default=None, help="output CSV path (JSON lines for --allocate-only)")
    parser.add_argument(
        "--allocate-only",
        action="store_true",
        default=None,
        help="print the closed-form allocation as JSON lines instead of sweeping",
    )
    parser.add_argument(
        "--oracle",
        action="store_true",
        default=None,
        help="re-score the oracle's top five grid points with Monte Carlo rates",
    )
    parser.add_argument(
        "--vk",
        default=None,
        help="large-scale gains: comma list in (0, 1], or 'random' (seeded draw)",
    )
    parser.add_argument("--config", default=None, help="flat key=value config file; CLI flags win")
    return parser


def _merged_options(args):
    """Fold the config file under the CLI arguments and apply defaults."""
    file_values = {}
    if args.config is not None:
        file_values = read_config_file(args.config)
        unknown = set(file_values) - _FILE_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(cli_value, key, convert=None, default=None):
        if cli_value is not None:
            return cli_value
        if key in file_values:
            value = file_values[key]
            return convert(value) if convert else value
        return default

    opts = argparse.Namespace()
    opts.antennas = pick(args.antennas, "antennas", int)
    opts.users = pick(args.users, "users", int)
    opts.snr = pick(args.snr, "snr")
    opts.trials = pick(args.trials, "trials", int, 100)
    opts.seed = pick(args.seed, "seed", int, 0)
    opts.schemes = pick(args.schemes, "schemes", default="all")
    opts.out = pick(args.out, "out")
    opts.allocate_only = pick(
        args.allocate_only, "allocate-only", lambda v: _file_bool(v, "allocate-only"), False
    )
    opts.oracle = pick(args.oracle, "oracle", lambda v: _file_bool(v, "oracle"), False)
    opts.vk = pick(args.vk, "vk", default="random")
    return opts


def _allocation_json(config, snr_db):
    decision = select(config)
    payload = {
        "snr_db": snr_db,
        "scheme": decision.chosen.scheme,
        "n_hat": decision.chosen.index,
        "t": decision.chosen.t,
        "beta": 0.0,
        "r1": decision.all[0].r_mm,
        "r2": decision.all[1].r_mm,
        "r3": decision.all[2].r_mm,
        "r4": decision.all[3].r_mm,
        "seed": config.seed,
    }
    return json.dumps(payload)


def cli_main(argv=None):
    """Entry point; returns a process exit code (0 success, 1 runtime
    failure, 2 usage error)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        opts = _merged_options(args)
        if opts.antennas is None or opts.users is None:
            raise ValueError("--antennas and --users are required")
        if opts.snr is None:
            raise ValueError("--snr is required")
        if opts.users <= opts.antennas:
            raise ValueError(
                "overloaded regime requires more users than antennas "
                f"(got --users {opts.users}, --antennas {opts.antennas})"
            )
        snr_list = parse_snr_spec(opts.snr)
        if not snr_list:
            raise ValueError("SNR list is empty")
        vk = parse_vk(opts.vk, opts.users, opts.seed)
        schemes = parse_schemes(opts.schemes)
        template = SystemConfig(
            n_antennas=opts.antennas,
            n_users=opts.users,
            power=1.0,
            large_scale=vk,
            trials=opts.trials,
            seed=opts.seed,
        )
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if opts.allocate_only:
            lines = []
            for snr_db in snr_list:
                config = dataclasses.replace(
                    template, power=power_for_snr(snr_db, template.v_min)
                )
                lines.append(_allocation_json(config, snr_db))
            text = "\n".join(lines) + "\n"
            if opts.out:
                with open(opts.out, "w", newline="") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0

        if not opts.out:
            raise ValueError("--out is required for sweeps")
        try:
            records = run_sweep(
                template,
                snr_list,
                schemes,
                mc_top_k=5 if opts.oracle else 0,
            )
        except SweepAborted as exc:
            write_csv(exc.records, opts.out)
            print(
                f"error: sweep aborted after {len(exc.records)} records "
                f"(partial results written to {opts.out}): {exc}",
                file=sys.stderr,
            )
            return 1
        write_csv(records, opts.out)
        print(
            f"wrote {len(records)} records to {opts.out} "
            f"({len(snr_list)} SNR points x {len(schemes)} schemes)",
            file=sys.stderr,
        )
        return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
