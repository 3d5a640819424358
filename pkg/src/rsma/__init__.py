"""Link-level simulator for rate-splitting multiple access (RSMA) in
overloaded multi-antenna downlinks.

The package provides seeded channel generation, zero-forcing / matched-filter
precoding, Monte Carlo ergodic-rate estimation, closed-form max-min power and
rate allocation, an exhaustive grid-search oracle, SDMA baselines, and a sweep
harness with a stable CSV schema.
"""

from rsma.specfun import EULER_GAMMA, digamma, lambert_w0, lambert_w0_log_approx
from rsma.channel import SystemConfig, ChannelRealization, draw_channel, draw_large_scale
from rsma.precoding import (
    UserGroups,
    PrecoderSet,
    default_groups,
    zf_precoders,
    mrt_precoders,
    common_precoder,
)
from rsma.rates import (
    SinrSnapshot,
    ErgodicRates,
    instant_sinr,
    ergodic_rates_zf,
    ergodic_rates_mrt,
    min_rate_rsma_zf,
    min_rate_rsma_mrt,
    sdma_zf_grouped,
    sdma_mrt,
)
from rsma.bounds import (
    ZfBoundParams,
    MrtBoundParams,
    rho_zf,
    rho_mrt,
    zf_bound_params,
    mrt_bound_params,
    lb_private_zf,
    lb_common_zf,
    lb_private_mrt,
    lb_common_mrt,
)
from rsma.allocator import (
    Candidate,
    AllocationDecision,
    candidate_zf_high,
    candidate_zf_low,
    candidates_mrt,
    select,
)
from rsma.oracle import GridSpec, OracleResult, build_grid, exhaustive_search
from rsma.harness import SweepRecord, run_sweep, cli_main

__version__ = "0.1.0"

__all__ = [
    "EULER_GAMMA",
    "digamma",
    "lambert_w0",
    "lambert_w0_log_approx",
    "SystemConfig",
    "ChannelRealization",
    "draw_channel",
    "draw_large_scale",
    "UserGroups",
    "PrecoderSet",
    "default_groups",
    "zf_precoders",
    "mrt_precoders",
    "common_precoder",
    "SinrSnapshot",
    "ErgodicRates",
    "instant_sinr",
    "ergodic_rates_zf",
    "ergodic_rates_mrt",
    "min_rate_rsma_zf",
    "min_rate_rsma_mrt",
    "sdma_zf_grouped",
    "sdma_mrt",
    "ZfBoundParams",
    "MrtBoundParams",
    "rho_zf",
    "rho_mrt",
    "zf_bound_params",
    "mrt_bound_params",
    "lb_private_zf",
    "lb_common_zf",
    "lb_private_mrt",
    "lb_common_mrt",
    "Candidate",
    "AllocationDecision",
    "candidate_zf_high",
    "candidate_zf_low",
    "candidates_mrt",
    "select",
    "GridSpec",
    "OracleResult",
    "build_grid",
    "exhaustive_search",
    "SweepRecord",
    "run_sweep",
    "cli_main",
    "__version__",
]
