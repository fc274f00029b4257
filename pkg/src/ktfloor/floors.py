"""Bit-error probabilities against a noisy threshold and the energy floors they imply.

A logic value held as a voltage on an RC node rides on Gaussian thermal noise
of standard deviation sigma = sqrt(kT/C).  The probability that one
observation crosses a threshold u above the nominal level is the normal upper
tail Phi_bar(u/sigma).  Demanding error probability epsilon forces a minimum
swing and therefore a minimum dissipated energy:

    single observation:   E >= kT * ln(1/epsilon)
    hold for time t_o:    E >= kT * (ln(1/epsilon) + ln(t_o/tau))

where tau = RC is the noise correlation time and the held state is effectively
re-examined once per tau.
"""

from __future__ import annotations

import math
import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, erfcinv, log_ndtr

from .circuit import RcStage
from .noise import OuProcess, path_generator
from .quantities import PhysicalEnvironment

_SQRT2 = math.sqrt(2.0)

# Trials per vectorized Monte Carlo batch.  Fixed (not worker-dependent) so
# the batch structure never enters the results; per-trial streams make the
# hit counts independent of batching anyway.
_MC_CHUNK = 4096


def tail_probability(x: float) -> float:
    """Upper tail of the unit normal, P(N(0,1) > x) = erfc(x/sqrt(2))/2.

    Accurate to full double precision down to ~1e-300; vectorizes over
    ndarray input.
    """
    return 0.5 * erfc(x / _SQRT2)


def log_tail_probability(x: float) -> float:
    """Natural log of the normal upper tail, finite far past erfc underflow.

    ``tail_probability`` returns exactly 0.0 beyond x ~ 38.6 where the true
    value drops below the smallest double; the log stays representable
    (roughly -x**2/2) out to x ~ 1e150.  Use this form whenever the quantity
    of interest is ln(1/epsilon) rather than epsilon itself.
    """
    return float(log_ndtr(-x))


def tail_quantile(epsilon: float) -> float:
    """Inverse of :func:`tail_probability` on (0, 0.5].

    Returns the x with P(N(0,1) > x) = epsilon; tested against 40-digit
    references down to epsilon = 1e-30.
    """
    if not 0.0 < epsilon <= 0.5:
        raise ValueError(
            f"epsilon must lie in (0, 0.5] for the tail quantile, got {epsilon!r}"
        )
    return _SQRT2 * float(erfcinv(2.0 * epsilon))


@dataclass(frozen=True)
class ErrorSpec:
    """Target error probability, optionally with a state-holding window.

    ``epsilon`` must lie in the open interval (0, 0.5): epsilon = 0.5 is a
    fair coin (no logic), epsilon = 0 needs infinite energy.  The time fields
    are only needed for the long-observation floor.
    """

    epsilon: float
    observation_time: float = 0.0
    correlation_time: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(
                "epsilon must lie in the open interval (0, 0.5), "
                f"got {self.epsilon!r}"
            )
        if not self.observation_time >= 0.0:
            raise ValueError(
                f"observation_time must be >= 0 s, got {self.observation_time!r}"
            )
        if self.correlation_time is not None and not self.correlation_time > 0.0:
            raise ValueError(
                f"correlation_time must be > 0 s, got {self.correlation_time!r}"
            )


@dataclass(frozen=True)
class FloorResult:
    """A dissipation floor in both unit systems plus its regime label.

    ``regime`` is ``"short"`` for a single-shot observation (window ≲ tau) or
    ``"long"`` for a state held over many correlation times.
    """

    floor_joule: float
    floor_kt: float
    regime: str


def floor_short(spec: ErrorSpec, env: PhysicalEnvironment) -> FloorResult:
    """Minimum dissipation for one observation at error probability epsilon.

    kT * ln(1/epsilon): ~69.1 kT at epsilon = 1e-30, ~0.69 kT as epsilon
    approaches a coin flip.
    """
    floor_kt = -math.log(spec.epsilon)
    return FloorResult(
        floor_joule=env.kt_to_joules(floor_kt), floor_kt=floor_kt, regime="short"
    )


def floor_long(spec: ErrorSpec, env: PhysicalEnvironment) -> FloorResult:
    """Minimum dissipation to hold a state for observation_time without error.

    The noise decorrelates every tau, so holding for t_o means surviving
    ~t_o/tau independent chances: the per-chance epsilon must shrink by
    tau/t_o, adding kT * ln(t_o/tau) to the single-shot floor.  Requires
    observation_time >= correlation_time.
    """
    if spec.correlation_time is None:
        raise ValueError("floor_long requires a correlation_time on the ErrorSpec")
    if spec.observation_time < spec.correlation_time:
        raise ValueError(
            "observation_time must be >= correlation_time for the long floor "
            f"(got t_o={spec.observation_time!r}, tau={spec.correlation_time!r})"
        )
    floor_kt = -math.log(spec.epsilon) + math.log(
        spec.observation_time / spec.correlation_time
    )
    return FloorResult(
        floor_joule=env.kt_to_joules(floor_kt), floor_kt=floor_kt, regime="long"
    )


def instantaneous_error_prob(threshold: float, sigma: float) -> float:
    """P(noise voltage > threshold) for Gaussian noise of std dev sigma."""
    if not sigma > 0.0:
        raise ValueError(f"sigma must be > 0 V, got {sigma!r}")
    if not threshold >= 0.0:
        raise ValueError(f"threshold must be >= 0 V, got {threshold!r}")
    return float(tail_probability(threshold / sigma))


def multi_sample_error(per_sample_epsilon: float, n_samples: int) -> float:
    """Probability of at least one error in n independent observations.

    1 - (1 - p)**n, computed via expm1/log1p so tiny p keeps full precision
    (p = 1e-9, n = 1e6 comes out 9.995e-4, not a cancellation casualty).
    """
    n_samples = operator.index(n_samples)
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples!r}")
    if not 0.0 <= per_sample_epsilon <= 1.0:
        raise ValueError(
            f"per_sample_epsilon must lie in [0, 1], got {per_sample_epsilon!r}"
        )
    if per_sample_epsilon == 1.0:
        return 1.0
    return -math.expm1(n_samples * math.log1p(-per_sample_epsilon))


@dataclass(frozen=True)
class SwingRequirement:
    """Minimum swing and its energy price for a target error probability."""

    swing_voltage: float
    energy_joule: float
    energy_kt: float


def required_swing(epsilon_target: float, stage: RcStage) -> SwingRequirement:
    """Swing U1 needed so one observation against a half-swing threshold errs
    with probability epsilon_target, and the energy C*U1**2/2 that swing costs.

    U1 = 2*sigma*Phi_bar^{-1}(epsilon), so E1 = 2*kT*(Phi_bar^{-1}(epsilon))**2:
    always above the kT*ln(1/epsilon) floor, approaching 4x the floor as
    epsilon -> 0.  Uses the stage's capacitance and bath; its configured swing
    is ignored.
    """
    if not 0.0 < epsilon_target < 0.5:
        raise ValueError(
            "epsilon_target must lie in the open interval (0, 0.5), "
            f"got {epsilon_target!r}"
        )
    kt = stage.env.thermal_energy()
    if kt == 0.0:
        raise ValueError("required_swing needs a positive-temperature bath")
    sigma = math.sqrt(kt / stage.capacitance)
    u1 = 2.0 * sigma * tail_quantile(epsilon_target)
    e1 = 0.5 * stage.capacitance * u1**2
    return SwingRequirement(
        swing_voltage=u1, energy_joule=e1, energy_kt=stage.env.joules_to_kt(e1)
    )


def observation_count(observation_time: float, correlation_time: float) -> int:
    """Number of once-per-tau observations fitting in the window.

    floor(observation_time/tau) in exact arithmetic.  The float quotient of
    two decimal inputs can land a few ulps below an integer (1e-7/1e-9 gives
    99.99999999999999), so a quotient within 1e-9 relative of an integer is
    taken as that integer before flooring.
    """
    if not correlation_time > 0.0:
        raise ValueError(
            f"correlation_time must be > 0 s, got {correlation_time!r}"
        )
    if observation_time < correlation_time:
        raise ValueError(
            "observation_time is shorter than one correlation time; "
            "no observation instants fit in the window"
        )
    quotient = observation_time / correlation_time
    nearest = round(quotient)
    if abs(quotient - nearest) <= 1e-9 * max(1.0, abs(quotient)):
        return int(nearest)
    return int(math.floor(quotient))


@dataclass(frozen=True)
class FirstPassageResult:
    """Monte Carlo estimate of the probability of any threshold crossing.

    ``analytic_epsilon`` is the independent-sample prediction
    multi_sample_error(tail(threshold/sigma), n_observations); observations
    spaced one correlation time apart are positively correlated, so the true
    value sits at or below it.  ``low_confidence`` flags runs whose expected
    hit count is under 10.
    """

    epsilon_hat: float
    std_err: float
    hits: int
    trials: int
    n_observations: int
    analytic_epsilon: float
    low_confidence: bool


def _chunk_hits(
    a: float,
    b: float,
    sigma: float,
    threshold: float,
    seed: int,
    first_trial: int,
    count: int,
    n_obs: int,
) -> int:
    """Exceedance count for trials [first_trial, first_trial + count)."""
    z = np.empty((count, n_obs + 1))
    for i in range(count):
        z[i] = path_generator(seed, first_trial + i).standard_normal(n_obs + 1)
    v = sigma * z[:, 0]
    hit = np.zeros(count, dtype=bool)
    for k in range(1, n_obs + 1):
        v = a * v + b * z[:, k]
        hit |= v > threshold
    return int(np.count_nonzero(hit))


def first_passage_mc(
    stage: RcStage,
    threshold: float,
    observation_time: float,
    trials: int,
    seed: int,
    workers: int = 1,
) -> FirstPassageResult:
    """Estimate the probability that thermal noise ever crosses the threshold.

    Each trial starts from an equilibrium voltage and is observed once per
    correlation time for floor(observation_time/tau) observations; a trial
    hits if any observation exceeds the threshold.  Trial i always consumes
    Philox stream (seed, i), so the estimate is byte-reproducible and
    independent of ``workers`` and of batching.
    """
    process = OuProcess.from_stage(stage)
    sigma = process.stationary_sigma
    tau = process.correlation_time
    if sigma == 0.0:
        raise ValueError("first_passage_mc needs a positive-temperature bath")
    if not threshold >= 0.0:
        raise ValueError(f"threshold must be >= 0 V, got {threshold!r}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers!r}")
    n_obs = observation_count(observation_time, tau)
    a, b = process.update_coefficients(tau)

    jobs = [
        (start, min(_MC_CHUNK, trials - start))
        for start in range(0, trials, _MC_CHUNK)
    ]
    if workers == 1:
        hits = sum(
            _chunk_hits(a, b, sigma, threshold, seed, start, count, n_obs)
            for start, count in jobs
        )
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(
                pool.map(
                    lambda job: _chunk_hits(
                        a, b, sigma, threshold, seed, job[0], job[1], n_obs
                    ),
                    jobs,
                )
            )

    epsilon_hat = hits / trials
    std_err = math.sqrt(epsilon_hat * (1.0 - epsilon_hat) / trials)
    analytic = multi_sample_error(
        instantaneous_error_prob(threshold, sigma), n_obs
    )
    return FirstPassageResult(
        epsilon_hat=epsilon_hat,
        std_err=std_err,
        hits=hits,
        trials=trials,
        n_observations=n_obs,
        analytic_epsilon=analytic,
        low_confidence=analytic * trials < 10.0,
    )
