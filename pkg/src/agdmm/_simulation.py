"""Simulated master/worker runs: sample latencies, decode from the fastest workers and record the finish time."""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Type

import numpy as np
from tqdm import tqdm

from ._codec import (
    CodeScheme,
    MatrixLike,
    as_field_matrix,
    decode_and_verify,
    decode_multiplication_count,
    encode,
    matrices_equal,
    reference_product,
    worker_multiply,
)
from ._exceptions import StragglerModelError
from .utils import parse_int_list, parse_key_values

MIN_SUMMARY_TRIALS = 100


class StragglerKind(Enum):
    FIXED = "fixed"
    SHIFTED_EXPONENTIAL = "shifted-exp"
    BERNOULLI = "bernoulli"


@dataclass(frozen=True)
class StragglerModel:
    """
    How long each worker takes in one trial.

    Every trial draws from its own PCG64 stream seeded with ``SeedSequence([seed, trial_index])``, so a trial is
    reproducible on its own and trials can be evaluated in any order.

    Parameters
    ----------
    kind : StragglerKind
    tau, rate : float
        Shift and rate of the shifted exponential latency tau + Exp(rate).
    straggle_probability, slow_factor, base : float
        A Bernoulli straggler takes ``base * slow_factor`` instead of ``base``.
    order : tuple of int, optional
        Arrival order of the place indices for the fixed model; identity when omitted.
    reverse : bool
        Reverse the fixed arrival order.
    seed : int
    """

    kind: StragglerKind
    tau: float = 0.0
    rate: float = 1.0
    straggle_probability: float = 0.0
    slow_factor: float = 1.0
    base: float = 1.0
    order: Optional[tuple[int, ...]] = None
    reverse: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind is StragglerKind.SHIFTED_EXPONENTIAL and (self.tau < 0 or self.rate <= 0):
            raise StragglerModelError(
                f"Shifted-exponential latencies need tau >= 0 and lambda > 0 (got {self.tau}, {self.rate})!"
            )
        if self.kind is StragglerKind.BERNOULLI:
            if not 0 <= self.straggle_probability <= 1:
                raise StragglerModelError(
                    f"Indicated straggle probability ({self.straggle_probability}) is not in [0, 1]!"
                )
            if self.slow_factor < 1 or self.base <= 0:
                raise StragglerModelError(
                    f"Bernoulli stragglers need slow >= 1 and base > 0 (got {self.slow_factor}, {self.base})!"
                )

    def rng(self, trial_index: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, trial_index])))

    def sample(self, N: int, trial_index: int = 0) -> np.ndarray:  # noqa: N803
        """Strictly positive completion times, one per place index."""
        if self.kind is StragglerKind.FIXED:
            order = list(self.order) if self.order is not None else list(range(N))
            if sorted(order) != list(range(N)):
                raise StragglerModelError(f"Indicated arrival order ({order}) is not a permutation of 0..{N - 1}!")
            if self.reverse:
                order = order[::-1]
            latencies = np.empty(N)
            latencies[order] = np.arange(1, N + 1, dtype=float)
            return latencies

        rng = self.rng(trial_index)
        if self.kind is StragglerKind.SHIFTED_EXPONENTIAL:
            latencies = self.tau + rng.exponential(scale=1 / self.rate, size=N)
            return np.maximum(latencies, np.finfo(float).tiny)
        straggles = rng.random(size=N) < self.straggle_probability
        return np.where(straggles, self.base * self.slow_factor, self.base)


def parse_straggler_model(model: str, seed: int = 0) -> StragglerModel:
    """
    Parse a model string.

    Accepted forms are ``fixed``, ``fixed:reverse``, ``fixed:perm=2,0,1``, ``shifted-exp:tau=1,lambda=0.5`` and
    ``bernoulli:p=0.1,slow=10[,base=1]``.
    """
    name, _, arguments = model.partition(":")
    try:
        kind = StragglerKind(name)
    except ValueError:
        raise StragglerModelError(
            f"Indicated straggler model ({name}) is not one of {[kind.value for kind in StragglerKind]}!"
        ) from None

    try:
        if kind is StragglerKind.FIXED:
            if arguments in ("", "identity"):
                return StragglerModel(kind=kind, seed=seed)
            if arguments == "reverse":
                return StragglerModel(kind=kind, reverse=True, seed=seed)
            if arguments.startswith("perm="):
                return StragglerModel(kind=kind, order=tuple(parse_int_list(arguments[len("perm=") :])), seed=seed)
            raise StragglerModelError(f"Indicated fixed model arguments ({arguments}) are not understood!")

        settings = parse_key_values(arguments)
        if kind is StragglerKind.SHIFTED_EXPONENTIAL:
            unknown = set(settings) - {"tau", "lambda"}
            if unknown:
                raise StragglerModelError(f"Unknown shifted-exp parameters: {sorted(unknown)}!")
            return StragglerModel(
                kind=kind, tau=float(settings.get("tau", 0.0)), rate=float(settings.get("lambda", 1.0)), seed=seed
            )
        unknown = set(settings) - {"p", "slow", "base"}
        if unknown:
            raise StragglerModelError(f"Unknown bernoulli parameters: {sorted(unknown)}!")
        return StragglerModel(
            kind=kind,
            straggle_probability=float(settings.get("p", 0.0)),
            slow_factor=float(settings.get("slow", 1.0)),
            base=float(settings.get("base", 1.0)),
            seed=seed,
        )
    except ValueError as exception:
        if isinstance(exception, StragglerModelError):
            raise
        raise StragglerModelError(
            f"Indicated straggler model ({model}) has malformed parameters: {exception}"
        ) from None


@dataclass(frozen=True)
class SimulationReport:
    trial: int
    N: int  # noqa: N815
    threshold: int
    completion_times: tuple[float, ...]
    finish_time: float
    responders_used: tuple[int, ...]
    decode_ok: bool
    ops: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        report = asdict(self)
        report["completion_times"] = list(self.completion_times)
        report["responders_used"] = list(self.responders_used)
        return report


def _arrival(latencies: np.ndarray, threshold: int) -> tuple[list[int], float]:
    """Place indices in completion order (ties by index) and the threshold-th completion time."""
    order = np.argsort(latencies, kind="stable")
    return [int(index) for index in order], float(latencies[order[threshold - 1]])


def iter_simulate(
    scheme: CodeScheme,
    A: MatrixLike,
    B: MatrixLike,
    model: StragglerModel,
    trials: int,
    progress_bar: bool = False,
    progress_bar_class: Type[tqdm] = tqdm,
    progress_bar_options: Optional[dict] = None,
) -> Iterator[SimulationReport]:
    """Yield one report per trial; workers compute once and only the arrival order changes between trials."""
    if trials < 1:
        raise ValueError(f"Indicated number of trials ({trials}) must be at least 1!")
    A = as_field_matrix(scheme=scheme, matrix=A)
    B = as_field_matrix(scheme=scheme, matrix=B)
    expected = reference_product(A, B)
    results = [worker_multiply(share) for share in encode(scheme=scheme, A=A, B=B)]
    ops = dict(
        worker_mults=results[0].multiplications,
        decode_mults=decode_multiplication_count(scheme=scheme, product_shape=results[0].product.shape),
    )

    if progress_bar_options is None:
        progress_bar_options = dict(position=0, leave=False, desc="Simulating")
    trial_indices: Iterable[int] = range(trials)
    if progress_bar:
        trial_indices = progress_bar_class(trial_indices, **progress_bar_options)
    for trial in trial_indices:
        latencies = model.sample(N=scheme.N, trial_index=trial)
        arrival, finish_time = _arrival(latencies=latencies, threshold=scheme.threshold)
        used = arrival[: scheme.threshold]
        product, consistent = decode_and_verify(scheme=scheme, results=[results[index] for index in used])
        yield SimulationReport(
            trial=trial,
            N=scheme.N,
            threshold=scheme.threshold,
            completion_times=tuple(float(latency) for latency in latencies),
            finish_time=finish_time,
            responders_used=tuple(used),
            decode_ok=consistent and matrices_equal(product, expected),
            ops=dict(ops),
        )


def simulate(
    scheme: CodeScheme, A: MatrixLike, B: MatrixLike, model: StragglerModel, trials: int, **progress_options
) -> list[SimulationReport]:
    return list(iter_simulate(scheme=scheme, A=A, B=B, model=model, trials=trials, **progress_options))


@dataclass(frozen=True)
class SpeedupSummary:
    rho: float
    mean_finish: float
    p50: float
    p95: float
    baseline_mean: float
    trials: int

    @property
    def speedup(self) -> float:
        return self.baseline_mean / self.mean_finish


def summarize_finish_times(
    finish_times: Iterable[float], baseline_times: Iterable[float], threshold: int, N: int  # noqa: N803
) -> SpeedupSummary:
    finish = np.asarray(list(finish_times), dtype=float)
    baseline = np.asarray(list(baseline_times), dtype=float)
    return SpeedupSummary(
        rho=threshold / N,
        mean_finish=float(finish.mean()),
        p50=float(np.percentile(finish, 50)),
        p95=float(np.percentile(finish, 95)),
        baseline_mean=float(baseline.mean()),
        trials=len(finish),
    )


def speedup_report(scheme: CodeScheme, model: StragglerModel, trials: int = 1000) -> SpeedupSummary:
    """Finish time at the recovery threshold against an uncoded baseline that waits for all N workers."""
    if trials < MIN_SUMMARY_TRIALS:
        raise ValueError(f"A speedup summary needs at least {MIN_SUMMARY_TRIALS} trials (got {trials})!")
    finish_times, baseline_times = [], []
    for trial in range(trials):
        latencies = model.sample(N=scheme.N, trial_index=trial)
        finish_times.append(_arrival(latencies=latencies, threshold=scheme.threshold)[1])
        baseline_times.append(float(latencies.max()))
    return summarize_finish_times(
        finish_times=finish_times, baseline_times=baseline_times, threshold=scheme.threshold, N=scheme.N
    )


def summary_to_dict(summary: SpeedupSummary) -> dict:
    return dict(
        rho=summary.rho,
        mean_finish=summary.mean_finish,
        p50=summary.p50,
        p95=summary.p95,
        baseline_mean=summary.baseline_mean,
        speedup=summary.speedup,
        trials=summary.trials,
    )
