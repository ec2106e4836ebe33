"""Primary command-line surface for constructing, running, simulating and auditing AG coded matrix products."""

import json
import os
from functools import wraps
from pathlib import Path
from typing import Callable, Optional, Union
from warnings import warn

import click
import numpy as np

from ._asymptotic import asymptotic_report, parse_series
from ._audit import audit_scheme
from ._codec import CodeScheme, build_scheme, reference_product, run_dmm
from ._configuration import load_config
from ._constructions import (
    MATDOT_METHODS,
    POLY_METHODS,
    SolutionKind,
    brute_force_optimal,
    construct,
    method_comparison_rows,
    solution_to_dict,
)
from ._exceptions import AgdmmError, SearchSpaceTooLargeError, TooFewRespondersError
from ._field import random_matrix, read_matrix_csv, write_matrix_csv
from ._formatting import AgdmmOutputJSONEncoder, _get_report_header, format_messages, print_to_console, save_report
from ._function_field import CurveModel
from ._semigroup import NumericalSemigroup
from ._simulation import iter_simulate, parse_straggler_model, summarize_finish_times, summary_to_dict
from ._types import Importance
from .utils import parse_int_list, strtobool

SEED_ENVIRONMENT_VARIABLE = "AGDMM_SEED"
EXIT_VALIDATION = 2
EXIT_SEARCH_SPACE = 3
EXIT_TOO_FEW_RESPONDERS = 4


def _exit_on_errors(command: Callable) -> Callable:
    """Report library errors on stderr and map them onto the documented exit codes."""

    @wraps(command)
    def wrapped(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except SearchSpaceTooLargeError as exception:
            click.echo(f"Error: {exception}", err=True)
            raise click.exceptions.Exit(EXIT_SEARCH_SPACE)
        except TooFewRespondersError as exception:
            click.echo(f"Error: {exception}", err=True)
            raise click.exceptions.Exit(EXIT_TOO_FEW_RESPONDERS)
        except (AgdmmError, ValueError, FileExistsError) as exception:
            click.echo(f"Error: {exception}", err=True)
            raise click.exceptions.Exit(EXIT_VALIDATION)

    return wrapped


def _render_pretty(data: object, indent: int = 0) -> list[str]:
    prefix = " " * indent
    if isinstance(data, dict):
        lines = []
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{prefix}{key}:")
                lines.extend(_render_pretty(value, indent=indent + 2))
            else:
                lines.append(f"{prefix}{key}: {_render_flat(value)}")
        return lines
    if isinstance(data, list):
        lines = []
        for item in data:
            lines.extend(_render_pretty(item, indent=indent) if isinstance(item, dict) else [f"{prefix}{item}"])
            if isinstance(item, dict):
                lines.append("")
        return lines
    return [f"{prefix}{_render_flat(data)}"]


def _is_flat(value: Union[dict, list]) -> bool:
    items = value.values() if isinstance(value, dict) else value
    return not any(isinstance(item, (dict, list)) for item in items)


def _render_flat(value: object) -> str:
    if isinstance(value, list):
        return ", ".join(str(item) for item in value)
    if isinstance(value, dict):
        return ", ".join(f"{key}={item}" for key, item in value.items())
    return str(value)


def _emit(data: object, pretty: bool = False) -> None:
    if pretty:
        click.echo("\n".join(_render_pretty(data)))
    else:
        click.echo(json.dumps(data, cls=AgdmmOutputJSONEncoder))


def _resolve_seed(seed: Optional[int]) -> int:
    """The seed from AGDMM_SEED when set, else --seed, else 0."""
    environment_seed = os.environ.get(SEED_ENVIRONMENT_VARIABLE)
    if environment_seed is None or not environment_seed.strip():
        return seed if seed is not None else 0
    resolved = int(environment_seed)
    if seed is not None and seed != resolved:
        warn(
            message=f"{SEED_ENVIRONMENT_VARIABLE}={resolved} overrides the explicit --seed {seed}.",
            category=UserWarning,
            stacklevel=2,
        )
    return resolved


def _semigroup_from_option(gens: str) -> NumericalSemigroup:
    return NumericalSemigroup.from_generators(parse_int_list(gens))


def _scheme_from_options(curve: str, kind: str, method: str, m: int, n: Optional[int], workers: int) -> CodeScheme:
    return build_scheme(kind=kind, curve=CurveModel.from_string(curve), method=method, m=m, n=n, N=workers)


pretty_option = click.option("--pretty", help="Human-readable output instead of JSON.", is_flag=True)
gens_option = click.option("--gens", help="Comma-separated semigroup generators, e.g. '3,4'.", required=True)
curve_option = click.option(
    "--curve", help="Curve as 'hermitian:<q0>' or 'rational:<q>'.", type=str, required=True, default=None
)
kind_option = click.option("--kind", type=click.Choice(["poly", "matdot"]), required=True)
method_option = click.option(
    "--method", type=click.Choice(sorted(set(POLY_METHODS) | set(MATDOT_METHODS))), required=True
)
m_option = click.option("--m", "m", type=int, required=True, help="Number of blocks of A.")
n_option = click.option("--n", "n", type=int, default=None, help="Number of blocks of B (polynomial codes only).")
workers_option = click.option("--workers", type=int, required=True, help="Number of workers N.")
progress_bar_option = click.option(
    "--progress-bar", help="Set this flag to True to display a progress bar.", default="False"
)


@click.group()
@click.version_option(package_name="agdmm")
def _agdmm_cli() -> None:
    """
    Distributed matrix multiplication with AG polynomial and AG matdot codes.

    Example Usage
    -------------
    agdmm semigroup info --gens 3,4

    agdmm construct matdot --gens 2,3 --method optimal --m 4

    agdmm dmm run --curve hermitian:2 --kind poly --method apery --m 2 --n 2 --workers 8 --a a.csv --b b.csv \
      --drop 1,4 --out ab.csv
    """


@_agdmm_cli.group()
def semigroup() -> None:
    """Inspect numerical semigroups."""


@semigroup.command("info")
@gens_option
@pretty_option
@_exit_on_errors
def semigroup_info(gens: str, pretty: bool = False) -> None:
    """Conductor, gaps, genus, n(S) and the Delta maximizer."""
    _emit(_semigroup_from_option(gens).info(), pretty=pretty)


@semigroup.command("apery")
@gens_option
@click.option("--n", "n", type=int, required=True, help="A nonzero element of the semigroup.")
@pretty_option
@_exit_on_errors
def semigroup_apery(gens: str, n: int, pretty: bool = False) -> None:
    """The Apery set Ap(S, n), listed by residue."""
    numerical_semigroup = _semigroup_from_option(gens)
    apery_set = numerical_semigroup.apery(n)
    _emit(
        dict(
            generators=list(numerical_semigroup.generators),
            n=n,
            apery=list(apery_set),
            conductor=numerical_semigroup.conductor,
        ),
        pretty=pretty,
    )


@semigroup.command("delta")
@gens_option
@pretty_option
@_exit_on_errors
def semigroup_delta(gens: str, pretty: bool = False) -> None:
    """delta + 2 n(delta) over S intersected with [0, c]."""
    profile = _semigroup_from_option(gens).delta_profile()
    _emit(
        dict(
            values={str(delta): value for delta, value in profile.as_dict().items()},
            argmax=profile.argmax,
            restricted_argmax=profile.restricted_argmax,
            maximum=profile.maximum,
        ),
        pretty=pretty,
    )


@_agdmm_cli.group("construct")
def construct_group() -> None:
    """Build degree sets D_A and D_B."""


def _construct_command(kind: SolutionKind) -> Callable:
    @gens_option
    @method_option
    @m_option
    @pretty_option
    @_exit_on_errors
    def command(gens: str, method: str, m: int, n: Optional[int] = None, pretty: bool = False) -> None:
        solution = construct(semigroup=_semigroup_from_option(gens), kind=kind, method=method, m=m, n=n)
        _emit(solution_to_dict(solution), pretty=pretty)

    return command


construct_group.command("poly", help="Polynomial code degree sets.")(n_option(_construct_command(SolutionKind.POLY)))
construct_group.command("matdot", help="Matdot code degree sets.")(_construct_command(SolutionKind.MATDOT))


@construct_group.command("table")
@gens_option
@m_option
@click.option("--n", "n", type=int, required=True)
@pretty_option
@_exit_on_errors
def construct_table(gens: str, m: int, n: int, pretty: bool = False) -> None:
    """Formula and achieved threshold of the trivial, Apery and recursive constructions."""
    numerical_semigroup = _semigroup_from_option(gens)
    _emit(
        dict(
            m=m,
            n=n,
            m_in_semigroup=m in numerical_semigroup,
            rows=method_comparison_rows(semigroup=numerical_semigroup, m=m, n=n),
        ),
        pretty=pretty,
    )


@_agdmm_cli.command("search")
@kind_option
@gens_option
@m_option
@n_option
@click.option("--bound", type=int, default=None, help="Largest degree considered.")
@click.option("--n-jobs", help="Number of jobs to use in parallel.", default=1)
@progress_bar_option
@pretty_option
@_exit_on_errors
def search(
    kind: str,
    gens: str,
    m: int,
    n: Optional[int] = None,
    bound: Optional[int] = None,
    n_jobs: int = 1,
    progress_bar: str = "False",
    pretty: bool = False,
) -> None:
    """Exhaustive search for a minimum-threshold solution."""
    solution = brute_force_optimal(
        semigroup=_semigroup_from_option(gens),
        kind=kind,
        m=m,
        n=n,
        search_bound=bound,
        n_jobs=n_jobs,
        progress_bar=strtobool(progress_bar),
    )
    _emit(solution_to_dict(solution), pretty=pretty)


@_agdmm_cli.group()
def dmm() -> None:
    """End-to-end distributed matrix multiplication on CSV matrices."""


def _read_matrix_for(scheme: CodeScheme, file_path: str):
    spec, matrix = read_matrix_csv(file_path)
    if spec != scheme.curve.field:
        raise ValueError(
            f"The matrix in {file_path} lives over {spec}, but the curve {scheme.curve} needs {scheme.curve.field}!"
        )
    return matrix


@dmm.command("run")
@curve_option
@kind_option
@method_option
@m_option
@n_option
@workers_option
@click.option("--a", "a_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--b", "b_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out_path", type=click.Path(writable=True), required=True)
@click.option("--drop", default=None, help="Comma-separated worker indices (0-based) that never respond.")
@click.option("--pad", is_flag=True, help="Zero-pad A and B up to divisible sizes.")
@click.option("--shuffle", is_flag=True, help="Workers respond in a seeded random order instead of place order.")
@click.option("--seed", type=int, default=None, help="Seed for --shuffle; AGDMM_SEED overrides it.")
@pretty_option
@_exit_on_errors
def dmm_run(
    curve: str,
    kind: str,
    method: str,
    m: int,
    workers: int,
    a_path: str,
    b_path: str,
    out_path: str,
    n: Optional[int] = None,
    drop: Optional[str] = None,
    pad: bool = False,
    shuffle: bool = False,
    seed: Optional[int] = None,
    pretty: bool = False,
) -> None:
    """Encode, multiply at every surviving worker, decode and write AB."""
    scheme = _scheme_from_options(curve=curve, kind=kind, method=method, m=m, n=n, workers=workers)
    A = _read_matrix_for(scheme=scheme, file_path=a_path)
    B = _read_matrix_for(scheme=scheme, file_path=b_path)
    dropped = parse_int_list(drop)
    for index in dropped:
        if not 0 <= index < scheme.N:
            raise ValueError(f"Indicated dropped worker ({index}) is not in [0, {scheme.N - 1}]!")
    responders = None
    if shuffle:
        rng = np.random.Generator(np.random.PCG64(_resolve_seed(seed)))
        responders = [int(index) for index in rng.permutation(scheme.N)]

    product, report = run_dmm(scheme=scheme, A=A, B=B, drop=dropped, responders=responders, pad=pad)
    write_matrix_csv(file_path=out_path, matrix=product, spec=scheme.curve.field)
    _emit(report, pretty=pretty)


@dmm.command("reference")
@click.option("--a", "a_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--b", "b_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out_path", type=click.Path(writable=True), required=True)
@pretty_option
@_exit_on_errors
def dmm_reference(a_path: str, b_path: str, out_path: str, pretty: bool = False) -> None:
    """Schoolbook AB in the same CSV format."""
    spec_a, A = read_matrix_csv(a_path)
    spec_b, B = read_matrix_csv(b_path)
    if spec_a != spec_b:
        raise ValueError(f"The matrices live over different fields ({spec_a} and {spec_b})!")
    product = reference_product(A, B)
    write_matrix_csv(file_path=out_path, matrix=product, spec=spec_a)
    _emit(dict(rows=product.shape[0], cols=product.shape[1], field=str(spec_a)), pretty=pretty)


def _default_shape(scheme: CodeScheme) -> tuple[int, int, int]:
    if scheme.kind is SolutionKind.POLY:
        return 2 * scheme.solution.m, 2, 2 * scheme.solution.n
    return 2, 2 * scheme.solution.m, 2


@_agdmm_cli.command("sim")
@curve_option
@kind_option
@method_option
@m_option
@n_option
@workers_option
@click.option("--model", default="fixed", help="e.g. 'shifted-exp:tau=1,lambda=0.5' or 'bernoulli:p=0.1,slow=10'.")
@click.option("--seed", type=int, default=None, help="Latency and matrix seed; AGDMM_SEED overrides it.")
@click.option("--trials", type=int, default=100)
@click.option("--shape", default=None, help="Comma-separated r,s,t of the random A (r x s) and B (s x t).")
@progress_bar_option
@pretty_option
@_exit_on_errors
def sim(
    curve: str,
    kind: str,
    method: str,
    m: int,
    workers: int,
    n: Optional[int] = None,
    model: str = "fixed",
    seed: Optional[int] = None,
    trials: int = 100,
    shape: Optional[str] = None,
    progress_bar: str = "False",
    pretty: bool = False,
) -> None:
    """Simulate straggling workers; one JSON line per trial followed by a summary line, or text with --pretty."""
    resolved_seed = _resolve_seed(seed)
    straggler_model = parse_straggler_model(model, seed=resolved_seed)
    scheme = _scheme_from_options(curve=curve, kind=kind, method=method, m=m, n=n, workers=workers)
    rows, inner, cols = parse_int_list(shape) if shape else _default_shape(scheme)
    A = random_matrix(scheme.curve.field, rows=rows, cols=inner, seed=resolved_seed)
    B = random_matrix(scheme.curve.field, rows=inner, cols=cols, seed=resolved_seed + 1)

    finish_times, baseline_times = [], []
    for report in iter_simulate(
        scheme=scheme, A=A, B=B, model=straggler_model, trials=trials, progress_bar=strtobool(progress_bar)
    ):
        finish_times.append(report.finish_time)
        baseline_times.append(max(report.completion_times))
        _emit(report.to_dict(), pretty=pretty)
    summary = summarize_finish_times(
        finish_times=finish_times, baseline_times=baseline_times, threshold=scheme.threshold, N=scheme.N
    )
    _emit(dict(summary=summary_to_dict(summary)), pretty=pretty)


@_agdmm_cli.group()
def report() -> None:
    """Closed-form reports."""


@report.command("asymptotic")
@click.option("--q", type=int, required=True, help="Field size; must be a square prime power.")
@m_option
@click.option("--mode", type=click.Choice(["poly", "matdot"]), default="poly")
@click.option("--series", default="", help="Semicolon-separated members 'N=<int>,c=<int>' of a curve family.")
@pretty_option
@_exit_on_errors
def report_asymptotic(q: int, m: int, mode: str = "poly", series: str = "", pretty: bool = False) -> None:
    """Excess recovery ratio limits 1/(sqrt(q) - 1) and 2/(sqrt(q) - 1), next to supplied finite members."""
    _emit(asymptotic_report(q=q, m=m, kind=SolutionKind(mode), series=parse_series(series)), pretty=pretty)


@_agdmm_cli.command("audit")
@curve_option
@kind_option
@method_option
@m_option
@n_option
@workers_option
@click.option("--config", help="Name of internal config or path to a custom YAML file.", type=str, default=None)
@click.option("--levels", help="Comma-separated names of AuditMessage attributes to organize by.")
@click.option(
    "--reverse", help="Comma-separated booleans corresponding to reversing the order for each value of 'levels'."
)
@click.option("--ignore", help="Comma-separated names of checks to skip.")
@click.option("--select", help="Comma-separated names of checks to run.")
@click.option(
    "--threshold",
    default="BEST_PRACTICE_SUGGESTION",
    type=click.Choice(["CRITICAL", "BEST_PRACTICE_VIOLATION", "BEST_PRACTICE_SUGGESTION"]),
    help="Ignores checks with an assigned importance below this threshold.",
)
@click.option("--json-file-path", help="Write json output to this location.")
@click.option("--report-file-path", default=None, help="Save path for the report file.", type=click.Path(writable=True))
@click.option("--overwrite", help="Overwrite an existing report file at the location.", is_flag=True)
@_exit_on_errors
def audit(
    *,
    curve: str,
    kind: str,
    method: str,
    m: int,
    workers: int,
    n: Optional[int] = None,
    config: Optional[str] = None,
    levels: Optional[str] = None,
    reverse: Optional[str] = None,
    ignore: Optional[str] = None,
    select: Optional[str] = None,
    threshold: str = "BEST_PRACTICE_SUGGESTION",
    json_file_path: Optional[str] = None,
    report_file_path: Optional[str] = None,
    overwrite: bool = False,
) -> None:
    """
    Run the registered invariant checks on a built scheme, its solution and its semigroup.

    Example Usage
    -------------
    agdmm audit --curve hermitian:2 --kind matdot --method trivial --m 2 --workers 8 --config strict
    """
    handled_config = config if config is None else load_config(filepath_or_keyword=config)
    handled_levels = ["location", "importance"] if levels is None else levels.split(",")
    handled_reverse = [False] * len(handled_levels) if reverse is None else [strtobool(x) for x in reverse.split(",")]
    handled_ignore = ignore if ignore is None else ignore.split(",")
    handled_select = select if select is None else select.split(",")

    scheme = _scheme_from_options(curve=curve, kind=kind, method=method, m=m, n=n, workers=workers)
    messages = list(
        audit_scheme(
            scheme=scheme,
            config=handled_config,
            ignore=handled_ignore,
            select=handled_select,
            importance_threshold=Importance[threshold],
        )
    )

    if json_file_path is not None:
        if Path(json_file_path).exists() and not overwrite:
            raise FileExistsError(f"The file {json_file_path} already exists! Specify the '--overwrite' flag.")
        with open(file=json_file_path, mode="w") as fp:
            json_report = dict(header=_get_report_header(), messages=messages)
            json.dump(obj=json_report, fp=fp, cls=AgdmmOutputJSONEncoder)
            print(f"{os.linesep*2}Report saved to {str(Path(json_file_path).absolute())}!{os.linesep}")

    formatted_messages = format_messages(messages=messages, levels=handled_levels, reverse=handled_reverse)
    print_to_console(formatted_messages=formatted_messages)
    if report_file_path is not None:
        save_report(report_file_path=report_file_path, formatted_messages=formatted_messages, overwrite=overwrite)
        print(f"{os.linesep*2}Report saved to {str(Path(report_file_path).absolute())}!{os.linesep}")
