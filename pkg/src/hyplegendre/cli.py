"""Command-line front end.

Subcommands read JSON parameter files, evaluate the solution families on
grids, check residuals, and run the seeded verification suites.  Tables go
to stdout as CSV, JSON or aligned text; diagnostics go to stderr.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 invariant violation, 4 numerical error.

Examples:

    hyplegendre exponents --params ode.json
    hyplegendre eval --params ode.json --grid -0.9:0.9:19 --branch hat1
    hyplegendre legendre universal --ell 3 --mprime 1 --grid -0.9:0.9:19 --format csv
    hyplegendre verify --seed 42 --cases 100 --tol 1e-8
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass

import click

from . import legendre_families as lf
from . import ode_solutions as ode
from .errors import (
    ComplexExponent,
    DegenerateCase,
    DomainError,
    Error,
    InvalidParams,
    NoConvergence,
    ParseError,
    PoleError,
    RootMismatch,
)
from .verify import SUITE_NAMES, run_all

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_NUMERICAL = 4

_NUMERICAL_ERRORS = (
    DomainError,
    PoleError,
    NoConvergence,
    DegenerateCase,
    ComplexExponent,
    RootMismatch,
)


def fmt17(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt17(value)
    return str(value)


def _json_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt17(value)
    if isinstance(value, int):
        return str(value)
    return json.dumps(value)


def emit_table(headers: list[str], rows: list[tuple], fmt: str) -> None:
    if fmt == "csv":
        print(",".join(headers))
        for row in rows:
            print(",".join(_cell(v) for v in row))
    elif fmt == "json":
        body = []
        for row in rows:
            fields = ", ".join(
                f"{json.dumps(h)}: {_json_cell(v)}" for h, v in zip(headers, row)
            )
            body.append("  {" + fields + "}")
        print("[\n" + ",\n".join(body) + "\n]")
    else:
        cells = [headers] + [[_cell(v) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
        for r in cells:
            print("  ".join(val.ljust(w) for val, w in zip(r, widths)).rstrip())


def _load_json_fields(path: str, keys: tuple[str, ...], int_keys: tuple[str, ...] = ()) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read '{path}': {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in '{path}': {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"'{path}': expected a JSON object of parameters")
    for key in keys:
        if key not in data:
            raise ParseError(f"'{path}': missing field '{key}'")
    for key in data:
        if key not in keys:
            raise ParseError(f"'{path}': unknown field '{key}'")
    for key in keys:
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"'{path}': field '{key}' must be a number")
        if key in int_keys and int(value) != value:
            raise ParseError(f"'{path}': field '{key}' must be an integer")
    return data


def load_ode_params(path: str) -> ode.OdeParams:
    data = _load_json_fields(
        path, ("a1", "b1", "a2", "b2", "a3", "b3", "c3", "lambda", "xi1", "xi2")
    )
    return ode.OdeParams.from_dict(data)


def load_universal_params(path: str) -> lf.UniversalParams:
    data = _load_json_fields(
        path,
        ("ell", "mprime", "a", "b", "c", "m", "lambda", "n_index"),
        int_keys=("n_index",),
    )
    return lf.UniversalParams.from_dict(data)


def load_legendre_triple(path: str) -> lf.LegendreTriple:
    data = _load_json_fields(path, ("k", "m", "n"))
    return lf.LegendreTriple.from_dict(data)


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if not self.start < self.stop:
            raise InvalidParams(f"grid start {self.start!r} must be below stop {self.stop!r}")
        if self.count < 2:
            raise InvalidParams("grid count must be at least 2")

    def points(self) -> list[float]:
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count)]


def parse_grid(text: str) -> Grid:
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError(f"grid '{text}' must look like start:stop:count")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ParseError(f"grid '{text}': {exc}") from exc
    return Grid(start, stop, count)


def _pick_root(pair: ode.RootPair, which: str, label: str) -> float:
    if pair.is_complex:
        raise ComplexExponent(f"{label} roots are a complex pair")
    return pair.first if which == "lo" else pair.second


def _run(ctx, body) -> None:
    verbose = bool(ctx.obj and ctx.obj.get("verbose"))
    try:
        code = body()
    except ParseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        sys.exit(EXIT_PARSE)
    except InvalidParams as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        sys.exit(EXIT_INVARIANT)
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        sys.exit(EXIT_NUMERICAL)
    except Error as exc:  # any stray library error counts as numerical
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        sys.exit(EXIT_NUMERICAL)
    else:
        if verbose:
            print("done", file=sys.stderr)
        sys.exit(code if code is not None else EXIT_OK)


_FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json", "text"]),
    default="text", show_default=True, help="Output table format.")
_BRANCHES = click.Choice([b.value for b in ode.BranchId] + ["all"])


@click.group()
@click.option("--verbose", is_flag=True, help="Progress notes on stderr.")
@click.pass_context
def main(ctx, verbose):
    """Closed-form hypergeometric solutions of a generalized Legendre-type
    equation class, with residual and identity verification."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path(),
              help="OdeParams JSON file.")
@_FORMAT
@click.pass_context
def exponents(ctx, params_path, fmt):
    """Indicial roots at both singular points and at infinity."""

    def body():
        p = load_ode_params(params_path)
        exps = ode.indicial_exponents(p)
        rows = []
        for name, pair in (("mu1", exps.mu1), ("mu2", exps.mu2),
                           ("mu_inf", exps.mu_inf)):
            if pair.is_complex:
                res1 = res2 = _complex_residual(p, name, pair)
            else:
                res1 = ode.root_residual(p, name, pair.first)
                res2 = ode.root_residual(p, name, pair.second)
            rows.append((name, pair.first, pair.second, pair.is_complex,
                         res1, res2))
        emit_table(
            ["point", "root_lo", "root_hi", "complex", "residual_lo", "residual_hi"],
            rows, fmt)

    _run(ctx, body)


def _complex_residual(p: ode.OdeParams, name: str, pair: ode.RootPair) -> float:
    from .ode_solutions import _quadratic_coeffs

    idx = {"mu1": 0, "mu2": 1, "mu_inf": 2}[name]
    b, c = _quadratic_coeffs(p)[idx]
    z = complex(pair.first, pair.second)
    return abs(z * z + b * z + c)


def _selected_branches(branch_options: tuple[str, ...], default_all: bool) -> list[ode.BranchId]:
    if not branch_options:
        return list(ode.BranchId) if default_all else [ode.BranchId.HAT1]
    if "all" in branch_options:
        return list(ode.BranchId)
    seen = []
    for name in branch_options:
        bid = ode.BranchId(name)
        if bid not in seen:
            seen.append(bid)
    return seen


def _roots_for(p: ode.OdeParams, mu1_root: str, mu2_root: str) -> tuple[float, float]:
    exps = ode.indicial_exponents(p)
    return (_pick_root(exps.mu1, mu1_root, "mu1"),
            _pick_root(exps.mu2, mu2_root, "mu2"))


def _build_selected(p, mu1, mu2, branch_options, default_all):
    """Build the requested branches; 'all' quietly drops degenerate ones,
    explicitly named branches raise."""
    wanted = _selected_branches(branch_options, default_all)
    explicit = bool(branch_options) and "all" not in branch_options
    built = []
    for bid in wanted:
        try:
            built.append((bid, ode.build_branch(p, mu1, mu2, bid)))
        except DegenerateCase:
            if explicit:
                raise
    if not built:
        raise DegenerateCase("no branch is buildable for these exponents")
    return built


_MU1 = click.option("--mu1-root", type=click.Choice(["lo", "hi"]), default="hi",
                    show_default=True, help="Which root of the first quadratic.")
_MU2 = click.option("--mu2-root", type=click.Choice(["lo", "hi"]), default="hi",
                    show_default=True, help="Which root of the second quadratic.")


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path())
@click.option("--branch", "branches", multiple=True, type=_BRANCHES,
              help="Branch to construct (repeatable); default all.")
@_MU1
@_MU2
@_FORMAT
@click.pass_context
def solve(ctx, params_path, branches, mu1_root, mu2_root, fmt):
    """Construct the closed-form branches and print their parameters."""

    def body():
        p = load_ode_params(params_path)
        mu1, mu2 = _roots_for(p, mu1_root, mu2_root)
        rows = []
        for bid, br in _build_selected(p, mu1, mu2, branches, default_all=True):
            degree = br.hyp.terminating_degree
            rows.append((
                bid.value, mu1, mu2, br.hyp.a, br.hyp.b, br.hyp.c,
                br.extra_power, br.map.variant.value,
                degree if degree is not None else "",
            ))
        emit_table(
            ["branch", "mu1", "mu2", "a", "b", "c", "extra_power", "map",
             "terminating_degree"],
            rows, fmt)

    _run(ctx, body)


@main.command(name="eval")
@click.option("--params", "params_path", required=True, type=click.Path())
@click.option("--grid", "grid_text", required=True, help="start:stop:count")
@click.option("--branch", "branches", multiple=True, type=_BRANCHES,
              help="Branch to evaluate (repeatable); default hat1.")
@_MU1
@_MU2
@_FORMAT
@click.pass_context
def eval_cmd(ctx, params_path, grid_text, branches, mu1_root, mu2_root, fmt):
    """Evaluate solution branches on a grid."""

    def body():
        p = load_ode_params(params_path)
        grid = parse_grid(grid_text)
        mu1, mu2 = _roots_for(p, mu1_root, mu2_root)
        built = _build_selected(p, mu1, mu2, branches, default_all=False)
        rows = []
        for r in grid.points():
            rows.append((r, *(ode.evaluate(br, r) for _, br in built)))
        emit_table(["r"] + [bid.value for bid, _ in built], rows, fmt)

    _run(ctx, body)


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path())
@click.option("--grid", "grid_text", required=True, help="start:stop:count")
@click.option("--branch", "branches", multiple=True, type=_BRANCHES,
              help="Branch to check (repeatable); default hat1.")
@_MU1
@_MU2
@_FORMAT
@click.pass_context
def residual(ctx, params_path, grid_text, branches, mu1_root, mu2_root, fmt):
    """Per-point normalized equation residuals of a branch, plus the max."""

    def body():
        p = load_ode_params(params_path)
        grid = parse_grid(grid_text)
        mu1, mu2 = _roots_for(p, mu1_root, mu2_root)
        built = _build_selected(p, mu1, mu2, branches, default_all=False)
        rows = []
        worst = 0.0
        for r in grid.points():
            vals = [ode.residual(br, p, r) for _, br in built]
            worst = max(worst, *vals)
            rows.append((r, *vals))
        rows.append(("max", *([worst] * len(built))))
        emit_table(["r"] + [bid.value for bid, _ in built], rows, fmt)

    _run(ctx, body)


@main.group()
def legendre():
    """The two named solution families."""


@legendre.command()
@click.option("--params", "params_path", type=click.Path(),
              help="UniversalParams JSON file (overrides the flags below).")
@click.option("--ell", type=float, help="Total degree.")
@click.option("--mprime", type=float, help="Weight exponent (order).")
@click.option("--a", "a_coef", type=float, default=0.0, show_default=True)
@click.option("--c", "c_coef", type=float, default=0.0, show_default=True)
@click.option("--m", "m_coef", type=float, default=None,
              help="Magnetic-type coefficient; defaults to mprime.")
@click.option("--grid", "grid_text", required=True, help="start:stop:count")
@_FORMAT
@click.pass_context
def universal(ctx, params_path, ell, mprime, a_coef, c_coef, m_coef,
              grid_text, fmt):
    """Universal polynomial family values on a grid."""

    def body():
        grid = parse_grid(grid_text)
        if params_path is not None:
            u = load_universal_params(params_path)
        else:
            if ell is None or mprime is None:
                raise ParseError("give either --params or both --ell and --mprime")
            u = lf.UniversalParams.from_degrees(
                ell=ell, mprime=mprime, a=a_coef, c=c_coef, m=m_coef)
        rows = [(r, lf.universal_sum(u, r)) for r in grid.points()]
        emit_table(["r", "value"], rows, fmt)

    _run(ctx, body)


@legendre.command()
@click.option("--params", "params_path", type=click.Path(),
              help="LegendreTriple JSON file (overrides --k/--m/--n).")
@click.option("--k", "k_deg", type=float)
@click.option("--m", "m_ord", type=float)
@click.option("--n", "n_ord", type=float)
@click.option("--xi1", type=float, default=-1.0, show_default=True)
@click.option("--xi2", type=float, default=1.0, show_default=True)
@click.option("--grid", "grid_text", required=True, help="start:stop:count")
@_FORMAT
@click.pass_context
def generalized(ctx, params_path, k_deg, m_ord, n_ord, xi1, xi2, grid_text, fmt):
    """Generalized two-order family (both solutions) on a grid.

    Uses the standard exponent choice mu1 = n/2, mu2 = -m/2.
    """

    def body():
        grid = parse_grid(grid_text)
        if params_path is not None:
            t = load_legendre_triple(params_path)
        else:
            if k_deg is None or m_ord is None or n_ord is None:
                raise ParseError("give either --params or all of --k, --m, --n")
            t = lf.LegendreTriple(k=k_deg, m=m_ord, n=n_ord)
        p = ode.OdeParams(a1=-2.0, b1=0.0, a2=0.0, b2=0.0, a3=0.0, b3=0.0,
                          c3=0.0, lam=t.k * (t.k + 1.0), xi1=xi1, xi2=xi2)
        mu1, mu2 = t.n / 2.0, -t.m / 2.0
        rows = []
        for r in grid.points():
            f1, f2 = lf.generalized_solutions(t, mu1, mu2, p, r)
            rows.append((r, f1, f2))
        emit_table(["r", "f1", "f2"], rows, fmt)

    _run(ctx, body)


@main.command()
@click.option("--seed", type=int, default=42, show_default=True,
              help="Base seed of the SplitMix64 case generator.")
@click.option("--cases", type=int, default=100, show_default=True,
              help="Cases per suite.")
@click.option("--tol", type=float, default=1e-8, show_default=True,
              help="Acceptance tolerance per case.")
@click.option("--suite", "suites", multiple=True,
              type=click.Choice(list(SUITE_NAMES)),
              help="Run only the named suites (repeatable).")
@_FORMAT
@click.pass_context
def verify(ctx, seed, cases, tol, suites, fmt):
    """Seeded property suites; exits 0 only if every case passes."""

    def body():
        if cases < 1:
            raise InvalidParams("cases must be at least 1")
        if not tol > 0.0:
            raise InvalidParams("tol must be positive")
        chosen = tuple(suites) if suites else SUITE_NAMES
        results = run_all(seed=seed, cases=cases, tol=tol, suites=chosen)
        rows = [(r.name, r.cases, r.passed, r.failed, r.max_err)
                for r in results]
        emit_table(["suite", "cases", "passed", "failed", "max_err"], rows, fmt)
        return EXIT_OK if all(r.failed == 0 for r in results) else EXIT_VERIFY_FAILED

    _run(ctx, body)


if __name__ == "__main__":
    main()
