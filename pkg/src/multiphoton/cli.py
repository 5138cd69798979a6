"""Command-line front end.

Every file written starts with ``# {json}``, the fully resolved run
configuration; numbers are printed with 12 significant digits so repeated
runs are byte-identical.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .algebra import ParseError
from .canonical import (
    CanonicalParams,
    NonlinearitySpec,
    Variant,
    check_canonical,
    expand_hamiltonian,
    hamiltonian_terms_json,
    verify_ccr,
)
from .errors import NumericalError
from .numerics import Grid
from .states import Family, StateParams, quadrature_stats, state_x1, state_x2
from .statistics import fock_auto, fock_coefficients, moments
from .wigner import wigner_diagnostics, wigner_transform

QUANTITIES = ("mean_n", "g2", "g4", "tail_mass", "mean_X1", "var_X1", "mean_X2", "var_X2")
EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3

FIG_BETA = 3.0 * math.sqrt(2.0)
FIG_R = 0.8
FIG_GAMMA = 0.14
FIG2_STATES = (("tpss", 0.0), ("fpss2", 0.1), ("fpss2", 0.5), ("fpss1", 0.05))
FIG56_GAMMA = 0.1
FIG56_R = tuple(round(0.02 * k, 10) for k in range(101))
FIG1_GRID = Grid(-12.0, 8.0, 2001)


class UsageError(Exception):
    pass


def fmt(v: float) -> str:
    return "%.12g" % v


@dataclass
class RunConfig:
    subcommand: str
    family: str = "tpss"
    r: float = 0.0
    gamma_tilde: float = 0.0
    alpha: tuple[float, float] | None = None
    beta: tuple[float, float] | None = None
    F: str | None = None
    variant: str | None = None
    grid: str | None = None
    N: int | None = None
    rep: str = "X1"
    path: str = "auto"
    out: str | None = None
    format: str = "csv"
    symbolic: bool = False
    mu: tuple[float, float] | None = None
    nu: tuple[float, float] | None = None
    gamma: tuple[float, float] | None = None
    param: str = "r"
    start: float = 0.0
    stop: float = 1.0
    step: float = 0.1
    quantity: str = "g2"
    x_axis: str | None = None
    p_axis: str | None = None
    jobs: int = 1

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items() if v is not None}

    def state_params(self) -> StateParams:
        if self.alpha is not None and self.beta is not None:
            raise UsageError("give either alpha or beta, not both")
        F = NonlinearitySpec.parse(self.F) if self.F else None
        fam = Family.parse(self.family)
        kw = {"F": F, "variant": self.variant} if fam is Family.GENERIC else {}
        if self.beta is not None:
            return StateParams.from_beta(fam, self.r, self.gamma_tilde, complex(*self.beta), **kw)
        alpha = complex(*self.alpha) if self.alpha is not None else 0j
        return StateParams(fam, self.r, self.gamma_tilde, alpha, **kw)


def parse_grid(text: str | None) -> Grid | None:
    if text is None:
        return None
    try:
        lo, hi, n = text.split(":")
        return Grid(float(lo), float(hi), int(n))
    except ValueError as exc:
        raise UsageError(f"grid must be x_min:x_max:n_points ({exc})") from None


# argument parsing

_CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"subcommand"}
_PAIR_KEYS = ("alpha", "beta", "mu", "nu", "gamma")


def _coerce(key: str, raw):
    """Convert a config-file string or flag value to the RunConfig field type."""
    if key in ("r", "gamma_tilde", "start", "stop", "step"):
        return float(raw)
    if key in ("N", "jobs"):
        return int(raw)
    if key == "symbolic":
        return raw if isinstance(raw, bool) else str(raw).lower() in ("1", "true", "yes")
    return raw


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` comments; keys are flag names with - or _."""
    out: dict = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _flatten_pairs(values: dict) -> dict:
    """Fold ``beta_re``/``beta_im`` style keys into ``beta=(re, im)`` tuples."""
    values = dict(values)
    for name in _PAIR_KEYS:
        re_, im_ = values.pop(f"{name}_re", None), values.pop(f"{name}_im", None)
        if re_ is not None or im_ is not None:
            values[name] = (float(re_ or 0.0), float(im_ or 0.0))
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multiphoton", description="Multiphoton squeezed states toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    S = argparse.SUPPRESS

    def common(p, state=True):
        p.add_argument("--config", default=S, help="key=value file; flags override it")
        p.add_argument("--out", default=S, help="output path (stdout if omitted)")
        p.add_argument("--format", choices=("csv", "json"), default=S)
        if state:
            p.add_argument("--family", default=S, help="tpss | fpss1 | fpss2 | generic")
            p.add_argument("--r", type=float, default=S)
            p.add_argument("--gamma-tilde", dest="gamma_tilde", type=float, default=S)
            for name in ("alpha", "beta"):
                p.add_argument(f"--{name}-re", dest=f"{name}_re", type=float, default=S)
                p.add_argument(f"--{name}-im", dest=f"{name}_im", type=float, default=S)
            p.add_argument("--F", default=S, help='nonlinearity for the generic family, e.g. "X2^3"')
            p.add_argument("--variant", default=S)
            p.add_argument("--grid", default=S, help="x_min:x_max:n_points (use --flag=-a:b:n for negative bounds)")
            p.add_argument("--N", type=int, default=S, help="Fock truncation (automatic if omitted)")
            p.add_argument("--path", choices=("auto", "airy", "transform"), default=S)

    p = sub.add_parser("check-canonical", help="constraint residuals of a mode transformation")
    common(p, state=False)
    for name in ("mu", "nu", "gamma"):
        p.add_argument(f"--{name}-re", dest=f"{name}_re", type=float, default=S)
        p.add_argument(f"--{name}-im", dest=f"{name}_im", type=float, default=S)
    p.add_argument("--r", type=float, default=S)
    p.add_argument("--gamma-tilde", dest="gamma_tilde", type=float, default=S)
    p.add_argument("--variant", default=S)
    p.add_argument("--F", default=S)

    p = sub.add_parser("expand", help="normal-ordered Hamiltonian b^dagger b + 1/2")
    common(p, state=False)
    p.add_argument("--variant", default=S)
    p.add_argument("--F", default=S)
    p.add_argument("--symbolic", action="store_true", default=S)
    p.add_argument("--r", type=float, default=S)
    p.add_argument("--gamma-tilde", dest="gamma_tilde", type=float, default=S)

    p = sub.add_parser("state", help="sampled wavefunction")
    common(p)
    p.add_argument("--rep", choices=("X1", "X2"), default=S)

    common(sub.add_parser("pnd", help="photon number distribution"))
    common(sub.add_parser("moments", help="mean photon number, g2 and g4"))

    p = sub.add_parser("wigner", help="Wigner function and diagnostics")
    common(p)
    p.add_argument("--x-axis", dest="x_axis", default=S, help="x_min:x_max:n_points (use --flag=-a:b:n for negative bounds)")
    p.add_argument("--p-axis", dest="p_axis", default=S, help="p_min:p_max:n_points")

    p = sub.add_parser("sweep", help="one quantity over a range of r or gamma_tilde")
    common(p)
    p.add_argument("--param", choices=("r", "gamma_tilde"), default=S)
    p.add_argument("--start", type=float, default=S)
    p.add_argument("--stop", type=float, default=S)
    p.add_argument("--step", type=float, default=S)
    p.add_argument("--quantity", default=S, help="comma list from " + ",".join(QUANTITIES))
    p.add_argument("--jobs", type=int, default=S)

    p = sub.add_parser("figures", help="data behind the six figure presets")
    common(p, state=False)
    p.add_argument("--jobs", type=int, default=S)
    return parser


def resolve_config(argv: list[str]) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    sub = args.pop("subcommand")
    merged: dict = {}
    if "config" in args:
        merged.update(_flatten_pairs(read_config_file(args.pop("config"))))
    merged.update(_flatten_pairs(args))
    unknown = set(merged) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown configuration keys: {sorted(unknown)}")
    cfg = RunConfig(sub, **{k: _coerce(k, v) for k, v in merged.items()})
    if cfg.alpha is not None and cfg.beta is not None:
        raise UsageError("give either alpha or beta, not both")
    return cfg


# emission

def header(cfg: RunConfig, extra: dict | None = None) -> str:
    payload = {"config": cfg.to_dict()}
    if cfg.alpha is None and cfg.subcommand not in ("check-canonical", "expand", "figures"):
        try:
            p = cfg.state_params()
            payload["resolved"] = {"alpha": [p.alpha.real, p.alpha.imag], "beta": [p.beta.real, p.beta.imag]}
        except (UsageError, ValueError):
            pass
    if extra:
        payload.update(extra)
    return "# " + json.dumps(payload, sort_keys=True, default=_json_default) + "\n"


def _json_default(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    raise TypeError(f"not serializable: {type(v).__name__}")


def csv_text(columns: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _round_floats(obj):
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def json_text(obj) -> str:
    return json.dumps(_round_floats(obj), sort_keys=True, default=_json_default) + "\n"


def emit(cfg: RunConfig, body: str, extra_header: dict | None = None, stdout=None) -> None:
    text = header(cfg, extra_header) + body
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        (stdout or sys.stdout).write(text)


def _record_body(cfg: RunConfig, record: dict) -> str:
    if cfg.format == "json":
        return json_text(record)
    keys = list(record)
    return csv_text(keys, [[record[k] if isinstance(record[k], (int, float)) else json.dumps(record[k]) for k in keys]])


# subcommands

def _fock(cfg: RunConfig, psi):
    return fock_coefficients(psi, cfg.N) if cfg.N is not None else fock_auto(psi)


def cmd_check_canonical(cfg: RunConfig, stdout) -> None:
    variant = Variant.parse(cfg.variant or "II")
    if cfg.mu is not None or cfg.nu is not None or cfg.gamma is not None:
        mu, nu, gamma = (complex(*(v or (0.0, 0.0))) for v in (cfg.mu, cfg.nu, cfg.gamma))
    else:
        cp = CanonicalParams(cfg.r, cfg.gamma_tilde, variant)
        mu, nu, gamma = cp.mu, cp.nu, cp.gamma
    res1, res2 = check_canonical(mu, nu, gamma, variant)
    record = {"bogoliubov_residual": res1, "gamma_residual": res2}
    if cfg.F:
        record["commutator"] = verify_ccr(NonlinearitySpec.parse(cfg.F), variant).format()
    emit(cfg, json_text(record) if cfg.format == "json" else _record_body(cfg, record), stdout=stdout)


def cmd_expand(cfg: RunConfig, stdout) -> None:
    F = NonlinearitySpec.parse(cfg.F or "X2^2")
    variant = Variant.parse(cfg.variant) if cfg.variant else Variant(F.quadrature_index)
    if cfg.symbolic:
        H = expand_hamiltonian(F, variant)
        record = {"terms": hamiltonian_terms_json(H, True), "text": H.format()}
    else:
        H = expand_hamiltonian(F, variant, CanonicalParams(cfg.r, cfg.gamma_tilde, variant))
        record = {"terms": hamiltonian_terms_json(H, False)}
    if cfg.format == "json":
        body = json_text(record)
    elif cfg.symbolic:
        rows = ([str(t["daggers"]), str(t["annihilators"]), '"' + t["coefficient"] + '"'] for t in record["terms"])
        body = csv_text(["daggers", "annihilators", "coefficient"], rows)
    else:
        rows = ([str(t["daggers"]), str(t["annihilators"]), *t["coefficient"]] for t in record["terms"])
        body = csv_text(["daggers", "annihilators", "re", "im"], rows)
    emit(cfg, body, stdout=stdout)


def cmd_state(cfg: RunConfig, stdout) -> None:
    params = cfg.state_params()
    grid = parse_grid(cfg.grid)
    psi = state_x1(params, grid, cfg.path) if cfg.rep == "X1" else state_x2(params, grid)
    rows = zip(psi.x, psi.values.real, psi.values.imag, psi.density)
    extra = {"grid": psi.grid.to_dict(), "representation": psi.representation, "norm_residual": psi.norm_residual}
    emit(cfg, csv_text(["x", "re", "im", "density"], rows), extra, stdout)


def cmd_pnd(cfg: RunConfig, stdout) -> None:
    f = _fock(cfg, state_x1(cfg.state_params(), parse_grid(cfg.grid), cfg.path))
    extra = {"N": f.truncation, "tail_mass": f.tail_mass}
    if cfg.format == "json":
        emit(cfg, json_text({"P": f.probabilities.tolist()}), extra, stdout)
    else:
        emit(cfg, csv_text(["n", "P"], ((str(n), p) for n, p in enumerate(f.probabilities))), extra, stdout)


def cmd_moments(cfg: RunConfig, stdout) -> None:
    f = _fock(cfg, state_x1(cfg.state_params(), parse_grid(cfg.grid), cfg.path))
    emit(cfg, _record_body(cfg, moments(f)), stdout=stdout)


def cmd_wigner(cfg: RunConfig, stdout) -> None:
    psi = state_x1(cfg.state_params(), parse_grid(cfg.grid), cfg.path)
    w = wigner_transform(psi, parse_grid(cfg.x_axis), parse_grid(cfg.p_axis))
    diag = wigner_diagnostics(w, psi).to_dict()
    extra = {"diagnostics": _round_floats(diag), "x_axis": w.x_axis.to_dict(), "p_axis": w.p_axis.to_dict()}
    emit(cfg, csv_text(["x", "p", "w"], zip(*w.long_form())), extra, stdout)


def evaluate_quantities(params: StateParams, quantities: tuple[str, ...], N: int | None = None) -> dict:
    """Named scalar quantities of one state (module level so sweeps can pickle it)."""
    psi = state_x1(params)
    out: dict = {}
    if any(q in ("mean_n", "g2", "g4", "tail_mass") for q in quantities):
        f = fock_coefficients(psi, N) if N is not None else fock_auto(psi)
        out.update(moments(f))
    if any(q.startswith(("mean_X", "var_X")) for q in quantities):
        out.update(asdict(quadrature_stats(psi)))
    return {q: out[q] for q in quantities}


def _sweep_values(start: float, stop: float, step: float) -> list[float]:
    if step <= 0 or stop < start:
        raise UsageError("sweep needs step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(n)]


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))  # map preserves input order


def cmd_sweep(cfg: RunConfig, stdout) -> None:
    quantities = tuple(q.strip() for q in cfg.quantity.split(","))
    bad = [q for q in quantities if q not in QUANTITIES]
    if bad:
        raise UsageError(f"unknown quantities {bad}; choose from {QUANTITIES}")
    base = cfg.state_params()
    values = _sweep_values(cfg.start, cfg.stop, cfg.step)
    if cfg.param == "r":
        # keep beta fixed across the sweep
        items = [(StateParams.from_beta(base.family, v, base.gamma_tilde, base.beta, **_generic_kw(base)), quantities, cfg.N) for v in values]
    else:
        items = [(base.with_(gamma_tilde=v), quantities, cfg.N) for v in values]
    results = _map(evaluate_quantities, items, cfg.jobs)
    rows = ([v] + [res[q] for q in quantities] for v, res in zip(values, results))
    emit(cfg, csv_text([cfg.param, *quantities], rows), stdout=stdout)


def _generic_kw(p: StateParams) -> dict:
    return {"F": p.F, "variant": p.variant} if p.family is Family.GENERIC else {}


# figure presets

def _fig_params(family: str, gamma_tilde: float, r: float = FIG_R) -> StateParams:
    return StateParams.from_beta(family, r, gamma_tilde, FIG_BETA)


def _write(path: Path, cfg: RunConfig, extra: dict, body: str) -> None:
    path.write_text(header(cfg, extra) + body)


def cmd_figures(cfg: RunConfig, stdout) -> None:
    out = Path(cfg.out or "figures")
    out.mkdir(parents=True, exist_ok=True)
    manifest: dict = {"beta": FIG_BETA, "files": {}}

    def record(name: str, preset: dict, body: str, extra: dict | None = None):
        meta = {"preset": name, "parameters": preset, **(extra or {})}
        _write(out / f"{name}.csv", cfg, meta, body)
        manifest["files"][name] = {"file": f"{name}.csv", "parameters": preset, **(extra or {})}

    # fig1: X1 density of the FPSS-II (TPSS for reference)
    p1 = _fig_params("fpss2", FIG_GAMMA)
    psi = state_x1(p1, FIG1_GRID)
    ref = state_x1(_fig_params("tpss", 0.0), FIG1_GRID)
    record("fig1", {"r": FIG_R, "gamma_tilde": FIG_GAMMA, "states": ["fpss2", "tpss"]},
           csv_text(["x", "fpss2_density", "tpss_density"], zip(psi.x, psi.density, ref.density)))

    # fig2: photon number distributions
    dists, labels, extras = [], [], {}
    for fam, g in FIG2_STATES:
        f = fock_auto(state_x1(_fig_params(fam, g)))
        label = f"{fam}_g{g:g}"
        dists.append(f.probabilities)
        labels.append(label)
        extras[label] = {"N": f.truncation, "tail_mass": f.tail_mass}
    n_max = max(d.size for d in dists)
    cols = [np.pad(d, (0, n_max - d.size)) for d in dists]
    rows = ([str(n)] + [c[n] for c in cols] for n in range(n_max))
    record("fig2", {"r": FIG_R, "states": [list(s) for s in FIG2_STATES]}, csv_text(["n", *labels], rows), {"fock": extras})

    # fig3 / fig4: Wigner functions
    for name, fam in (("fig3", "fpss2"), ("fig4", "fpss1")):
        psi = state_x1(_fig_params(fam, FIG_GAMMA))
        w = wigner_transform(psi)
        diag = _round_floats(wigner_diagnostics(w, psi).to_dict())
        record(name, {"family": fam, "r": FIG_R, "gamma_tilde": FIG_GAMMA},
               csv_text(["x", "p", "w"], zip(*w.long_form())),
               {"diagnostics": diag, "x_axis": w.x_axis.to_dict(), "p_axis": w.p_axis.to_dict()})

    # fig5 / fig6: g2 and g4 against r
    fams = (("tpss", 0.0), ("fpss1", FIG56_GAMMA), ("fpss2", FIG56_GAMMA))
    items = [(_fig_params(fam, g, r), ("g2", "g4", "tail_mass"), None) for r in FIG56_R for fam, g in fams]
    results = _map(evaluate_quantities, items, cfg.jobs)
    by_r = [results[i * len(fams):(i + 1) * len(fams)] for i in range(len(FIG56_R))]
    for name, q in (("fig5", "g2"), ("fig6", "g4")):
        cols = [f"{fam}_{q}" for fam, _ in fams]
        rows = ([r] + [res[q] for res in block] for r, block in zip(FIG56_R, by_r))
        worst = max(res["tail_mass"] for block in by_r for res in block)
        record(name, {"r_grid": [FIG56_R[0], FIG56_R[-1], 0.02], "gamma_tilde": FIG56_GAMMA},
               csv_text(["r", *cols], rows), {"max_tail_mass": worst})

    (out / "manifest.json").write_text(json.dumps(_round_floats(manifest), indent=2, sort_keys=True) + "\n")
    stdout.write(f"wrote {len(manifest['files'])} figure files to {out}\n")


COMMANDS = {
    "check-canonical": cmd_check_canonical,
    "expand": cmd_expand,
    "state": cmd_state,
    "pnd": cmd_pnd,
    "moments": cmd_moments,
    "wigner": cmd_wigner,
    "sweep": cmd_sweep,
    "figures": cmd_figures,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = resolve_config(list(sys.argv[1:] if argv is None else argv))
        COMMANDS[cfg.subcommand](cfg, stdout)
    except SystemExit as exc:  # argparse
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (UsageError, ParseError, ValueError, KeyError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NumericalError as exc:
        stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
