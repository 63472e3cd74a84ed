"""Command-line interface: figure-data grids and the verification suite.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 failed verification.
"""

import argparse
import datetime
import json
import math
import sys
from dataclasses import dataclass, field, fields

from . import __version__, thermo
from .darboux import ActionEvaluator, format_lambda, parse_lambda
from .errors import DarbouxThermoError, PreconditionError
from .grid import SeriesGrid
from .verify import run_verification
from .zeromode import ZeroModeSeed

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("action", "entropy", "carnot", "heatcap", "fdt", "verify")


class UsageError(Exception):
    pass


def parse_range(text):
    """``lo:hi:count`` (inclusive, linear) or ``log:lo:hi:count`` (geometric)."""
    if isinstance(text, dict):
        text = f"{'log:' if text.get('log') else ''}{text['lo']}:{text['hi']}:{text['count']}"
    parts = str(text).split(":")
    log = parts[0] == "log"
    if log:
        parts = parts[1:]
    if len(parts) != 3:
        raise UsageError(f"range {text!r} is not lo:hi:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"range {text!r}: {exc}") from None
    if count < 2:
        raise UsageError(f"range {text!r} needs at least 2 points")
    if not lo <= hi:
        raise UsageError(f"range {text!r} has lo > hi")
    if log:
        if not lo > 0:
            raise UsageError(f"log range {text!r} needs lo > 0")
        a, b = math.log(lo), math.log(hi)
        pts = [math.exp(a + (b - a) * i / (count - 1)) for i in range(count)]
        pts[0], pts[-1] = lo, hi
        return pts
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def parse_lambda_list(spec):
    """Comma list of reals, ``inf`` and ranges; returned sorted and de-duplicated."""
    items = spec if isinstance(spec, list) else str(spec).split(",")
    out = []
    for item in items:
        if isinstance(item, str) and ":" in item:
            out.extend(parse_range(item))
            continue
        try:
            out.append(parse_lambda(item))
        except (ValueError, PreconditionError) as exc:
            raise UsageError(f"bad lambda value {item!r}: {exc}") from None
    if not out:
        raise UsageError("empty lambda list")
    return sorted(set(out))


@dataclass
class RunConfig:
    seed: object = "planck"
    hbar: float = 1.0
    lambdas: list = field(default_factory=lambda: ["inf"])
    x: str = "0.1:10:100"
    c: str = "0.3:4:40"
    t: str = "0.02:50:100"
    omega: float = 1.0
    r0: float = 1.0
    baseline: bool = False
    carnot: dict = field(default_factory=dict)
    out: str = None
    format: str = "csv"
    emit_plot_script: bool = False
    reproducible: bool = False
    perturb: float = 0.0

    @classmethod
    def from_sources(cls, config_path, overrides):
        values = {}
        if config_path:
            try:
                with open(config_path) as fh:
                    values.update(json.load(fh))
            except ValueError as exc:
                raise UsageError(f"config {config_path}: {exc}") from None
            if "lambda" in values:
                values["lambdas"] = values.pop("lambda")
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for key, value in overrides.items():
            if value is None:
                continue
            if key == "carnot":
                # flags refine, rather than replace, the file's Carnot block
                value = {**values.get("carnot", {}), **value}
            values[key] = value
        cfg = cls(**values)
        if cfg.format not in ("csv", "json"):
            raise UsageError(f"unknown format {cfg.format!r}")
        return cfg

    def make_seed(self):
        seed = self.seed
        if isinstance(seed, str) and seed.lstrip().startswith("{"):
            try:
                seed = json.loads(seed)
            except ValueError as exc:
                raise UsageError(f"bad seed JSON: {exc}") from None
        try:
            return ZeroModeSeed.from_json(seed, hbar=float(self.hbar))
        except PreconditionError as exc:
            raise UsageError(str(exc)) from None

    def lambda_values(self):
        return parse_lambda_list(self.lambdas)

    def carnot_config(self):
        try:
            return thermo.CarnotConfig.from_json(self.carnot)
        except (TypeError, PreconditionError) as exc:
            raise UsageError(f"bad Carnot parameters: {exc}") from None


def _safe(fn, *args):
    try:
        value = fn(*args)
    except (DarbouxThermoError, ZeroDivisionError):
        return None
    return value if math.isfinite(value) else None


def _meta(cfg, command, seed, lambdas):
    meta = {
        "command": command,
        "seed": json.dumps(seed.to_json(), sort_keys=True),
        "hbar": repr(seed.hbar),
        "lambda": ",".join(format_lambda(v) for v in lambdas),
        "tool": f"darboux-thermo {__version__}",
    }
    if not cfg.reproducible:
        meta["generated"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return meta


def _lambda_x_grid(cfg, command, columns_fn):
    seed = cfg.make_seed()
    lambdas = cfg.lambda_values()
    xs = parse_range(cfg.x)
    columns = None
    for lam in lambdas:
        ev = ActionEvaluator(seed, lam)
        for x in xs:
            row = columns_fn(ev, x)
            if columns is None:
                columns = {name: [] for name in row}
            for name, value in row.items():
                columns[name].append(value)
    return SeriesGrid([("lambda", lambdas), ("x", xs)], columns, _meta(cfg, command, seed, lambdas))


def cmd_action(cfg):
    return _lambda_x_grid(cfg, "action", lambda ev, x: {"f": _safe(ev.f_general, x)})


def _with_baseline(cfg, fn, name):
    def row(ev, x):
        value = _safe(fn, ev, x)
        out = {name: value}
        if cfg.baseline:
            base = _safe(fn, ev.with_lambda(math.inf), x)
            out[f"{name}_baseline"] = base
            out[f"delta_{name}"] = None if value is None or base is None else value - base
        return out

    return row


def cmd_entropy(cfg):
    return _lambda_x_grid(cfg, "entropy", _with_baseline(cfg, thermo.entropy, "s"))


def cmd_heatcap(cfg):
    return _lambda_x_grid(cfg, "heatcap", _with_baseline(cfg, thermo.heat_capacity, "C"))


def cmd_carnot(cfg):
    seed = cfg.make_seed()
    lambdas = cfg.lambda_values()
    cs = parse_range(cfg.c)
    base = cfg.carnot_config()
    eta, valid, ref = [], [], []
    for lam in lambdas:
        ev = ActionEvaluator(seed, lam)
        for c in cs:
            try:
                res = thermo.carnot_efficiency(ev, base.replace(c=c))
            except (DarbouxThermoError, ZeroDivisionError):
                res = None
            if res is None or not math.isfinite(res.eta):
                eta.append(None)
                valid.append(0.0)
            else:
                eta.append(res.eta)
                valid.append(1.0 if res.valid else 0.0)
            ref.append(base.carnot_limit)
    meta = _meta(cfg, "carnot", seed, lambdas)
    meta["carnot"] = json.dumps(base.to_json(), sort_keys=True)
    return SeriesGrid([("lambda", lambdas), ("c", cs)], {"eta": eta, "valid": valid, "carnot_limit": ref}, meta)


def cmd_fdt(cfg):
    seed = cfg.make_seed()
    lambdas = cfg.lambda_values()
    ts = parse_range(cfg.t)
    if ts[0] <= 0:
        raise UsageError("temperatures must be positive")
    try:
        r = thermo.ResistanceModel.constant(float(cfg.r0))
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    omega = float(cfg.omega)
    if not omega > 0:
        raise UsageError("omega must be positive")
    power = []
    for lam in lambdas:
        ev = ActionEvaluator(seed, lam)
        for t in ts:
            power.append(_safe(thermo.fdt_spectrum, ev, r, omega, 1.0 / t))
    meta = _meta(cfg, "fdt", seed, lambdas)
    meta["omega"] = repr(omega)
    meta["resistance"] = r.name
    return SeriesGrid([("lambda", lambdas), ("T", ts)], {"P": power}, meta)


GRID_COMMANDS = {
    "action": cmd_action,
    "entropy": cmd_entropy,
    "carnot": cmd_carnot,
    "heatcap": cmd_heatcap,
    "fdt": cmd_fdt,
}


def cmd_verify(cfg):
    report = run_verification(hbar=float(cfg.hbar), perturb=float(cfg.perturb))
    meta = {"tool": f"darboux-thermo {__version__}", "hbar": repr(float(cfg.hbar)), "perturb": repr(float(cfg.perturb))}
    if not cfg.reproducible:
        meta["generated"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    report["meta"] = meta
    return report


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON RunConfig file; flags override it")
    common.add_argument("--seed", help="planck | vacuum | symmetric | JSON {\"A\",\"B\",\"hbar\"}")
    common.add_argument("--hbar", type=float)
    common.add_argument("--lambda", dest="lambdas", help="comma list of reals, 'inf', lo:hi:n, log:lo:hi:n")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--reproducible", action="store_true", default=None,
                        help="omit the timestamp so output is byte-identical across runs")
    common.add_argument("--emit-plot-script", action="store_true", default=None,
                        help="also write a gnuplot script next to the CSV")

    parser = argparse.ArgumentParser(
        prog="darboux-thermo",
        description="Darboux-deformed oscillator actions and their thermodynamics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("action", "deformed action f_g over (lambda, x)"),
        ("entropy", "diagonal entropy s_g(x, x) over (lambda, x)"),
        ("heatcap", "heat capacity -x^2 f_g' over (lambda, x)"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--x", help="x range lo:hi:count")
        if name != "action":
            p.add_argument("--baseline", action="store_true", default=None,
                           help="add the lambda=inf baseline and difference columns")

    p = sub.add_parser("carnot", parents=[common], help="Carnot efficiency over (lambda, c)")
    p.add_argument("--c", help="c range lo:hi:count (u = 2c)")
    for key in ("t-cold", "t-hot", "a", "b", "v"):
        p.add_argument(f"--{key}", type=float, dest=f"carnot_{key.replace('-', '_')}")

    p = sub.add_parser("fdt", parents=[common], help="noise spectrum over (lambda, T)")
    p.add_argument("--t", help="temperature range lo:hi:count")
    p.add_argument("--omega", type=float)
    p.add_argument("--r0", type=float, help="constant resistance")

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--perturb", type=float, help="add a constant to f_g (fault injection)")
    return parser


def _overrides(args):
    values = dict(vars(args))
    values.pop("command")
    values.pop("config")
    carnot = {k[len("carnot_"):]: values.pop(k) for k in list(values) if k.startswith("carnot_")}
    carnot = {k: v for k, v in carnot.items() if v is not None}
    if carnot:
        values["carnot"] = carnot
    return values


_VALUE_FLAGS = ("--x", "--c", "--t", "--lambda")


def _glue_negative_values(argv):
    # argparse mistakes "-8:8:161" for an option; "--x=-8:8:161" is unambiguous
    out = []
    it = iter(argv)
    for token in it:
        if token in _VALUE_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        cfg = RunConfig.from_sources(args.config, _overrides(args))
        if args.command == "verify":
            report = cmd_verify(cfg)
            _write(cfg.out, json.dumps(report, indent=1, sort_keys=True) + "\n")
            return EXIT_OK if report["pass"] else EXIT_VERIFY
        grid = GRID_COMMANDS[args.command](cfg)
        if cfg.emit_plot_script and (cfg.out is None or cfg.format != "csv"):
            raise UsageError("--emit-plot-script needs --out and CSV format")
        _write(cfg.out, grid.dumps(cfg.format))
        if cfg.emit_plot_script:
            _write(cfg.out + ".gp", grid.gnuplot_script(cfg.out, title=args.command))
    except (UsageError, PreconditionError) as exc:
        print(f"darboux-thermo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"darboux-thermo: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
