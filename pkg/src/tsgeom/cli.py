"""Command-line interface: ``tsgeom <subcommand> ...``.

Exit status is 0 on success, 1 on data errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import TsgeomError
from .io import AnalysisReport, digest, read_csv, series_to_dict, signals_to_csv, write_report
from .kuramoto import OscillatorNetwork, integrate, marginal_coupling, random_network, synchronizability
from .measures import DEFAULT_EPS_POWER, MEASURES, histogram, locate_min, measure_series, ratio_series
from .signal import GENERATOR_KINDS, GeneratorSpec, WindowSpec, generate
from .symbolize import symbolize
from .transitions import block_views, count_transitions, windowed_transitions

__all__ = ["main", "run", "build_parser"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text}")
    return v


def _nonneg(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return v


def _keyval(text):
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key, float(val)


def build_parser():
    p = _Parser(prog="tsgeom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tsgeom {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_opts(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("-o", "--output", help="file (json) or directory (csv); json defaults to stdout")

    def analysis(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", help="CSV file, one column per channel")
        sp.add_argument("--fs", type=_positive, help="sample rate in Hz (else '# fs=' header)")
        sp.add_argument("--tau", type=_nonneg, default=0.0, help="zero band for signs")
        sp.add_argument("--strict", action="store_true", help="reject malformed rows")
        output_opts(sp)
        return sp

    def window_opts(sp):
        sp.add_argument("--window-s", type=_positive, default=2.0)
        sp.add_argument("--hop-s", type=_positive, default=2.0)
        sp.add_argument("--eps-power", type=_nonneg, default=DEFAULT_EPS_POWER)
        sp.add_argument("--product", choices=("left", "right"), default="left")

    sp = analysis("symbolize", "configuration strings and histograms")
    sp.add_argument("--no-symbols", action="store_true", help="omit the symbol strings")

    sp = analysis("transitions", "13x13 transition matrices and block sums")
    sp.add_argument("--window-s", type=_positive, help="also emit per-window matrices")
    sp.add_argument("--hop-s", type=_positive)

    sp = analysis("measure", "windowed entropy and power series")
    window_opts(sp)
    sp.add_argument(
        "--measures",
        default=",".join(MEASURES),
        help=f"comma-separated subset of {', '.join(MEASURES)}",
    )

    sp = analysis("ratio", "entropy, information power and their ratio")
    window_opts(sp)

    sp = sub.add_parser("simulate", help="integrate a Kuramoto network")
    sp.add_argument("spec", nargs="?", help="JSON network spec; omit to draw a random one")
    sp.add_argument("--n", type=int, default=10, help="oscillators in a random network")
    sp.add_argument("--coupling", type=_nonneg, default=1.0, help="global K of a random network")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--convention", choices=("standard", "repulsive"))
    sp.add_argument("--dt", type=_positive, default=0.01)
    sp.add_argument("--duration", type=_positive, default=50.0)
    sp.add_argument("--tau", type=_nonneg, default=0.0)
    sp.add_argument("--no-phases", action="store_true", help="omit the phase trajectories")
    window_opts(sp)
    output_opts(sp)

    sp = sub.add_parser("generate", help="write a synthetic signal as CSV")
    sp.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    sp.add_argument("--duration", type=_positive, default=20.0)
    sp.add_argument("--fs", type=_positive, default=256.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--param", type=_keyval, action="append", default=[], metavar="KEY=VALUE")
    sp.add_argument("-o", "--output", help="CSV path; defaults to stdout")
    return p


def _window(args, fs):
    return WindowSpec.from_seconds(args.window_s, args.hop_s, fs)


def _params(args, **extra):
    keys = ("tau", "window_s", "hop_s", "eps_power", "product", "convention", "seed", "fs", "strict")
    out = {k: getattr(args, k, None) for k in keys}
    out.update(extra)
    return out


def _load(args):
    return read_csv(args.input, fs=args.fs, strict=args.strict)


def _ingest_meta(table):
    return {
        "source": Path(table.source).name,
        "rows": table.rows,
        "skipped_rows": list(table.skipped_rows),
        "dropped_columns": list(table.dropped_columns),
        "sample_rate": table.sample_rate,
    }


def _cmd_symbolize(args):
    table = _load(args)
    channels = {}
    for name, sig in table.channels.items():
        sym = symbolize(sig, args.tau)
        res = {"n_samples": len(sig), "histogram": list(histogram(sym).counts)}
        if not args.no_symbols:
            res["symbols"] = sym.symbols.tolist()
        channels[name] = res
    params = _params(args, fs=table.sample_rate, ingest=_ingest_meta(table))
    return AnalysisReport(__version__, "symbolize", table.digest, params, channels)


def _transitions_dict(m):
    return {
        "count": m.count,
        "counts": m.counts.tolist(),
        "block_sums": block_views(m).sums(),
    }


def _cmd_transitions(args):
    table = _load(args)
    if (args.window_s is None) != (args.hop_s is None):
        raise UsageError("--window-s and --hop-s go together")
    channels = {}
    for name, sig in table.channels.items():
        sym = symbolize(sig, args.tau)
        res = {"transitions": _transitions_dict(count_transitions(sym))}
        if args.window_s is not None:
            spec = _window(args, sig.sample_rate)
            starts, mats = windowed_transitions(sig, spec, args.tau)
            res["windows"] = [
                {"window_start_s": float(s / sig.sample_rate), **_transitions_dict(m)}
                for s, m in zip(starts, mats)
            ]
        channels[name] = res
    params = _params(args, fs=table.sample_rate, ingest=_ingest_meta(table))
    return AnalysisReport(__version__, "transitions", table.digest, params, channels)


def _cmd_measure(args):
    wanted = [m.strip() for m in args.measures.split(",") if m.strip()]
    unknown = sorted(set(wanted) - set(MEASURES))
    if unknown or not wanted:
        raise UsageError(f"unknown measures {unknown}; choose from {', '.join(MEASURES)}")
    table = _load(args)
    channels = {}
    for name, sig in table.channels.items():
        spec = _window(args, sig.sample_rate)
        series = {
            m: series_to_dict(measure_series(sig, m, spec, args.tau, args.product, args.eps_power))
            for m in wanted
        }
        channels[name] = {"series": series}
    params = _params(args, fs=table.sample_rate, measures=wanted, ingest=_ingest_meta(table))
    return AnalysisReport(__version__, "measure", table.digest, params, channels)


def _minimum(series):
    try:
        i, t = locate_min(series)
    except TsgeomError:
        return None
    return {"window_index": i, "window_start_s": t, "value": float(series.values[i])}


def _cmd_ratio(args):
    table = _load(args)
    channels = {}
    for name, sig in table.channels.items():
        spec = _window(args, sig.sample_rate)
        r = ratio_series(sig, spec, args.tau, args.product, args.eps_power)
        channels[name] = {
            "series": {s.measure_tag: series_to_dict(s) for s in (r.entropy, r.power, r.ratio)},
            "minimum": _minimum(r.ratio),
            "n_windows": len(r.ratio),
        }
    params = _params(args, fs=table.sample_rate, ingest=_ingest_meta(table))
    return AnalysisReport(__version__, "ratio", table.digest, params, channels)


def _cmd_simulate(args):
    if args.spec:
        try:
            raw = Path(args.spec).read_bytes()
            spec_dict = json.loads(raw)
        except OSError as exc:
            raise TsgeomError(f"cannot read {args.spec}: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise TsgeomError(f"{args.spec}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        if args.convention:
            spec_dict = {**spec_dict, "sign_convention": args.convention}
        net = OscillatorNetwork.from_dict(spec_dict)
        seed = None
    else:
        if args.n < 1:
            raise UsageError("--n must be >= 1")
        net = random_network(args.n, args.coupling, args.seed, args.convention or "standard")
        seed = args.seed
    steps = int(round(args.duration / args.dt))
    traj = integrate(net, args.dt, steps)
    fs = 1.0 / args.dt
    spec = _window(args, fs)
    channels = {}
    r = traj.order_parameter()
    channels["network"] = {
        "order_parameter": {"time_s": traj.times.tolist(), "r": r.tolist()},
        "mean_r_last_20pct": float(r[int(0.8 * len(r)) :].mean()),
        "spec": net.to_dict(),
    }
    width = len(str(net.n - 1))
    for i in range(net.n):
        obs = traj.observable(i)
        k_i = marginal_coupling(net, i)
        res = {"marginal_coupling": k_i}
        if not args.no_phases:
            res["phase"] = traj.phases[:, i].tolist()
            res["observable"] = obs.samples.tolist()
        if k_i > 0:
            s = synchronizability(obs, k_i, spec, args.tau, args.product, args.eps_power)
            res["series"] = {"synchronizability": series_to_dict(s)}
        else:
            res["series"] = {}
            res["synchronizability_undefined"] = "zero marginal coupling"
        channels[f"osc{i:0{width}d}"] = res
    input_digest = digest(json.dumps(net.to_dict(), sort_keys=True).encode())
    params = _params(args, seed=seed, fs=fs, dt=args.dt, steps=steps, convention=net.sign_convention)
    return AnalysisReport(__version__, "simulate", input_digest, params, channels)


def _cmd_generate(args):
    spec = GeneratorSpec(args.kind, args.duration, args.fs, args.seed, dict(args.param))
    sig = generate(spec)
    data = signals_to_csv([sig], sig.sample_rate)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return None


_COMMANDS = {
    "symbolize": _cmd_symbolize,
    "transitions": _cmd_transitions,
    "measure": _cmd_measure,
    "ratio": _cmd_ratio,
    "simulate": _cmd_simulate,
    "generate": _cmd_generate,
}


def _emit(report, args):
    files = write_report(report, args.format)
    if args.format == "json":
        data = files["report.json"]
        if args.output:
            Path(args.output).write_bytes(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        return
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for name, data in files.items():
        (out / name).write_bytes(data)


def run(argv=None):
    """Parse ``argv`` and execute; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "format", None) == "csv" and not args.output:
            raise UsageError("--format csv needs --output DIRECTORY")
        report = _COMMANDS[args.command](args)
        if report is not None:
            _emit(report, args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return exc.code or 0
    except (TsgeomError, OSError, ValueError) as exc:
        print(f"tsgeom: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
