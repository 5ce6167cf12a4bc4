"""Command-line front end.

Every run writes its CSV to ``--out`` (or stdout) and, when ``--out`` is
given, a ``<stem>.meta.json`` sidecar holding the effective configuration.
Passing that sidecar back through ``--config`` repeats the run.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, search, verify
from .analytic import Family
from .errors import QstError
from .graph import antipodes, complete, complete_minus_edge, path, read_edge_list, theta
from .hamiltonian import NoiseMode, build
from .kernels import BACKEND
from .noise import average_fidelity_sweep, shifted_vs_unshifted_comparison, sweep_csv
from .spectral import eigendecompose, fidelity_trace, time_grid

COMMANDS = ("fidelity", "pst", "table chains", "table theta", "noise", "verify", "hamiltonian")

# flag -> help; all values are parsed by the command handlers so that config
# files and the command line go through the same conversion.
FLAGS = {
    "graph": "kn | knm | path | theta | file",
    "n": "vertex count (verify: range such as 4..12)",
    "l": "number of paths for theta graphs (table theta: list)",
    "edge-file": "edge-list file for --graph file",
    "io": "input/output pair I,J",
    "shift-io": "energy shift applied to both I/O vertices",
    "shift": "per-vertex shift V:X (repeatable)",
    "tmax": "end of the time grid",
    "steps": "number of grid intervals (pst: grid points)",
    "window": "search window A,B",
    "pst-threshold": "fidelity counted as transfer",
    "mode": "noise on vertex frequencies or edge couplings: vertex | edge",
    "sigma2": "variance grid start:stop:count",
    "samples": "realizations per variance",
    "seed": "master seed",
    "t-eval": "evaluation time for noise runs on arbitrary graphs",
    "shifts": "comma-separated energy shifts for tables",
    "sizes": "comma-separated chain lengths for tables",
    "window-cap": "search window end for table cells",
    "grid-points": "minimum grid points per table cell",
    "families": "kn,knm",
    "out": "output CSV path (stdout when omitted)",
    "threads": "worker threads",
}


class ConfigError(Exception):
    pass


def _key(flag: str) -> str:
    return flag.replace("-", "_")


def _parse_args(argv):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON config; flags override it")
    for flag, text in FLAGS.items():
        action = "append" if flag == "shift" else "store"
        common.add_argument(f"--{flag}", dest=_key(flag), action=action, default=argparse.SUPPRESS, help=text)

    parser = argparse.ArgumentParser(prog="qstnet", parents=[common], description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qstnet {__version__}")
    sub = parser.add_subparsers(dest="command")
    for name in ("fidelity", "pst", "noise", "verify", "hamiltonian"):
        sub.add_parser(name, parents=[common])
    table = sub.add_parser("table", parents=[common])
    table_sub = table.add_subparsers(dest="table_kind", required=True)
    for kind in ("chains", "theta"):
        table_sub.add_parser(kind, parents=[common])
    return parser, parser.parse_args(argv)


def load_config(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    return {_key(k): v for k, v in data.items()}


def effective_config(ns: argparse.Namespace) -> dict:
    cfg = {}
    if hasattr(ns, "config"):
        cfg.update(load_config(ns.config))
    flags = {k: v for k, v in vars(ns).items() if k not in ("config", "command", "table_kind")}
    cfg.update(flags)
    if ns.command == "table":
        cfg["command"] = f"table {ns.table_kind}"
    elif ns.command:
        cfg["command"] = ns.command
    if cfg.get("command") not in COMMANDS:
        raise ConfigError(f"no command given (choose from {', '.join(COMMANDS)})")
    unknown = set(cfg) - {_key(f) for f in FLAGS} - {"command"}
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return cfg


# value conversion; config values may already be numbers or lists


def _int(v, name):
    try:
        return int(v)
    except (TypeError, ValueError):
        raise ConfigError(f"--{name}: expected an integer, got {v!r}") from None


def _float(v, name):
    try:
        return float(v)
    except (TypeError, ValueError):
        raise ConfigError(f"--{name}: expected a number, got {v!r}") from None


def _list(v, conv, name):
    items = v if isinstance(v, (list, tuple)) else [s for s in str(v).split(",") if s.strip()]
    if not items:
        raise ConfigError(f"--{name}: empty list")
    return [conv(x, name) for x in items]


def _pair(v, conv, name):
    items = _list(v, conv, name)
    if len(items) != 2:
        raise ConfigError(f"--{name}: expected two values, got {v!r}")
    return tuple(items)


def _int_range(v, name):
    if isinstance(v, str) and ".." in v:
        lo, hi = v.split("..", 1)
        return list(range(_int(lo, name), _int(hi, name) + 1))
    if isinstance(v, int):
        return [v]
    return _list(v, _int, name)


def _sigma2(v):
    if isinstance(v, (list, tuple)):
        return np.array([_float(x, "sigma2") for x in v])
    parts = str(v).split(":")
    if len(parts) != 3:
        raise ConfigError(f"--sigma2: expected start:stop:count, got {v!r}")
    return np.linspace(_float(parts[0], "sigma2"), _float(parts[1], "sigma2"), _int(parts[2], "sigma2"))


def _shifts(cfg, io):
    shifts = {}
    if "shift_io" in cfg:
        x = _float(cfg["shift_io"], "shift-io")
        shifts[io[0]] = x
        shifts[io[1]] = x
    raw = cfg.get("shift", [])
    if isinstance(raw, dict):
        raw = [f"{k}:{v}" for k, v in raw.items()]
    elif isinstance(raw, str):
        raw = [raw]
    for item in raw:
        v, sep, x = str(item).partition(":")
        if not sep:
            raise ConfigError(f"--shift: expected V:X, got {item!r}")
        shifts[_int(v, "shift")] = _float(x, "shift")
    return shifts


def _threads(cfg):
    return _int(cfg["threads"], "threads") if "threads" in cfg else (os.cpu_count() or 1)


def graph_from_config(cfg):
    """Graph plus its default input/output pair."""
    kind = cfg.get("graph")
    if kind is None:
        raise ConfigError("--graph is required")
    if kind != "file" and "edge_file" in cfg:
        raise ConfigError("--edge-file only applies to --graph file")
    if kind == "file":
        if "edge_file" not in cfg:
            raise ConfigError("--graph file needs --edge-file")
        g = read_edge_list(cfg["edge_file"])
        io = _pair(cfg["io"], _int, "io") if "io" in cfg else (0, g.n - 1)
        return g, io
    if "n" not in cfg:
        raise ConfigError("--n is required")
    n = _int(cfg["n"], "n")
    if kind == "theta":
        if "l" not in cfg:
            raise ConfigError("--graph theta needs --l")
        l = _int(cfg["l"], "l")
        g = theta(l, n)
        io = _pair(cfg["io"], _int, "io") if "io" in cfg else antipodes(l, n)
        return g, io
    io = _pair(cfg["io"], _int, "io") if "io" in cfg else (0, n - 1)
    if kind == "kn":
        return complete(n), io
    if kind == "knm":
        return complete_minus_edge(n, *io), io
    if kind == "path":
        return path(n), io
    raise ConfigError(f"--graph: unknown family {kind!r}")


def _check_io(g, io):
    for v in io:
        if not 0 <= v < g.n:
            raise ConfigError(f"--io vertex {v} out of range for a {g.n}-vertex graph")


def run_fidelity(cfg):
    g, io = graph_from_config(cfg)
    _check_io(g, io)
    shifts = _shifts(cfg, io)
    grid = time_grid(_float(cfg.get("tmax", 10.0), "tmax"), _int(cfg.get("steps", 2000), "steps"))
    es = eigendecompose(build(g, shifts))
    return fidelity_trace(es, io[0], io[1], grid).to_csv()


def run_pst(cfg):
    g, io = graph_from_config(cfg)
    _check_io(g, io)
    shifts = _shifts(cfg, io)
    if "window" in cfg:
        window = _pair(cfg["window"], _float, "window")
    else:
        window = (0.0, _float(cfg.get("tmax", 10.0), "tmax"))
    points = _int(cfg.get("steps", search.DEFAULT_GRID_POINTS), "steps")
    threshold = _float(cfg.get("pst_threshold", search.TABLE_THRESHOLD), "pst-threshold")
    es = eigendecompose(build(g, shifts))
    r = search.maximize_fidelity(es, io[0], io[1], window, points, threshold)
    return (
        "i,j,tStar,fMax,isPst,gridPoints,windowStart,windowEnd\n"
        f"{io[0]},{io[1]},{r.t_star:.17g},{r.f_max:.17g},{str(r.is_pst).lower()},"
        f"{r.grid_points},{r.window[0]:.17g},{r.window[1]:.17g}\n"
    )


def _table_options(cfg):
    return dict(
        pst_threshold=_float(cfg.get("pst_threshold", search.TABLE_THRESHOLD), "pst-threshold"),
        window_cap=_float(cfg["window_cap"], "window-cap") if "window_cap" in cfg else None,
        grid_points=_int(cfg.get("grid_points", search.DEFAULT_GRID_POINTS), "grid-points"),
        threads=_threads(cfg),
    )


def run_table_chains(cfg):
    shifts = _list(cfg.get("shifts", "10,20,30,40,50"), _float, "shifts")
    sizes = _list(cfg.get("sizes", "2,3,4,5"), _int, "sizes")
    return search.table_csv(search.chain_table(shifts, sizes, **_table_options(cfg)))


def run_table_theta(cfg):
    shifts = _list(cfg.get("shifts", str(search.THETA_TABLE_SHIFT)), _float, "shifts")
    ls = _list(cfg.get("l", "1,2,3,4"), _int, "l")
    sizes = _list(cfg.get("sizes", "3,4,5"), _int, "sizes")
    rows = []
    for dE in shifts:
        rows += search.theta_table(ls, sizes, dE, **_table_options(cfg))
    return search.table_csv(rows)


def run_noise(cfg):
    g, io = graph_from_config(cfg)
    _check_io(g, io)
    mode = cfg.get("mode", "vertex")
    if mode not in ("vertex", "edge"):
        raise ConfigError(f"--mode: expected vertex or edge, got {mode!r}")
    grid = _sigma2(cfg.get("sigma2", "0:2:21"))
    samples = _int(cfg.get("samples", 2000), "samples")
    seed = _int(cfg.get("seed", 0), "seed")
    threads = _threads(cfg)
    if "t_eval" in cfg:
        res = average_fidelity_sweep(
            g, _shifts(cfg, io), io[0], io[1], NoiseMode(mode), grid, samples,
            _float(cfg["t_eval"], "t-eval"), seed, threads, shifted=bool(_shifts(cfg, io)),
        )  # fmt: skip
        return sweep_csv([res])
    if cfg.get("graph") not in ("kn", "knm"):
        raise ConfigError("noise without --t-eval needs --graph kn or knm")
    pair = shifted_vs_unshifted_comparison(g, io[0], io[1], NoiseMode(mode), grid, samples, seed, threads)
    return sweep_csv(list(pair))


def run_verify(cfg):
    families = [Family(f) for f in _list(cfg.get("families", "kn,knm"), lambda x, _: str(x).strip(), "families")]
    sizes = _int_range(cfg.get("n", "4..12"), "n")
    seed = _int(cfg.get("seed", 0), "seed")
    rows = verify.verify(families, sizes, seed=seed)
    return verify.report_csv(rows)


def run_hamiltonian(cfg):
    g, io = graph_from_config(cfg)
    _check_io(g, io)
    return build(g, _shifts(cfg, io)).to_csv()


HANDLERS = {
    "fidelity": run_fidelity,
    "pst": run_pst,
    "table chains": run_table_chains,
    "table theta": run_table_theta,
    "noise": run_noise,
    "verify": run_verify,
    "hamiltonian": run_hamiltonian,
}


def sidecar_path(out) -> Path:
    p = Path(out)
    return p.with_name(p.stem + ".meta.json")


def run(cfg: dict) -> str:
    return HANDLERS[cfg["command"]](cfg)


def main(argv=None) -> int:
    parser, ns = _parse_args(argv)
    try:
        cfg = effective_config(ns)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"qstnet: error: {exc}", file=sys.stderr)
        return 2

    started = time.time()
    try:
        data = run(cfg)
    except ConfigError as exc:
        print(f"qstnet: error: {exc}", file=sys.stderr)
        return 2
    except (QstError, ValueError, OSError) as exc:
        print(f"qstnet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    if "out" not in cfg:
        sys.stdout.write(data)
        return 0
    out = Path(cfg["out"])
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(data)
    meta = {
        "config": cfg,
        "tool": "qstnet",
        "version": __version__,
        "kernel_backend": BACKEND,
        "started_at": _dt.datetime.fromtimestamp(started, _dt.timezone.utc).isoformat(),
        "wall_clock_seconds": time.time() - started,
        "output": str(out),
    }
    sidecar_path(out).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
