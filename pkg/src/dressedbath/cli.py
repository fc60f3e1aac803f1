"""Command-line surface.

Subcommands ``spectrum | decay | brownian | cavity | validate`` wrap the
library modules and emit CSV with a ``#``-prefixed metadata header, 17
significant digits throughout so every float round-trips exactly.  Exit
codes: 0 success, 1 input error, 2 numerical failure, 3 validation
failure.

Config files are flat UTF-8 ``key=value`` lines with ``#`` comments;
command-line flags override file values.  Exactly one of {g, beta} and
one of {cavity_L, delta} must be given.  The ``DRESSED_THREADS``
environment variable caps worker threads; chunking is fixed-size so the
output bytes never depend on the thread count.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import amplitudes as _amp
from . import brownian as _brownian
from . import oracle as _oracle
from . import spectrum as _spectrum
from . import transform as _transform
from .errors import (
    DimensionMismatch,
    InputError,
    NumericalFailure,
    OverflowGuardError,
    ParameterError,
    SingularityError,
    StabilityError,
)
from .model import LIGHT_SPEED_SI, OhmicSystemSpec, classify_regime, derive_parameters

_FLOAT_KEYS = frozenset(
    {"bar_omega", "g", "beta", "cavity_L", "delta", "light_speed", "hbar",
     "t_max", "n_bar", "theta"}
)
_INT_KEYS = frozenset({"n_modes", "samples", "k_max"})
_CHOICE_KEYS = {
    "route": ("finite-n", "cavity", "small-l"),
    "method": ("discrete", "closed", "quadrature"),
    "regime": ("weak", "strong"),
    "eq11_variant": ("paper", "rederived"),
    "out": None,
}
_ALL_KEYS = tuple(sorted(_FLOAT_KEYS | _INT_KEYS | set(_CHOICE_KEYS)))

_TIME_CHUNK = 64  # fixed so output never depends on DRESSED_THREADS


# ---------------------------------------------------------------------------
# config handling
# ---------------------------------------------------------------------------

def _coerce(key: str, raw: str):
    if key in _FLOAT_KEYS:
        try:
            value = float(raw)
        except ValueError:
            raise InputError(f"key {key} expects a number, got {raw!r}") from None
        if not math.isfinite(value):
            raise InputError(f"key {key} must be finite, got {raw!r}")
        return value
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"key {key} expects an integer, got {raw!r}") from None
    if key in _CHOICE_KEYS:
        choices = _CHOICE_KEYS[key]
        if choices is not None and raw not in choices:
            raise InputError(
                f"key {key} must be one of {', '.join(choices)}; got {raw!r}"
            )
        return raw
    raise InputError(f"unknown config key: {key}")


def load_config(path: str) -> dict:
    """Parse a flat key=value config file (``#`` starts a comment)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    cfg: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        cfg[key.strip()] = _coerce(key.strip(), raw.strip())
    return cfg


def resolve_config(args: argparse.Namespace) -> dict:
    """File config overlaid with any explicitly given flags."""
    cfg = load_config(args.config) if args.config else {}
    for key in _ALL_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    for key, value in cfg.items():
        if key in _FLOAT_KEYS and not math.isfinite(value):
            raise InputError(f"key {key} must be finite, got {value!r}")
    return cfg


def build_spec(cfg: dict) -> OhmicSystemSpec:
    if "bar_omega" not in cfg:
        raise InputError("missing required key: bar_omega")
    bar_omega = cfg["bar_omega"]
    has_g, has_beta = "g" in cfg, "beta" in cfg
    if has_g == has_beta:
        raise InputError("exactly one of {g, beta} is required")
    has_length, has_delta = "cavity_L" in cfg, "delta" in cfg
    if has_length == has_delta:
        raise InputError("exactly one of {cavity_L, delta} is required")
    light_speed = cfg.get("light_speed", LIGHT_SPEED_SI)
    g = cfg["g"] if has_g else cfg["beta"] * bar_omega
    if g <= 0.0:
        raise InputError("g (or beta * bar_omega) must be positive")
    cavity_L = cfg["cavity_L"] if has_length else 2.0 * light_speed * cfg["delta"] / g
    return OhmicSystemSpec(
        bar_omega=bar_omega,
        g=g,
        cavity_L=cavity_L,
        n_modes=cfg.get("n_modes", 1),
        light_speed=light_speed,
        hbar=cfg.get("hbar", 1.0),
    )


def _time_grid(cfg: dict, spec: OhmicSystemSpec) -> np.ndarray:
    t_max = cfg.get("t_max", 50.0 / spec.bar_omega)
    samples = cfg.get("samples", 200)
    if t_max <= 0.0:
        raise InputError(f"t_max must be positive, got {t_max!r}")
    if samples < 2:
        raise InputError(f"samples must be at least 2, got {samples!r}")
    return np.linspace(0.0, t_max, samples)


def _thread_count() -> int:
    raw = os.environ.get("DRESSED_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"DRESSED_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(n, 64))


def _chunked_values(fn, times: np.ndarray, threads: int) -> np.ndarray:
    chunks = [times[i : i + _TIME_CHUNK] for i in range(0, times.size, _TIME_CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(fn, chunks))
    else:
        parts = [fn(chunk) for chunk in chunks]
    return np.concatenate(parts)


# ---------------------------------------------------------------------------
# output format
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _metadata(command: str, spec: OhmicSystemSpec, extras) -> list:
    d = derive_parameters(spec)
    regime = classify_regime(spec)
    lines = [
        f"# dressedbath {__version__}",
        f"# command: {command}",
        "# spec: "
        f"bar_omega={spec.bar_omega:.17g} g={spec.g:.17g} "
        f"cavity_L={spec.cavity_L:.17g} n_modes={spec.n_modes} "
        f"light_speed={spec.light_speed:.17g} hbar={spec.hbar:.17g}",
        f"# derived: beta={d.beta:.17g} delta={d.delta:.17g} "
        f"regime={regime.kind.value}",
    ]
    lines.extend(f"# {key}: {value}" for key, value in extras)
    return lines


def spec_from_metadata(text: str) -> OhmicSystemSpec:
    """Rebuild the exact resolved spec from an emitted metadata header."""
    for line in text.splitlines():
        if line.startswith("# spec: "):
            fields = dict(
                item.split("=", 1) for item in line[len("# spec: ") :].split()
            )
            return OhmicSystemSpec(
                bar_omega=float(fields["bar_omega"]),
                g=float(fields["g"]),
                cavity_L=float(fields["cavity_L"]),
                n_modes=int(fields["n_modes"]),
                light_speed=float(fields["light_speed"]),
                hbar=float(fields["hbar"]),
            )
    raise InputError("no spec line found in metadata")


def _document(meta_lines, rows) -> str:
    body = [",".join(_fmt(value) for value in row) for row in rows]
    return "\n".join(meta_lines + body) + "\n"


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    spec = build_spec(cfg)
    route = cfg.get("route", "finite-n")
    k_max = cfg.get("k_max", 100)
    extras = [("route", route)]
    if route == "finite-n":
        modes = _spectrum.solve_finite_spectrum(spec)
        freqs, weights = modes.frequencies, modes.weights
    elif route == "cavity":
        variant = cfg.get("eq11_variant", "paper")
        modes = _spectrum.solve_cavity_spectrum(spec, k_max=k_max, variant=variant)
        freqs, weights = modes.frequencies, modes.weights
        extras += [("k_max", k_max), ("eq11_variant", variant)]
    else:
        regime = cfg.get("regime", "weak")
        approx = _spectrum.approx_small_L_spectrum(spec, k_max=k_max)
        freqs = approx.frequencies()
        w0, ladder = _transform.small_L_weights(spec, regime, k_max)
        weights = np.concatenate(([w0], ladder))
        extras += [("k_max", k_max), ("regime", regime)]
    extras.append(("columns", "r,omega,weight"))
    rows = [(r, freqs[r], weights[r]) for r in range(freqs.size)]
    _emit(_document(_metadata("spectrum", spec, extras), rows), cfg.get("out"))
    return 0


def cmd_decay(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    spec = build_spec(cfg)
    method = cfg.get("method", "closed")
    times = _time_grid(cfg, spec)
    if method == "closed":
        fn = lambda ts: _amp.f00_closed(spec, ts).values
    elif method == "quadrature":
        fn = lambda ts: _amp.f00_quadrature(spec, ts).values
    else:
        modes = _spectrum.solve_finite_spectrum(spec)
        fn = lambda ts: _amp.f00_discrete(modes, modes.weights, ts).values
    values = _chunked_values(fn, times, _thread_count())
    extras = [
        ("method", method),
        ("grid", f"t_max={times[-1]:.17g} samples={times.size}"),
        ("columns", "t,re_f00,im_f00,prob"),
    ]
    rows = [
        (t, v.real, v.imag, v.real**2 + v.imag**2)
        for t, v in zip(times, values)
    ]
    _emit(_document(_metadata("decay", spec, extras), rows), cfg.get("out"))
    return 0


def cmd_brownian(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    spec = build_spec(cfg)
    prep = _brownian.CoherentPreparation(
        n_bar=cfg.get("n_bar", 1.0), theta=cfg.get("theta", 0.0)
    )
    method = cfg.get("method", "closed")
    times = _time_grid(cfg, spec)
    if method == "closed":
        fn = lambda ts: _brownian.path_closed_forms(spec, prep, ts)
    elif method == "quadrature":
        fn = lambda ts: _brownian.classical_path(
            spec, prep, ts, _amp.f00_quadrature(spec, ts)
        )
    else:
        modes = _spectrum.solve_finite_spectrum(spec)
        fn = lambda ts: _brownian.classical_path(
            spec, prep, ts, _amp.f00_discrete(modes, modes.weights, ts)
        )
    positions = _chunked_values(fn, times, _thread_count())
    extras = [
        ("method", method),
        ("preparation", f"n_bar={prep.n_bar:.17g} theta={prep.theta:.17g}"),
        ("grid", f"t_max={times[-1]:.17g} samples={times.size}"),
        ("columns", "t,position"),
    ]
    rows = list(zip(times, positions))
    _emit(_document(_metadata("brownian", spec, extras), rows), cfg.get("out"))
    return 0


def cmd_cavity(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    spec = build_spec(cfg)
    regime = cfg.get("regime", "weak")
    variant = cfg.get("eq11_variant", "paper")
    k_max = cfg.get("k_max", 2000)
    times = _time_grid(cfg, spec)
    modes = _spectrum.solve_cavity_spectrum(spec, k_max=k_max, variant=variant)
    curve = _amp.cavity_survival_series(
        (modes.weights[0], modes.weights[1:]), modes.frequencies, times
    )
    d = derive_parameters(spec)
    bound = _amp.cavity_min_bound(d.delta, regime)
    extras = [
        ("regime", regime),
        ("k_max", k_max),
        ("eq11_variant", variant),
        ("grid", f"t_max={times[-1]:.17g} samples={times.size}"),
        ("summary", f"grid_min={curve.min():.17g}"),
        ("summary", f"analytic_min_bound={bound.min_probability:.17g}"),
    ]
    if regime == "strong":
        delta_max = _amp.solve_delta_max("strong")
        length_max = 2.0 * spec.light_speed * delta_max / spec.g
        extras += [
            ("summary", f"delta_max={delta_max:.17g}"),
            ("summary", f"L_max={length_max:.17g}"),
        ]
        if d.delta > delta_max:
            extras.append(("summary", "unphysical: exceeds delta_max"))
    extras.append(("columns", "t,prob"))
    rows = list(zip(times, curve))
    _emit(_document(_metadata("cavity", spec, extras), rows), cfg.get("out"))
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    cfg.setdefault("bar_omega", 1.0)
    if "g" not in cfg and "beta" not in cfg:
        cfg["beta"] = 0.3
    if "cavity_L" not in cfg and "delta" not in cfg:
        cfg["delta"] = 0.05
    cfg.setdefault("n_modes", 8)
    cfg.setdefault("light_speed", 1.0)
    spec = build_spec(cfg)
    report = _oracle.cross_validate(spec)
    _emit(report.to_text(), cfg.get("out"))
    return 0 if report.all_passed else 3


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value config file")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--bar-omega", dest="bar_omega", type=float)
    common.add_argument("--g", dest="g", type=float)
    common.add_argument("--beta", dest="beta", type=float)
    common.add_argument("--cavity-L", dest="cavity_L", type=float)
    common.add_argument("--delta", dest="delta", type=float)
    common.add_argument("--light-speed", dest="light_speed", type=float)
    common.add_argument("--n-modes", dest="n_modes", type=int)
    common.add_argument("--hbar", dest="hbar", type=float)
    common.add_argument("--t-max", dest="t_max", type=float)
    common.add_argument("--samples", dest="samples", type=int)
    common.add_argument("--k-max", dest="k_max", type=int)
    common.add_argument("--n-bar", dest="n_bar", type=float)
    common.add_argument("--theta", dest="theta", type=float)
    common.add_argument("--route", choices=_CHOICE_KEYS["route"])
    common.add_argument("--method", choices=_CHOICE_KEYS["method"])
    common.add_argument("--regime", choices=_CHOICE_KEYS["regime"])
    common.add_argument(
        "--eq11-variant", dest="eq11_variant", choices=_CHOICE_KEYS["eq11_variant"]
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dressedbath",
        description="Normal-mode spectra, decay amplitudes, Brownian paths "
        "and cavity survival bounds for a harmonic particle in an ohmic bath.",
    )
    parser.add_argument(
        "--version", action="version", version=f"dressedbath {__version__}"
    )
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, text in (
        ("spectrum", cmd_spectrum, "mode frequencies and particle weights"),
        ("decay", cmd_decay, "survival amplitude f00(t) and probability"),
        ("brownian", cmd_brownian, "mean position of a displaced preparation"),
        ("cavity", cmd_cavity, "finite-cavity survival curve and bounds"),
        ("validate", cmd_validate, "cross-route consistency report"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (InputError, ParameterError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericalFailure, StabilityError, SingularityError,
            OverflowGuardError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
