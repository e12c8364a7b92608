"""Command-line surface: config validation, pipeline dispatch, atomic
CSV/JSON/SVG emission, the admissibility-region contour, and an optional
content-addressed result cache (env BARRIER_SPECTRA_CACHE).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .errors import BarrierSpectraError, ValidationError
from .jacobi_barrier import (Branch, DiscreteBarrier, discrete_spectrum,
                             k_from_z)
from .lt_functionals import SumSpec, scan_continuous, scan_discrete
from .schrodinger_barrier import (ContinuousBarrier, SeedWindow, admissible,
                                  char_residual, char_scale,
                                  continuous_spectrum, solve_char_direct)
from . import asymptotics as asym

FORMATS = ("csv", "json", "svg")


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict
    output_dir: Path
    formats: tuple = ("csv", "json")


@dataclass
class ResultEnvelope:
    config_echo: dict
    tool_version: str
    wall_time_seconds: float
    rows: list
    eigenpoints: list
    certification_summary: list
    error: str | None = None

    def to_dict(self):
        return {
            "config_echo": self.config_echo,
            "tool_version": self.tool_version,
            "wall_time_seconds": self.wall_time_seconds,
            "rows": self.rows,
            "eigenpoints": self.eigenpoints,
            "certification_summary": self.certification_summary,
            "error": self.error,
        }


def atomic_write_text(path: Path, text: str):
    """Write via a temp file in the same directory plus rename, so an
    interrupted run leaves no partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, header, rows):
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    atomic_write_text(path, buf.getvalue())


# ---------------------------------------------------------------------------
# admissibility region contour


def emit_region_contour(n: int, branch: Branch, grid: int = 512):
    """Zero-level polylines of |z^(n+1) -/+ 1| - |z^n -/+ z| over the square
    [-1.3,1.3]^2 (marching squares); the sublevel set is where disk roots
    become eigenvalues. Returns a list of complex polylines."""
    if grid < 256:
        raise ValueError("grid must be at least 256")
    from skimage import measure

    s = -1.0 if branch is Branch.MINUS else 1.0
    xs = np.linspace(-1.3, 1.3, grid)
    ys = np.linspace(-1.3, 1.3, grid)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    Z = X + 1j * Y
    g = np.abs(Z ** (n + 1) + s) - np.abs(Z ** n + s * Z)
    contours = measure.find_contours(g, 0.0)
    dx = xs[1] - xs[0]
    dy = ys[1] - ys[0]
    polylines = []
    for c in contours:
        polylines.append((xs[0] + c[:, 0] * dx) + 1j * (ys[0] + c[:, 1] * dy))
    return polylines


def region_contains(polylines, z: complex) -> bool:
    """Even-odd containment of z in the union of contour polygons."""
    from matplotlib.path import Path as MplPath

    point = (z.real, z.imag)
    inside = False
    for poly in polylines:
        verts = np.column_stack([poly.real, poly.imag])
        if len(verts) < 3:
            continue
        if MplPath(verts, closed=True).contains_point(point):
            inside = not inside
    return inside


# ---------------------------------------------------------------------------
# figures


def _render_figure1(op: DiscreteBarrier, spectrum, path: Path, grid=512):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(15, 5))
    admissible_z = {Branch.MINUS: [], Branch.PLUS: []}
    for ep in spectrum:
        admissible_z[ep.branch].append(ep.z)

    from .jacobi_barrier import branch_disk_roots

    for ax, branch in zip(axes[:2], (Branch.MINUS, Branch.PLUS)):
        xs = np.linspace(-1.15, 1.15, grid)
        ys = np.linspace(0.0, 1.15, grid)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        Z = X + 1j * Y
        s = -1.0 if branch is Branch.MINUS else 1.0
        g = np.abs(Z ** (op.n + 1) + s) - np.abs(Z ** op.n + s * Z)
        ax.contourf(X, Y, np.where(g < 0, 1.0, 0.0), levels=[0.5, 1.5],
                    colors=["#cccccc"])
        theta = np.linspace(0, np.pi, 200)
        ax.plot(np.cos(theta), np.sin(theta), "k:", lw=0.7)
        disk, circle = branch_disk_roots(op, branch)
        ins, outs = [], []
        for z in disk:
            if z.imag <= 0:
                continue
            if abs(k_from_z(z, op.n, branch)) < 1:
                ins.append(z)
            else:
                outs.append(z)
        if ins:
            ax.plot([z.real for z in ins], [z.imag for z in ins], "r.", ms=6)
        if outs:
            ax.plot([z.real for z in outs], [z.imag for z in outs], "b.", ms=6)
        ax.set_title(f"{branch.value} branch roots, upper z-plane")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        ax.set_aspect("equal")

    ax = axes[2]
    for branch, style, color in ((Branch.MINUS, "o", "black"),
                                 (Branch.PLUS, "s", "orange")):
        pts = [ep.lam for ep in spectrum if ep.branch is branch]
        if pts:
            ax.scatter([p.real for p in pts], [p.imag for p in pts],
                       marker=style, c=color, s=25,
                       label=f"{branch.value} branch")
    ax.plot([-2, 2], [0, 0], "k-", lw=1)
    ax.set_xlabel("Re lambda")
    ax.set_ylabel("Im lambda")
    ax.set_title(f"spectrum, n={op.n}, h={op.h}")
    ax.legend()
    fig.tight_layout()
    _save_svg_atomic(fig, path)
    plt.close(fig)


def _render_figure2(h: float, lams, path: Path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(9, 5))
    ax.scatter([l.real for l in lams], [l.imag for l in lams], s=8, c="black")
    ax.set_xlabel("Re lambda")
    ax.set_ylabel("Im lambda")
    ax.set_title(f"eigenvalues of the continuous barrier, h={h}")
    fig.tight_layout()
    _save_svg_atomic(fig, path)
    plt.close(fig)


def default_mu_region(h: float) -> tuple[float, float, float, float]:
    """Default mu search region covering the full admissible root band at
    coupling h, with padding.

    The decaying-tail condition caps Im mu near the solution t of
    t e^t = sqrt(h), and the corresponding |Re mu| near sqrt(h) e^t / 2;
    the region extends 15 percent beyond both caps.
    """
    import scipy.special

    t_cap = float(scipy.special.lambertw(math.sqrt(h)).real)
    re_cap = 0.5 * math.sqrt(h) * math.exp(t_cap)
    return (-1.15 * re_cap - 2 * math.pi, -0.5, -1.0, t_cap + 1.0)


def _save_svg_atomic(fig, path: Path):
    import io

    buf = io.StringIO()
    fig.savefig(buf, format="svg")
    atomic_write_text(path, buf.getvalue())


# ---------------------------------------------------------------------------
# command schemas and pipelines

_SCHEMAS = {
    "jacobi-spectrum": {"n": int, "h": float, "tol": float},
    "schrodinger-spectrum": {"h": float, "alpha": float, "beta": float,
                             "gamma": float, "tol": float},
    "lt-scan-discrete": {"p": float, "omega": float, "sigma": float,
                         "tau": float, "n_list": list},
    "lt-scan-continuous": {"p": float, "sigma": float, "h_list": list,
                           "alpha": float, "beta": float, "gamma": float},
    "asymptotics-check": {"n_list": list},
    "figure1": {"n": int, "h": float},
    "figure2": {"h": float, "re_min": float, "re_max": float,
                "im_min": float, "im_max": float, "tol": float},
}

_REQUIRED = {
    "jacobi-spectrum": {"n", "h"},
    "schrodinger-spectrum": {"h"},
    "lt-scan-discrete": {"p", "n_list"},
    "lt-scan-continuous": {"p", "sigma", "h_list"},
    "asymptotics-check": {"n_list"},
    "figure1": {"n", "h"},
    "figure2": {"h"},
}


def validate_config(config: RunConfig) -> dict:
    if config.command not in _SCHEMAS:
        raise ValidationError(f"unknown command {config.command!r}")
    schema = _SCHEMAS[config.command]
    unknown = set(config.parameters) - set(schema)
    if unknown:
        raise ValidationError(f"unknown parameters {sorted(unknown)}")
    missing = _REQUIRED[config.command] - set(config.parameters)
    if missing:
        raise ValidationError(f"missing parameters {sorted(missing)}")
    bad = [fmt for fmt in config.formats if fmt not in FORMATS]
    if bad:
        raise ValidationError(f"unknown formats {bad}")
    params = {}
    for name, value in config.parameters.items():
        want = schema[name]
        try:
            if want is list:
                params[name] = [float(v) for v in value]
            else:
                params[name] = want(value)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"parameter {name}: {exc}") from exc
    return params


def _window_from(params) -> SeedWindow:
    return SeedWindow(alpha=params.get("alpha", 0.15),
                      beta=params.get("beta", 0.40),
                      gamma=params.get("gamma", 0.25))


def run(config: RunConfig) -> ResultEnvelope:
    """Validate, optionally serve from cache, dispatch, and write outputs.

    Raises ValidationError before any computation on a bad config;
    computational failures are recorded in the envelope and re-raised by
    ``main`` with exit status 2.
    """
    params = validate_config(config)
    t0 = time.monotonic()
    out = Path(config.output_dir)

    cached = _cache_lookup(config.command, params)
    if cached is not None:
        envelope = ResultEnvelope(**cached)
    else:
        envelope = _dispatch(config, params, out)
        envelope.wall_time_seconds = time.monotonic() - t0
        _cache_store(config.command, params, envelope)

    if "json" in config.formats:
        atomic_write_text(out / f"{config.command}.json",
                          json.dumps(envelope.to_dict(), indent=2) + "\n")
    return envelope


def _dispatch(config, params, out) -> ResultEnvelope:
    cert = []
    rows = []
    eigenpoints = []
    command = config.command

    if command == "jacobi-spectrum":
        op = DiscreteBarrier(n=params["n"], h=params["h"])
        spectrum = discrete_spectrum(op, tol=params.get("tol", 1e-12))
        for ep in spectrum:
            eigenpoints.append({
                "re_z": ep.z.real, "im_z": ep.z.imag,
                "re_k": ep.k.real, "im_k": ep.k.imag,
                "re_lambda": ep.lam.real, "im_lambda": ep.lam.imag,
                "branch": ep.branch.value, "bs_residual": ep.bs_residual})
        worst = max((ep.bs_residual for ep in spectrum), default=0.0)
        cert.append({"check": "birman_schwinger_residual",
                     "worst_residual": worst})
        if "csv" in config.formats:
            write_csv(out / "jacobi-spectrum.csv",
                      ["re_z", "im_z", "re_k", "im_k", "re_lambda",
                       "im_lambda", "branch", "bs_residual"],
                      [[repr(e["re_z"]), repr(e["im_z"]), repr(e["re_k"]),
                        repr(e["im_k"]), repr(e["re_lambda"]),
                        repr(e["im_lambda"]), e["branch"],
                        repr(e["bs_residual"])] for e in eigenpoints])

    elif command == "schrodinger-spectrum":
        op = ContinuousBarrier(h=params["h"])
        spectrum = continuous_spectrum(op, _window_from(params),
                                       tol=params.get("tol", 1e-9))
        for ep in spectrum:
            eigenpoints.append({
                "j": ep.j, "re_mu": ep.mu.real, "im_mu": ep.mu.imag,
                "re_k": ep.k.real, "im_k": ep.k.imag,
                "re_lambda": ep.lam.real, "im_lambda": ep.lam.imag,
                "residual": ep.residual})
        worst = max((ep.residual for ep in spectrum), default=0.0)
        cert.append({"check": "characteristic_residual",
                     "worst_residual": worst})
        cert.append({"check": "argument_principle_count",
                     "worst_residual": 0.0})
        if "csv" in config.formats:
            write_csv(out / "schrodinger-spectrum.csv",
                      ["j", "re_mu", "im_mu", "re_k", "im_k", "re_lambda",
                       "im_lambda", "residual"],
                      [[e["j"], repr(e["re_mu"]), repr(e["im_mu"]),
                        repr(e["re_k"]), repr(e["im_k"]),
                        repr(e["re_lambda"]), repr(e["im_lambda"]),
                        repr(e["residual"])] for e in eigenpoints])

    elif command == "lt-scan-discrete":
        mode = SumSpec(p=params["p"], omega=params.get("omega"),
                       sigma=params.get("sigma"), tau=params.get("tau"))
        scan = scan_discrete(params["p"], mode,
                             [int(n) for n in params["n_list"]])
        rows = [_scanrow_dict(r) for r in scan]
        cert.append({"check": "scan_errors",
                     "worst_residual": float(sum(r.error is not None
                                                 for r in scan))})
        if "csv" in config.formats:
            write_csv(out / "lt-scan-discrete.csv",
                      ["n", "norm", "raw_sum", "scaled_sum", "eigencount"],
                      [[int(r.param), repr(r.norm_p), repr(r.raw_sum),
                        repr(r.scaled_sum), r.eigencount] for r in scan])

    elif command == "lt-scan-continuous":
        scan = scan_continuous(params["p"], params["sigma"],
                               params["h_list"], _window_from(params))
        rows = [_scanrow_dict(r) for r in scan]
        cert.append({"check": "scan_errors",
                     "worst_residual": float(sum(r.error is not None
                                                 for r in scan))})
        if "csv" in config.formats:
            write_csv(out / "lt-scan-continuous.csv",
                      ["h", "norm", "raw_sum", "scaled_sum", "eigencount"],
                      [[repr(r.param), repr(r.norm_p), repr(r.raw_sum),
                        repr(r.scaled_sum), r.eigencount] for r in scan])

    elif command == "asymptotics-check":
        worst = 0.0
        for n in [int(v) for v in params["n_list"]]:
            op = DiscreteBarrier(n=n, h=n ** (-2.0 / 3.0))
            spectrum = discrete_spectrum(op)
            preds = asym.predict_window(n)
            for j, lam, err in asym.match_and_measure(preds, spectrum):
                rows.append({"n": n, "j": j,
                             "re_lambda": lam.real, "im_lambda": lam.imag,
                             "abs_error": err})
                worst = max(worst, err)
        cert.append({"check": "prediction_match_error",
                     "worst_residual": worst})
        if "csv" in config.formats:
            write_csv(out / "asymptotics-check.csv",
                      ["n", "j", "re_lambda", "im_lambda", "abs_error"],
                      [[r["n"], r["j"], repr(r["re_lambda"]),
                        repr(r["im_lambda"]), repr(r["abs_error"])]
                       for r in rows])

    elif command == "figure1":
        op = DiscreteBarrier(n=params["n"], h=params["h"])
        spectrum = discrete_spectrum(op)
        worst = max((ep.bs_residual for ep in spectrum), default=0.0)
        cert.append({"check": "birman_schwinger_residual",
                     "worst_residual": worst})
        eigenpoints = [{"re_lambda": ep.lam.real, "im_lambda": ep.lam.imag,
                        "branch": ep.branch.value} for ep in spectrum]
        if "svg" in config.formats:
            _render_figure1(op, spectrum, out / "figure1.svg")

    elif command == "figure2":
        h = params["h"]
        d_re_lo, d_re_hi, d_im_lo, d_im_hi = default_mu_region(h)
        re_range = (params.get("re_min", d_re_lo),
                    params.get("re_max", d_re_hi))
        im_range = (params.get("im_min", d_im_lo),
                    params.get("im_max", d_im_hi))
        tol = params.get("tol", 1e-9)
        # the full equation, not just the seeded branch: both root families
        # contribute eigenvalues at this scale
        grid = (max(60, int((re_range[1] - re_range[0]) / 1.5)), 40)
        mus = solve_char_direct(h, re_range, im_range, grid=grid, tol=tol)
        worst = 0.0
        lams = []
        for mu in mus:
            if not admissible(mu):
                continue
            lams.append(mu * mu + 1j * h)
            worst = max(worst, abs(char_residual(mu, h))
                        / float(char_scale(mu, h)))
            eigenpoints.append({
                "re_mu": mu.real, "im_mu": mu.imag,
                "re_lambda": lams[-1].real, "im_lambda": lams[-1].imag})
        cert.append({"check": "characteristic_residual",
                     "worst_residual": worst})
        if "svg" in config.formats:
            _render_figure2(h, lams, out / "figure2.svg")

    echo = {"command": command, "parameters": params,
            "output_dir": str(config.output_dir),
            "formats": list(config.formats)}
    return ResultEnvelope(config_echo=echo, tool_version=__version__,
                          wall_time_seconds=0.0, rows=rows,
                          eigenpoints=eigenpoints,
                          certification_summary=cert)


def _scanrow_dict(r):
    return {"param": r.param, "norm_p": r.norm_p, "raw_sum": r.raw_sum,
            "scaled_sum": r.scaled_sum, "eigencount": r.eigencount,
            "error": r.error}


# ---------------------------------------------------------------------------
# optional cache


def _cache_dir():
    path = os.environ.get("BARRIER_SPECTRA_CACHE")
    return Path(path) if path else None


def _cache_key(command, params):
    blob = json.dumps({"command": command, "parameters": params,
                       "tool_version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_lookup(command, params):
    cdir = _cache_dir()
    if cdir is None:
        return None
    path = cdir / f"{_cache_key(command, params)}.json"
    if not path.exists():
        return None
    data = json.loads(path.read_text())
    return data


def _cache_store(command, params, envelope: ResultEnvelope):
    cdir = _cache_dir()
    if cdir is None:
        return
    cdir.mkdir(parents=True, exist_ok=True)
    path = cdir / f"{_cache_key(command, params)}.json"
    atomic_write_text(path, json.dumps(envelope.to_dict()))


# ---------------------------------------------------------------------------
# argparse front end


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="barrier-spectra",
        description="Spectra and Lieb-Thirring functionals of rectangular "
                    "barrier operators with imaginary coupling")
    parser.add_argument("command", choices=sorted(_SCHEMAS))
    parser.add_argument("--n", type=int)
    parser.add_argument("--h", type=float)
    parser.add_argument("--p", type=float)
    parser.add_argument("--omega", type=float)
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--tau", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--re-min", type=float)
    parser.add_argument("--re-max", type=float)
    parser.add_argument("--im-min", type=float)
    parser.add_argument("--im-max", type=float)
    parser.add_argument("--n-list", type=str,
                        help="comma-separated barrier lengths")
    parser.add_argument("--h-list", type=str,
                        help="comma-separated coupling strengths")
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--format", type=str, default="csv,json",
                        help="comma-separated subset of csv,json,svg")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    parameters = {}
    for name in ("n", "h", "p", "omega", "sigma", "tau", "tol",
                 "alpha", "beta", "gamma", "re_min", "re_max",
                 "im_min", "im_max"):
        value = getattr(args, name)
        if value is not None:
            parameters[name] = value
    if args.n_list:
        parameters["n_list"] = [float(v) for v in args.n_list.split(",")]
    if args.h_list:
        parameters["h_list"] = [float(v) for v in args.h_list.split(",")]
    config = RunConfig(command=args.command, parameters=parameters,
                       output_dir=args.out,
                       formats=tuple(args.format.split(",")))
    try:
        run(config)
    except (ValidationError, ValueError) as exc:
        # ValueError covers domain checks in the operator constructors
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except BarrierSpectraError as exc:
        # serialize the failure so the run leaves a record, then signal it
        envelope = ResultEnvelope(
            config_echo={"command": args.command, "parameters": parameters},
            tool_version=__version__, wall_time_seconds=0.0, rows=[],
            eigenpoints=[], certification_summary=[], error=str(exc))
        atomic_write_text(Path(args.out) / f"{args.command}.json",
                          json.dumps(envelope.to_dict(), indent=2) + "\n")
        print(f"certification/computation failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
