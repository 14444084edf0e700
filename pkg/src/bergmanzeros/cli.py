"""Command-line front end.

Subcommands: moments, kernel, poly, zeros, zeromap, threshold, verify, sb.
Artifacts are JSON ({config, results, checks}) or CSV with a `#`-prefixed
config header; complex numbers serialize as {re, im} and rationals as
"p/q" strings, so exact data survives the round trip.  Outputs are
byte-stable for a fixed seed and config.  Commands that write delimited
files to an output directory render matplotlib figures alongside them.

Exit codes: 0 success, 1 any failed check or computation error, 2 usage
error (including weight-expression syntax).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import __version__, checks, kernels, starcalc, zeros
from . import plane as _plane
from . import weights as _weights
from .errors import KernelToolError, WeightExprError
from .wexpr import parse_weight

CONFIG_ENV_VAR = "BERGMANZEROS_CONFIG"


@dataclass
class RunConfig:
    """Validated run parameters; embedded verbatim in every artifact."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 200
    truncation: int = 256
    seed: int = 7
    parallel: int = 1
    format: str = "json"
    plot: bool = True

    def validate(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.truncation < 1:
            raise ValueError("truncation must be >= 1")
        if self.parallel < 1:
            raise ValueError("parallel width must be >= 1")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")

    def quadrature(self) -> _weights.QuadratureConfig:
        return _weights.QuadratureConfig(
            abs_tol=self.abs_tol,
            rel_tol=self.rel_tol,
            max_subdivisions=self.max_subdivisions,
        )

    def to_dict(self) -> dict:
        return {
            "version": __version__,
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
            "max_subdivisions": self.max_subdivisions,
            "truncation": self.truncation,
            "seed": self.seed,
            "parallel": self.parallel,
            "format": self.format,
            "plot": self.plot,
        }


def _config_from(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        data = json.loads(Path(env_path).read_text(encoding="utf-8"))
        known = {f.name for f in fields(RunConfig)}
        for key, value in data.items():
            if key in known:
                setattr(cfg, key, value)
    for name in ("abs_tol", "rel_tol", "max_subdivisions", "truncation", "seed", "parallel"):
        value = getattr(ns, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(ns, "format", None):
        cfg.format = ns.format
    if getattr(ns, "no_plot", False):
        cfg.plot = False
    cfg.validate()
    return cfg


# -- serialization helpers --------------------------------------------------


def _cjson(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _artifact(config: RunConfig, results, checks_list=None) -> dict:
    doc = {"config": config.to_dict(), "results": results}
    doc["checks"] = checks_list if checks_list is not None else []
    return doc


def _emit_json(doc: dict, out: Path | None) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def _emit_csv(
    header: list[str], rows: list[list], config: RunConfig, out: Path | None
) -> None:
    lines = [f"# {k}={v}" for k, v in config.to_dict().items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_csv_cell(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def _csv_cell(cell) -> str:
    if isinstance(cell, float):
        return repr(cell)
    return str(cell)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise WeightExprError(f"cannot parse complex number {text!r}", offset=0) from exc


def _parse_range(text: str) -> list[float]:
    """`a:b:step` with exact decimal stepping, inclusive of the endpoint."""
    parts = text.split(":")
    if len(parts) != 3:
        raise WeightExprError(f"range must be a:b:step, got {text!r}", offset=0)
    a, b, step = (Fraction(p) for p in parts)
    if step <= 0 or b < a:
        raise WeightExprError(f"bad range {text!r}: need a <= b and step > 0", offset=0)
    out = []
    v = a
    while v <= b:
        out.append(float(v))
        v += step
    return out


# -- subcommands ------------------------------------------------------------


def _cmd_moments(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    w = parse_weight(ns.weight).to_weight()
    seq = _weights.MomentSequence.compute(w, ns.max_n, cfg.quadrature())
    rows = [[n, seq.values[n], seq.provenance[n]] for n in range(seq.max_index + 1)]
    out = Path(ns.out) if ns.out else None
    outdir = Path(ns.outdir) if ns.outdir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
        target = outdir / f"moments.{cfg.format}"
    else:
        target = out
    if cfg.format == "csv":
        _emit_csv(["n", "moment", "provenance"], rows, cfg, target)
    else:
        results = {
            "weight": parse_weight(ns.weight).canonical(),
            "moments": [
                {"n": n, "value": v, "provenance": p} for n, v, p in rows
            ],
        }
        _emit_json(_artifact(cfg, results), target)
    if outdir and cfg.plot:
        from . import plotting

        plotting.render_moment_decay(
            [(n, v) for n, v, _ in rows],
            outdir / "moments.png",
            title=parse_weight(ns.weight).canonical(),
        )
    return 0


def _cmd_kernel(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    expr = parse_weight(ns.weight)
    w = expr.to_weight()
    zeta = _parse_complex(ns.zeta)
    result = kernels.evaluate_adaptive(
        w, zeta, tol=ns.tol, cfg=cfg.quadrature(), start_truncation=cfg.truncation
    )
    results = {
        "weight": expr.canonical(),
        "zeta": _cjson(zeta),
        "value": _cjson(result.value),
        "tail_bound": result.tail_bound,
        "terms_used": result.terms_used,
    }
    if kernels.has_closed_form(w):
        results["closed_form"] = _cjson(kernels.closed_form(w, zeta))
    _emit_json(_artifact(cfg, results), Path(ns.out) if ns.out else None)
    return 0


def _cmd_poly(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    numer = starcalc.star_numerator(ns.n)
    results: dict = {"level": ns.n, "alpha_polynomials": numer.to_json()}
    if ns.alpha is not None:
        alpha = Fraction(ns.alpha)
        if not alpha > -1:
            raise WeightExprError(f"alpha out of range: {alpha}", offset=0)
        values = numer.coefficients_at(alpha)
        results["alpha"] = str(alpha)
        results["evaluated"] = [str(v) for v in values]
    _emit_json(_artifact(cfg, results), Path(ns.out) if ns.out else None)
    return 0


def _cmd_zeros(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    expr = parse_weight(ns.weight)
    w = expr.to_weight()
    z = _parse_complex(ns.z)
    report = zeros.point_kernel_zeros(
        w, z, cfg.quadrature(), search_radius=ns.search_radius
    )
    results = {"weight": expr.canonical(), "z": _cjson(z), "report": report.to_json_dict()}
    _emit_json(_artifact(cfg, results), Path(ns.out) if ns.out else None)
    return 0


def _cmd_zeromap(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    expr = parse_weight(ns.weight)
    w = expr.to_weight()
    radii = _parse_range(ns.radii)
    qcfg = cfg.quadrature()

    def one(r: float):
        return zeros.point_kernel_zeros(w, r, qcfg)

    if cfg.parallel > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallel) as pool:
            reports = list(pool.map(one, radii))
    else:
        reports = [one(r) for r in radii]

    count_rows = []
    root_rows = []
    for r, rep in zip(radii, reports):
        count = next(iter(rep.count_in_radius.values()))
        count_rows.append([r, count, rep.certified])
        for root, residual in rep.roots:
            root_rows.append([r, root.real, root.imag, residual])

    outdir = Path(ns.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _emit_csv(["radius", "count", "certified"], count_rows, cfg, outdir / "zeromap_counts.csv")
    _emit_csv(["radius", "re", "im", "residual"], root_rows, cfg, outdir / "zeromap_roots.csv")
    written = [outdir / "zeromap_counts.csv", outdir / "zeromap_roots.csv"]
    if cfg.plot:
        from . import plotting

        plotting.render_zero_map(
            [(r, c) for r, c, _ in count_rows],
            [(r, complex(re, im)) for r, re, im, _ in root_rows],
            outdir / "zeromap.png",
            title=expr.canonical(),
        )
        written.append(outdir / "zeromap.png")
    for path in written:
        sys.stdout.write(f"wrote {path}\n")
    monotone = zeros.is_monotone({r: c for r, c, _ in count_rows})
    sys.stdout.write(f"monotone counts: {monotone}\n")
    return 0


def _cmd_threshold(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    levels = [ns.n] if ns.n else list(range(1, ns.n_max + 1))
    rows = [[n, starcalc.rouche_threshold(n)] for n in levels]
    outdir = Path(ns.outdir) if ns.outdir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
        if cfg.format == "csv":
            _emit_csv(["n", "alpha_threshold"], rows, cfg, outdir / "thresholds.csv")
        else:
            _emit_json(
                _artifact(cfg, [{"n": n, "alpha_threshold": a} for n, a in rows]),
                outdir / "thresholds.json",
            )
        if cfg.plot:
            from . import plotting

            plotting.render_threshold_curve(
                rows, outdir / "thresholds.png", title="dominance thresholds"
            )
    elif cfg.format == "csv":
        _emit_csv(["n", "alpha_threshold"], rows, cfg, None)
    else:
        _emit_json(_artifact(cfg, [{"n": n, "alpha_threshold": a} for n, a in rows]), None)
    return 0


def _cmd_verify(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    outcomes = checks.run_suite(seed=cfg.seed, cfg=cfg.quadrature())
    doc = _artifact(cfg, {"suite": ns.suite}, [o.to_json_dict() for o in outcomes])
    _emit_json(doc, Path(ns.out) if ns.out else None)
    failed = 0
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        if o.informational:
            status = "INFO"
        sys.stdout.write(f"{status} {o.name} (rel_err={o.rel_err:.2e})\n")
        if not o.passed and not o.informational:
            failed += 1
    sys.stdout.write(f"{len(outcomes)} checks, {failed} failed\n")
    return 1 if failed else 0


def _cmd_sb(ns: argparse.Namespace) -> int:
    cfg = _config_from(ns)
    gamma = Fraction(ns.gamma)
    if not gamma > 0:
        raise WeightExprError(f"gamma out of range: {gamma}", offset=0)
    form = _plane.sb_star_iterate(gamma, ns.depth)
    results: dict = {
        "gamma": str(gamma),
        "depth": ns.depth,
        "prefactor": str(Fraction(4) ** ns.depth * gamma**ns.depth),
        "polynomial": [str(c) for c in form.polynomial_coefficients],
    }
    if ns.depth >= 1:
        report = _plane.sb_zeros(float(gamma), ns.depth)
        results["zeros"] = report.to_json_dict()
    _emit_json(_artifact(cfg, results), Path(ns.out) if ns.out else None)
    return 0


# -- parser -----------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    sub.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    sub.add_argument("--max-subdivisions", dest="max_subdivisions", type=int, default=None)
    sub.add_argument("--truncation", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--parallel", type=int, default=None)
    sub.add_argument("--format", choices=("json", "csv"), default=None)
    sub.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    sub.add_argument("--out", default=None, help="write the artifact to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergmanzeros",
        description="Reproducing kernels of radial weights: moments, star "
        "transforms, and kernel zero location.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("moments", help="moment table of a weight")
    p.add_argument("--weight", required=True, help="e.g. std:1/2, gauss:2, star(std:0)")
    p.add_argument("--max-n", dest="max_n", type=int, default=32)
    p.add_argument("--outdir", default=None, help="write CSV/JSON + figure here")
    _add_common(p)
    p.set_defaults(func=_cmd_moments)

    p = subs.add_parser("kernel", help="evaluate the one-variable kernel")
    p.add_argument("--weight", required=True)
    p.add_argument("--zeta", required=True, help="complex, e.g. 0.5 or 0.3+0.4j")
    p.add_argument("--tol", type=float, default=1e-10)
    _add_common(p)
    p.set_defaults(func=_cmd_kernel)

    p = subs.add_parser("poly", help="exact star-iterate numerator polynomial")
    p.add_argument("--n", type=int, required=True, help="iterate depth (level)")
    p.add_argument("--alpha", default=None, help="optional rational evaluation point")
    _add_common(p)
    p.set_defaults(func=_cmd_poly)

    p = subs.add_parser("zeros", help="zero report of the point kernel at z")
    p.add_argument("--weight", required=True)
    p.add_argument("--z", required=True, help="complex point")
    p.add_argument(
        "--search-radius",
        dest="search_radius",
        type=float,
        default=None,
        help="xi search radius (required for plane weights)",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_zeros)

    p = subs.add_parser("zeromap", help="zero counts and loci over a radius sweep")
    p.add_argument("--weight", required=True)
    p.add_argument("--radii", required=True, help="range a:b:step, e.g. 0.1:0.9:0.05")
    p.add_argument("--outdir", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_zeromap)

    p = subs.add_parser("threshold", help="dominance threshold alpha* per level")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, default=None)
    group.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--outdir", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_threshold)

    p = subs.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--suite", choices=("all",), default="all")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("sb", help="plane-domain star iterates and their zeroes")
    p.add_argument("--gamma", required=True, help="rational, e.g. 2 or 1/3")
    p.add_argument("--depth", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=_cmd_sb)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return ns.func(ns)
    except WeightExprError as exc:
        _emit_error(exc)
        return 2
    except (ValueError, OSError) as exc:
        _emit_error(exc)
        return 2
    except KernelToolError as exc:
        _emit_error(exc)
        return 1


def _emit_error(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, WeightExprError):
        payload["offset"] = exc.offset
        payload["expected"] = list(exc.expected)
    sys.stderr.write(json.dumps(payload) + "\n")


if __name__ == "__main__":
    raise SystemExit(main())
