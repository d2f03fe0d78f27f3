"""Model configuration files and deterministic exports.

Model configs are JSON objects with a "type" discriminator:

    {"type": "bio", "Di": 35, "Dg": 8, "ki": 2.5,
     "lambdai": 0.5, "lambdag": 1.0, "kg": 0}

    {"type": "custom", "P_poly": [c0, c1, ...], "g_poly": [c0, c1, ...]}

Custom polynomials are given by ascending coefficients; D is the exact
polynomial derivative of P.  CSV exports are deterministic: 17 significant
digits, '.' decimal separator, '\\n' line endings, so identical configs
produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .biomodel import BioParams, bio_model
from .errors import ParamError
from .model import ModelSpec, build_model

__all__ = [
    "ModelBundle",
    "load_model",
    "model_from_config",
    "write_csv",
    "gnuplot_script",
    "svg_polyline",
]


@dataclass(frozen=True)
class ModelBundle:
    """A built model plus its raw config and, when applicable, bio params."""

    model: ModelSpec
    config: dict
    bio: BioParams | None


def model_from_config(cfg: dict) -> ModelBundle:
    """Build a ModelBundle from a parsed JSON config dict."""
    if not isinstance(cfg, dict) or "type" not in cfg:
        raise ParamError("model config must be a JSON object with a 'type' key")
    kind = cfg["type"]
    if kind == "bio":
        required = ("Di", "Dg", "ki", "lambdai", "lambdag")
        missing = [k for k in required if k not in cfg]
        if missing:
            raise ParamError(f"bio config missing keys: {', '.join(missing)}")
        bp = BioParams(Di=float(cfg["Di"]), Dg=float(cfg["Dg"]), ki=float(cfg["ki"]),
                       lambdai=float(cfg["lambdai"]), lambdag=float(cfg["lambdag"]),
                       kg=float(cfg.get("kg", 0.0)))
        return ModelBundle(model=bio_model(bp), config=dict(cfg), bio=bp)
    if kind == "custom":
        if "P_poly" not in cfg or "g_poly" not in cfg:
            raise ParamError("custom config requires 'P_poly' and 'g_poly' coefficient lists")
        P = Polynomial(np.asarray(cfg["P_poly"], dtype=float))
        g = Polynomial(np.asarray(cfg["g_poly"], dtype=float))
        D = P.deriv()
        m = build_model(lambda u: float(P(u)), lambda u: float(g(u)),
                        D=lambda u: float(D(u)))
        return ModelBundle(model=m, config=dict(cfg), bio=None)
    raise ParamError(f"unknown model type {kind!r} (expected 'bio' or 'custom')")


def load_model(path: str) -> ModelBundle:
    """Load and build a model from a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    return model_from_config(cfg)


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and x != x):
        return ""
    return format(float(x), ".17g")


def write_csv(path: str, header: Sequence[str], rows) -> None:
    """Write rows of floats (None for blank cells) deterministically."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def gnuplot_script(csv_name: str, columns: Sequence[tuple[int, int, str]],
                   title: str, xlabel: str, ylabel: str) -> str:
    """A minimal gnuplot script plotting (x column, y column, label) tuples
    from a CSV written by write_csv.  Columns are 1-based."""
    plots = ", ".join(
        f"'{csv_name}' using {x}:{y} with lines title '{label}'"
        for x, y, label in columns)
    return (
        "set datafile separator ','\n"
        "set key autotitle columnhead off\n"
        f"set title '{title}'\n"
        f"set xlabel '{xlabel}'\n"
        f"set ylabel '{ylabel}'\n"
        f"plot {plots}\n"
    )


def svg_polyline(xs: np.ndarray, ys: np.ndarray, *, width: int = 640,
                 height: int = 400, pad: int = 20) -> str:
    """Dependency-free SVG rendering of a polyline (for --svg exports)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    sx = (width - 2 * pad) / (x1 - x0 if x1 > x0 else 1.0)
    sy = (height - 2 * pad) / (y1 - y0 if y1 > y0 else 1.0)
    pts = " ".join(
        f"{pad + (x - x0) * sx:.2f},{height - pad - (y - y0) * sy:.2f}"
        for x, y in zip(xs, ys))
    return (
        f"<svg xmlns='http://www.w3.org/2000/svg' width='{width}' height='{height}'>"
        f"<rect width='100%' height='100%' fill='white'/>"
        f"<polyline points='{pts}' fill='none' stroke='black' stroke-width='1'/>"
        f"</svg>\n"
    )
