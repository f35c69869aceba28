"""Report serialization: JSON, delimited CSV, DOT, and figure rendering.

A classification run's report is deterministic except for the volatile "run"
object (timestamp, wall time, worker count); byte-level comparisons drop that
one key.  Expected values of the published classification tables are embedded
so the verify command is self-contained.
"""

from __future__ import annotations

import csv
import io
import json
import time
from fractions import Fraction

from . import graphs as gk
from .algebraic import AlgebraicNumber, pretty
from .embedding import (
    RelationDissimilarity,
    bound_ambient,
    bound_sphere,
    bound_sphere_q1,
    classify_type,
)

SCHEMA = 1

# (max order, count) with count None meaning infinitely many configurations.
TABLE_AMBIENT = {
    (1, 0): (3, 1),
    (2, 0): (5, 1),
    (3, 0): (6, 6),
    (4, 0): (10, 1),
    (5, 0): (16, 1),
    (6, 0): (27, 1),
    (7, 0): (29, 1),
    (1, 1): (3, None),
    (2, 1): (5, 8),
    (3, 1): (7, 3),
    (4, 1): (10, 2),
    (5, 1): (13, 3),
    (6, 1): (22, 1),
    (2, 2): (7, 1),
    (3, 2): (8, 3),
    (4, 2): (10, 3),
    (5, 2): (13, 1),
    (3, 3): (9, 14),
    (4, 3): (12, 1),
}

# The spherical table; the (1,0) cell is omitted: a sphere in R^{1,0} holds
# two points, so no two-distance subset exists and the published value cannot
# be reproduced by the sphere definition used throughout.
TABLE_SPHERICAL = {
    (2, 0): (5, 1),
    (3, 0): (6, 6),
    (4, 0): (10, 1),
    (5, 0): (16, 1),
    (6, 0): (27, 1),
    (7, 0): (28, 1),
    (1, 1): (3, None),
    (2, 1): (4, None),
    (3, 1): (7, 3),
    (4, 1): (10, 1),
    (5, 1): (13, 3),
    (6, 1): (22, 1),
    (2, 2): (7, 1),
    (3, 2): (8, 3),
    (4, 2): (10, 3),
    (5, 2): (13, 1),
    (3, 3): (9, 14),
    (4, 3): (11, 3),
}

TABLE_SKIPPED = {
    ("spherical", (1, 0)): "S_{1,0} is a two-point set; no two-distance subset exists",
}

TIERS = {
    "small": [
        (1, 0),
        (2, 0),
        (3, 0),
        (4, 0),
        (1, 1),
        (2, 1),
        (3, 1),
        (2, 2),
        (3, 2),
        (4, 1),
        (5, 0),
    ],
    "medium": [(3, 3), (4, 2), (5, 1), (6, 0)],
    "full": [(4, 3), (5, 2), (6, 1), (7, 0)],
}


def tier_cells(tier: str):
    if tier == "small":
        return list(TIERS["small"])
    if tier == "medium":
        return TIERS["small"] + TIERS["medium"]
    if tier == "full":
        return TIERS["small"] + TIERS["medium"] + TIERS["full"]
    raise ValueError(f"unknown tier {tier!r}")


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _value_json(v):
    if v is None:
        return None
    if isinstance(v, AlgebraicNumber):
        if v.is_rational():
            return _frac_str(v.rational_value())
        return v.to_json()
    return _frac_str(v)


def _value_decimal(v, digits=12):
    if v is None:
        return None
    if isinstance(v, AlgebraicNumber):
        return v.to_decimal(digits)
    f = Fraction(v)
    from .algebraic import from_rational

    return from_rational(f).to_decimal(digits)


def _value_pretty(v):
    if v is None:
        return None
    if isinstance(v, AlgebraicNumber):
        return pretty(v)
    return _frac_str(v)


def winner_json(w, decorate_type=True) -> dict:
    entry = {
        "graph6": gk.graph6_encode(w.graph),
        "order": w.graph.n,
        "branch": w.branch,
        "kind": w.kind,
        "embedding": list(w.embedding),
        "lambda": _value_json(w.lam),
        "lambda_pretty": _value_pretty(w.lam),
        "b": _value_json(w.b),
        "b_pretty": _value_pretty(w.b),
        "b_decimal": _value_decimal(w.b),
        "b_range": None,
        "type": None,
        "spherical": None,
        "radius": None,
        "radius_decimal": None,
    }
    if w.b_range is not None:
        lo, hi = w.b_range
        entry["b_range"] = [_value_json(lo), _value_json(hi)]
        entry["b_range_decimal"] = [_value_decimal(lo), _value_decimal(hi)]
    if decorate_type and w.b is not None:
        rd = RelationDissimilarity(w.graph, w.branch, w.b)
        t = classify_type(rd)
        entry["type"] = t
        entry["spherical"] = t == 2
        if t == 2:
            from .spherical import spherical_radius

            placement = spherical_radius(rd)
            entry["radius"] = _value_json(placement.radius)
            entry["radius_decimal"] = _value_decimal(placement.radius)
    return entry


def classification_report(result, workers=1) -> dict:
    p, q = result.p, result.q
    winners = [winner_json(w) for w in result.winners]
    dupes = len(winners) - result.distinct_graph_count() if not result.infinite else None
    return {
        "schema": SCHEMA,
        "kind": "classification",
        "cell": {"p": p, "q": q},
        "max_order": result.max_order,
        "infinite": result.infinite,
        "counts": {
            "configurations": result.config_count(),
            "distinct_graphs": result.distinct_graph_count(),
            "graphs_winning_multiply": dupes,
        },
        "bounds": {
            "ambient": bound_ambient(p, q, 2),
            "sphere": bound_sphere(p, q, 2),
            "sphere_q1": bound_sphere_q1(p, 2) if q == 1 else None,
        },
        "winners": winners,
        "diagnostics": {"boundary_eigenvalue_graphs": result.boundary_graphs},
        "level_stats": [list(s) for s in result.level_stats],
        "lambdas": {
            f"{br}:{idx}": key.to_json()
            for (br, idx), key in sorted(result.lambda_values.items())
        },
        "run": _run_block(result.elapsed, workers),
    }


def spherical_report(result, workers=1) -> dict:
    p, q = result.p, result.q
    winners = []
    for sw in result.winners:
        entry = winner_json(sw.winner, decorate_type=False)
        entry["type"] = sw.type_index
        entry["spherical"] = True
        entry["mirrored"] = sw.mirrored
        entry["lifted_from"] = (
            None
            if sw.lifted_from is None
            else {
                "cell": list(sw.lifted_from[0]),
                "type": sw.lifted_from[1],
            }
        )
        entry["radius"] = _value_json(sw.radius)
        entry["radius_decimal"] = _value_decimal(sw.radius)
        winners.append(entry)
    excluded = [
        {
            "graph6": gk.graph6_encode(w.graph),
            "order": w.graph.n,
            "branch": w.branch,
            "type": t,
            "note": "largest ambient winner not spherical in its embedding dimension",
        }
        for (w, t) in result.excluded_top
    ]
    return {
        "schema": SCHEMA,
        "kind": "spherical",
        "cell": {"p": p, "q": q},
        "max_order": result.max_order,
        "infinite": result.infinite,
        "counts": {
            "configurations": result.config_count(),
            "distinct_graphs": result.distinct_graph_count(),
        },
        "bounds": {
            "sphere": bound_sphere(p, q, 2),
            "sphere_q1": bound_sphere_q1(p, 2) if q == 1 else None,
        },
        "winners": winners,
        "excluded": excluded,
        "run": _run_block(result.elapsed, workers),
    }


def _run_block(elapsed, workers):
    return {
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "elapsed_seconds": round(elapsed, 3),
        "workers": workers,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def strip_volatile(report: dict) -> dict:
    out = dict(report)
    out.pop("run", None)
    return out


def report_csv(report: dict) -> str:
    """One delimited row per winner."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        [
            "p",
            "q",
            "order",
            "graph6",
            "branch",
            "kind",
            "lambda",
            "b",
            "b_decimal",
            "b_range_lo",
            "b_range_hi",
            "embedding_p",
            "embedding_q",
            "type",
            "spherical",
            "radius_decimal",
        ]
    )
    p = report["cell"]["p"]
    q = report["cell"]["q"]
    for w in report["winners"]:
        rng = w.get("b_range") or [None, None]
        writer.writerow(
            [
                p,
                q,
                w["order"],
                w["graph6"],
                w["branch"],
                w["kind"],
                w.get("lambda_pretty") or "",
                w.get("b_pretty") or "",
                w.get("b_decimal") or "",
                json.dumps(rng[0]) if rng[0] is not None else "",
                json.dumps(rng[1]) if rng[1] is not None else "",
                w["embedding"][0],
                w["embedding"][1],
                w.get("type") or "",
                w.get("spherical"),
                w.get("radius_decimal") or "",
            ]
        )
    return buf.getvalue()


def report_dot(report: dict) -> str:
    """Winner graphs as a DOT multigraph document."""
    lines = ["// winners as undirected graphs (solid = first relation)"]
    for idx, w in enumerate(report["winners"]):
        g = gk.graph6_decode(w["graph6"])
        lines.append(f"graph winner_{idx} {{")
        lines.append(f'  label="{w["graph6"]} branch {w["branch"]}";')
        for v in range(g.n):
            lines.append(f"  v{v};")
        for u, v in g.edges():
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
    return "\n".join(lines) + "\n"


def winners_graph6(report: dict) -> str:
    return "\n".join(w["graph6"] for w in report["winners"]) + "\n"


def render_figures(report: dict, directory) -> list:
    """One PNG per winner plus a gallery figure; returns written paths."""
    import math
    from pathlib import Path

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    winners = report["winners"]
    if not winners:
        return paths

    def draw(ax, g6, title):
        g = gk.graph6_decode(g6)
        pos = [
            (
                math.cos(2 * math.pi * k / g.n + math.pi / 2),
                math.sin(2 * math.pi * k / g.n + math.pi / 2),
            )
            for k in range(g.n)
        ]
        for u, v in g.edges():
            ax.plot(
                [pos[u][0], pos[v][0]],
                [pos[u][1], pos[v][1]],
                color="#30507c",
                linewidth=1.4,
                zorder=1,
            )
        ax.scatter(
            [xy[0] for xy in pos],
            [xy[1] for xy in pos],
            s=120,
            color="#d95f02",
            zorder=2,
            edgecolors="black",
            linewidths=0.6,
        )
        ax.set_title(title, fontsize=9)
        ax.set_aspect("equal")
        ax.axis("off")

    cols = min(5, len(winners))
    rows = (len(winners) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(2.4 * cols, 2.6 * rows))
    axes = [axes] if rows * cols == 1 else list(axes.flat)
    for ax in axes[len(winners) :]:
        ax.axis("off")
    for ax, w in zip(axes, winners):
        b_label = w.get("b_pretty") or (
            "b range" if w.get("b_range") else ""
        )
        draw(ax, w["graph6"], f'{w["graph6"]}\na={w["branch"]}, b={b_label}')
    cell = report["cell"]
    fig.suptitle(
        f'{report["kind"]} winners for (p,q)=({cell["p"]},{cell["q"]}), '
        f'order {report["max_order"]}',
        fontsize=11,
    )
    fig.tight_layout(rect=(0, 0, 1, 0.94))
    gallery = directory / "winners.png"
    fig.savefig(gallery, dpi=150)
    plt.close(fig)
    paths.append(gallery)
    return paths
