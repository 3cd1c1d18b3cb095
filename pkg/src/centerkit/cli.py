"""Command line interface: validate, run, and demo.

Exit codes: 0 for a certified result, 2 for an uncertified or heuristic
result, 1 for any error. One instance file per invocation; batch execution
is shell-level composition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Tuple

import numpy as np

from . import __version__
from .centers import AggregatorKind, chebyshev_center
from .equalizer import EqualizerError, StepCase, equalize
from .feasibility import FeasibilityStatus, intersect
from .instances import Instance, InstanceError, parse_instance
from .nnets import best_nnet_exact, best_nnet_heuristic
from .reports import SvgScene, csv_table, render_record, sweep_svg
from .truncations import radius_sweep

_DEFAULT_TOL = 1e-9

DEMOS = {
    "square-corners": {
        "task": "center",
        "space": {"dim": 2, "kind": "L2"},
        "points": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
    },
    "equilateral-disks": {
        "task": "intersect",
        "space": {"dim": 2, "kind": "L2"},
        "balls": [
            {"center": [0.0, 0.0], "radius": 1.05},
            {"center": [2.0, 0.0], "radius": 1.05},
            {"center": [1.0, 1.7320508075688772], "radius": 1.05},
        ],
    },
    "line-gap": {
        "task": "equalize",
        "space": {"dim": 1, "kind": "L2"},
        "balls": [{"center": [0.0], "radius": 1.0}, {"center": [4.0], "radius": 1.0}],
        "r": 3.0,
    },
    "x-space-sweep": {
        "task": "sweep",
        "variant": "x_space",
        "seeds": [[0.0, 0.0], [2.0, 2.0]],
        "dims": [2, 4, 6, 8],
    },
}


def _space_label(inst: Instance) -> str:
    s = inst.data.get("space")
    if s is None:
        return "derived per truncation"
    label = f"{s['kind']} dim {s['dim']}"
    if "constraints" in s:
        label += f" with {len(s['constraints']['A'])} constraint(s)"
    return label


def _maybe_scene(inst: Instance, want_svg: bool) -> Optional[SvgScene]:
    if not want_svg:
        return None
    s = inst.data.get("space")
    if s is None or s["dim"] != 2:
        return None  # scenes are drawn for planar instances only
    return SvgScene()


def _run_center(inst: Instance, tol: float, scene) -> Tuple[str, int]:
    F = inst.point_set()
    agg = inst.aggregator()
    res = chebyshev_center(F, agg, tol)
    pairs = [
        ("task", inst.task),
        ("space", _space_label(inst)),
        ("tolerance", tol),
        ("method", res.method.value),
        ("certified", res.certified),
        ("radius", res.radius),
        ("lower_bound", res.lower_bound),
        ("gap", res.gap),
        ("iterations", res.iterations),
        ("center", res.center),
    ]
    if agg.kind is AggregatorKind.POWER_SUM:
        pairs.insert(2, ("aggregator", f"power_sum q={agg.q:.12g}"))
    if scene is not None:
        from .feasibility import Ball

        for p in F.points:
            scene.point(p)
        scene.cross(res.center)
        if agg.kind is AggregatorKind.MAX_WEIGHTED:
            scene.ball(F.space, Ball(res.center, res.radius / float(F.weights.max())), "#b03030")
    return render_record(pairs), 0 if res.certified else 2


def _run_nnet(inst: Instance, tol: float, scene) -> Tuple[str, int]:
    F = inst.point_set()
    n = inst.data["n"]
    method = inst.data.get("method", "exact")
    res = best_nnet_exact(F, n) if method == "exact" else best_nnet_heuristic(F, n, tol)
    pairs = [
        ("task", inst.task),
        ("space", _space_label(inst)),
        ("tolerance", tol),
        ("method", method),
        ("n", n),
        ("optimal", res.optimal),
        ("covering_radius", res.covering_radius),
        ("assignment", res.assignment),
        ("nets", [(f"net {i}", y) for i, y in enumerate(res.nets)]),
    ]
    if scene is not None:
        for p, lbl in zip(F.points, res.assignment):
            scene.point(p)
            scene.segment(p, res.nets[lbl])
        for y in res.nets:
            scene.cross(y)
    return render_record(pairs), 0 if res.optimal else 2


def _run_intersect(inst: Instance, tol: float, scene) -> Tuple[str, int]:
    space = inst.norm_spec()
    balls = inst.balls()
    cert = intersect(space, balls, feas_tol=tol)
    pairs = [
        ("task", inst.task),
        ("space", _space_label(inst)),
        ("feas_tol", tol),
        ("status", cert.status.value),
        ("depth", cert.depth),
    ]
    if cert.witness is not None:
        pairs.append(("witness", cert.witness))
    if cert.separator is not None:
        pairs.append(("separator", cert.separator.coefficients))
        pairs.append(("separator_dual_norm", cert.separator.dual_norm_value))
    if scene is not None:
        for b in balls:
            scene.ball(space, b, "#1f3d7a")
        if cert.witness is not None:
            scene.cross(cert.witness)
    return render_record(pairs), 0 if cert.status is not FeasibilityStatus.UNDETERMINED else 2


def _run_equalize(inst: Instance, tol: float, scene) -> Tuple[str, int]:
    space = inst.norm_spec()
    balls = inst.balls()
    margin = inst.data.get("margin_tol", 1e-6)
    res = equalize(space, balls, inst.data["r"], margin)
    step_pairs = []
    for st in res.steps:
        block = [("case", st.case.value), ("new_center", st.new_center)]
        if st.case is StepCase.SEPARATED:
            block += [
                ("epsilon", st.epsilon),
                ("direction", st.direction),
                ("separator", st.separator.coefficients),
                ("separator_dual_norm", st.separator.dual_norm_value),
            ]
        step_pairs.append((f"step {st.index}", block))
    pairs = [
        ("task", inst.task),
        ("space", _space_label(inst)),
        ("target_radius", inst.data["r"]),
        ("margin_tol", margin),
        ("verification_status", res.verification.status.value),
        ("verification_depth", res.verification.depth),
        ("steps", step_pairs),
        ("new_balls", [(f"ball {i}", b.center) for i, b in enumerate(res.new_balls)]),
    ]
    if scene is not None:
        for b in balls:
            scene.ball(space, b, "#1f3d7a")
        for b in res.new_balls:
            scene.ball(space, b, "#b03030")
    return render_record(pairs), 0


def _run_sweep(inst: Instance, tol: float, scene) -> Tuple[str, int, str, Optional[str]]:
    res = radius_sweep(inst.variant(), inst.data["seeds"], inst.data["dims"], tol)
    rows = [(r.dim, r.radius, r.certified) for r in res.records]
    pairs = [
        ("task", inst.task),
        ("variant", res.variant.value),
        ("tolerance", tol),
        ("monotone", res.monotone),
        ("rows", [(f"d={r.dim}", [("radius", r.radius), ("certified", r.certified)]) for r in res.records]),
    ]
    table = csv_table(["d", "radius", "certified"], rows)
    plot = sweep_svg([r.dim for r in res.records], [r.radius for r in res.records]) if scene == "sweep" else None
    code = 0 if res.monotone and all(r.certified for r in res.records) else 2
    return render_record(pairs), code, table, plot


def run_instance(inst: Instance, out_dir: str, tol_override: Optional[float], want_svg: bool) -> int:
    tol = tol_override if tol_override is not None else (inst.tol or _DEFAULT_TOL)
    os.makedirs(out_dir, exist_ok=True)
    extras: List[Tuple[str, str]] = []
    if inst.task == "sweep":
        record, code, table, plot = _run_sweep(inst, tol, "sweep" if want_svg else None)
        extras.append(("table.csv", table))
        if plot is not None:
            extras.append(("scene.svg", plot))
    else:
        scene = _maybe_scene(inst, want_svg)
        if inst.task in ("center", "weighted_center", "f_center"):
            record, code = _run_center(inst, tol, scene)
        elif inst.task == "nnet":
            record, code = _run_nnet(inst, tol, scene)
        elif inst.task == "intersect":
            record, code = _run_intersect(inst, tol, scene)
        else:
            record, code = _run_equalize(inst, tol, scene)
        if scene is not None:
            extras.append(("scene.svg", scene.render()))

    record += "\nexit_code: " + str(code) + "\n"
    with open(os.path.join(out_dir, "result.txt"), "w", encoding="utf-8") as fh:
        fh.write(record)
    for name, content in extras:
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(content)
    sys.stdout.write(record)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centerkit", description="Centers, ball certificates, and n-nets in normed spaces.")
    parser.add_argument("--version", action="version", version=f"centerkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one instance file")
    p_run.add_argument("instance")
    p_run.add_argument("--out", default="centerkit-out")
    p_run.add_argument("--tol", type=float, default=None)
    p_run.add_argument("--svg", action="store_true", help="emit an SVG scene (2-d instances only)")

    p_val = sub.add_parser("validate", help="validate an instance file")
    p_val.add_argument("instance")

    p_demo = sub.add_parser("demo", help="write and run a named golden instance")
    p_demo.add_argument("name", choices=sorted(DEMOS))
    p_demo.add_argument("--out", default="centerkit-out")
    p_demo.add_argument("--svg", action="store_true")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            inst = parse_instance(args.instance)
            sys.stdout.write(f"OK: valid {inst.task} instance\n")
            return 0
        if args.command == "run":
            inst = parse_instance(args.instance)
            return run_instance(inst, args.out, args.tol, args.svg)
        # demo: materialize the golden instance next to its results, then run it
        from .instances import load_instance, serialize_instance

        inst = load_instance(json.loads(json.dumps(DEMOS[args.name])))
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, f"{args.name}.json"), "w", encoding="utf-8") as fh:
            fh.write(serialize_instance(inst))
        return run_instance(inst, args.out, None, args.svg)
    except (InstanceError, EqualizerError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
