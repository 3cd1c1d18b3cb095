"""Instance files: strict parsing, validation, and serialization.

One instance file describes one task. The format is UTF-8 JSON (keys and
nested lists of decimal numbers); unknown keys are rejected so typos fail
loudly, and every violation names the offending field. Parsing performs the
cheap structural checks only; domain invariants (rank of constraint systems,
radius preconditions, ...) surface when the typed objects are built or run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, List, Optional

import numpy as np

from .centers import Aggregator, PointSet, max_weighted, power_sum
from .feasibility import Ball
from .spaces import NormKind, NormSpec
from .truncations import TruncationVariant

__all__ = ["InstanceError", "Instance", "load_instance", "parse_instance", "serialize_instance", "TASKS"]

TASKS = ("center", "weighted_center", "f_center", "nnet", "intersect", "equalize", "sweep")

_KINDS = {"L1": NormKind.L1, "L2": NormKind.L2, "LInf": NormKind.LINF, "WeightedSup": NormKind.WEIGHTED_SUP}
_VARIANTS = {"x_space": TruncationVariant.X_SPACE, "y_space": TruncationVariant.Y_SPACE}


class InstanceError(ValueError):
    """Schema violation, with the offending field in the message."""


def _fail(path: str, msg: str):
    raise InstanceError(f"{path}: {msg}")


def _check_keys(obj: dict, path: str, required: set, optional: set):
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    for k in obj:
        if k not in required and k not in optional:
            _fail(f"{path}.{k}", "unknown field (strict mode)")
    for k in required:
        if k not in obj:
            _fail(f"{path}.{k}", "missing required field")


def _number(v: Any, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(path, "expected a decimal number")
    if not np.isfinite(v):
        _fail(path, "number must be finite")
    return v


def _integer(v: Any, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        _fail(path, "expected an integer")
    return v


def _vector(v: Any, path: str) -> List[float]:
    if not isinstance(v, list) or len(v) == 0:
        _fail(path, "expected a nonempty list of numbers")
    return [_number(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _matrix(v: Any, path: str) -> List[List[float]]:
    if not isinstance(v, list) or len(v) == 0:
        _fail(path, "expected a nonempty list of rows")
    rows = [_vector(r, f"{path}[{i}]") for i, r in enumerate(v)]
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            _fail(f"{path}[{i}]", f"row length {len(r)} differs from first row length {width}")
    return rows


def _validate_space(obj: Any, path: str) -> None:
    _check_keys(obj, path, {"dim", "kind"}, {"scale", "constraints"})
    dim = _integer(obj["dim"], f"{path}.dim")
    if dim < 1:
        _fail(f"{path}.dim", "must be >= 1")
    kind = obj["kind"]
    if kind not in _KINDS:
        _fail(f"{path}.kind", f"must be one of {sorted(_KINDS)}")
    if kind == "WeightedSup":
        if "scale" not in obj:
            _fail(f"{path}.scale", "required for WeightedSup")
        scale = _vector(obj["scale"], f"{path}.scale")
        if len(scale) != dim:
            _fail(f"{path}.scale", f"length {len(scale)} != dim {dim}")
        if any(s <= 0 for s in scale):
            _fail(f"{path}.scale", "entries must be strictly positive")
    elif "scale" in obj:
        _fail(f"{path}.scale", "only valid for WeightedSup")
    if "constraints" in obj:
        c = obj["constraints"]
        _check_keys(c, f"{path}.constraints", {"A", "b"}, set())
        A = _matrix(c["A"], f"{path}.constraints.A")
        b = _vector(c["b"], f"{path}.constraints.b")
        if len(A[0]) != dim:
            _fail(f"{path}.constraints.A", f"row length {len(A[0])} != dim {dim}")
        if len(A) != len(b):
            _fail(f"{path}.constraints.b", f"length {len(b)} != number of rows {len(A)}")


def _validate_points(obj: dict, path: str, dim: int) -> int:
    pts = _matrix(obj["points"], f"{path}.points")
    if len(pts[0]) != dim:
        _fail(f"{path}.points", f"point length {len(pts[0])} != space dim {dim}")
    return len(pts)


def _validate_balls(obj: dict, path: str, dim: int) -> int:
    balls = obj["balls"]
    if not isinstance(balls, list) or len(balls) == 0:
        _fail(f"{path}.balls", "expected a nonempty list of balls")
    for i, b in enumerate(balls):
        bp = f"{path}.balls[{i}]"
        _check_keys(b, bp, {"center", "radius"}, set())
        c = _vector(b["center"], f"{bp}.center")
        if len(c) != dim:
            _fail(f"{bp}.center", f"length {len(c)} != space dim {dim}")
        if _number(b["radius"], f"{bp}.radius") < 0:
            _fail(f"{bp}.radius", "must be nonnegative")
    return len(balls)


@dataclass(frozen=True)
class Instance:
    """A validated task description; ``data`` is the normalized JSON object."""

    task: str
    data: dict

    # -- typed accessors ----------------------------------------------------

    def norm_spec(self) -> NormSpec:
        s = self.data["space"]
        kw = {}
        if "constraints" in s:
            kw["constraint_matrix"] = np.array(s["constraints"]["A"], dtype=float)
            kw["constraint_rhs"] = np.array(s["constraints"]["b"], dtype=float)
        if s["kind"] == "WeightedSup":
            kw["scale"] = np.array(s["scale"], dtype=float)
        return NormSpec(s["dim"], _KINDS[s["kind"]], **kw)

    def point_set(self) -> PointSet:
        weights = self.data.get("weights")
        return PointSet(self.norm_spec(), np.array(self.data["points"], dtype=float), weights)

    def aggregator(self) -> Aggregator:
        agg = self.data.get("aggregator")
        if agg is None or agg["kind"] == "max_weighted":
            return max_weighted()
        return power_sum(agg["q"])

    def balls(self) -> List[Ball]:
        return [Ball(np.array(b["center"], dtype=float), b["radius"]) for b in self.data["balls"]]

    def variant(self) -> TruncationVariant:
        return _VARIANTS[self.data["variant"]]

    @property
    def tol(self) -> Optional[float]:
        return self.data.get("tol")


def load_instance(obj: Any) -> Instance:
    """Validate a decoded JSON object into an Instance."""
    if not isinstance(obj, dict):
        _fail("$", "instance must be a JSON object")
    task = obj.get("task")
    if task not in TASKS:
        _fail("$.task", f"must be one of {list(TASKS)}")

    required = {"task", "space"}
    optional = {"tol"}
    if task == "center":
        required |= {"points"}
    elif task == "weighted_center":
        required |= {"points", "weights"}
    elif task == "f_center":
        required |= {"points", "aggregator"}
        optional |= {"weights"}
    elif task == "nnet":
        required |= {"points", "n"}
        optional |= {"method"}
    elif task == "intersect":
        required |= {"balls"}
    elif task == "equalize":
        required |= {"balls", "r"}
        optional |= {"margin_tol"}
    else:  # sweep derives its space from the variant
        required = {"task", "variant", "seeds", "dims"}
    _check_keys(obj, "$", required, optional)

    if "tol" in obj and _number(obj["tol"], "$.tol") <= 0:
        _fail("$.tol", "must be positive")

    if task == "sweep":
        if obj["variant"] not in _VARIANTS:
            _fail("$.variant", f"must be one of {sorted(_VARIANTS)}")
        seeds = _matrix(obj["seeds"], "$.seeds")
        dims = obj["dims"]
        if not isinstance(dims, list) or len(dims) == 0:
            _fail("$.dims", "expected a nonempty list of even integers")
        for i, d in enumerate(dims):
            if _integer(d, f"$.dims[{i}]") < 2 or d % 2 != 0:
                _fail(f"$.dims[{i}]", "dimensions must be even and >= 2")
            if d < len(seeds[0]):
                _fail(f"$.dims[{i}]", f"below the seed dimension {len(seeds[0])}")
        return Instance(task=task, data=obj)

    _validate_space(obj["space"], "$.space")
    dim = obj["space"]["dim"]

    if task in ("center", "weighted_center", "f_center", "nnet"):
        n = _validate_points(obj, "$", dim)
        if "weights" in obj:
            w = _vector(obj["weights"], "$.weights")
            if len(w) != n:
                _fail("$.weights", f"length {len(w)} != number of points {n}")
            if any(x <= 0 for x in w):
                _fail("$.weights", "weights must be strictly positive")
    if task == "f_center":
        agg = obj["aggregator"]
        _check_keys(agg, "$.aggregator", {"kind"}, {"q"})
        if agg["kind"] not in ("max_weighted", "power_sum"):
            _fail("$.aggregator.kind", "must be 'max_weighted' or 'power_sum'")
        if agg["kind"] == "power_sum":
            if "q" not in agg:
                _fail("$.aggregator.q", "required for power_sum")
            if _number(agg["q"], "$.aggregator.q") < 1:
                _fail("$.aggregator.q", "must satisfy q >= 1")
        elif "q" in agg:
            _fail("$.aggregator.q", "only valid for power_sum")
    if task == "nnet":
        if _integer(obj["n"], "$.n") < 1:
            _fail("$.n", "must be >= 1")
        if "method" in obj and obj["method"] not in ("exact", "heuristic"):
            _fail("$.method", "must be 'exact' or 'heuristic'")
    if task in ("intersect", "equalize"):
        _validate_balls(obj, "$", dim)
    if task == "equalize":
        _number(obj["r"], "$.r")
        if "margin_tol" in obj and _number(obj["margin_tol"], "$.margin_tol") <= 0:
            _fail("$.margin_tol", "must be positive")

    return Instance(task=task, data=obj)


def parse_instance(path: str) -> Instance:
    """Read, decode and validate an instance file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return load_instance(obj)


def serialize_instance(inst: Instance) -> str:
    return json.dumps(inst.data, indent=2, sort_keys=True) + "\n"
