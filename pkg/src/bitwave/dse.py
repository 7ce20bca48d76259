"""Grid search over (v, k, b, V, K) configurations ranked by GOPS/EPB.

The search space file (JSON) lists candidate values per dimension plus
optional constraints:

    {
      "v": [25, 50], "k": [10, 20], "b": [2, 4], "V": [100, 200], "K": [50, 100],
      "constraints": {"max_power_w": 100.0, "laser_ceiling_dbm": 30.0}
    }

Every enumerated configuration is evaluated on every workload; the
aggregate score across workloads is the geometric mean of per-workload
GOPS/EPB by default (scale-free across models of very different size).
Evaluations are independent pure functions; ranking and tie-breaking are
deterministic regardless of evaluation order.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import arch_model as am
from . import workload_ir as wir
from .device_catalog import DEFAULT_CATALOG, DeviceCatalog

AGGREGATES = ("geomean", "mean", "min")


class SearchSpaceError(ValueError):
    """Malformed search-space description."""


@dataclass(frozen=True)
class SearchConstraints:
    max_power_w: float | None = None
    laser_ceiling_dbm: float | None = None


@dataclass(frozen=True)
class SearchSpace:
    v: tuple[int, ...]
    k: tuple[int, ...]
    b: tuple[int, ...]
    V: tuple[int, ...]
    K: tuple[int, ...]
    constraints: SearchConstraints = field(default_factory=SearchConstraints)


def search_space_from_dict(doc: dict) -> SearchSpace:
    if not isinstance(doc, dict):
        raise SearchSpaceError("search space document must be a JSON object")
    known = {"v", "k", "b", "V", "K", "constraints"}
    unknown = set(doc) - known
    if unknown:
        raise SearchSpaceError(f"unknown search-space fields: {sorted(unknown)}")
    lists = {}
    for dim in ("v", "k", "b", "V", "K"):
        values = doc.get(dim, [])
        if not isinstance(values, list) or not all(isinstance(x, int) for x in values):
            raise SearchSpaceError(f"dimension {dim!r} must be a list of ints")
        lists[dim] = tuple(values)
    cons = doc.get("constraints", {})
    if not isinstance(cons, dict):
        raise SearchSpaceError("constraints must be an object")
    unknown = set(cons) - {"max_power_w", "laser_ceiling_dbm"}
    if unknown:
        raise SearchSpaceError(f"unknown constraint fields: {sorted(unknown)}")
    return SearchSpace(constraints=SearchConstraints(**cons), **lists)


def load_search_space(path: str | Path) -> SearchSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return search_space_from_dict(json.load(fh))


def enumerate_configs(space: SearchSpace, laser_ceiling_dbm: float | None = None) -> list[am.ArchConfig]:
    """Cartesian product of the value lists, deduplicated, ascending order."""
    dims = [sorted(set(getattr(space, d))) for d in ("v", "k", "b", "V", "K")]
    ceiling = laser_ceiling_dbm
    if ceiling is None:
        ceiling = space.constraints.laser_ceiling_dbm
    extra = {} if ceiling is None else {"laser_ceiling_dbm": ceiling}
    return [
        am.ArchConfig(v=v, k=k, b=b, V=V, K=K, **extra)
        for v, k, b, V, K in itertools.product(*dims)
    ]


@dataclass(frozen=True)
class ModelScore:
    epb_j_per_bit: float
    gops: float
    gops_per_epb: float


@dataclass(frozen=True)
class EvaluatedConfig:
    config: am.ArchConfig
    score: float
    max_power_w: float
    per_model: dict  # model name -> ModelScore


@dataclass(frozen=True)
class SearchResult:
    ranked: tuple[EvaluatedConfig, ...]
    best: EvaluatedConfig | None
    infeasible_count: int
    diagnostics: dict  # constraint name -> rejected-config count


def _aggregate(values: list[float], how: str) -> float:
    if how == "geomean":
        if any(x <= 0 for x in values):
            return 0.0
        return math.exp(sum(math.log(x) for x in values) / len(values))
    if how == "mean":
        return sum(values) / len(values)
    if how == "min":
        return min(values)
    raise SearchSpaceError(f"unknown aggregate {how!r}; pick one of {AGGREGATES}")


def _rank_key(entry: EvaluatedConfig) -> tuple:
    c = entry.config
    return (-entry.score, entry.max_power_w, c.v, c.k, c.b, c.V, c.K)


def explore(
    models: list[wir.WorkloadModel],
    space: SearchSpace,
    catalog: DeviceCatalog = DEFAULT_CATALOG,
    aggregate: str = "geomean",
) -> SearchResult:
    """Evaluate every configuration on every model and rank by GOPS/EPB."""
    if not models:
        raise ValueError("explore needs at least one workload model")
    if aggregate not in AGGREGATES:
        raise SearchSpaceError(f"unknown aggregate {aggregate!r}; pick one of {AGGREGATES}")
    cons = space.constraints
    configs = enumerate_configs(space)

    evaluated: list[EvaluatedConfig] = []
    rejected = {"laser": 0, "max_power": 0}
    for cfg in configs:
        power = am.max_power(cfg, catalog)
        if cons.max_power_w is not None and power > cons.max_power_w:
            rejected["max_power"] += 1
            continue
        per_model = {}
        try:
            for model in models:
                rep = am.simulate_inference(model, cfg, catalog)
                per_model[model.name] = ModelScore(
                    epb_j_per_bit=rep.epb_j_per_bit,
                    gops=rep.gops,
                    gops_per_epb=rep.gops_per_epb,
                )
        except am.LaserInfeasibleError:
            rejected["laser"] += 1
            continue
        score = _aggregate([s.gops_per_epb for s in per_model.values()], aggregate)
        evaluated.append(EvaluatedConfig(cfg, score, power, per_model))

    ranked = tuple(sorted(evaluated, key=_rank_key))
    return SearchResult(
        ranked=ranked,
        best=ranked[0] if ranked else None,
        infeasible_count=len(configs) - len(ranked),
        diagnostics=rejected,
    )
