"""Metrics over annotations: recall@k, coverage, confidence, polarity, agreement, cohesion, kappa."""

from __future__ import annotations

import csv
import io
import itertools
import math
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .aggregation import NodeAnnotation
from .corpus import GroundTruth, LabelVocabulary
from .errors import UndefinedKappa, ValidationError
from .labelling import LabelDistribution, jsd

RECALL_KS = (3, 5, 10)
DEFAULT_POOL = 10


@dataclass(frozen=True)
class RecallResult:
    value: float
    per_project: dict[str, float]
    missing_from_truth: tuple[str, ...] = ()
    unannotated: tuple[str, ...] = ()


def recall_details(project_dists: Mapping[str, LabelDistribution], truth: GroundTruth, k: int,
                   vocabulary: LabelVocabulary) -> RecallResult:
    per_project = {}
    missing, skipped = [], []
    for project in sorted(project_dists):
        dist = project_dists[project]
        if project not in truth:
            missing.append(project)
            continue
        if not dist.annotated:
            skipped.append(project)
            continue
        predicted = {vocabulary.labels[i] for i in dist.ranked(k)}
        expected = truth[project]
        per_project[project] = len(expected & predicted) / len(expected)
    value = math.fsum(per_project.values()) / len(per_project) if per_project else float("nan")
    return RecallResult(value, per_project, tuple(missing), tuple(skipped))


def recall_at_k(project_dists: Mapping[str, LabelDistribution], truth: GroundTruth, k: int,
                vocabulary: LabelVocabulary) -> float:
    """Mean over annotated projects of |truth & top-k| / |truth|; NaN when nothing is evaluable."""
    return recall_details(project_dists, truth, k, vocabulary).value


def unannotated_fraction(annotations: Iterable[LabelDistribution | NodeAnnotation], level: str | None = None) -> float:
    total = hits = 0
    for a in annotations:
        if isinstance(a, NodeAnnotation):
            if level is not None and a.kind != level:
                continue
            a = a.distribution
        total += 1
        hits += not a.annotated
    return hits / total if total else 0.0


def summary(values: Sequence[float]) -> dict:
    """mean / median / quartiles; NaNs when empty."""
    values = sorted(values)
    if not values:
        nan = float("nan")
        return {"n": 0, "mean": nan, "median": nan, "q1": nan, "q3": nan, "min": nan, "max": nan}
    if len(values) == 1:
        q1 = q3 = values[0]
    else:
        q1, _, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return {
        "n": len(values),
        "mean": math.fsum(values) / len(values),
        "median": statistics.median(values),
        "q1": q1,
        "q3": q3,
        "min": values[0],
        "max": values[-1],
    }


def jsd_summary(dists: Iterable[LabelDistribution]) -> dict:
    return summary([d.jsd_vs_uniform for d in dists if d.annotated])


def polarity(project_dists: Mapping[str, LabelDistribution] | Iterable[LabelDistribution],
             pool: int = DEFAULT_POOL) -> int:
    """Number of distinct labels appearing in any project's top-pool list."""
    dists = project_dists.values() if isinstance(project_dists, Mapping) else project_dists
    seen = set()
    for d in dists:
        seen.update(d.ranked(pool))
    return len(seen)


def agreement(lf_a: Mapping[str, LabelDistribution], lf_b: Mapping[str, LabelDistribution],
              pool: int = DEFAULT_POOL) -> float:
    """Mean share of top-pool labels two LFs have in common, over projects both annotated.

    The per-project denominator is the pool, capped at the longer of the two lists so that
    an LF with fewer than ``pool`` positive labels still agrees fully with itself.
    """
    if set(lf_a) != set(lf_b):
        raise ValidationError("agreement needs both LFs evaluated on the same projects")
    ratios = []
    for project in sorted(lf_a):
        a, b = lf_a[project], lf_b[project]
        if not (a.annotated and b.annotated):
            continue
        top_a, top_b = set(a.ranked(pool)), set(b.ranked(pool))
        denom = min(pool, max(len(top_a), len(top_b)))
        ratios.append(len(top_a & top_b) / denom if denom else 1.0)
    return math.fsum(ratios) / len(ratios) if ratios else float("nan")


def agreement_matrix(lfs: Mapping[str, Mapping[str, LabelDistribution]], pool: int = DEFAULT_POOL) -> dict:
    names = sorted(lfs)
    return {a: {b: agreement(lfs[a], lfs[b], pool) for b in names} for a in names}


def package_cohesion(file_dists: Iterable[LabelDistribution]) -> float:
    """1 - mean pairwise JSD among annotated files; fewer than two annotated files give 1."""
    probs = [d.probabilities() for d in file_dists if d.annotated]
    if len(probs) < 2:
        return 1.0
    pairs = [jsd(p, q) for p, q in itertools.combinations(probs, 2)]
    return 1.0 - math.fsum(pairs) / len(pairs)


def cohens_kappa(ratings_a: Sequence[Hashable], ratings_b: Sequence[Hashable]) -> float:
    if len(ratings_a) != len(ratings_b):
        raise ValidationError("rating lists must have equal length")
    n = len(ratings_a)
    if n == 0:
        raise UndefinedKappa("kappa is undefined for zero items")
    observed = sum(x == y for x, y in zip(ratings_a, ratings_b)) / n
    ca, cb = Counter(ratings_a), Counter(ratings_b)
    expected = math.fsum(ca[c] * cb[c] for c in ca) / (n * n)
    if expected == 1.0:
        raise UndefinedKappa("chance agreement is 1 (constant ratings)")
    return (observed - expected) / (1.0 - expected)


@dataclass
class MetricReport:
    rows: list[dict] = field(default_factory=list)
    agreement: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    COLUMNS = (
        "config", "lf", "threshold", "transform", "top_k",
        "recall@3", "recall@5", "recall@10",
        "unannotated_file", "unannotated_package", "unannotated_project",
        "jsd_mean", "jsd_median", "jsd_q1", "jsd_q3",
        "polarity", "cohesion_mean", "cohesion_median", "projects_evaluated",
    )

    def to_json(self) -> dict:
        return {"meta": self.meta, "rows": self.rows, "agreement": self.agreement}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.COLUMNS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({c: _csv_value(row.get(c)) for c in self.COLUMNS})
        return buf.getvalue()


def _csv_value(v):
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return "" if v is None else v


def evaluate_config(config: str, lf: str, threshold: float, transform: str, top_k: int,
                    nodes: Iterable[NodeAnnotation], projects: Mapping[str, LabelDistribution],
                    package_files: Mapping[str, Sequence[LabelDistribution]],
                    truth: GroundTruth, vocabulary: LabelVocabulary, pool: int = DEFAULT_POOL) -> dict:
    """One report row for a single (LF, threshold, transform) cell."""
    nodes = list(nodes)
    row = {"config": config, "lf": lf, "threshold": threshold, "transform": transform, "top_k": top_k}
    for k in RECALL_KS:
        row[f"recall@{k}"] = nan_to_none(recall_at_k(projects, truth, k, vocabulary))
    for level in ("file", "package", "project"):
        row[f"unannotated_{level}"] = unannotated_fraction(nodes, level)
    js = jsd_summary(projects.values())
    for key in ("mean", "median", "q1", "q3"):
        row[f"jsd_{key}"] = nan_to_none(js[key])
    row["polarity"] = polarity(projects, pool)
    coh = summary([package_cohesion(files) for _, files in sorted(package_files.items())])
    row["cohesion_mean"] = nan_to_none(coh["mean"])
    row["cohesion_median"] = nan_to_none(coh["median"])
    row["projects_evaluated"] = sum(1 for p, d in projects.items() if d.annotated and p in truth)
    return row


def nan_to_none(v):
    return None if isinstance(v, float) and math.isnan(v) else v
