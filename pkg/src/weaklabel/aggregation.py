"""Lift file annotations to packages and projects, and pick display labels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .corpus import LabelVocabulary, StructureGraph
from .errors import ValidationError
from .labelling import L1, LabelDistribution, Provenance, jsd_vs_uniform, unannotated


@dataclass(frozen=True)
class AggregationConfig:
    top_k: int = 3
    recursive_packages: bool = True

    def __post_init__(self):
        if self.top_k < 1:
            raise ValidationError("top_k must be >= 1")


@dataclass(frozen=True)
class NodeAnnotation:
    node: str
    kind: str
    distribution: LabelDistribution
    display_label: str | None = None


def mean_distribution(dists: Iterable[LabelDistribution], provenance: Provenance | None = None) -> LabelDistribution:
    """Component-wise mean of the L1-renormalised annotated inputs.

    Sums are exactly rounded, so the result does not depend on input order.
    """
    rows = [d.probabilities() for d in dists if d.annotated]
    if not rows:
        return unannotated(provenance)
    stacked = np.stack(rows)
    mean = np.array([math.fsum(col) for col in stacked.T]) / len(rows)
    return LabelDistribution(mean, L1, True, jsd_vs_uniform(mean), provenance or Provenance())


def aggregate_project(file_annotations: Mapping[str, LabelDistribution] | Iterable[LabelDistribution],
                      provenance: Provenance | None = None) -> LabelDistribution:
    dists = file_annotations.values() if isinstance(file_annotations, Mapping) else file_annotations
    return mean_distribution(dists, provenance)


def aggregate_package(package_id: str, graph: StructureGraph, file_annotations: Mapping[str, LabelDistribution],
                      cfg: AggregationConfig = AggregationConfig(),
                      provenance: Provenance | None = None) -> LabelDistribution:
    if package_id not in graph.nodes or graph.nodes[package_id].kind != "package":
        raise ValidationError(f"no package node {package_id!r} in graph of {graph.project}")
    files = graph.files_in(package_id, recursive=cfg.recursive_packages)
    return mean_distribution((file_annotations[f] for f in files if f in file_annotations), provenance)


def project_top_k(project_dist: LabelDistribution, k: int, vocabulary: LabelVocabulary) -> list[str]:
    """The k most probable positive labels, descending, ties to the lower label index."""
    return [vocabulary.labels[i] for i in project_dist.ranked(k)]


def assign_display_label(dist: LabelDistribution, top_k: Iterable[str], vocabulary: LabelVocabulary) -> str | None:
    """Most probable label among the project's top-K; None marks the node Unannotated."""
    if not dist.annotated or dist.scores is None:
        return None
    best, best_score = None, 0.0
    for i in sorted(vocabulary.index(l) for l in top_k):
        if dist.scores[i] > best_score:
            best, best_score = vocabulary.labels[i], dist.scores[i]
    return best


def aggregate_graph(graph: StructureGraph, file_annotations: Mapping[str, LabelDistribution],
                    vocabulary: LabelVocabulary, cfg: AggregationConfig = AggregationConfig(),
                    provenance: Provenance | None = None) -> dict[str, NodeAnnotation]:
    """Node annotations for the project, every package and every file of one graph."""
    files = {f: file_annotations.get(f, unannotated(provenance)) for f in graph.files_in(graph.root_id)}
    project = aggregate_project(files, provenance)
    top = project_top_k(project, cfg.top_k, vocabulary) if project.annotated else []
    out = {graph.root_id: NodeAnnotation(graph.root_id, "project", project, top[0] if top else None)}
    for node in sorted(graph.of_kind("package"), key=lambda n: n.id):
        dist = aggregate_package(node.id, graph, files, cfg, provenance)
        out[node.id] = NodeAnnotation(node.id, "package", dist, assign_display_label(dist, top, vocabulary))
    for fid in sorted(files):
        dist = files[fid]
        out[fid] = NodeAnnotation(fid, "file", dist, assign_display_label(dist, top, vocabulary))
    return out


def _short_name(graph: StructureGraph, node_id: str) -> str:
    node = graph.nodes[node_id]
    if node.kind == "package":
        return node.name.rsplit(".", 1)[-1] or "(default)"
    if node.kind == "file":
        return node.name.rsplit("/", 1)[-1]
    return node.name


def treemap(graph: StructureGraph, annotations: Mapping[str, NodeAnnotation], vocabulary: LabelVocabulary,
            node_id: str | None = None) -> dict:
    """Nested containment tree with each node's display label and its probability."""
    node_id = node_id or graph.root_id
    ann = annotations.get(node_id)
    label = ann.display_label if ann else None
    prob = 0.0
    if label is not None and ann.distribution.annotated:
        prob = float(ann.distribution.probabilities()[vocabulary.index(label)])
    children = sorted(graph.children(node_id))
    return {
        "name": _short_name(graph, node_id),
        "id": node_id,
        "kind": graph.nodes[node_id].kind,
        "display_label": label,
        "probability": prob,
        "children": [treemap(graph, annotations, vocabulary, c) for c in children],
    }
