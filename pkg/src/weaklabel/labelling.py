"""Labelling functions, JSD filtering and label transformations."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Mapping

import numpy as np

from .corpus import LabelVocabulary
from .embeddings import EmbeddingTable, TextVector, cosine, embed_text
from .errors import UndefinedSimilarity, ValidationError
from .keywords import KeywordTable
from .lexing import Document, split_identifier

L1, L2, ONE_HOT = "L1", "L2", "one-hot"
RAW, T1, TP = "RAW", "T1", "Tp"
TRANSFORMS = (RAW, T1, TP)
DEFAULT_TP_THRESHOLD = 0.05
STANDARD_THRESHOLDS = (0.0, 0.25, 0.5)


@dataclass(frozen=True)
class Provenance:
    lf: str = ""
    modality: str = ""
    threshold: float = 0.0
    transform: str = RAW
    source: str = ""  # winning member, for cascades


@dataclass(frozen=True, eq=False)
class LabelDistribution:
    scores: np.ndarray | None
    norm_kind: str = L1
    annotated: bool = True
    jsd_vs_uniform: float = 0.0
    provenance: Provenance = field(default_factory=Provenance)

    @property
    def size(self) -> int:
        return 0 if self.scores is None else len(self.scores)

    def probabilities(self) -> np.ndarray:
        """L1-renormalised copy of the scores."""
        return l1_normalize(self.scores)

    def ranked(self, pool: int | None = None) -> list[int]:
        """Indices of positive labels by descending score, ties to the lower index."""
        if not self.annotated or self.scores is None:
            return []
        idx = [i for i in np.argsort(-self.scores, kind="stable") if self.scores[i] > 0]
        return [int(i) for i in (idx if pool is None else idx[:pool])]


def unannotated(provenance: Provenance | None = None, jsd_value: float = 0.0) -> LabelDistribution:
    return LabelDistribution(None, L1, False, jsd_value, provenance or Provenance())


@dataclass(frozen=True)
class FilterConfig:
    threshold: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.threshold < 1.0:
            raise ValidationError("filter threshold must lie in [0, 1)")


@dataclass(frozen=True)
class TransformConfig:
    mode: str = RAW
    tp_threshold: float = DEFAULT_TP_THRESHOLD

    def __post_init__(self):
        if self.mode not in TRANSFORMS:
            raise ValidationError(f"unknown transform {self.mode!r}; expected one of {TRANSFORMS}")
        if not 0.0 < self.tp_threshold < 1.0:
            raise ValidationError("tp_threshold must lie in (0, 1)")


def l1_normalize(scores) -> np.ndarray:
    scores = np.asarray(scores, dtype=np.float64)
    total = math.fsum(scores)
    if total <= 0:
        raise ValidationError("cannot L1-normalise a vector with non-positive sum")
    return scores / total


def l2_normalize(scores) -> np.ndarray:
    scores = np.asarray(scores, dtype=np.float64)
    peak = float(np.max(np.abs(scores))) if scores.size else 0.0
    if peak <= 0:
        raise ValidationError("cannot L2-normalise a zero vector")
    scaled = scores / peak  # keeps the squares away from underflow
    return scaled / math.sqrt(math.fsum(scaled * scaled))


_SERIES_CUTOFF = 0.05
_SERIES = np.array([1.0 / (k * (2 * k - 1)) for k in range(8, 0, -1)])  # x^(2k) coefficients, k = 8..1


def _pair_divergence(x: np.ndarray) -> np.ndarray:
    """(1+x)ln(1+x) + (1-x)ln(1-x) for x in [-1, 1], accurate near 0 where the terms cancel."""
    ax = np.abs(x)
    out = np.empty_like(x)
    small = ax < _SERIES_CUTOFF
    x2 = x[small] ** 2
    out[small] = x2 * np.polyval(_SERIES, x2)
    edge = ax == 1.0
    out[edge] = 2.0 * math.log(2.0)
    mid = ~small & ~edge
    xm = x[mid]
    out[mid] = (1.0 + xm) * np.log1p(xm) + (1.0 - xm) * np.log1p(-xm)
    return out


def jsd(p, q) -> float:
    """Jensen-Shannon distance with base-2 logarithms, in [0, 1].

    Each label contributes (p+q)/2 * f((p-q)/(p+q)); this form stays non-negative and
    accurate when p and q nearly coincide.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1:
        raise ValidationError(f"dimension mismatch: {p.shape} vs {q.shape}")
    if np.any(p < 0) or np.any(q < 0):
        raise ValidationError("distributions must be non-negative")
    total = p + q
    live = total > 0
    terms = 0.5 * total[live] * _pair_divergence((p[live] - q[live]) / total[live])
    divergence = 0.5 * math.fsum(terms) / math.log(2.0)
    return math.sqrt(min(1.0, max(0.0, divergence)))


def jsd_vs_uniform(scores) -> float:
    p = l1_normalize(scores)
    return jsd(p, np.full(len(p), 1.0 / len(p)))


def _distribution(scores: np.ndarray, norm_kind: str, provenance: Provenance) -> LabelDistribution:
    return LabelDistribution(scores, norm_kind, True, jsd_vs_uniform(scores), provenance)


def keyword_lf(doc: Document, table: KeywordTable, provenance: Provenance | None = None) -> LabelDistribution:
    """Score each label by the sum of term frequency times keyword weight, then L1-normalise."""
    provenance = provenance or Provenance(lf="keyword", modality=doc.modality)
    n = len(table.vocabulary)
    if doc.empty:
        return unannotated(provenance)
    vectors = table.term_vectors()
    raw = np.zeros(n)
    for term in sorted(doc.terms):
        vec = vectors.get(term)
        if vec is not None:
            raw += doc.terms[term] * vec
    if not np.any(raw > 0):
        return unannotated(provenance)
    return _distribution(l1_normalize(raw), L1, provenance)


def label_vectors(vocabulary: LabelVocabulary, table: EmbeddingTable) -> dict[str, TextVector]:
    """Embed each label as the mean vector of its tokenised name."""
    return {label: embed_text(split_identifier(label), table) for label in vocabulary}


def similarity_lf(
    name_doc: Document,
    label_vecs: Mapping[str, TextVector],
    table: EmbeddingTable,
    vocabulary: LabelVocabulary,
    provenance: Provenance | None = None,
) -> LabelDistribution:
    """Cosine per label, shifted so the minimum is 0 when negative, then L2-normalised.

    Labels whose name cannot be embedded take the minimum score.
    """
    provenance = provenance or Provenance(lf="similarity", modality=name_doc.modality)
    if name_doc.empty:
        return unannotated(provenance)
    node_vec = embed_text(name_doc.expanded(), table)
    if not node_vec.embeddable:
        return unannotated(provenance)
    sims: list[float | None] = []
    for label in vocabulary:
        lv = label_vecs.get(label)
        try:
            sims.append(cosine(node_vec.vector, lv.vector) if lv is not None and lv.embeddable else None)
        except UndefinedSimilarity:
            sims.append(None)
    known = [s for s in sims if s is not None]
    if not known:
        return unannotated(provenance)
    floor = min(known)
    scores = np.array([floor if s is None else s for s in sims], dtype=np.float64)
    return cosines_to_distribution(scores, provenance)


def cosines_to_distribution(cosines, provenance: Provenance | None = None) -> LabelDistribution:
    scores = np.asarray(cosines, dtype=np.float64)
    lo = float(scores.min())
    if lo < 0:
        scores = scores - lo
    if not np.any(scores > 0):
        return unannotated(provenance)
    return _distribution(l2_normalize(scores), L2, provenance or Provenance(lf="similarity"))


def random_lf(node_id: str, global_seed: int, vocabulary: LabelVocabulary,
              provenance: Provenance | None = None) -> LabelDistribution:
    """One-hot on a label drawn uniformly; the draw depends only on (seed, node id)."""
    n = len(vocabulary)
    if n == 0:
        raise ValidationError("random LF needs a non-empty vocabulary")
    digest = hashlib.sha256(f"{global_seed}\x00{node_id}".encode("utf-8")).digest()
    # a 256-bit value reduced mod n: bias below 2**-240 for any realistic vocabulary
    scores = np.zeros(n)
    scores[int.from_bytes(digest, "big") % n] = 1.0
    return LabelDistribution(scores, ONE_HOT, True, _one_hot_jsd(n), provenance or Provenance(lf="random"))


@lru_cache(maxsize=64)
def _one_hot_jsd(n: int) -> float:
    scores = np.zeros(n)
    scores[0] = 1.0
    return jsd_vs_uniform(scores)


def filter_annotation(dist: LabelDistribution, cfg: FilterConfig | float) -> LabelDistribution:
    """Mark the distribution unannotated when its JSD against uniform is below the threshold."""
    threshold = cfg.threshold if isinstance(cfg, FilterConfig) else float(cfg)
    if not dist.annotated:
        return replace(dist, provenance=replace(dist.provenance, threshold=threshold))
    value = jsd_vs_uniform(dist.scores)
    prov = replace(dist.provenance, threshold=threshold)
    if value < threshold:
        return LabelDistribution(None, dist.norm_kind, False, value, prov)
    return replace(dist, jsd_vs_uniform=value, provenance=prov)


def transform(dist: LabelDistribution, cfg: TransformConfig | str) -> LabelDistribution:
    cfg = cfg if isinstance(cfg, TransformConfig) else TransformConfig(cfg)
    prov = replace(dist.provenance, transform=cfg.mode)
    if not dist.annotated:
        return replace(dist, provenance=prov)
    if cfg.mode == RAW:
        return replace(dist, provenance=prov)
    if cfg.mode == T1:
        scores = np.zeros(len(dist.scores))
        scores[int(np.argmax(dist.scores))] = 1.0
        return replace(dist, scores=scores, norm_kind=ONE_HOT, provenance=prov)
    kept = np.where(dist.scores > cfg.tp_threshold, dist.scores, 0.0)
    if not np.any(kept > 0):
        return LabelDistribution(None, L2, False, dist.jsd_vs_uniform, prov)
    return replace(dist, scores=l2_normalize(kept), norm_kind=L2, provenance=prov)


def apply_configs(dist: LabelDistribution, threshold: float, transform_cfg: TransformConfig) -> LabelDistribution:
    """Raw LF output -> JSD filter -> transformation of survivors."""
    return transform(filter_annotation(dist, FilterConfig(threshold)), transform_cfg)


def to_record(dist: LabelDistribution, vocabulary: LabelVocabulary, project: str, path: str,
              kind: str = "file", **extra) -> dict:
    scores = {}
    if dist.annotated and dist.scores is not None:
        scores = {vocabulary.labels[i]: float(s) for i, s in enumerate(dist.scores) if s != 0}
    rec = {
        "project": project,
        "path": path,
        "kind": kind,
        "lf": dist.provenance.lf,
        "modality": dist.provenance.modality,
        "threshold": dist.provenance.threshold,
        "transform": dist.provenance.transform,
        "annotated": bool(dist.annotated),
        "jsd": float(dist.jsd_vs_uniform),
        "norm": dist.norm_kind,
        "scores": scores,
    }
    if dist.provenance.source:
        rec["source"] = dist.provenance.source
    rec.update(extra)
    return rec


def from_record(rec: Mapping, vocabulary: LabelVocabulary) -> LabelDistribution:
    prov = Provenance(rec["lf"], rec.get("modality", ""), float(rec["threshold"]), rec["transform"],
                      rec.get("source", ""))
    if not rec["annotated"]:
        return LabelDistribution(None, rec.get("norm", L1), False, float(rec["jsd"]), prov)
    scores = np.zeros(len(vocabulary))
    for label, s in rec["scores"].items():
        scores[vocabulary.index(label)] = s
    return LabelDistribution(scores, rec.get("norm", L1), True, float(rec["jsd"]), prov)
