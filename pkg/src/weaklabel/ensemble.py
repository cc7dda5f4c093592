"""Cascade and rank-weighted voting over several labelling functions."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .labelling import L2, LabelDistribution, Provenance, jsd_vs_uniform, l2_normalize, unannotated

CASCADE, VOTE = "csc", "vt"
DEFAULT_POOL = 10


@dataclass(frozen=True)
class EnsembleConfig:
    kind: str
    members: tuple[str, ...]
    vote_pool: int = DEFAULT_POOL

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if self.kind not in (CASCADE, VOTE):
            raise ValidationError(f"ensemble kind must be {CASCADE!r} or {VOTE!r}, got {self.kind!r}")
        if len(self.members) < 2:
            raise ValidationError("an ensemble needs at least two members")
        if self.vote_pool < 1:
            raise ValidationError("vote_pool must be >= 1")

    @property
    def name(self) -> str:
        return f"{self.kind}:({','.join(self.members)})"

    @classmethod
    def parse(cls, spec: str, vote_pool: int = DEFAULT_POOL) -> "EnsembleConfig":
        """Parse ``csc:a,b`` / ``vt:(a,b)``."""
        kind, sep, rest = spec.partition(":")
        if not sep:
            raise ValidationError(f"ensemble spec must look like 'csc:lf1,lf2', got {spec!r}")
        rest = rest.strip()
        if rest.startswith("(") and rest.endswith(")"):
            rest = rest[1:-1]
        members = [m.strip() for m in rest.split(",") if m.strip()]
        return cls(kind.strip().lower(), tuple(members), vote_pool)


def cascade(annotations: Sequence[LabelDistribution], members: Sequence[str] | None = None,
            name: str = CASCADE) -> LabelDistribution:
    """First annotated member wins; its distribution is returned unchanged apart from provenance."""
    if not annotations:
        raise ValidationError("cascade needs at least one member annotation")
    for i, dist in enumerate(annotations):
        if dist.annotated:
            winner = members[i] if members else dist.provenance.lf
            return replace(dist, provenance=replace(dist.provenance, lf=name, source=winner))
    return unannotated(replace(annotations[0].provenance, lf=name, modality="", source=""))


def vote(annotations: Sequence[LabelDistribution], pool: int = DEFAULT_POOL,
         name: str = VOTE) -> LabelDistribution:
    """Each annotated member gives weight pool+1-r to its rank-r positive label; sums are L2-normalised."""
    voters = [d for d in annotations if d.annotated]
    prov = Provenance(lf=name)
    if not voters:
        return unannotated(prov)
    total = np.zeros(voters[0].size)
    for dist in voters:
        for rank, idx in enumerate(dist.ranked(pool), start=1):
            total[idx] += pool + 1 - rank
    if not np.any(total > 0):
        return unannotated(prov)
    return LabelDistribution(l2_normalize(total), L2, True, jsd_vs_uniform(total), prov)
