"""Run configuration: YAML file plus command-line overrides."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import yaml

from .errors import ConfigError
from .labelling import DEFAULT_TP_THRESHOLD, TRANSFORMS

KEYWORD_LFS = ("keyword-name", "keyword-identifiers")
RANDOM_LF = "random"
SIMILARITY_PREFIX = "similarity-"

_PATH_FIELDS = ("labels", "truth", "keyword_table", "stopwords", "out")


@dataclass
class RunConfig:
    corpus: list[str] = field(default_factory=list)
    labels: str | None = None
    truth: str | None = None
    keyword_table: str | None = None
    embeddings: dict[str, str] = field(default_factory=dict)
    subwords: dict[str, str] = field(default_factory=dict)
    stopwords: str | None = None
    extension: str = ".java"
    lfs: list[str] = field(default_factory=lambda: ["keyword-name"])
    thresholds: list[float] = field(default_factory=lambda: [0.0])
    transforms: list[str] = field(default_factory=lambda: ["RAW"])
    tp_threshold: float = DEFAULT_TP_THRESHOLD
    ensembles: list[str] = field(default_factory=list)
    vote_pool: int = 10
    vote_member_threshold: float = 0.0
    top_k: int = 3
    recursive_packages: bool = True
    max_ngram: int = 3
    window: int = 1
    top_n: int = 100
    seed: int = 0
    jobs: int = 1
    out: str = "weaklabel-out"

    @classmethod
    def from_mapping(cls, data: dict, base_dir: Path | None = None) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}")
        cfg = cls(**data)
        if base_dir is not None:
            cfg.resolve_paths(base_dir)
        return cfg

    @classmethod
    def load(cls, path) -> "RunConfig":
        path = Path(path)
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a mapping")
        return cls.from_mapping(data, path.parent)

    def resolve_paths(self, base_dir: Path) -> None:
        def res(p):
            return p if p is None or Path(p).is_absolute() else str((base_dir / p).resolve())

        self.corpus = [res(p) for p in self.corpus]
        for name in _PATH_FIELDS:
            setattr(self, name, res(getattr(self, name)))
        self.embeddings = {k: res(v) for k, v in self.embeddings.items()}
        self.subwords = {k: res(v) for k, v in self.subwords.items()}

    def validate(self) -> None:
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        for t in self.thresholds:
            if not 0.0 <= t < 1.0:
                raise ConfigError(f"threshold {t} outside [0, 1)")
        for t in self.transforms:
            if t not in TRANSFORMS:
                raise ConfigError(f"unknown transform {t!r}; choose from {TRANSFORMS}")
        if not 0.0 < self.tp_threshold < 1.0:
            raise ConfigError("tp-threshold must lie in (0, 1)")
        if self.top_k < 1 or self.vote_pool < 1:
            raise ConfigError("topk and vote_pool must be >= 1")
        for lf in self.all_base_lfs():
            if lf in KEYWORD_LFS or lf == RANDOM_LF:
                continue
            if lf.startswith(SIMILARITY_PREFIX):
                name = lf[len(SIMILARITY_PREFIX):]
                if name not in self.embeddings:
                    raise ConfigError(f"LF {lf} needs an embedding table named {name!r} (--embedding {name}=PATH)")
                continue
            raise ConfigError(f"unknown LF {lf!r}")

    def ensemble_configs(self):
        from .ensemble import EnsembleConfig

        try:
            return [EnsembleConfig.parse(e, self.vote_pool) for e in self.ensembles]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def all_base_lfs(self) -> list[str]:
        lfs = list(self.lfs)
        for ens in self.ensemble_configs():
            lfs.extend(m for m in ens.members if m not in lfs)
        return lfs

    def needs_keyword_table(self) -> bool:
        return any(lf in KEYWORD_LFS for lf in self.all_base_lfs())

    def to_mapping(self) -> dict:
        """Effective configuration minus the worker count and output directory, which never affect results."""
        data = asdict(self)
        data.pop("jobs")
        data.pop("out")
        return data

    def digest(self, *keys: str, extra: dict | None = None) -> str:
        data = self.to_mapping()
        picked = {k: data[k] for k in keys} if keys else data
        if extra:
            picked.update(extra)
        blob = json.dumps(picked, sort_keys=True, default=str).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:10]

    def dump(self, path) -> None:
        Path(path).write_text(yaml.safe_dump(self.to_mapping(), sort_keys=True), encoding="utf-8")
