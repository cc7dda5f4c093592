"""Static word-vector tables in word2vec text format, text embedding and cosine similarity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ParseError, UndefinedSimilarity

SUBWORD_MIN = 3
SUBWORD_MAX = 6


@dataclass(frozen=True)
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray]
    subword_ngrams: dict[str, np.ndarray] | None = None

    def __contains__(self, word):
        return word in self.vectors

    def __len__(self):
        return len(self.vectors)

    def word_vector(self, word: str) -> np.ndarray | None:
        vec = self.vectors.get(word)
        if vec is not None or not self.subword_ngrams:
            return vec
        grams = [self.subword_ngrams[g] for g in sorted(char_ngrams(word)) if g in self.subword_ngrams]
        if not grams:
            return None
        return np.mean(np.stack(grams), axis=0)


@dataclass(frozen=True)
class TextVector:
    vector: np.ndarray | None
    covered_terms: int
    total_terms: int

    @property
    def embeddable(self) -> bool:
        return self.covered_terms > 0


def char_ngrams(word: str, lo: int = SUBWORD_MIN, hi: int = SUBWORD_MAX) -> set[str]:
    marked = f"<{word}>"
    return {marked[i:i + n] for n in range(lo, hi + 1) for i in range(len(marked) - n + 1)}


def _parse_word2vec(path) -> tuple[int, dict[str, np.ndarray]]:
    path = Path(path)
    with path.open(encoding="utf-8", newline="\n") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ParseError("header must be 'V D'", path=path, line=1)
        try:
            n_words, dim = int(header[0]), int(header[1])
        except ValueError:
            raise ParseError("header must contain two integers", path=path, line=1) from None
        if n_words < 0 or dim <= 0:
            raise ParseError("header counts out of range", path=path, line=1)
        vectors: dict[str, np.ndarray] = {}
        lineno = 1
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").rstrip("\r").split(" ")
            parts = [p for p in parts if p != ""]
            if not parts:
                continue
            word, comps = parts[0], parts[1:]
            if len(comps) != dim:
                raise ParseError(f"expected {dim} components for {word!r}, got {len(comps)}", path=path, line=lineno)
            try:
                vec = np.array([float(c) for c in comps], dtype=np.float64)
            except ValueError:
                raise ParseError(f"non-numeric component for {word!r}", path=path, line=lineno) from None
            if not np.all(np.isfinite(vec)):
                raise ParseError(f"non-finite component for {word!r}", path=path, line=lineno)
            if word in vectors:
                raise ParseError(f"duplicate word {word!r}", path=path, line=lineno)
            vectors[word] = vec
        if len(vectors) != n_words:
            raise ParseError(f"header declares {n_words} words, found {len(vectors)}", path=path, line=lineno)
    return dim, vectors


def load_embedding_table(path, format: str = "word2vec-text", subword_path=None) -> EmbeddingTable:
    """Load a word2vec text table; ``subword_path`` optionally adds character n-gram vectors in the same format."""
    if format != "word2vec-text":
        raise ValueError(f"unsupported embedding format: {format}")
    dim, vectors = _parse_word2vec(path)
    subwords = None
    if subword_path is not None:
        sub_dim, subwords = _parse_word2vec(subword_path)
        if sub_dim != dim:
            raise ParseError(f"subword dimension {sub_dim} != word dimension {dim}", path=subword_path, line=1)
    return EmbeddingTable(dim, vectors, subwords)


def embed_text(terms: Sequence[str], table: EmbeddingTable) -> TextVector:
    """Frequency-weighted mean of the term vectors; unknown terms use subwords when available."""
    found = []
    for term in sorted(terms):
        vec = table.word_vector(term)
        if vec is not None:
            found.append(vec)
    if not found:
        return TextVector(None, 0, len(terms))
    return TextVector(np.mean(np.stack(found), axis=0), len(found), len(terms))


def cosine(u, v) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu, nv = math.sqrt(float(np.dot(u, u))), math.sqrt(float(np.dot(v, v)))
    if nu == 0.0 or nv == 0.0:
        raise UndefinedSimilarity("cosine similarity is undefined for zero-norm vectors")
    return min(1.0, max(-1.0, float(np.dot(u, v)) / (nu * nv)))
