"""Statistical keyword extraction over project file names and the label keyword table.

Term scoring follows the YAKE! feature set: casing, position, normalised frequency,
relatedness to context and sentence dispersion. Each file path is one pseudo-sentence.
"""

from __future__ import annotations

import json
import math
import statistics
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import GroundTruth, LabelVocabulary, SourceFileRef
from .errors import ValidationError
from .lexing import default_stopwords, path_segments, split_fragments

DEFAULT_MAX_NGRAM = 3
DEFAULT_WINDOW = 1
DEFAULT_TOP_N = 100


@dataclass(frozen=True)
class Token:
    term: str
    surface: str
    position: int
    sentence: int


@dataclass(frozen=True)
class ProjectText:
    project: str
    tokens: tuple[Token, ...]

    @property
    def n_sentences(self) -> int:
        return len({t.sentence for t in self.tokens})

    def sentences(self) -> list[list[Token]]:
        groups: dict[int, list[Token]] = defaultdict(list)
        for tok in self.tokens:
            groups[tok.sentence].append(tok)
        return [groups[k] for k in sorted(groups)]


def project_text(project: str, paths: Iterable[SourceFileRef | str], stopwords=None) -> ProjectText:
    """Token stream over file paths; files contributing no terms do not open a sentence."""
    stopwords = default_stopwords() if stopwords is None else stopwords
    tokens = []
    sentence = 0
    for p in paths:
        rel = p.relative_path if isinstance(p, SourceFileRef) else p
        frags = [f for seg in path_segments(rel) for f in split_fragments(seg)]
        frags = [f for f in frags if f.lower() not in stopwords]
        if not frags:
            continue
        for f in frags:
            tokens.append(Token(f.lower(), f, len(tokens), sentence))
        sentence += 1
    return ProjectText(project, tuple(tokens))


def text_from_sentences(project: str, sentences: Sequence[Sequence[str]]) -> ProjectText:
    """Build a ProjectText directly from pre-tokenised sentences (surface forms kept)."""
    tokens = []
    for s, words in enumerate(w for w in sentences if w):
        for w in words:
            tokens.append(Token(w.lower(), w, len(tokens), s))
    return ProjectText(project, tuple(tokens))


@dataclass(frozen=True)
class TermFeatures:
    tf: int
    casing: float
    position: float
    frequency: float
    relatedness: float
    dispersion: float
    score: float


@dataclass(frozen=True)
class ScoredKeyword:
    text: str
    score: float

    def to_json(self) -> dict:
        return {"text": self.text, "score": self.score}


def term_features(text: ProjectText, window: int = DEFAULT_WINDOW) -> dict[str, TermFeatures]:
    if window < 1:
        raise ValueError("window must be >= 1")
    tokens = text.tokens
    if not tokens:
        return {}
    tf = Counter(t.term for t in tokens)
    upper = Counter()
    acronym = Counter()
    sentences_of: dict[str, set[int]] = defaultdict(set)
    left: dict[str, Counter] = defaultdict(Counter)
    right: dict[str, Counter] = defaultdict(Counter)

    for sent in text.sentences():
        for i, tok in enumerate(sent):
            sentences_of[tok.term].add(tok.sentence)
            if len(tok.surface) > 1 and tok.surface.isupper():
                acronym[tok.term] += 1
            elif i > 0 and tok.surface[0].isupper():
                upper[tok.term] += 1
            for j in range(max(0, i - window), i):
                other = sent[j].term
                left[tok.term][other] += 1
                right[other][tok.term] += 1

    counts = list(tf.values())
    mean_tf = statistics.fmean(counts)
    std_tf = statistics.pstdev(counts)
    max_tf = max(counts)
    n_sent = text.n_sentences

    out = {}
    for term, f in tf.items():
        casing = max(upper[term], acronym[term]) / (1.0 + math.log(f))
        position = math.log(math.log(3.0 + statistics.median(sorted(sentences_of[term]))))
        frequency = f / (mean_tf + std_tf)
        dl = len(left[term]) / sum(left[term].values()) if left[term] else 0.0
        dr = len(right[term]) / sum(right[term].values()) if right[term] else 0.0
        relatedness = 1.0 + (dl + dr) * f / max_tf
        dispersion = len(sentences_of[term]) / n_sent
        score = (relatedness * position) / (casing + frequency / relatedness + dispersion / relatedness)
        out[term] = TermFeatures(f, casing, position, frequency, relatedness, dispersion, score)
    return out


def extract_project_keywords(
    text: ProjectText,
    max_ngram: int = DEFAULT_MAX_NGRAM,
    window: int = DEFAULT_WINDOW,
    top_n: int = DEFAULT_TOP_N,
) -> list[ScoredKeyword]:
    """Rank candidate 1..max_ngram keywords; lower scores are more important."""
    if max_ngram < 1 or top_n < 1:
        raise ValueError("max_ngram and top_n must be >= 1")
    feats = term_features(text, window)
    if not feats:
        return []
    kw_tf: Counter = Counter()
    for sent in text.sentences():
        terms = [t.term for t in sent]
        for n in range(1, max_ngram + 1):
            for i in range(len(terms) - n + 1):
                kw_tf[tuple(terms[i:i + n])] += 1

    scored = []
    for gram, f in kw_tf.items():
        prod = math.prod(feats[t].score for t in gram)
        total = math.fsum(feats[t].score for t in gram)
        scored.append(ScoredKeyword(" ".join(gram), prod / (f * (1.0 + total))))
    scored.sort(key=lambda k: (k.score, k.text))
    return scored[:top_n]


def keywords_to_json(project: str, keywords: Sequence[ScoredKeyword]) -> dict:
    return {"project": project, "keywords": [k.to_json() for k in keywords]}


def keywords_from_json(data: dict) -> tuple[str, list[ScoredKeyword]]:
    return data["project"], [ScoredKeyword(k["text"], float(k["score"])) for k in data["keywords"]]


class KeywordTable:
    """Label -> {keyword -> TF-IDF weight}, over a fixed label vocabulary."""

    def __init__(self, vocabulary: LabelVocabulary, weights: Mapping[str, Mapping[str, float]]):
        self.vocabulary = vocabulary
        unknown = set(weights) - set(vocabulary)
        if unknown:
            raise ValidationError(f"keyword table labels not in vocabulary: {sorted(unknown)}")
        self.weights = {
            label: dict(sorted((k, float(w)) for k, w in weights.get(label, {}).items()))
            for label in vocabulary
        }
        for label, kws in self.weights.items():
            if any(w < 0 or not math.isfinite(w) for w in kws.values()):
                raise ValidationError(f"negative or non-finite weight under label {label}")
        self._term_vectors: dict[str, np.ndarray] | None = None

    def weight(self, keyword: str, label: str) -> float:
        return self.weights.get(label, {}).get(keyword, 0.0)

    def term_vectors(self) -> dict[str, np.ndarray]:
        """Per single term, its weight for every label.

        Multi-term keywords are decomposed into their terms; a term reached through several
        keywords of the same label takes the largest of their weights.
        """
        if self._term_vectors is None:
            vecs: dict[str, np.ndarray] = {}
            for j, label in enumerate(self.vocabulary):
                for kw, w in self.weights[label].items():
                    for term in kw.split():
                        vec = vecs.setdefault(term, np.zeros(len(self.vocabulary)))
                        vec[j] = max(vec[j], w)
            self._term_vectors = vecs
        return self._term_vectors

    def to_json(self) -> dict:
        return {"labels": {label: self.weights[label] for label in self.vocabulary}}

    @classmethod
    def from_json(cls, data: dict, vocabulary: LabelVocabulary) -> "KeywordTable":
        return cls(vocabulary, data["labels"])

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path, vocabulary: LabelVocabulary) -> "KeywordTable":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")), vocabulary)


def build_keyword_table(
    project_keywords: Mapping[str, Sequence[ScoredKeyword | str]],
    truth: GroundTruth,
    vocabulary: LabelVocabulary | None = None,
) -> KeywordTable:
    """TF counts projects per label containing the keyword; IDF is ln(|labels| / DF)."""
    missing = sorted(p for p in project_keywords if p not in truth)
    if missing:
        raise ValidationError(f"projects missing from ground truth: {missing}")
    if vocabulary is None:
        vocabulary = LabelVocabulary({l for p in truth for l in truth[p]})
    tf: dict[str, Counter] = defaultdict(Counter)
    for project in sorted(project_keywords):
        texts = {k.text if isinstance(k, ScoredKeyword) else k for k in project_keywords[project]}
        for label in truth[project]:
            if label not in vocabulary:
                raise ValidationError(f"label {label!r} of {project} not in vocabulary")
            for t in texts:
                tf[t][label] += 1
    n_labels = len(vocabulary)
    weights: dict[str, dict[str, float]] = defaultdict(dict)
    for t, per_label in tf.items():
        df = len(per_label)
        idf = math.log(n_labels / df)
        for label, count in per_label.items():
            w = count * idf
            if w > 0:
                weights[label][t] = w
    return KeywordTable(vocabulary, weights)
