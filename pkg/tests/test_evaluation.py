import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import make_dist
from weaklabel.corpus import LabelVocabulary, parse_ground_truth
from weaklabel.errors import UndefinedKappa, ValidationError
from weaklabel.evaluation import (
    MetricReport,
    agreement,
    cohens_kappa,
    package_cohesion,
    polarity,
    recall_at_k,
    recall_details,
    summary,
    unannotated_fraction,
)
from weaklabel.labelling import unannotated

VOCAB = LabelVocabulary([f"L{i}" for i in range(1, 31)])


def top_list(*labels, n=30):
    """Distribution ranking ``labels`` first, in order."""
    scores = np.zeros(n)
    for rank, label in enumerate(labels):
        scores[VOCAB.index(label)] = len(labels) - rank
    return make_dist(scores)


def truth(**projects):
    return parse_ground_truth([{"project": p, "labels": list(ls)} for p, ls in projects.items()])


class TestRecall:
    def test_half(self):
        projects = {"p": top_list("L1", "L3", "L4")}
        assert recall_at_k(projects, truth(p=["L1", "L2"]), 3, VOCAB) == 0.5

    def test_full(self):
        projects = {"p": top_list("L2", "L1", "L9")}
        assert recall_at_k(projects, truth(p=["L1", "L2"]), 3, VOCAB) == 1.0

    def test_none(self):
        projects = {"p": top_list("L5", "L6", "L7")}
        assert recall_at_k(projects, truth(p=["L1"]), 3, VOCAB) == 0.0

    def test_mean_over_projects(self):
        projects = {"p": top_list("L1"), "q": top_list("L5")}
        assert recall_at_k(projects, truth(p=["L1"], q=["L1"]), 3, VOCAB) == 0.5

    def test_missing_from_truth_excluded(self):
        projects = {"p": top_list("L1"), "extra": top_list("L5")}
        res = recall_details(projects, truth(p=["L1"]), 3, VOCAB)
        assert res.value == 1.0 and res.missing_from_truth == ("extra",)

    def test_unannotated_skipped(self):
        projects = {"p": top_list("L1"), "q": unannotated()}
        res = recall_details(projects, truth(p=["L1"], q=["L1"]), 3, VOCAB)
        assert res.value == 1.0 and res.unannotated == ("q",)

    def test_nothing_evaluable(self):
        assert math.isnan(recall_at_k({}, truth(p=["L1"]), 3, VOCAB))


class TestUnannotatedFraction:
    def test_values(self):
        assert unannotated_fraction([make_dist([1, 0])] * 4) == 0.0
        assert unannotated_fraction([unannotated()] * 4) == 1.0
        mixed = [unannotated()] * 3 + [make_dist([1, 0])] * 7
        assert unannotated_fraction(mixed) == pytest.approx(0.3, abs=1e-15)

    def test_empty(self):
        assert unannotated_fraction([]) == 0.0


class TestPolarity:
    def test_disjoint(self):
        a = top_list(*[f"L{i}" for i in range(1, 11)])
        b = top_list(*[f"L{i}" for i in range(11, 21)])
        assert polarity([a, b]) == 20

    def test_identical(self):
        a = top_list(*[f"L{i}" for i in range(1, 11)])
        assert polarity({"p": a, "q": a}) == 10


class TestAgreement:
    def test_identical(self):
        a = {"p": top_list("L1", "L2", "L3")}
        assert agreement(a, a) == 1.0

    def test_disjoint(self):
        assert agreement({"p": top_list("L1", "L2")}, {"p": top_list("L3", "L4")}) == 0.0

    def test_half(self):
        a = {"p": top_list(*[f"L{i}" for i in range(1, 11)])}
        b = {"p": top_list(*[f"L{i}" for i in range(6, 16)])}
        assert agreement(a, b) == 0.5
        assert agreement(b, a) == 0.5

    def test_mismatched_projects(self):
        with pytest.raises(ValidationError):
            agreement({"p": top_list("L1")}, {"q": top_list("L1")})


class TestCohesion:
    def test_identical_files(self):
        d = make_dist([0.3, 0.7])
        assert package_cohesion([d, d, d]) == 1.0

    def test_disjoint_one_hots(self):
        assert package_cohesion([make_dist([1, 0]), make_dist([0, 1])]) == 0.0

    def test_single_file(self):
        assert package_cohesion([make_dist([1, 0])]) == 1.0
        assert package_cohesion([make_dist([1, 0]), unannotated()]) == 1.0

    def test_adding_a_duplicate_can_lower_cohesion(self):
        a, d = make_dist([1, 0]), make_dist([0, 1])
        assert package_cohesion([a, a, a, d]) == pytest.approx(0.5, abs=1e-15)
        assert package_cohesion([a, a, a, d, d]) == pytest.approx(0.4, abs=1e-15)


class TestKappa:
    def test_chance_level(self):
        assert cohens_kappa([1, 1, 0, 0], [1, 0, 1, 0]) == 0.0

    def test_identity(self):
        assert cohens_kappa(list("abcab"), list("abcab")) == 1.0

    def test_constant(self):
        with pytest.raises(UndefinedKappa):
            cohens_kappa([1, 1, 1], [1, 1, 1])

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            cohens_kappa([1], [1, 0])

    def test_known_value(self):
        # 2x2 table [[20, 5], [10, 15]]: po = .7, pe = .5
        a = [1] * 25 + [0] * 25
        b = [1] * 20 + [0] * 5 + [1] * 10 + [0] * 15
        assert cohens_kappa(a, b) == pytest.approx(0.4, abs=1e-15)


def test_summary():
    s = summary([4.0, 1.0, 3.0, 2.0, 5.0])
    assert (s["mean"], s["median"], s["q1"], s["q3"]) == (3.0, 3.0, 2.0, 4.0)
    assert math.isnan(summary([])["mean"])


def test_report_round_trip():
    row = {"config": "c", "lf": "keyword-name", "threshold": 0.2, "transform": "RAW", "top_k": 3,
           "recall@3": 0.5, "jsd_mean": float("nan"), "polarity": 7}
    report = MetricReport(rows=[row])
    parsed = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert tuple(parsed[0]) == MetricReport.COLUMNS
    assert parsed[0]["recall@3"] == "0.5" and parsed[0]["jsd_mean"] == "" and parsed[0]["polarity"] == "7"
    assert report.to_json()["rows"] == [row]


probs = arrays(np.float64, 5, elements=st.floats(0, 1)).filter(lambda a: a.sum() > 1e-6)


@settings(max_examples=200)
@given(st.lists(probs, min_size=1, max_size=6))
def test_cohesion_range_and_whole_package_duplication(rows):
    files = [make_dist(r) for r in rows]
    c = package_cohesion(files)
    assert 0.0 <= c <= 1.0
    assert package_cohesion(files + files) >= c - 1e-12


@settings(max_examples=200)
@given(probs, probs, st.integers(0, 1))
def test_cohesion_duplicate_in_pair(a, b, which):
    files = [make_dist(a), make_dist(b)]
    assert package_cohesion(files + [files[which]]) >= package_cohesion(files) - 1e-12


labels_lists = st.lists(st.sampled_from(VOCAB.labels[:15]), min_size=1, max_size=10, unique=True)


@settings(max_examples=200)
@given(st.dictionaries(st.sampled_from(["p", "q", "r"]), st.tuples(labels_lists, labels_lists), min_size=1))
def test_agreement_symmetric_and_bounded(pairs):
    a = {p: top_list(*x) for p, (x, _) in pairs.items()}
    b = {p: top_list(*y) for p, (_, y) in pairs.items()}
    v = agreement(a, b)
    assert 0.0 <= v <= 1.0
    assert v == agreement(b, a)
    assert agreement(a, a) == 1.0


@settings(max_examples=100)
@given(labels_lists, st.lists(labels_lists, min_size=1, max_size=3))
def test_recall_monotone_in_k(truth_labels, predictions):
    gt = truth(**{f"p{i}": truth_labels for i in range(len(predictions))})
    projects = {f"p{i}": top_list(*ls) for i, ls in enumerate(predictions)}
    values = [recall_at_k(projects, gt, k, VOCAB) for k in (1, 3, 5, 10)]
    assert values == sorted(values)


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=50))
def test_kappa_symmetric_and_bounded(pairs):
    a, b = [x for x, _ in pairs], [y for _, y in pairs]
    try:
        k = cohens_kappa(a, b)
    except UndefinedKappa:
        assert len(set(a)) == 1 and a == b
        return
    assert -1.0 - 1e-12 <= k <= 1.0 + 1e-12
    assert k == pytest.approx(cohens_kappa(b, a), abs=1e-12)
