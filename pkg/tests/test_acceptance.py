"""Acceptance criteria, one test per criterion, each reporting a PASS/FAIL line.

Lines are printed as the tests run (visible with ``-s``) and repeated in the terminal summary.
Two literal reference values are known to be inconsistent with their own definitions; those
checks are strict xfails that still report FAIL, next to passing checks of the exact values.
"""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, make_dist, mixture_with_jsd, run_minicorpus, validate_outputs
from weaklabel.aggregation import AggregationConfig, aggregate_package, aggregate_project
from weaklabel.corpus import ProjectRef, SourceFileRef, build_structure_graph, directory_package
from weaklabel.ensemble import vote
from weaklabel.evaluation import cohens_kappa
from weaklabel.labelling import TransformConfig, filter_annotation, jsd, transform, unannotated
from weaklabel.lexing import file_name_document
from weaklabel.pipeline import read_jsonl


def report(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


# --- 1. Tp on a keyword-LF score vector ---------------------------------------

TP_SCORES = (0.1192, 0.1100, 0.0825, 0.0550, 0.0550)
TP_FILLERS = (0.049, 0.04, 0.031, 0.02, 0.0125, 0.01, 0.005, 0.001)
TP_EXPECTED = (0.6022, 0.5588, 0.4169, 0.2779, 0.2779)


def tp_output():
    dist = make_dist(np.array(TP_SCORES + TP_FILLERS))
    return transform(dist, TransformConfig("Tp", 0.05)).scores


def test_criterion_1_tp_reproduction():
    start = time.perf_counter()
    out = tp_output()
    elapsed = time.perf_counter() - start
    close = [i for i in range(5) if i != 1 and abs(out[i] - TP_EXPECTED[i]) <= 1e-3]
    zeros = bool(np.all(out[5:] == 0.0))
    ok = len(close) == 4 and zeros and elapsed < 1.0
    report("1a", ok, f"entries 1,3,4,5 within 1e-3: {len(close)}/4, fillers exactly 0: {zeros}, {elapsed:.4f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="0.1100 / L2-norm of the five survivors is 0.5558, not 0.5588")
def test_criterion_1_tp_second_entry_literal():
    value = tp_output()[1]
    ok = abs(value - TP_EXPECTED[1]) <= 1e-3
    report("1b", ok, f"second entry {value:.6f} vs reference {TP_EXPECTED[1]}, tolerance 1e-3")
    assert ok


# --- 2. voting ensemble ---------------------------------------------------------

def test_criterion_2_vote_reproduction():
    n = 40
    first, second = np.zeros(n), np.zeros(n)
    first[:10] = np.arange(10, 0, -1)
    second[10:20] = np.arange(10, 0, -1)
    start = time.perf_counter()
    out = vote([make_dist(first), make_dist(second)], pool=10).scores
    elapsed = time.perf_counter() - start
    top, ninth = out[0], out[1]
    descending = sorted(out[out > 0], reverse=True)
    expected = sorted([k / math.sqrt(770) for k in range(1, 11)] * 2, reverse=True)
    order_ok = np.allclose(descending, expected, rtol=0, atol=1e-15) and np.count_nonzero(out) == 20
    ok = abs(top - 0.3603) <= 5e-4 and abs(ninth - 0.3243) <= 5e-4 and order_ok and elapsed < 1.0
    report(2, ok, f"top {top:.6f}, rank-9 weight {ninth:.6f}, descending order: {order_ok}, {elapsed:.4f}s")
    assert ok


# --- 3. JSD filter gate ---------------------------------------------------------

def test_criterion_3_jsd_gate():
    strong = make_dist(mixture_with_jsd(20, 0.74))
    weak = make_dist(mixture_with_jsd(20, 0.20))
    kept = [filter_annotation(strong, t).annotated for t in (0.25, 0.5)]
    dropped = [not filter_annotation(weak, t).annotated for t in (0.25, 0.5)]
    ok = all(kept) and all(dropped)
    report(3, ok, f"jsd {strong.jsd_vs_uniform:.4f} kept at 0.25/0.5: {kept}, "
                  f"jsd {weak.jsd_vs_uniform:.4f} dropped: {dropped}")
    assert ok


# --- 4. tokenizer ---------------------------------------------------------------

def test_criterion_4_tokenizer():
    terms = set(file_name_document("classifiers/meta/ClassificationViaClustering.java").terms)
    ok = terms == {"classifiers", "meta", "classification", "via", "clustering"}
    report(4, ok, f"terms {sorted(terms)}")
    assert ok


# --- 5. JSD metric suite --------------------------------------------------------

JSD_ONEHOT2_VS_HALF = 0.5579230452841438
JSD_ONEHOT4_VS_UNIFORM = 0.740806952380577
HAND_VALUES = (0.557913, 0.740814)


def test_criterion_5_jsd_metric():
    rng = np.random.default_rng(5)
    worst_sym = worst_id = 0.0
    in_range = True
    for _ in range(1000):
        p, q = rng.dirichlet(np.ones(6) * 0.5, size=2)
        d = jsd(p, q)
        in_range &= 0.0 <= d <= 1.0
        worst_sym = max(worst_sym, abs(d - jsd(q, p)))
        worst_id = max(worst_id, jsd(p, p))
    triangle_violations = 0
    for _ in range(1500):
        n = int(rng.integers(2, 12))
        p, q, r = rng.dirichlet(np.ones(n) * rng.choice([0.1, 1.0, 5.0]), size=3)
        if jsd(p, r) > jsd(p, q) + jsd(q, r) + 1e-9:
            triangle_violations += 1
    exact = (abs(jsd([1, 0], [0.5, 0.5]) - JSD_ONEHOT2_VS_HALF) <= 1e-12
             and abs(jsd([1, 0, 0, 0], [0.25] * 4) - JSD_ONEHOT4_VS_UNIFORM) <= 1e-12)
    ok = worst_sym <= 1e-12 and worst_id <= 1e-12 and in_range and triangle_violations == 0 and exact
    report("5a", ok, f"symmetry {worst_sym:.1e}, identity {worst_id:.1e}, range ok: {in_range}, "
                     f"triangle violations {triangle_violations}/1500, exact reference values: {exact}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the stated hand values differ from the exact JSD by about 1e-5")
def test_criterion_5_hand_values_literal():
    got = (jsd([1, 0], [0.5, 0.5]), jsd([1, 0, 0, 0], [0.25] * 4))
    ok = all(abs(g - h) <= 1e-6 for g, h in zip(got, HAND_VALUES))
    report("5b", ok, f"computed {got[0]:.7f}, {got[1]:.7f} vs stated {HAND_VALUES}, tolerance 1e-6")
    assert ok


# --- 6. aggregation oracle ------------------------------------------------------

def oracle_mean(rows):
    """Exact rational mean of the L1-renormalised rows."""
    normed = []
    for row in rows:
        total = sum(Fraction(float(x)) for x in row)
        normed.append([Fraction(float(x)) / total for x in row])
    return [float(sum(col) / len(normed)) for col in zip(*normed)]


def random_project(rng, index):
    n_files = int(rng.integers(1, 51))
    n_labels = int(rng.integers(1, 11))
    dirs = ["core", "core/io", "util", "app/ui", "app"]
    paths = [f"{dirs[int(rng.integers(len(dirs)))]}/F{i}.java" for i in range(n_files)]
    refs = [SourceFileRef(f"p{index}", p, directory_package(p)) for p in paths]
    graph = build_structure_graph(ProjectRef(f"p{index}", "."), refs)
    files = {}
    for r in refs:
        if rng.random() < 0.15:
            files[r.node_id] = unannotated()
        else:
            scores = rng.random(n_labels) * (rng.random(n_labels) < 0.6)
            scores[int(rng.integers(n_labels))] += 0.01
            files[r.node_id] = make_dist(scores)
    return graph, files


def test_criterion_6_aggregation_oracle():
    rng = np.random.default_rng(6)
    worst = 0.0
    partition_worst = 0.0
    compared = 0
    for index in range(100):
        graph, files = random_project(rng, index)
        annotated = {f: d for f, d in files.items() if d.annotated}
        project = aggregate_project(files)
        if annotated:
            expected = oracle_mean([d.scores for d in annotated.values()])
            worst = max(worst, float(np.max(np.abs(project.scores - expected))))
            compared += 1
        parts = []
        for pkg in graph.of_kind("package"):
            members = [f for f in graph.files_in(pkg.id, recursive=True) if f in annotated]
            dist = aggregate_package(pkg.id, graph, files)
            assert dist.annotated == bool(members)
            if members:
                expected = oracle_mean([annotated[f].scores for f in members])
                worst = max(worst, float(np.max(np.abs(dist.scores - expected))))
                compared += 1
            own = [f for f in graph.files_in(pkg.id, recursive=False) if f in annotated]
            if own:
                flat = aggregate_package(pkg.id, graph, files, AggregationConfig(recursive_packages=False))
                parts.append((len(own), flat.scores))
        if parts:
            total = sum(n for n, _ in parts)
            weighted = sum(n * s for n, s in parts) / total
            partition_worst = max(partition_worst, float(np.max(np.abs(weighted - project.scores))))
    ok = worst <= 1e-12 and partition_worst <= 1e-12
    report(6, ok, f"{compared} means vs exact oracle, worst {worst:.1e}; partition consistency {partition_worst:.1e}")
    assert ok


# --- 7-9. pipeline on the bundled corpus ----------------------------------------

def test_criterion_7_monotonicity(minicorpus_run):
    cfg, rep, out = minicorpus_run
    manifest = json.loads((out / "annotate/manifest.json").read_text())
    cells = {(c["lf"], c["threshold"], c["transform"]): c for c in manifest["cells"]}
    inclusion_ok, chains = True, 0
    for lf, mode in {(k[0], k[2]) for k in cells}:
        previous = None
        for t in sorted(cfg.thresholds):
            recs = read_jsonl(out / "annotate" / cells[(lf, t, mode)]["file"])
            empty = {r["path"] for r in recs if not r["annotated"]}
            if previous is not None and not previous <= empty:
                inclusion_ok = False
            previous = empty
        chains += 1
    recall_ok = True
    for row in rep.rows:
        values = [row[f"recall@{k}"] for k in (3, 5, 10)]
        if None not in values and not values[0] <= values[1] <= values[2]:
            recall_ok = False
    ok = inclusion_ok and recall_ok
    report(7, ok, f"unannotated-set inclusion over {chains} LF/transform chains: {inclusion_ok}, "
                  f"recall@3<=@5<=@10 over {len(rep.rows)} rows: {recall_ok}")
    assert ok


def test_criterion_8_end_to_end(tmp_path):
    start = time.perf_counter()
    cfg, rep = run_minicorpus(tmp_path, jobs=1)
    elapsed = time.perf_counter() - start
    rows = {(r["lf"], r["threshold"], r["transform"]): r for r in rep.rows}
    keyword = rows[("keyword-name", 0.0, "RAW")]["recall@3"]
    random_recall = rows[("random", 0.0, "RAW")]["recall@3"]
    checked = validate_outputs(tmp_path)
    ok = elapsed < 60 and keyword == 1.0 and keyword > random_recall and checked > 0
    report(8, ok, f"{elapsed:.1f}s, keyword-name recall@3 {keyword}, random recall@3 {random_recall:.3f}, "
                  f"{checked} files schema-valid")
    assert ok


def test_criterion_9_determinism(minicorpus_run, tmp_path):
    _, _, serial = minicorpus_run
    run_minicorpus(tmp_path, jobs=4)

    def contents(root):
        return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}

    a, b = contents(serial), contents(tmp_path)
    differing = sorted(k for k in a.keys() | b.keys() if a.get(k) != b.get(k))
    ok = not differing and len(a) > 0
    report(9, ok, f"{len(a)} files compared between 1 and 4 workers, {len(differing)} differ")
    assert ok


# --- 10. kappa ------------------------------------------------------------------

def test_criterion_10_kappa():
    rng = np.random.default_rng(10)
    ratings = [int(x) for x in rng.integers(0, 5, 1000)]
    identity = cohens_kappa(ratings, ratings)
    worst = 0.0
    for _ in range(20):
        a, b = rng.integers(0, 5, 10_000), rng.integers(0, 5, 10_000)
        worst = max(worst, abs(cohens_kappa(a.tolist(), b.tolist())))
    ok = identity == 1.0 and worst < 0.05
    report(10, ok, f"identity {identity!r}, largest |kappa| over 20 independent pairs of 1e4 items {worst:.4f}")
    assert ok
