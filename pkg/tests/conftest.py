import numpy as np
import pytest

from weaklabel import minicorpus_path
from weaklabel.config import RunConfig
from weaklabel.corpus import LabelVocabulary
from weaklabel.labelling import L1, LabelDistribution, jsd_vs_uniform
from weaklabel.pipeline import run_all


def make_dist(scores, norm=L1):
    scores = np.asarray(scores, dtype=np.float64)
    return LabelDistribution(scores, norm, True, jsd_vs_uniform(scores))


@pytest.fixture
def vocab3():
    return LabelVocabulary(["L1", "L2", "L3"])


@pytest.fixture(scope="session")
def minicorpus():
    return minicorpus_path()


def run_minicorpus(out, jobs=1, **overrides):
    cfg = RunConfig.load(minicorpus_path() / "config.yaml")
    cfg.out = str(out)
    cfg.jobs = jobs
    for k, v in overrides.items():
        setattr(cfg, k, v)
    report = run_all(cfg)
    return cfg, report


@pytest.fixture(scope="session")
def minicorpus_run(tmp_path_factory):
    """One full single-worker pipeline run over the bundled corpus, shared by the session."""
    out = tmp_path_factory.mktemp("mc-run")
    cfg, report = run_minicorpus(out)
    return cfg, report, out


def mixture_with_jsd(n_labels, target, hot=0):
    """Mixture of one-hot and uniform whose JSD against uniform equals ``target``.

    JSD grows monotonically with the one-hot weight, so a bracketing root finder suffices.
    """
    from scipy.optimize import brentq
    from scipy.spatial.distance import jensenshannon

    uniform = np.full(n_labels, 1.0 / n_labels)
    onehot = np.zeros(n_labels)
    onehot[hot] = 1.0

    def gap(a):
        return jensenshannon(a * onehot + (1 - a) * uniform, uniform, base=2) - target

    a = brentq(gap, 0.0, 1.0, xtol=1e-15)
    return a * onehot + (1 - a) * uniform


def validate_outputs(out):
    """Validate every pipeline output under ``out`` against its schema; returns the number of files checked."""
    import json

    import jsonschema

    from weaklabel.schemas import OUTPUT_SCHEMAS

    checked = 0
    for pattern, schema in OUTPUT_SCHEMAS.items():
        validator = jsonschema.Draft202012Validator(schema)
        for path in sorted(out.glob(pattern)):
            text = path.read_text(encoding="utf-8")
            docs = [json.loads(l) for l in text.splitlines() if l] if path.suffix == ".jsonl" else [json.loads(text)]
            for doc in docs:
                validator.validate(doc)
            checked += 1
    return checked


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
