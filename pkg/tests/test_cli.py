import json
import shutil
import subprocess
import sys

import pytest

from conftest import validate_outputs
from weaklabel import minicorpus_path
from weaklabel.cli import EXIT_CONFIG, EXIT_DATA, EXIT_OK, main
from weaklabel.pipeline import read_jsonl

MC = minicorpus_path()
CONFIG = str(MC / "config.yaml")


def run(*argv):
    return main([str(a) for a in argv])


def tree_bytes(root):
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def small_run(out, *extra):
    """Keyword-name only, one cell: quick enough to repeat in several tests."""
    return run("run", "--corpus", MC / "projects", "--labels", MC / "labels.json", "--truth", MC / "truth.json",
               "--lf", "keyword-name", "--out", out, *extra)


class TestExitCodes:
    def test_full_run(self, tmp_path, capsys):
        assert run("run", "--config", CONFIG, "--out", tmp_path / "o") == EXIT_OK
        header = capsys.readouterr().out.splitlines()[0]
        assert header.startswith("config,lf,threshold,transform,top_k,recall@3")

    def test_unknown_lf(self, tmp_path):
        assert run("run", "--config", CONFIG, "--lf", "magic", "--out", tmp_path) == EXIT_CONFIG

    def test_missing_embedding(self, tmp_path):
        assert small_run(tmp_path, "--lf", "similarity-nowhere") == EXIT_CONFIG

    def test_bad_flag(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("run", "--no-such-flag")
        assert exc.value.code == EXIT_CONFIG

    def test_bad_transform(self):
        with pytest.raises(SystemExit) as exc:
            run("annotate", "--transform", "T9")
        assert exc.value.code == EXIT_CONFIG

    def test_threshold_out_of_range(self, tmp_path):
        assert small_run(tmp_path, "--threshold", "1.5") == EXIT_CONFIG

    def test_unreadable_root(self, tmp_path, caplog):
        assert run("ingest", "--corpus", tmp_path / "absent", "--out", tmp_path / "o") == EXIT_DATA
        assert "absent" in caplog.text

    def test_stage_out_of_order(self, tmp_path):
        assert run("annotate", "--config", CONFIG, "--out", tmp_path) == EXIT_CONFIG

    def test_module_entry_point(self, tmp_path):
        proc = subprocess.run([sys.executable, "-m", "weaklabel", "ingest", "--corpus", str(tmp_path / "absent"),
                               "--out", str(tmp_path / "o")], capture_output=True, text=True)
        assert proc.returncode == EXIT_DATA
        assert "not a readable directory" in proc.stderr


class TestIngest:
    def test_empty_corpus(self, tmp_path):
        (tmp_path / "corpus").mkdir()
        assert run("ingest", "--corpus", tmp_path / "corpus", "--out", tmp_path / "o") == EXIT_OK
        manifest = json.loads((tmp_path / "o/ingest/manifest.json").read_text())
        assert manifest["projects"] == [] and manifest["failures"] == []

    def test_three_graphs(self, tmp_path):
        assert run("ingest", "--corpus", MC / "projects", "--out", tmp_path) == EXIT_OK
        assert sorted(p.parent.name for p in tmp_path.glob("ingest/*/graph.json")) == [
            "learnkit", "pixelforge", "quarrydb"]
        assert (tmp_path / "config.resolved.yaml").exists()


class TestKeywords:
    def test_byte_identical(self, tmp_path):
        tables = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert run("ingest", "--config", CONFIG, "--out", out) == EXIT_OK
            assert run("keywords", "--config", CONFIG, "--out", out) == EXIT_OK
            tables.append((out / "keywords/table.json").read_bytes())
        assert tables[0] == tables[1]

    def test_project_missing_from_truth(self, tmp_path, caplog):
        truth = [r for r in json.loads((MC / "truth.json").read_text()) if r["project"] != "pixelforge"]
        (tmp_path / "truth.json").write_text(json.dumps(truth))
        run("ingest", "--config", CONFIG, "--out", tmp_path / "o")
        code = run("keywords", "--config", CONFIG, "--truth", tmp_path / "truth.json", "--out", tmp_path / "o")
        assert code == EXIT_DATA
        assert "pixelforge" in caplog.text

    def test_missing_truth(self, tmp_path):
        run("ingest", "--config", CONFIG, "--out", tmp_path)
        assert run("keywords", "--config", CONFIG, "--truth", tmp_path / "none.json", "--out", tmp_path) == EXIT_CONFIG

    def test_single_project_single_label(self, tmp_path):
        shutil.copytree(MC / "projects/quarrydb", tmp_path / "corpus/quarrydb")
        (tmp_path / "truth.json").write_text(json.dumps([{"project": "quarrydb", "labels": ["Database"]}]))
        run("ingest", "--corpus", tmp_path / "corpus", "--out", tmp_path / "o")
        assert run("keywords", "--labels", MC / "labels.json", "--truth", tmp_path / "truth.json",
                   "--out", tmp_path / "o") == EXIT_OK
        table = json.loads((tmp_path / "o/keywords/table.json").read_text())["labels"]
        extracted = json.loads((tmp_path / "o/keywords/projects/quarrydb.json").read_text())["keywords"]
        assert set(table["Database"]) == {k["text"] for k in extracted}
        assert all(not v for label, v in table.items() if label != "Database")


class TestAnnotate:
    def test_every_file_has_a_record(self, minicorpus_run):
        cfg, _, out = minicorpus_run
        manifest = json.loads((out / "annotate/manifest.json").read_text())
        n_files = sum(p["files"] for p in json.loads((out / "ingest/manifest.json").read_text())["projects"])
        for cell in manifest["cells"]:
            assert len(read_jsonl(out / "annotate" / cell["file"])) == n_files

    def test_cell_files_are_content_addressed(self, minicorpus_run):
        cfg, _, out = minicorpus_run
        cells = json.loads((out / "annotate/manifest.json").read_text())["cells"]
        assert len({c["id"] for c in cells}) == len(cells)
        assert len(cells) == (len(cfg.lfs) + len(cfg.ensembles)) * len(cfg.thresholds) * len(cfg.transforms)

    def test_extreme_threshold(self, tmp_path):
        assert small_run(tmp_path, "--threshold", "0.99") == EXIT_OK
        (cell,) = json.loads((tmp_path / "annotate/manifest.json").read_text())["cells"]
        records = read_jsonl(tmp_path / "annotate" / cell["file"])
        assert sum(not r["annotated"] for r in records) > len(records) / 2

    def test_random_lf_repeatable(self, tmp_path):
        outputs = []
        for name in ("a", "b"):
            assert small_run(tmp_path / name, "--lf", "random", "--seed", "11") == EXIT_OK
            outputs.append(tree_bytes(tmp_path / name / "annotate"))
        assert outputs[0] == outputs[1]


class TestAggregate:
    def test_treemaps(self, minicorpus_run):
        cfg, _, out = minicorpus_run
        for cell in json.loads((out / "aggregate/manifest.json").read_text())["cells"]:
            nodes = read_jsonl(out / "aggregate" / cell["nodes"])
            tops = {r["project"]: r["top_k"] for r in nodes if r["kind"] == "project"}
            for r in nodes:
                if r["display_label"] is not None:
                    assert r["display_label"] in tops[r["project"]]
            for path in (out / "aggregate" / cell["treemaps"]).glob("*.json"):
                tree = json.loads(path.read_text())
                assert tree["kind"] == "project" and tree["id"] == f"project:{path.stem}"

    def test_topk_prefix(self, tmp_path):
        tops = {}
        for k in (3, 10):
            out = tmp_path / f"k{k}"
            assert small_run(out, "--topk", k) == EXIT_OK
            (cell,) = json.loads((out / "aggregate/manifest.json").read_text())["cells"]
            tops[k] = {r["project"]: r["top_k"] for r in read_jsonl(out / "aggregate" / cell["nodes"])
                       if r["kind"] == "project"}
        for project, top3 in tops[3].items():
            assert top3 == tops[10][project][:3]

    def test_export_treemap(self, tmp_path, capsys):
        assert small_run(tmp_path) == EXIT_OK
        capsys.readouterr()
        assert run("export-treemap", "--out", tmp_path, "--project", "quarrydb") == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert [t["name"] for t in doc["projects"]] == ["quarrydb"]
        dest = tmp_path / "tm.json"
        assert run("export-treemap", "--out", tmp_path, "--dest", dest) == EXIT_OK
        assert len(json.loads(dest.read_text())["projects"]) == 3
        assert run("export-treemap", "--out", tmp_path, "--project", "nope") == EXIT_DATA

    def test_export_needs_cell_choice(self, minicorpus_run):
        _, _, out = minicorpus_run
        assert run("export-treemap", "--out", out) == EXIT_CONFIG


class TestStages:
    def test_resume_matches_full_run(self, tmp_path):
        assert small_run(tmp_path / "full") == EXIT_OK
        staged = tmp_path / "staged"
        common = ["--corpus", MC / "projects", "--labels", MC / "labels.json", "--truth", MC / "truth.json",
                  "--lf", "keyword-name", "--out", staged]
        for stage in ("ingest", "keywords", "annotate", "aggregate", "evaluate"):
            assert run(stage, *common) == EXIT_OK
        assert tree_bytes(tmp_path / "full") == tree_bytes(staged)

    def test_rerun_single_stage(self, tmp_path):
        assert small_run(tmp_path) == EXIT_OK
        before = tree_bytes(tmp_path)
        assert run("aggregate", "--labels", MC / "labels.json", "--out", tmp_path) == EXIT_OK
        assert tree_bytes(tmp_path) == before


class TestEvaluate:
    def test_outputs_validate(self, minicorpus_run):
        _, _, out = minicorpus_run
        assert validate_outputs(out) > 10

    def test_keyword_beats_random(self, minicorpus_run):
        _, report, _ = minicorpus_run
        rows = {(r["lf"], r["threshold"], r["transform"]): r for r in report.rows}
        assert rows[("keyword-name", 0.0, "RAW")]["recall@3"] == 1.0
        assert rows[("random", 0.0, "RAW")]["recall@3"] < 1.0
