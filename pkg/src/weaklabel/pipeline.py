"""End-to-end stages: ingest -> keywords -> annotate -> aggregate -> evaluate.

Every stage reads only the previous stage's files under the output directory, so any
stage can be re-run on its own. Outputs do not depend on the worker count.
"""

from __future__ import annotations

import json
import logging
import re
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Iterable

from . import aggregation, evaluation
from .config import KEYWORD_LFS, RANDOM_LF, SIMILARITY_PREFIX, RunConfig
from .corpus import (
    LabelVocabulary,
    ProjectRef,
    StructureGraph,
    build_structure_graph,
    discover_sources,
    load_ground_truth,
    load_vocabulary,
)
from .embeddings import load_embedding_table
from .ensemble import CASCADE, EnsembleConfig, cascade, vote
from .errors import ConfigError, ValidationError
from .keywords import (
    KeywordTable,
    build_keyword_table,
    extract_project_keywords,
    keywords_to_json,
    project_text,
)
from .labelling import (
    FilterConfig,
    LabelDistribution,
    Provenance,
    TransformConfig,
    apply_configs,
    filter_annotation,
    from_record,
    keyword_lf,
    label_vectors,
    random_lf,
    similarity_lf,
    to_record,
    transform,
)
from .lexing import (
    IDENTIFIERS,
    NAME,
    Document,
    default_stopwords,
    extract_identifiers,
    file_name_document,
    identifiers_document,
    load_stopwords,
)

log = logging.getLogger(__name__)


# --- small I/O helpers ------------------------------------------------------

def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1, sort_keys=True, allow_nan=False) + "\n", encoding="utf-8")


def read_json(path: Path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_jsonl(path: Path, records: Iterable[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, allow_nan=False) + "\n")


def read_jsonl(path: Path) -> list[dict]:
    with Path(path).open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _pmap(fn: Callable, items: list, jobs: int, initializer=None, initargs=()) -> list:
    """Ordered map; runs in-process when jobs == 1."""
    if jobs <= 1 or len(items) < 2:
        if initializer is not None:
            initializer(*initargs)
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs, initializer=initializer, initargs=initargs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _stopwords(cfg: RunConfig):
    return load_stopwords(cfg.stopwords) if cfg.stopwords else default_stopwords()


def _require(path: str | None, what: str) -> Path:
    if not path:
        raise ConfigError(f"no {what} configured")
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"{what} not found: {p}")
    return p


class Layout:
    def __init__(self, out):
        self.root = Path(out)

    ingest = property(lambda self: self.root / "ingest")
    keywords = property(lambda self: self.root / "keywords")
    annotate = property(lambda self: self.root / "annotate")
    aggregate = property(lambda self: self.root / "aggregate")
    evaluate = property(lambda self: self.root / "evaluate")

    def graph(self, project: str) -> Path:
        return self.ingest / project / "graph.json"

    def documents(self, project: str) -> Path:
        return self.ingest / project / "documents.jsonl"

    @property
    def table(self) -> Path:
        return self.keywords / "table.json"


def _write_resolved_config(cfg: RunConfig) -> None:
    root = Path(cfg.out)
    root.mkdir(parents=True, exist_ok=True)
    cfg.dump(root / "config.resolved.yaml")


# --- ingest -----------------------------------------------------------------

def _list_projects(corpus_roots: list[str]) -> list[ProjectRef]:
    projects = []
    seen = {}
    for root in corpus_roots:
        root = Path(root)
        if not root.is_dir():
            raise FileNotFoundError(f"corpus root is not a readable directory: {root}")
        for child in sorted(root.iterdir()):
            if child.is_dir() and not child.name.startswith("."):
                if child.name in seen:
                    raise ValidationError(f"project {child.name} appears in {seen[child.name]} and {root}")
                seen[child.name] = root
                projects.append(ProjectRef(child.name, child))
    return projects


def _identifier_terms(args) -> tuple[dict, str]:
    path, rel, stopwords = args
    try:
        idents = extract_identifiers(Path(path).read_bytes())
    except UnicodeDecodeError:
        return {}, "undecodable"
    except OSError:
        return {}, "unreadable"
    return identifiers_document(rel, idents, stopwords).terms, "ok"


def cmd_ingest(cfg: RunConfig) -> dict:
    layout = Layout(cfg.out)
    stopwords = _stopwords(cfg)
    projects = _list_projects(cfg.corpus)
    _write_resolved_config(cfg)
    manifest = {"extension": cfg.extension, "projects": [], "failures": []}
    discovered = []
    for project in projects:
        try:
            files = discover_sources(project.root, cfg.extension, project.name)
            graph = build_structure_graph(project, files)
        except (OSError, ValidationError) as exc:
            log.warning("ingest failed for %s: %s", project.name, exc)
            manifest["failures"].append({"project": project.name, "error": str(exc)})
            continue
        discovered.append((project, files, graph))

    jobs = [(str(p.root / f.relative_path), f.relative_path, stopwords) for p, files, _ in discovered for f in files]
    idents = iter(_pmap(_identifier_terms, jobs, cfg.jobs))
    for project, files, graph in discovered:
        docs = []
        for f in files:
            terms, status = next(idents)
            if status != "ok":
                log.warning("%s/%s: identifiers skipped (%s)", project.name, f.relative_path, status)
            docs.append({
                "node": f.node_id,
                "path": f.relative_path,
                "package": f.package_path,
                NAME: file_name_document(f, stopwords).terms,
                IDENTIFIERS: terms,
                "status": status,
            })
        write_json(layout.graph(project.name), graph.to_json())
        write_jsonl(layout.documents(project.name), docs)
        manifest["projects"].append({"name": project.name, "files": len(files), "packages": len(graph.of_kind("package"))})
    write_json(layout.ingest / "manifest.json", manifest)
    log.info("ingested %d projects", len(manifest["projects"]))
    return manifest


def _ingest_manifest(layout: Layout) -> dict:
    path = layout.ingest / "manifest.json"
    if not path.exists():
        raise ConfigError(f"missing ingest output {path}; run 'ingest' first")
    return read_json(path)


# --- keywords ---------------------------------------------------------------

def cmd_keywords(cfg: RunConfig) -> KeywordTable:
    layout = Layout(cfg.out)
    vocabulary = load_vocabulary(_require(cfg.labels, "label vocabulary"))
    truth = load_ground_truth(_require(cfg.truth, "ground truth"), vocabulary)
    stopwords = _stopwords(cfg)
    manifest = _ingest_manifest(layout)
    project_keywords = {}
    for entry in manifest["projects"]:
        name = entry["name"]
        paths = [d["path"] for d in read_jsonl(layout.documents(name))]
        kws = extract_project_keywords(project_text(name, paths, stopwords), cfg.max_ngram, cfg.window, cfg.top_n)
        write_json(layout.keywords / "projects" / f"{name}.json", keywords_to_json(name, kws))
        project_keywords[name] = kws
    table = build_keyword_table(project_keywords, truth, vocabulary)
    layout.keywords.mkdir(parents=True, exist_ok=True)
    table.save(layout.table)
    return table


# --- annotate ---------------------------------------------------------------

_STATE: dict = {}


def _init_annotator(state: dict) -> None:
    _STATE.clear()
    _STATE.update(state)


def _raw_annotations(item: dict) -> dict[str, LabelDistribution]:
    vocabulary: LabelVocabulary = _STATE["vocabulary"]
    out = {}
    for lf in _STATE["lfs"]:
        if lf in KEYWORD_LFS:
            modality = NAME if lf == "keyword-name" else IDENTIFIERS
            doc = Document(item["node"], modality, item[modality])
            out[lf] = keyword_lf(doc, _STATE["table"], Provenance(lf=lf, modality=modality))
        elif lf == RANDOM_LF:
            out[lf] = random_lf(f"{item['project']}/{item['path']}", _STATE["seed"], vocabulary,
                                Provenance(lf=lf, modality=NAME))
        else:
            name = lf[len(SIMILARITY_PREFIX):]
            table, label_vecs = _STATE["embeddings"][name]
            doc = Document(item["node"], NAME, item[NAME])
            out[lf] = similarity_lf(doc, label_vecs, table, vocabulary, Provenance(lf=lf, modality=NAME))
    return out


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9.+-]+", "_", text).strip("_")


def annotation_cells(cfg: RunConfig) -> list[dict]:
    cells = []
    lf_names = list(cfg.lfs) + [e.name for e in cfg.ensemble_configs()]
    for lf in lf_names:
        for threshold in cfg.thresholds:
            for mode in cfg.transforms:
                params = {"lf": lf, "threshold": float(threshold), "transform": mode}
                digest = cfg.digest(
                    "tp_threshold", "seed", "vote_pool", "vote_member_threshold", "max_ngram", "window",
                    "top_n", "keyword_table", "embeddings", "subwords", "stopwords", "labels", "truth",
                    "extension", "corpus", extra=params,
                )
                cell_id = f"{_slug(lf)}__t{float(threshold):g}__{mode}__{digest}"
                cells.append({**params, "id": cell_id, "file": f"{cell_id}.jsonl"})
    return cells


def _cell_output(cell: dict, raw: dict[str, LabelDistribution], ensembles: dict[str, EnsembleConfig],
                 cfg: RunConfig) -> LabelDistribution:
    tcfg = TransformConfig(cell["transform"], cfg.tp_threshold)
    ens = ensembles.get(cell["lf"])
    if ens is None:
        return apply_configs(raw[cell["lf"]], cell["threshold"], tcfg)
    if ens.kind == CASCADE:
        members = [filter_annotation(raw[m], FilterConfig(cell["threshold"])) for m in ens.members]
        combined = cascade(members, ens.members, name=ens.name)
    else:
        members = [filter_annotation(raw[m], FilterConfig(cfg.vote_member_threshold)) for m in ens.members]
        combined = vote(members, ens.vote_pool, name=ens.name)
    return transform(filter_annotation(combined, FilterConfig(cell["threshold"])), tcfg)


def _load_resources(cfg: RunConfig, layout: Layout, vocabulary: LabelVocabulary, base_lfs: list[str]) -> dict:
    state = {"vocabulary": vocabulary, "lfs": base_lfs, "seed": cfg.seed, "embeddings": {}, "table": None}
    if any(lf in KEYWORD_LFS for lf in base_lfs):
        table_path = Path(cfg.keyword_table) if cfg.keyword_table else layout.table
        if not table_path.exists():
            raise ConfigError(f"keyword LFs need a keyword table; {table_path} not found (run 'keywords')")
        state["table"] = KeywordTable.load(table_path, vocabulary)
    for lf in base_lfs:
        if lf.startswith(SIMILARITY_PREFIX):
            name = lf[len(SIMILARITY_PREFIX):]
            path = _require(cfg.embeddings.get(name), f"embedding table {name!r}")
            table = load_embedding_table(path, subword_path=cfg.subwords.get(name))
            state["embeddings"][name] = (table, label_vectors(vocabulary, table))
    return state


def cmd_annotate(cfg: RunConfig) -> list[dict]:
    cfg.validate()
    layout = Layout(cfg.out)
    vocabulary = load_vocabulary(_require(cfg.labels, "label vocabulary"))
    base_lfs = cfg.all_base_lfs()
    state = _load_resources(cfg, layout, vocabulary, base_lfs)
    manifest = _ingest_manifest(layout)
    ensembles = {e.name: e for e in cfg.ensemble_configs()}
    cells = annotation_cells(cfg)

    items = []
    for entry in manifest["projects"]:
        for doc in read_jsonl(layout.documents(entry["name"])):
            items.append({"project": entry["name"], **doc})
    raws = _pmap(_raw_annotations, items, cfg.jobs, _init_annotator, (state,))

    layout.annotate.mkdir(parents=True, exist_ok=True)
    for cell in cells:
        records = (
            to_record(_cell_output(cell, raw, ensembles, cfg), vocabulary, item["project"], item["path"])
            for item, raw in zip(items, raws)
        )
        write_jsonl(layout.annotate / cell["file"], records)
    write_json(layout.annotate / "manifest.json", {"seed": cfg.seed, "cells": cells})
    return cells


def _cells(layout: Layout) -> list[dict]:
    path = layout.annotate / "manifest.json"
    if not path.exists():
        raise ConfigError(f"missing annotate output {path}; run 'annotate' first")
    return read_json(path)["cells"]


# --- aggregate --------------------------------------------------------------

def _file_dists(layout: Layout, cell: dict, vocabulary: LabelVocabulary) -> dict[str, dict[str, LabelDistribution]]:
    per_project: dict[str, dict[str, LabelDistribution]] = defaultdict(dict)
    for rec in read_jsonl(layout.annotate / cell["file"]):
        per_project[rec["project"]][f"file:{rec['path']}"] = from_record(rec, vocabulary)
    return per_project


def _graphs(layout: Layout) -> dict[str, StructureGraph]:
    manifest = _ingest_manifest(layout)
    return {p["name"]: StructureGraph.from_json(read_json(layout.graph(p["name"]))) for p in manifest["projects"]}


def cmd_aggregate(cfg: RunConfig) -> list[dict]:
    layout = Layout(cfg.out)
    vocabulary = load_vocabulary(_require(cfg.labels, "label vocabulary"))
    graphs = _graphs(layout)
    agg_cfg = aggregation.AggregationConfig(cfg.top_k, cfg.recursive_packages)
    outputs = []
    for cell in _cells(layout):
        files = _file_dists(layout, cell, vocabulary)
        prov = Provenance(lf=cell["lf"], threshold=cell["threshold"], transform=cell["transform"])
        records = []
        for name in sorted(graphs):
            graph = graphs[name]
            nodes = aggregation.aggregate_graph(graph, files.get(name, {}), vocabulary, agg_cfg, prov)
            project_dist = nodes[graph.root_id].distribution
            top = aggregation.project_top_k(project_dist, cfg.top_k, vocabulary) if project_dist.annotated else []
            for node_id in sorted(nodes, key=lambda n: (n != graph.root_id, n)):
                ann = nodes[node_id]
                if ann.kind == "file":
                    continue
                extra = {"display_label": ann.display_label}
                if ann.kind == "project":
                    extra["top_k"] = top
                path = name if ann.kind == "project" else graph.nodes[node_id].name
                records.append(to_record(ann.distribution, vocabulary, name, path, ann.kind, **extra))
            write_json(layout.aggregate / "treemaps" / cell["id"] / f"{name}.json",
                       aggregation.treemap(graph, nodes, vocabulary))
        write_jsonl(layout.aggregate / f"{cell['id']}.nodes.jsonl", records)
        outputs.append({**cell, "nodes": f"{cell['id']}.nodes.jsonl", "treemaps": f"treemaps/{cell['id']}"})
    write_json(layout.aggregate / "manifest.json", {"top_k": cfg.top_k, "cells": outputs})
    return outputs


def export_treemap(cfg: RunConfig, cell_id: str | None, project: str | None, dest: Path | None) -> dict:
    """Collect per-project treemaps of one aggregated cell into a single document."""
    layout = Layout(cfg.out)
    path = layout.aggregate / "manifest.json"
    if not path.exists():
        raise ConfigError(f"missing aggregate output {path}; run 'aggregate' first")
    cells = read_json(path)["cells"]
    if cell_id is None:
        if len(cells) != 1:
            raise ConfigError(f"several cells available, pick one with --cell: {[c['id'] for c in cells]}")
        cell = cells[0]
    else:
        matches = [c for c in cells if c["id"] == cell_id or c["id"].startswith(cell_id)]
        if len(matches) != 1:
            raise ConfigError(f"--cell {cell_id!r} matches {len(matches)} cells")
        cell = matches[0]
    tree_dir = layout.aggregate / cell["treemaps"]
    names = sorted(p.stem for p in tree_dir.glob("*.json"))
    if project is not None:
        if project not in names:
            raise ValidationError(f"no treemap for project {project!r} in cell {cell['id']}")
        names = [project]
    doc = {"cell": cell["id"], "projects": [read_json(tree_dir / f"{n}.json") for n in names]}
    if dest is not None:
        write_json(Path(dest), doc)
    return doc


# --- evaluate ---------------------------------------------------------------

def cmd_evaluate(cfg: RunConfig) -> evaluation.MetricReport:
    layout = Layout(cfg.out)
    vocabulary = load_vocabulary(_require(cfg.labels, "label vocabulary"))
    truth = load_ground_truth(_require(cfg.truth, "ground truth"), vocabulary)
    graphs = _graphs(layout)
    path = layout.aggregate / "manifest.json"
    if not path.exists():
        raise ConfigError(f"missing aggregate output {path}; run 'aggregate' first")
    agg_manifest = read_json(path)

    report = evaluation.MetricReport(meta={"seed": cfg.seed, "labels": len(vocabulary), "projects": len(graphs)})
    by_config: dict[str, dict[str, LabelDistribution]] = {}
    missing = set()
    for cell in agg_manifest["cells"]:
        files = _file_dists(layout, cell, vocabulary)
        nodes, projects = [], {}
        for rec in read_jsonl(layout.aggregate / cell["nodes"]):
            dist = from_record(rec, vocabulary)
            nodes.append(aggregation.NodeAnnotation(rec["path"], rec["kind"], dist, rec.get("display_label")))
            if rec["kind"] == "project":
                projects[rec["project"]] = dist
        package_files = {}
        for name, graph in sorted(graphs.items()):
            pf = files.get(name, {})
            nodes.extend(aggregation.NodeAnnotation(fid, "file", d) for fid, d in sorted(pf.items()))
            for pkg in graph.of_kind("package"):
                package_files[f"{name}:{pkg.name}"] = [pf[f] for f in graph.files_in(pkg.id, recursive=False) if f in pf]
        missing.update(p for p in projects if p not in truth)
        report.rows.append(evaluation.evaluate_config(
            cell["id"], cell["lf"], cell["threshold"], cell["transform"], agg_manifest["top_k"],
            nodes, projects, package_files, truth, vocabulary,
        ))
        by_config[cell["id"]] = projects
    matrix = evaluation.agreement_matrix(by_config)
    report.agreement = {a: {b: evaluation.nan_to_none(v) for b, v in row.items()} for a, row in matrix.items()}
    report.meta["missing_from_truth"] = sorted(missing)
    write_json(layout.evaluate / "report.json", report.to_json())
    (layout.evaluate / "report.csv").write_text(report.to_csv(), encoding="utf-8")
    return report


def run_all(cfg: RunConfig) -> evaluation.MetricReport:
    cfg.validate()
    cmd_ingest(cfg)
    if cfg.needs_keyword_table() and not cfg.keyword_table:
        cmd_keywords(cfg)
    cmd_annotate(cfg)
    cmd_aggregate(cfg)
    return cmd_evaluate(cfg)
