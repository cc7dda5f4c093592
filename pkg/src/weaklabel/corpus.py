"""Source discovery, containment graphs and ground-truth loading."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, ValidationError

DEFAULT_EXTENSION = ".java"
SOURCE_ROOT_NAMES = ("src", "java")

_COMMENT_RE = re.compile(r"//[^\n]*|/\*.*?\*/", re.S)
_QUALIFIED = r"[A-Za-z_$][\w$]*(?:\s*\.\s*[A-Za-z_$][\w$]*)*"
_PACKAGE_RE = re.compile(r"\s*(?:@" + _QUALIFIED + r"(?:\s*\([^)]*\))?\s*)*package\s+(" + _QUALIFIED + r")\s*;")
_IMPORT_RE = re.compile(r"^\s*import\s+(static\s+)?(" + _QUALIFIED + r")(\s*\.\s*\*)?\s*;", re.M)


@dataclass(frozen=True)
class ProjectRef:
    name: str
    root: Path

    def __post_init__(self):
        if not self.name:
            raise ValidationError("project name must be non-empty")
        object.__setattr__(self, "root", Path(self.root))


@dataclass(frozen=True)
class SourceFileRef:
    project: str
    relative_path: str
    package_path: str
    imports: tuple[str, ...] = ()

    @property
    def node_id(self) -> str:
        return f"file:{self.relative_path}"

    @property
    def stem(self) -> str:
        return PurePosixPath(self.relative_path).stem


class LabelVocabulary:
    """Ordered label set; labels are sorted lexicographically at construction."""

    def __init__(self, labels: Iterable[str]):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise ValidationError(f"duplicate labels in vocabulary: {dupes}")
        if any(not isinstance(l, str) or not l for l in labels):
            raise ValidationError("labels must be non-empty strings")
        self.labels: tuple[str, ...] = tuple(sorted(labels))
        self._index = {l: i for i, l in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        return isinstance(other, LabelVocabulary) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"LabelVocabulary({len(self.labels)} labels)"

    def index(self, label: str) -> int:
        return self._index[label]


def load_vocabulary(path) -> LabelVocabulary:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), path=path, line=exc.lineno) from exc
    if not isinstance(data, list):
        raise ParseError("label vocabulary must be a JSON array of strings", path=path)
    return LabelVocabulary(data)


@dataclass(frozen=True)
class GroundTruth:
    labels: Mapping[str, frozenset]

    def __getitem__(self, project):
        return self.labels[project]

    def __contains__(self, project):
        return project in self.labels

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.labels))

    def __len__(self):
        return len(self.labels)


def parse_ground_truth(records, vocabulary: LabelVocabulary | None = None) -> GroundTruth:
    if not isinstance(records, list):
        raise ValidationError("ground truth must be a JSON array")
    out: dict[str, frozenset] = {}
    unknown: set[str] = set()
    for rec in records:
        if not isinstance(rec, dict) or "project" not in rec or "labels" not in rec:
            raise ValidationError(f"malformed ground-truth record: {rec!r}")
        name, labels = rec["project"], rec["labels"]
        if not isinstance(name, str) or not name:
            raise ValidationError(f"project name must be a non-empty string: {rec!r}")
        if name in out:
            raise ValidationError(f"duplicate project in ground truth: {name}")
        if not isinstance(labels, list) or not labels:
            raise ValidationError(f"project {name} must have at least one label")
        if vocabulary is not None:
            unknown.update(l for l in labels if l not in vocabulary)
        out[name] = frozenset(labels)
    if unknown:
        raise ValidationError(f"labels not in vocabulary: {sorted(unknown)}")
    return GroundTruth(out)


def load_ground_truth(path, vocabulary: LabelVocabulary | None = None) -> GroundTruth:
    text = Path(path).read_text(encoding="utf-8")
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), path=path, line=exc.lineno) from exc
    return parse_ground_truth(records, vocabulary)


def strip_comments(text: str) -> str:
    return _COMMENT_RE.sub(" ", text)


def parse_header(text: str) -> tuple[str | None, tuple[str, ...]]:
    """Return the declared package (or None) and the import targets of a Java file.

    Wildcard imports keep a trailing ``.*``; whitespace inside qualified names is removed.
    """
    body = strip_comments(text)
    m = _PACKAGE_RE.match(body)
    package = re.sub(r"\s+", "", m.group(1)) if m else None
    imports = []
    for im in _IMPORT_RE.finditer(body):
        target = re.sub(r"\s+", "", im.group(2))
        if im.group(3):
            target += ".*"
        imports.append(target)
    return package, tuple(imports)


def directory_package(relative_path: str) -> str:
    parts = PurePosixPath(relative_path).parts[:-1]
    for i in range(len(parts) - 1, -1, -1):
        if parts[i] in SOURCE_ROOT_NAMES:
            parts = parts[i + 1:]
            break
    return ".".join(parts)


def discover_sources(root, extension: str = DEFAULT_EXTENSION, project: str | None = None) -> list[SourceFileRef]:
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"not a readable directory: {root}")
    os.listdir(root)  # raises PermissionError on unreadable roots
    project = project or root.name
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for fn in filenames:
            full = Path(dirpath, fn)
            if fn.endswith(extension) and full.is_file():
                found.append(full.relative_to(root).as_posix())
    refs = []
    for rel in sorted(found):
        try:
            text = (root / rel).read_text(encoding="utf-8", errors="replace")
            package, imports = parse_header(text)
        except OSError:
            package, imports = None, ()
        if package is None:
            package = directory_package(rel)
        refs.append(SourceFileRef(project, rel, package, imports))
    return refs


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    name: str


def package_prefixes(dotted: str) -> list[str]:
    if not dotted:
        return [""]
    parts = dotted.split(".")
    return [".".join(parts[: i + 1]) for i in range(len(parts))]


@dataclass
class StructureGraph:
    project: str
    nodes: dict[str, Node] = field(default_factory=dict)
    containment_edges: list[tuple[str, str]] = field(default_factory=list)
    dependency_edges: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        self._children: dict[str, list[str]] = {}
        self._parent: dict[str, str] = {}
        for src, dst in self.containment_edges:
            self._children.setdefault(src, []).append(dst)
            self._parent[dst] = src

    @property
    def root_id(self) -> str:
        return f"project:{self.project}"

    def children(self, node_id: str) -> list[str]:
        return list(self._children.get(node_id, ()))

    def parent(self, node_id: str) -> str | None:
        return self._parent.get(node_id)

    def of_kind(self, kind: str) -> list[Node]:
        return [n for n in self.nodes.values() if n.kind == kind]

    def files_in(self, node_id: str, recursive: bool = True) -> list[str]:
        out = []
        stack = [node_id]
        while stack:
            cur = stack.pop()
            for child in self._children.get(cur, ()):
                kind = self.nodes[child].kind
                if kind == "file":
                    out.append(child)
                elif recursive:
                    stack.append(child)
        return sorted(out)

    def to_json(self) -> dict:
        edges = [{"src": s, "dst": d, "kind": "contains"} for s, d in self.containment_edges]
        edges += [{"src": s, "dst": d, "kind": "depends"} for s, d in self.dependency_edges]
        return {
            "project": self.project,
            "nodes": [{"id": n.id, "kind": n.kind, "name": n.name} for n in self.nodes.values()],
            "edges": edges,
        }

    @classmethod
    def from_json(cls, data: dict) -> "StructureGraph":
        nodes = {n["id"]: Node(n["id"], n["kind"], n["name"]) for n in data["nodes"]}
        contains = [(e["src"], e["dst"]) for e in data["edges"] if e["kind"] == "contains"]
        depends = [(e["src"], e["dst"]) for e in data["edges"] if e["kind"] == "depends"]
        return cls(data["project"], nodes, contains, depends)


def _resolve_import(target: str, by_class: dict, by_package: dict) -> list[str]:
    if target.endswith(".*"):
        pkg = target[:-2]
        hits = by_package.get(pkg, [])
        if hits:
            return hits
        target = pkg  # import static a.b.C.*
    parts = target.split(".")
    while len(parts) >= 2:
        hit = by_class.get((".".join(parts[:-1]), parts[-1]))
        if hit:
            return [hit]
        parts = parts[:-1]
    return []


def build_structure_graph(project: ProjectRef | str, files: list[SourceFileRef]) -> StructureGraph:
    name = project.name if isinstance(project, ProjectRef) else project
    root = Node(f"project:{name}", "project", name)
    nodes = {root.id: root}
    contains: list[tuple[str, str]] = []
    seen_paths = set()
    for f in files:
        if f.project != name:
            raise ValidationError(f"{f.relative_path} belongs to {f.project}, not {name}")
        if f.relative_path in seen_paths:
            raise ValidationError(f"duplicate relative_path: {f.relative_path}")
        seen_paths.add(f.relative_path)

    packages = sorted({p for f in files for p in package_prefixes(f.package_path)})
    for pkg in packages:
        node = Node(f"package:{pkg}", "package", pkg)
        nodes[node.id] = node
        parent = root.id if "." not in pkg else f"package:{pkg.rsplit('.', 1)[0]}"
        contains.append((parent, node.id))
    for f in files:
        node = Node(f.node_id, "file", f.relative_path)
        nodes[node.id] = node
        contains.append((f"package:{f.package_path}", node.id))

    by_class = {(f.package_path, f.stem): f.node_id for f in files}
    by_package: dict[str, list[str]] = {}
    for f in files:
        by_package.setdefault(f.package_path, []).append(f.node_id)
    depends = set()
    for f in files:
        for target in f.imports:
            for dst in _resolve_import(target, by_class, by_package):
                if dst != f.node_id:
                    depends.add((f.node_id, dst))
    return StructureGraph(name, nodes, contains, sorted(depends))
