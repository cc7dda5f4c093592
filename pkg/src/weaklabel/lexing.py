"""Identifier splitting, identifier extraction and per-file term documents."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path, PurePosixPath
from typing import Iterable

from .corpus import SOURCE_ROOT_NAMES, SourceFileRef

NAME = "name"
IDENTIFIERS = "identifiers"
MODALITIES = (NAME, IDENTIFIERS)

_ALPHA_RUN = re.compile(r"[A-Za-z]+")
# acronym run ending before a Capital+lower pair | optional capital + lower run | trailing acronym
_CAMEL = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")

JAVA_RESERVED = frozenset("""
abstract assert boolean break byte case catch char class const continue default do double
else enum extends final finally float for goto if implements import instanceof int interface
long native new package private protected public return short static strictfp super switch
synchronized this throw throws transient try void volatile while true false null var yield
record sealed permits non exports module requires opens uses provides to with transitive open
""".split())


def split_fragments(raw: str) -> list[str]:
    """Split an identifier into its surface fragments, keeping their original casing."""
    out = []
    for run in _ALPHA_RUN.findall(raw):
        out.extend(_CAMEL.findall(run))
    return out


def split_identifier(raw: str) -> list[str]:
    """Split a compound identifier into lower-cased terms.

    >>> split_identifier("HTTPServer2Impl")
    ['http', 'server', 'impl']
    """
    return [frag.lower() for frag in split_fragments(raw)]


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset:
    text = resources.files("weaklabel").joinpath("data/stopwords_en.txt").read_text(encoding="utf-8")
    return load_stopwords_text(text)


def load_stopwords_text(text: str) -> frozenset:
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def load_stopwords(path) -> frozenset:
    return load_stopwords_text(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Document:
    node: str
    modality: str
    terms: dict[str, int] = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.terms

    def expanded(self) -> list[str]:
        """Terms repeated by frequency, in sorted term order."""
        return [t for t in sorted(self.terms) for _ in range(self.terms[t])]

    def to_json(self) -> dict:
        return {"node": self.node, "modality": self.modality, "terms": dict(sorted(self.terms.items()))}

    @classmethod
    def from_json(cls, data: dict) -> "Document":
        return cls(data["node"], data["modality"], dict(data["terms"]))


def _document(node: str, modality: str, raws: Iterable[str], stopwords) -> Document:
    counts = Counter()
    for raw in raws:
        counts.update(t for t in split_identifier(raw) if t not in stopwords)
    return Document(node, modality, dict(sorted(counts.items())))


def path_segments(relative_path: str) -> list[str]:
    """Path segments below the detected source root, with the extension stripped from the base name."""
    path = PurePosixPath(relative_path)
    dirs = list(path.parts[:-1])
    for i in range(len(dirs) - 1, -1, -1):
        if dirs[i] in SOURCE_ROOT_NAMES:
            dirs = dirs[i + 1:]
            break
    return dirs + [path.stem]


def file_name_document(file: SourceFileRef | str, stopwords=None) -> Document:
    stopwords = default_stopwords() if stopwords is None else stopwords
    rel = file.relative_path if isinstance(file, SourceFileRef) else file
    node = file.node_id if isinstance(file, SourceFileRef) else f"file:{rel}"
    return _document(node, NAME, path_segments(rel), stopwords)


def identifiers_document(file: SourceFileRef | str, identifiers: Iterable[str], stopwords=None) -> Document:
    stopwords = default_stopwords() if stopwords is None else stopwords
    node = file.node_id if isinstance(file, SourceFileRef) else f"file:{file}"
    return _document(node, IDENTIFIERS, identifiers, stopwords)


# --- identifier extraction -------------------------------------------------

_NAMED_DECLARATIONS = frozenset({
    "class_declaration", "interface_declaration", "enum_declaration", "record_declaration",
    "annotation_type_declaration", "method_declaration", "constructor_declaration",
    "annotation_type_element_declaration", "formal_parameter", "catch_formal_parameter",
    "variable_declarator", "resource", "enhanced_for_statement", "enum_constant",
})

_LITERAL_OR_COMMENT = re.compile(
    r'"""(?:.|\n)*?"""'           # text blocks
    r'|"(?:\\.|[^"\\\n])*"'       # string literals
    r"|'(?:\\.|[^'\\\n])*'"       # char literals
    r"|//[^\n]*|/\*(?:.|\n)*?\*/"
)
_IDENT_TOKEN = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


@lru_cache(maxsize=1)
def _java_language():
    import tree_sitter_java
    from tree_sitter import Language

    return Language(tree_sitter_java.language())


def _declared_names(root) -> list[str]:
    names = []
    stack = [root]
    while stack:
        node = stack.pop()
        ntype = node.type
        if ntype in _NAMED_DECLARATIONS:
            name = node.child_by_field_name("name")
            if name is not None and name.type == "identifier":
                names.append(name.text.decode("utf-8"))
        elif ntype == "lambda_expression":
            params = node.child_by_field_name("parameters")
            if params is not None and params.type == "identifier":
                names.append(params.text.decode("utf-8"))
            elif params is not None and params.type == "inferred_parameters":
                names.extend(c.text.decode("utf-8") for c in params.named_children if c.type == "identifier")
        stack.extend(reversed(node.children))
    return names


def lexical_identifiers(source_text: str) -> list[str]:
    """Identifier-shaped tokens outside comments and literals, minus reserved words."""
    stripped = _LITERAL_OR_COMMENT.sub(" ", source_text)
    return [tok for tok in _IDENT_TOKEN.findall(stripped) if tok not in JAVA_RESERVED]


def extract_identifiers(source_text: str | bytes) -> list[str]:
    """Declared class, interface, enum, method, parameter and variable names in document order.

    Files the grammar cannot parse cleanly fall back to a lexical scan. Bytes that are not
    valid UTF-8 raise ``UnicodeDecodeError``.
    """
    if isinstance(source_text, bytes):
        data = source_text
        source_text = data.decode("utf-8")
    else:
        data = source_text.encode("utf-8")
    if not source_text.strip():
        return []
    from tree_sitter import Parser

    tree = Parser(_java_language()).parse(data)
    if tree.root_node.has_error:
        return lexical_identifiers(source_text)
    return _declared_names(tree.root_node)
