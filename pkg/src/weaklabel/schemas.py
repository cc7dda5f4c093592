"""JSON Schemas (draft 2020-12) for every file the pipeline writes.

Kept as plain dicts so consumers can validate with any JSON Schema implementation.
"""

_NUMBER_MAP = {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}}
_TERMS = {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1},
          "propertyNames": {"pattern": "^[a-z0-9]+$"}}

GRAPH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["project", "nodes", "edges"],
    "additionalProperties": False,
    "properties": {
        "project": {"type": "string", "minLength": 1},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind", "name"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "kind": {"enum": ["project", "package", "file"]},
                    "name": {"type": "string"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "kind"],
                "additionalProperties": False,
                "properties": {
                    "src": {"type": "string"},
                    "dst": {"type": "string"},
                    "kind": {"enum": ["contains", "depends"]},
                },
            },
        },
    },
}

DOCUMENT_RECORD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["node", "path", "package", "name", "identifiers", "status"],
    "additionalProperties": False,
    "properties": {
        "node": {"type": "string", "pattern": "^file:"},
        "path": {"type": "string"},
        "package": {"type": "string"},
        "name": _TERMS,
        "identifiers": _TERMS,
        "status": {"enum": ["ok", "undecodable", "unreadable"]},
    },
}

ANNOTATION_RECORD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["project", "path", "kind", "lf", "modality", "threshold", "transform",
                 "annotated", "jsd", "norm", "scores"],
    "properties": {
        "project": {"type": "string"},
        "path": {"type": "string"},
        "kind": {"enum": ["file", "package", "project"]},
        "lf": {"type": "string", "minLength": 1},
        "modality": {"type": "string"},
        "threshold": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
        "transform": {"enum": ["RAW", "T1", "Tp"]},
        "annotated": {"type": "boolean"},
        "jsd": {"type": "number", "minimum": 0, "maximum": 1},
        "norm": {"enum": ["L1", "L2", "one-hot"]},
        "scores": _NUMBER_MAP,
        "source": {"type": "string"},
        "display_label": {"type": ["string", "null"]},
        "top_k": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

NODE_RECORD = {
    **ANNOTATION_RECORD,
    "required": ANNOTATION_RECORD["required"] + ["display_label"],
    "properties": {**ANNOTATION_RECORD["properties"], "kind": {"enum": ["package", "project"]}},
}

TREEMAP = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "node": {
            "type": "object",
            "required": ["name", "id", "kind", "display_label", "probability", "children"],
            "additionalProperties": False,
            "properties": {
                "name": {"type": "string"},
                "id": {"type": "string"},
                "kind": {"enum": ["project", "package", "file"]},
                "display_label": {"type": ["string", "null"]},
                "probability": {"type": "number", "minimum": 0, "maximum": 1},
                "children": {"type": "array", "items": {"$ref": "#/$defs/node"}},
            },
        }
    },
    "$ref": "#/$defs/node",
}

TREEMAP_EXPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["cell", "projects"],
    "additionalProperties": False,
    "properties": {
        "cell": {"type": "string"},
        "projects": {"type": "array", "items": TREEMAP["$defs"]["node"]},
    },
    "$defs": TREEMAP["$defs"],
}

KEYWORD_TABLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["labels"],
    "additionalProperties": False,
    "properties": {
        "labels": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": {"type": "number", "exclusiveMinimum": 0}},
        }
    },
}

KEYWORD_DUMP = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["project", "keywords"],
    "additionalProperties": False,
    "properties": {
        "project": {"type": "string"},
        "keywords": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["text", "score"],
                "additionalProperties": False,
                "properties": {
                    "text": {"type": "string", "pattern": "^[a-z0-9]+( [a-z0-9]+){0,9}$"},
                    "score": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
    },
}

_FRACTION_OR_NULL = {"type": ["number", "null"], "minimum": 0, "maximum": 1}

METRIC_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["meta", "rows", "agreement"],
    "additionalProperties": False,
    "properties": {
        "meta": {"type": "object"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["config", "lf", "threshold", "transform", "top_k", "recall@3", "recall@5",
                             "recall@10", "unannotated_file", "unannotated_package", "unannotated_project",
                             "polarity", "projects_evaluated"],
                "properties": {
                    "config": {"type": "string"},
                    "lf": {"type": "string"},
                    "threshold": {"type": "number"},
                    "transform": {"enum": ["RAW", "T1", "Tp"]},
                    "top_k": {"type": "integer", "minimum": 1},
                    "recall@3": _FRACTION_OR_NULL,
                    "recall@5": _FRACTION_OR_NULL,
                    "recall@10": _FRACTION_OR_NULL,
                    "unannotated_file": {"type": "number", "minimum": 0, "maximum": 1},
                    "unannotated_package": {"type": "number", "minimum": 0, "maximum": 1},
                    "unannotated_project": {"type": "number", "minimum": 0, "maximum": 1},
                    "jsd_mean": _FRACTION_OR_NULL,
                    "jsd_median": _FRACTION_OR_NULL,
                    "jsd_q1": _FRACTION_OR_NULL,
                    "jsd_q3": _FRACTION_OR_NULL,
                    "polarity": {"type": "integer", "minimum": 0},
                    "cohesion_mean": _FRACTION_OR_NULL,
                    "cohesion_median": _FRACTION_OR_NULL,
                    "projects_evaluated": {"type": "integer", "minimum": 0},
                },
            },
        },
        "agreement": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _FRACTION_OR_NULL},
        },
    },
}

_CELL = {
    "type": "object",
    "required": ["id", "lf", "threshold", "transform", "file"],
    "properties": {
        "id": {"type": "string"},
        "lf": {"type": "string"},
        "threshold": {"type": "number"},
        "transform": {"enum": ["RAW", "T1", "Tp"]},
        "file": {"type": "string"},
        "nodes": {"type": "string"},
        "treemaps": {"type": "string"},
    },
    "additionalProperties": False,
}

INGEST_MANIFEST = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["extension", "projects", "failures"],
    "additionalProperties": False,
    "properties": {
        "extension": {"type": "string"},
        "projects": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "files", "packages"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "files": {"type": "integer", "minimum": 0},
                    "packages": {"type": "integer", "minimum": 0},
                },
            },
        },
        "failures": {
            "type": "array",
            "items": {"type": "object", "required": ["project", "error"]},
        },
    },
}

ANNOTATE_MANIFEST = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["seed", "cells"],
    "additionalProperties": False,
    "properties": {"seed": {"type": "integer"}, "cells": {"type": "array", "items": _CELL}},
}

AGGREGATE_MANIFEST = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["top_k", "cells"],
    "additionalProperties": False,
    "properties": {
        "top_k": {"type": "integer", "minimum": 1},
        "cells": {"type": "array", "items": {**_CELL, "required": _CELL["required"] + ["nodes", "treemaps"]}},
    },
}

# output file glob (relative to the run directory) -> schema, JSONL files validated per line
OUTPUT_SCHEMAS = {
    "ingest/manifest.json": INGEST_MANIFEST,
    "annotate/manifest.json": ANNOTATE_MANIFEST,
    "aggregate/manifest.json": AGGREGATE_MANIFEST,
    "ingest/*/graph.json": GRAPH,
    "ingest/*/documents.jsonl": DOCUMENT_RECORD,
    "keywords/projects/*.json": KEYWORD_DUMP,
    "keywords/table.json": KEYWORD_TABLE,
    "annotate/*.jsonl": ANNOTATION_RECORD,
    "aggregate/*.nodes.jsonl": NODE_RECORD,
    "aggregate/treemaps/*/*.json": TREEMAP,
    "evaluate/report.json": METRIC_REPORT,
}
