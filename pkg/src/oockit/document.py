"""Stable JSON interchange format for codes.

Documents are canonical: sorted keys, slot-normalized and sorted codewords,
integers only.  parse(render(doc)) == doc.
"""

from __future__ import annotations

import json

from .core import Code, CodeParams, Codeword, make_codeword, normalize

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """The input is not a well-formed code document."""


def code_to_document(code: Code, metadata: dict | None = None) -> dict:
    p = code.params
    cws = sorted(normalize(cw, p.m) for cw in code.codewords)
    meta = {
        "branch": None,
        "claimed_size": None,
        "claimed_leave": None,
        "verified": False,
        "provenance": None,
    }
    meta.update(metadata or {})
    if isinstance(meta.get("claimed_leave"), (set, frozenset)):
        meta["claimed_leave"] = sorted(meta["claimed_leave"])
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {
            "n": p.n,
            "m": p.m,
            "k": p.k,
            "lambda_a": p.lambda_a,
            "lambda_c": p.lambda_c,
        },
        "codewords": [[[r, s] for r, s in cw] for cw in cws],
        "metadata": meta,
    }


def document_to_code(doc: dict) -> tuple[Code, dict]:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
    params = doc.get("params")
    if not isinstance(params, dict):
        raise DocumentError("missing params object")
    try:
        p = CodeParams(
            int(params["n"]),
            int(params["m"]),
            int(params.get("k", 3)),
            int(params.get("lambda_a", 2)),
            int(params.get("lambda_c", 1)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad params: {exc}") from exc
    raw = doc.get("codewords")
    if not isinstance(raw, list):
        raise DocumentError("codewords must be a list")
    codewords: list[Codeword] = []
    for entry in raw:
        if not isinstance(entry, list) or not all(
            isinstance(c, list) and len(c) == 2 for c in entry
        ):
            raise DocumentError(f"malformed codeword entry {entry!r}")
        try:
            codewords.append(make_codeword((int(r), int(s)) for r, s in entry))
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"bad codeword {entry!r}: {exc}") from exc
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object")
    code = Code(p, codewords)
    try:
        code.validate()
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    return code, metadata


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def parse_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def render_matrix(code: Code) -> str:
    """One n x m block of '0'/'1' characters per codeword, blank-line separated."""
    p = code.params
    blocks = []
    for cw in code.codewords:
        cells = set(cw)
        rows = [
            "".join("1" if (i, x) in cells else "0" for x in range(p.m))
            for i in range(p.n)
        ]
        blocks.append("\n".join(rows))
    return "\n\n".join(blocks)
