"""Serialising analysis results as JSON documents or plain-text tables."""

from __future__ import annotations

import json
from collections.abc import Iterable
from typing import Any, Optional

from .simplehal.flow import LabeledProgram, TaggedFlow
from .solver import END, AnalysisResult


def _successor_key(s):
    return (1, None) if s is END else (0, s)


def _contexts(value, render) -> dict[str, str]:
    return {str(ctx): render(v) for ctx, v in sorted(value.entries.items())}


def build_document(result: AnalysisResult, lp: LabeledProgram, *, analysis: str,
                   flows: Optional[Iterable[TaggedFlow]] = None) -> dict[str, Any]:
    fw = result.framework
    render = fw.lattice.render
    doc: dict[str, Any] = {
        "meta": {
            "analysis": analysis,
            "k": fw.context_depth,
            "iterations": result.iteration_count,
        },
        "program": lp.show(),
    }
    if flows is not None:
        doc["flows"] = [
            {"from": str(f.source), "to": str(f.target), "kind": str(f.kind)}
            for f in sorted(flows)
        ]
    doc["entry"] = {str(l): _contexts(result.entry[l], render) for l in sorted(result.entry)}
    doc["exit"] = {
        str(l): {str(s): _contexts(outs[s], render) for s in sorted(outs, key=_successor_key)}
        for l, outs in sorted(result.exit.items())
    }
    return doc


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_table(doc: dict[str, Any]) -> str:
    """Tab-separated projection of a document's flows, entry and exit tables."""
    meta = doc["meta"]
    lines = [f"# analysis={meta['analysis']} "
             f"k={meta['k']} iterations={meta['iterations']}"]
    if "flows" in doc:
        lines.append("[flows]")
        lines.extend(f"{f['from']}\t{f['to']}\t{f['kind']}" for f in doc["flows"])
    lines.append("[entry]")
    for label, contexts in doc["entry"].items():
        lines.extend(f"{label}\t{ctx}\t{value}" for ctx, value in contexts.items())
    lines.append("[exit]")
    for label, outs in doc["exit"].items():
        for succ, contexts in outs.items():
            lines.extend(f"{label}\t{succ}\t{ctx}\t{value}" for ctx, value in contexts.items())
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> dict[str, Any]:
    """Read a table back into the ``flows``/``entry``/``exit`` shape."""
    out: dict[str, Any] = {"entry": {}, "exit": {}}
    section = None
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            section = line.strip("[]")
            if section == "flows":
                out["flows"] = []
            continue
        cells = line.split("\t")
        if section == "flows":
            out["flows"].append({"from": cells[0], "to": cells[1], "kind": cells[2]})
        elif section == "entry":
            out["entry"].setdefault(cells[0], {})[cells[1]] = cells[2]
        elif section == "exit":
            out["exit"].setdefault(cells[0], {}).setdefault(cells[1], {})[cells[2]] = cells[3]
    return out
