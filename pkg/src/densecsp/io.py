"""JSON file formats for instances, graphs, assignments and reports."""
import json
from fractions import Fraction

import numpy as np

from .core import Instance, tables_from_pi, validate
from .dks import Graph
from .errors import InvalidInstanceError

FORMAT_VERSION = 1


def instance_to_dict(inst):
    allowed = [np.argwhere(t).tolist() for t in inst.tables]
    out = {"format_version": FORMAT_VERSION, "kind": inst.kind, "q": inst.q,
           "n": inst.n, "edges": inst.edges.tolist(), "allowed": allowed}
    if inst.kind == "projection":
        out["pi"] = (inst.pi if inst.pi is not None else inst.tables.argmax(axis=2)).tolist()
    return out


def instance_from_dict(d, check=True):
    if d.get("format_version") != FORMAT_VERSION:
        raise InvalidInstanceError([f"unsupported format_version {d.get('format_version')!r}"])
    q, n = int(d["q"]), int(d["n"])
    edges = np.asarray(d["edges"], dtype=np.int64).reshape(-1, 2)
    pi = d.get("pi")
    if "allowed" in d:
        if len(d["allowed"]) != len(edges):
            raise InvalidInstanceError(["'allowed' must be parallel to 'edges'"])
        tables = np.zeros((len(edges), q, q), dtype=bool)
        for e, pairs in enumerate(d["allowed"]):
            for s, t in pairs:
                if not (0 <= s < q and 0 <= t < q):
                    raise InvalidInstanceError([f"allowed pair ({s},{t}) of edge {e} outside [q]"])
                tables[e, s, t] = True
    elif pi is not None:
        tables = tables_from_pi(pi, q)
    else:
        raise InvalidInstanceError(["instance needs 'allowed' or 'pi'"])
    inst = Instance(q=q, n=n, edges=edges, tables=tables, kind=d.get("kind", "general"),
                    pi=pi)
    if check:
        problems = validate(inst)
        if problems:
            raise InvalidInstanceError(problems)
    return inst


def graph_to_dict(graph):
    return {"n": graph.n, "edges": graph.edges.tolist()}


def graph_from_dict(d):
    g = Graph(int(d["n"]), np.asarray(d.get("edges", []), dtype=np.int64))
    e = g.edges
    if len(e) and (e.min() < 0 or e.max() >= g.n or (e[:, 0] == e[:, 1]).any()):
        raise InvalidInstanceError(["graph edges must join distinct vertices in 0..n-1"])
    return g


def assignment_to_dict(labels):
    labels = np.asarray(labels)
    return {"n": len(labels), "labels": labels.tolist()}


def assignment_from_dict(d):
    labels = np.asarray(d["labels"], dtype=np.int64)
    if "n" in d and len(labels) != d["n"]:
        raise InvalidInstanceError([f"assignment lists {len(labels)} labels, n={d['n']}"])
    return labels


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def report_to_dict(report, command, params, timings=False):
    out = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "params": _plain(params),
        "seed": int(report.seed),
        "level": int(report.level),
        "satisfied": int(report.satisfied),
        "edges": int(report.edges),
        "value": str(report.value),
        "guarantee": report.guarantee,
        "guarantee_met": report.guarantee_met,
        "assignment": assignment_to_dict(report.assignment),
        "extra": _plain(report.extra),
    }
    if timings:
        out["elapsed"] = report.elapsed
    return out


def dumps(obj):
    return json.dumps(_plain(obj), sort_keys=True, indent=1) + "\n"


def load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def save(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def read_instance(path, check=True):
    return instance_from_dict(load(path), check=check)


def read_graph(path):
    return graph_from_dict(load(path))
