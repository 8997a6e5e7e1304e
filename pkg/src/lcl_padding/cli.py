"""``lcl-lab``: generate, solve, verify, fuzz and measure from the command line.

Graph artifacts use the codec format with the run configuration embedded in
``meta.config``; violation reports are JSON lines; measurements are CSV.
Human-readable summaries go to stdout, machine-readable errors to stderr.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from collections import Counter
from pathlib import Path

from . import codec
from .gadget.algorithm import algorithm_v, psi_g_transform
from .gadget.build import GadgetSpec, build_gadget
from .gadget.check import check_gadget
from .gadget.labels import GNode
from .gadget.fuzz import run_fuzz
from .gadget.psi import ERROR, psi_g_problem, psi_problem
from .gadget.search import search_error_labeling
from .graph import Labeling, PortedMultigraph, cycle, graph_from_pairs
from .local import LocalAlgorithm, measure_locality
from .nelcl import get_problem, sinkless_orientation, so_full_gather_solver
from .padding.hard import hard_instance
from .padding.pad import pad_graph
from .padding.recursion import alphabet_bits, recurse, solve_levels
from .padding.solve import extract_virtual_solution, pi_prime_algorithm

SEED_ENV = "LCL_LAB_SEED"
SO = "sinkless-orientation"
CSV_COLUMNS = ["n", "h", "Δ", "T_min", "accept", "seed"]


class CliError(Exception):
    """A user-facing failure with a short machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


# -- small helpers -------------------------------------------------------------------

def _config(args, **extra) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "file", "files")}
    for name in ("file", "files"):
        paths = getattr(args, name, None)
        if paths:
            paths = [paths] if isinstance(paths, str) else paths
            cfg[f"{name}_sha256"] = [hashlib.sha256(Path(p).read_bytes()).hexdigest() for p in paths]
    cfg.update(extra)
    return cfg


def _emit(args, data: bytes | str):
    if isinstance(data, str):
        data = data.encode()
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _say(args, msg: str):
    # when the artifact goes to stdout the summary moves to stderr
    print(msg, file=sys.stdout if args.out else sys.stderr)


def _read(path: str):
    try:
        return codec.decode(Path(path).read_bytes())
    except OSError as exc:
        raise CliError("io", str(exc)) from None


def _deltas(meta: dict, args) -> list[int]:
    if getattr(args, "delta", None) is not None and "deltas" not in meta:
        return [args.delta]
    return list(meta.get("deltas", []))


def _problem_name(args, meta: dict) -> str:
    name = getattr(args, "problem", None) or meta.get("problem")
    if not name:
        raise CliError("usage", "no --problem given and the file does not name one")
    return name


def _jsonl(records) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def parse_base(text: str) -> PortedMultigraph:
    """``cycle:N``, ``triangle``, ``pairs:1-2,2-3,...`` (nodes 1..max) or a graph file."""
    if text == "triangle":
        return cycle(3)
    if text.startswith("cycle:"):
        return cycle(int(text[6:]))
    if text.startswith("pairs:"):
        pairs = [tuple(int(x) for x in p.split("-")) for p in text[6:].split(",") if p]
        return graph_from_pairs(max(max(p) for p in pairs), pairs)
    g, _, _ = _read(text)
    return g


def parse_inner(text: str) -> LocalAlgorithm:
    name, _, radius = text.partition(":")
    if name != "so-full-gather":
        raise CliError("usage", f"unknown inner solver {name!r}")
    alg = so_full_gather_solver()
    return alg.with_radius(int(radius)) if radius else alg


def parse_ints(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        out += list(range(int(lo), int(hi) + 1)) if hi else [int(lo)]
    return out


def _gadget_from_file(path: str):
    g, layers, meta = _read(path)
    if "input" not in layers:
        raise CliError("format", "gadget file has no input layer")
    delta = meta.get("deltas", [None])[0]
    if delta is None:
        delta = max((x.index for x in layers["input"].nodes.values() if isinstance(x, GNode)), default=1)
    return g, layers["input"], int(delta), meta


# -- gadget commands -----------------------------------------------------------------

def cmd_gen_gadget(args):
    heights = parse_ints(args.heights) if args.heights else [args.height] * args.delta
    spec = GadgetSpec(args.delta, tuple(heights))
    gad = build_gadget(spec)
    meta = {"problem": "psi-g", "deltas": [args.delta], "spec": list(spec.heights), "config": _config(args)}
    _emit(args, codec.encode(gad.graph, {"input": gad.labels}, meta))
    _say(args, f"gadget delta={args.delta} heights={list(spec.heights)}: {gad.graph.n} nodes, {gad.graph.m} edges")
    return 0


def cmd_check_gadget(args):
    g, labels, delta, _ = _gadget_from_file(args.file)
    bad = check_gadget(g, labels, delta)
    _emit(args, _jsonl({"kind": "node", "location": v, "constraint": c} for v, c in bad))
    _say(args, f"{len(bad)} violation(s) on {g.n} nodes")
    return 1 if bad else 0


def cmd_prove_error(args):
    g, labels, delta, _ = _gadget_from_file(args.file)
    psi = algorithm_v(g, labels, delta)
    proof = psi_g_transform(g, labels, delta, dict(psi.nodes))
    psi_bad = psi_problem(delta).verify(g, labels, psi)
    g_bad = psi_g_problem(delta).verify(g, labels, proof)
    errors = sum(1 for x in psi.nodes.values() if x == ERROR)
    meta = {"problem": "psi-g", "deltas": [delta], "config": _config(args),
            "errors": errors, "psi_accept": not psi_bad, "psi_g_accept": not g_bad}
    _emit(args, codec.encode(g, {"input": labels, "output": proof, "psi": psi}, meta))
    _say(args, f"V: {errors} Error node(s); psi {'accepts' if not psi_bad else 'rejects'}, "
               f"psi-g {'accepts' if not g_bad else 'rejects'}")
    return 0 if not psi_bad and not g_bad else 1


def cmd_no_cheat(args):
    g, labels, delta, _ = _gadget_from_file(args.file)
    found = search_error_labeling(g, labels, delta, budget=args.budget)
    if found is None:
        print("none")
        return 0
    out = Labeling(found, {i: None for i in g.edges}, {h: None for h in g.half_edges()})
    if args.out:
        meta = {"problem": "psi", "deltas": [delta], "config": _config(args)}
        Path(args.out).write_bytes(codec.encode(g, {"input": labels, "output": out}, meta))
    print("found")
    return 1


def cmd_fuzz(args):
    records = run_fuzz(args.n, args.seed)
    _emit(args, _jsonl(records))
    flagged = sum(r["flagged"] for r in records)
    failures = sum(not r["ok"] for r in records)
    _say(args, f"{len(records)} mutants: {flagged} flagged, {len(records) - flagged} unflagged, "
               f"{failures} failure(s)")
    return 1 if failures else 0


# -- padding commands ----------------------------------------------------------------

def cmd_pad(args):
    heights = parse_ints(args.heights) if args.heights else None
    if Path(args.base).is_file():
        h, layers, meta = _read(args.base)
        deltas = list(meta.get("deltas", [])) if meta.get("problem", SO) != SO else []
        base_inputs = layers.get("input") if deltas else None
    else:
        h, deltas, base_inputs = parse_base(args.base), [], None
    below = recurse(sinkless_orientation(), len(deltas) + 1, deltas)
    specs = {v: GadgetSpec(args.delta, tuple(heights or [args.height] * args.delta)) for v in h.nodes()}
    pg = pad_graph(h, specs, base_inputs=base_inputs, base=below)
    deltas = deltas + [args.delta]
    meta = {"problem": f"pi-prime@{len(deltas)}", "deltas": deltas, "config": _config(args)}
    _emit(args, codec.encode(pg.graph, {"input": pg.inputs}, meta))
    _say(args, f"padded {h.n}-node base into {pg.graph.n} nodes, {pg.graph.m} edges (level {len(deltas)})")
    return 0


def cmd_hard_instance(args):
    hi = hard_instance(args.n, args.delta, base=sinkless_orientation())
    meta = {"problem": "pi-prime@1", "deltas": [args.delta], "config": _config(args),
            "f_n": hi.f_n, "gadget_size": hi.N, "height": hi.height, "isolated": hi.isolated}
    _emit(args, codec.encode(hi.graph, {"input": hi.inputs}, meta))
    _say(args, f"n={hi.graph.n}: {hi.f_n}-cycle padded with height-{hi.height} gadgets "
               f"of {hi.N} nodes, {hi.isolated} isolated")
    return 0


def cmd_solve(args):
    g, layers, meta = _read(args.file)
    name = _problem_name(args, meta)
    inputs = layers.get("input")
    inner = parse_inner(args.inner)
    if name == SO:
        from .local import run
        out = run(g, inputs, inner, seed=args.seed)
        deltas = []
    elif name.startswith("pi-prime@"):
        k = int(name.split("@", 1)[1])
        deltas = _deltas(meta, args)[:k]
        if len(deltas) != k:
            raise CliError("usage", f"{name} needs {k} gadget degree(s) in the file meta")
        out = solve_levels(g, inputs, inner, sinkless_orientation(), deltas, seed=args.seed)
    else:
        raise CliError("usage", f"solve does not handle {name!r}")
    bad = get_problem(name, deltas).verify(g, inputs, out)
    meta = {"problem": name, "deltas": deltas, "config": _config(args), "accept": not bad}
    layers_out = {"output": out} if inputs is None else {"input": inputs, "output": out}
    _emit(args, codec.encode(g, layers_out, meta))
    _say(args, f"solved {name} on {g.n} nodes; verifier {'accepts' if not bad else f'rejects ({len(bad)})'}")
    return 0 if not bad else 1


def cmd_verify(args):
    g, layers, meta = _read(args.file)
    name = _problem_name(args, meta)
    if "output" not in layers:
        raise CliError("format", "file has no output layer")
    prob = get_problem(name, _deltas(meta, args))
    inputs = layers.get("input")
    bad = prob.verify(g, inputs, layers["output"])
    _emit(args, _jsonl(v._asdict() for v in bad))
    _say(args, f"{name}: {len(bad)} violation(s)")
    return 1 if bad else 0


def cmd_extract(args):
    g, layers, meta = _read(args.file)
    deltas = list(meta.get("deltas", []))
    if not deltas or "output" not in layers:
        raise CliError("format", "extract needs a solved padded graph with its gadget degrees")
    vg, vin, vout, members = extract_virtual_solution(g, layers["input"], layers["output"], deltas[-1])
    below = deltas[:-1]
    name = f"pi-prime@{len(below)}" if below else SO
    bad = get_problem(name, below).verify(vg, vin, vout)
    meta = {"problem": name, "deltas": below, "config": _config(args), "accept": not bad}
    layers_out = {"input": vin, "output": vout} if below else {"output": vout}
    _emit(args, codec.encode(vg, layers_out, meta))
    _say(args, f"virtual graph: {vg.n} nodes, {vg.m} edges; {name} {'accepts' if not bad else 'rejects'}")
    return 0 if not bad else 1


def cmd_recurse(args):
    deltas = parse_ints(args.deltas)
    rows = []
    for k in range(1, args.k + 1):
        prob = recurse(sinkless_orientation(), k, deltas, cap_bits=args.budget)
        rows.append({"level": k, "problem": prob.name, "bits": alphabet_bits(prob)})
    doc = {"config": _config(args), "levels": rows}
    _emit(args, json.dumps(doc, sort_keys=True) + "\n")
    for r in rows:
        _say(args, f"level {r['level']}: {r['problem']} ({r['bits']} bits)")
    return 0


def cmd_measure_locality(args):
    h = parse_base(args.base)
    inner = parse_inner(args.inner)
    heights = parse_ints(args.heights) if args.heights else [args.height]
    so = sinkless_orientation()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for hh in heights:
        pg = pad_graph(h, GadgetSpec.uniform(args.delta, hh), base=so)
        prob = get_problem("pi-prime@1", [args.delta])
        t = measure_locality(pg.graph, pg.inputs, prob,
                             lambda t: pi_prime_algorithm(so, args.delta, inner, radius=t),
                             args.t_max, seed=args.seed)
        w.writerow([pg.graph.n, hh, args.delta, "" if t is None else t, int(t is not None), args.seed])
        _say(args, f"h={hh}: n={pg.graph.n} T_min={t}")
    _emit(args, buf.getvalue())
    return 0


def cmd_report(args):
    summary = []
    for path in args.files:
        data = Path(path).read_bytes()
        entry = {"file": Path(path).name, "sha256": hashlib.sha256(data).hexdigest()}
        text = data.decode()
        if text.startswith(",".join(CSV_COLUMNS)):
            rows = list(csv.DictReader(io.StringIO(text)))
            entry.update(kind="csv", rows=len(rows), accepted=sum(r["accept"] == "1" for r in rows),
                         t_min=[r["T_min"] for r in rows])
        else:
            lines = [json.loads(x) for x in text.splitlines() if x.strip()]
            if len(lines) == 1 and isinstance(lines[0], dict) and lines[0].get("format") == codec.FORMAT:
                doc = lines[0]
                entry.update(kind="graph", n=len(doc["nodes"]), m=len(doc["edges"]),
                             problem=doc["meta"].get("problem"))
            else:
                counts = Counter(r.get("constraint", r.get("kind", "?")) for r in lines)
                entry.update(kind="jsonl", records=len(lines), by_key=dict(sorted(counts.items())))
        summary.append(entry)
        _say(args, " ".join(f"{k}={v}" for k, v in entry.items() if k != "sha256"))
    _emit(args, json.dumps({"config": _config(args), "artifacts": summary}, sort_keys=True) + "\n")
    return 0


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get(SEED_ENV, "0"))
    p = argparse.ArgumentParser(prog="lcl-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--seed", type=int, default=default_seed)
        sp.add_argument("--out", help="artifact path (stdout if omitted)")
        sp.set_defaults(func=func)
        return sp

    sp = cmd("gen-gadget", cmd_gen_gadget, "build a gadget file")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--height", type=int, default=1)
    sp.add_argument("--heights", help="per-port heights, e.g. 2,3,2")

    for name, func, help_ in (("check-gadget", cmd_check_gadget, "list gadget constraint violations"),
                              ("prove-error", cmd_prove_error, "run V and emit its proof labeling"),
                              ("no-cheat", cmd_no_cheat, "search for an all-error labeling")):
        sp = cmd(name, func, help_)
        sp.add_argument("file")
        if name == "no-cheat":
            sp.add_argument("--budget", type=int, default=10**6)

    sp = cmd("fuzz", cmd_fuzz, "mutate gadgets and check V on each mutant")
    sp.add_argument("--n", type=int, default=1000, help="number of mutants")

    sp = cmd("pad", cmd_pad, "pad a base graph (or a padded file) with gadgets")
    sp.add_argument("--base", required=True, help="cycle:N, triangle, pairs:1-2,... or a graph file")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--height", type=int, default=1)
    sp.add_argument("--heights")

    sp = cmd("hard-instance", cmd_hard_instance, "build an exact-size hard instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", type=int, default=3)

    sp = cmd("solve", cmd_solve, "solve the problem named in the file")
    sp.add_argument("file")
    sp.add_argument("--problem")
    sp.add_argument("--delta", type=int)
    sp.add_argument("--inner", default="so-full-gather")

    sp = cmd("verify", cmd_verify, "verify an output layer")
    sp.add_argument("file")
    sp.add_argument("--problem")
    sp.add_argument("--delta", type=int)

    sp = cmd("extract", cmd_extract, "read the virtual solution out of a solved padded graph")
    sp.add_argument("file")

    sp = cmd("recurse", cmd_recurse, "list the padded problem chain")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--deltas", default="3")
    sp.add_argument("--budget", type=int, help="alphabet cap in bits")

    sp = cmd("measure-locality", cmd_measure_locality, "smallest working radius per gadget height")
    sp.add_argument("--base", default="cycle:6")
    sp.add_argument("--delta", type=int, default=2)
    sp.add_argument("--height", type=int, default=1)
    sp.add_argument("--heights")
    sp.add_argument("--inner", default="so-full-gather:3")
    sp.add_argument("--t-max", type=int, default=128)

    sp = cmd("report", cmd_report, "summarize artifacts")
    sp.add_argument("files", nargs="+")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        err = {"error": exc.code, "message": str(exc)}
    except (ValueError, RuntimeError, AssertionError, KeyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(err, sort_keys=True), file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
