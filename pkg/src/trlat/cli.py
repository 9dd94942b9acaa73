"""Command-line interface: report-generating, deterministic, JSON in and out."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import acceptance, serialize
from .groups import GroupValidationError, abelian_group, builtin_group, group_spec, make_group
from .lattice import automorphisms, subgroup_lattice
from .transfer import (SearchBoundExceeded, TransferSystem, TransferSystemError,
                       aut_orbits, enumerate_all, generate, is_saturated, validate)
from .chains import maximal_chain
from .realize import (CATALOG_GROUPS, NotRealizable, linisom_fixture,
                      linisom_image_cyclic, linisom_image_fixture,
                      minimal_steiner_universe, realize_saturated_cpn,
                      realize_saturated_cpq, steiner_image)

USAGE_ERROR = 2
VALIDATION_ERROR = 1


class UsageError(Exception):
    pass


def parse_group(token: str):
    """Group from a CLI token: builtin/C<n>/D<2p>, C*xC* products, or @spec.json."""
    if token.startswith("@"):
        with open(token[1:]) as fh:
            return serialize.group_from_json(json.load(fh))
    if re.fullmatch(r"C\d+(xC\d+)+", token):
        return abelian_group(tuple(int(f[1:]) for f in token.split("x")))
    try:
        return builtin_group(token)
    except GroupValidationError as exc:
        raise UsageError(str(exc)) from None


def parse_pairs(L, text: str) -> list[tuple[int, int]]:
    """Parse a relation given as "(1,C4),(C2,C8)" or as "1->C4; C2->C8".

    The arrow form accepts any subgroup display name (names such as <(12)>
    or <(1,0)> contain commas and parentheses, so the tuple form is only for
    plain names).
    """
    text = text.strip()
    if not text:
        return []
    if "->" in text:
        tokens = []
        for chunk in re.split(r"[;\s]+", text):
            if not chunk:
                continue
            parts = chunk.split("->")
            if len(parts) != 2 or not all(parts):
                raise UsageError(f"unparsable pair {chunk!r}; expected SRC->DST")
            tokens.append((parts[0], parts[1]))
    else:
        tokens = re.findall(r"\(([^,()]+),([^,()]+)\)", text)
        cleaned = re.sub(r"\(([^,()]+),([^,()]+)\)|,|\s", "", text)
        if cleaned:
            raise UsageError(f"unparsable pair syntax near {cleaned[:20]!r}")
    out = []
    for a, b in tokens:
        try:
            out.append((L.resolve_name(a), L.resolve_name(b)))
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    return out


def _report(args, group=None, results=None, checks=None, started=None) -> dict:
    doc = {
        "schema_version": serialize.SCHEMA_VERSION,
        "command": list(args),
        "results": results or {},
        "checks": checks or [],
    }
    if group is not None:
        doc["group"] = group_spec(group)
    if started is not None:
        doc["timing_seconds"] = round(time.perf_counter() - started, 6)
    serialize.validate_document(doc, serialize.REPORT_SCHEMA)
    return doc


def _emit(doc: dict, out) -> None:
    print(serialize.dumps(doc), file=out)


def _named_pairs(T: TransferSystem) -> list[list[str]]:
    L = T.lattice
    return [[L.names[k], L.names[h]] for k, h in T.pairs()]


def cmd_group_info(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    results = {
        "order": G.order,
        "abelian": G.is_abelian,
        "subgroup_count": L.n,
        "subgroups": [{"name": L.names[s], "order": L.order_of(s),
                       "normal": L.normal[s], "cocyclic": L.cocyclic[s],
                       "class": L.class_of[s]} for s in range(L.n)],
        "pair_orbit_count": len(L.pair_orbits),
        "automorphism_count": len(automorphisms(G)),
        "lattice": serialize.lattice_to_json(L),
    }
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_ts_generate(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    pairs = parse_pairs(L, ns.pairs)
    try:
        T = generate(L, pairs)
    except TransferSystemError as exc:
        _emit(_report(argv, G, {"error": str(exc)},
                      [{"claim": "relation refines inclusion", "passed": False}],
                      started=start), out)
        return VALIDATION_ERROR
    results = {"pairs": _named_pairs(T), "pair_count": T.pair_count(),
               "saturated": is_saturated(T), "system": serialize.system_to_json(T)}
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_ts_check(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    pairs = parse_pairs(L, ns.pairs)
    violations = validate(L, pairs)
    results = {"valid": not violations,
               "violations": [v.describe(L) for v in violations]}
    if not violations:
        T = TransferSystem.from_pairs(L, pairs)
        results["saturated"] = is_saturated(T)
    checks = [{"claim": "relation is a transfer system", "passed": not violations}]
    _emit(_report(argv, G, results, checks, started=start), out)
    return 0 if not violations else VALIDATION_ERROR


def cmd_ts_enumerate(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    systems = enumerate_all(L, bound=ns.bound)
    results = {"count": len(systems),
               "systems": [_named_pairs(T) for T in systems]}
    if ns.orbits:
        orbits, profile = aut_orbits(systems, automorphisms(G))
        results["orbit_count"] = len(orbits)
        results["orbit_profile"] = [list(sc) for sc in profile]
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_image(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    cyclic = G.name.startswith("C") and G.name[1:].isdigit()
    if not G.is_abelian and G.name not in CATALOG_GROUPS:
        raise UsageError(f"no realizability data for {G.name}; supported: abelian "
                         "groups (steiner), cyclic groups (linisom), and "
                         + ", ".join(CATALOG_GROUPS))
    if ns.which == "steiner":
        systems = steiner_image(G.name if G.name in CATALOG_GROUPS and not G.is_abelian
                                else L)
    elif cyclic:
        systems = linisom_image_cyclic(G.order)
    elif G.name in CATALOG_GROUPS:
        systems = linisom_image_fixture(G.name)
    else:
        raise UsageError(f"no isometries-map data for {G.name}; "
                         "supported: cyclic groups and " + ", ".join(CATALOG_GROUPS))
    universes = None
    if ns.which == "linisom" and G.name in CATALOG_GROUPS and not cyclic:
        universes = len(linisom_fixture(G.name))
    elif ns.which == "linisom" and cyclic:
        universes = 1 << (G.order // 2)
    results = {"map": ns.which, "count": len(systems),
               "systems": [_named_pairs(T) for T in systems]}
    if universes is not None:
        results["universe_count"] = universes
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_realize(ns, argv, out) -> int:
    start = time.perf_counter()
    if ns.case == "cpn":
        n = ns.p ** ns.n
    else:
        n = ns.p * ns.q
    G = make_group({"kind": "cyclic", "n": n})
    L = subgroup_lattice(G)
    pairs = parse_pairs(L, ns.pairs)
    T = generate(L, pairs)
    if not is_saturated(T):
        _emit(_report(argv, G, {"error": "system is not saturated"},
                      [{"claim": "input system is saturated", "passed": False}],
                      started=start), out)
        return VALIDATION_ERROR
    if ns.case == "cpn":
        I = realize_saturated_cpn(ns.p, ns.n, T)
        results = {"index_set": I.sorted(), "modulus": I.modulus}
    else:
        verdict = realize_saturated_cpq(ns.p, ns.q, T)
        if isinstance(verdict, NotRealizable):
            results = {"realizable": False, "tag": verdict.tag, "reason": verdict.reason}
        else:
            results = {"realizable": True, "index_set": verdict.sorted(),
                       "modulus": verdict.modulus}
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_minimal_universe(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    try:
        k = L.resolve_name(ns.sub)
        h = L.resolve_name(ns.sup)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    sets = minimal_steiner_universe(L, k, h)
    results = {"transfer": [L.names[k], L.names[h]],
               "minimal_kernel_sets": [[L.names[s] for s in combo] for combo in sets]}
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_chain(ns, argv, out) -> int:
    start = time.perf_counter()
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    chain = maximal_chain(L)
    results = {"length": len(chain),
               "pair_orbit_count": len(L.pair_orbits),
               "layer_choices": [L.names[s] for s in chain.layer_choices],
               "systems": [_named_pairs(T) for T in chain.systems],
               "chain": serialize.chain_to_json(chain)}
    _emit(_report(argv, G, results, started=start), out)
    return 0


def cmd_verify_paper(ns, argv, out) -> int:
    start = time.perf_counter()
    lines = []
    ok = acceptance.run_all(report=lambda line: (lines.append(line), print(line, file=out)))
    checks = [{"claim": f"criterion {num} ({name})", "passed": line.startswith("PASS")}
              for (num, name, _), line in zip(acceptance.CRITERIA, lines)]
    if ns.json:
        _emit(_report(argv, results={"passed": ok}, checks=checks, started=start), out)
    return 0 if ok else VALIDATION_ERROR


def cmd_export(ns, argv, out) -> int:
    G = parse_group(ns.group)
    L = subgroup_lattice(G)
    if ns.what == "chain":
        chain = maximal_chain(L)
        if ns.format == "json":
            text = serialize.dumps(serialize.chain_to_json(chain))
        else:
            try:
                full = enumerate_all(L)
            except SearchBoundExceeded:
                full = None
            text = serialize.dot_chain(chain, full)
    else:
        systems = enumerate_all(L)
        if ns.format == "json":
            text = serialize.dumps({
                "schema_version": serialize.SCHEMA_VERSION,
                "group": group_spec(G),
                "count": len(systems),
                "systems": [serialize.system_to_json(T)["pairs"] for T in systems],
            })
        else:
            text = serialize.dot_poset(systems, graph_name=f"Tr_{G.name}")
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trlat",
        description="Transfer systems on finite groups: generate, enumerate, "
                    "check realizability, export diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group", help="group-level queries")
    gsub = group.add_subparsers(dest="subcommand", required=True)
    info = gsub.add_parser("info", help="subgroup lattice summary")
    info.add_argument("--group", required=True)
    info.set_defaults(fn=cmd_group_info)

    ts = sub.add_parser("ts", help="transfer-system operations")
    tsub = ts.add_subparsers(dest="subcommand", required=True)
    gen = tsub.add_parser("generate", help="close a relation into a transfer system")
    gen.add_argument("--group", required=True)
    gen.add_argument("--pairs", default="")
    gen.set_defaults(fn=cmd_ts_generate)
    chk = tsub.add_parser("check", help="validate a pair set against the axioms")
    chk.add_argument("--group", required=True)
    chk.add_argument("--pairs", default="")
    chk.set_defaults(fn=cmd_ts_check)
    enum = tsub.add_parser("enumerate", help="list every transfer system")
    enum.add_argument("--group", required=True)
    enum.add_argument("--orbits", action="store_true")
    enum.add_argument("--bound", type=int, default=None)
    enum.set_defaults(fn=cmd_ts_enumerate)

    image = sub.add_parser("image", help="realizable transfer systems")
    image.add_argument("which", choices=["steiner", "linisom"])
    image.add_argument("--group", required=True)
    image.set_defaults(fn=cmd_image)

    realize = sub.add_parser("realize", help="find a realizing universe index set")
    rsub = realize.add_subparsers(dest="case", required=True)
    cpn = rsub.add_parser("cpn", help="prime-power cyclic groups")
    cpn.add_argument("--p", type=int, required=True)
    cpn.add_argument("--n", type=int, required=True)
    cpn.add_argument("--pairs", default="")
    cpn.set_defaults(fn=cmd_realize, case="cpn")
    cpq = rsub.add_parser("cpq", help="order-pq cyclic groups")
    cpq.add_argument("--p", type=int, required=True)
    cpq.add_argument("--q", type=int, required=True)
    cpq.add_argument("--pairs", default="")
    cpq.set_defaults(fn=cmd_realize, case="cpq")

    mu = sub.add_parser("minimal-universe", help="minimal kernel sets admitting a transfer")
    mu.add_argument("--group", required=True)
    mu.add_argument("--sub", required=True, help="source subgroup name")
    mu.add_argument("--sup", required=True, help="target subgroup name")
    mu.set_defaults(fn=cmd_minimal_universe)

    chain = sub.add_parser("chain", help="maximal chain in Tr(G)")
    chain.add_argument("--group", required=True)
    chain.set_defaults(fn=cmd_chain)

    verify = sub.add_parser("verify-paper", help="run the acceptance suite")
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(fn=cmd_verify_paper)

    export = sub.add_parser("export", help="write DOT or JSON artifacts")
    export.add_argument("--what", choices=["tr", "chain"], default="tr")
    export.add_argument("--format", choices=["dot", "json"], required=True)
    export.add_argument("--group", required=True)
    export.add_argument("--out", default=None)
    export.set_defaults(fn=cmd_export)

    return parser


def run(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return ns.fn(ns, argv, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (SearchBoundExceeded, TransferSystemError, GroupValidationError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR


def main() -> None:
    try:
        sys.exit(run(sys.argv[1:]))
    except BrokenPipeError:
        import os
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        sys.exit(0)
