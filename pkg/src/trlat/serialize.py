"""JSON formats (with schemas) and DOT export for lattices of transfer systems."""

from __future__ import annotations

import json
import jsonschema
from .groups import FiniteGroup, group_spec, make_group
from .lattice import SubgroupLattice, subgroup_lattice
from .transfer import TransferSystem

SCHEMA_VERSION = 1

GROUP_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "kind"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"enum": ["cyclic", "abelian", "builtin", "table"]},
        "n": {"type": "integer", "minimum": 1},
        "factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "name": {"type": "string"},
        "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "names": {"type": "array", "items": {"type": "string"}},
    },
}

SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "group", "subgroup_count", "pairs"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "group": {"type": "object"},
        "subgroup_count": {"type": "integer", "minimum": 1},
        "pairs": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0},
                      "minItems": 2, "maxItems": 2},
        },
    },
}

LATTICE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "group", "subgroups", "names", "normal", "cocyclic"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "group": {"type": "object"},
        "subgroups": {"type": "array",
                      "items": {"type": "array", "items": {"type": "integer"}}},
        "names": {"type": "array", "items": {"type": "string"}},
        "normal": {"type": "array", "items": {"type": "boolean"}},
        "cocyclic": {"type": "array", "items": {"type": "boolean"}},
        "class_of": {"type": "array", "items": {"type": "integer"}},
        "pair_orbits": {"type": "array"},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command", "results", "checks"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "array", "items": {"type": "string"}},
        "group": {"type": "object"},
        "results": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim", "passed"],
                "properties": {"claim": {"type": "string"}, "passed": {"type": "boolean"},
                               "detail": {"type": "string"}},
            },
        },
        "timing_seconds": {"type": "number"},
    },
}

_NAME_PAIRS = {"type": "array",
               "items": {"type": "array", "items": {"type": "string"},
                         "minItems": 2, "maxItems": 2}}

FIXTURES_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "groups"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "groups": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["catalog", "linisom", "unrealized_orbit_reps"],
                "properties": {
                    "catalog": {
                        "anyOf": [
                            {"const": "derived"},
                            {"type": "array",
                             "items": {"type": "object",
                                       "required": ["rep", "dim", "orb"],
                                       "properties": {"rep": {"type": "string"},
                                                      "dim": {"type": "integer"},
                                                      "orb": _NAME_PAIRS}}},
                        ]
                    },
                    "linisom": {"type": "array",
                                "items": {"type": "object",
                                          "required": ["universe", "pairs"],
                                          "properties": {
                                              "universe": {"type": "array",
                                                           "items": {"type": "string"}},
                                              "pairs": _NAME_PAIRS}}},
                    "unrealized_orbit_reps": {"type": "array", "items": _NAME_PAIRS},
                },
            },
        },
    },
}

CHAIN_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "group", "layer_choices", "systems"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "group": {"type": "object"},
        "layer_choices": {"type": "array", "items": {"type": "integer"}},
        "orbit_order": {"type": "array"},
        "systems": {"type": "array"},
    },
}


def validate_document(doc: dict, schema: dict) -> None:
    jsonschema.validate(doc, schema)


def group_to_json(G: FiniteGroup) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, **group_spec(G)}
    validate_document(doc, GROUP_SCHEMA)
    return doc


def group_from_json(doc: dict) -> FiniteGroup:
    validate_document(doc, GROUP_SCHEMA)
    spec = {k: v for k, v in doc.items() if k != "schema_version"}
    return make_group(spec)


def lattice_to_json(L: SubgroupLattice) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "group": group_spec(L.group),
        "subgroups": [sorted(s) for s in L.subgroups],
        "names": list(L.names),
        "normal": list(L.normal),
        "cocyclic": list(L.cocyclic),
        "class_of": list(L.class_of),
        "pair_orbits": [[list(p) for p in orbit] for orbit in L.pair_orbits],
    }
    validate_document(doc, LATTICE_SCHEMA)
    return doc


def system_to_json(T: TransferSystem) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "group": group_spec(T.lattice.group),
        "subgroup_count": T.lattice.n,
        "pairs": [[k, h] for k, h in T.pairs()],
    }
    validate_document(doc, SYSTEM_SCHEMA)
    return doc


def system_from_json(doc: dict) -> TransferSystem:
    validate_document(doc, SYSTEM_SCHEMA)
    L = subgroup_lattice(group_from_json({"schema_version": SCHEMA_VERSION, **doc["group"]}))
    if doc["subgroup_count"] != L.n:
        raise ValueError(f"document says {doc['subgroup_count']} subgroups, "
                         f"lattice has {L.n}")
    return TransferSystem.from_pairs(L, [tuple(p) for p in doc["pairs"]])


def chain_to_json(chain) -> dict:
    L = chain.systems[0].lattice
    doc = {
        "schema_version": SCHEMA_VERSION,
        "group": group_spec(L.group),
        "layer_choices": list(chain.layer_choices),
        "orbit_order": [[list(p) for p in orbit] for orbit in chain.orbit_order],
        "systems": [[[k, h] for k, h in T.pairs()] for T in chain.systems],
    }
    validate_document(doc, CHAIN_SCHEMA)
    return doc


# -- DOT export ----------------------------------------------------------------

def cover_relations(systems: list[TransferSystem]) -> list[tuple[int, int]]:
    """Indices (i, j) where systems[i] is covered by systems[j]."""
    below = [[i for i in range(len(systems))
              if i != j and systems[i].refines(systems[j])] for j in range(len(systems))]
    covers = []
    for j, lower in enumerate(below):
        for i in lower:
            if not any(systems[i].refines(systems[m]) and m != i for m in lower):
                covers.append((i, j))
    return covers


def dot_poset(systems: list[TransferSystem], highlight: list[TransferSystem] | None = None,
              graph_name: str = "Tr") -> str:
    """Hasse diagram in DOT: exactly the cover relations, nodes keyed by dedup string.

    Nodes of equal relation size share a rank; a highlight list (e.g. a
    chain) is drawn bold.  No other layout hints are emitted.
    """
    systems = sorted(systems, key=lambda t: t.key)
    marked = {T.key for T in (highlight or [])}
    lines = [f'digraph "{graph_name}" {{', "  rankdir=BT;",
             '  node [shape=box, fontsize=10];']
    by_size: dict[int, list[str]] = {}
    for T in systems:
        size = T.pair_count()
        by_size.setdefault(size, []).append(T.key)
        style = ', style=bold' if T.key in marked else ''
        lines.append(f'  "{T.key}" [label="{size}"{style}];')
    for size in sorted(by_size):
        members = " ".join(f'"{k}";' for k in by_size[size])
        lines.append(f"  {{ rank=same; {members} }}")
    for i, j in sorted(cover_relations(systems),
                       key=lambda ij: (systems[ij[0]].key, systems[ij[1]].key)):
        a, b = systems[i], systems[j]
        bold = " [style=bold]" if a.key in marked and b.key in marked else ""
        lines.append(f'  "{a.key}" -> "{b.key}"{bold};')
    lines.append("}")
    return "\n".join(lines)


def dot_chain(chain, full_lattice: list[TransferSystem] | None = None) -> str:
    """A maximal chain as a path, overlaid on Tr(G) when enumeration is given."""
    if full_lattice is not None:
        return dot_poset(full_lattice, highlight=list(chain.systems), graph_name="TrChain")
    return dot_poset(list(chain.systems), highlight=list(chain.systems),
                     graph_name="Chain")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
