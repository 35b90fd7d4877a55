"""Finite Büchi games: data model, validation and JSON (de)serialization.

Game file layout (field names are fixed)::

    {"positions": [{"id": "v", "owner": 0, "target": false}, ...],
     "edges":     [{"from": "v", "to": "w", "label": "b", "cost": 2}, ...]}

``label`` and ``cost`` are optional.  Unlabeled edges are labeled
``"u->v"``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from semibuchi.semirings import INF, to_number


class GameError(ValueError):
    """Invalid game document; ``code`` is machine readable."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str
    cost: Fraction | float | None = None

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)

    def __str__(self):
        return self.label


def default_label(source: str, target: str) -> str:
    return f"{source}->{target}"


class Literal(NamedTuple):
    """An instantiated literal over the signature {E, F, V0, V1}."""

    relation: str
    args: tuple
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.relation, self.args, not self.positive)

    def __str__(self):
        return ("" if self.positive else "¬") + self.relation + " " + " ".join(self.args)


def E(u: str, v: str, positive: bool = True) -> Literal:
    return Literal("E", (u, v), positive)


def F(v: str, positive: bool = True) -> Literal:
    return Literal("F", (v,), positive)


def V0(v: str, positive: bool = True) -> Literal:
    return Literal("V0", (v,), positive)


def V1(v: str, positive: bool = True) -> Literal:
    return Literal("V1", (v,), positive)


@dataclass(frozen=True)
class BuchiGame:
    """G = (V, V0, V1, E, F); positions keep their declaration order."""

    positions: tuple[str, ...]
    owner: dict[str, int]
    targets: frozenset[str]
    edges: tuple[Edge, ...]
    _succ: dict = field(init=False, repr=False, compare=False)
    _by_pair: dict = field(init=False, repr=False, compare=False)
    _by_label: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ: dict[str, list[Edge]] = {v: [] for v in self.positions}
        by_pair, by_label = {}, {}
        for e in self.edges:
            succ.setdefault(e.source, []).append(e)
            by_pair[e.pair] = e
            by_label[e.label] = e
        object.__setattr__(self, "_succ", {v: tuple(es) for v, es in succ.items()})
        object.__setattr__(self, "_by_pair", by_pair)
        object.__setattr__(self, "_by_label", by_label)

    @classmethod
    def build(cls, owners: dict[str, int], edges: Iterable, targets: Iterable[str] = (),
              check_total: bool = True) -> "BuchiGame":
        """Convenience constructor.

        ``edges`` holds ``(u, v)``, ``(u, v, label)`` or ``(u, v, label, cost)``
        tuples or :class:`Edge` objects; a ``None`` label gets the default.
        """
        out = []
        for item in edges:
            if isinstance(item, Edge):
                out.append(item)
                continue
            u, v, *rest = item
            label = rest[0] if rest and rest[0] is not None else default_label(u, v)
            cost = rest[1] if len(rest) > 1 else None
            out.append(Edge(u, v, label, None if cost is None else to_number(cost)))
        game = cls(tuple(owners), dict(owners), frozenset(targets), tuple(out))
        game.validate(check_total=check_total)
        return game

    def validate(self, check_total: bool = True) -> None:
        seen = set()
        for v in self.positions:
            if v in seen:
                raise GameError("duplicate-position", f"position {v!r} declared twice")
            seen.add(v)
            if self.owner.get(v) not in (0, 1):
                raise GameError("malformed-owner", f"position {v!r} has owner {self.owner.get(v)!r}; expected 0 or 1")
        for t in self.targets:
            if t not in seen:
                raise GameError("unknown-position", f"target {t!r} is not a position")
        pairs, labels = set(), set()
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in seen:
                    raise GameError("unknown-endpoint", f"edge {e.label!r} ({e.source}->{e.target}) uses unknown position {end!r}")
            if e.pair in pairs:
                raise GameError("duplicate-edge", f"edge {e.source}->{e.target} declared twice")
            if e.label in labels:
                raise GameError("duplicate-label", f"label {e.label!r} used for more than one edge")
            pairs.add(e.pair)
            labels.add(e.label)
            if e.cost is not None and e.cost < 0:
                raise GameError("negative-cost", f"edge {e.label!r} has negative cost {e.cost}")
        if check_total:
            for v in self.positions:
                if not self._succ.get(v):
                    raise GameError("totality", f"position {v!r} has no outgoing edge")

    # structure queries

    def successors(self, v: str) -> tuple[Edge, ...]:
        return self._succ[v]

    def edge(self, u: str, v: str) -> Edge | None:
        return self._by_pair.get((u, v))

    def edge_by_label(self, label: str) -> Edge:
        return self._by_label[label]

    def has_label(self, label: str) -> bool:
        return label in self._by_label

    def has_position(self, v: str) -> bool:
        return v in self.owner

    def is_target(self, v: str) -> bool:
        return v in self.targets

    def holds(self, lit: Literal) -> bool:
        """Boolean truth of an instantiated literal in this game."""
        for a in lit.args:
            if a not in self.owner:
                raise GameError("unknown-position", f"literal {lit} mentions unknown position {a!r}")
        rel = lit.relation
        if rel == "E":
            truth = tuple(lit.args) in self._by_pair
        elif rel == "F":
            truth = lit.args[0] in self.targets
        elif rel == "V0":
            truth = self.owner[lit.args[0]] == 0
        elif rel == "V1":
            truth = self.owner[lit.args[0]] == 1
        else:
            raise ValueError(f"unknown relation {rel!r}")
        return truth if lit.positive else not truth

    # derived games

    def replace(self, edges: Iterable[Edge] | None = None, targets: Iterable[str] | None = None,
                check_total: bool = False) -> "BuchiGame":
        game = BuchiGame(self.positions, dict(self.owner),
                         self.targets if targets is None else frozenset(targets),
                         self.edges if edges is None else tuple(edges))
        game.validate(check_total=check_total)
        return game

    def restricted(self, labels: Iterable[str]) -> "BuchiGame":
        """Subgame keeping only the edges with the given labels (may have sinks)."""
        keep = set(labels)
        return self.replace(edges=[e for e in self.edges if e.label in keep])


def literal_value_boolean(game: BuchiGame, lit: Literal) -> int:
    return int(game.holds(lit))


def parse_game(document) -> BuchiGame:
    """Read a game from JSON text, a file-like object or an already-decoded dict."""
    if hasattr(document, "read"):
        document = document.read()
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GameError("malformed-document", f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise GameError("malformed-document", "top level must be an object")
    positions = document.get("positions")
    edges = document.get("edges")
    if not isinstance(positions, list) or not isinstance(edges, list):
        raise GameError("malformed-document", "fields 'positions' and 'edges' must be lists")

    ids, owner, targets = [], {}, []
    for i, p in enumerate(positions):
        if not isinstance(p, dict) or "id" not in p:
            raise GameError("malformed-document", f"positions[{i}] needs an 'id'")
        pid = p["id"]
        if not isinstance(pid, str):
            raise GameError("malformed-document", f"positions[{i}].id must be a string")
        if pid in owner:
            raise GameError("duplicate-position", f"position {pid!r} declared twice")
        own = p.get("owner")
        if isinstance(own, bool) or own not in (0, 1):
            raise GameError("malformed-owner", f"position {pid!r} has owner {own!r}; expected 0 or 1")
        tgt = p.get("target", False)
        if not isinstance(tgt, bool):
            raise GameError("malformed-document", f"position {pid!r}: 'target' must be a boolean")
        ids.append(pid)
        owner[pid] = own
        if tgt:
            targets.append(pid)

    out = []
    for i, e in enumerate(edges):
        if not isinstance(e, dict) or "from" not in e or "to" not in e:
            raise GameError("malformed-document", f"edges[{i}] needs 'from' and 'to'")
        u, v = e["from"], e["to"]
        label = e.get("label")
        if label is None:
            label = default_label(u, v)
        elif not isinstance(label, str):
            raise GameError("malformed-document", f"edges[{i}].label must be a string")
        cost = e.get("cost")
        if cost is not None:
            try:
                cost = to_number(cost)
            except (TypeError, ValueError):
                raise GameError("malformed-document", f"edge {label!r} has unreadable cost {e['cost']!r}") from None
            if cost < 0:
                raise GameError("negative-cost", f"edge {label!r} has negative cost {e['cost']!r}")
        out.append(Edge(u, v, label, cost))

    game = BuchiGame(tuple(ids), owner, frozenset(targets), tuple(out))
    game.validate(check_total=True)
    return game


def load_game(path) -> BuchiGame:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_game(fh.read())
    except OSError as exc:
        raise GameError("unreadable-file", str(exc)) from None


def _cost_json(cost):
    if cost is None:
        return None
    if cost == INF:
        return float("inf")
    if isinstance(cost, Fraction) and cost.denominator == 1:
        return int(cost)
    return float(cost)


def game_to_dict(game: BuchiGame) -> dict:
    """Canonical document: positions and edges sorted lexicographically."""
    positions = [{"id": v, "owner": game.owner[v], "target": v in game.targets}
                 for v in sorted(game.positions)]
    edges = []
    for e in sorted(game.edges, key=lambda e: (e.source, e.target)):
        item = {"from": e.source, "to": e.target}
        if e.label != default_label(e.source, e.target):
            item["label"] = e.label
        if e.cost is not None:
            item["cost"] = _cost_json(e.cost)
        edges.append(item)
    return {"positions": positions, "edges": edges}


def dump_game(game: BuchiGame) -> str:
    return json.dumps(game_to_dict(game), indent=2, ensure_ascii=False) + "\n"
