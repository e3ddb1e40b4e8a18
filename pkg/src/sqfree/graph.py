"""Letter-transition multigraph over the state set.

Each vertex is a state id; for each alphabet letter the vertex either blocks
(the letter would close a short square) or moves to a successor state. Arcs
aggregate letters with equal targets into multiplicities, but the per-letter
map is kept: two letters reaching the same target still contribute
separately to list sums.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InputError
from .lambda_set import LambdaSet, step


@dataclass(frozen=True)
class TransitionGraph:
    p: int
    alphabet_size: int
    letter_map: tuple[tuple[int | None, ...], ...]  # [vertex][letter] -> target or None
    arcs: tuple[tuple[tuple[int, int], ...], ...]  # [vertex] -> ((target, multiplicity), ...)
    lambda_digest: str

    @property
    def vertex_count(self) -> int:
        return len(self.letter_map)


def build_graph(lam: LambdaSet) -> TransitionGraph:
    letter_map = []
    arcs = []
    for v in range(len(lam)):
        row = tuple(step(v, a, lam) for a in range(lam.alphabet_size))
        letter_map.append(row)
        mult = Counter(t for t in row if t is not None)
        arcs.append(tuple(sorted(mult.items())))
    return TransitionGraph(
        p=lam.p,
        alphabet_size=lam.alphabet_size,
        letter_map=tuple(letter_map),
        arcs=tuple(arcs),
        lambda_digest=lam.digest,
    )


def min_list_sum(g: TransitionGraph, v: int, weights, list_size: int) -> int:
    """Minimum over letter lists of the summed successor weights.

    A blocked letter contributes 0 and is a candidate like any other, so the
    minimum equals the sum of the ``list_size`` smallest per-letter
    contributions.
    """
    if not 1 <= list_size <= g.alphabet_size:
        raise InputError(
            f"list size {list_size} outside [1, {g.alphabet_size}]"
        )
    contribs = sorted(
        0 if t is None else weights[t] for t in g.letter_map[v]
    )
    return sum(contribs[:list_size])


def graph_file_text(g: TransitionGraph) -> str:
    lines = ["graph v1", f"vertices={g.vertex_count} alphabet={g.alphabet_size}"]
    for v, row in enumerate(g.letter_map):
        targets = " ".join("x" if t is None else str(t) for t in row)
        lines.append(f"{v}: {targets}")
    return "\n".join(lines) + "\n"


def write_graph_file(g: TransitionGraph, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(graph_file_text(g))


def read_graph_file(path: str, p: int = 0) -> TransitionGraph:
    """Parse a graph file. The source digest is not part of the format, so
    the result carries an empty one; rebuild from the lambda file when the
    certificate tie-in matters."""
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2 or lines[0] != "graph v1":
        raise InputError(f"{path}: not a graph v1 file")
    try:
        fields = dict(kv.split("=", 1) for kv in lines[1].split())
        vertices = int(fields["vertices"])
        alphabet_size = int(fields["alphabet"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"{path}: bad header: {lines[1]!r}") from exc
    if len(lines) != 2 + vertices:
        raise InputError(f"{path}: expected {vertices} vertex lines")
    letter_map = []
    arcs = []
    for v, line in enumerate(lines[2:]):
        head, _, rest = line.partition(":")
        if head.strip() != str(v):
            raise InputError(f"{path}: vertex line {v} mislabelled: {line!r}")
        row = tuple(
            None if tok == "x" else int(tok) for tok in rest.split()
        )
        if len(row) != alphabet_size:
            raise InputError(f"{path}: vertex {v} has {len(row)} targets")
        for t in row:
            if t is not None and not 0 <= t < vertices:
                raise InputError(f"{path}: vertex {v} target {t} out of range")
        letter_map.append(row)
        mult = Counter(t for t in row if t is not None)
        arcs.append(tuple(sorted(mult.items())))
    return TransitionGraph(
        p=p,
        alphabet_size=alphabet_size,
        letter_map=tuple(letter_map),
        arcs=tuple(arcs),
        lambda_digest="",
    )
