"""The (2,3)-pebble game for planar generic rigidity.

Every vertex starts with two pebbles.  An edge is accepted when four pebbles
can be gathered on its endpoints; accepting consumes one pebble and orients
the edge away from the vertex that paid.  Pebbles are retrieved by depth-first
search along directed edges, reversing the path that leads to a free pebble;
while searching from one endpoint, the other endpoint is blocked.  Accepted
edges always form a maximally independent subgraph of the edges seen so far,
so a rejected edge never needs to be retried.

Three pebbles always remain (the trivial planar motions).  Exactly three
remaining means the input graph is rigid; any rejection means it is dependent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "PebbleState",
    "PebbleVerdict",
    "new_state",
    "try_edge",
    "independent_after",
    "play",
]

CLASSIFICATIONS = (
    "minimally-rigid",
    "rigid-redundant",
    "flexible-independent",
    "flexible-redundant",
)


class PebbleState:
    """Mutable game state: pebble counts plus the orientation of accepted edges.

    Invariant: pebbles[v] + outdegree(v) == 2 for every vertex, hence the
    total pebble count is 2|V| - |accepted|.
    """

    __slots__ = ("num_vertices", "pebbles", "out", "accepted", "rejected")

    def __init__(self, num_vertices: int):
        if num_vertices < 2:
            raise ValueError("pebble game needs at least 2 vertices")
        self.num_vertices = num_vertices
        self.pebbles = [2] * num_vertices
        self.out: list[list[int]] = [[] for _ in range(num_vertices)]
        self.accepted: list[tuple[int, int]] = []
        self.rejected: list[tuple[int, int]] = []

    def copy(self) -> "PebbleState":
        dup = PebbleState.__new__(PebbleState)
        dup.num_vertices = self.num_vertices
        dup.pebbles = self.pebbles[:]
        dup.out = [adj[:] for adj in self.out]
        dup.accepted = self.accepted[:]
        dup.rejected = self.rejected[:]
        return dup

    def remaining_pebbles(self) -> int:
        return sum(self.pebbles)


def new_state(num_vertices: int) -> PebbleState:
    return PebbleState(num_vertices)


def _find_pebble(state: PebbleState, root: int, blocked: int) -> bool:
    """DFS from `root` along directed edges for a vertex holding a free pebble.

    On success the path is reversed, one pebble moves to `root`, and True is
    returned.  The blocked vertex is neither visited nor robbed of pebbles.
    """
    out = state.out
    parent = {root: root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in out[u]:
            if w in parent or w == blocked:
                continue
            parent[w] = u
            if state.pebbles[w] > 0:
                state.pebbles[w] -= 1
                state.pebbles[root] += 1
                # Reverse the tree path root -> w.
                node = w
                while node != root:
                    prev = parent[node]
                    out[prev].remove(node)
                    out[node].append(prev)
                    node = prev
                return True
            stack.append(w)
    return False


def try_edge(state: PebbleState, u: int, v: int) -> bool:
    """Offer edge (u, v); accept iff four pebbles can be gathered at u and v.

    Accepting consumes one pebble from the lower-index endpoint and directs
    the edge away from it.  A rejected edge leaves the pebble distribution
    valid (searches may have reoriented edges and moved pebbles)."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    if not (0 <= u < state.num_vertices and 0 <= v < state.num_vertices):
        raise ValueError(f"edge ({u}, {v}) out of range")
    pebbles = state.pebbles
    while pebbles[u] + pebbles[v] < 4:
        if pebbles[u] < 2 and _find_pebble(state, u, v):
            continue
        if pebbles[v] < 2 and _find_pebble(state, v, u):
            continue
        state.rejected.append((u, v))
        return False
    payer, other = (u, v) if u < v else (v, u)
    pebbles[payer] -= 1
    state.out[payer].append(other)
    state.accepted.append((u, v))
    return True


def independent_after(state: PebbleState, u: int, v: int) -> bool:
    """What try_edge would report, without mutating the caller's state."""
    return try_edge(state.copy(), u, v)


@dataclass(frozen=True)
class PebbleVerdict:
    """Outcome of a full game: the maximally independent subgraph and counts."""

    num_vertices: int
    accepted: tuple[tuple[int, int], ...]
    rejected: tuple[tuple[int, int], ...]
    remaining_pebbles: int
    classification: str

    @property
    def is_rigid(self) -> bool:
        return self.remaining_pebbles == 3

    @property
    def is_independent(self) -> bool:
        return not self.rejected

    @property
    def degrees_of_freedom(self) -> int:
        """Internal degrees of freedom left after the trivial planar motions."""
        return self.remaining_pebbles - 3


def _classify(remaining: int, any_rejected: bool) -> str:
    if remaining == 3:
        return "rigid-redundant" if any_rejected else "minimally-rigid"
    return "flexible-redundant" if any_rejected else "flexible-independent"


def play(num_vertices: int, edges: Iterable[tuple[int, int]]) -> PebbleVerdict:
    """Run the game over the edges in the given order.

    The accepted set depends on the order; its size (the rank) does not."""
    state = new_state(num_vertices)
    for u, v in edges:
        try_edge(state, u, v)
    return verdict_of(state)


def verdict_of(state: PebbleState) -> PebbleVerdict:
    remaining = state.remaining_pebbles()
    return PebbleVerdict(
        num_vertices=state.num_vertices,
        accepted=tuple(state.accepted),
        rejected=tuple(state.rejected),
        remaining_pebbles=remaining,
        classification=_classify(remaining, bool(state.rejected)),
    )
