"""Path algebra over the dependency graph: strengths, signs, influence.

A path's strength is the minimum edge strength along it (weakest link); its
quality is the sign product of its edges.  For every ordered pair the
strongest positive and strongest negative simple path are aggregated into the
influence matrix ``I = rho_pos - rho_neg``.

Canonical semantics use simple paths (no repeated node), which keeps the
per-sign suprema well-defined and finitely enumerable.  :func:`walk_closure`
implements the alternative walk semantics (repeats allowed) as a max-min
fixpoint; it dominates the simple-path matrices entrywise and can differ on
graphs where a cycle flips a path's sign.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DependencyPath, Quality, Vdg

Matrix = tuple[tuple[float, ...], ...]


class InvalidPathError(ValueError):
    """A path step with no explicit dependency between consecutive nodes."""


@dataclass(frozen=True)
class InfluenceMatrix:
    """Per-pair strongest positive/negative strengths and their difference.

    ``influence[i][j]`` is the net effect of selecting element j on the value
    of element i, in [-1, 1]; diagonals are zero (no self-influence).
    """

    rho_pos: Matrix
    rho_neg: Matrix
    influence: Matrix

    @property
    def n(self) -> int:
        return len(self.influence)


def _check_nodes(vdg: Vdg, path: DependencyPath) -> None:
    for node in path.nodes:
        if not (0 <= node < vdg.n):
            raise InvalidPathError(f"node {node} outside graph range 0..{vdg.n - 1}")


def path_strength(vdg: Vdg, path: DependencyPath) -> float:
    """Strength of the weakest edge along the path."""
    _check_nodes(vdg, path)
    strength = 2.0
    for a, b in zip(path.nodes, path.nodes[1:]):
        edge = vdg.rho[a][b]
        if edge == 0.0:
            raise InvalidPathError(f"no explicit dependency from {a} to {b}")
        if edge < strength:
            strength = edge
    return strength


def path_quality(vdg: Vdg, path: DependencyPath) -> Quality:
    """Sign product of the edges along the path: odd negatives flip the sign."""
    _check_nodes(vdg, path)
    negatives = 0
    for a, b in zip(path.nodes, path.nodes[1:]):
        if vdg.rho[a][b] == 0.0:
            raise InvalidPathError(f"no explicit dependency from {a} to {b}")
        if vdg.sigma[a][b] is Quality.NEGATIVE:
            negatives += 1
    return Quality.NEGATIVE if negatives % 2 else Quality.POSITIVE


def _ascending_adjacency(vdg: Vdg) -> list[list[int]]:
    return [
        [j for j in range(vdg.n) if vdg.rho[i][j] != 0.0] for i in range(vdg.n)
    ]


def enumerate_simple_paths(vdg: Vdg, i: int, j: int) -> list[DependencyPath]:
    """All simple paths from i to j, depth-first with ascending neighbors."""
    if not (0 <= i < vdg.n and 0 <= j < vdg.n):
        raise ValueError(f"pair ({i}, {j}) outside graph range 0..{vdg.n - 1}")
    if i == j:
        raise ValueError("path endpoints must differ")
    adjacency = _ascending_adjacency(vdg)
    out: list[DependencyPath] = []
    trail = [i]
    visited = {i}

    def descend(u: int) -> None:
        for v in adjacency[u]:
            if v == j:
                out.append(DependencyPath(tuple(trail) + (j,)))
                continue
            if v in visited:
                continue
            visited.add(v)
            trail.append(v)
            descend(v)
            trail.pop()
            visited.remove(v)

    descend(i)
    return out


def _strength_sorted_adjacency(vdg: Vdg) -> list[list[tuple[int, float, int]]]:
    # Strong edges first so per-target bests rise quickly and prune more.
    adjacency: list[list[tuple[int, float, int]]] = []
    for i in range(vdg.n):
        row = [
            (j, vdg.rho[i][j], 1 if vdg.sigma[i][j] is Quality.NEGATIVE else 0)
            for j in range(vdg.n)
            if vdg.rho[i][j] != 0.0
        ]
        row.sort(key=lambda edge: (-edge[1], edge[0]))
        adjacency.append(row)
    return adjacency


def _parity_reachability(vdg: Vdg) -> tuple[list[int], list[int]]:
    """Bitmasks of nodes reachable from each start with even / odd sign parity."""
    n = vdg.n
    edges = [
        [(j, 1 if vdg.sigma[i][j] is Quality.NEGATIVE else 0) for j in range(n) if vdg.rho[i][j] != 0.0]
        for i in range(n)
    ]
    even = [0] * n
    odd = [0] * n
    for start in range(n):
        seen = [[False, False] for _ in range(n)]
        seen[start][0] = True
        stack = [(start, 0)]
        while stack:
            u, parity = stack.pop()
            for v, neg in edges[u]:
                q = parity ^ neg
                if not seen[v][q]:
                    seen[v][q] = True
                    stack.append((v, q))
        even[start] = sum(1 << t for t in range(n) if seen[t][0])
        odd[start] = sum(1 << t for t in range(n) if seen[t][1])
    return even, odd


def _signed_row(
    vdg: Vdg,
    src: int,
    adjacency: list[list[tuple[int, float, int]]],
    reach_even: list[int],
    reach_odd: list[int],
) -> tuple[list[float], list[float]]:
    """Strongest positive/negative simple-path strengths from ``src`` to all nodes.

    Depth-first over simple paths; a branch is abandoned once its running
    minimum cannot beat the current best for any still-reachable target and
    achievable sign, which never changes the resulting maxima.
    """
    n = vdg.n
    best = [[0.0, 0.0] for _ in range(n)]

    def improvable(v: int, strength: float, parity: int, visited: int) -> bool:
        mask = reach_even[v] & ~visited
        while mask:
            low = mask & -mask
            if best[low.bit_length() - 1][parity] < strength:
                return True
            mask ^= low
        mask = reach_odd[v] & ~visited
        flipped = parity ^ 1
        while mask:
            low = mask & -mask
            if best[low.bit_length() - 1][flipped] < strength:
                return True
            mask ^= low
        return False

    def descend(u: int, running: float, parity: int, visited: int) -> None:
        for v, strength, neg in adjacency[u]:
            bit = 1 << v
            if visited & bit:
                continue
            m = running if running < strength else strength
            q = parity ^ neg
            row = best[v]
            if m > row[q]:
                row[q] = m
            extended = visited | bit
            if improvable(v, m, q, extended):
                descend(v, m, q, extended)

    descend(src, 2.0, 0, 1 << src)
    return [row[0] for row in best], [row[1] for row in best]


def signed_strengths(vdg: Vdg, i: int, j: int) -> tuple[float, float]:
    """Strongest positive and strongest negative simple-path strength for (i, j).

    Pairs without a path of a given sign get 0 for that sign.
    """
    if not (0 <= i < vdg.n and 0 <= j < vdg.n):
        raise ValueError(f"pair ({i}, {j}) outside graph range 0..{vdg.n - 1}")
    if i == j:
        raise ValueError("pair endpoints must differ")
    adjacency = _strength_sorted_adjacency(vdg)
    reach_even, reach_odd = _parity_reachability(vdg)
    pos, neg = _signed_row(vdg, i, adjacency, reach_even, reach_odd)
    return pos[j], neg[j]


def influence_matrix(vdg: Vdg) -> InfluenceMatrix:
    """Aggregate signed strengths for all ordered pairs; diagonal is zero."""
    adjacency = _strength_sorted_adjacency(vdg)
    reach_even, reach_odd = _parity_reachability(vdg)
    rho_pos = []
    rho_neg = []
    influence = []
    for i in range(vdg.n):
        pos, neg = _signed_row(vdg, i, adjacency, reach_even, reach_odd)
        pos[i] = 0.0
        neg[i] = 0.0
        rho_pos.append(tuple(pos))
        rho_neg.append(tuple(neg))
        influence.append(tuple(p - m for p, m in zip(pos, neg)))
    return InfluenceMatrix(
        rho_pos=tuple(rho_pos), rho_neg=tuple(rho_neg), influence=tuple(influence)
    )


def walk_closure(vdg: Vdg) -> tuple[Matrix, Matrix]:
    """Least fixpoint of the signed max-min composition over walks.

    Starting from the explicit edges, repeatedly combines two legs through
    every intermediate node (like signs compose to positive, unlike to
    negative) until no entry changes.  Entries are monotone nondecreasing and
    drawn from the finite set of edge strengths, so the iteration terminates.
    Diagonal entries pick up closed walks.
    """
    n = vdg.n
    pos = [[0.0] * n for _ in range(n)]
    neg = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            strength = vdg.rho[i][j]
            if strength == 0.0:
                continue
            if vdg.sigma[i][j] is Quality.NEGATIVE:
                neg[i][j] = strength
            else:
                pos[i][j] = strength
    while True:
        changed = False
        next_pos = [row[:] for row in pos]
        next_neg = [row[:] for row in neg]
        for i in range(n):
            pos_i = pos[i]
            neg_i = neg[i]
            for j in range(n):
                best_pos = pos_i[j]
                best_neg = neg_i[j]
                for k in range(n):
                    first_pos = pos_i[k]
                    first_neg = neg_i[k]
                    if first_pos:
                        second = pos[k][j]
                        if second:
                            leg = first_pos if first_pos < second else second
                            if leg > best_pos:
                                best_pos = leg
                        second = neg[k][j]
                        if second:
                            leg = first_pos if first_pos < second else second
                            if leg > best_neg:
                                best_neg = leg
                    if first_neg:
                        second = neg[k][j]
                        if second:
                            leg = first_neg if first_neg < second else second
                            if leg > best_pos:
                                best_pos = leg
                        second = pos[k][j]
                        if second:
                            leg = first_neg if first_neg < second else second
                            if leg > best_neg:
                                best_neg = leg
                if best_pos != pos_i[j]:
                    next_pos[i][j] = best_pos
                    changed = True
                if best_neg != neg_i[j]:
                    next_neg[i][j] = best_neg
                    changed = True
        pos = next_pos
        neg = next_neg
        if not changed:
            break
    return tuple(tuple(row) for row in pos), tuple(tuple(row) for row in neg)
