"""Independent brute-force oracles.

Reimplemented from scratch on purpose: the only shared vocabulary with
the package is plain numbers, so a solver bug cannot hide behind a shared
helper. Everything here enumerates exhaustively and is only suitable for
desk-scale inputs (<= 8 items).
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations


def set_partitions(items: list):
    """Every partition of items into nonempty blocks (Bell-number many)."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        for index in range(len(partial)):
            yield (
                partial[:index]
                + [[head] + partial[index]]
                + partial[index + 1 :]
            )
        yield [[head]] + partial


def min_block_count(weights: list[Fraction], capacities: list[Fraction]):
    """Minimum number of blocks with every block total within the largest
    capacity; None when some single weight fits nowhere."""
    if not weights:
        return 0
    if not capacities:
        return None
    cap = max(capacities)
    if any(w > cap for w in weights):
        return None
    best = None
    for partition in set_partitions(list(weights)):
        if any(sum(block) > cap for block in partition):
            continue
        if best is None or len(partition) < best:
            best = len(partition)
            if best == 1:
                break
    return best


def _nat(text: str) -> tuple:
    chunks = re.split(r"(\d+)", text)
    return tuple(
        (0, int(c), "") if c.isdigit() else (1, 0, c) for c in chunks if c
    )


def brute_shortest(edges, source: str, target: str):
    """Minimum-length simple path by full DFS enumeration.

    Ties break on the naturally-ordered node sequence. Returns
    (path_tuple, length) or None when target is unreachable.
    """
    adjacency: dict[str, list] = {}
    for a, b, length in edges:
        adjacency.setdefault(a, []).append((b, Fraction(length)))
        adjacency.setdefault(b, []).append((a, Fraction(length)))
    if source not in adjacency or target not in adjacency:
        return None
    if source == target:
        return (source,), Fraction(0)

    best_key = None
    best = None

    def walk(node, seen, path, dist):
        nonlocal best_key, best
        if node == target:
            key = (dist, tuple(_nat(p) for p in path))
            if best_key is None or key < best_key:
                best_key, best = key, (tuple(path), dist)
            return
        for neighbor, length in adjacency[node]:
            if neighbor not in seen:
                seen.add(neighbor)
                path.append(neighbor)
                walk(neighbor, seen, path, dist + length)
                path.pop()
                seen.remove(neighbor)

    walk(source, {source}, [source], Fraction(0))
    return best


def best_visit_length(edges, depot: str, clients: list[str]):
    """Shortest total length over every visiting order of the clients,
    chaining shortest paths depot -> c1 -> c2 ... (open tour)."""
    best = None
    for ordering in permutations(clients):
        position = depot
        total = Fraction(0)
        feasible = True
        for client in ordering:
            hop = brute_shortest(edges, position, client)
            if hop is None:
                feasible = False
                break
            total += hop[1]
            position = client
        if feasible and (best is None or total < best):
            best = total
    return best
