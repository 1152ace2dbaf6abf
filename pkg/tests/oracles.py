"""Slow reference implementations written directly from the definitions.

Nothing here imports the engine's mask arithmetic; they work on Python sets.
"""

from itertools import combinations


def lessdot(a, b):
    a, b = set(a), set(b)
    if not b - a:
        return False
    return all(i < j for i in a - b for j in b - a)


def splits(a, b):
    a, b = set(a), set(b)
    d_ab, d_ba = a - b, b - a
    if not d_ab or not d_ba:
        return False
    items = sorted(d_ba)
    # every ordered split of b−a into two nonempty parts
    for r in range(1, len(items)):
        for low in combinations(items, r):
            low = set(low)
            high = d_ba - low
            if lessdot(low, d_ab) and lessdot(d_ab, high):
                return True
    return False


def weakly_separated(a, b):
    a, b = set(a), set(b)
    return (
        a == b
        or lessdot(a, b)
        or lessdot(b, a)
        or (splits(a, b) and len(a) >= len(b))
        or (splits(b, a) and len(b) >= len(a))
    )


def all_subsets(n):
    return [frozenset(c) for r in range(n + 1) for c in combinations(range(1, n + 1), r)]


def is_ws_collection(sets):
    sets = list(sets)
    return all(weakly_separated(a, b) for a, b in combinations(sets, 2))


def maximal_ws_collections_bruteforce(n, ground=None):
    """Enumerate inclusion-maximal ws-collections by plain backtracking over subsets."""
    universe = [s for s in all_subsets(n) if ground is None or ground(s)]
    found = []

    def extend(i, chosen):
        if i == len(universe):
            if all(
                s in chosen or not all(weakly_separated(s, c) for c in chosen)
                for s in universe
            ):
                found.append(frozenset(chosen))
            return
        s = universe[i]
        if all(weakly_separated(s, c) for c in chosen):
            extend(i + 1, chosen | {s})
        extend(i + 1, chosen)

    extend(0, frozenset())
    return set(found)


def inversions(images):
    n = len(images)
    return {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
            if images[j - 1] < images[i - 1]}


def ideal(images, k):
    return frozenset(i for i in range(1, len(images) + 1) if images[i - 1] <= k)
