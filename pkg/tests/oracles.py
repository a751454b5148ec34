"""Slow, independent reference implementations used only by the tests."""

import math


def float_turning(vectors, closed):
    """Summed signed turning angle via atan2; callers avoid antiparallel pairs."""
    vs = list(vectors)
    pairs = list(zip(vs, vs[1:]))
    if closed:
        pairs.append((vs[-1], vs[0]))
    total = 0.0
    for u, v in pairs:
        total += math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1])
    return total


def float_winding(vectors, closed=True):
    t = float_turning(vectors, closed) / (2 * math.pi)
    return round(t) if closed else math.trunc(t + math.copysign(1e-9, t))


def has_antiparallel(vectors, closed):
    vs = list(vectors)
    pairs = list(zip(vs, vs[1:])) + ([(vs[-1], vs[0])] if closed else [])
    return any(u[0] * v[1] == u[1] * v[0] and u[0] * v[0] + u[1] * v[1] < 0 for u, v in pairs)


def points_of(word):
    steps = {"a": (1, 0), "A": (-1, 0), "b": (0, 1), "B": (0, -1)}
    x = y = 0
    pts = [(0, 0)]
    for ch in word:
        dx, dy = steps[ch]
        x, y = x + dx, y + dy
        pts.append((x, y))
    return pts


def coincident_pairs(word):
    pts = points_of(word)
    m = len(word)
    return [(s, t) for s in range(m) for t in range(s + 1, m) if pts[s] == pts[t]]


def self_avoiding_loops(max_len):
    """Words of all embedded lattice loops through the origin, by depth-first walk."""
    steps = {"a": (1, 0), "A": (-1, 0), "b": (0, 1), "B": (0, -1)}
    out = []

    def rec(word, pos, seen):
        left = max_len - len(word)
        if abs(pos[0]) + abs(pos[1]) > left:
            return
        for ch, (dx, dy) in steps.items():
            nxt = (pos[0] + dx, pos[1] + dy)
            if nxt == (0, 0) and len(word) + 1 >= 4:
                out.append(word + ch)
            elif nxt not in seen and left > 1:
                seen.add(nxt)
                rec(word + ch, nxt, seen)
                seen.remove(nxt)

    rec("", (0, 0), {(0, 0)})
    return out
