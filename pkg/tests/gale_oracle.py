"""Brute-force Gale diagram oracle, independent of coxforge.gale.

Open half-planes are probed by unit directions at every multiple of
pi/(2k); position i sits at angle pi*i/k, i.e. 2i in those units.
"""


def _in_open_half_plane(i, t, k):
    d = (2 * i - t) % (4 * k)
    return d < k or d > 3 * k


def valid(weights, n):
    size = len(weights)
    k = size // 2
    if sum(weights) != n + 3:
        return False
    for i in range(size):
        if weights[i] == 0 and weights[(i + 1) % size] == 0:
            return False
    for i in range(k):
        if weights[i] == 0 and weights[i + k] == 0:
            return False
    for t in range(4 * k):
        if sum(w for i, w in enumerate(weights) if _in_open_half_plane(i, t, k)) < 2:
            return False
    return True


def opposite_nonzero(weights):
    k = len(weights) // 2
    return [(i, i + k) for i in range(k) if weights[i] and weights[i + k]]


def dihedral_images(weights):
    size = len(weights)
    out = []
    for s in range(size):
        rot = tuple(weights[(i + s) % size] for i in range(size))
        out.append(rot)
        out.append(tuple(reversed(rot)))
    return out


def equivalent(a, b):
    return len(a) == len(b) and any(img == tuple(b) for img in dihedral_images(a))


def brute_force(n, opposite_pairs=1):
    reps = []
    for k in range(2, n + 4):
        for w in _bounded(2 * k, n + 3):
            if not valid(w, n):
                continue
            pairs = opposite_nonzero(w)
            if len(pairs) != opposite_pairs:
                continue
            if any(w[i] != 1 or w[j] != 1 for i, j in pairs):
                continue
            if not any(equivalent(w, r) for r in reps):
                reps.append(w)
    return reps


def _bounded(parts, total):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _bounded(parts - 1, total - first):
            yield (first,) + rest
