"""Brute-force float oracles used to cross-check the certified solver.

The main oracle samples the coefficient arc densely and classifies lattice
points of the combination dilated by the open unit cube into sure-in,
sure-out and a thin margin band. The sampled minimum distance only upper
bounds the true distance, so points in the margin band are skipped by
callers rather than treated as disagreements.
"""

from fractions import Fraction

import numpy as np

from bmlab.arc import AMB, IN, cover_targets
from bmlab.lattice import Lattice, _combo_bbox, _cube_targets, _depth_for_tol
from bmlab.pcombo import PCombo

OFF = 16
GRID = 2 * OFF  # per-axis key width; coordinates must stay in [-OFF, OFF)


def coeff_grid(w1, w2, p, samples):
    """(t, s) float arrays sampled along the coefficient arc.

    Two passes, each uniform in one coordinate, so the spacing stays fine
    near both endpoints where the mu parameterization degenerates.
    """
    c1 = float(w1) ** (1.0 / float(p))
    c2 = float(w2) ** (1.0 / float(p))
    if p == 1:
        return np.array([float(w1)]), np.array([float(w2)])
    q = float(p) / (float(p) - 1.0)
    u = np.linspace(0.0, 1.0, max(2, samples // 2))
    rest = np.maximum(0.0, 1.0 - u ** q) ** (1.0 / q)
    return (np.concatenate([c1 * u, c1 * rest]),
            np.concatenate([c2 * rest, c2 * u]))


def _decode(keys, n):
    out = set()
    for k in keys:
        z = []
        for _ in range(n):
            z.append(int(k % GRID) - OFF)
            k //= GRID
        out.add(tuple(reversed(z)))
    return out


def _presence(key, mask, minlength):
    if mask is None:
        return np.bincount(key, minlength=minlength) > 0
    if not mask.any():
        return np.zeros(minlength, dtype=bool)
    return np.bincount(key[mask], minlength=minlength) > 0


def membership_classes(k_pts, l_pts, w1, w2, p, samples=10 ** 6, eps=1e-6):
    """Classify integer points of (w1.K +_p w2.L) + (-1, 1)^n.

    Returns (sure_in, margin): sets of integer tuples. sure_in points have
    a sampled combination point within l_inf distance 1 - eps; margin
    points come within 1 + eps but not 1 - eps. Everything else is sure
    out, up to the sampling resolution of the arc.
    """
    import itertools

    t, s = coeff_grid(w1, w2, p, samples)
    n = len(k_pts[0])
    size = GRID ** n
    near_acc = np.zeros(size, dtype=bool)
    in_acc = np.zeros(size, dtype=bool)
    # candidate integers per axis: shift from floor(a), l_inf distance as a
    # function of the fractional part f. Shifts -1 and +2 only matter inside
    # the eps band next to an integer coordinate, so they get masked first.
    shifts = (0, 1, -1, 2)
    strides = [GRID ** (n - 1 - j) for j in range(n)]
    for x in k_pts:
        for y in l_pts:
            frac, dist = [], []
            key0 = np.zeros(len(t), dtype=np.int64)
            for j in range(n):
                a = t * float(x[j]) + s * float(y[j])
                i = np.floor(a)
                key0 += (i.astype(np.int64) + OFF) * strides[j]
                f = a - i
                frac.append(f)
                dist.append((f, 1.0 - f))
            for combo in itertools.product(range(4), repeat=n):
                masks = [(frac[j] < eps) if c == 2 else (frac[j] > 1.0 - eps)
                         for j, c in enumerate(combo) if c >= 2]
                if masks:
                    m = masks[0]
                    for extra in masks[1:]:
                        m = m & extra
                    idx = np.nonzero(m)[0]
                    if idx.size == 0:
                        continue
                    key = key0[idx]
                    d = None
                    for j, c in enumerate(combo):
                        f = frac[j][idx]
                        dj = (f, 1.0 - f, 1.0 + f, 2.0 - f)[c]
                        key = key + shifts[c] * strides[j]
                        d = dj if d is None else np.maximum(d, dj)
                    near_acc |= _presence(key, d < 1.0 + eps, size)
                    in_acc |= _presence(key, d < 1.0 - eps, size)
                else:
                    off = sum(shifts[c] * strides[j]
                              for j, c in enumerate(combo))
                    key = key0 + off if off else key0
                    d = dist[0][combo[0]]
                    for j in range(1, n):
                        d = np.maximum(d, dist[j][combo[j]])
                    # distance <= 1 for the unshifted candidates, so the
                    # whole sample set is a near witness
                    near_acc |= _presence(key, None, size)
                    in_acc |= _presence(key, d < 1.0 - eps, size)
    near = _decode(np.nonzero(near_acc)[0], n)
    sure_in = _decode(np.nonzero(in_acc)[0], n)
    return sure_in, near - sure_in


def solver_point_statuses(k, l, lam, p, cube, tol=Fraction(1, 10 ** 9)):
    """Per lattice point in/out/amb statuses of the certified cube count.

    Mirrors the counting routine but keeps the per-point resolution that
    the public count collapses into a single integer.
    """
    import itertools
    import math

    combo = PCombo.from_lambda(k, l, Fraction(lam), p)
    lattice = Lattice.standard(combo.dim)
    bbox = _combo_bbox(combo)
    if cube is not None:
        from bmlab.sets import bounding_box
        cb = bounding_box(cube)
        bbox = [(a + c, b + d) for (a, b), (c, d) in zip(bbox, cb)]
    scale = max((max(abs(a), abs(b)) for a, b in bbox), default=Fraction(1))
    depth = _depth_for_tol(combo, Fraction(tol), scale)
    work_bits = max(40, math.ceil(math.log2(max(2.0, float(scale))))
                    + Fraction(tol).denominator.bit_length() + 12)
    targets = {}
    owner = {}
    for u in itertools.product(*lattice.coord_ranges(bbox)):
        z = lattice.point(u)
        for i, tgt in enumerate(_cube_targets(z, cube)):
            targets[(u, i)] = tgt
            owner[(u, i)] = z
    status = cover_targets(combo.k, combo.l, combo.arc, targets,
                           work_bits=work_bits, max_depth=depth)
    per_point = {}
    for tid, st in status.items():
        z = owner[tid]
        cur = per_point.get(z, "out")
        if st == IN or cur == IN:
            per_point[z] = IN
        elif st == AMB or cur == AMB:
            per_point[z] = AMB
        else:
            per_point[z] = cur
    return per_point
