"""Optional numba-compiled kernels for the hot solver paths.

The pure-Python solvers are the reference implementations; these kernels run
the same algorithms over int64 prefix arrays and are used automatically for
large integer inputs whose cross-multiplied comparisons provably fit in
int64.  Every kernel returns the same loop counters that the pure structures
track, so instrumentation stays comparable across paths.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .core import OpCounters, WeightedSequence

try:
    import numba
    import numpy as np

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - mirror always provides numba
    HAVE_NUMBA = False

# Largest cross-multiplied product is (2 * max|prefix value|) * total width;
# stay a factor 2 under the int64 limit.
_INT64_PRODUCT_BOUND = 1 << 62

# Below this size the pure path wins: array conversion and call overhead
# dominate the kernel's gain.
MIN_FAST_N = 4096


def eligible(seq: WeightedSequence) -> bool:
    """True when int64 kernels are safe and worthwhile for this sequence."""
    if not HAVE_NUMBA or not seq.exact or seq.n < MIN_FAST_N:
        return False
    pv = seq.prefix_value
    spread = 2 * max(abs(min(pv)), abs(max(pv)))
    total_w = seq.prefix_weight[seq.n]
    if spread == 0:
        spread = 1
    return spread * total_w < _INT64_PRODUCT_BOUND


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _min_width_kernel(V, W, L):  # pragma: no cover - compiled
        n = V.shape[0] - 1

        # lidx via a forward cursor; 0 marks "undefined".
        lidx = np.zeros(n + 1, dtype=np.int64)
        i0 = 0
        j = 1
        for i in range(1, n + 1):
            if j < i:
                j = i
            base = W[i - 1]
            while j <= n and W[j] - base < L:
                j += 1
            if j > n:
                break
            lidx[i] = j
            i0 = i
        if i0 == 0:
            return 0, 0, 0, 0, 0, 0

        p = np.zeros(n + 2, dtype=np.int64)
        head = np.zeros(n + 2, dtype=np.int64)
        nxt = np.zeros(n + 2, dtype=np.int64)
        init_merges = 0
        for i in range(n, 1, -1):
            pi = i
            vi = V[i - 1]
            wi = W[i - 1]
            while pi < n:
                nx = p[pi + 1]
                if (V[pi] - vi) * (W[nx] - W[pi]) <= (V[nx] - V[pi]) * (W[pi] - wi):
                    pi = nx
                    init_merges += 1
                else:
                    break
            p[i] = pi
            nxt[i] = head[pi]
            head[pi] = i

        lower = n
        upper = n
        bridge = n
        descents = 0
        bitonics = 0
        scans = 0
        best_i = 0
        best_j = 0
        best_s = np.int64(0)
        best_w = np.int64(0)
        for i in range(i0, 0, -1):
            li = lidx[i]
            if li == n:
                g = n
            else:
                lo = li + 1 if li > 1 else 2
                while lower > lo:
                    lower -= 1
                    descents += 1
                    if p[lower] >= upper:
                        bridge = lower
                vi = V[i - 1]
                wi = W[i - 1]
                while upper >= lower:
                    pb = p[bridge]
                    s1 = V[bridge - 1] - vi
                    w1 = W[bridge - 1] - wi
                    s2 = V[pb] - vi
                    w2 = W[pb] - wi
                    if s1 * w2 <= s2 * w1:
                        break
                    upper = bridge - 1
                    bitonics += 1
                    if upper >= lower:
                        k = head[upper]
                        while k != 0 and k < lower:
                            k = nxt[k]
                            scans += 1
                        head[upper] = k
                        bridge = k
                g = upper
            s = V[g] - V[i - 1]
            w = W[g] - W[i - 1]
            if best_w == 0 or s * best_w >= best_s * w:
                best_i = i
                best_j = g
                best_s = s
                best_w = w
        return best_i, best_j, init_merges, descents, bitonics, scans

    @numba.njit(cache=True)
    def _uniform_kernel(V, Lc, Uc):  # pragma: no cover - compiled
        n = V.shape[0] - 1
        size = Uc - Lc
        nblocks = (n + size - 1) // size

        p = np.zeros(n + 2, dtype=np.int64)
        head = np.zeros(n + 2, dtype=np.int64)
        nxt = np.zeros(n + 2, dtype=np.int64)
        q = np.zeros(n + 2, dtype=np.int64)
        lower = np.zeros(nblocks, dtype=np.int64)
        upper = np.zeros(nblocks, dtype=np.int64)
        bridge = np.zeros(nblocks, dtype=np.int64)
        upper_u = np.zeros(nblocks, dtype=np.int64)

        init_merges = 0
        for z in range(nblocks):
            xs = 1 + z * size
            ys = xs + size - 1
            if ys > n:
                ys = n
            for i in range(ys, xs, -1):
                pi = i
                vi = V[i - 1]
                while pi < ys:
                    nx = p[pi + 1]
                    # widths are index counts in the uniform model
                    if (V[pi] - vi) * (nx - pi) <= (V[nx] - V[pi]) * (pi - i + 1):
                        pi = nx
                        init_merges += 1
                    else:
                        break
                p[i] = pi
                nxt[i] = head[pi]
                head[pi] = i
            lower[z] = ys
            upper[z] = ys
            bridge[z] = ys
            for i in range(xs + 1, ys + 1):
                qi = i
                while qi > xs + 1:
                    prev = q[qi - 1]
                    if (V[qi - 1] - V[prev - 1]) * (i - qi + 1) <= (
                        V[i] - V[qi - 1]
                    ) * (qi - prev):
                        qi = prev
                        init_merges += 1
                    else:
                        break
                q[i] = qi
            upper_u[z] = ys

        descents = 0
        bitonics = 0
        scans = 0
        best_i = 0
        best_j = 0
        best_s = np.int64(0)
        best_w = np.int64(0)
        i0 = n - Lc + 1
        for i in range(i0, 0, -1):
            li = i + Lc - 1
            ui = i + Uc - 1
            if ui > n:
                ui = n
            zc = (li - 1) // size
            xs = 1 + zc * size
            ys = xs + size - 1
            if ys > n:
                ys = n
            vi = V[i - 1]
            if li == ys:
                g = li
            else:
                l_ = lower[zc]
                u_ = upper[zc]
                b_ = bridge[zc]
                lo = li + 1 if li > xs else xs + 1
                while l_ > lo:
                    l_ -= 1
                    descents += 1
                    if p[l_] >= u_:
                        b_ = l_
                while u_ >= l_:
                    pb = p[b_]
                    s1 = V[b_ - 1] - vi
                    s2 = V[pb] - vi
                    # density(i, b-1) <= density(i, pb) stops the retreat
                    if s1 * (pb - i + 1) <= s2 * (b_ - i):
                        break
                    u_ = b_ - 1
                    bitonics += 1
                    if u_ >= l_:
                        k = head[u_]
                        while k != 0 and k < l_:
                            k = nxt[k]
                            scans += 1
                        head[u_] = k
                        b_ = k
                lower[zc] = l_
                upper[zc] = u_
                bridge[zc] = b_
                g = u_
            gs = V[g] - vi
            gw = g - i + 1
            if ys < n:
                z2 = zc + 1
                xs2 = xs + size
                u2 = upper_u[z2]
                while u2 > ui:
                    u2 -= 1
                    descents += 1
                while u2 > xs2:
                    qu = q[u2]
                    s1 = V[qu - 1] - vi
                    s2 = V[u2] - vi
                    # density(i, qu-1) <= density(i, u2) stops the retreat
                    if s1 * (u2 - i + 1) <= s2 * (qu - i):
                        break
                    u2 = qu - 1
                    bitonics += 1
                upper_u[z2] = u2
                s2_ = V[u2] - vi
                w2_ = u2 - i + 1
                # strict improvement only: ties keep the min-width candidate
                if s2_ * gw > gs * w2_:
                    g = u2
                    gs = s2_
                    gw = w2_
            if best_w == 0 or gs * best_w >= best_s * gw:
                best_i = i
                best_j = g
                best_s = gs
                best_w = gw
        return best_i, best_j, init_merges, descents, bitonics, scans


def min_width(
    seq: WeightedSequence, L: int, counters: OpCounters
) -> Optional[Tuple[int, int]]:
    """Kernel-backed minimum-width solve; None when the kernel cannot run."""
    if not eligible(seq):
        return None
    V, W = seq.numpy_prefixes()
    bi, bj, im, ds, bs, ss = _min_width_kernel(V, W, L)
    counters.add(int(im), int(ds), int(bs), int(ss))
    if bi == 0:
        return None
    return int(bi), int(bj)


def uniform(
    seq: WeightedSequence, Lc: int, Uc: int, counters: OpCounters
) -> Optional[Tuple[int, int]]:
    """Kernel-backed uniform-model solve; None when the kernel cannot run."""
    if not eligible(seq) or not seq.is_uniform:
        return None
    V, _ = seq.numpy_prefixes()
    bi, bj, im, ds, bs, ss = _uniform_kernel(V, Lc, Uc)
    counters.add(int(im), int(ds), int(bs), int(ss))
    if bi == 0:
        return None
    return int(bi), int(bj)
