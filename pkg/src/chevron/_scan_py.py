"""Pure-Python breakpoint scan kernel.

Mirrors ``_scan.pyx`` operation for operation so both backends return
bit-identical SSE arrays.
"""


def _segment_sse(cxx, cxy, cyy):
    if cxx > 0.0:
        s = cyy - cxy * cxy / cxx
        return s if s > 0.0 else 0.0
    return cyy


def running_sse(xs, ys):
    """``out[j]`` is the OLS residual sum of squares of the first ``j`` points.

    Uses single-pass Welford updates of the means and co-moments.
    """
    n = len(xs)
    out = [0.0] * (n + 1)
    mx = my = cxx = cxy = cyy = 0.0
    for j in range(n):
        x = xs[j]
        y = ys[j]
        cnt = j + 1.0
        dx = x - mx
        dy = y - my
        mx += dx / cnt
        my += dy / cnt
        cxx += dx * (x - mx)
        cxy += dx * (y - my)
        cyy += dy * (y - my)
        out[j + 1] = _segment_sse(cxx, cxy, cyy)
    return out


def scan_breaks(xs, ys, min_points):
    """Total two-segment SSE for every admissible split.

    Entry ``i`` corresponds to the first segment holding ``min_points + i``
    points.  Returns a list (empty when no split is admissible).
    """
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    n = len(xs)
    if n < 2 * min_points:
        return []
    pre = running_sse(xs, ys)
    suf = running_sse(xs[::-1], ys[::-1])
    return [pre[k] + suf[n - k] for k in range(min_points, n - min_points + 1)]
