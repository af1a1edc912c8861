"""NumPy implementations of the hot loops.

Used when the compiled extension is unavailable or when
``HANKELNORM_PURE_PYTHON`` is set. Signatures match ``_ckernels.pyx``.
"""

import numpy as np


ROOTS_MIN_ORDER = 2048
ROOTS_MAX_DEGREE = 16


def power_recurrence(p, beta, order):
    """Coefficients of ``p**beta`` up to ``order`` (principal branch).

    Solves ``p * q' = beta * p' * q`` term by term; only the nonzero head of
    ``p`` enters, so a polynomial of degree d costs O(order * d). That loop
    is slow in Python, so long expansions of low-degree ``p`` go through
    :func:`_power_by_roots` instead.
    """
    p = np.ascontiguousarray(p, dtype=np.complex128)
    nz = np.flatnonzero(p)
    d = int(nz[-1]) if nz.size else 0
    if order >= ROOTS_MIN_ORDER and 0 < d <= ROOTS_MAX_DEGREE:
        return _power_by_roots(p[: d + 1], beta, order)
    q = np.zeros(order + 1, dtype=np.complex128)
    p0 = p[0]
    q[0] = p0 ** beta
    if d == 0:
        return q
    pj = p[1 : d + 1]
    js = np.arange(1, d + 1, dtype=np.float64)
    for n in range(1, order + 1):
        w = min(n, d)
        # q[n-1], q[n-2], ..., q[n-w]
        tail = q[n - w : n][::-1]
        q[n] = np.dot((beta * js[:w] - n + js[:w]) * pj[:w], tail) / (n * p0)
    return q


def _power_by_roots(p, beta, order):
    """``p**beta = p0**beta * prod_i (1 - z/r_i)**beta`` over the roots of ``p``.

    Each factor has binomial coefficients (a cumulative product); the
    factors are multiplied by FFT. Same branch as the recurrence, since
    every factor is 1 at z = 0.
    """
    roots = np.roots(p[::-1])
    n = np.arange(1, order + 1)
    binom = np.cumprod((n - 1 - beta) / n)
    size = 1 << int(2 * (order + 1) - 1).bit_length()
    acc = np.full(size, p[0] ** beta, dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):
        for r in roots:
            factor = np.empty(order + 1, dtype=np.complex128)
            factor[0] = 1.0
            factor[1:] = binom * (1.0 / r) ** n
            acc *= np.fft.fft(factor, size)
    return np.fft.ifft(acc)[: order + 1]


def hankel_matrix(c, D, dim):
    """Hermitian matrix of the truncated Hankel quadratic form.

    ``M[m, n]`` multiplies ``conj(a_m) a_n``; ``c`` holds the symbol
    coefficients with ``c[0] == 0`` and ``D`` the monomial norms, long enough
    for index ``max(2K, 2*dim - 1)``.
    """
    c = np.asarray(c, dtype=np.complex128)
    D = np.asarray(D, dtype=np.float64)
    K = len(c) - 1
    M = np.zeros((dim, dim), dtype=np.complex128)
    idx = np.arange(dim)
    # (I): k >= 1, only m, n <= K - k see a nonzero coefficient
    for k in range(1, K + 1):
        L = min(dim, K - k + 1)
        cm = c[k : k + L]
        i = idx[:L]
        M[:L, :L] += cm[:, None] * cm.conj()[None, :] * D[k + i[:, None] + i[None, :]]
    # (II): n, m in k+1 .. k+K
    cc = c.conj()
    for k in range(0, dim - 1):
        hi = min(dim - 1, k + K)
        r = np.arange(k + 1, hi + 1)
        cm = c[r - k]
        bracket = D[r[:, None] + r[None, :] - k] - D[r][:, None] * D[r][None, :] / D[k]
        M[k + 1 : hi + 1, k + 1 : hi + 1] += cm[:, None] * cc[r - k][None, :] * bracket
    return M


def hankel_quadratic(a, c, D):
    """Evaluate the quadratic form at the coefficient vector ``a``.

    Exploits the band structure, so the cost is O(len(a) * K**2) instead of
    building the full matrix. ``D`` needs length ``len(a) + 2K + 1``.
    """
    a = np.asarray(a, dtype=np.complex128)
    c = np.asarray(c, dtype=np.complex128)
    D = np.asarray(D, dtype=np.float64)
    K = len(c) - 1
    N = len(a)
    total = 0.0
    for k in range(1, K + 1):
        L = min(N, K - k + 1)
        if L <= 0:
            continue
        x = a[:L] * c[k : k + L].conj()
        i = np.arange(L)
        H = D[k + i[:, None] + i[None, :]]
        total += float(np.real(x @ H @ x.conj()))
    for i in range(1, K + 1):
        for j in range(1, K + 1):
            cij = c[j] * np.conj(c[i])
            if cij == 0:
                continue
            kmax = N - max(i, j)
            if kmax <= 0:
                continue
            k = np.arange(kmax)
            bracket = D[k + i + j] - D[k + i] * D[k + j] / D[k]
            total += float(np.real(cij * np.sum(a[k + i] * a[k + j].conj() * bracket)))
    return total


def grid_winding(xs, ys, vx, vy):
    """Winding number of a closed polygon around every grid point.

    Sweeps one row at a time: the signed crossings of the rightward ray are
    shared by all points of a row.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    x0 = np.asarray(vx, dtype=np.float64)
    y0 = np.asarray(vy, dtype=np.float64)
    x1 = np.roll(x0, -1)
    y1 = np.roll(y0, -1)
    out = np.zeros((len(ys), len(xs)), dtype=np.int32)
    for r, y in enumerate(ys):
        up = (y0 <= y) & (y1 > y)
        down = (y1 <= y) & (y0 > y)
        hit = up | down
        if not hit.any():
            continue
        t = (y - y0[hit]) / (y1[hit] - y0[hit])
        xc = x0[hit] + t * (x1[hit] - x0[hit])
        sign = np.where(up[hit], 1, -1)
        order = np.argsort(xc)
        xc = xc[order]
        csum = np.concatenate(([0], np.cumsum(sign[order])))
        # crossings strictly to the right of each x
        pos = np.searchsorted(xc, xs, side="right")
        out[r] = csum[-1] - csum[pos]
    return out


def _residual(v, inside, h, source):
    lap = np.zeros_like(v)
    lap[1:-1, 1:-1] = (
        v[2:, 1:-1] + v[:-2, 1:-1] + v[1:-1, 2:] + v[1:-1, :-2] - 4.0 * v[1:-1, 1:-1]
    ) / (h * h)
    res = np.where(inside, lap + source, 0.0)
    return float(np.max(np.abs(res))) if inside.any() else 0.0


def sor_solve(v, inside, h, source, omega, tol, max_sweeps, check_every=10):
    """Red-black SOR for ``-Lap_h v = source`` on the masked cells.

    ``v`` is updated in place; cells outside the mask stay at their value
    (zero Dirichlet data). Returns ``(sweeps, max_residual)``.
    """
    inside = np.asarray(inside, dtype=bool)
    ii, jj = np.indices(v.shape)
    red = inside & ((ii + jj) % 2 == 0)
    black = inside & ((ii + jj) % 2 == 1)
    rhs = source * h * h
    sweeps = 0
    res = _residual(v, inside, h, source)
    while res >= tol:
        if sweeps >= max_sweeps:
            return sweeps, res
        for colour in (red, black):
            nb = np.zeros_like(v)
            nb[1:-1, 1:-1] = v[2:, 1:-1] + v[:-2, 1:-1] + v[1:-1, 2:] + v[1:-1, :-2]
            gs = 0.25 * (nb + rhs)
            v[colour] += omega * (gs[colour] - v[colour])
        sweeps += 1
        if sweeps % check_every == 0:
            res = _residual(v, inside, h, source)
    return sweeps, res
