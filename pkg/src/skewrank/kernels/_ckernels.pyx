# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for power-sum expansion and modular rank.

Both functions match the signatures in ``_pykernels``. The expansion
kernel falls back to the Python implementation whenever a coefficient
could leave int64 or the dense accumulator would be too large.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t

from . import _pykernels

cdef int64_t _LIMIT = (<int64_t>1) << 62
cdef Py_ssize_t _MAX_CELLS = 1 << 26


cdef struct Ctx:
    int nvars
    int order
    int k
    int64_t *binom      # (D+n) x (D+n) row-major, binom[i*stride + j]
    int stride
    int64_t *magpow     # k x (degree+1)
    int *vars
    int *exps
    int *alpha          # nvars
    int64_t *acc        # ncells x order
    char *touched
    int *store          # ncells x nvars
    int64_t weight


cdef inline Py_ssize_t _rank(Ctx *c) noexcept nogil:
    cdef Py_ssize_t r = 0
    cdef int i, pos = 0
    for i in range(c.nvars - 1):
        pos += c.alpha[i]
        # bar position is the prefix sum plus the index
        r += c.binom[(pos + i) * c.stride + i + 1]
    return r


cdef void _walk(Ctx *c, int j, int rem, int64_t coef, int64_t esum) noexcept nogil:
    cdef int a, i
    cdef Py_ssize_t r
    cdef int v = c.vars[j]
    cdef int64_t cc
    if j == c.k - 1:
        c.alpha[v] = rem
        cc = coef * c.magpow[j * (c.stride) + rem]
        esum = (esum + <int64_t>c.exps[j] * rem) % c.order
        r = _rank(c)
        c.acc[r * c.order + esum] += c.weight * cc
        if not c.touched[r]:
            c.touched[r] = 1
            for i in range(c.nvars):
                c.store[r * c.nvars + i] = c.alpha[i]
        c.alpha[v] = 0
        return
    for a in range(rem, -1, -1):
        c.alpha[v] = a
        _walk(c, j + 1, rem - a,
              coef * c.binom[rem * c.stride + a] * c.magpow[j * c.stride + a],
              (esum + <int64_t>c.exps[j] * a) % c.order)
    c.alpha[v] = 0


def power_sum_counts(int nvars, int degree, int order, forms):
    cdef Py_ssize_t ncells, i, t
    cdef int j, a, k, stride
    cdef int64_t start
    cdef object bound = 0
    cdef Ctx ctx
    forms = list(forms)
    for weight, shift, vars_, mags, exps in forms:
        s = 0
        for mag in mags:
            s += abs(mag)
        bound += abs(weight) * s ** degree
    ncells = 1
    for i in range(1, nvars):
        ncells = ncells * (degree + i) // i
    if bound >= _LIMIT or ncells * order > _MAX_CELLS or degree + nvars > 60 or nvars == 0:
        return _pykernels.power_sum_counts(nvars, degree, order, forms)

    stride = degree + nvars + 1
    ctx.nvars = nvars
    ctx.order = order
    ctx.stride = stride
    ctx.binom = <int64_t *> calloc(stride * stride, sizeof(int64_t))
    ctx.magpow = <int64_t *> calloc(nvars * stride, sizeof(int64_t))
    ctx.vars = <int *> calloc(nvars, sizeof(int))
    ctx.exps = <int *> calloc(nvars, sizeof(int))
    ctx.alpha = <int *> calloc(nvars, sizeof(int))
    ctx.acc = <int64_t *> calloc(ncells * order, sizeof(int64_t))
    ctx.touched = <char *> calloc(ncells, sizeof(char))
    ctx.store = <int *> calloc(ncells * nvars, sizeof(int))
    if not (ctx.binom and ctx.magpow and ctx.vars and ctx.exps and ctx.alpha
            and ctx.acc and ctx.touched and ctx.store):
        free(ctx.binom); free(ctx.magpow); free(ctx.vars); free(ctx.exps)
        free(ctx.alpha); free(ctx.acc); free(ctx.touched); free(ctx.store)
        raise MemoryError()
    try:
        for i in range(stride):
            ctx.binom[i * stride] = 1
            for j in range(1, i + 1):
                ctx.binom[i * stride + j] = ctx.binom[(i - 1) * stride + j - 1] + (
                    ctx.binom[(i - 1) * stride + j] if j < i else 0)
        for weight, shift, vars_, mags, exps in forms:
            k = len(vars_)
            if k == 0:
                if degree == 0:
                    ctx.acc[(shift % order)] += weight
                    ctx.touched[0] = 1
                continue
            ctx.k = k
            ctx.weight = weight
            for j in range(k):
                ctx.vars[j] = vars_[j]
                ctx.exps[j] = exps[j] % order
                ctx.magpow[j * stride] = 1
                for a in range(1, degree + 1):
                    ctx.magpow[j * stride + a] = ctx.magpow[j * stride + a - 1] * mags[j]
            start = shift % order
            with nogil:
                _walk(&ctx, 0, degree, 1, start)
        out = {}
        for i in range(ncells):
            if ctx.touched[i]:
                row = [ctx.acc[i * order + t] for t in range(order)]
                if any(row):
                    out[tuple([ctx.store[i * nvars + j] for j in range(nvars)])] = row
        return out
    finally:
        free(ctx.binom); free(ctx.magpow); free(ctx.vars); free(ctx.exps)
        free(ctx.alpha); free(ctx.acc); free(ctx.touched); free(ctx.store)


cdef int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(rows, int64_t p):
    """Rank over F_p of an integer matrix, p < 2^31."""
    cdef Py_ssize_t nrows = len(rows), ncols, i, j, c, r = 0, piv
    cdef int64_t *a
    cdef int64_t inv, f, tmp
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    if ncols == 0:
        return 0
    a = <int64_t *> malloc(nrows * ncols * sizeof(int64_t))
    if not a:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = row[j] % p
        with nogil:
            for c in range(ncols):
                if r == nrows:
                    break
                piv = -1
                for i in range(r, nrows):
                    if a[i * ncols + c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(ncols):
                        tmp = a[r * ncols + j]
                        a[r * ncols + j] = a[piv * ncols + j]
                        a[piv * ncols + j] = tmp
                inv = _inv_mod(a[r * ncols + c], p)
                for j in range(c, ncols):
                    a[r * ncols + j] = a[r * ncols + j] * inv % p
                for i in range(r + 1, nrows):
                    f = a[i * ncols + c]
                    if f != 0:
                        for j in range(c, ncols):
                            a[i * ncols + j] = (a[i * ncols + j] - f * a[r * ncols + j]) % p
                            if a[i * ncols + j] < 0:
                                a[i * ncols + j] += p
                r += 1
        return r
    finally:
        free(a)
