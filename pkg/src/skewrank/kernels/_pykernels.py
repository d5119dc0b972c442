"""Pure-Python kernels. Reference semantics for the compiled versions."""

from itertools import combinations


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    # stars and bars: bar positions in a row of total + parts - 1 slots
    width = total + parts - 1
    for bars in combinations(range(width), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(width - prev - 1)
        yield tuple(out)


def power_sum_counts(nvars, degree, order, forms):
    """Expand sum_f weight_f * z^shift_f * (sum_j mag_j z^exp_j x_{var_j})^degree.

    ``forms`` is a sequence of ``(weight, shift, vars, mags, exps)`` with
    integer weight and magnitudes and root exponents taken mod ``order``.
    Returns ``{exponent_tuple: counts}`` where ``counts[e]`` is the integer
    coefficient of z^e, for e in range(order).
    """
    fact = [1]
    for i in range(1, degree + 1):
        fact.append(fact[-1] * i)
    acc = {}
    for weight, shift, vars_, mags, exps in forms:
        k = len(vars_)
        if k == 0:
            if degree == 0:
                key = (0,) * nvars
                row = acc.setdefault(key, [0] * order)
                row[shift % order] += weight
            continue
        pows = [[1] * (degree + 1) for _ in range(k)]
        for j, mag in enumerate(mags):
            p = pows[j]
            for a in range(1, degree + 1):
                p[a] = p[a - 1] * mag
        for alpha in _compositions(degree, k):
            coef = fact[degree]
            denom = 1
            e = shift
            full = [0] * nvars
            for j, a in enumerate(alpha):
                if a:
                    denom *= fact[a]
                    e += exps[j] * a
                    coef *= pows[j][a]
                    full[vars_[j]] = a
            coef //= denom
            key = tuple(full)
            row = acc.get(key)
            if row is None:
                row = acc[key] = [0] * order
            row[e % order] += weight * coef
    return {key: row for key, row in acc.items() if any(row)}


def rank_mod_p(rows, p):
    """Rank of an integer matrix over F_p (entries already reduced)."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    nrows = len(a)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        prow = [x * inv % p for x in a[r]]
        a[r] = prow
        for i in range(r + 1, nrows):
            f = a[i][c] % p
            if f:
                row = a[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        r += 1
        if r == nrows:
            break
    return r
