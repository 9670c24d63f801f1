"""Univariate polynomial arithmetic and factorization over GF(p).

Polynomials are lists of coefficients ``[c0, c1, ...]`` with trailing
zeros stripped; the zero polynomial is ``[]``.  Used by the module
decomposition engine: characteristic polynomials of endomorphisms are
factored into irreducibles (square-free split, distinct-degree split,
then Cantor-Zassenhaus with an explicit RNG for the equal-degree step).
"""

from __future__ import annotations

import random


def _trim(f, p):
    while f and f[-1] % p == 0:
        f.pop()
    return f


def poly_add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % p
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return _trim(out, p)


def poly_sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c % p
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return _trim(out, p)


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a % p == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _trim(out, p)


def poly_scale(f, c, p):
    return _trim([(a * c) % p for a in f], p)


def poly_divmod(f, g, p):
    f = [a % p for a in f]
    g = [a % p for a in g]
    _trim(f, p)
    _trim(g, p)
    if not g:
        raise ZeroDivisionError("poly division by zero")
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g) and r:
        c = (r[-1] * inv_lead) % p
        d = len(r) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            r[i + d] = (r[i + d] - c * b) % p
        _trim(r, p)
    return _trim(q, p), r


def poly_mod(f, g, p):
    return poly_divmod(f, g, p)[1]


def poly_gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        a = poly_scale(a, pow(a[-1], p - 2, p), p)
    return a


def poly_monic(f, p):
    if not f:
        return f
    return poly_scale(f, pow(f[-1], p - 2, p), p)


def poly_pow_mod(f, e, m, p):
    result = [1]
    base = poly_mod(f, m, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def poly_derivative(f, p):
    return _trim([(i * c) % p for i, c in enumerate(f)][1:], p)


def poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _pth_root(f, p):
    """For f with f' = 0 over GF(p): f(x) = g(x)^p with g read off directly."""
    return _trim([f[i] for i in range(0, len(f), p)], p)


def squarefree_part_decomposition(f, p):
    """Yield (squarefree factor, multiplicity) pairs with product f (monic)."""
    f = poly_monic(list(f), p)
    out = []

    def rec(g, mult):
        if len(g) <= 1:
            return
        d = poly_derivative(g, p)
        if not d:
            rec(_pth_root(g, p), mult * p)
            return
        c = poly_gcd(g, d, p)
        w = poly_divmod(g, c, p)[0]
        i = 1
        while len(w) > 1:
            y = poly_gcd(w, c, p)
            z = poly_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, mult * i))
            c = poly_divmod(c, y, p)[0]
            w = y
            i += 1
        if len(c) > 1:
            rec(c, mult)

    rec(f, 1)
    return out


def distinct_degree_split(f, p):
    """Split a monic squarefree f into (product-of-irreducibles-of-degree-d, d)."""
    out = []
    x = [0, 1]
    h = list(x)
    g = poly_monic(list(f), p)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_pow_mod(h, p, g, p)
        factor = poly_gcd(poly_sub(h, x, p), g, p)
        if len(factor) > 1:
            out.append((factor, d))
            g = poly_divmod(g, factor, p)[0]
            h = poly_mod(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def equal_degree_split(f, d, p, rng: random.Random):
    """Cantor-Zassenhaus: factor a monic squarefree product of degree-d
    irreducibles into the irreducibles themselves.  Needs p odd."""
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _trim(a, p)
        if len(a) <= 1:
            continue
        g = poly_gcd(a, f, p)
        if 1 < len(g) < len(f):
            left, right = g, poly_divmod(f, g, p)[0]
        else:
            b = poly_pow_mod(a, exponent, f, p)
            g = poly_gcd(poly_sub(b, [1], p), f, p)
            if not (1 < len(g) < len(f)):
                continue
            left, right = g, poly_divmod(f, g, p)[0]
        return equal_degree_split(poly_monic(left, p), d, p, rng) + equal_degree_split(
            poly_monic(right, p), d, p, rng
        )


def factor_poly(f, p, rng: random.Random):
    """Full factorization over GF(p); returns list of (monic irreducible, multiplicity)."""
    if p == 2:
        raise NotImplementedError("equal-degree step assumes odd p")
    result = []
    for sqfree, mult in squarefree_part_decomposition(f, p):
        for prod, d in distinct_degree_split(sqfree, p):
            for irr in equal_degree_split(poly_monic(prod, p), d, p, rng):
                result.append((irr, mult))
    result.sort(key=lambda t: (len(t[0]), t[0]))
    return result


def charpoly_gf(rows, p):
    """Characteristic polynomial det(xI - A) over GF(p) via Hessenberg form.

    ``rows`` is a square list-of-lists of ints.  Returns the monic
    coefficient list ``[c0, ..., 1]``.
    """
    n = len(rows)
    if n == 0:
        return [1]
    h = [[x % p for x in row] for row in rows]
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if h[i][m - 1] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            h[m], h[piv] = h[piv], h[m]
            for r in range(n):
                h[r][m], h[r][piv] = h[r][piv], h[r][m]
        inv = pow(h[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = (h[i][m - 1] * inv) % p
            if u:
                for j in range(m - 1, n):
                    h[i][j] = (h[i][j] - u * h[m][j]) % p
                for r in range(n):
                    h[r][m] = (h[r][m] + u * h[r][i]) % p
    # charpoly of a Hessenberg matrix by the standard recurrence
    polys = [[1]]
    for m in range(1, n + 1):
        # (x - h[m-1][m-1]) * p_{m-1}
        pm = poly_sub(poly_mul([0, 1], polys[m - 1], p), poly_scale(polys[m - 1], h[m - 1][m - 1], p), p)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = (prod * h[i][i - 1]) % p
            term = poly_scale(polys[i - 1], (h[i - 1][m - 1] * prod) % p, p)
            pm = poly_sub(pm, term, p)
        polys.append(pm)
    out = polys[n]
    out = out + [0] * (n + 1 - len(out))
    return out


def poly_apply_matrix(f, mat_rows, p):
    """Evaluate a polynomial at a square matrix over GF(p) (list-of-lists)."""
    n = len(mat_rows)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    acc = [[0] * n for _ in range(n)]
    power = ident
    for c in f:
        if c % p:
            for i in range(n):
                row_acc = acc[i]
                row_pow = power[i]
                for j in range(n):
                    row_acc[j] = (row_acc[j] + c * row_pow[j]) % p
        power = _mat_mul(power, mat_rows, p)
    return acc


def _mat_mul(a, b, p):
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for kk in range(k):
            x = ai[kk]
            if x == 0:
                continue
            bk = b[kk]
            for j in range(m):
                oi[j] = (oi[j] + x * bk[j]) % p
    return out
