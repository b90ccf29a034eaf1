"""Independent brute-force oracles used by the tests.

These deliberately avoid the library's optimised code paths: identities are
expanded over ALL ordered basis triples straight from the tensors, so they
double-check the unordered-triple reductions inside the package.
"""

from itertools import product as iproduct


def _apply(tensor, u, v):
    n = tensor.dim
    zero = tensor.field.zero
    out = [zero] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            uv = u[i] * v[j]
            for k in range(n):
                c = tensor.coeffs[i][j][k]
                if c:
                    out[k] = out[k] + uv * c
    return tuple(out)


def _unit(field, n, i):
    return tuple(field.one if j == i else field.zero for j in range(n))


def lie_residuals_bruteforce(L):
    """Residual of the omega-Jacobi identity on every ordered triple."""
    n = L.dim
    field = L.field
    units = [_unit(field, n, i) for i in range(n)]
    br = L.bracket
    bad = []
    for x, y, z in iproduct(range(n), repeat=3):
        lhs = [field.zero] * n
        for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
            t = _apply(br, _apply(br, units[a], units[b]), units[c])
            for m, v in enumerate(t):
                lhs[m] = lhs[m] + v
        lhs[z] = lhs[z] - L.omega.entry(x, y)
        lhs[x] = lhs[x] - L.omega.entry(y, z)
        lhs[y] = lhs[y] - L.omega.entry(z, x)
        if any(lhs):
            bad.append(((x, y, z), tuple(lhs)))
    return bad


def lsa_residuals_bruteforce(A):
    """Residual of the left-symmetric identity on every ordered triple."""
    n = A.dim
    field = A.field
    units = [_unit(field, n, i) for i in range(n)]
    p = A.product
    bad = []
    for x, y, z in iproduct(range(n), repeat=3):
        ex, ey, ez = units[x], units[y], units[z]
        r = list(_apply(p, _apply(p, ex, ey), ez))
        for m, v in enumerate(_apply(p, ex, _apply(p, ey, ez))):
            r[m] = r[m] - v
        for m, v in enumerate(_apply(p, _apply(p, ey, ex), ez)):
            r[m] = r[m] - v
        for m, v in enumerate(_apply(p, ey, _apply(p, ex, ez))):
            r[m] = r[m] + v
        r[z] = r[z] - A.omega.entry(x, y)
        if any(r):
            bad.append(((x, y, z), tuple(r)))
    return bad


def random_fraction(rng, den_max=6, num_max=9):
    from fractions import Fraction

    return Fraction(rng.randint(-num_max, num_max), rng.randint(1, den_max))
