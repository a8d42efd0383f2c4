"""Slow, dense, independent reference computations.

Nothing here imports the package's linear algebra.  Algebras are given as
two dense ``n x n x n`` tensors plus a modulus (``None`` for Q).  The
cocycle conditions are not transcribed; they are read off from the five
identities evaluated on the extension ``B ⊕ F``.
"""

from fractions import Fraction
from itertools import product


def _norm(x, p):
    if p is None:
        return Fraction(x)
    return int(x) % p


def _inv(x, p):
    return 1 / x if p is None else pow(x, -1, p)


def naive_rref(rows, p=None):
    """Plain Gauss-Jordan on a dense list of lists; returns (rows, pivots)."""
    m = [[_norm(x, p) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv(m[r][c], p)
        m[r] = [_norm(x * inv, p) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [_norm(a - f * b, p) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def naive_rank(rows, p=None):
    return len(naive_rref(rows, p)[1])


def naive_nullspace(rows, ncols, p=None):
    red, pivots = naive_rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [_norm(0, p)] * ncols
        v[fcol] = _norm(1, p)
        for row, pc in zip(red, pivots):
            v[pc] = _norm(-row[fcol], p)
        basis.append(v)
    return basis


def _mul(t, u, v, p):
    n = len(u)
    out = [_norm(0, p)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            if v[j] == 0:
                continue
            for k in range(n):
                c = t[i][j][k]
                if c:
                    out[k] = _norm(out[k] + u[i] * v[j] * c, p)
    return out


def _unit(n, i, p):
    return [_norm(1 if k == i else 0, p) for k in range(n)]


def _sub(a, b, p):
    return [_norm(x - y, p) for x, y in zip(a, b)]


IDENTITIES = {
    # name: (lhs, rhs) as functions of (L, R, x, y, z)
    "left_assoc": (lambda P, x, y, z: P(0, P(0, x, y), z), lambda P, x, y, z: P(0, x, P(0, y, z))),
    "right_assoc": (lambda P, x, y, z: P(1, P(1, x, y), z), lambda P, x, y, z: P(1, x, P(1, y, z))),
    "mixed_left": (lambda P, x, y, z: P(0, x, P(0, y, z)), lambda P, x, y, z: P(0, x, P(1, y, z))),
    "mixed_middle": (lambda P, x, y, z: P(0, P(1, x, y), z), lambda P, x, y, z: P(1, x, P(0, y, z))),
    "mixed_right": (lambda P, x, y, z: P(1, P(0, x, y), z), lambda P, x, y, z: P(1, P(1, x, y), z)),
}


def identity_residuals(left, right, p=None):
    """``{name: [(i, j, k, residual), ...]}`` over all basis triples."""
    n = len(left)
    tabs = (left, right)

    def P(side, u, v):
        return _mul(tabs[side], u, v, p)

    out = {name: [] for name in IDENTITIES}
    for i, j, k in product(range(n), repeat=3):
        x, y, z = _unit(n, i, p), _unit(n, j, p), _unit(n, k, p)
        for name, (lhs, rhs) in IDENTITIES.items():
            r = _sub(lhs(P, x, y, z), rhs(P, x, y, z), p)
            if any(r):
                out[name].append((i, j, k, r))
    return out


def center_dim(left, right, p=None):
    n = len(left)
    # z in center iff for all x and both sides: z*x = 0 and x*z = 0
    rows = []
    for t in (left, right):
        for x in range(n):
            for k in range(n):
                rows.append([t[z][x][k] for z in range(n)])
                rows.append([t[x][z][k] for z in range(n)])
    return n - naive_rank(rows, p) if rows else n


def derived_dim(left, right, p=None):
    rows = [t[i][j] for t in (left, right) for i in range(len(left)) for j in range(len(left))]
    return naive_rank(rows, p) if rows else 0


def _extension(left, right, f, p):
    """Dense tensors of ``B ⊕ F`` (extra coordinate last) for cochain ``f``
    given as ``f[side][i][j]``."""
    n = len(left)
    N = n + 1
    tabs = []
    for side, t in enumerate((left, right)):
        T = [[[_norm(0, p)] * N for _ in range(N)] for _ in range(N)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    T[i][j][k] = _norm(t[i][j][k], p)
                T[i][j][n] = _norm(f[side][i][j], p)
        tabs.append(T)
    return tabs


def cocycle_constraint_rows(left, right, p=None):
    """Constraint matrix on the ``2n^2`` unknowns ``f[side][i][j]``
    (flat index ``(side*n + i)*n + j``), derived column by column from
    the identity residuals of ``B ⊕ F``."""
    n = len(left)
    unknowns = [(s, i, j) for s in range(2) for i in range(n) for j in range(n)]
    triples = list(product(range(n), repeat=3))
    cols = []
    for (s, i, j) in unknowns:
        f = [[[0] * n for _ in range(n)] for _ in range(2)]
        f[s][i][j] = 1
        EL, ER = _extension(left, right, f, p)
        tabs = (EL, ER)

        def P(side, u, v):
            return _mul(tabs[side], u, v, p)

        col = []
        for a, b, c in triples:
            x, y, z = _unit(n + 1, a, p), _unit(n + 1, b, p), _unit(n + 1, c, p)
            for lhs, rhs in IDENTITIES.values():
                col.append(_norm(lhs(P, x, y, z)[n] - rhs(P, x, y, z)[n], p))
        cols.append(col)
    if not cols:
        return []
    return [list(r) for r in zip(*cols)]


def coboundary_rows(left, right, p=None):
    """Generators of B^2: for each basis functional eps_k, the cochain
    ``-eps_k(x_i * x_j)``."""
    n = len(left)
    gens = []
    for k in range(n):
        gens.append([_norm(-t[i][j][k], p) for t in (left, right) for i in range(n) for j in range(n)])
    return gens


def h2_dims(left, right, p=None):
    """``(dim Z^2, dim B^2, dim H^2)`` with coefficients in F."""
    n = len(left)
    N = 2 * n * n
    rows = cocycle_constraint_rows(left, right, p)
    z2 = N - (naive_rank(rows, p) if rows else 0)
    b2 = naive_rank(coboundary_rows(left, right, p), p) if n else 0
    return z2, b2, z2 - b2


def _drop(t, keep):
    return [[[t[i][j][k] for k in keep] for j in keep] for i in keep]


def sequence_ranks(left, right, ideal_coords, p=None):
    """Ranks of Inf1, Res, Tra, Inf2 for a central ideal spanned by the
    coordinate vectors ``ideal_coords``; the quotient keeps the other
    coordinates and the section is the coordinate inclusion."""
    n = len(left)
    S = sorted(ideal_coords)
    keep = [c for c in range(n) if c not in S]
    q = len(keep)
    QL, QR = _drop(left, keep), _drop(right, keep)

    def hom_basis(l, r, dim):
        rows = [t[i][j] for t in (l, r) for i in range(dim) for j in range(dim)]
        return naive_nullspace(rows, dim, p) if rows else [_unit(dim, i, p) for i in range(dim)]

    hom_Q = hom_basis(QL, QR, q)
    hom_L = hom_basis(left, right, n)
    # Inf1: chi -> chi o proj
    inf1_vecs = []
    for chi in hom_Q:
        v = [_norm(0, p)] * n
        for a, c in enumerate(keep):
            v[c] = chi[a]
        inf1_vecs.append(v)
    r_inf1 = naive_rank(inf1_vecs, p) if inf1_vecs else 0
    r_res = naive_rank([[pi[c] for c in S] for pi in hom_L], p) if hom_L and S else 0

    bq = coboundary_rows(QL, QR, p)
    rb_q = naive_rank(bq, p) if bq else 0
    tra_vecs = []
    for s in S:
        tra_vecs.append([_norm(t[a][b][s], p) for t in (left, right) for a in keep for b in keep])
    r_tra = (naive_rank(bq + tra_vecs, p) - rb_q) if tra_vecs else 0

    zq_rows = cocycle_constraint_rows(QL, QR, p)
    zq = naive_nullspace(zq_rows, 2 * q * q, p) if zq_rows else [
        _unit(2 * q * q, i, p) for i in range(2 * q * q)]
    bl = coboundary_rows(left, right, p)
    rb_l = naive_rank(bl, p) if bl else 0
    pulled = []
    pos = {c: a for a, c in enumerate(keep)}
    for z in zq:
        v = []
        for side in range(2):
            for i in range(n):
                for j in range(n):
                    if i in pos and j in pos:
                        v.append(z[(side * q + pos[i]) * q + pos[j]])
                    else:
                        v.append(_norm(0, p))
        pulled.append(v)
    r_inf2 = (naive_rank(bl + pulled, p) - rb_l) if pulled else 0
    return {"inf1": r_inf1, "res": r_res, "tra": r_tra, "inf2": r_inf2}
