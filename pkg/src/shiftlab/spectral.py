"""Exact integer matrix arithmetic, strongly connected components, and
certified Perron root computation for nonnegative integer matrices.

Matrices are lists of lists of Python ints so periodic-point counts stay
exact at any size.  The Perron root is bracketed with Collatz-Wielandt
bounds on the shifted matrix A+I (primitive whenever A is irreducible),
so the bracket is a genuine certificate for irreducible blocks.
"""

import numpy as np

from .errors import ConvergenceError, ReducibleGraphError


def int_matmul(a, b):
    n, m = len(a), len(b[0])
    k = len(b)
    bt = [[b[r][c] for r in range(k)] for c in range(m)]
    return [[sum(row[i] * col[i] for i in range(k)) for col in bt] for row in a]


def int_matpow(a, p):
    n = len(a)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = a
    while p:
        if p & 1:
            result = int_matmul(result, base)
        base = int_matmul(base, base)
        p >>= 1
    return result


def int_trace(a):
    return sum(a[i][i] for i in range(len(a)))


def strongly_connected_components(n, succ):
    """Tarjan's algorithm, iterative.  ``succ[i]`` lists successors of i.

    Returns components as sorted tuples of vertex indices, in a
    deterministic order (sorted by smallest member).
    """
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = [0]

    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    return sorted(comps)


def is_irreducible(n, succ):
    if n == 0:
        return False
    comps = strongly_connected_components(n, succ)
    if len(comps) != 1:
        return False
    # a single vertex with no loop is the trivial strongly connected case
    if n == 1:
        return 0 in succ[0]
    return True


def perron_root(matrix, tol=1e-12, max_iter=500000):
    """Certified Perron root of an irreducible nonnegative integer matrix.

    Returns (value, lower, upper) with upper - lower < tol.  Power
    iteration runs on A + I, whose primitivity makes the Collatz-Wielandt
    bracket min_i (Bu)_i/u_i <= rho(B) <= max_i (Bu)_i/u_i collapse.
    """
    n = len(matrix)
    if n == 0:
        raise ReducibleGraphError("empty matrix has no Perron root")
    succ = [[j for j in range(n) if matrix[i][j]] for i in range(n)]
    if not is_irreducible(n, succ):
        raise ReducibleGraphError("matrix is not irreducible")
    if n == 1:
        v = float(matrix[0][0])
        return v, v, v
    b = np.array(matrix, dtype=float) + np.eye(n)
    u = np.ones(n)
    lo, hi = 0.0, float("inf")
    for _ in range(max_iter):
        bu = b @ u
        ratios = bu / u
        lo = float(ratios.min())
        hi = float(ratios.max())
        if hi - lo < tol:
            break
        u = bu / bu.max()
    else:
        if hi - lo > 1e-9:
            raise ConvergenceError(
                "Perron bracket width %.3e did not reach tolerance" % (hi - lo))
    return (lo + hi) / 2.0 - 1.0, lo - 1.0, hi - 1.0


def perron_vectors(matrix, tol=1e-12, max_iter=500000):
    """Perron root with right and left eigenvectors (L1-normalized).

    Same certified bracket as perron_root; the returned vectors inherit
    its accuracy since the iteration matrix A + I is primitive.
    """
    n = len(matrix)
    if n == 0:
        raise ReducibleGraphError("empty matrix has no Perron data")
    succ = [[j for j in range(n) if matrix[i][j]] for i in range(n)]
    if not is_irreducible(n, succ):
        raise ReducibleGraphError("matrix is not irreducible")
    if n == 1:
        return float(matrix[0][0]), [1.0], [1.0]
    value, _, _ = perron_root(matrix, tol=tol, max_iter=max_iter)
    b = np.array(matrix, dtype=float) + np.eye(n)

    def settle(m):
        u = np.ones(n)
        for _ in range(max_iter):
            nxt = m @ u
            nxt = nxt / nxt.sum()
            if np.abs(nxt - u).max() < tol:
                return nxt
            u = nxt
        raise ConvergenceError("Perron vector iteration did not settle")

    right = settle(b)
    left = settle(b.T)
    return value, [float(x) for x in right], [float(x) for x in left]


def spectral_radius_certified(matrix, tol=1e-12):
    """Perron root of a general nonnegative integer matrix.

    The radius is the max over strongly connected components; single
    vertices without loops contribute 0.  Returns (value, lower, upper).
    """
    n = len(matrix)
    if n == 0:
        return 0.0, 0.0, 0.0
    succ = [[j for j in range(n) if matrix[i][j]] for i in range(n)]
    best = (0.0, 0.0, 0.0)
    for comp in strongly_connected_components(n, succ):
        if len(comp) == 1:
            i = comp[0]
            if matrix[i][i] == 0:
                continue
            v = float(matrix[i][i])
            cand = (v, v, v)
        else:
            sub = [[matrix[i][j] for j in comp] for i in comp]
            cand = perron_root(sub, tol=tol)
        if cand[0] > best[0]:
            best = cand
    return best
