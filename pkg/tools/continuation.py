"""Homotopy continuation for triangular braid models.

Seed: at a degenerate parameter point the m-dimensional module is an
extension of two known smaller models; the coupling block satisfies linear
equations.  The seed is converted to triangular-pair coordinates and tracked
numerically to a generic rational point, where the solution is polished and
reconstructed exactly.
"""
from fractions import Fraction

import mpmath as mp
import numpy as np
import sympy as sp

from braid_solver import triangular_ansatz
from newton_solve import build_system, polish_mpmath, to_fraction


def block_extension(A_top, B_top, A_bot, B_bot, rng=None):
    """A braid pair [[top,0],[X,bot]] with a random valid coupling (numeric)."""
    t = A_top.shape[0]
    b = A_bot.shape[0]
    # unknowns: XA, XB each b x t; equations from ABA = BAB lower-left block
    import itertools
    nunk = 2 * b * t
    rows = []
    # build linear map: X -> (XA B2 A2 + A3 XB A2 + A3 B3 XA) - (XB A2 B2 + B3 XA B2 + B3 A3 XB)
    def apply(XA, XB):
        lhs = XA @ B_top @ A_top + A_bot @ XB @ A_top + A_bot @ B_bot @ XA
        rhs = XB @ A_top @ B_top + B_bot @ XA @ B_top + B_bot @ A_bot @ XB
        return lhs - rhs
    basis = []
    for which in (0, 1):
        for i in range(b):
            for j in range(t):
                XA = np.zeros((b, t)); XB = np.zeros((b, t))
                (XA if which == 0 else XB)[i, j] = 1.0
                basis.append(apply(XA, XB).reshape(-1))
    M = np.array(basis).T  # (b*t) x nunk
    # kernel via SVD
    u, s, vt = np.linalg.svd(M)
    null = vt[np.sum(s > 1e-9 * s[0]):].T if len(s) else vt.T
    if null.shape[1] == 0:
        raise RuntimeError("no coupling found")
    rng = rng or np.random.default_rng(0)
    coeff = rng.normal(size=null.shape[1])
    x = null @ coeff
    XA = x[: b * t].reshape(b, t)
    XB = x[b * t:].reshape(b, t)
    A = np.block([[A_top, np.zeros((t, b))], [XA, A_bot]])
    B = np.block([[B_top, np.zeros((t, b))], [XB, B_bot]])
    return A, B


def triangular_coordinates(S1, S2, diag):
    """Find g with g^-1 S1 g lower-triangular (diag order `diag`) and
    g^-1 S2 g upper-triangular (reversed diag); numeric."""
    m = S1.shape[0]
    evals1, vecs1 = np.linalg.eig(S1)
    evals2, vecs2 = np.linalg.eig(S2)

    def eigspace(evals, vecs, lam):
        idx = [i for i, e in enumerate(evals) if abs(e - lam) < 1e-6 * (1 + abs(lam))]
        return vecs[:, idx]

    cols: list[np.ndarray] = []
    for j in range(1, m + 1):
        # e_j in span(eigvecs of S1 for diag[j-1..]) meet span(eigvecs of S2 for reversed diag[..j])
        va = np.concatenate([eigspace(evals1, vecs1, complex(diag[i])) for i in range(j - 1, m)], axis=1)
        vb = np.concatenate([eigspace(evals2, vecs2, complex(diag[m - i])) for i in range(1, j + 1)], axis=1)
        # intersection via nullspace of [va, -vb]
        M = np.concatenate([va, -vb], axis=1)
        u, s, vt = np.linalg.svd(M)
        k = int(np.sum(s > 1e-8 * s[0]))
        ndim = M.shape[1] - k
        if ndim == 0:
            raise RuntimeError(f"flags not transversal at column {j}")
        # choose an intersection vector independent from previous columns
        best, best_res = None, -1.0
        prev = np.array(cols).T if cols else None
        for row in vt[k:]:
            cand = va @ row[: va.shape[1]]
            norm = np.linalg.norm(cand)
            if norm < 1e-10:
                continue
            cand = cand / norm
            if prev is not None:
                proj = prev @ np.linalg.lstsq(prev, cand, rcond=None)[0]
                res = np.linalg.norm(cand - proj)
            else:
                res = 1.0
            if res > best_res:
                best, best_res = cand, res
        if best is None or best_res < 1e-8:
            raise RuntimeError(f"degenerate flag intersection at column {j}")
        cols.append(best)
    g = np.array(cols).T
    A = np.linalg.solve(g, S1 @ g)
    B = np.linalg.solve(g, S2 @ g)
    return A, B


def normalize_gauge(A, B):
    """Diagonal conjugation making A's subdiagonal all ones."""
    m = A.shape[0]
    d = [1.0 + 0j]
    for i in range(1, m):
        d.append(d[-1] * A[i, i - 1])
    D = np.diag(d)
    Di = np.diag([1.0 / x for x in d])
    return Di @ A @ D, Di @ B @ D


def unknown_vector(A, B, unk):
    vals = {}
    m = A.shape[0]
    for i in range(m):
        for j in range(m):
            if i > j + 1:
                vals[f"a{i}{j}"] = A[i, j]
            elif i < j:
                vals[f"c{i}{j}"] = B[i, j]
    return np.array([vals[str(u)] for u in unk])


def track(diag_path, x0, verbose=True):
    """Newton-track the triangular solution along a list of diagonal tuples."""
    x = np.array(x0, dtype=complex)
    for step, diag in enumerate(diag_path):
        A, B, unk, eqs, f_np, j_np, f_mp, j_mp = build_system(diag)
        for it in range(80):
            fv = np.array(f_np(list(x)), dtype=complex)
            jv = np.array(j_np(list(x)), dtype=complex)
            dx = np.linalg.lstsq(jv, -fv, rcond=None)[0]
            x = x + dx
            if np.max(np.abs(dx)) < 1e-12 * (1 + np.max(np.abs(x))):
                break
        resid = np.max(np.abs(np.array(f_np(list(x)), dtype=complex)))
        if verbose:
            print(f"  step {step}: residual {resid:.2e}", flush=True)
        if not np.isfinite(resid) or resid > 1e-2 * (1 + np.max(np.abs(x))) ** 3:
            raise RuntimeError(f"tracking lost at step {step}")
    return x


def exact_at(diag, x, dps=80):
    A, B, unk, eqs, f_np, j_np, f_mp, j_mp = build_system(diag)
    xs = polish_mpmath(f_mp, j_mp, x, dps=dps)
    if xs is None:
        return None
    fracs = [to_fraction(v) for v in xs]
    if any(f is None for f in fracs):
        return None
    sol = {u: sp.Rational(f.numerator, f.denominator) for u, f in zip(unk, fracs)}
    if all(sp.simplify(e.subs(sol)) == 0 for e in eqs):
        return A, B, unk, sol
    return None
