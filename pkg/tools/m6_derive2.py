"""Derive the 6-dimensional model: triangular extension seed + continuation.

Seed at c^4 + a*b*d*e = 0 (so r = -c): S1 = [[A5,0],[x,c]] lower triangular,
S2 = diag(B5, c) upper triangular, with x in the joint kernel of the braid
row condition x (B5 A5 - c B5 + c^2 I) = 0 and the squarefree charpoly rows.
Diagonal orders: diag(S1) = (a,b,c,d,e,c), diag(S2) = (e,d,c,b,a,c).
"""
from fractions import Fraction

import numpy as np
import sympy as sp

from newton_solve import polish_mpmath, to_fraction


def model5_sym(b1, b2, b3, b4, b5, r):
    S = r**2 + b2*b4
    W = r**2 + b3*r + b3**2
    V = r**3 + b2*b3*b4
    U = r**3 + b3*r**2 + b2*b3*b4
    A = sp.Matrix([
        [b1, 0, 0, 0, 0],
        [1, b2, 0, 0, 0],
        [b4, S, b3, 0, 0],
        [b3*b4, U, W, b4, 0],
        [(b2*b3*b4)**2, b2*b3*S*V, b2*W*V, S*V, b5]])
    B = sp.Matrix([
        [b5, -S*V/(b2*b3*b4), W*V/(b3*b4*r**2), -S*V/(b4*r**4), 1/r**4],
        [0, b4, -W/r**2, U/r**4, -1/(b2*r**4)],
        [0, 0, b3, -S/r**2, 1/(b2*b3*r**2)],
        [0, 0, 0, b2, -1/(b2*b3*b4)],
        [0, 0, 0, 0, b1]])
    return A, B


def seed_extension(a, b, c, d, e):
    """Exact rational seed at the c^4 + abde = 0 locus (r = -c)."""
    r = -c
    A5, B5 = model5_sym(a, b, c, d, e, r)
    A5 = sp.Matrix(A5).applyfunc(sp.nsimplify)
    B5 = sp.Matrix(B5).applyfunc(sp.nsimplify)
    I5 = sp.eye(5)
    x = sp.Matrix([[sp.Symbol(f"x{i}") for i in range(5)]])
    conds = []
    # braid: x (B5 A5 - c B5 + c^2) = 0
    M = B5 * A5 - c * B5 + c * c * I5
    conds += list(x * M)
    # squarefree charpoly of S1 = [[A5,0],[x,c]]: lower-left row of prod(S1-u)
    S1 = sp.zeros(6)
    S1[:5, :5] = A5
    S1[5, 5] = c
    for j in range(5):
        S1[5, j] = x[j]
    P = sp.eye(6)
    for u in (a, b, c, d, e):
        P = P * (S1 - u * sp.eye(6))
    conds += [sp.expand(P[5, j]) for j in range(5)]
    xs = sp.symbols("x0 x1 x2 x3 x4")
    conds = [sp.expand(cnd) for cnd in conds]
    conds = [cnd for cnd in conds if cnd != 0]
    Amat, rhs = sp.linear_eq_to_matrix(conds, xs)
    null = Amat.nullspace()
    if not null:
        return None
    free = sum(null, sp.zeros(5, 1))
    # pick a nonzero rational point in the solution space
    subs = {s: 1 for s in free.free_symbols}
    vec = [sp.nsimplify(v.subs(subs)) for v in free]
    if all(v == 0 for v in vec):
        return None
    S1 = S1.subs(dict(zip(xs, vec)))
    S2 = sp.zeros(6)
    S2[:5, :5] = B5
    S2[5, 5] = c
    return S1, S2


def build_system6(diag_a, diag_b, distinct_values):
    m = 6
    unknowns = []
    A = sp.zeros(m)
    B = sp.zeros(m)
    for i in range(m):
        A[i, i] = sp.nsimplify(diag_a[i])
        B[i, i] = sp.nsimplify(diag_b[i])
    for i in range(m):
        for j in range(m):
            if i == j + 1:
                A[i, j] = 1
            elif i > j:
                s = sp.Symbol(f"a{i}{j}")
                A[i, j] = s
                unknowns.append(s)
            elif i < j:
                s = sp.Symbol(f"c{i}{j}")
                B[i, j] = s
                unknowns.append(s)
    E = sp.expand(A * B * A - B * A * B)
    eqs = [E[i, j] for i in range(m) for j in range(m) if E[i, j] != 0]
    for M in (A, B):
        P = sp.eye(m)
        for u in distinct_values:
            P = P * (M - sp.nsimplify(u) * sp.eye(m))
        P = sp.expand(P)
        eqs += [P[i, j] for i in range(m) for j in range(m) if P[i, j] != 0]
    J = sp.Matrix([[sp.diff(e, u) for u in unknowns] for e in eqs])
    f_np = sp.lambdify([unknowns], eqs, "numpy")
    j_np = sp.lambdify([unknowns], J, "numpy")
    f_mp = sp.lambdify([unknowns], eqs, "mpmath")
    j_mp = sp.lambdify([unknowns], J, "mpmath")
    return A, B, unknowns, eqs, f_np, j_np, f_mp, j_mp


def gauge_normalize_pair(S1, S2):
    """Diagonal conjugation making S1's subdiagonal all ones (exact)."""
    m = S1.shape[0]
    d = [sp.Integer(1)]
    for i in range(1, m):
        d.append(sp.nsimplify(d[-1] * S1[i, i - 1]))
    D = sp.diag(*d)
    Di = sp.diag(*[1 / x for x in d])
    return sp.simplify(Di * S1 * D), sp.simplify(Di * S2 * D)


def unknown_vector6(A, B, unk):
    vals = {}
    m = 6
    for i in range(m):
        for j in range(m):
            if i > j + 1:
                vals[f"a{i}{j}"] = complex(A[i, j])
            elif i < j:
                vals[f"c{i}{j}"] = complex(B[i, j])
    return np.array([vals[str(u)] for u in unk])


def main():
    a0, b0, c0, d0 = sp.Rational(2), sp.Rational(3), sp.Rational(5), sp.Rational(4)
    e0 = -c0**4 / (a0 * b0 * d0)
    got = seed_extension(a0, b0, c0, d0, e0)
    if got is None:
        raise SystemExit("no extension kernel at seed point")
    S1, S2 = got
    # verify exactly
    resid = sp.expand(S1 * S2 * S1 - S2 * S1 * S2)
    assert all(sp.simplify(resid[i, j]) == 0 for i in range(6) for j in range(6)), "seed braid fails"
    print("seed braid OK", flush=True)
    if any(S1[i, i - 1] == 0 for i in range(1, 6)):
        raise SystemExit("zero subdiagonal in seed")
    S1n, S2n = gauge_normalize_pair(S1, S2)
    diag_a0 = [a0, b0, c0, d0, e0, c0]
    diag_b0 = [e0, d0, c0, b0, a0, c0]
    A_, B_, unk, eqs, f_np, j_np, f_mp, j_mp = build_system6(diag_a0, diag_b0, [a0, b0, c0, d0, e0])
    x0 = unknown_vector6(S1n, S2n, unk)
    print("seed residual:", np.max(np.abs(np.array(f_np(list(x0)), dtype=complex))), flush=True)

    # only e moves: from e0 to 6, around zero through the complex plane
    e_path = [complex(e0)]
    steps = 160
    for s in range(1, steps + 1):
        t = s / steps
        e_path.append((1 - t) * complex(e0) + t * 6.0 + 14j * np.sin(np.pi * t))
    x = x0
    prev = np.array(x0, dtype=complex)
    s = 1
    while s < len(e_path):
        ev = e_path[s]
        p = [complex(a0), complex(b0), complex(c0), complex(d0), ev]
        da = [p[0], p[1], p[2], p[3], p[4], p[2]]
        db = [p[4], p[3], p[2], p[1], p[0], p[2]]
        A_, B_, unk, eqs, f_np, j_np, f_mp, j_mp = build_system6(da, db, list(p))
        x_try = np.array(x, dtype=complex)
        for it in range(60):
            fv = np.array(f_np(list(x_try)), dtype=complex)
            jv = np.array(j_np(list(x_try)), dtype=complex)
            dx = np.linalg.lstsq(jv, -fv, rcond=None)[0]
            x_try = x_try + dx
            if np.max(np.abs(dx)) < 1e-12 * (1 + np.max(np.abs(x_try))):
                break
        resid = np.max(np.abs(np.array(f_np(list(x_try)), dtype=complex)))
        scale = (1.0 + np.max(np.abs(x_try)))
        if not np.isfinite(resid) or resid > 1e-5 * scale**3:
            # bisect the step
            mid = (e_path[s - 1] + e_path[s]) / 2
            e_path.insert(s, mid)
            if len(e_path) > 3000:
                raise SystemExit(f"tracking stalled near e = {ev}")
            continue
        x = x_try
        s += 1
        if s % 20 == 0:
            print(f"  node {s}/{len(e_path)}: resid {resid:.2e} xmax {np.max(np.abs(x)):.2e}", flush=True)

    tgt = [sp.Rational(2), sp.Rational(3), sp.Rational(5), sp.Rational(4), sp.Rational(6)]
    da = [tgt[0], tgt[1], tgt[2], tgt[3], tgt[4], tgt[2]]
    db = [tgt[4], tgt[3], tgt[2], tgt[1], tgt[0], tgt[2]]
    A_, B_, unk, eqs, f_np, j_np, f_mp, j_mp = build_system6(da, db, tgt)
    xs = polish_mpmath(f_mp, j_mp, x, dps=100)
    if xs is None:
        raise SystemExit("polish failed")
    fracs = [to_fraction(v) for v in xs]
    if any(f is None for f in fracs):
        bad = [i for i, f in enumerate(fracs) if f is None]
        print("non-rational entries at:", [str(unk[i]) for i in bad])
        for i in bad[:6]:
            print("   ", unk[i], "=", sp.nstr if False else xs[i])
        raise SystemExit("reconstruction failed")
    sol = {u: sp.Rational(f.numerator, f.denominator) for u, f in zip(unk, fracs)}
    ok = all(sp.simplify(e.subs(sol)) == 0 for e in eqs)
    print("exact verification:", "OK" if ok else "FAILED")
    for k in unk:
        print(k, "=", sol[k], flush=True)


if __name__ == "__main__":
    main()
