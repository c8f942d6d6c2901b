"""Find exact rational solutions of the triangular braid system at a rational
parameter point: random-start Newton over C, mpmath polish, Fraction
reconstruction, exact verification."""
import random
from fractions import Fraction

import mpmath as mp
import numpy as np
import sympy as sp

from braid_solver import triangular_ansatz, braid_residual


def build_system(diag_values):
    A, B, unk = triangular_ansatz([sp.nsimplify(v) for v in diag_values])
    E = sp.expand(A * B * A - B * A * B)
    eqs = [E[i, j] for i in range(len(diag_values)) for j in range(len(diag_values)) if E[i, j] != 0]
    J = sp.Matrix([[sp.diff(e, u) for u in unk] for e in eqs])
    f_np = sp.lambdify([unk], eqs, "numpy")
    j_np = sp.lambdify([unk], J, "numpy")
    f_mp = sp.lambdify([unk], eqs, "mpmath")
    j_mp = sp.lambdify([unk], J, "mpmath")
    return A, B, unk, eqs, f_np, j_np, f_mp, j_mp


def newton_numpy(f, j, x0, steps=120, tol=None):
    x = np.array(x0, dtype=complex)
    if tol is None:
        tol = 1e-7 * (1.0 + np.max(np.abs(x))) ** 3
    for _ in range(steps):
        fv = np.array(f(list(x)), dtype=complex)
        jv = np.array(j(list(x)), dtype=complex)
        try:
            dx = np.linalg.lstsq(jv, -fv, rcond=None)[0]
        except np.linalg.LinAlgError:
            return None
        x = x + dx
        if np.max(np.abs(x)) > 1e14:
            return None
        if np.max(np.abs(dx)) < 1e-9 * (1.0 + np.max(np.abs(x))):
            break
    fv = np.array(f(list(x)), dtype=complex)
    scale = (1.0 + np.max(np.abs(x))) ** 3
    return x if np.max(np.abs(fv)) < 1e-6 * scale else None


def polish_mpmath(f, j, x, dps=60, steps=60):
    mp.mp.dps = dps
    xv = [mp.mpc(complex(v)) for v in x]
    for _ in range(steps):
        fv = mp.matrix(f(xv))
        jv = mp.matrix(j(xv))
        try:
            dx = mp.qr_solve(jv, -fv)[0]
        except Exception:
            return None
        xv = [a + b for a, b in zip(xv, dx)]
        if max(abs(v) for v in fv) < mp.mpf(10) ** (-dps + 12):
            return xv
    return None


def to_fraction(z, max_den=10**24, imag_tol=None):
    if imag_tol is None:
        imag_tol = mp.mpf(10) ** (-mp.mp.dps + 15)
    if abs(mp.im(z)) > imag_tol:
        return None
    fr = Fraction(str(mp.nstr(mp.re(z), mp.mp.dps - 10, strip_zeros=False))).limit_denominator(max_den)
    if abs(mp.re(z) - mp.mpf(fr.numerator) / mp.mpf(fr.denominator)) > imag_tol * 100:
        return None
    return fr


def rational_solutions(diag_values, tries=400, seed=0, scale=None, verbose=True):
    A, B, unk, eqs, f_np, j_np, f_mp, j_mp = build_system(diag_values)
    rng = random.Random(seed)
    if scale is None:
        scale = float(max(abs(complex(sp.nsimplify(v))) for v in diag_values))
    found = {}
    for t in range(tries):
        import math
        x0 = [
            complex(rng.gauss(0, 1), rng.gauss(0, 1))
            * math.exp(rng.uniform(-2.0, 1.0) + math.log(scale))
            for _ in unk
        ]
        x = newton_numpy(f_np, j_np, x0)
        if x is None:
            continue
        xs = polish_mpmath(f_mp, j_mp, x)
        if xs is None:
            continue
        fracs = [to_fraction(v) for v in xs]
        if any(f is None for f in fracs):
            continue
        sol = dict(zip(unk, [sp.Rational(f.numerator, f.denominator) for f in fracs]))
        # exact verification
        if all(sp.simplify(e.subs(sol)) == 0 for e in eqs):
            key = tuple(sorted((str(k), v) for k, v in sol.items()))
            if key not in found:
                found[key] = sol
                if verbose:
                    print(f"  exact solution #{len(found)} at try {t}")
    return A, B, unk, list(found.values())
