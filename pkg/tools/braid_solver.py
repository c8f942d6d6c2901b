"""Solve ABA = BAB for triangular matrix pairs by propagation with branching.

A is lower triangular with prescribed diagonal, B upper triangular with the
reversed diagonal, A's subdiagonal gauge-fixed to 1.  Equations are examined
in factored form; factors linear in a single unknown are solved and
substituted.  When no such factor exists the shortest factorable equation
causes a case split.  Every leaf is returned; callers filter by validity
(irreducibility, diagonalizability) afterwards.
"""
import sympy as sp


def braid_residual(A, B):
    E = sp.expand(A * B * A - B * A * B)
    n = A.shape[0]
    eqs = []
    for i in range(n):
        for j in range(n):
            e = sp.numer(sp.together(E[i, j]))
            if e != 0:
                eqs.append(sp.factor(e))
    return eqs


def _unknown_factors(expr, unknowns):
    """Split a factored expression into (parameter-only, unknown-bearing) factors."""
    factors = sp.Mul.make_args(expr)
    par, unk = [], []
    for f in factors:
        base = f
        if isinstance(f, sp.Pow):
            base = f.base
        (unk if any(base.has(u) for u in unknowns) else par).append(f)
    return par, unk


def solve_system(eqs, unknowns, max_branches=64, verbose=False):
    """Return a list of completed substitution dicts."""
    results = []
    stack = [(list(eqs), dict(), list(unknowns))]
    while stack and len(results) < max_branches:
        eqs, sol, unk = stack.pop()
        dead = False
        while True:
            new_eqs = []
            for e in eqs:
                e = sp.factor(sp.expand(e.subs(sol)))
                if e == 0:
                    continue
                _, ufs = _unknown_factors(e, unk)
                if not ufs:
                    dead = True  # nonzero parameter-only residual
                    break
                new_eqs.append(sp.Mul(*ufs))
            if dead:
                break
            eqs = sorted(set(new_eqs), key=sp.count_ops)
            if not eqs:
                break
            progress = False
            for e in eqs:
                factors = [f.base if isinstance(f, sp.Pow) else f for f in sp.Mul.make_args(e)]
                if len(factors) > 1:
                    continue
                free = [u for u in unk if e.has(u)]
                if len(free) != 1:
                    continue
                p = sp.Poly(e, free[0])
                if p.degree() != 1:
                    continue
                c1, c0 = p.all_coeffs()
                if any(c1.has(u) for u in unk):
                    continue
                sol = dict(sol)
                sol[free[0]] = sp.cancel(-c0 / c1)
                unk = [u for u in unk if u is not free[0]]
                if verbose:
                    print(f"    {free[0]} = {sol[free[0]]}")
                progress = True
                break
            if progress:
                continue
            # branch on the factors of the shortest equation
            e = eqs[0]
            factors = sorted(
                {f.base if isinstance(f, sp.Pow) else f for f in sp.Mul.make_args(e)},
                key=sp.count_ops,
            )
            factors = [f for f in factors if any(f.has(u) for u in unk)]
            if verbose:
                print(f"  branching on {len(factors)} factors of: {e}")
            for f in factors:
                stack.append(([f] + eqs[1:], dict(sol), list(unk)))
            dead = True  # this node handled via children
            break
        if not dead and not unk:
            results.append(sol)
        elif not dead and unk:
            # leftover gauge-like freedom; record with remaining symbols
            results.append(sol)
    return results


def triangular_ansatz(diag, gauge_value=1):
    n = len(diag)
    unknowns = []
    A = sp.zeros(n)
    B = sp.zeros(n)
    for i in range(n):
        A[i, i] = diag[i]
        B[i, i] = diag[n - 1 - i]
    for i in range(n):
        for j in range(n):
            if i == j + 1:
                A[i, j] = gauge_value
            elif i > j:
                s = sp.Symbol(f"a{i}{j}")
                A[i, j] = s
                unknowns.append(s)
            elif i < j:
                s = sp.Symbol(f"c{i}{j}")
                B[i, j] = s
                unknowns.append(s)
    return A, B, unknowns
