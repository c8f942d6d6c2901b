"""Prototype: solve the braid equation for triangular model pairs with sympy.

Ansatz: A lower triangular with diagonal (b1..bm), B upper triangular with the
reversed diagonal, subdiagonal of A gauge-fixed.  Solve ABA = BAB by
triangular propagation: repeatedly pick an equation linear in one unknown.
"""
import sympy as sp


def solve_triangular(m, diag, gauge=None, verbose=True):
    n = m
    unknowns = []
    A = sp.zeros(n)
    B = sp.zeros(n)
    for i in range(n):
        A[i, i] = diag[i]
        B[i, i] = diag[n - 1 - i]
    for i in range(n):
        for j in range(n):
            if i > j:
                if gauge and (i, j) in gauge:
                    A[i, j] = gauge[(i, j)]
                else:
                    s = sp.Symbol(f"a{i}{j}")
                    A[i, j] = s
                    unknowns.append(s)
            elif i < j:
                s = sp.Symbol(f"b{i}{j}")
                B[i, j] = s
                unknowns.append(s)
    E = sp.expand(A * B * A - B * A * B)
    eqs = [E[i, j] for i in range(n) for j in range(n) if E[i, j] != 0]
    sol = {}

    def subs_all(ex):
        return sp.expand(sp.cancel(ex.subs(sol)))

    progress = True
    while unknowns and progress:
        progress = False
        eqs = [subs_all(e) for e in eqs]
        eqs = [e for e in eqs if e != 0]
        # prefer equations linear in a single remaining unknown
        for e in sorted(eqs, key=sp.count_ops):
            free = [u for u in unknowns if e.has(u)]
            if len(free) != 1:
                continue
            u = free[0]
            p = sp.Poly(e, u)
            if p.degree() != 1:
                continue
            c1, c0 = p.all_coeffs()
            if sp.simplify(c1) == 0:
                continue
            val = sp.cancel(-c0 / c1)
            sol[u] = val
            unknowns.remove(u)
            if verbose:
                print(f"  {u} = {val}")
            progress = True
            break
    eqs = [subs_all(e) for e in eqs]
    eqs = [e for e in eqs if e != 0]
    return A.subs(sol), B.subs(sol), unknowns, eqs, sol


if __name__ == "__main__":
    b1, b2, b3 = sp.symbols("b1 b2 b3", nonzero=True)
    print("=== m = 2 sanity (gauge a10 = -b1, matching the known model) ===")
    A, B, left, eqs, sol = solve_triangular(2, [b1, b2], gauge={(1, 0): -b1})
    print("A =", A.tolist()); print("B =", B.tolist())
    print("unresolved:", left, "residual:", eqs)

    print("=== m = 3, subdiagonal gauge = 1 ===")
    A, B, left, eqs, sol = solve_triangular(3, [b1, b2, b3], gauge={(1, 0): 1, (2, 1): 1})
    print("A =", A.tolist())
    print("B =", B.tolist())
    print("unresolved:", left)
    print("residual count:", len(eqs))
    for e in eqs[:6]:
        print("  resid:", sp.factor(e))
