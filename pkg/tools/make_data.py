"""Generate the shipped group data files from the derived closed-form models.

Model conventions (slot order = increasing parameter index):
  dim 1:  s1 = s2 = (u_j)
  dim 2:  A = [[p,0],[-p,q]], B = [[q,q],[0,p]]
  dim 3:  t = b1*b3 + b2^2
  dim 4:  square root y of b1*b2*b3*b4;  S = y + b2*b3, T = S + b1*b4
  dim 5:  fifth root r of b1..b5;  S = r^2+b2*b4, W = r^2+b3*r+b3^2,
          V = r^3+b2*b3*b4, U = r^3+b3*r^2+b2*b3*b4
  dim 6:  generated separately (m6 closed form), doubled parameter c

Root variables: u_i = v_i^M with M = 1, 2, 10.
"""
import itertools
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hecke3.cyclo import CycloNum
from hecke3.laurent import LaurentExpr
from hecke3 import repdata

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "hecke3", "data")


def mono(nv, coeff, **exps):
    e = [0] * nv
    for name, k in exps.items():
        e[int(name[1:]) - 1] = k
    return LaurentExpr.monomial(nv, coeff, tuple(e))


def var(nv, i, power=1):
    return LaurentExpr.variable(nv, i - 1, power)


def const(nv, q):
    return LaurentExpr.constant(nv, q)


def model1(nv, m_exp, j):
    u = var(nv, j, m_exp)
    return [[u]], [[u]]


def model2(nv, m_exp, i, j):
    p, q = var(nv, i, m_exp), var(nv, j, m_exp)
    z = LaurentExpr(nv)
    return [[p, z], [-p, q]], [[q, q], [z, p]]


def model3_mats(b1, b2, b3, nv):
    z = LaurentExpr(nv)
    one = const(nv, 1)
    t = b1 * b3 + b2 * b2
    A = [[b1, z, z], [one, b2, z], [b2, t, b3]]
    B = [[b3, -t, b2], [z, b2, -one], [z, z, b1]]
    return A, B


def model4_mats(b1, b2, b3, b4, y, nv):
    z = LaurentExpr(nv)
    one = const(nv, 1)
    S = y + b2 * b3
    T = S + b1 * b4
    yi = y ** -1
    A = [[b1, z, z, z],
         [one, b2, z, z],
         [b3, S, b3, z],
         [b2 * b3, b2 * T, T, b4]]
    B = [[b4, -T, b2 * T * yi, -b2 * b3 * yi],
         [z, b3, -S * yi, b3 * yi],
         [z, z, b2, -one],
         [z, z, z, b1]]
    return A, B


def model5_mats(b1, b2, b3, b4, b5, r, nv):
    z = LaurentExpr(nv)
    S = r * r + b2 * b4
    W = r * r + b3 * r + b3 * b3
    V = r ** 3 + b2 * b3 * b4
    U = r ** 3 + b3 * r * r + b2 * b3 * b4
    r2i, r4i = r ** -2, r ** -4
    b2i, b3i, b4i = b2 ** -1, b3 ** -1, b4 ** -1
    A = [[b1, z, z, z, z],
         [const(nv, 1), b2, z, z, z],
         [b4, S, b3, z, z],
         [b3 * b4, U, W, b4, z],
         [(b2 * b3 * b4) ** 2, b2 * b3 * S * V, b2 * W * V, S * V, b5]]
    B = [[b5, -S * V * b2i * b3i * b4i, W * V * b3i * b4i * r2i, -S * V * b4i * r4i, r4i],
         [z, b4, -W * r2i, U * r4i, -b2i * r4i],
         [z, z, b3, -S * r2i, b2i * b3i * r2i],
         [z, z, z, b2, -b2i * b3i * b4i],
         [z, z, z, z, b1]]
    return A, B


def fmt_matrix(tag, rows, names, out):
    for row in rows:
        out.append(f"{tag} ROW " + " , ".join(e.render(names) for e in row))


def schur_lines_g4(names, out, i, j, k, kind):
    """Schur factorization lines for G4 (i is the distinguished slot)."""
    def arg(**exps):
        return mono(3, CycloNum.one(), **exps).render(names)

    if kind == "1dim":
        out.append("SCHUR PRE 1")
        for other in (j, k):
            out.append(f"SCHUR FACTOR d=1 ARG " + arg(**{f"v{i}": 1, f"v{other}": -1}))
            out.append(f"SCHUR FACTOR d=6 ARG " + arg(**{f"v{i}": 1, f"v{other}": -1}))
        out.append("SCHUR FACTOR d=2 ARG " + arg(**{f"v{i}": 2, f"v{j}": -1, f"v{k}": -1}))
    elif kind == "2dim":
        # the pair is (i, j), k is the third slot
        pre = mono(3, CycloNum.from_rational(-1), **{f"v{j}": 2, f"v{k}": -2})
        out.append("SCHUR PRE " + pre.render(names))
        out.append("SCHUR FACTOR d=6 ARG " + arg(**{f"v{i}": 1, f"v{j}": -1}))
        out.append("SCHUR FACTOR d=2 ARG " + arg(**{f"v{i}": 1, f"v{j}": 1, f"v{k}": -2}))
        out.append("SCHUR FACTOR d=1 ARG " + arg(**{f"v{k}": 1, f"v{i}": -1}))
        out.append("SCHUR FACTOR d=1 ARG " + arg(**{f"v{k}": 1, f"v{j}": -1}))
    else:  # 3dim
        out.append("SCHUR PRE 1")
        for a, b, cc in ((1, 2, 3), (2, 1, 3), (3, 1, 2)):
            out.append(
                "SCHUR FACTOR d=2 ARG "
                + arg(**{f"v{b}": 1, f"v{cc}": 1, f"v{a}": -2})
            )


def make_g4():
    nv, m_exp = 3, 1
    names = ("v1", "v2", "v3")
    out = ["# Generic Hecke algebra data: G4 (three strands, cubic relation)"]
    out.append("GROUP k=3 NAME=G4 ORDER=24 ROOTEXP=1 VARS=v1,v2,v3")
    chars = [
        (1, "phi{1,0}", 1), (2, "phi{1,4}", 1), (3, "phi{1,8}", 1),
        (4, "phi{2,5}", 2), (5, "phi{2,3}", 2), (6, "phi{2,1}", 2),
        (7, "phi{3,2}", 3),
    ]
    pair_of = {4: (2, 3), 5: (1, 3), 6: (1, 2)}
    for idx, name, dim in chars:
        out.append(f"CHAR index={idx} name={name} dim={dim}")
        if dim == 1:
            a, b = model1(nv, m_exp, idx)
        elif dim == 2:
            a, b = model2(nv, m_exp, *pair_of[idx])
        else:
            u = [var(nv, i, m_exp) for i in (1, 2, 3)]
            a, b = model3_mats(*u, nv)
        fmt_matrix("S1", a, names, out)
        fmt_matrix("S2", b, names, out)
        if dim == 1:
            i = idx
            j, k = [x for x in (1, 2, 3) if x != i]
            schur_lines_g4(names, out, i, j, k, "1dim")
        elif dim == 2:
            i, j = pair_of[idx]
            k = [x for x in (1, 2, 3) if x not in (i, j)][0]
            schur_lines_g4(names, out, i, j, k, "2dim")
        else:
            schur_lines_g4(names, out, 1, 2, 3, "3dim")
    out.append("END")
    return "\n".join(out) + "\n"


def make_g8(sign15=-1):
    nv, m_exp = 4, 2
    names = ("v1", "v2", "v3", "v4")
    out = ["# Generic Hecke algebra data: G8 (three strands, quartic relation)"]
    out.append("GROUP k=4 NAME=G8 ORDER=96 ROOTEXP=2 VARS=v1,v2,v3,v4")
    pairs = list(itertools.combinations((1, 2, 3, 4), 2))
    idx = 0
    for j in range(1, 5):
        idx += 1
        out.append(f"CHAR index={idx} name=phi{idx} dim=1")
        a, b = model1(nv, m_exp, j)
        fmt_matrix("S1", a, names, out)
        fmt_matrix("S2", b, names, out)
    for (i, j) in pairs:
        idx += 1
        out.append(f"CHAR index={idx} name=phi{idx} dim=2")
        a, b = model2(nv, m_exp, i, j)
        fmt_matrix("S1", a, names, out)
        fmt_matrix("S2", b, names, out)
    for omit in (1, 2, 3, 4):
        idx += 1
        triple = [x for x in (1, 2, 3, 4) if x != omit]
        out.append(f"CHAR index={idx} name=phi{idx} dim=3")
        u = [var(nv, i, m_exp) for i in triple]
        a, b = model3_mats(*u, nv)
        fmt_matrix("S1", a, names, out)
        fmt_matrix("S2", b, names, out)
    for sign in (sign15, -sign15):
        idx += 1
        out.append(f"CHAR index={idx} name=phi{idx} dim=4")
        u = [var(nv, i, m_exp) for i in (1, 2, 3, 4)]
        y = LaurentExpr.monomial(nv, CycloNum.from_rational(sign), (1, 1, 1, 1))
        a, b = model4_mats(*u, y, nv)
        fmt_matrix("S1", a, names, out)
        fmt_matrix("S2", b, names, out)
    out.append("END")
    return "\n".join(out) + "\n"


def write(name, text):
    path = os.path.join(OUT, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print("wrote", path)


if __name__ == "__main__":
    write("g4.dat", make_g4())
    write("g8.dat", make_g8())
    # validate
    for g in ("G4", "G8"):
        data = repdata.load_group(g, refresh=True)
        print(g, "validated:", len(data.models), "models,",
              len(data.schur), "Schur factorizations")
