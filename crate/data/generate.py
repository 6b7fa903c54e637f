"""Regenerates the shipped data files in this directory.

Run from anywhere: python3 data/generate.py
"""

import json
import os
from math import comb

HERE = os.path.dirname(os.path.abspath(__file__))


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transvection(n, i, j):
    m = identity(n)
    m[i][j] = 1
    return m


def cycle(n):
    # row i is e_{i+1}: e_i -> e_{i+1}
    return [[int(j == (i + 1) % n) for j in range(n)] for i in range(n)]


def gl_gens(n):
    return [transvection(n, 0, 1), cycle(n)]


def block(a, d, c=None):
    m, k = len(a), len(d)
    n = m + k
    out = identity(n)
    for i in range(m):
        for j in range(m):
            out[i][j] = a[i][j]
    for i in range(k):
        for j in range(k):
            out[m + i][m + j] = d[i][j]
    return out


def text(m):
    return "GF2 %d %d\n" % (len(m), len(m[0])) + "".join("".join(map(str, r)) + "\n" for r in m)


def gl_order(n):
    o = 1
    for i in range(n):
        o *= 2**n - 2**i
    return o


def gauss(n, m):
    num = den = 1
    for i in range(m):
        num *= 2 ** (n - i) - 1
        den *= 2 ** (m - i) - 1
    return num // den


def parabolic(n, m):
    """Generators of the stabilizer of <e_1..e_m> under v -> v g (lower block triangular)."""
    gens = []
    if m >= 2:
        gens += [block(g, identity(n - m)) for g in gl_gens(m)]
    else:
        gens.append(identity(n))
    if n - m >= 2:
        gens += [block(identity(m), g) for g in gl_gens(n - m)]
    gens.append(transvection(n, m, 0))
    return gens


def poly_mod(a, p):
    while a.bit_length() >= p.bit_length():
        a ^= p << (a.bit_length() - p.bit_length())
    return a


def poly_mul(a, b, p):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return poly_mod(r, p)


def coeff_row(a, n):
    return [(a >> i) & 1 for i in range(n)]


def singer_normalizer(n, p):
    # basis 1, x, ..., x^{n-1}; multiplication by x and squaring
    mult = [coeff_row(poly_mod(1 << (i + 1), p), n) for i in range(n)]
    frob = [coeff_row(poly_mod(poly_mul(1 << i, 1 << i, p), p), n) for i in range(n)]
    return [mult, frob]


def l7_dataset():
    n = 7
    order = gl_order(n)
    classes = []
    for m in range(1, n):
        classes.append(
            {
                "label": "P%d" % m,
                "class_size": str(gauss(n, m)),
                "module_tag": "wedge3",
                "gens": [text(g) for g in parabolic(n, m)],
            }
        )
    assert order % 889 == 0
    classes.append(
        {
            "label": "127:7",
            "class_size": str(order // 889),
            "module_tag": "wedge3",
            "gens": [text(g) for g in singer_normalizer(n, 0b10000011)],
        }
    )
    return {
        "group": "L7(2)",
        "order": str(order),
        "complete": True,
        "generators": [text(g) for g in gl_gens(n)],
        "classes": classes,
    }


def grp(name, gens, order, comment):
    n = len(gens[0])
    out = "# %s\nGF2GROUP %d %d order=%d name=%s module=natural\n" % (comment, n, len(gens), order, name)
    return out + "".join(text(g) for g in gens)


def mat_pow(m, e):
    n = len(m)
    r = identity(n)
    for _ in range(e):
        r = [[sum(r[i][k] & m[k][j] for k in range(n)) % 2 for j in range(n)] for i in range(n)]
    return r


def nz(d):
    return 2**d - 1


ALPHA = {
    "PSp4(9)": 612624,
    "L5(2)": 76479,
    "L8(2)": 10845467135,
    "O8+(2)": 521610,
    "O8-(2)": 1248652,
    "L9(2)": 18204373477974477121,
    "L10(2)": 935073229364399584692947,
    "Sp10(2)": 151633922695,
    "L11(2)": 34118520289259566683898930411622,
    "L12(2)": 1902312438544124209061463900701007697,
    "L13(2)": 2029650642403883210310724134646854692111646099,
    "L14(2)": 15558931967070790255179574153313525787726469722554,
    "Sp16(2)": 9309048668836568191706512832,
    "O16+(2)": 431792492092675316700367254,
}


def corollary(row, d, socle, module, alpha):
    return {
        "row": row, "d": d, "socle": socle, "module": module, "route": "corollary",
        "alpha": str(alpha),
        "expected": {"verdict": "notEP", "lhs": str(nz(d // 2) * alpha), "rhs": str(nz(d))},
    }


def fvalue(row, d, socle, module, f, dataset=None):
    case = {"row": row, "d": d, "socle": socle, "module": module, "route": "fvalue"}
    if dataset:
        case["dataset"] = dataset
    case["expected"] = {"verdict": "notEP", "f": str(f)}
    return case


def refined(row, d, socle, module, parts, alpha=None):
    total = sum(nz(p["cap_dim"]) * int(p["count"]) for p in parts)
    case = {"row": row, "d": d, "socle": socle, "module": module, "route": "refined"}
    if alpha is not None:
        case["alpha"] = str(alpha)
    case["parts"] = parts
    case["expected"] = {"verdict": "notEP", "sum": str(total), "rhs": str(nz(d))}
    return case


def spin(kind, r, t):
    return {"kind": kind, "r": r, "t": t}


def registry():
    cases = [
        corollary(1, 40, "PSp4(9)", "Weil", ALPHA["PSp4(9)"]),
        corollary(2, 40, "L5(2)", "L(l1+l2), L(l1+l3)", ALPHA["L5(2)"]),
        fvalue(3, 48, "Sp8(2)", "L(l3)", 11475),
        corollary(4, 48, "O8+(2)", "L(l1+l3)", ALPHA["O8+(2)"]),
        corollary(4, 48, "O8-(2)", "L(l1+l3)", ALPHA["O8-(2)"]),
        fvalue(5, 64, "Sp12(2)", "L(l2)", 6102339243),
        corollary(6, 70, "L8(2)", "L(l4)", ALPHA["L8(2)"]),
        fvalue(6, 70, "U8(2)", "L(l4)", 3923366139),
        corollary(7, 100, "Sp10(2)", "L(l3)", ALPHA["Sp10(2)"]),
        fvalue(8, 126, "L9(2)", "L(l4)", 3309747),
        fvalue(9, 35, "L7(2)", "L(l3)", 11811, "l7_wedge3.mxl"),
        fvalue(9, 56, "L8(2)", "L(l3)", 97155),
        fvalue(9, 84, "L9(2)", "L(l3)", 18202348610724300355),
        fvalue(9, 120, "L10(2)", "L(l3)", 413104411638650042899395),
    ]
    for k in range(8, 14):
        name = "L%d(2)" % k
        parts = [{"cap_dim": comb(k - 3, 3) + 1, "count": str(ALPHA[name]), "witness": {"max_wedge": {"k": k}}}]
        cases.append(refined(9, comb(k, 3), name, "L(l3)", parts, ALPHA[name]))
    cases.append(corollary(9, 364, "L14(2)", "L(l3)", ALPHA["L14(2)"]))
    cases += [
        fvalue(10, 32, "Sp10(2)", "L(l5)", 75735),
        fvalue(10, 64, "Sp12(2)", "L(l6)", 4922775),
        refined(10, 128, "Sp14(2)", "L(l7)", [
            {"label": "Sp2(2^7).7", "cap_dim": 0, "count": "1902762402163023937536000"},
            {"label": "other", "cap_dim": 64, "count": "407915701794349"},
        ]),
        corollary(10, 256, "Sp16(2)", "L(l8)", ALPHA["Sp16(2)"]),
        fvalue(11, 32, "O12+(2)", "L(l5)", 1240917975),
        refined(11, 64, "O14+(2)", "L(l6)", [
            {"label": "M1", "cap_dim": 10, "count": "240862567876011",
             "witness": {"spin": spin("B", 7, [1, 2, 3, 4, 5, 6])}},
            {"label": "M2", "cap_dim": 16, "count": "166862538433514",
             "witness": {"spin": spin("B", 7, [0, 0, 0, 1, 2, 3])}},
        ]),
        refined(11, 128, "O16+(2)", "L(l7)", [
            {"cap_dim": 32, "count": str(ALPHA["O16+(2)"]),
             "witness": {"spin_max": [
                 spin("Deven", 7, [0, 0, 0, 0, 0, 1, 2, 3]),
                 spin("Deven", 7, [0, 0, 1, 1, 2, 2, 3, 3]),
                 spin("Deven", 5, [0, 0, 1, 1, 1, 2, 2, 2]),
             ]}},
        ], ALPHA["O16+(2)"]),
        corollary(11, 256, "O18+(2)", "L(l8)", 115583493125204258236922964476027),
    ]
    for row, d, socle, module in [
        (12, 27, "E6(2)", "L(l1)"),
        (13, 56, "E7(2)", "L(l1)"),
        (14, 78, "E6(2), 2E6(2)", "L(l2)"),
        (15, 132, "E7(2)", "L(l7)"),
        (16, 248, "E8(2)", "L(l1)"),
    ]:
        cases.append({"row": row, "d": d, "socle": socle, "module": module, "route": "out-of-scope"})
    return {"table_rows": 16, "cases": cases}


def main():
    def write(name, content):
        with open(os.path.join(HERE, name), "w") as fh:
            fh.write(content)

    write("l7_wedge3.mxl", json.dumps(l7_dataset(), indent=2) + "\n")
    write("table12.json", json.dumps(registry(), indent=2) + "\n")
    write("gl3_natural.grp", grp("GL3(2)", gl_gens(3), gl_order(3), "GL3(2) on its natural module"))
    write("gl4_natural.grp", grp("GL4(2)", gl_gens(4), gl_order(4), "GL4(2) on its natural module"))
    s7 = singer_normalizer(3, 0b1011)
    write("c7_singer.grp", grp("C7", [s7[0]], 7, "Singer cycle of GL3(2), x^3+x+1"))
    write("frob21.grp", grp("7:3", s7, 21, "Singer normalizer 7:3 in GL3(2)"))
    s15 = singer_normalizer(4, 0b10011)
    write("c15_singer.grp", grp("C15", [s15[0]], 15, "Singer cycle of GL4(2), x^4+x+1"))
    assert mat_pow(s15[0], 15) == identity(4) and mat_pow(s15[0], 5) != identity(4)


if __name__ == "__main__":
    main()
