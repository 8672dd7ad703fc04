#!/usr/bin/env python3
"""Generates the bundled H2/STO-3G spin-orbital integral fixtures.

All integrals are closed-form s-type Gaussian formulas; for H2 the molecular
orbitals are fixed by symmetry (sigma_g, sigma_u), so no SCF iteration is
involved. Output follows the text integral format read by load_integrals:
g entries store <p,q|s,r> over blocked spin orbitals (0..N/2-1 up).

Usage: python3 make_h2_fixtures.py [outdir]
"""
import itertools
import math
import sys

# STO-3G hydrogen 1s: (exponent, contraction over normalized primitives)
STO3G_H = [
    (3.42525091, 0.15432897),
    (0.62391373, 0.53532814),
    (0.16885540, 0.44463454),
]

ANGSTROM_TO_BOHR = 1.0 / 0.52917721067


def boys0(x):
    if x < 1e-12:
        return 1.0 - x / 3.0
    return 0.5 * math.sqrt(math.pi / x) * math.erf(math.sqrt(x))


def prim_norm(a):
    return (2.0 * a / math.pi) ** 0.75


def s_overlap(a, ra, b, rb):
    p = a + b
    mu = a * b / p
    r2 = sum((x - y) ** 2 for x, y in zip(ra, rb))
    return (math.pi / p) ** 1.5 * math.exp(-mu * r2)


def s_kinetic(a, ra, b, rb):
    p = a + b
    mu = a * b / p
    r2 = sum((x - y) ** 2 for x, y in zip(ra, rb))
    return mu * (3.0 - 2.0 * mu * r2) * s_overlap(a, ra, b, rb)


def s_nuclear(a, ra, b, rb, rc, z):
    p = a + b
    mu = a * b / p
    r2 = sum((x - y) ** 2 for x, y in zip(ra, rb))
    rp = [(a * x + b * y) / p for x, y in zip(ra, rb)]
    pc2 = sum((x - y) ** 2 for x, y in zip(rp, rc))
    return -z * (2.0 * math.pi / p) * math.exp(-mu * r2) * boys0(p * pc2)


def s_eri(a, ra, b, rb, c, rc, d, rd):
    p = a + b
    q = c + d
    rp = [(a * x + b * y) / p for x, y in zip(ra, rb)]
    rq = [(c * x + d * y) / q for x, y in zip(rc, rd)]
    ab2 = sum((x - y) ** 2 for x, y in zip(ra, rb))
    cd2 = sum((x - y) ** 2 for x, y in zip(rc, rd))
    pq2 = sum((x - y) ** 2 for x, y in zip(rp, rq))
    kab = math.exp(-a * b / p * ab2)
    kcd = math.exp(-c * d / q * cd2)
    return (2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
            * kab * kcd * boys0(p * q / (p + q) * pq2))


def contracted(center):
    return [(a, c * prim_norm(a), center) for a, c in STO3G_H]


def ao_integrals(r_bohr):
    centers = [(0.0, 0.0, 0.0), (0.0, 0.0, r_bohr)]
    basis = [contracted(c) for c in centers]
    n = len(basis)

    def pairsum(f):
        out = [[0.0] * n for _ in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            out[i][j] = sum(ci * cj * f(ai, rai, aj, raj)
                            for ai, ci, rai in basis[i]
                            for aj, cj, raj in basis[j])
        return out

    s = pairsum(s_overlap)
    t = pairsum(s_kinetic)
    v = pairsum(lambda a, ra, b, rb: sum(s_nuclear(a, ra, b, rb, rc, 1.0) for rc in centers))
    eri = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        eri[(i, j, k, l)] = sum(
            c1 * c2 * c3 * c4 * s_eri(a1, r1, a2, r2, a3, r3, a4, r4)
            for a1, c1, r1 in basis[i]
            for a2, c2, r2 in basis[j]
            for a3, c3, r3 in basis[k]
            for a4, c4, r4 in basis[l])
    return s, t, v, eri


def mo_integrals(r_bohr):
    s, t, v, eri = ao_integrals(r_bohr)
    h = [[t[i][j] + v[i][j] for j in range(2)] for i in range(2)]
    # symmetry-adapted MOs: sigma_g, sigma_u
    ng = 1.0 / math.sqrt(2.0 * (1.0 + s[0][1]))
    nu = 1.0 / math.sqrt(2.0 * (1.0 - s[0][1]))
    mos = [[ng, ng], [nu, -nu]]  # mos[m][ao]

    hmo = [[sum(mos[m][i] * mos[n][j] * h[i][j]
                for i in range(2) for j in range(2)) for n in range(2)] for m in range(2)]
    erimo = {}
    for m, n, o, p in itertools.product(range(2), repeat=4):
        erimo[(m, n, o, p)] = sum(
            mos[m][i] * mos[n][j] * mos[o][k] * mos[p][l] * eri[(i, j, k, l)]
            for i, j, k, l in itertools.product(range(2), repeat=4))
    enuc = 1.0 / r_bohr
    return hmo, erimo, enuc


def write_fixture(path, r_angstrom):
    r = r_angstrom * ANGSTROM_TO_BOHR
    hmo, erimo, enuc = mo_integrals(r)
    nso = 4  # spin orbitals: 0,1 up; 2,3 down (spatial index = p % 2)
    lines = [
        f"# H2 / STO-3G at R = {r_angstrom} angstrom ({r:.10f} bohr)",
        "# spin orbitals 0..1 are spin-up, 2..3 spin-down; g entries are <p,q|s,r>",
        f"norb {nso}",
        "nelec 2",
        f"enuc {enuc:.16g}",
    ]
    spatial = lambda p: p % 2
    up = lambda p: p < 2
    for p in range(nso):
        for q in range(nso):
            if up(p) != up(q):
                continue
            val = hmo[spatial(p)][spatial(q)]
            if abs(val) > 1e-14:
                lines.append(f"h {p} {q} {val:.16g}")
    # g2(p,q,r,s) = <pq|sr> = (p s | q r) in chemists' AO notation
    for p, q, r_, s_ in itertools.product(range(nso), repeat=4):
        if up(p) != up(s_) or up(q) != up(r_):
            continue
        val = erimo[(spatial(p), spatial(s_), spatial(q), spatial(r_))]
        if abs(val) > 1e-14:
            lines.append(f"g {p} {q} {r_} {s_} {val:.16g}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {path}")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    for r in [0.5, 0.7414, 1.0, 1.5]:
        write_fixture(f"{outdir}/h2_sto3g_{r}.ints", r)


if __name__ == "__main__":
    main()
