#!/usr/bin/env python3
"""Regenerates the benchmark model files under models/.

The truss benchmarks are small enough to write by hand; the frame and arch
meshes are emitted here so node coordinates stay consistent with the stated
geometry. Run from the repository root:

    python3 scripts/gen_benchmarks.py
"""

import math
import os

OUT = os.path.join(os.path.dirname(__file__), os.pardir, "models")


def fmt(x: float) -> str:
    return repr(float(x))


def write(name: str, text: str) -> None:
    path = os.path.join(OUT, name)
    with open(path, "w", newline="\n") as f:
        f.write(text)
    print("wrote", path)


def planar_truss3(e1: float, tag: str, dlambda: float, nmax: int) -> None:
    # Two unit bars from the base supports meet at the apex (3-4-5
    # proportions); a third unit bar continues straight up to the loaded
    # node. L0 = A = E2 = 1 for the pair; E1 belongs to the top bar.
    lines = ["# three-member planar truss, engineering strain"]
    lines.append("# apex bar pair E2=1, top bar E1=%s" % fmt(e1))
    lines.append("nodes")
    lines.append("0 -0.59999999999999998 0.0 0.0")
    lines.append("1 0.59999999999999998 0.0 0.0")
    lines.append("2 0.0 0.80000000000000004 0.0")
    lines.append("3 0.0 1.8 0.0")
    lines.append("end")
    lines.append("")
    lines.append("elements")
    lines.append("truss engineering 0 2 A=1.0 E=1.0")
    lines.append("truss engineering 1 2 A=1.0 E=1.0")
    lines.append("truss engineering 2 3 A=1.0 E=%s" % fmt(e1))
    lines.append("end")
    lines.append("")
    lines.append("supports")
    lines.append("0 x y z")
    lines.append("1 x y z")
    lines.append("2 x z")
    lines.append("3 x z")
    lines.append("end")
    lines.append("")
    lines.append("loads")
    lines.append("3 y -1.0")
    lines.append("end")
    lines.append("")
    lines.append("monitors")
    lines.append("3 y")
    lines.append("2 y")
    lines.append("end")
    lines.append("")
    lines.append("solver")
    lines.append("psi 1.0")
    lines.append("dlambda %s" % fmt(dlambda))
    lines.append("epsilon 1e-06")
    lines.append("kmax 10")
    lines.append("nmax %d" % nmax)
    lines.append("end")
    write("planartruss3_%s.model" % tag, "\n".join(lines) + "\n")


def space_truss12() -> None:
    # Shallow two-tier pyramid: apex over a square of four free ring nodes,
    # braced down to four corner supports. A = E = 1, Green-Lagrange strain,
    # vertical point load at the apex.
    c = 2.5    # ring half-diagonal footprint
    d = 5.0    # support half-diagonal footprint
    h1 = 1.0   # ring height
    h2 = 2.0   # apex height
    nodes = [
        (0, 0.0, 0.0, h2),
        (1, c, c, h1),
        (2, -c, c, h1),
        (3, -c, -c, h1),
        (4, c, -c, h1),
        (5, d, d, 0.0),
        (6, -d, d, 0.0),
        (7, -d, -d, 0.0),
        (8, d, -d, 0.0),
    ]
    bars = [(0, 1), (0, 2), (0, 3), (0, 4),
            (1, 2), (2, 3), (3, 4), (4, 1),
            (1, 5), (2, 6), (3, 7), (4, 8)]
    lines = ["# twelve-member space truss, Green-Lagrange strain"]
    lines.append("nodes")
    for n in nodes:
        lines.append("%d %s %s %s" % (n[0], fmt(n[1]), fmt(n[2]), fmt(n[3])))
    lines.append("end")
    lines.append("")
    lines.append("elements")
    for a, b in bars:
        lines.append("truss green %d %d A=1.0 E=1.0" % (a, b))
    lines.append("end")
    lines.append("")
    lines.append("supports")
    for nid in (5, 6, 7, 8):
        lines.append("%d x y z" % nid)
    lines.append("end")
    lines.append("")
    lines.append("loads")
    lines.append("0 z -1.0")
    lines.append("end")
    lines.append("")
    lines.append("monitors")
    lines.append("0 z")
    lines.append("1 x")
    lines.append("end")
    lines.append("")
    lines.append("solver")
    lines.append("psi 1.0")
    lines.append("dlambda 0.025")
    lines.append("epsilon 1e-06")
    lines.append("kmax 10")
    lines.append("nmax 100")
    lines.append("end")
    write("spacetruss12.model", "\n".join(lines) + "\n")


def lee_frame() -> None:
    # L-shaped frame, 120 cm column and 120 cm girder, pinned at both far
    # ends. The point load sits on the girder 24 cm from the corner. Twenty
    # elements of 12 cm; the load lands exactly on node 12.
    lines = ["# Lee frame, 20 beam-column elements"]
    lines.append("nodes")
    nid = 0
    for i in range(11):
        lines.append("%d %s %s 0.0" % (nid, fmt(0.0), fmt(12.0 * i)))
        nid += 1
    for j in range(1, 11):
        lines.append("%d %s %s 0.0" % (nid, fmt(12.0 * j), fmt(120.0)))
        nid += 1
    lines.append("end")
    lines.append("")
    lines.append("elements")
    for e in range(20):
        lines.append("beam %d %d A=6.0 I=2.0 E=720.0 nu=0.29999999999999999 kappa=1.0"
                     % (e, e + 1))
    lines.append("end")
    lines.append("")
    lines.append("supports")
    lines.append("0 x y")
    lines.append("20 x y")
    lines.append("end")
    lines.append("")
    lines.append("loads")
    lines.append("12 y -1.0")
    lines.append("end")
    lines.append("")
    lines.append("monitors")
    lines.append("12 x")
    lines.append("12 y")
    lines.append("end")
    lines.append("")
    lines.append("solver")
    lines.append("psi 1.0")
    lines.append("dlambda 0.5")
    lines.append("epsilon 1e-06")
    lines.append("kmax 10")
    lines.append("nmax 50")
    lines.append("end")
    write("leeframe.model", "\n".join(lines) + "\n")


def arch_215() -> None:
    # 215-degree circular arch, R = 100 cm, hinged at the first end and
    # clamped at the other, crown point load. 60 elements; node 30 sits
    # exactly at the crown.
    r = 100.0
    n_el = 60
    lines = ["# hinged-clamped 215 degree arch, 60 beam-column elements"]
    lines.append("nodes")
    for i in range(n_el + 1):
        theta = math.radians(-17.5 + 215.0 * i / n_el)
        lines.append("%d %s %s 0.0" % (i, fmt(r * math.cos(theta)), fmt(r * math.sin(theta))))
    lines.append("end")
    lines.append("")
    lines.append("elements")
    for e in range(n_el):
        lines.append("beam %d %d A=2.29 I=1.0 E=1000000.0 nu=0.0 kappa=1.0" % (e, e + 1))
    lines.append("end")
    lines.append("")
    lines.append("supports")
    lines.append("0 x y")
    lines.append("%d x y rot" % n_el)
    lines.append("end")
    lines.append("")
    lines.append("loads")
    lines.append("30 y -1.0")
    lines.append("end")
    lines.append("")
    lines.append("monitors")
    lines.append("30 x")
    lines.append("30 y")
    lines.append("end")
    lines.append("")
    lines.append("solver")
    lines.append("psi 1.0")
    lines.append("dlambda 50.0")
    lines.append("epsilon 1e-06")
    lines.append("kmax 10")
    lines.append("nmax 120")
    lines.append("end")
    write("arch215.model", "\n".join(lines) + "\n")


def semicircular_arch(offset_nodes: int, tag: str, dlambda: float, nmax: int) -> None:
    # Semi-circular arch, R = 127 cm, hinged at both ends, 50 elements.
    # offset_nodes = 0 loads the crown; 1 loads the node one element arc
    # (pi/50) past the crown, which breaks the symmetry.
    r = 127.0
    n_el = 50
    load_node = n_el // 2 + offset_nodes
    lines = ["# semi-circular hinged arch, 50 beam-column elements"]
    lines.append("nodes")
    for i in range(n_el + 1):
        theta = math.pi * i / n_el
        lines.append("%d %s %s 0.0" % (i, fmt(r * math.cos(theta)), fmt(r * math.sin(theta))))
    lines.append("end")
    lines.append("")
    lines.append("elements")
    for e in range(n_el):
        lines.append("beam %d %d A=64.519999999999996 I=41.619999999999997 "
                     "E=0.13780000000000001 nu=0.5 kappa=1.0" % (e, e + 1))
    lines.append("end")
    lines.append("")
    lines.append("supports")
    lines.append("0 x y")
    lines.append("%d x y" % n_el)
    lines.append("end")
    lines.append("")
    lines.append("loads")
    lines.append("%d y -1.0" % load_node)
    lines.append("end")
    lines.append("")
    lines.append("monitors")
    lines.append("%d x" % load_node)
    lines.append("%d y" % load_node)
    lines.append("end")
    lines.append("")
    lines.append("solver")
    lines.append("psi 1.0")
    lines.append("dlambda %s" % fmt(dlambda))
    lines.append("epsilon 1e-06")
    lines.append("kmax 10")
    lines.append("nmax %d" % nmax)
    lines.append("end")
    write("semicircarch_%s.model" % tag, "\n".join(lines) + "\n")


def main() -> None:
    os.makedirs(OUT, exist_ok=True)
    planar_truss3(10.0, "e10", 0.025, 50)
    planar_truss3(2.0, "e2", 0.025, 50)
    planar_truss3(0.75, "e0p75", 0.025, 50)
    planar_truss3(0.5, "e0p5", 0.025, 50)
    space_truss12()
    lee_frame()
    arch_215()
    semicircular_arch(0, "sym", 1e-3, 400)
    semicircular_arch(1, "asym", 1e-3, 600)


if __name__ == "__main__":
    main()
