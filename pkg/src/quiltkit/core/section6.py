"""Quilts behind the quantization of a Lagrangian correspondence and its defect.

A correspondence L01 between M0 and M1 gives a cylinder with one incoming puncture on M0
and one outgoing puncture on M1. Cutting it along the seam splits it into two halves with
a quilted end <L01, L01^t> in between. The quilted pairs of pants below compare how the
product on HF(M1) and the product on the quilted Floer group interact, the defect being
the difference of two quilted disks.

Patches sewn by L01 always carry their M0 side as side ``a``.
"""

import random
from typing import Dict, List, Sequence, Tuple

from quiltkit.core.graded import algebraic_trace, sub, tensor_map
from quiltkit.core.invariants import (
    DisjointUnion,
    GeneratorAssignment,
    Glue,
    Leaf,
    evaluate,
)
from quiltkit.core.quilt import (
    BoundaryCircle,
    Direction,
    EndRef,
    InteriorPuncture,
    MarkedPoint,
    Patch,
    PatchLabel,
    QuiltedSurface,
    Seam,
    SeamLabel,
    Side,
    combinatorial_eq,
    degree_shift,
    disjoint_union,
    extract_ends,
    find_end,
)
from quiltkit.core.sampling import random_graded_map, random_module
from quiltkit.core.surgery import glue, shrink_strip

IN, OUT = Direction.INCOMING, Direction.OUTGOING
M0 = PatchLabel("M0", 2)
M1 = PatchLabel("M1", 4)
M2 = PatchLabel("M2", 2)


def _patch(pid: str, label: PatchLabel, marks: Sequence[Tuple[str, Direction]] = (), **kw):
    circle = BoundaryCircle("c", tuple(MarkedPoint(m, d) for m, d in marks))
    return Patch(pid, label, (circle,), **kw)


def _seam(a: Tuple[str, ...], b: Tuple[str, ...], name: str = "L01") -> Seam:
    return Seam(Side(*a), Side(*b), SeamLabel(name))


def cylinder(
    m0: PatchLabel = M0, m1: PatchLabel = M1, seam: str = "L01", modulus: int = 8
) -> QuiltedSurface:
    """Two disks sewn along their boundary, in from M0 and out to M1"""
    p0 = _patch("P0", m0, interior=(InteriorPuncture("in", IN),))
    p1 = _patch("P1", m1, interior=(InteriorPuncture("out", OUT),))
    return QuiltedSurface(
        modulus=modulus,
        patches=(p0, p1),
        seams=(_seam(("P0", "c"), ("P1", "c"), seam),),
        incoming=(EndRef("P0", "in"),),
        outgoing=(EndRef("P1", "out"),),
    )


def psi_half(m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8) -> QuiltedSurface:
    """The incoming half of the cylinder, ending in <L01, L01^t>"""
    p0 = _patch("P0", m0, [("z", OUT)], interior=(InteriorPuncture("in", IN),))
    p1 = _patch("P1", m1, [("w", OUT)])
    return QuiltedSurface(
        modulus=modulus,
        patches=(p0, p1),
        seams=(_seam(("P0", "c", "z"), ("P1", "c", "w")),),
        incoming=(EndRef("P0", "in"),),
        outgoing=(EndRef("P0", "z"),),
    )


def theta_half(m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8) -> QuiltedSurface:
    """The outgoing half: <L01, L01^t> in, HF(M1) out"""
    q0 = _patch("Q0", m0, [("z", IN)])
    q1 = _patch("Q1", m1, [("w", IN)], interior=(InteriorPuncture("out", OUT),))
    return QuiltedSurface(
        modulus=modulus,
        patches=(q0, q1),
        seams=(_seam(("Q0", "c", "z"), ("Q1", "c", "w")),),
        incoming=(EndRef("Q0", "z"),),
        outgoing=(EndRef("Q1", "out"),),
    )


def quilted_pants(m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8) -> QuiltedSurface:
    """Two disks with three punctures each, every interval sewn: the quilted product"""
    a = _patch("A", m0, [("a1", IN), ("a2", IN), ("a3", OUT)])
    b = _patch("B", m1, [("b1", IN), ("b3", OUT), ("b2", IN)])
    return QuiltedSurface(
        modulus=modulus,
        patches=(a, b),
        seams=(
            _seam(("A", "c", "a1"), ("B", "c", "b2")),
            _seam(("A", "c", "a2"), ("B", "c", "b3")),
            _seam(("A", "c", "a3"), ("B", "c", "b1")),
        ),
        incoming=(EndRef("A", "a1"), EndRef("A", "a2")),
        outgoing=(EndRef("A", "a3"),),
    )


def three_components(
    m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8
) -> QuiltedSurface:
    """An M1 disk between two M0 disks, with a four-seam end in the middle"""
    x = _patch("X", m0, [("x1", IN), ("x2", IN)])
    y = _patch("Y", m0, [("y1", IN), ("y2", IN)])
    b = _patch(
        "B",
        m1,
        [("bx", IN), ("m1", IN), ("by", IN), ("m2", IN)],
        interior=(InteriorPuncture("out", OUT),),
    )
    return QuiltedSurface(
        modulus=modulus,
        patches=(x, y, b),
        seams=(
            _seam(("X", "c", "x2"), ("B", "c", "bx")),
            _seam(("X", "c", "x1"), ("B", "c", "m2")),
            _seam(("Y", "c", "y1"), ("B", "c", "m1")),
            _seam(("Y", "c", "y2"), ("B", "c", "by")),
        ),
        incoming=(EndRef("X", "x1"), EndRef("B", "m1"), EndRef("Y", "y1")),
        outgoing=(EndRef("B", "out"),),
    )


def defect_disk_m1(m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8) -> QuiltedSurface:
    """Quilted disk whose M1 strip joins the two M1 constituents of the middle end"""
    p = _patch("P", m1, [("p1", OUT), ("p2", OUT)])
    u = _patch("U", m0, [("u", OUT)])
    v = _patch("V", m0, [("v", OUT)])
    return QuiltedSurface(
        modulus=modulus,
        patches=(p, u, v),
        seams=(
            _seam(("U", "c", "u"), ("P", "c", "p1")),
            _seam(("V", "c", "v"), ("P", "c", "p2")),
        ),
        outgoing=(EndRef("P", "p1"),),
    )


def defect_disk_m0(m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8) -> QuiltedSurface:
    """Quilted disk whose M0 strip joins the two M0 constituents of the middle end"""
    q = _patch("Q", m0, [("q1", OUT), ("q2", OUT)])
    r = _patch("R", m1, [("r", OUT)])
    t = _patch("T", m1, [("t", OUT)])
    return QuiltedSurface(
        modulus=modulus,
        patches=(q, r, t),
        seams=(
            _seam(("Q", "c", "q1"), ("R", "c", "r")),
            _seam(("Q", "c", "q2"), ("T", "c", "t")),
        ),
        outgoing=(EndRef("R", "r"),),
    )


def three_point_pants(
    m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8
) -> QuiltedSurface:
    """An M1 annulus with an outgoing puncture, each circle sewn to an M0 disk"""
    xa = _patch("XA", m0, [("s", IN)])
    xb = _patch("XB", m0, [("t", IN)])
    ring = Patch(
        "R1",
        m1,
        (
            BoundaryCircle("inner", (MarkedPoint("i", IN),)),
            BoundaryCircle("outer", (MarkedPoint("o", IN),)),
        ),
        interior=(InteriorPuncture("prod", OUT),),
    )
    return QuiltedSurface(
        modulus=modulus,
        patches=(ring, xb, xa),
        seams=(
            _seam(("XB", "c", "t"), ("R1", "outer", "o")),
            _seam(("XA", "c", "s"), ("R1", "inner", "i")),
        ),
        incoming=(EndRef("XA", "s"), EndRef("XB", "t")),
        outgoing=(EndRef("R1", "prod"),),
    )


def two_point_pants(m0: PatchLabel = M0, m1: PatchLabel = M1, modulus: int = 8) -> QuiltedSurface:
    """One M0 and one M1 disk sewn along two intervals, outgoing puncture on M1"""
    lo = _patch("Lo", m0, [("s", IN), ("t", IN)])
    hi = _patch("Hi", m1, [("j", IN), ("k", IN)], interior=(InteriorPuncture("prod", OUT),))
    return QuiltedSurface(
        modulus=modulus,
        patches=(hi, lo),
        seams=(
            _seam(("Lo", "c", "t"), ("Hi", "c", "j")),
            _seam(("Lo", "c", "s"), ("Hi", "c", "k")),
        ),
        incoming=(EndRef("Lo", "s"), EndRef("Lo", "t")),
        outgoing=(EndRef("Hi", "prod"),),
    )


def two_correspondence_cylinder(
    m0: PatchLabel = M0, m1: PatchLabel = M1, m2: PatchLabel = M2, modulus: int = 8
) -> QuiltedSurface:
    """M0 disk, M1 annulus, M2 disk, sewn by L01 and L12"""
    p0 = _patch("P0", m0, interior=(InteriorPuncture("in", IN),))
    mid = Patch("A1", m1, (BoundaryCircle("c0"), BoundaryCircle("c1")))
    p2 = _patch("P2", m2, interior=(InteriorPuncture("out", OUT),))
    return QuiltedSurface(
        modulus=modulus,
        patches=(p0, mid, p2),
        seams=(
            _seam(("P0", "c"), ("A1", "c0"), "L01"),
            _seam(("A1", "c1"), ("P2", "c"), "L12"),
        ),
        incoming=(EndRef("P0", "in"),),
        outgoing=(EndRef("P2", "out"),),
    )


def _report(check: str, ok: bool, detail) -> Dict:
    return {"check": check, "pass": bool(ok), "detail": detail}


def defect_linearity(seed: int = 0, modulus: int = 4, ring: str = "z") -> Tuple[bool, Dict]:
    """Inserting S1 minus S0 into the middle end evaluates to the difference of insertions"""
    rng = random.Random(seed)
    m0, m1 = PatchLabel("M0", 2), PatchLabel("M1", 2)
    comp = three_components(m0, m1, modulus)
    s1 = defect_disk_m1(m0, m1, modulus)
    s0 = defect_disk_m0(m0, m1, modulus)

    a = GeneratorAssignment(modulus, ring)
    for end in extract_ends(comp):
        if end.key not in a.modules:
            a.modules[end.key] = random_module(rng, modulus, ring, rng.randint(1, 2), "C")
    maps = {}
    for name, q in (("comp", comp), ("s1", s1), ("s0", s0)):
        source, target = a.end_modules(q)
        maps[name] = random_graded_map(rng, source, target, degree_shift(q))
        a.register(q, maps[name])

    middle = EndRef("B", "m1")
    with_s1 = evaluate(
        Glue(DisjointUnion(Leaf(comp), Leaf(s1)), middle, EndRef("P", "p1")), a
    )
    with_s0 = evaluate(
        Glue(DisjointUnion(Leaf(comp), Leaf(s0)), middle, EndRef("R", "r")), a
    )
    D = a.duality_for(find_end(comp, middle))
    defect = sub(maps["s1"], maps["s0"])
    expected = algebraic_trace(tensor_map(maps["comp"], defect), D, 1, 1)
    ok = sub(with_s1.map, with_s0.map) == expected
    return ok, {"seed": seed, "sign_exact": with_s1.sign_exact and with_s0.sign_exact}


def section6_suite(
    n0: int = 1, n1: int = 2, modulus: int = 8, seed: int = 0
) -> List[Dict]:
    """Combinatorial and degree checks of the factorization through the quilted group"""
    m0, m1 = PatchLabel("M0", 2 * n0), PatchLabel("M1", 2 * n1)
    m2 = PatchLabel("M2", 2)
    results = []

    theta, psi = theta_half(m0, m1, modulus), psi_half(m0, m1, modulus)
    factored = glue(disjoint_union(theta, psi), EndRef("Q0", "z"), EndRef("P0", "z"))
    results.append(
        _report(
            "factorization",
            combinatorial_eq(factored, cylinder(m0, m1, modulus=modulus)),
            "theta glued after psi is the L01 cylinder",
        )
    )

    comp = three_components(m0, m1, modulus)
    with_m1 = glue(
        disjoint_union(comp, defect_disk_m1(m0, m1, modulus)),
        EndRef("B", "m1"),
        EndRef("P", "p1"),
    )
    results.append(
        _report(
            "three_point_ancestor",
            combinatorial_eq(with_m1, three_point_pants(m0, m1, modulus)),
            "the M1 strip turns the M1 disk into an annulus",
        )
    )
    with_m0 = glue(
        disjoint_union(comp, defect_disk_m0(m0, m1, modulus)),
        EndRef("B", "m1"),
        EndRef("R", "r"),
    )
    results.append(
        _report(
            "two_point_ancestor",
            combinatorial_eq(with_m0, two_point_pants(m0, m1, modulus)),
            "the M0 strip joins the two M0 disks",
        )
    )
    product = glue(
        disjoint_union(theta, quilted_pants(m0, m1, modulus)),
        EndRef("Q0", "z"),
        EndRef("A", "a3"),
    )
    results.append(
        _report(
            "theta_after_quilted_product",
            combinatorial_eq(product, two_point_pants(m0, m1, modulus)),
            "theta after the quilted pair of pants",
        )
    )

    shrunk, record = shrink_strip(two_correspondence_cylinder(m0, m1, m2, modulus), "A1")
    results.append(
        _report(
            "annulus_shrinking",
            combinatorial_eq(shrunk, cylinder(m0, m2, "L01∘L12", modulus)),
            {"record": [record.n, record.d]},
        )
    )

    phi_degree = degree_shift(cylinder(m0, m1, modulus=modulus))
    results.append(
        _report(
            "cylinder_degree",
            phi_degree == (n1 - n0) % modulus,
            {"degree": phi_degree, "expected": (n1 - n0) % modulus},
        )
    )
    gap = degree_shift(defect_disk_m1(m0, m1, modulus)) - degree_shift(
        defect_disk_m0(m0, m1, modulus)
    )
    results.append(
        _report(
            "defect_degree",
            gap % modulus == (n1 - n0) % modulus,
            {"difference": gap % modulus, "expected": (n1 - n0) % modulus},
        )
    )

    ok, detail = defect_linearity(seed)
    results.append(_report("defect_linearity", ok, detail))
    return results
