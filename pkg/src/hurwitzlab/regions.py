"""Symbolic region algebra for Hurwitz cylinder sets.

Every shape F_n(a) = T^n[C_n(a)] is an intersection of constraints drawn
from a fixed finite family: half-planes with axis bounds +-1/2 and unit
disks (kept or excluded, boundary open or closed) centered at Gaussian
integers of norm 1 or 2.  Complex inversion maps this family to itself:
half-plane boundaries become unit circles through the origin and circles
with norm-2 centers map to circles with the conjugate center.  Disks
whose center has norm >= 3 cannot meet the closed unit square (the exact
test is |c| > 1 + 1/sqrt(2)) and are pruned as vacuous or force emptiness.

A bounded Region is always implicitly intersected with the CLOSED square
max(|x|, |y|) <= 1/2; the half-open structure of F is carried by explicit
strict constraints.  Classification, redundancy pruning and point-set
equality are exact: they sample every cell of the curve arrangement at
witness points whose coordinates live in Q or Q[sqrt(d)].
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import UnsupportedConstraint
from .gaussian import GaussInt, abs_sq
from .quadratics import Surd, rational_between, sqrt_fraction

__all__ = [
    "Region",
    "EMPTY_REGION",
    "base_region_F",
    "inv_region",
    "cylinder_step",
    "cylinder_region",
    "region_classify",
    "region_interior",
    "region_equal",
    "interiors_equal",
    "region_rotate",
    "is_regular",
    "membership",
    "EMPTY", "DEGENERATE", "FULL_SQUARE", "PROPER",
]

HALF = Fraction(1, 2)

EMPTY = "Empty"
DEGENERATE = "Degenerate"
FULL_SQUARE = "FullSquare"
PROPER = "Proper"

# Constraint encodings:
#   ("H", axis, op, b2)           axis(z) op b2/2,  axis in {re, im},
#                                 op in {<, <=, >, >=}, b2 in {-1, +1}
#   ("D", cre, cim, side, closed) |z - c| vs 1, side in {in, out}


class Region:
    """Intersection of family constraints, optionally within the square."""

    __slots__ = ("cons", "bounded", "is_empty")

    def __init__(self, cons, bounded=True, is_empty=False):
        object.__setattr__(self, "cons", tuple(sorted(set(cons))))
        object.__setattr__(self, "bounded", bool(bounded))
        object.__setattr__(self, "is_empty", bool(is_empty))

    def __setattr__(self, name, value):
        raise AttributeError("Region is immutable")

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        return (self.cons == other.cons and self.bounded == other.bounded
                and self.is_empty == other.is_empty)

    def __hash__(self):
        return hash((self.cons, self.bounded, self.is_empty))

    def __repr__(self):
        if self.is_empty:
            return "Region(EMPTY)"
        return f"Region({list(self.cons)}, bounded={self.bounded})"

    def describe(self):
        if self.is_empty:
            return ["empty"]
        out = []
        for con in self.cons:
            if con[0] == "H":
                _, axis, op, b2 = con
                out.append(f"{axis} {op} {b2}/2")
            else:
                _, a, b, side, closed = con
                rel = {("in", True): "<=", ("in", False): "<",
                       ("out", True): ">=", ("out", False): ">"}[(side, closed)]
                out.append(f"|z - ({a}{b:+}i)| {rel} 1")
        return out


EMPTY_REGION = Region((), bounded=True, is_empty=True)


def base_region_F() -> Region:
    """The half-open square [-1/2, 1/2)^2, the rounding cell of 0."""
    return Region((("H", "re", "<", 1), ("H", "im", "<", 1)))


# --------------------------------------------------------------------------
# inversion tables

_INV_HALF = {
    ("re", ">=", -1): ("D", -1, 0, "out", True),
    ("re", ">", -1): ("D", -1, 0, "out", False),
    ("re", "<=", -1): ("D", -1, 0, "in", True),
    ("re", "<", -1): ("D", -1, 0, "in", False),
    ("re", ">=", 1): ("D", 1, 0, "in", True),
    ("re", ">", 1): ("D", 1, 0, "in", False),
    ("re", "<=", 1): ("D", 1, 0, "out", True),
    ("re", "<", 1): ("D", 1, 0, "out", False),
    ("im", ">=", -1): ("D", 0, 1, "out", True),
    ("im", ">", -1): ("D", 0, 1, "out", False),
    ("im", "<=", -1): ("D", 0, 1, "in", True),
    ("im", "<", -1): ("D", 0, 1, "in", False),
    ("im", ">=", 1): ("D", 0, -1, "in", True),
    ("im", ">", 1): ("D", 0, -1, "in", False),
    ("im", "<=", 1): ("D", 0, -1, "out", True),
    ("im", "<", 1): ("D", 0, -1, "out", False),
}
_INV_DISK1 = {v[1:]: ("H",) + k for k, v in _INV_HALF.items()}


def _invert_constraint(con):
    if con[0] == "H":
        key = con[1:]
        if key not in _INV_HALF:
            raise UnsupportedConstraint(str(con))
        return _INV_HALF[key]
    _, a, b, side, closed = con
    n = a * a + b * b
    if n == 1:
        return _INV_DISK1[(a, b, side, closed)]
    if n == 2:
        return ("D", a, -b, side, closed)
    raise UnsupportedConstraint(str(con))


_SQUARE_IMAGE = (("D", -1, 0, "out", True), ("D", 1, 0, "out", True),
                 ("D", 0, 1, "out", True), ("D", 0, -1, "out", True))


def _dedupe_disks(cons):
    """Same center and side: the open (strict) variant is the stronger."""
    best = {}
    out = []
    for con in cons:
        if con[0] != "D":
            out.append(con)
            continue
        key = con[1:4]
        prev = best.get(key)
        if prev is None or (prev[4] and not con[4]):
            best[key] = con
    return out + list(best.values())


def inv_region(r: Region) -> Region:
    """Image of r under z -> 1/z, as a constraint set.

    A bounded region additionally carries the closed square, whose image
    is the four closed disk exteriors of Eq-HCF-01; the result is an
    unbounded Region.  Inverting an unbounded region maps constraints
    only, which makes the operation an involution.
    """
    if r.is_empty:
        return EMPTY_REGION
    cons = [_invert_constraint(con) for con in r.cons]
    if r.bounded:
        cons.extend(_SQUARE_IMAGE)
    return Region(_dedupe_disks(cons), bounded=False)


# --------------------------------------------------------------------------
# translation and normalization into the square

def _translate_halfplane(axis, op, b2, shift):
    """Constraint axis(z) op (b2 - 2*shift)/2 against the closed square.

    Returns a constraint, "drop" (vacuous), or "empty".
    """
    nb = b2 - 2 * shift
    if op in (">", ">="):
        if nb <= -3:
            return "drop"
        if nb >= 3:
            return "empty"
    else:
        if nb >= 3:
            return "drop"
        if nb <= -3:
            return "empty"
    return ("H", axis, op, nb)


def _axis_interval(cons_for_axis):
    """Exact [lo, hi] interval logic over the closed square edge range."""
    lo, lo_closed = -HALF, True
    hi, hi_closed = HALF, True
    for (_, _, op, b2) in cons_for_axis:
        b = Fraction(b2, 2)
        if op == ">=":
            if b > lo:
                lo, lo_closed = b, True
        elif op == ">":
            if b > lo or (b == lo and lo_closed):
                lo, lo_closed = b, False
        elif op == "<=":
            if b < hi:
                hi, hi_closed = b, True
        elif op == "<":
            if b < hi or (b == hi and hi_closed):
                hi, hi_closed = b, False
    if lo > hi:
        return None
    if lo == hi and not (lo_closed and hi_closed):
        return None
    return lo, lo_closed, hi, hi_closed


def _emit_axis_constraints(axis, interval):
    lo, lo_closed, hi, hi_closed = interval
    out = []
    if lo == hi:
        # a single edge line; one one-sided constraint pins it in the square
        out.append(("H", axis, ">=", 1) if lo == HALF else ("H", axis, "<=", -1))
        return out
    if lo == -HALF and not lo_closed:
        out.append(("H", axis, ">", -1))
    elif lo == HALF:
        out.append(("H", axis, ">=" if lo_closed else ">", 1))
    if hi == HALF and not hi_closed:
        out.append(("H", axis, "<", 1))
    elif hi == -HALF:
        out.append(("H", axis, "<=" if hi_closed else "<", -1))
    return out


def _normalize_bounded(cons):
    """Canonical constraint set within the closed square, or None if empty."""
    halves = {"re": [], "im": []}
    disks = []
    for con in cons:
        if con[0] == "H":
            halves[con[1]].append(con)
        else:
            disks.append(con)
    out = []
    for axis in ("im", "re"):
        interval = _axis_interval(halves[axis])
        if interval is None:
            return None
        out.extend(_emit_axis_constraints(axis, interval))
    by_center = {}
    for con in disks:
        by_center.setdefault(con[1:3], []).append(con)
    for center, group in by_center.items():
        sides = {}
        for con in group:
            side = con[3]
            prev = sides.get(side)
            if prev is None or (prev[4] and not con[4]):
                sides[side] = con
        if len(sides) == 2:
            cin, cout = sides["in"], sides["out"]
            if not (cin[4] and cout[4]):
                return None  # open versus the other side: no points at all
        out.extend(sides.values())
    return tuple(sorted(out))


def translate_into_square(invr: Region, b: GaussInt) -> Region:
    """(invr - b) intersected with F, normalized but not yet minimized."""
    if invr.is_empty:
        return EMPTY_REGION
    if invr.bounded:
        raise ValueError("expected an inverted (unbounded) region")
    cons = []
    for con in invr.cons:
        if con[0] == "D":
            a, bb = con[1] - b.re, con[2] - b.im
            n = a * a + bb * bb
            side = con[3]
            if n == 0:
                if side == "in":
                    continue  # the whole square sits inside the unit disk
                return EMPTY_REGION
            if n >= 3:
                if side == "in":
                    return EMPTY_REGION
                continue  # too far to meet the square
            cons.append(("D", a, bb, side, con[4]))
        else:
            shift = b.re if con[1] == "re" else b.im
            res = _translate_halfplane(con[1], con[2], con[3], shift)
            if res == "empty":
                return EMPTY_REGION
            if res != "drop":
                cons.append(res)
    cons.extend(base_region_F().cons)
    normalized = _normalize_bounded(cons)
    if normalized is None:
        return EMPTY_REGION
    return Region(normalized)


# --------------------------------------------------------------------------
# exact membership

def _eval_constraint(con, x: Surd, y: Surd) -> bool:
    if con[0] == "H":
        _, axis, op, b2 = con
        v = x if axis == "re" else y
        s = Surd.compare(v, Surd(Fraction(b2, 2)))
        return {"<": s < 0, "<=": s <= 0, ">": s > 0, ">=": s >= 0}[op]
    _, a, b, side, closed = con
    dx = x - a
    dy = y - b
    t = dx * dx + dy * dy - 1
    s = t.sign()
    if side == "in":
        return s <= 0 if closed else s < 0
    return s >= 0 if closed else s > 0


def membership(r: Region, x, y) -> bool:
    """Exact membership of the point (x, y); coordinates rational or Surd."""
    if r.is_empty:
        return False
    x = x if isinstance(x, Surd) else Surd(x)
    y = y if isinstance(y, Surd) else Surd(y)
    if r.bounded:
        h = Surd(HALF)
        if not (Surd.compare(x, -h) >= 0 and Surd.compare(x, h) <= 0
                and Surd.compare(y, -h) >= 0 and Surd.compare(y, h) <= 0):
            return False
    return all(_eval_constraint(con, x, y) for con in r.cons)


# --------------------------------------------------------------------------
# arrangement sampling: exact witness points for every cell

def _curves_of(cons):
    curves = {("LX", -HALF), ("LX", HALF), ("LY", -HALF), ("LY", HALF)}
    for con in cons:
        if con[0] == "D":
            curves.add(("C", con[1], con[2]))
    return frozenset(curves)


def _sorted_unique(values):
    vals = sorted(values, key=functools.cmp_to_key(Surd.compare))
    out = []
    for v in vals:
        if not out or Surd.compare(out[-1], v) != 0:
            out.append(v)
    return out


def _circle_line_y(a, b, L):
    """y-coordinates of circle((a,b),1) on the vertical line x = L."""
    disc = 1 - (L - a) ** 2
    if disc < 0:
        return []
    if disc == 0:
        return [Surd(b)]
    root = sqrt_fraction(disc)
    return [Surd(b) - root, Surd(b) + root]


def _circle_circle(c1, c2):
    (a1, b1), (a2, b2) = c1, c2
    dx, dy = a2 - a1, b2 - b1
    dist2 = dx * dx + dy * dy
    if dist2 > 4 or dist2 == 0:
        return []
    mx = Fraction(a1 + a2, 2)
    my = Fraction(b1 + b2, 2)
    if dist2 == 4:
        return [(Surd(mx), Surd(my))]
    k = sqrt_fraction(Fraction(4 - dist2, 4 * dist2))
    return [(Surd(mx) - k * dy, Surd(my) + k * dx),
            (Surd(mx) + k * dy, Surd(my) - k * dx)]


def _in_closed_square(x: Surd, y: Surd) -> bool:
    h = Surd(HALF)
    return (Surd.compare(x, -h) >= 0 and Surd.compare(x, h) <= 0
            and Surd.compare(y, -h) >= 0 and Surd.compare(y, h) <= 0)


@functools.lru_cache(maxsize=4096)
def _candidate_points(curves: frozenset):
    """(vertices, edge points, face points) covering every arrangement cell.

    Vertices are all pairwise curve intersections inside the closed
    square.  Edge points sit strictly between consecutive vertices along
    each curve.  Face points are one interior rational point per open
    face, found by a scanline between consecutive critical abscissae.
    """
    lines_x = sorted({c[1] for c in curves if c[0] == "LX"})
    lines_y = sorted({c[1] for c in curves if c[0] == "LY"})
    circles = sorted((c[1], c[2]) for c in curves if c[0] == "C")

    verts = []
    for lx in lines_x:
        for ly in lines_y:
            verts.append((Surd(lx), Surd(ly)))
    for (a, b) in circles:
        for lx in lines_x:
            verts.extend((Surd(lx), yy) for yy in _circle_line_y(a, b, lx))
        for ly in lines_y:
            verts.extend((xx, Surd(ly)) for xx in _circle_line_y(b, a, ly))
    for i, c1 in enumerate(circles):
        for c2 in circles[i + 1:]:
            verts.extend(_circle_circle(c1, c2))
    verts = [(x, y) for x, y in verts if _in_closed_square(x, y)]

    edge_pts = []
    half = Surd(HALF)
    for lx in lines_x:
        ys = [v[1] for v in verts if Surd.compare(v[0], Surd(lx)) == 0]
        ys = _sorted_unique(ys + [-half, half])
        for y0, y1 in zip(ys, ys[1:]):
            if Surd.compare(y0, y1) < 0:
                edge_pts.append((Surd(lx), Surd(rational_between(y0, y1))))
    for ly in lines_y:
        xs = [v[0] for v in verts if Surd.compare(v[1], Surd(ly)) == 0]
        xs = _sorted_unique(xs + [-half, half])
        for x0, x1 in zip(xs, xs[1:]):
            if Surd.compare(x0, x1) < 0:
                edge_pts.append((Surd(rational_between(x0, x1)), Surd(ly)))
    for (a, b) in circles:
        lo = Surd(max(Fraction(a - 1), -HALF))
        hi = Surd(min(Fraction(a + 1), HALF))
        if Surd.compare(lo, hi) >= 0:
            continue
        xs = [lo, hi]
        for x, y in verts:
            dx = x - a
            dy = y - b
            if (dx * dx + dy * dy - 1).sign() == 0:
                if Surd.compare(lo, x) < 0 and Surd.compare(x, hi) < 0:
                    xs.append(x)
        xs = _sorted_unique(xs)
        for x0, x1 in zip(xs, xs[1:]):
            if Surd.compare(x0, x1) >= 0:
                continue
            xm = rational_between(x0, x1)
            disc = 1 - (xm - a) ** 2
            if disc <= 0:
                continue
            root = sqrt_fraction(disc)
            for y in (Surd(b) - root, Surd(b) + root):
                if _in_closed_square(Surd(xm), y):
                    edge_pts.append((Surd(xm), y))

    crit_x = [Surd(-HALF), Surd(HALF)]
    for (a, b) in circles:
        crit_x.append(Surd(Fraction(a - 1)))
        crit_x.append(Surd(Fraction(a + 1)))
    crit_x.extend(v[0] for v in verts)
    crit_x = [x for x in _sorted_unique(crit_x)
              if Surd.compare(x, Surd(-HALF)) >= 0
              and Surd.compare(x, Surd(HALF)) <= 0]

    face_pts = []
    for x0, x1 in zip(crit_x, crit_x[1:]):
        if Surd.compare(x0, x1) >= 0:
            continue
        xm = rational_between(x0, x1)
        ys = [Surd(-HALF), Surd(HALF)]
        for (a, b) in circles:
            disc = 1 - (xm - a) ** 2
            if disc > 0:
                root = sqrt_fraction(disc)
                ys.extend((Surd(b) - root, Surd(b) + root))
        ys = [y for y in _sorted_unique(ys)
              if Surd.compare(y, Surd(-HALF)) >= 0
              and Surd.compare(y, Surd(HALF)) <= 0]
        for y0, y1 in zip(ys, ys[1:]):
            if Surd.compare(y0, y1) < 0:
                face_pts.append((Surd(xm), Surd(rational_between(y0, y1))))

    return tuple(verts), tuple(edge_pts), tuple(face_pts)


# --------------------------------------------------------------------------
# classification, minimization, equality

def region_classify(r: Region) -> str:
    """Empty / Degenerate / FullSquare / Proper, decided exactly.

    Face points avoid every boundary curve, so satisfying the constraints
    there is the same as satisfying them strictly: a hit proves interior.
    A region whose every face point passes differs from F only on a
    Lebesgue-null set of curve segments.
    """
    if r.is_empty:
        return EMPTY
    verts, edges, faces = _candidate_points(_curves_of(r.cons))
    inside = [p for p in faces if membership(r, *p)]
    if inside:
        return FULL_SQUARE if len(inside) == len(faces) else PROPER
    if any(membership(r, *p) for p in edges) or any(membership(r, *p) for p in verts):
        return DEGENERATE
    return EMPTY


def _redundant(cons_rest, con, curves):
    """Is con implied by cons_rest within the closed square?"""
    probe = Region(cons_rest)
    verts, edges, faces = _candidate_points(curves)
    for pts in (faces, edges, verts):
        for p in pts:
            if membership(probe, *p) and not _eval_constraint(con, *p):
                return False
    return True


def minimize_region(r: Region) -> Region:
    """Drop constraints implied by the others; deterministic order."""
    if r.is_empty or not r.bounded:
        return r
    cur = list(r.cons)
    curves = _curves_of(cur)
    changed = True
    while changed:
        changed = False
        for i, con in enumerate(cur):
            rest = cur[:i] + cur[i + 1:]
            if _redundant(tuple(rest), con, curves):
                cur = rest
                changed = True
                break
    return Region(cur)


def cylinder_step(r: Region, b: GaussInt) -> Region:
    """One digit extension: F_(k+1)(a b) = (inv[F_k(a)] - b) cap F."""
    if r.is_empty:
        return EMPTY_REGION
    out = translate_into_square(inv_region(r), b)
    if out.is_empty:
        return EMPTY_REGION
    out = minimize_region(out)
    if region_classify(out) == EMPTY:
        return EMPTY_REGION
    return out


def cylinder_region(digits) -> Region:
    """Canonical region for F_n(a); Empty for an impossible digit string."""
    r = base_region_F()
    for b in digits:
        r = cylinder_step(r, b)
        if r.is_empty:
            return EMPTY_REGION
    return r


def region_interior(r: Region) -> Region:
    """The interior as a Region: all constraints strictified, square open."""
    if r.is_empty:
        return EMPTY_REGION
    strict = {"<=": "<", "<": "<", ">=": ">", ">": ">"}
    cons = []
    for con in r.cons:
        if con[0] == "H":
            cons.append(("H", con[1], strict[con[2]], con[3]))
        else:
            cons.append(("D", con[1], con[2], con[3], False))
    cons.extend((("H", "re", ">", -1), ("H", "re", "<", 1),
                 ("H", "im", ">", -1), ("H", "im", "<", 1)))
    normalized = _normalize_bounded(cons)
    if normalized is None:
        return EMPTY_REGION
    return minimize_region(Region(normalized))


def region_equal(r1: Region, r2: Region) -> bool:
    """Exact point-set equality over the joint arrangement."""
    if r1.is_empty or r2.is_empty:
        return (region_classify(r1) == EMPTY) and (region_classify(r2) == EMPTY)
    curves = _curves_of(r1.cons) | _curves_of(r2.cons)
    verts, edges, faces = _candidate_points(curves)
    for pts in (faces, edges, verts):
        for p in pts:
            if membership(r1, *p) != membership(r2, *p):
                return False
    return True


def interiors_equal(r1: Region, r2: Region) -> bool:
    """Equality of interiors: only face cells matter."""
    i1, i2 = region_interior(r1), region_interior(r2)
    if i1.is_empty or i2.is_empty:
        return i1.is_empty and i2.is_empty
    curves = _curves_of(i1.cons) | _curves_of(i2.cons)
    _, _, faces = _candidate_points(curves)
    return all(membership(i1, *p) == membership(i2, *p) for p in faces)


_ROT_OP = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}


def _rotate_constraint(con):
    # the region z*i: Re(z) becomes Im(w), Im(z) becomes -Re(w)
    if con[0] == "H":
        _, axis, op, b2 = con
        if axis == "re":
            return ("H", "im", op, b2)
        return ("H", "re", _ROT_OP[op], -b2)
    _, a, b, side, closed = con
    return ("D", -b, a, side, closed)


def region_rotate(r: Region, k: int = 1) -> Region:
    """The region multiplied by i^k."""
    if r.is_empty:
        return EMPTY_REGION
    cons = r.cons
    for _ in range(k % 4):
        cons = tuple(_rotate_constraint(c) for c in cons)
    return Region(cons, bounded=r.bounded)


def is_regular(digits) -> bool:
    """True iff every prefix cylinder has nonempty interior."""
    r = base_region_F()
    for b in digits:
        r = cylinder_step(r, b)
        if region_classify(r) not in (FULL_SQUARE, PROPER):
            return False
    return True
