"""Prototype census of cylinder shapes, lattice shell counts, and areas.

The census walks the shape graph breadth-first: every distinct canonical
shape is expanded once against every digit that can matter.  A digit b
with sup norm >= 3 shifts every constraint out of range of the square, so
the child is the full square and the digit window sup_norm(b) <= 3 is
exhaustive.  The walk must stabilize (the paper's finiteness claim); a
configurable cap turns runaway growth into a loud BudgetExceeded.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv

from .errors import BudgetExceeded
from .gaussian import GaussInt, abs_sq, sup_norm
from .quadratics import Surd, rational_between, sqrt_fraction
from .regions import (EMPTY, FULL_SQUARE, PROPER, Region, _candidate_points,
                      _curves_of, _eval_constraint, base_region_F,
                      cylinder_step, inv_region, membership, region_classify,
                      region_equal, region_interior, region_rotate)

__all__ = [
    "digit_window",
    "prototype_census",
    "CensusResult",
    "ShapeRecord",
    "shell_count",
    "region_area",
    "eq3_reference_region",
    "eq3_containment_holds",
]

iv.prec = 96


def digit_window(max_sup: int = 3):
    """All admissible digits with sup norm <= max_sup, in a fixed order."""
    out = []
    for re in range(-max_sup, max_sup + 1):
        for im in range(-max_sup, max_sup + 1):
            if re * re + im * im >= 2:
                out.append(GaussInt(re, im))
    return out


class ShapeRecord:
    __slots__ = ("rid", "region", "classification", "first_depth")

    def __init__(self, rid, region, classification, first_depth):
        self.rid = rid
        self.region = region
        self.classification = classification
        self.first_depth = first_depth

    def __repr__(self):
        return (f"ShapeRecord({self.rid}, {self.classification}, "
                f"depth={self.first_depth})")


class CensusResult:
    def __init__(self, shapes, canon_map, levels, stabilization_depth,
                 max_depth, cap):
        self.shapes = shapes                      # list[ShapeRecord]
        self.canon_map = canon_map                # Region -> rid
        self.levels = levels                      # new shapes per depth
        self.stabilization_depth = stabilization_depth
        self.max_depth = max_depth
        self.cap = cap
        self._rotation_classes = None
        self._interior_classes = None
        self._areas = {}

    # -- lookups ----------------------------------------------------------

    def resolve(self, region: Region):
        """rid of a region known to the census, or None."""
        if region.is_empty:
            return None
        rid = self.canon_map.get(region)
        if rid is not None:
            return rid
        for rec in self.shapes:
            if region_equal(rec.region, region):
                self.canon_map[region] = rec.rid
                return rec.rid
        return None

    def nonempty_shapes(self):
        return [rec for rec in self.shapes if rec.classification != EMPTY]

    def proper_shapes(self):
        return [rec for rec in self.shapes if rec.classification == PROPER]

    # -- groupings ----------------------------------------------------------

    def rotation_classes(self):
        """Orbits of shapes under multiplication by i^k (boundary-aware)."""
        if self._rotation_classes is None:
            orbits = {}
            for rec in self.nonempty_shapes():
                members = set()
                for k in range(4):
                    rid = self.resolve(region_rotate(rec.region, k))
                    if rid is not None:
                        members.add(rid)
                members.add(rec.rid)
                key = min(members)
                orbits.setdefault(key, set()).update(members)
            self._rotation_classes = sorted(sorted(v) for v in orbits.values())
        return self._rotation_classes

    def interior_classes_mod_rotation(self, include_full=False, depth=None):
        """Distinct interiors of Proper shapes, up to rotation.

        With depth given, only shapes seen by that depth are grouped
        (the full square is first seen at depth 0 but recurs at every
        depth).  FullSquare shapes are excluded unless include_full.
        """
        recs = [rec for rec in self.shapes
                if rec.classification == PROPER
                or (include_full and rec.classification == FULL_SQUARE)]
        if depth is not None:
            recs = [rec for rec in recs if rec.first_depth <= depth]
        interiors = [(rec.rid, region_interior(rec.region)) for rec in recs]
        reps = []   # (rep_interior, [rids])
        for rid, inner in interiors:
            for rep, rids in reps:
                if any(region_equal(region_rotate(inner, k), rep)
                       for k in range(4)):
                    rids.append(rid)
                    break
            else:
                reps.append((inner, [rid]))
        return [sorted(rids) for _, rids in reps]

    # -- areas ---------------------------------------------------------------

    def area(self, rid):
        if rid not in self._areas:
            self._areas[rid] = region_area(self.shapes[rid].region)
        return self._areas[rid]

    def min_proper_area(self) -> Fraction:
        """A rational lower bound on the area of every Proper shape."""
        lo = None
        for rec in self.proper_shapes():
            a_lo, _ = self.area(rec.rid)
            if lo is None or a_lo < lo:
                lo = a_lo
        if lo is None:
            raise ValueError("census holds no proper shapes")
        return Fraction(lo).limit_denominator(10**12) * Fraction(999, 1000)

    # -- report ---------------------------------------------------------------

    def report(self):
        shapes = []
        for rec in self.shapes:
            entry = {
                "id": rec.rid,
                "classification": rec.classification,
                "first_depth": rec.first_depth,
                "constraints": rec.region.describe(),
            }
            if rec.classification != EMPTY:
                lo, hi = self.area(rec.rid)
                entry["area"] = [lo, hi]
            shapes.append(entry)
        d1 = [rec for rec in self.nonempty_shapes()
              if rec.first_depth == 1 and rec.classification != FULL_SQUARE]
        return {
            "shapes": shapes,
            "new_shapes_per_depth": self.levels,
            "stabilization_depth": self.stabilization_depth,
            "max_depth": self.max_depth,
            "cap": self.cap,
            "total_nonempty_shapes": len(self.nonempty_shapes()),
            "rotation_classes": self.rotation_classes(),
            "depth1_forms": len(d1),
            "depth1_interior_classes_mod_rotation_excluding_full":
                len(self.interior_classes_mod_rotation(depth=1)),
            "interior_classes_mod_rotation_excluding_full":
                len(self.interior_classes_mod_rotation()),
        }


def prototype_census(max_depth: int, cap: int = 512) -> CensusResult:
    """Breadth-first census of all reachable cylinder shapes F_n(a)."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    window = digit_window()
    start = base_region_F()
    shapes = [ShapeRecord(0, start, region_classify(start), 0)]
    canon_map = {start: 0}

    def lookup(region):
        rid = canon_map.get(region)
        if rid is not None:
            return rid
        for rec in shapes:
            if region_equal(rec.region, region):
                canon_map[region] = rec.rid
                return rec.rid
        return None

    frontier = [shapes[0]]
    levels = []
    stabilization_depth = None
    for depth in range(1, max_depth + 1):
        new_recs = []
        for rec in frontier:
            for b in window:
                child = cylinder_step(rec.region, b)
                if child.is_empty:
                    continue
                if lookup(child) is not None:
                    continue
                rid = len(shapes)
                new_rec = ShapeRecord(rid, child, region_classify(child), depth)
                shapes.append(new_rec)
                canon_map[child] = rid
                new_recs.append(new_rec)
                if len(shapes) > cap:
                    raise BudgetExceeded(
                        f"census grew past {cap} shapes at depth {depth}")
        levels.append(len(new_recs))
        if not new_recs:
            stabilization_depth = depth
            break
        frontier = new_recs
    return CensusResult(shapes, canon_map, levels, stabilization_depth,
                        max_depth, cap)


# --------------------------------------------------------------------------
# lattice shells

def _holds_at_lattice(con, x: int, y: int) -> bool:
    # pure-integer evaluation: lattice points never sit on half-integer
    # halfplane bounds, so 2x vs b2 decides every halfplane strictly
    if con[0] == "H":
        _, axis, op, b2 = con
        v = 2 * (x if axis == "re" else y)
        return {"<": v < b2, "<=": v < b2, ">": v > b2, ">=": v > b2}[op]
    _, a, b, side, closed = con
    t = (x - a) * (x - a) + (y - b) * (y - b)
    if side == "in":
        return t <= 1 if closed else t < 1
    return t >= 1 if closed else t > 1


def shell_count(r: Region, m: int) -> int:
    """#{b in Z[i] : sup_norm(b) = m, b in inv[r]}, by exact evaluation."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if r.is_empty:
        return 0
    inv = inv_region(r) if r.bounded else r
    count = 0
    for b in _shell_points(m):
        if all(_holds_at_lattice(con, b.re, b.im) for con in inv.cons):
            count += 1
    return count


def _shell_points(m):
    pts = []
    for t in range(-m, m + 1):
        pts.append(GaussInt(m, t))
        pts.append(GaussInt(-m, t))
        if abs(t) != m:
            pts.append(GaussInt(t, m))
            pts.append(GaussInt(t, -m))
    assert len(pts) == 8 * m
    return pts


# --------------------------------------------------------------------------
# certified areas

def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _iv_surd(s: Surd):
    val = _iv_fraction(s.p)
    if s.c:
        val += _iv_fraction(s.c) * iv.sqrt(iv.mpf(s.d))
    return val


def _clamp(x, lo, hi):
    return iv.mpf([max(x.a, iv.mpf(lo).a), min(x.b, iv.mpf(hi).b)])


def _arc_primitive(t):
    """Integral of sqrt(1 - u^2): (t sqrt(1-t^2) + asin t)/2, certified."""
    t = _clamp(t, -1, 1)
    root_sq = _clamp(1 - t * t, 0, 1)
    root = iv.sqrt(root_sq)
    asin_t = iv.atan2(t, root)
    return (t * root + asin_t) / 2


def _curve_integral(desc, x0, x1):
    """Integral of the curve's y(x) over [x0, x1] as an interval."""
    kind = desc[0]
    if kind == "const":
        return _iv_fraction(desc[1]) * (x1 - x0)
    _, a, b, sgn = desc
    ia = iv.mpf(a)
    base = iv.mpf(b) * (x1 - x0)
    prim = _arc_primitive(x1 - ia) - _arc_primitive(x0 - ia)
    return base + sgn * prim


def region_area(r: Region):
    """Certified (lower, upper) bounds on the Lebesgue area of r.

    Decomposes the region into vertical slabs between critical abscissae;
    inside a slab the boundary curves keep their vertical order, so each
    band between consecutive curves is either fully inside or fully
    outside, decided exactly at one witness point.  Band integrals use
    interval arithmetic throughout, so the bracket is rigorous.
    """
    cls = region_classify(r)
    if cls == EMPTY or cls == "Degenerate":
        return (0.0, 0.0)
    if cls == FULL_SQUARE:
        return (1.0, 1.0)
    curves = _curves_of(r.cons)
    circles = sorted((c[1], c[2]) for c in curves if c[0] == "C")
    verts, _, _ = _candidate_points(curves)

    crit = [Surd(-HALF_F), Surd(HALF_F)]
    for (a, b) in circles:
        crit.append(Surd(Fraction(a - 1)))
        crit.append(Surd(Fraction(a + 1)))
    crit.extend(v[0] for v in verts)
    crit = [x for x in _sorted_unique_surds(crit)
            if Surd.compare(x, Surd(-HALF_F)) >= 0
            and Surd.compare(x, Surd(HALF_F)) <= 0]

    total = iv.mpf(0)
    for x0, x1 in zip(crit, crit[1:]):
        if Surd.compare(x0, x1) >= 0:
            continue
        xm = rational_between(x0, x1)
        entries = [(Surd(-HALF_F), ("const", -HALF_F)),
                   (Surd(HALF_F), ("const", HALF_F))]
        for (a, b) in circles:
            disc = 1 - (xm - a) ** 2
            if disc > 0:
                root = sqrt_fraction(disc)
                entries.append((Surd(b) - root, ("circ", a, b, -1)))
                entries.append((Surd(b) + root, ("circ", a, b, +1)))
        entries = [(y, d) for y, d in entries
                   if Surd.compare(y, Surd(-HALF_F)) >= 0
                   and Surd.compare(y, Surd(HALF_F)) <= 0]
        entries.sort(key=_surd_sort_key_factory())
        ix0, ix1 = _iv_surd(x0), _iv_surd(x1)
        for (ylo, dlo), (yhi, dhi) in zip(entries, entries[1:]):
            if Surd.compare(ylo, yhi) >= 0:
                continue
            ym = rational_between(ylo, yhi)
            if membership(r, xm, ym):
                total += (_curve_integral(dhi, ix0, ix1)
                          - _curve_integral(dlo, ix0, ix1))
    lo, hi = float(total.a), float(total.b)
    assert hi - lo <= 1e-6, f"area interval too wide: {hi - lo}"
    return (max(lo, 0.0), min(hi, 1.0))


HALF_F = Fraction(1, 2)


def _sorted_unique_surds(vals):
    import functools
    vals = sorted(vals, key=functools.cmp_to_key(Surd.compare))
    out = []
    for v in vals:
        if not out or Surd.compare(out[-1], v) != 0:
            out.append(v)
    return out


def _surd_sort_key_factory():
    import functools
    return functools.cmp_to_key(lambda a, b: Surd.compare(a[0], b[0]))


# --------------------------------------------------------------------------
# the Eq-HCF-03-05 sandwich

def eq3_reference_region() -> Region:
    """int F_1(1-i): the smallest shape every regular F_n(a) must contain,
    up to a rotation."""
    from .regions import cylinder_region
    return region_interior(cylinder_region([GaussInt(1, -1)]))


def region_contains(outer: Region, inner: Region) -> bool:
    """Exact containment inner subset outer over the joint arrangement."""
    curves = _curves_of(outer.cons) | _curves_of(inner.cons)
    verts, edges, faces = _candidate_points(curves)
    for pts in (faces, edges, verts):
        for p in pts:
            if membership(inner, *p) and not membership(outer, *p):
                return False
    return True


def eq3_containment_holds(r: Region) -> bool:
    """Some rotation i^k int F_1(1-i) sits inside r (with r inside F)."""
    ref = eq3_reference_region()
    return any(region_contains(r, region_rotate(ref, k)) for k in range(4))
