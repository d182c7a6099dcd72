"""Seeded Monte Carlo verification of the metric laws.

All experiments share one sampling contract: sample i of a run is the
exact dyadic Gaussian rational determined by (seed, i) alone, chunks of
samples are aggregated in index order, and reports are pure functions of
their configuration, so single- and multi-worker runs emit identical
bytes.

The statistical targets come with explicit constants: the two-sided
Jacobian band [2^-4, (1 - 1/sqrt2)^-4] scales cylinder measures, and the
Borel-Bernstein bounds c_bb and c_tail are derived once, from that band,
the census minimum area, and the lattice shell envelope, with every
inequality of the derivation recorded in DerivedConstants.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt
from multiprocessing import Pool

from .census import prototype_census, region_area, shell_count, eq3_reference_region
from .errors import InsufficientHits, InvalidDigit
from .fastexpand import digit_norms, digit_prefix_matches, khinchin_counts, levy_logq
from .gaussian import GaussInt, abs_sq
from .hcf import convergents, DigitString
from .quadratics import Surd
from .regions import cylinder_region, region_classify, EMPTY
from .reportio import Z99, make_report, wilson_ci
from .rng import SampleSpec, sample_ints

__all__ = [
    "USequenceSpec",
    "DerivedConstants",
    "derive_constants",
    "estimate_cylinder_measure",
    "ratio_band_check",
    "bb_experiment",
    "levy_estimate",
    "khinchin_experiment",
    "next_digit_cap_check",
]

_CHUNK = 2048

# rational bracket of sqrt(2), exact to 1e-20
_SQRT2_LO = Fraction(isqrt(2 * 10**40), 10**20)
_SQRT2_HI = _SQRT2_LO + Fraction(1, 10**20)


def _pow4_upper(x: float) -> float:
    return x * x * x * x


class USequenceSpec:
    """Threshold sequence u_n > 0: n^alpha, a constant, or an explicit list.

    u_n^2 must be exactly rational for the digit comparisons, so power
    exponents are restricted to half-integers (2*alpha integral), which
    covers n and sqrt(n); constants are taken as exact decimals.
    """

    def __init__(self, kind, value):
        self.kind = kind
        if kind == "power":
            alpha = Fraction(value)
            if (2 * alpha).denominator != 1:
                raise ValueError("power exponent must be a half-integer")
            self.alpha = alpha
        elif kind == "constant":
            self.const = Fraction(value)
            if self.const <= 0:
                raise ValueError("u must be positive")
        elif kind == "explicit":
            self.values = [Fraction(v) for v in value]
            if any(v <= 0 for v in self.values):
                raise ValueError("u must be positive")
        else:
            raise ValueError(f"unknown kind {kind}")

    @classmethod
    def parse(cls, text: str) -> "USequenceSpec":
        kind, _, arg = text.partition(":")
        if kind == "power":
            return cls("power", arg)
        if kind in ("const", "constant"):
            return cls("constant", arg)
        if kind == "explicit":
            return cls("explicit", arg.split(","))
        raise ValueError(f"cannot parse u-sequence {text!r}")

    def u_squared(self, n: int) -> Fraction:
        if self.kind == "power":
            e = int(2 * self.alpha)
            return Fraction(n) ** e if e >= 0 else Fraction(1, n ** (-e))
        if self.kind == "constant":
            return self.const * self.const
        return self.values[n - 1] ** 2

    def u_float(self, n: int) -> float:
        return math.sqrt(self.u_squared(n))

    def describe(self):
        if self.kind == "power":
            return {"kind": "power", "alpha": str(self.alpha)}
        if self.kind == "constant":
            return {"kind": "constant", "value": str(self.const)}
        return {"kind": "explicit", "values": [str(v) for v in self.values]}

    def series_u_minus2_converges(self) -> bool:
        """Whether sum u_n^-2 converges (decidable for power/constant)."""
        if self.kind == "power":
            return self.alpha > Fraction(1, 2)
        return False


class DerivedConstants:
    """Explicit constants behind the paper's asymptotic notation.

    kappa1 = (2 - sqrt 2)/4 and kappa = 4 + 2 sqrt 2 = 1/kappa1 bound the
    approximation quality; kappa3 = 4 (sqrt2 - 1)^-4 = 68 + 48 sqrt 2.
    jac_lo = 2^-4 and jac_hi = (1 - 1/sqrt2)^-4 (= kappa3) are the
    two-sided bounds on |q_n|^4 |t'| over the square.

    c_bb: for every regular prefix and M >= 2,
        P(||b|| <= M | prefix) <= 1 - c_bb / (M+1)^2,
    via the chain  ratio(b) >= (jac_lo/jac_hi) area_min / (|b|+1)^4,
    |b|+1 <= sqrt2 (m+1) on the shell ||b|| = m, at least c3 m regular
    digits per shell (c3 = 3/2 from the reference shape, which every
    regular shape contains up to rotation), m/(m+1)^4 >= (m+1)^-3 / 2,
    sum_(j>=K) j^-3 >= 1/(2 K^2), and (M+1)/(M+2) >= 3/4:
        c_bb = (jac_lo/jac_hi) area_min c3 (9/256).

    c_tail: in the opposite direction, with at most 8m digits per shell,
    ratio(b) <= (jac_hi/jac_lo) (1/area_min) / (|b|-1)^4, |b| >= m, and
    sum_(m>=K) 8m/(m-1)^4 <= 24/(K-1)^2:
        P(||a_(n+1)|| >= u | prefix) <= c_tail / (u-1)^2,
        c_tail = 24 (jac_hi/jac_lo) / area_min.
    """

    def __init__(self, area_min: Fraction, c3: Fraction):
        self.kappa1 = Surd(Fraction(1, 2), Fraction(-1, 4), 2)
        self.kappa = Surd(4, 2, 2)
        self.kappa3 = Surd(68, 48, 2)
        self.jac_lo = Fraction(1, 16)
        self.jac_hi = Surd(68, 48, 2)
        self.area_min = area_min
        self.c3 = c3
        jac_ratio_lo = (68 - 48 * _SQRT2_HI) / 256      # < jac_lo/jac_hi
        jac_ratio_hi = 16 * (68 + 48 * _SQRT2_HI)       # > jac_hi/jac_lo
        self.c_bb = jac_ratio_lo * area_min * c3 * Fraction(9, 256)
        self.c_tail = 24 * jac_ratio_hi / area_min
        self.levy_b = None
        self.big_d = None

    def with_levy(self, levy_b: float, big_d=None):
        self.levy_b = levy_b
        self.big_d = big_d if big_d is not None else 1.2 * levy_b
        if not self.big_d > levy_b:
            raise ValueError("big_d must exceed the Levy estimate")
        return self

    def to_json(self):
        out = {
            "kappa1": float(self.kappa1),
            "kappa": float(self.kappa),
            "kappa3": float(self.kappa3),
            "jac_lo": float(self.jac_lo),
            "jac_hi": float(self.jac_hi),
            "area_min": float(self.area_min),
            "shell_slope_c3": float(self.c3),
            "c_bb": float(self.c_bb),
            "c_tail": float(self.c_tail),
        }
        if self.levy_b is not None:
            out["levy_b"] = self.levy_b
            out["big_d"] = self.big_d
        return out


def derive_constants(census=None) -> DerivedConstants:
    """Build DerivedConstants from a census (depth 8 by default)."""
    if census is None:
        census = prototype_census(max_depth=8)
    area_min = census.min_proper_area()
    ref = eq3_reference_region()
    c3 = min(Fraction(shell_count(ref, m), m) for m in range(2, 51))
    return DerivedConstants(area_min, c3)


# --------------------------------------------------------------------------
# chunked deterministic execution

def _run_chunks(worker, args, count, workers):
    """Map worker over fixed-size index chunks; reduce in index order."""
    chunks = [(lo, min(lo + _CHUNK, count)) for lo in range(0, count, _CHUNK)]
    jobs = [(args, lo, hi) for lo, hi in chunks]
    if workers <= 1:
        results = [worker(job) for job in jobs]
    else:
        with Pool(processes=workers) as pool:
            results = pool.map(worker, jobs, chunksize=1)
    return results


def _sum_reduce(parts):
    """Elementwise sum of equally-shaped nested list structures."""
    def add(a, b):
        if isinstance(a, list):
            return [add(x, y) for x, y in zip(a, b)]
        return a + b
    out = parts[0]
    for p in parts[1:]:
        out = add(out, p)
    return out


# --------------------------------------------------------------------------
# cylinder measure and digit ratios

def _prefix_worker(job):
    (seed, bits, depth, prefix, split), lo, hi = job
    hits_prefix = 0
    hits_full = 0
    for i in range(lo, hi):
        j, k = sample_ints(seed, i, bits)
        matched = digit_prefix_matches(j, k, bits, prefix)
        if matched >= split:
            hits_prefix += 1
            if matched == len(prefix):
                hits_full += 1
    return [hits_prefix, hits_full]


def _cylinder_band(digits):
    """[jac_lo area_lo, jac_hi area_hi] / |q_n|^4 for the prefix, or None."""
    region = cylinder_region(digits)
    if region.is_empty:
        return (0.0, 0.0), (0.0, 0.0), region
    area = region_area(region)
    conv = convergents(DigitString(GaussInt(0), tuple(digits), False))
    _, q = conv.pair(len(digits))
    nq2 = abs_sq(q) ** 2
    lo = (1.0 / 16.0) * area[0] / nq2 * (1 - 1e-12)
    hi = float(Surd(68, 48, 2)) * area[1] / nq2 * (1 + 1e-12)
    return (lo, hi), area, region


def estimate_cylinder_measure(digits, spec: SampleSpec, workers=1):
    """Fraction of samples whose digit prefix equals the given digits,
    checked against the Jacobian-area band."""
    digits = list(digits)
    band, area, region = _cylinder_band(digits)
    prefix = tuple((d.re, d.im) for d in digits)
    if region.is_empty:
        parts = _run_chunks(_prefix_worker,
                            (spec.seed, spec.bits, spec.depth, prefix,
                             len(prefix)), spec.count, workers)
        hits = _sum_reduce(parts)[1]
        estimate = hits / spec.count
        payload = {
            "prefix": [d.to_json() for d in digits],
            "classification": "Empty",
            "hits": hits, "total": spec.count,
            "estimate": estimate,
            "band": [0.0, 0.0],
            "verdict": "pass" if hits == 0 else "fail",
        }
        return make_report("measure", spec.to_json(), payload)
    parts = _run_chunks(_prefix_worker,
                        (spec.seed, spec.bits, spec.depth, prefix,
                         len(prefix)), spec.count, workers)
    hits = _sum_reduce(parts)[1]
    estimate = hits / spec.count
    ci = wilson_ci(hits, spec.count)
    if len(prefix) == 0:
        verdict = "pass" if estimate == 1.0 else "fail"
    elif hits < 100:
        verdict = "insufficient"
    else:
        verdict = "pass" if band[0] <= estimate <= band[1] else "fail"
    payload = {
        "prefix": [d.to_json() for d in digits],
        "classification": region_classify(region),
        "hits": hits, "total": spec.count,
        "estimate": estimate,
        "wilson_99": list(ci),
        "band": list(band),
        "area": list(area),
        "verdict": verdict,
    }
    return make_report("measure", spec.to_json(), payload)


def ratio_band_check(prefix, b, spec: SampleSpec, workers=1):
    """Conditional probability of digit b after the prefix, with band.

    The 100-hit sufficiency gate applies to the conditioning count (the
    number of trials): digits with |b| large legitimately have tiny
    conditional probability and small absolute counts.
    """
    if abs_sq(b) < 2:
        raise InvalidDigit(str(b))
    prefix = list(prefix)
    extended = prefix + [b]
    pre_region = cylinder_region(prefix)
    ext_region = cylinder_region(extended)
    if pre_region.is_empty:
        raise InvalidDigit("prefix has an empty cylinder")
    pre_area = region_area(pre_region)
    ext_area = region_area(ext_region) if not ext_region.is_empty else (0.0, 0.0)
    want = tuple((d.re, d.im) for d in extended)
    parts = _run_chunks(_prefix_worker,
                        (spec.seed, spec.bits, spec.depth, want, len(prefix)),
                        spec.count, workers)
    hits_prefix, hits_full = _sum_reduce(parts)
    jac_ratio = float(Surd(68, 48, 2)) * 16
    nb = abs_sq(b)
    babs = math.sqrt(nb)
    band_lo = (ext_area[0] / max(pre_area[1], 1e-30)) / jac_ratio \
        / _pow4_upper(babs + 1) * (1 - 1e-12)
    band_hi = (ext_area[1] / max(pre_area[0], 1e-30)) * jac_ratio \
        / _pow4_upper(max(babs - 1, 1e-30)) * (1 + 1e-12)
    paper_lo = (ext_area[0] / max(pre_area[1], 1e-30)) / jac_ratio / (16 * nb * nb)
    paper_hi = (ext_area[1] / max(pre_area[0], 1e-30)) * jac_ratio \
        * float(Surd(68, 48, 2)) / (nb * nb)
    if hits_prefix < 100:
        verdict = "insufficient"
        ratio = None
        ci = None
    else:
        ratio = hits_full / hits_prefix
        ci = list(wilson_ci(hits_full, hits_prefix))
        verdict = "pass" if band_lo <= ratio <= band_hi else "fail"
    payload = {
        "prefix": [d.to_json() for d in prefix],
        "digit": b.to_json(),
        "hits_prefix": hits_prefix,
        "hits_extended": hits_full,
        "ratio": ratio,
        "wilson_99": ci,
        "band": [band_lo, band_hi],
        "paper_form_band": [paper_lo, paper_hi],
        "areas": {"prefix": list(pre_area), "extended": list(ext_area)},
        "verdict": verdict,
    }
    return make_report("ratio", spec.to_json(), payload)


# --------------------------------------------------------------------------
# Borel-Bernstein

def _bb_worker(job):
    (seed, bits, depth, u2list, windows, cumdepths), lo, hi = job
    nwin = len(windows)
    win_mod = [0] * nwin
    win_sup = [0] * nwin
    win_sup_scaled = [0] * nwin
    win_cover = [0] * nwin
    cum_mod = [0] * len(cumdepths)
    cum_sup = [0] * len(cumdepths)
    exhausted = 0
    for i in range(lo, hi):
        j, k = sample_ints(seed, i, bits)
        norms = digit_norms(j, k, bits, depth)
        if len(norms) < depth:
            exhausted += 1
        first_mod = None
        first_sup = None
        for n, (sup, nrm) in enumerate(norms, start=1):
            num, den = u2list[n - 1]
            if first_mod is None and nrm * den >= num:
                first_mod = n
            if first_sup is None and sup * sup * den >= num:
                first_sup = n
            if first_mod is not None and first_sup is not None:
                break
        for w, (wlo, whi) in enumerate(windows):
            if len(norms) <= wlo:
                continue
            win_cover[w] += 1
            hit_mod = hit_sup = hit_scaled = False
            for n in range(wlo + 1, min(whi, len(norms)) + 1):
                sup, nrm = norms[n - 1]
                num, den = u2list[n - 1]
                if not hit_mod and nrm * den >= num:
                    hit_mod = True
                if not hit_sup and sup * sup * den >= num:
                    hit_sup = True
                if not hit_scaled and 2 * sup * sup * den >= num:
                    hit_scaled = True
                if hit_mod and hit_sup and hit_scaled:
                    break
            # the sandwich E_inf(u) <= E(u) <= E_inf(u/sqrt2) per sample
            assert (not hit_sup or hit_mod) and (not hit_mod or hit_scaled)
            win_mod[w] += hit_mod
            win_sup[w] += hit_sup
            win_sup_scaled[w] += hit_scaled
        for c, cd in enumerate(cumdepths):
            if first_mod is not None and first_mod <= cd:
                cum_mod[c] += 1
            if first_sup is not None and first_sup <= cd:
                cum_sup[c] += 1
    return [win_mod, win_sup, win_sup_scaled, win_cover, cum_mod, cum_sup,
            [exhausted]]


def bb_experiment(u: USequenceSpec, spec: SampleSpec, windows,
                  constants: DerivedConstants = None, workers=1):
    """Zero-one law experiment: window hit fractions and cumulative
    fractions for the events |a_n| >= u_n and ||a_n|| >= u_n."""
    windows = [(int(lo), int(hi)) for lo, hi in windows]
    for lo, hi in windows:
        if not 0 <= lo < hi <= spec.depth:
            raise ValueError(f"window ({lo}, {hi}] outside depth")
    u2list = [(u.u_squared(n).numerator, u.u_squared(n).denominator)
              for n in range(1, spec.depth + 1)]
    cumdepths = sorted({hi for _, hi in windows} | {spec.depth})
    parts = _run_chunks(
        _bb_worker,
        (spec.seed, spec.bits, spec.depth, u2list, windows, cumdepths),
        spec.count, workers)
    win_mod, win_sup, win_scaled, win_cover, cum_mod, cum_sup, (exhausted,) = \
        _sum_reduce(parts)

    tail_bounds = []
    c_tail = float(constants.c_tail) if constants else None
    for (lo, hi) in windows:
        if c_tail is None:
            tail_bounds.append(None)
            continue
        total = 0.0
        for n in range(lo + 1, hi + 1):
            un = u.u_float(n)
            term = 1.0 if un <= 2.0 else min(1.0, c_tail / (un - 1.0) ** 2)
            total += term
        tail_bounds.append(min(1.0, total))

    window_rows = []
    for w, (lo, hi) in enumerate(windows):
        cover = win_cover[w]
        row = {
            "window": [lo, hi],
            "covered": cover,
            "hits_mod": win_mod[w],
            "hits_sup": win_sup[w],
            "hits_sup_scaled": win_scaled[w],
            "frac_mod": win_mod[w] / cover if cover else None,
            "frac_sup": win_sup[w] / cover if cover else None,
            "frac_sup_scaled": win_scaled[w] / cover if cover else None,
            "wilson_99_mod": list(wilson_ci(win_mod[w], cover)) if cover else None,
            "tail_bound": tail_bounds[w],
        }
        window_rows.append(row)
    cumulative = [{
        "depth": cd,
        "frac_mod": cum_mod[c] / spec.count,
        "frac_sup": cum_sup[c] / spec.count,
        "wilson_99_mod": list(wilson_ci(cum_mod[c], spec.count)),
    } for c, cd in enumerate(cumdepths)]
    payload = {
        "u": u.describe(),
        "series_converges": u.series_u_minus2_converges(),
        "windows": window_rows,
        "cumulative": cumulative,
        "exhausted_samples": exhausted,
        "sandwich_ok": all(
            r["hits_sup"] <= r["hits_mod"] <= r["hits_sup_scaled"]
            for r in window_rows),
    }
    if constants:
        payload["constants"] = constants.to_json()
    return make_report("bb", spec.to_json(), payload)


def _cap_worker(job):
    (seed, bits, depth, prefix, cap_sq), lo, hi = job
    trials = 0
    capped = 0
    plen = len(prefix)
    for i in range(lo, hi):
        j, k = sample_ints(seed, i, bits)
        digs = [d for d in _take(j, k, bits, plen + 1)]
        if len(digs) < plen + 1 or tuple(digs[:plen]) != tuple(prefix):
            continue
        trials += 1
        br, bi = digs[plen]
        if max(abs(br), abs(bi)) ** 2 <= cap_sq:
            capped += 1
    return [trials, capped]


def _take(j, k, bits, n):
    from .fastexpand import iter_digits
    return [(int(ar), int(ai)) for ar, ai in iter_digits(j, k, bits, n)]


def next_digit_cap_check(prefix, cap_m: int, spec: SampleSpec,
                         constants: DerivedConstants, workers=1):
    """Eq-LowBow: P(||b|| <= M | prefix) <= 1 - c_bb/(M+1)^2 at 99%."""
    prefix_t = tuple((d.re, d.im) for d in prefix)
    parts = _run_chunks(
        _cap_worker,
        (spec.seed, spec.bits, spec.depth, prefix_t, cap_m * cap_m),
        spec.count, workers)
    trials, capped = _sum_reduce(parts)
    bound = 1.0 - float(constants.c_bb) / (cap_m + 1) ** 2
    if trials < 100:
        verdict = "insufficient"
        ci = None
    else:
        ci = wilson_ci(capped, trials)
        verdict = "pass" if ci[0] <= bound else "fail"
    payload = {
        "prefix": [d.to_json() for d in prefix],
        "cap_m": cap_m,
        "trials": trials,
        "capped": capped,
        "fraction": capped / trials if trials else None,
        "wilson_99": list(ci) if ci else None,
        "upper_bound": bound,
        "c_bb": float(constants.c_bb),
        "verdict": verdict,
    }
    return make_report("lowbow", spec.to_json(), payload)


# --------------------------------------------------------------------------
# Levy constant

def _levy_worker(job):
    (seed, bits, checkpoints), lo, hi = job
    ncp = len(checkpoints)
    count = [0] * ncp
    s1 = [0.0] * ncp
    s2 = [0.0] * ncp
    exhausted = [0] * ncp
    for i in range(lo, hi):
        j, k = sample_ints(seed, i, bits)
        vals = levy_logq(j, k, bits, checkpoints)
        for c, v in enumerate(vals):
            if v is None:
                exhausted[c] += 1
            else:
                count[c] += 1
                s1[c] += v
                s2[c] += v * v
    return [count, s1, s2, exhausted]


def levy_estimate(spec: SampleSpec, checkpoints, workers=1):
    """Sample statistics of (1/n) log|q_n| at the checkpoints."""
    checkpoints = sorted(int(c) for c in checkpoints)
    if checkpoints[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if checkpoints[-1] > spec.depth:
        raise ValueError("checkpoint beyond depth")
    parts = _run_chunks(_levy_worker, (spec.seed, spec.bits, checkpoints),
                        spec.count, workers)
    count, s1, s2, exhausted = _sum_reduce(parts)
    rows = []
    for c, cp in enumerate(checkpoints):
        n = count[c]
        mean = s1[c] / n if n else None
        sd = None
        if n >= 2:
            var = max((s2[c] - s1[c] * s1[c] / n) / (n - 1), 0.0)
            sd = math.sqrt(var)
        rows.append({"checkpoint": cp, "samples": n, "exhausted": exhausted[c],
                     "mean": mean, "sd": sd})
    final = rows[-1]
    b_est = final["mean"]
    ci_half = Z99 * final["sd"] / math.sqrt(final["samples"]) \
        if final["samples"] >= 2 else None
    payload = {
        "checkpoints": rows,
        "levy_b": b_est,
        "levy_b_ci_99": [b_est - ci_half, b_est + ci_half]
        if ci_half is not None else None,
        "relative_sd_final": final["sd"] / final["mean"]
        if final["sd"] is not None and final["mean"] else None,
    }
    return make_report("levy", spec.to_json(), payload)


# --------------------------------------------------------------------------
# Khinchin corollary

def _khinchin_worker(job):
    (seed, bits, depth, checkpoints, bn, bd, kpow), lo, hi = job
    ncp = len(checkpoints)
    sum_counts = [0] * ncp
    grew = 0
    flat = 0
    fired_total = 0
    violations = 0
    for i in range(lo, hi):
        j, k = sample_ints(seed, i, bits)
        counts, fired = khinchin_counts(j, k, bits, depth, checkpoints,
                                        bn, bd, kpow)
        for c in range(ncp):
            sum_counts[c] += counts[c]
        if counts[-1] > counts[0]:
            grew += 1
        else:
            flat += 1
        fired_total += len(fired)
        for (n, pr, pi, qr, qi) in fired:
            # exact recheck of |z - p_n/q_n| <= |q_n|^(-beta) with
            # z = (j + ik)/W: squaring and clearing denominators gives
            # N((j+ik) q - p W)^bd * N(q)^(bn - bd) <= W^(2 bd)
            # (the q power moves right when bn < bd)
            ar = j * qr - k * qi - (pr << bits)
            ai = j * qi + k * qr - (pi << bits)
            nnum = ar * ar + ai * ai
            nq = qr * qr + qi * qi
            lhs = nnum ** bd
            rhs = 1 << (2 * bd * bits)
            if bn >= bd:
                lhs *= nq ** (bn - bd)
            else:
                rhs *= nq ** (bd - bn)
            if lhs > rhs:
                violations += 1
    return [sum_counts, [grew, flat, fired_total, violations]]


def khinchin_experiment(beta, spec: SampleSpec, big_d, checkpoints=(256, 512),
                        workers=1):
    """Certificate counts for psi(x) = x^-beta and their growth in depth.

    Every fired certificate is re-verified exactly; the payload reports
    the violation count, which must be zero.
    """
    beta = Fraction(beta)
    checkpoints = sorted(int(c) for c in checkpoints)
    if checkpoints[-1] > spec.depth:
        raise ValueError("checkpoint beyond depth")
    bn, bd = beta.numerator, beta.denominator
    kpow = Surd(24, 16, 2) ** bd
    parts = _run_chunks(
        _khinchin_worker,
        (spec.seed, spec.bits, spec.depth, checkpoints, bn, bd,
         (kpow.p.numerator, kpow.c.numerator)),
        spec.count, workers)
    sum_counts, (grew, flat, fired_total, violations) = _sum_reduce(parts)
    exponent = 3 - 2 * beta      # sum n^3 psi(n)^2 = sum n^(3 - 2 beta)
    series = {}
    for cp in checkpoints:
        series[str(cp)] = sum(float(n) ** float(exponent)
                              for n in range(1, cp + 1))
    payload = {
        "psi": {"kind": "power", "beta": str(beta)},
        "big_d": big_d,
        "checkpoints": checkpoints,
        "mean_counts": [sc / spec.count for sc in sum_counts],
        "grew": grew,
        "flat": flat,
        "grew_fraction": grew / spec.count,
        "fired_total": fired_total,
        "verified_violations": violations,
        "comparison_series_n3psi2": series,
        "series_converges": exponent < -1,
    }
    return make_report("khinchin", spec.to_json(), payload)
