"""Big-integer hot loops for the Monte Carlo experiments.

The samples are dyadic, so the whole expansion is exact: a remainder is
kept as an unreduced Gaussian fraction num/den whose denominator is the
previous numerator.  This is the continuant recursion run backward, so
operand sizes stay near |q_n| * 2^bits instead of squaring, and no gcd
reduction is ever needed.  gmpy2 integers carry the multiplications.

The loop is the same floor-based Gauss map as the exact engine in hcf.py
and is cross-checked against it in the tests.
"""

from __future__ import annotations

import math

from gmpy2 import mpz

__all__ = ["iter_digits", "expand_rational", "digit_norms", "digits_exact",
           "digit_prefix_matches", "levy_logq", "khinchin_counts"]

_LN2 = 0.6931471805599453


def iter_digits(jr, ji, bits, depth):
    """Yield the Hurwitz digits (ar, ai) of z = (jr + i ji)/2^bits in F.

    Stops early only when the orbit hits 0 exactly.
    """
    nr, ni = mpz(jr), mpz(ji)
    dr, di = mpz(1) << bits, mpz(0)
    for _ in range(depth):
        if not nr and not ni:
            return
        ns = nr * nr + ni * ni
        ns2 = 2 * ns
        tr = dr * nr + di * ni
        ti = di * nr - dr * ni
        ar = (2 * tr + ns) // ns2
        ai = (2 * ti + ns) // ns2
        yield ar, ai
        nr, ni, dr, di = dr - (ar * nr - ai * ni), di - (ar * ni + ai * nr), nr, ni


def expand_rational(num_re, num_im, den, max_depth):
    """Full expansion of (num_re + i num_im)/den, den a positive integer.

    Returns (a0, digits, p_N, q_N, terminated, det_ok, growth_ok): the
    digit list as int pairs, the last convergent pair including a0, and
    exact per-index checks of the determinant identity
    q_n p_(n-1) - q_(n-1) p_n = (-1)^n and of strict |q_n|^2 growth.
    """
    den = mpz(den)
    a0r = (2 * num_re + den) // (2 * den)
    a0i = (2 * num_im + den) // (2 * den)
    nr, ni = mpz(num_re) - a0r * den, mpz(num_im) - a0i * den
    dr, di = den, mpz(0)
    pr_prev, pi_prev = mpz(1), mpz(0)
    pr, pi = a0r, a0i
    qr_prev, qi_prev = mpz(0), mpz(0)
    qr, qi = mpz(1), mpz(0)
    digits = []
    det_ok = True
    growth_ok = True
    sign = -1          # (-1)^n for the first appended index n = 1
    prev_nq = mpz(1)   # abs_sq(q_0)
    for _ in range(max_depth):
        if not nr and not ni:
            break
        ns = nr * nr + ni * ni
        ns2 = 2 * ns
        tr = dr * nr + di * ni
        ti = di * nr - dr * ni
        ar = (2 * tr + ns) // ns2
        ai = (2 * ti + ns) // ns2
        digits.append((int(ar), int(ai)))
        pr, pi, pr_prev, pi_prev = (ar * pr - ai * pi + pr_prev,
                                    ar * pi + ai * pr + pi_prev, pr, pi)
        qr, qi, qr_prev, qi_prev = (ar * qr - ai * qi + qr_prev,
                                    ar * qi + ai * qr + qi_prev, qr, qi)
        det_re = (qr * pr_prev - qi * pi_prev) - (qr_prev * pr - qi_prev * pi)
        det_im = (qr * pi_prev + qi * pr_prev) - (qr_prev * pi + qi_prev * pr)
        if det_re != sign or det_im != 0:
            det_ok = False
        sign = -sign
        nq = qr * qr + qi * qi
        if nq <= prev_nq:
            growth_ok = False
        prev_nq = nq
        nr, ni, dr, di = (dr - (ar * nr - ai * ni),
                          di - (ar * ni + ai * nr), nr, ni)
    terminated = not nr and not ni
    return ((int(a0r), int(a0i)), digits, (pr, pi), (qr, qi), terminated,
            det_ok, growth_ok)


def digit_norms(jr, ji, bits, depth):
    """(sup_norm, abs_sq) of each digit, as plain ints."""
    return [(int(max(abs(ar), abs(ai))), int(ar * ar + ai * ai))
            for ar, ai in iter_digits(jr, ji, bits, depth)]


def digits_exact(jr, ji, bits, depth):
    """The digit list [(re, im), ...] as plain ints."""
    return [(int(ar), int(ai)) for ar, ai in iter_digits(jr, ji, bits, depth)]


def digit_prefix_matches(jr, ji, bits, prefix):
    """How many leading digits agree with prefix (a list of (re, im))."""
    matched = 0
    for (ar, ai), (wr, wi) in zip(iter_digits(jr, ji, bits, len(prefix)),
                                  prefix):
        if ar != wr or ai != wi:
            break
        matched += 1
    return matched


def _log_int(n) -> float:
    """ln(n) for a positive big integer, relative error below 1e-12."""
    nb = n.bit_length()
    shift = max(nb - 53, 0)
    return math.log(int(n >> shift)) + shift * _LN2


def levy_logq(jr, ji, bits, checkpoints):
    """(1/n) log|q_n| at each checkpoint; None where the orbit exhausted.

    log|q_n| = log(abs_sq(q_n))/2, read off the top bits of the exact big
    integer, so the relative error is far below 1e-9.
    """
    checkpoints = sorted(checkpoints)
    marks = set(checkpoints)
    qr_prev, qi_prev = mpz(0), mpz(0)   # q_(-1)
    qr, qi = mpz(1), mpz(0)             # q_0
    results = {}
    n = 0
    for ar, ai in iter_digits(jr, ji, bits, checkpoints[-1]):
        qr, qi, qr_prev, qi_prev = (ar * qr - ai * qi + qr_prev,
                                    ar * qi + ai * qr + qi_prev, qr, qi)
        n += 1
        if n in marks:
            results[n] = 0.5 * _log_int(qr * qr + qi * qi) / n
    return [results.get(cp) for cp in checkpoints]


def khinchin_counts(jr, ji, bits, depth, checkpoints, beta_num, beta_den,
                    kappa_pow):
    """Certificate counts for psi(x) = x^-beta, beta = beta_num/beta_den.

    The certificate at index n is kappa^2 <= |a_(n+1)|^2 |q_n|^(2 - beta)
    ... squared and cleared of denominators:

        kappa^(2 bd) <= |a_(n+1)|^(2 bd) * (|q_n|^2)^(2 bd - bn)

    with kappa^(2 bd) = (24 + 16 sqrt 2)^bd = A + B sqrt 2 precomputed by
    the caller as kappa_pow = (A, B).  It implies, via the approximation
    bound, that |z - p_n/q_n| <= psi(|q_n|).  Returns (counts at the
    checkpoints, fired certificates as (n, p_re, p_im, q_re, q_im)).
    """
    checkpoints = sorted(checkpoints)
    marks = set(checkpoints)
    A, B = mpz(kappa_pow[0]), mpz(kappa_pow[1])
    rhs_exp = 2 * beta_den - beta_num
    qr_prev, qi_prev = mpz(0), mpz(0)
    qr, qi = mpz(1), mpz(0)
    pr_prev, pi_prev = mpz(1), mpz(0)
    pr, pi = mpz(0), mpz(0)             # a0 = 0: samples live in F
    fired = []
    count = 0
    counts_at = {}
    n = 0
    nq = mpz(1)                         # abs_sq(q_n)
    for ar, ai in iter_digits(jr, ji, bits, checkpoints[-1]):
        na = ar * ar + ai * ai
        lhs, lhs_rad = A, B
        rhs = na ** beta_den
        if rhs_exp >= 0:
            rhs *= nq ** rhs_exp
        else:
            scale = nq ** (-rhs_exp)
            lhs, lhs_rad = lhs * scale, lhs_rad * scale
        diff = rhs - lhs
        if diff >= 0 and diff * diff >= 2 * lhs_rad * lhs_rad:
            count += 1
            fired.append((n, int(pr), int(pi), int(qr), int(qi)))
        qr, qi, qr_prev, qi_prev = (ar * qr - ai * qi + qr_prev,
                                    ar * qi + ai * qr + qi_prev, qr, qi)
        pr, pi, pr_prev, pi_prev = (ar * pr - ai * pi + pr_prev,
                                    ar * pi + ai * pr + pi_prev, pr, pi)
        n += 1
        nq = qr * qr + qi * qi
        if n in marks:
            counts_at[n] = count
    for cp in checkpoints:
        counts_at.setdefault(cp, count)
    return [counts_at[cp] for cp in checkpoints], fired
