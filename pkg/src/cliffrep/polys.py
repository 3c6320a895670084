"""Dense univariate polynomials over a field handle.

Polynomials are lists of raw field values in ascending order: ``p[k]`` is
the coefficient of ``t**k``.  The zero polynomial is the empty list.  All
helpers take the field handle first and never mutate their arguments.
"""

from __future__ import annotations


def trim(F, p):
    p = list(p)
    while p and F.is_zero(p[-1]):
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def add(F, p, q):
    n = max(len(p), len(q))
    z = F.zero
    return trim(F, [F.add(p[i] if i < len(p) else z, q[i] if i < len(q) else z) for i in range(n)])


def sub(F, p, q):
    n = max(len(p), len(q))
    z = F.zero
    return trim(F, [F.sub(p[i] if i < len(p) else z, q[i] if i < len(q) else z) for i in range(n)])


def scale(F, c, p):
    return trim(F, [F.mul(c, x) for x in p])


def mul(F, p, q):
    if not p or not q:
        return []
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if F.is_zero(x):
            continue
        for j, y in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def divmod_(F, p, q):
    """Quotient and remainder of ``p`` by nonzero ``q``."""
    q = trim(F, q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(F, p)
    dq = len(q) - 1
    lead_inv = F.inv(q[-1])
    if len(r) <= dq:
        return [], r
    quo = [F.zero] * (len(r) - dq)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = F.mul(r[-1], lead_inv)
        quo[shift] = c
        for j, y in enumerate(q):
            r[shift + j] = F.sub(r[shift + j], F.mul(c, y))
        r = trim(F, r)
    return trim(F, quo), r


def monic(F, p):
    p = trim(F, p)
    if not p:
        return p
    return scale(F, F.inv(p[-1]), p)


def gcd(F, p, q):
    """Monic greatest common divisor (zero if both inputs are zero)."""
    a, b = trim(F, p), trim(F, q)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def xgcd(F, p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = trim(F, p), trim(F, q)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        quo, rem = divmod_(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(F, s0, mul(F, quo, s1))
        t0, t1 = t1, sub(F, t0, mul(F, quo, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def derivative(F, p):
    return trim(F, [F.mul(F.from_int(k), p[k]) for k in range(1, len(p))])


def evaluate(F, p, x):
    acc = F.zero
    for c in reversed(p):
        acc = F.add(F.mul(acc, x), c)
    return acc


def powmod(F, base, e: int, mod):
    result = [F.one]
    base = divmod_(F, base, mod)[1]
    while e > 0:
        if e & 1:
            result = divmod_(F, mul(F, result, base), mod)[1]
        base = divmod_(F, mul(F, base, base), mod)[1]
        e >>= 1
    return result
