"""Chang's infinite MV-chain, handled symbolically.

Elements are ``kc`` (tag LOWER) and ``(kc)*`` (tag UPPER) for k >= 0, so that
LOWER 0 is 0 and UPPER 0 is 1.  Claims about the whole chain can only be
checked on finite windows {kc, (kc)* : k <= K}; reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import NamedTuple, Optional

from .errors import InvalidArgumentError

LOWER = "lower"
UPPER = "upper"


class ChangElement(NamedTuple):
    tag: str
    k: int

    def key(self):
        # 0 < c < 2c < ... < (2c)* < c* < 1
        return (0, self.k) if self.tag == LOWER else (1, -self.k)

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __gt__(self, other):
        return self.key() > other.key()

    def __ge__(self, other):
        return self.key() >= other.key()

    def __str__(self):
        k = self.k
        if self.tag == LOWER:
            return "0" if k == 0 else "c" if k == 1 else f"{k}c"
        return "1" if k == 0 else "c*" if k == 1 else f"({k}c)*"


def lower(k):
    if not isinstance(k, int) or k < 0:
        raise InvalidArgumentError(f"k must be a nonnegative integer, got {k!r}")
    return ChangElement(LOWER, k)


def upper(k):
    if not isinstance(k, int) or k < 0:
        raise InvalidArgumentError(f"k must be a nonnegative integer, got {k!r}")
    return ChangElement(UPPER, k)


ZERO = ChangElement(LOWER, 0)
ONE = ChangElement(UPPER, 0)
C = ChangElement(LOWER, 1)
C_STAR = ChangElement(UPPER, 1)


def chang_oplus(a, b):
    if a.tag == LOWER and b.tag == LOWER:
        return ChangElement(LOWER, a.k + b.k)
    if a.tag == UPPER and b.tag == UPPER:
        return ONE
    n, m = (a.k, b.k) if a.tag == LOWER else (b.k, a.k)
    # nc + (mc)*
    return ONE if m <= n else ChangElement(UPPER, m - n)


def chang_neg(a):
    return ChangElement(UPPER if a.tag == LOWER else LOWER, a.k)


def chang_odot(a, b):
    return chang_neg(chang_oplus(chang_neg(a), chang_neg(b)))


def chang_vee(a, b):
    return chang_oplus(chang_odot(a, chang_neg(b)), b)


def chang_wedge(a, b):
    return chang_odot(a, chang_oplus(chang_neg(a), b))


def chang_leq(a, b):
    return chang_oplus(chang_neg(a), b) == ONE


def remark_derivation(x):
    """x . c* on the upper half, the identity on the lower half."""
    return chang_odot(x, C_STAR) if x.tag == UPPER else x


def principal_cstar(x):
    return chang_odot(x, C_STAR)


def window(K):
    """All elements with k <= K, in increasing order."""
    return [ChangElement(LOWER, k) for k in range(K + 1)] + \
        [ChangElement(UPPER, k) for k in range(K, -1, -1)]


@dataclass(frozen=True)
class WindowReport:
    window: int
    eq1_ok: bool
    injective_on_window: bool
    image_of_one: str
    first_failure: Optional[tuple] = None

    def to_dict(self):
        return {
            "window": self.window,
            "eq1_ok": self.eq1_ok,
            "injective_on_window": self.injective_on_window,
            "image_of_one": self.image_of_one,
            "scope": f"verified for k <= {self.window}",
        }


def verify_window(op, K):
    """Check the derivation law for ``op`` on every pair from the k <= K window."""
    if not isinstance(K, int) or K < 1:
        raise InvalidArgumentError(f"window must be an integer >= 1, got {K!r}")
    W = window(K)
    image = {x: op(x) for x in W}
    memo = {}

    def odot(a, b):
        r = memo.get((a, b))
        if r is None:
            r = memo[(a, b)] = chang_odot(a, b)
        return r

    def vee(a, b):
        r = memo.get((a, b, "v"))
        if r is None:
            r = memo[(a, b, "v")] = chang_vee(a, b)
        return r

    def d(a):
        r = image.get(a)
        if r is None:
            r = image[a] = op(a)
        return r

    failure = None
    for x, y in cartesian(W, W):
        lhs = d(odot(x, y))
        rhs = vee(odot(image[x], y), odot(x, image[y]))
        if lhs != rhs:
            failure = (str(x), str(y))
            break
    return WindowReport(
        window=K,
        eq1_ok=failure is None,
        injective_on_window=len({image[x] for x in W}) == len(W),
        image_of_one=str(op(ONE)),
        first_failure=failure,
    )


def window_axiom_violations(K):
    """MV1-MV6 and the order dichotomy on the k <= K window; list of (name, witness)."""
    W = window(K)
    p, s = chang_oplus, chang_neg
    bad = []
    for x in W:
        if p(x, ZERO) != x:
            bad.append(("MV3", (x,)))
        if s(s(x)) != x:
            bad.append(("MV4", (x,)))
        if p(x, ONE) != ONE:
            bad.append(("MV5", (x,)))
        for y in W:
            if p(x, y) != p(y, x):
                bad.append(("MV2", (x, y)))
            if p(s(p(s(x), y)), y) != p(s(p(s(y), x)), x):
                bad.append(("MV6", (x, y)))
            if chang_leq(x, y) != (x <= y):
                bad.append(("order", (x, y)))
            for z in W:
                if p(x, p(y, z)) != p(p(x, y), z):
                    bad.append(("MV1", (x, y, z)))
    return bad
