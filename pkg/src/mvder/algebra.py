"""Finite MV-algebras given by Cayley tables.

An algebra is stored as its ``oplus`` table and its negation table over the
carrier ``0..n-1``.  Element ``0`` is the zero; every other operation
(``odot``, lattice join and meet, the natural order) is derived from the two
stored tables and cached on first use.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian

from .errors import InvalidSizeError, MalformedTableError, ResourceLimitError

DEFAULT_MAX_ELEMENTS = 4096
MAX_ELEMENTS_ENV = "MVDER_MAX_ELEMENTS"


def max_elements(override=None):
    """Return the active carrier size cap (explicit value, env var, default)."""
    if override is not None:
        return int(override)
    env = os.environ.get(MAX_ELEMENTS_ENV)
    if env:
        return int(env)
    return DEFAULT_MAX_ELEMENTS


@dataclass(frozen=True)
class FiniteMvAlgebra:
    n: int
    oplus: tuple
    neg: tuple
    names: tuple
    # Set only by make_product; used for index <-> coordinate tuple conversion.
    factors: tuple = field(default=(), compare=False, repr=False)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return self.neg[0]

    @property
    def elements(self):
        return range(self.n)

    def name(self, x):
        return self.names[x]

    def index(self, name):
        try:
            return self.names.index(str(name))
        except ValueError:
            raise KeyError(name) from None

    # -- derived tables -------------------------------------------------

    @cached_property
    def odot_table(self):
        p, s = self.oplus, self.neg
        return tuple(tuple(s[p[s[x]][s[y]]] for y in range(self.n)) for x in range(self.n))

    @cached_property
    def vee_table(self):
        p, s, m = self.oplus, self.neg, self.odot_table
        return tuple(tuple(p[m[x][s[y]]][y] for y in range(self.n)) for x in range(self.n))

    @cached_property
    def wedge_table(self):
        p, s, m = self.oplus, self.neg, self.odot_table
        return tuple(tuple(m[x][p[s[x]][y]] for y in range(self.n)) for x in range(self.n))

    @cached_property
    def leq_table(self):
        p, s, one = self.oplus, self.neg, self.one
        return tuple(tuple(p[s[x]][y] == one for y in range(self.n)) for x in range(self.n))

    @cached_property
    def downsets(self):
        """``downsets[x]`` lists every y <= x in index order."""
        le = self.leq_table
        return tuple(tuple(y for y in range(self.n) if le[y][x]) for x in range(self.n))

    # -- operations -----------------------------------------------------

    def add(self, x, y):
        return self.oplus[x][y]

    def star(self, x):
        return self.neg[x]

    def odot(self, x, y):
        return self.odot_table[x][y]

    def vee(self, x, y):
        return self.vee_table[x][y]

    def wedge(self, x, y):
        return self.wedge_table[x][y]

    def leq(self, x, y):
        return self.leq_table[x][y]

    def power(self, x, k):
        """``x`` multiplied with itself ``k`` times under odot; ``x^0 = 1``."""
        r = self.one
        for _ in range(k):
            r = self.odot_table[r][x]
        return r

    def is_chain(self):
        le = self.leq_table
        return all(le[x][y] or le[y][x] for x in range(self.n) for y in range(self.n))

    # -- products -------------------------------------------------------

    @property
    def is_product(self):
        return bool(self.factors)

    def to_tuple(self, x):
        if not self.factors:
            raise ValueError("algebra was not built by make_product")
        coords = []
        for f in reversed(self.factors):
            x, r = divmod(x, f.n)
            coords.append(r)
        return tuple(reversed(coords))

    def from_tuple(self, coords):
        if not self.factors:
            raise ValueError("algebra was not built by make_product")
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        x = 0
        for f, c in zip(self.factors, coords):
            if not 0 <= c < f.n:
                raise ValueError(f"coordinate {c} out of range for factor of size {f.n}")
            x = x * f.n + c
        return x

    def __repr__(self):
        return f"FiniteMvAlgebra(n={self.n}, names={list(self.names)})"

    def to_dict(self):
        return {
            "n": self.n,
            "oplus": [list(row) for row in self.oplus],
            "neg": list(self.neg),
            "names": list(self.names),
        }

    @classmethod
    def from_dict(cls, data):
        return from_tables(data["n"], data["oplus"], data["neg"], data.get("names"))


# Module-level spellings of the derived operations.

def odot(A, x, y):
    return A.odot_table[x][y]


def ovee(A, x, y):
    return A.vee_table[x][y]


def owedge(A, x, y):
    return A.wedge_table[x][y]


def leq(A, x, y):
    return A.leq_table[x][y]


def _fraction_name(k, d):
    return str(Fraction(k, d))


def make_chain(n):
    """The n-element MV-chain L_n = {0, 1/(n-1), ..., 1} with truncated addition."""
    if not isinstance(n, int) or n < 2:
        raise InvalidSizeError(f"a chain needs at least 2 elements, got {n!r}")
    top = n - 1
    oplus = tuple(tuple(min(top, i + j) for j in range(n)) for i in range(n))
    neg = tuple(top - i for i in range(n))
    names = tuple(_fraction_name(k, top) for k in range(n))
    return FiniteMvAlgebra(n, oplus, neg, names)


def make_product(factors, max_size=None):
    """Direct product with pointwise operations.

    Elements are indexed lexicographically by coordinate tuples, first factor
    most significant.
    """
    factors = tuple(factors)
    if not factors:
        raise MalformedTableError("a product needs at least one factor")
    size = 1
    for f in factors:
        size *= f.n
    cap = max_elements(max_size)
    if size > cap:
        raise ResourceLimitError(f"product has {size} elements, cap is {cap}")

    coords = list(cartesian(*(range(f.n) for f in factors)))
    index = {c: i for i, c in enumerate(coords)}
    oplus = tuple(
        tuple(index[tuple(f.oplus[a][b] for f, a, b in zip(factors, cx, cy))] for cy in coords)
        for cx in coords
    )
    neg = tuple(index[tuple(f.neg[a] for f, a in zip(factors, c))] for c in coords)
    names = tuple("(" + ",".join(f.names[a] for f, a in zip(factors, c)) + ")" for c in coords)
    return FiniteMvAlgebra(size, oplus, neg, names, factors)


def boolean_algebra(n):
    """B_n, the n-element Boolean algebra, as a product of copies of L_2."""
    k = n.bit_length() - 1
    if n < 2 or n != 1 << k:
        raise InvalidSizeError(f"Boolean algebras have 2^k >= 2 elements, got {n}")
    return make_product([make_chain(2)] * k)


def with_names(A, names):
    names = tuple(str(s) for s in names)
    if len(names) != A.n or len(set(names)) != A.n:
        raise MalformedTableError("need one distinct name per element")
    return FiniteMvAlgebra(A.n, A.oplus, A.neg, names, A.factors)


def from_tables(n, oplus, neg, names=None):
    """Build an algebra from raw tables.  Axioms are *not* checked here."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedTableError(f"carrier size must be a positive integer, got {n!r}")

    def entry(v, where):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
            raise MalformedTableError(f"{where}: entry {v!r} is not an index in [0, {n})")
        return v

    if len(oplus) != n:
        raise MalformedTableError(f"oplus has {len(oplus)} rows, expected {n}")
    rows = []
    for i, row in enumerate(oplus):
        if len(row) != n:
            raise MalformedTableError(f"oplus row {i} has {len(row)} entries, expected {n}")
        rows.append(tuple(entry(v, f"oplus[{i}]") for v in row))
    if len(neg) != n:
        raise MalformedTableError(f"neg has {len(neg)} entries, expected {n}")
    neg = tuple(entry(v, "neg") for v in neg)
    if names is None:
        names = tuple(str(i) for i in range(n))
    else:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise MalformedTableError(f"{len(names)} names for {n} elements")
    return FiniteMvAlgebra(n, tuple(rows), neg, names)


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "passed": self.passed,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }


def check_axioms(A, first_only=True):
    """Exhaustively test MV1-MV6.

    With ``first_only`` at most one witness is recorded per axiom; otherwise
    every failing tuple is listed.
    """
    p, s, n = A.oplus, A.neg, A.n
    one = s[0]
    report = AxiomReport()
    R = range(n)

    def scan(axiom, tuples, holds):
        for t in tuples:
            if not holds(*t):
                report.violations.append((axiom, t))
                if first_only:
                    return

    scan("MV1", cartesian(R, R, R), lambda x, y, z: p[x][p[y][z]] == p[p[x][y]][z])
    scan("MV2", cartesian(R, R), lambda x, y: p[x][y] == p[y][x])
    scan("MV3", ((x,) for x in R), lambda x: p[x][0] == x)
    scan("MV4", ((x,) for x in R), lambda x: s[s[x]] == x)
    scan("MV5", ((x,) for x in R), lambda x: p[x][one] == one)
    scan("MV6", cartesian(R, R), lambda x, y: p[s[p[s[x]][y]]][y] == p[s[p[s[y]][x]]][x])
    return report
