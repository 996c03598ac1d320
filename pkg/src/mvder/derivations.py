"""(odot, vee)-derivations on finite MV-algebras.

A derivation is a self-map d with d(x . y) = (d(x) . y) v (x . d(y)) for all
x, y, where ``.`` is odot and ``v`` the lattice join.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Optional

from .algebra import FiniteMvAlgebra, make_chain
from .errors import AlgebraMismatchError, InvalidArgumentError, ResourceLimitError
from .structure import Subset, boolean_center, is_downset

DEFAULT_MAX_SEARCH = 10**7


@total_ordering
@dataclass(frozen=True, eq=False)
class Operator:
    """A total self-map of a finite carrier; ``images[x]`` is the image of x."""

    algebra: FiniteMvAlgebra = field(repr=False)
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = self.algebra.n
        if len(images) != n or any(not 0 <= v < n for v in images):
            raise InvalidArgumentError(f"images {images} do not define a map on {n} elements")

    def __call__(self, x):
        return self.images[x]

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def label(self):
        return " ".join(self.algebra.names[v] for v in self.images)

    def __str__(self):
        return self.label()


def _same_algebra(A, *ops):
    for op in ops:
        if op.algebra is not A and op.algebra != A:
            raise AlgebraMismatchError("operator belongs to a different algebra")


def identity(A):
    return Operator(A, range(A.n))


def zero_map(A):
    return Operator(A, (0,) * A.n)


def derivation_violation(A, f):
    """First pair (x, y) breaking the derivation law, or None."""
    _same_algebra(A, f)
    m, v, d = A.odot_table, A.vee_table, f.images
    for x in A.elements:
        mx, dx = m[x], d[x]
        for y in A.elements:
            if d[mx[y]] != v[m[dx][y]][mx[d[y]]]:
                return (x, y)
    return None


def is_derivation(A, f):
    return derivation_violation(A, f) is None


def principal(A, a):
    """d_a(x) = a . x"""
    row = A.odot_table[a]
    return Operator(A, row)


def chi(A, u):
    """Identity off the top element, 1 -> u."""
    images = list(range(A.n))
    images[A.one] = u
    return Operator(A, images)


def modify_at_one(A, d, u):
    """d^u: agrees with d off 1 and sends 1 to u; requires u <= d(1)."""
    _same_algebra(A, d)
    if not A.leq(u, d(A.one)):
        raise InvalidArgumentError(
            f"{A.names[u]} is not below d(1) = {A.names[d(A.one)]}")
    images = list(d.images)
    images[A.one] = u
    return Operator(A, images)


def _pairs_by_completion(A):
    """Group pairs (x, y) by the largest index among x, y and x . y.

    The derivation law for a pair can be decided once that index has been assigned.
    """
    m = A.odot_table
    groups = [[] for _ in range(A.n)]
    for x in A.elements:
        for y in A.elements:
            groups[max(x, y, m[x][y])].append((x, y, m[x][y]))
    return groups


def enumerate_operators(A, max_search=DEFAULT_MAX_SEARCH):
    """Every derivation on A as an Operator, in lexicographic order of images.

    Backtracking assigns d(0), d(1), ... in index order.  Candidates for d(x)
    are restricted to the downset of x and each pair is checked as soon as the
    three images it involves are known.
    """
    n = A.n
    m, v = A.odot_table, A.vee_table
    down = A.downsets
    groups = _pairs_by_completion(A)
    d = [0] * n
    found = []
    visited = 0

    def extend(k):
        nonlocal visited
        if k == n:
            found.append(tuple(d))
            return
        for c in down[k]:
            visited += 1
            if visited > max_search:
                raise ResourceLimitError(
                    f"search visited more than {max_search} partial assignments")
            d[k] = c
            if all(d[xy] == v[m[d[x]][y]][m[x][d[y]]] for x, y, xy in groups[k]):
                extend(k + 1)

    extend(0)
    found.sort()
    return [Operator(A, images) for images in found]


@dataclass(frozen=True)
class DerivationRecord:
    op: Operator
    is_principal: bool
    principal_witness: Optional[int]
    is_isotone: bool
    in_ider: bool
    is_chi: bool
    chi_witness: Optional[int]
    is_idempotent: bool
    is_injective: bool
    fixed_points: Subset

    @property
    def images(self):
        return self.op.images

    def to_dict(self):
        return {
            "images": list(self.op.images),
            "flags": {
                "principal": self.is_principal,
                "witness": self.principal_witness,
                "isotone": self.is_isotone,
                "ider": self.in_ider,
                "chi": self.is_chi,
                "idempotent": self.is_idempotent,
            },
            "fixed_points": list(self.fixed_points),
        }


def is_isotone(A, d):
    le = A.leq_table
    return all(le[d(x)][d(y)] for x in A.elements for y in A.elements if le[x][y])


def is_idempotent(d):
    img = d.images
    return all(img[img[x]] == img[x] for x in range(len(img)))


def principal_witness(A, d):
    """The a with d = d_a, trying a = d(1) first; None when d is not principal."""
    first = d(A.one)
    for a in [first] + [a for a in A.elements if a != first]:
        if A.odot_table[a] == d.images:
            return a
    return None


def fixed_points(A, d):
    return Subset.of(A, (x for x in A.elements if d(x) == x))


def classify(A, d):
    """Compute the classification flags of a derivation."""
    _same_algebra(A, d)
    bad = derivation_violation(A, d)
    if bad is not None:
        raise InvalidArgumentError(f"not a derivation: fails at {bad}")
    one = A.one
    top = d(one)
    witness = principal_witness(A, d)
    isotone = is_isotone(A, d)
    chi_like = all(d(x) == x for x in A.elements if x != one)
    return DerivationRecord(
        op=d,
        is_principal=witness is not None,
        principal_witness=witness,
        is_isotone=isotone,
        in_ider=isotone and A.oplus[top][top] == top,
        is_chi=chi_like,
        chi_witness=top if chi_like else None,
        is_idempotent=is_idempotent(d),
        is_injective=len(set(d.images)) == A.n,
        fixed_points=fixed_points(A, d),
    )


def enumerate_derivations(A, max_search=DEFAULT_MAX_SEARCH):
    """Der(A) as classified records in canonical (lexicographic) order."""
    return [classify(A, d) for d in enumerate_operators(A, max_search)]


def chain_count(n):
    """Closed-form number of derivations on L_n."""
    return (n - 1) * (n + 2) // 2


def chain_derivations(n):
    """Der(L_n) as {(d_x)^y : y <= x, (x, y) != (0, 0)}, ordered by (x, y)."""
    A = make_chain(n)
    return [modify_at_one(A, principal(A, x), y)
            for x in A.elements for y in A.elements
            if y <= x and (x, y) != (0, 0)]


def is_lattice_ideal(A, S):
    if 0 not in S or not is_downset(A, S):
        return False
    v = A.vee_table
    return all(v[x][y] in S for x in S for y in S)


def fixed_point_ideal_check(A, d):
    """Whether Fix_d(A) is a lattice ideal."""
    return is_lattice_ideal(A, fixed_points(A, d))


def ider(A):
    """Isotone derivations with d(1) in the Boolean center: {d_a : a in B(A)}."""
    return sorted(principal(A, a) for a in boolean_center(A))


# -- direct products ------------------------------------------------------

def _check_product(P, k=None):
    if not P.factors:
        raise InvalidArgumentError("algebra was not built by make_product")
    if k is not None and k != len(P.factors):
        raise InvalidArgumentError(f"{k} operators for {len(P.factors)} factors")


def product_derivation(P, ds):
    """(d_1 x ... x d_k)(x_1, ..., x_k) = (d_1(x_1), ..., d_k(x_k))."""
    ds = list(ds)
    _check_product(P, len(ds))
    for f, d in zip(P.factors, ds):
        _same_algebra(f, d)
    images = [P.from_tuple(tuple(d(c) for d, c in zip(ds, P.to_tuple(x))))
              for x in P.elements]
    return Operator(P, images)


def embed(P, i, x):
    """i-th embedding: x in the i-th slot, 0 elsewhere."""
    coords = [0] * len(P.factors)
    coords[i] = x
    return P.from_tuple(coords)


def project_derivation(P, d, i):
    """pi_i . d . rho_i as an operator on the i-th factor (0-based)."""
    _check_product(P)
    _same_algebra(P, d)
    if not 0 <= i < len(P.factors):
        raise InvalidArgumentError(f"factor index {i} out of range")
    F = P.factors[i]
    return Operator(F, [P.to_tuple(d(embed(P, i, x)))[i] for x in F.elements])


def factorizes(P, d):
    """Whether d equals the product of its projections."""
    parts = [project_derivation(P, d, i) for i in range(len(P.factors))]
    return product_derivation(P, parts) == d
