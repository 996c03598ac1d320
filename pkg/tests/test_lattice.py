import pytest

from mvder.algebra import boolean_algebra, make_chain, make_product
from mvder.derivations import chi, enumerate_operators, identity, is_derivation, principal, zero_map
from mvder.errors import InvalidArgumentError, IsomorphismUnknown
from mvder.lattice import (
    Poset,
    a_lattice,
    algebra_lattice,
    boolean_center_poset,
    chain_der_isomorphism,
    chi_filter_check,
    constructive_meet,
    der_lattice_coincidences,
    derivation_poset,
    export_hasse,
    family_isomorphism,
    find_lattice_isomorphism,
    is_lattice_isomorphism,
    meet_failures,
    operator_leq,
    operator_poset,
    peel,
    pointwise_join,
    pointwise_meet,
)
from mvder.structure import algebra_from_chains

from oracles import brute_force_covers

B4 = boolean_algebra(4)
L3 = make_chain(3)


def test_poset_rejects_non_orders():
    with pytest.raises(InvalidArgumentError):
        Poset((0, 1), ((True, True), (True, True)))
    with pytest.raises(InvalidArgumentError):
        Poset((0, 1), ((False, False), (False, True)))
    with pytest.raises(InvalidArgumentError):
        Poset.from_relation([0, 1, 2], lambda a, b: a == b or (a, b) in {(0, 1), (1, 2)})
    with pytest.raises(InvalidArgumentError):
        Poset((0,), ((True, True),))


def test_divisor_lattice():
    P = Poset.from_relation([1, 2, 3, 6], lambda a, b: b % a == 0)
    assert P.covers == ((0, 1), (0, 2), (1, 3), (2, 3))
    assert P.is_lattice and P.height == 2
    assert P.join_table[1][2] == 3 and P.meet_table[1][2] == 0


def test_non_lattice_reports_missing_bound():
    # two minimal and two maximal elements, all comparable across levels
    P = Poset.from_relation(["a", "b", "c", "d"],
                            lambda x, y: x == y or (x in "ab" and y in "cd"))
    assert not P.is_lattice and P.join_table is None
    assert P.missing_bound()[0] in ("join", "meet")


@pytest.mark.parametrize("shape", [(2,), (3,), (4,), (2, 2), (2, 3)])
def test_der_covers_match_definition(shape):
    A = algebra_from_chains(shape)
    P = derivation_poset(A)
    assert sorted(P.covers) == brute_force_covers(list(P.items), operator_leq)


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (4,)])
def test_der_bounds_match_brute_force(shape):
    A = algebra_from_chains(shape)
    P = derivation_poset(A)
    items = list(P.items)
    for i, d in enumerate(items):
        for j, e in enumerate(items):
            ups = [u for u in items if operator_leq(d, u) and operator_leq(e, u)]
            lub = [u for u in ups if all(operator_leq(u, w) for w in ups)]
            downs = [u for u in items if operator_leq(u, d) and operator_leq(u, e)]
            glb = [u for u in downs if all(operator_leq(w, u) for w in downs)]
            assert [items[P.join_table[i][j]]] == lub
            assert [items[P.meet_table[i][j]]] == glb
            assert items[P.meet_table[i][j]] == constructive_meet(P, i, j)


def test_join_is_pointwise():
    ders = enumerate_operators(make_product([make_chain(2), make_chain(3)]))
    S = set(ders)
    assert all(pointwise_join(d, e) in S for d in ders for e in ders)


def test_pointwise_meet_stays_inside_der_b4():
    # exhaustive: all 81 ordered pairs of Der(L2 x L2) have a derivation as meet
    assert meet_failures(B4) == []


@pytest.mark.parametrize("shape,count", [((2, 3), 54), ((2, 2, 2), 1729)])
def test_pointwise_meet_can_leave_der(shape, count):
    A = algebra_from_chains(shape)
    bad = meet_failures(A)
    assert len(bad) == count
    d, e, m = bad[0]
    assert not is_derivation(A, m)
    assert pointwise_meet(d, e) == (m, False)
    # the poset meet is a derivation below the pointwise one
    P = derivation_poset(A)
    g = P.items[P.meet_table[P.index(d)][P.index(e)]]
    assert is_derivation(A, g) and operator_leq(g, m) and g != m


def test_pointwise_meet_on_chains_stays_inside():
    assert meet_failures(make_chain(5)) == []


def test_bounds_of_der():
    A = make_product([make_chain(2), make_chain(3)])
    P = derivation_poset(A)
    z, i = P.index(zero_map(A)), P.index(identity(A))
    assert all(P.leq[z][k] and P.leq[k][i] for k in range(len(P)))


def count_pair_covers(n):
    pts = [(x, y) for x in range(n) for y in range(n) if y <= x and (x, y) != (0, 0)]
    return len(brute_force_covers(pts, lambda p, q: p[0] <= q[0] and p[1] <= q[1]))


@pytest.mark.parametrize("n", range(2, 8))
def test_pair_lattice_cover_count(n):
    A = a_lattice(n)
    assert len(A) == (n - 1) * (n + 2) // 2
    assert len(A.covers) == count_pair_covers(n)


def test_der_chain_cover_counts():
    # L2..L5; L5 also equals the pair-lattice count below
    assert [len(derivation_poset(make_chain(n)).covers) for n in (2, 3, 4, 5)] == [1, 5, 11, 19]


@pytest.mark.parametrize("n", range(2, 8))
def test_chain_der_isomorphism(n):
    D, Q, f = chain_der_isomorphism(n)
    assert f is not None and is_lattice_isomorphism(D, Q, f)


def test_isomorphism_search_without_candidate():
    D = derivation_poset(make_chain(5))
    f = find_lattice_isomorphism(D, a_lattice(5))
    assert f is not None and is_lattice_isomorphism(D, a_lattice(5), f)


def test_isomorphism_search_negative():
    assert find_lattice_isomorphism(derivation_poset(make_chain(4)), derivation_poset(B4)) is None
    # a bare 3-chain is L(L3)
    chain3 = Poset.from_relation([0, 1, 2], lambda a, b: a <= b)
    assert find_lattice_isomorphism(chain3, algebra_lattice(make_chain(3))) is not None
    with pytest.raises(InvalidArgumentError):
        find_lattice_isomorphism(operator_poset([principal(L3, 1), chi(L3, 0)]), chain3)


def test_isomorphism_cap():
    A = make_product([make_chain(3), make_chain(3)])
    P = derivation_poset(A)
    with pytest.raises(IsomorphismUnknown):
        find_lattice_isomorphism(P, P, limit=64)
    ident = {i: i for i in range(len(P))}
    assert find_lattice_isomorphism(P, P, candidate=ident, limit=64) == ident


def test_candidate_that_fails_falls_back_to_search():
    L = algebra_lattice(make_chain(4))
    swap = {0: 1, 1: 0, 2: 2, 3: 3}
    assert find_lattice_isomorphism(L, L, candidate=swap) == {0: 0, 1: 1, 2: 2, 3: 3}


@pytest.mark.parametrize("shape", [(4,), (2, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("family", ["pder", "chi", "ider"])
def test_family_isomorphisms(shape, family):
    A = algebra_from_chains(shape)
    P, Q, f = family_isomorphism(A, family)
    assert f is not None
    assert all(Q.items[f[i]] == d(A.one) for i, d in enumerate(P.items))


def test_family_sizes():
    A = make_product([make_chain(2), make_chain(3)])
    assert len(family_isomorphism(A, "ider")[0]) == 4
    assert len(boolean_center_poset(A)) == 4
    with pytest.raises(InvalidArgumentError):
        family_isomorphism(A, "nope")


@pytest.mark.parametrize("shape", [(2,), (3,), (5,), (2, 2), (2, 3), (2, 2, 2)])
def test_chi_filter(shape):
    assert chi_filter_check(algebra_from_chains(shape))


def test_chi_filter_needs_lattice():
    not_lattice = operator_poset([principal(L3, 1), chi(L3, 0)])
    with pytest.raises(InvalidArgumentError):
        chi_filter_check(L3, not_lattice)


def test_coincidence_search():
    assert der_lattice_coincidences([make_chain(4), B4]) == []
    assert der_lattice_coincidences([make_chain(3), make_chain(3)]) == [(0, 1, "isomorphic")]


def test_dot_export_l2():
    text = export_hasse(derivation_poset(make_chain(2)), "dot")
    assert text == (
        "digraph {\n"
        "  rankdir=BT;\n"
        '  { rank=same; "0 0"; }\n'
        '  { rank=same; "0 1"; }\n'
        '  "0 0" -> "0 1";\n'
        "}\n"
    )


def test_dot_export_edges_are_covers():
    P = derivation_poset(make_chain(4))
    text = export_hasse(P, "dot")
    edges = [line for line in text.splitlines() if "->" in line]
    assert len(edges) == len(P.covers) == 11
    assert text.startswith("digraph {\n  rankdir=BT;")


def naive_peel(P, maximal):
    left = list(range(len(P)))
    out = []
    while left:
        if maximal:
            layer = [i for i in left if all(j == i or not P.leq[i][j] for j in left)]
        else:
            layer = [i for i in left if all(j == i or not P.leq[j][i] for j in left)]
        out.append(layer)
        left = [i for i in left if i not in layer]
    return out


def test_layers_export():
    A = make_product([make_chain(2), make_chain(3)])
    P = derivation_poset(A)
    assert peel(P) == naive_peel(P, False)
    assert peel(P, maximal=True) == naive_peel(P, True)
    text = export_hasse(P, "layers")
    top, bottom = text.rstrip("\n").split("\n\n")
    assert top.splitlines()[0] == P.labels[P.index(zero_map(A))]
    assert bottom.splitlines()[0] == P.labels[P.index(identity(A))]
    assert sum(len(line.split(", ")) for line in top.splitlines()) == 33


def test_layers_export_l3():
    assert export_hasse(derivation_poset(L3), "layers") == (
        "0 0 0\n0 0 1/2, 0 1/2 0\n0 1/2 1/2\n0 1/2 1\n\n"
        "0 1/2 1\n0 1/2 1/2\n0 0 1/2, 0 1/2 0\n0 0 0\n"
    )


def test_export_unknown_format():
    with pytest.raises(InvalidArgumentError):
        export_hasse(algebra_lattice(L3), "svg")
