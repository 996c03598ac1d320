import pytest

from mvder.algebra import from_tables, make_chain, make_product
from mvder.derivations import Operator, chi, enumerate_operators
from mvder.verify import check_names, run_suite

L3 = make_chain(3)


def by_name(results):
    return {r.name: r for r in results}


def test_names_unique():
    names = check_names()
    assert len(names) == len(set(names))


@pytest.mark.parametrize("algebra", [make_chain(4), make_product([make_chain(2), make_chain(2)])])
def test_clean_run(algebra):
    results = run_suite(algebra)
    assert all(r.status in ("pass", "skip") for r in results)
    assert sum(r.status == "pass" for r in results) > 30


def test_seeded_operator_is_caught():
    bogus = Operator(L3, (0, 2, 2))
    res = by_name(run_suite(L3, ders=enumerate_operators(L3) + [bogus]))
    r = res["d(0) = 0 and d(x) <= x"]
    assert r.status == "fail" and "d = 0 1 1, x = 1/2" in r.witnesses


def test_missing_derivation_is_caught():
    ders = [d for d in enumerate_operators(L3) if d != chi(L3, 0)]
    res = by_name(run_suite(L3, ders=ders))
    assert res["every chi(u) and every d_a is a derivation"].witnesses == ["chi(0)"]
    assert res["patching d at 1 below d(1) stays a derivation"].status == "fail"
    assert res["chains: |Der| = (n-1)(n+2)/2 and Der = {(d_x)^y}"].status == "fail"


def test_broken_table_reports_axiom_witness():
    oplus = [list(r) for r in L3.oplus]
    oplus[1][1] = 1
    results = run_suite(from_tables(3, oplus, L3.neg))
    head = results[0]
    assert head.name == "MV axioms" and head.status == "fail"
    assert head.witnesses and head.witnesses[0].startswith("MV")
    assert all(r.status == "skip" for r in results[1:])


def test_result_json():
    r = run_suite(make_chain(2))[0]
    assert r.to_dict() == {"check": "MV axioms", "status": "pass", "violations": 0, "witnesses": []}
