import itertools
import json

import pytest

from rootcomponents.rootdata import Root, RootClass, build_cartan, classify_root, f_set, positive_real_roots
from rootcomponents.verify import (
    PRV_WITNESSES,
    CaseKind,
    Status,
    classify_wahl_case,
    delta_series_report,
    expected_exceptional_rows,
    hom_dim_direct,
    hom_dim_prediction,
    rho_beta_dominance_check,
    verify_exceptional_table,
    verify_homdim,
    verify_lemma_root_scan,
    verify_positivity,
    verify_prv,
    verify_prv_witness,
    verify_theorem_main,
)
from rootcomponents.weights import Weight, enumerate_wahl_triples

A1 = build_cartan("A1")
L0, L1 = Weight.fundamental(A1, 0), Weight.fundamental(A1, 1)


# --- main theorem sweep ---------------------------------------------------


def test_theorem_small_sweep():
    rep = verify_theorem_main(A1, 2, 2, 2)
    assert rep.status is Status.PASS and rep.ok
    assert rep.instances_checked == len(enumerate_wahl_triples(A1, 2, 2, 2)) > 0
    assert rep.window["depth"] == 4
    assert set(rep.details["triples_by_root_class"]) <= {"real", "imaginary"}


def test_theorem_vacuous():
    rep = verify_theorem_main(A1, 0, 2, 2)
    assert rep.instances_checked == 0 and rep.status is Status.PASS


def test_theorem_small_window_is_inconclusive_not_failure():
    rep = verify_theorem_main(A1, 2, 2, 2, depth=0)
    assert not rep.failures
    assert rep.status is Status.INCONCLUSIVE
    assert all("exceeds window" in x["reason"] for x in rep.inconclusive)
    capped = verify_theorem_main(A1, 2, 2, 2, max_table_depth=0)
    assert not capped.failures and capped.inconclusive


def test_theorem_parallel_determinism():
    cd = build_cartan("A2")
    a = verify_theorem_main(cd, 2, 1, 1, parallelism=1)
    b = verify_theorem_main(cd, 2, 1, 1, parallelism=4)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert a.to_text(timing=False) == b.to_text(timing=False)


def test_positivity_report():
    rep = verify_positivity(build_cartan("C2"), 2, 1, 2)
    assert rep.ok
    assert rep.details["cartan_pairs"] > 0


# --- exceptional table --------------------------------------------------------


@pytest.mark.parametrize("label", [f"B{n}" for n in range(3, 7)] + [f"C{n}" for n in range(2, 7)] + ["F4", "G2"])
def test_exceptional_table_nonsimply_laced(label):
    cd = build_cartan(label)
    rep = verify_exceptional_table(cd)
    assert rep.ok, rep.failures
    assert len(rep.details["rows"]) == len(expected_exceptional_rows(cd)) > 0


@pytest.mark.parametrize("label", ["A1", "A4", "D4", "D6", "E6", "E7", "E8"])
def test_exceptional_table_simply_laced_empty(label):
    rep = verify_exceptional_table(build_cartan(label))
    assert rep.ok and rep.details["rows"] == []


def test_exceptional_table_explicit_rows():
    # B3: gamma = a_i + ... + a_{l-1} with j = l
    assert sorted(expected_exceptional_rows(build_cartan("B3"))) == [((0, 1, 0), 3), ((1, 1, 0), 3)]
    # C3: gamma = 2a_i + ... + 2a_{l-1} + a_l with j = i-1
    assert sorted(expected_exceptional_rows(build_cartan("C3"))) == [((0, 0, 1), 2), ((0, 2, 1), 1)]


def test_lemma_root_scan_report():
    rep = verify_lemma_root_scan(build_cartan("C3"), 3)
    assert rep.ok and rep.instances_checked > 0


# --- PRV witnesses ------------------------------------------------------------


@pytest.mark.parametrize("witness", PRV_WITNESSES, ids=lambda w: w.name)
def test_prv_witnesses(witness):
    rep = verify_prv_witness(witness, 2)
    assert rep.ok, (rep.failures, rep.inconclusive)
    assert all(rep.details["identities"].values())
    assert rep.details["mult"] >= 1


def test_prv_identity_words_give_cartan_component():
    cd = build_cartan("C2")
    lam = Weight.from_pairings(cd, [1, 0, 1])
    mu = Weight.from_pairings(cd, [0, 2, 0])
    rep = verify_prv(cd, lam, mu, "e", "e", 0)
    assert rep.ok and rep.details["mult"] == 1


def test_prv_precondition_and_window():
    # s1 L1 + L0 = L0 + L1 - alpha_1 pairs to -1 with alpha_1^vee
    rep = verify_prv(A1, L1, L0, "s1", "e", 2)
    assert rep.status is Status.INCONCLUSIVE
    assert "not dominant" in rep.inconclusive[0]["reason"]
    # s0 L0 + L0 = 2L0 - alpha_0 sits at delta-degree 1
    rep = verify_prv(A1, L0, L0, "s0", "e", 0)
    assert rep.status is Status.INCONCLUSIVE and "exceeds window" in rep.inconclusive[0]["reason"]
    ok = verify_prv(A1, L0, L0, "s0", "e", 1)
    assert ok.ok and ok.details["mult"] == 1


# --- proof routing ------------------------------------------------------------


def test_classify_examples():
    rho = Weight.rho(A1)
    assert classify_wahl_case(A1, rho, rho, Root.delta(A1)).kind is CaseKind.IMAGINARY
    assert classify_wahl_case(A1, L1, L1, Root.simple(A1, 1)).kind is CaseKind.FINITE_POSITIVE
    assert classify_wahl_case(A1, L0, L0, Root.simple(A1, 0)).kind is CaseKind.NO_DOUBLE_DESCENT
    with pytest.raises(ValueError):
        classify_wahl_case(A1, L0, L0, Root.simple(A1, 1))


@pytest.mark.parametrize("label,max_level,max_k", [("A2", 2, 2), ("C2", 3, 2), ("B3", 2, 1), ("G2", 3, 2)])
def test_classify_is_total(label, max_level, max_k):
    cd = build_cartan(label)
    kinds = set()
    for lam, mu, beta in enumerate_wahl_triples(cd, max_level, max_k, 2):
        case = classify_wahl_case(cd, lam, mu, beta)
        kinds.add(case.kind)
        if case.kind is CaseKind.EXCEPTIONAL:
            assert case.row in set(expected_exceptional_rows(cd))
        str(case)
    if cd.type.family == "A":
        assert CaseKind.EXCEPTIONAL not in kinds
    if label == "G2":
        assert CaseKind.EXCEPTIONAL in kinds


def test_case_strings():
    from rootcomponents.verify import WahlCase

    assert str(WahlCase(CaseKind.UNIQUE_DOUBLE_DESCENT, 2, True)) == "UniqueDoubleDescent(2, true)"
    assert str(WahlCase(CaseKind.EXCEPTIONAL, row=((0, 1), 1))) == "Exceptional(a2, a1)"


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "D4", "F4"])
def test_rho_beta_dominance(label):
    rep = rho_beta_dominance_check(build_cartan(label), 2)
    assert rep.ok and rep.instances_checked > 0


def test_rho_beta_dominance_g2_is_exempt():
    rep = rho_beta_dominance_check(build_cartan("G2"), 2)
    assert rep.ok
    assert rep.details["exempt_misses"]


# --- Hom-space dimensions -----------------------------------------------------


def _four_case_table(cd, beta, S):
    """The dimension table written out case by case."""
    if beta.is_zero():
        return 1
    support = {i for i, c in enumerate(beta.simple_coords(cd)) if c}
    if not beta.is_positive(cd) or support <= S:
        return 0
    if classify_root(cd, beta) is RootClass.REAL:
        return 1 if S <= f_set(cd, beta) else 0
    return cd.rank - len(S)


@pytest.mark.parametrize("label", ["A2", "C2"])
def test_homdim_four_cases_exhaustive(label):
    cd = build_cartan(label)
    betas = [Root.delta(cd, 0), Root.delta(cd), Root.delta(cd, 2)] + list(positive_real_roots(cd, 2))
    seen = set()
    for r in range(cd.rank + 2):
        for S in map(frozenset, itertools.combinations(cd.indices, r)):
            for beta in betas:
                n = 1 + max(abs(beta.coroot_pairing(cd, i)) for i in cd.indices)
                lam = Weight.from_pairings(cd, [0 if i in S else n for i in cd.indices])
                if lam.level < 1:
                    continue
                mu = lam
                theta = (lam + mu).minus_root(cd, beta)
                if not theta.is_dominant(cd):
                    continue
                got = hom_dim_prediction(cd, lam, mu, theta, S)
                assert got == _four_case_table(cd, beta, S), (sorted(S), beta.to_str())
                assert got == hom_dim_direct(cd, lam, mu, theta, S)
                seen.add(got)
    assert {0, 1, cd.rank} <= seen


def test_homdim_examples():
    cd = build_cartan("A2")
    rho = Weight.rho(cd)
    assert hom_dim_prediction(cd, rho, rho, 2 * rho, []) == 1
    assert hom_dim_prediction(cd, rho, rho, (2 * rho).shift(-1), []) == 2
    lam = Weight.from_pairings(cd, [0, 2, 2])
    assert hom_dim_prediction(cd, lam, lam, (2 * lam).shift(-1), [0]) == 1
    with pytest.raises(ValueError):
        hom_dim_prediction(cd, rho, rho, 2 * rho, [0])


@pytest.mark.parametrize("label", ["A1", "A2", "C2", "G2"])
def test_verify_homdim(label):
    rep = verify_homdim(build_cartan(label), 2)
    assert rep.ok and rep.instances_checked > 0


# --- delta series -------------------------------------------------------------


def test_delta_series_gap_example():
    rep = delta_series_report(A1, L0, L0, 6)
    assert rep.ok
    row = next(r for r in rep.details["series"] if r["nu"] == "2*L0")
    assert row["prediction"] == "GapAtOne"
    assert row["m_k"] == [1, 0, 1, 1, 2, 2, 3]


def test_delta_series_rho():
    for label in ["A1", "A2"]:
        cd = build_cartan(label)
        rho = Weight.rho(cd)
        rep = delta_series_report(cd, rho, rho, 2 if label == "A2" else 4)
        assert rep.ok
        top = next(r for r in rep.details["series"] if r["nu"] == (2 * rho).to_str(cd))
        assert top["prediction"] == "AllK"


def test_report_serialization():
    rep = verify_theorem_main(A1, 1, 1, 1)
    j = rep.to_json(timing=False)
    assert "elapsed_seconds" not in j
    assert json.loads(json.dumps(j)) == j
    assert "elapsed_seconds" in rep.to_json()
    assert rep.to_text(timing=False).startswith("theorem1 [A1~]: PASS")
