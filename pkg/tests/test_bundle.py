import pytest

from aont import bundle
from aont.constructions import cyclotomic_matrix, cyclotomy_context, doubled_matrix, jsi_matrix, meq_matrix, pg3_design
from aont.density import count_invertible_2_fast
from aont.designs import complement_design, incidence_matrix, verify_bibd
from aont.errors import DataError
from aont.gf2 import is_invertible


def test_catalog_lists_expected_items():
    ids = [e.id for e in bundle.catalog()]
    for want in [f"example{s}" for s in range(5, 13)] + ["exam-3", "exam-4", "exam3", "exam4",
                                                          "doubled8", "cyclotomy17", "pg3-3", "sbibd31-21-14"]:
        assert want in ids
    assert [e.id for e in bundle.catalog("design")] == ["pg3-3", "sbibd31-21-14"]


def test_summaries():
    summaries = {e.summary() for e in bundle.catalog()}
    assert "example9: s=9, N_2=783" in summaries
    assert "example11: s=11, N_2=1744" in summaries
    assert "exam-3: s=3, N_2=7" in summaries
    assert "pg3-3: (40,27,18)-SBIBD" in summaries
    assert all(e.citation for e in bundle.catalog())


@pytest.mark.parametrize("e", bundle.catalog("matrix"), ids=lambda e: e.id)
def test_every_matrix_matches_its_record(e):
    m = bundle.load_matrix(e.id)
    assert m.s == e.s
    assert is_invertible(m) == e.invertible
    assert count_invertible_2_fast(m) == e.expected_n2


def test_bundled_matrices_match_constructions():
    assert bundle.load_matrix("exam-3") == meq_matrix(3)
    assert bundle.load_matrix("exam-4") == meq_matrix(4)
    assert bundle.load_matrix("exam4") == jsi_matrix(4)
    assert bundle.load_matrix("exam3") == jsi_matrix(3)
    assert bundle.load_matrix("doubled8") == doubled_matrix()
    assert bundle.load_matrix("cyclotomy17") == cyclotomic_matrix(cyclotomy_context(17))


def test_design_bundle():
    d = bundle.load_design("pg3-3")
    assert verify_bibd(d).as_tuple() == (40, 27, 18)
    assert sorted(map(sorted, d.blocks)) == sorted(map(sorted, pg3_design(3).blocks))


def test_sbibd31_bundle():
    d = bundle.load_design("sbibd31-21-14")
    small = complement_design(d)
    assert verify_bibd(small).as_tuple() == (31, 10, 3)
    assert is_invertible(incidence_matrix(d)) and not is_invertible(incidence_matrix(small))


def test_lookup_errors():
    with pytest.raises(DataError):
        bundle.entry("example99")
    with pytest.raises(DataError):
        bundle.load_matrix("pg3-3")
    with pytest.raises(DataError):
        bundle.load_design("example5")
    assert issubclass(DataError, ValueError)


def test_to_json():
    j = bundle.entry("example12").to_json()
    assert j == {"id": "example12", "kind": "matrix", "s": 12, "citation": "Appendix A, Example 12",
                 "expected_n2": 2448, "invertible": True}
    assert bundle.entry("pg3-3").to_json()["params"] == [40, 27, 18]
