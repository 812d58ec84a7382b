import json

from k3latt.binforms import EvenBinaryForm
from k3latt.catalog import load_catalog, repro_section4, repro_section5, repro_table1
from k3latt.discforms import FiniteQF
from k3latt.lattice import determinant, signature

CAT = load_catalog()


class TestCatalogData:
    def test_families_present(self):
        assert [f.name for f in CAT.families] == [
            "G6", "G8", "G12", "TxV", "OxT", "TTp", "OOpp", "TxT"]

    def test_extremal_metadata(self):
        assert CAT.extremal_ids == (322, 173, 102, 148, 276)
        assert {f.name for f in CAT.families if f.extremal} == {"G6", "TxV", "TTp"}

    def test_rank2_count(self):
        assert len(CAT.rank2_matrices()) == 26

    def test_stored_matrices_consistent(self):
        for fam in CAT.families:
            if fam.general is not None:
                assert determinant(fam.general.gram) == fam.general.d
                assert fam.general.gram.is_even()
                assert signature(fam.general.gram) == (2, 1)
            for case in fam.singular:
                assert determinant(case.gram) == case.d
                assert case.gram.is_even()
                f = EvenBinaryForm.from_matrix(case.gram.rows)
                assert f.is_reduced()

    def test_ns_forms_have_matching_order(self):
        for fam in CAT.families:
            for case in fam.singular:
                if case.ns_form is not None:
                    assert case.ns_form.group_order == case.d

    def test_general_expected_forms(self):
        for name in ("TxV", "OxT"):
            g = CAT.family(name).general
            assert g.expected_form is not None
            assert g.expected_form.group_order == abs(g.d)
            assert FiniteQF.from_lattice(g.gram).is_isomorphic(g.expected_form)


class TestTable1:
    def test_all_rows_pass(self):
        rep = repro_table1(CAT)
        failures = [r for r in rep.rows if not r.ok]
        assert rep.passed, failures

    def test_expected_row_kinds(self):
        rep = repro_table1(CAT)
        by_key = {(r.family, r.case): r for r in rep.rows}
        assert by_key[("TxV", "general")].status == "rank-3 verification"
        assert by_key[("G6", "general")].status == "consistency"
        assert "withheld" in by_key[("OOpp", "8,1")].status
        assert by_key[("OxT", "8,3")].status == "derivation"

    def test_derived_matrices_match_goldens(self):
        rep = repro_table1(CAT)
        derived = {(r.family, r.case): r.detail for r in rep.rows if r.status == "derivation"}
        assert derived[("OxT", "8,1")] == "derived [4 2; 2 8]"
        assert derived[("OxT", "8,3")] == "derived [12 0; 0 14]"
        assert derived[("TxT", "8,1")] == "derived [2 1; 1 4]"

    def test_idempotent(self):
        a = repro_table1(CAT)
        b = repro_table1(CAT)
        assert a == b


class TestSection4:
    def test_report(self):
        rep = repro_section4(CAT)
        assert rep.passed
        details = {(r.family, r.case): r.detail for r in rep.rows}
        assert "p=5" in details[("TxV", "general")]
        assert "p=7" in details[("OxT", "general")]
        assert "witness" in details[("control", "U+(2)")]


class TestSection5:
    def test_all_embeddable(self):
        rep = repro_section5(CAT)
        assert rep.passed
        assert len(rep.rows) == 26


class TestOverride:
    def test_data_override(self, tmp_path):
        # a deliberately inconsistent catalog must fail its consistency row
        data = {
            "families": [{
                "name": "X", "display": "X", "general": None,
                "singular": [{"case": "1", "matrix": [[2, 0], [0, 2]], "d": 5}],
            }],
        }
        p = tmp_path / "cat.json"
        p.write_text(json.dumps(data))
        cat = load_catalog(str(p))
        rep = repro_table1(cat)
        assert not rep.passed
