import math

import pytest

from kgscatter import paperdata
from kgscatter.model import Mode, PotentialKind
from kgscatter.specfun import ArgConvention


def test_store_round_trips_byte_for_byte():
    headers, entries = paperdata.parse_store()
    assert paperdata.serialize_store(headers, entries) == paperdata.TABLE_STORE


def test_every_table_has_twenty_rows_per_column():
    headers, _ = paperdata.parse_store()
    assert [h.table_id for h in headers] == [1, 2, 3, 4, 5, 6]
    for header in headers:
        entries = paperdata.table_entries(header.table_id)
        assert len(entries) == 20 * len(header.columns)
        for kind in header.columns:
            rows = [e for e in entries if e.kind is kind]
            assert sorted({e.l for e in rows}) == [0, 1, 2, 3]


def test_table_shapes():
    headers = {h.table_id: h for h in paperdata.parse_store()[0]}
    assert headers[2].columns == (PotentialKind.VARSHNI, PotentialKind.HELLMANN)
    assert headers[5].columns == (PotentialKind.VARSHNI, PotentialKind.HELLMANN)
    assert headers[4].mode is Mode.NON_RELATIVISTIC
    assert headers[1].sweep_var == "beta"
    assert headers[3].fixed_value("a") == 0.0


def test_varshni_shukla_entries_carry_no_strength():
    for table_id in (1, 4):
        for entry in paperdata.table_entries(table_id):
            if entry.kind is PotentialKind.VARSHNI_SHUKLA:
                assert entry.a == 0.0


def test_coincidence_marks_on_zero_strength_rows():
    marked = [e for e in paperdata.table_entries(3) if e.coincidence]
    assert len(marked) == 12
    assert all(e.b == 0.0 for e in marked)


def test_unknown_table_id():
    with pytest.raises(ValueError):
        paperdata.table_entries(7)


def test_degenerate_entries_are_flagged_not_raised():
    entry = next(
        e
        for e in paperdata.table_entries(1)
        if e.kind is PotentialKind.VARSHNI_SHUKLA and e.l == 0
    )
    record = paperdata.compare_entry(entry, ArgConvention.PRINCIPAL_LOG_GAMMA)
    assert record.status == "degenerate"
    assert record.delta_computed is None
    assert record.reason


def test_compare_entry_reports_both_conventions():
    entry = next(e for e in paperdata.table_entries(4) if e.kind is PotentialKind.HELLMANN)
    record = paperdata.compare_entry(entry, "principal-log-gamma")
    assert record.status in ("match", "wrap_match", "mismatch")
    assert record.abs_diff == pytest.approx(abs(record.delta_computed - entry.delta_paper))
    turns = (record.delta_computed - record.delta_alternate) / (2.0 * math.pi)
    assert turns == pytest.approx(round(turns), abs=1e-9)
    assert record.circle_diff_mod_2pi <= math.pi + 1e-12


@pytest.mark.parametrize("table_id", [1, 2, 3, 4, 5, 6])
def test_every_table_is_classified(table_id):
    report = paperdata.compare_table(table_id)
    assert report.summary["total"] == len(report.records)
    assert sum(report.summary[s] for s in paperdata.STATUSES) == report.summary["total"]
    assert all(r.status in paperdata.STATUSES for r in report.records)
    assert report.structural_ok, [c for c in report.checks if not c.passed]


def test_structural_checks_apply_where_forced():
    names = {c.name for c in paperdata.structural_checks(3)}
    assert names == {"varshni_b_independence", "zero_strength_coincidence"}
    assert {c.name for c in paperdata.structural_checks(1)} == {"vsp_beta_independence"}
    assert paperdata.structural_checks(2) == []
    assert paperdata.structural_checks(4) == []


def test_report_rows_have_report_columns():
    report = paperdata.compare_table(5, ArgConvention.WRAPPED_ARG)
    rows = paperdata.report_rows(report)
    assert len(rows) == 40
    assert set(rows[0]) == set(paperdata.REPORT_COLUMNS)
    assert rows[0]["convention"] == "wrapped-arg"
