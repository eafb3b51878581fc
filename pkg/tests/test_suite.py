import time

import pytest

from realcubic.suite import EXAMPLES, format_table, run_example, run_suite
from realcubic.verdict import Status


@pytest.fixture(scope="module")
def rows():
    t0 = time.perf_counter()
    out = run_suite(jobs=2)
    return out, time.perf_counter() - t0


@pytest.mark.parametrize("index", range(len(EXAMPLES)), ids=[e.name for e in EXAMPLES])
def test_example_row(rows, index):
    row = rows[0][index]
    assert row.example.name == EXAMPLES[index].name
    assert row.error is None, row.error
    assert row.match, (row.status, row.components, row.flags)


def test_suite_runtime(rows):
    assert rows[1] < 60


def test_perturbed_row_is_labelled(rows):
    row = next(r for r in rows[0] if "surrogate" in r.example.name)
    assert "perturbed-input" in row.flags


def test_strict_reading_annotates_the_constraint_row():
    ex = next(e for e in EXAMPLES if e.constraint_row)
    row = run_example(ex, strict_4a2=True)
    assert row.annotation.startswith("strict reading rejected")
    assert row.error is None and row.match
    assert run_example(ex).status is not None


def test_table_lists_every_row(rows):
    text = format_table(rows[0])
    for ex in EXAMPLES:
        assert ex.name in text


def test_row_dict_is_serialisable(rows):
    import json

    for r in rows[0]:
        d = r.to_dict()
        json.dumps(d)
        if r.status is not None:
            assert d["computed"]["status"] in {s.value for s in Status}
        assert d["match"] == r.match
