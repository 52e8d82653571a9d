import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings

from flowshoplab import TABLE2, ProcessingTimeTable, Schedule, format_table, parse_table, render_gantt, schedule_fiducial
from flowshoplab.core import normalize
from flowshoplab.gantt import GanttDocument, InfeasibleScheduleError, gantt_document
from flowshoplab.tables import TableParseError

from conftest import float_tables, int_tables

TABLE2_CSV = """2,5,4,1,3,1,2,4
2,3,2,4,3,4,2,5
3,5,4,1,5,1,3,4
4,5,1,1,3,1,2,1
1,2,4,2,5,1,4,1
5,2,3,1,4,1,5,2
1,1,1,4,1,4,4,1
"""


def test_parse_table2():
    assert parse_table(TABLE2_CSV) == TABLE2


def test_parse_single_value():
    t = parse_table("5")
    assert t.shape == (1, 1) and t[1, 1] == 5


def test_parse_header_flag():
    text = "J1,J2\n1,2\n3,4\n"
    assert parse_table(text, header=True) == ProcessingTimeTable([[1, 2], [3, 4]])
    with pytest.raises(TableParseError, match="row 1, column 1"):
        parse_table(text)


def test_parse_ragged_row():
    text = TABLE2_CSV.replace("4,5,1,1,3,1,2,1", "4,5,1,1,3,1,2")
    with pytest.raises(TableParseError, match="row 4") as err:
        parse_table(text)
    assert err.value.row == 4


def test_parse_negative_and_non_numeric():
    with pytest.raises(TableParseError, match="row 2, column 3"):
        parse_table("1,2,3\n4,5,-6\n")
    with pytest.raises(TableParseError, match="row 1, column 2"):
        parse_table("1,x\n")
    with pytest.raises(TableParseError, match="row 1, column 1"):
        parse_table("nan\n")


def test_parse_empty():
    with pytest.raises(TableParseError, match="empty"):
        parse_table("")
    with pytest.raises(TableParseError, match="empty"):
        parse_table("\n\n")


@settings(max_examples=100, deadline=None)
@given(float_tables())
def test_round_trip_floats(table):
    assert parse_table(format_table(table)) == table


def test_round_trip_integers_are_written_plainly():
    assert format_table(TABLE2) == TABLE2_CSV


def test_gantt_json_table2_first_machine():
    doc = json.loads(render_gantt(schedule_fiducial(TABLE2, 1), TABLE2, "json"))
    assert doc["fiducial"] == 1
    assert doc["makespan"] == 48
    m1 = doc["machines"][0]
    assert m1["machine"] == 1
    assert [b["start"] for b in m1["bars"]] == [0, 2, 7, 11, 12, 15, 16, 18]
    assert [b["job"] for b in m1["bars"]] == list(range(1, 9))


def test_gantt_single_bar():
    doc = json.loads(render_gantt(schedule_fiducial([[5]], 1), [[5]], "json"))
    assert doc == {"fiducial": 1, "makespan": 5, "machines": [{"machine": 1, "bars": [{"job": 1, "start": 0, "end": 5}]}]}


@settings(max_examples=60, deadline=None)
@given(int_tables())
def test_gantt_bars_equal_normalized_schedule(table):
    for nu in range(1, table.machines + 1):
        sch = schedule_fiducial(table, nu)
        norm = normalize(sch)
        doc = GanttDocument.from_dict(json.loads(render_gantt(sch, table, "json")))
        starts = np.array([[b.start for b in bars] for bars in doc.machines])
        ends = np.array([[b.end for b in bars] for bars in doc.machines])
        assert np.array_equal(starts, norm.starts)
        assert np.array_equal(ends, norm.ends)
        assert starts.min() == 0
        assert ends.max() - starts.min() == doc.makespan == sch.makespan
        for bars in doc.machines:
            assert [b.job for b in bars] == list(range(1, table.jobs + 1))
            for a, b in zip(bars, bars[1:]):
                assert a.end <= b.start


def test_gantt_rejects_infeasible():
    sch = schedule_fiducial(TABLE2, 3)
    starts = sch.starts.copy()
    starts[4, 2] -= 1
    with pytest.raises(InfeasibleScheduleError, match="machine 5, job 3"):
        render_gantt(Schedule(3, starts, sch.ends), TABLE2, "json")


@pytest.mark.parametrize("nu", [1, 4, 7])
def test_gantt_svg_and_text(nu):
    sch = schedule_fiducial(TABLE2, nu)
    svg = render_gantt(sch, TABLE2, "svg")
    root = ET.fromstring(svg)
    rects = [e for e in root.iter() if e.tag.endswith("rect")]
    assert len(rects) == 56
    labels = [e.text for e in root.iter() if e.tag.endswith("text") and e.text and e.text.startswith("M")]
    assert labels == [f"M{m}" for m in range(1, 8)]
    text = render_gantt(sch, TABLE2, "text")
    lines = text.splitlines()
    assert len(lines) == 8
    assert lines[nu].startswith(f"M{nu}") and "*" in lines[nu][:6]


def test_gantt_unknown_format():
    with pytest.raises(ValueError):
        render_gantt(schedule_fiducial(TABLE2, 1), TABLE2, "png")


def test_gantt_document_object():
    doc = gantt_document(schedule_fiducial(TABLE2, 4), TABLE2)
    assert doc.makespan == 55
    assert len(doc.machines) == 7
