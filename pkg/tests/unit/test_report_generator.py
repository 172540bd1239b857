"""Tests for markdown and HTML report rendering."""

from fractions import Fraction as F

from src.analyzers import report_generator
from src.analyzers.report_generator import ReportGenerator


def test_markdown_report_has_summary_and_tables():
    report = {
        "U": F(10, 3),
        "fast_exit": False,
        "guarantee": None,
        "placements": [
            {"task": 0, "first_processor": 1, "width": 3, "start": F(0), "end": F(4, 5)},
            {"task": 1, "first_processor": 4, "width": 5, "start": F(0), "end": F(11, 25)},
        ],
        "rejected": [3],
        "mismatches": [],
    }
    text = ReportGenerator().generate_markdown_report(report, "Makespan")
    lines = text.splitlines()
    assert lines[0] == "# Makespan"
    assert "- **U:** 10/3" in lines
    assert "- **fast_exit:** no" in lines
    assert "- **guarantee:** -" in lines
    assert "| task | first_processor | width | start | end |" in lines
    assert "| 0 | 1 | 3 | 0 | 4/5 |" in lines
    assert "3" in lines[lines.index("## Rejected") + 2]
    assert "*none*" in lines


def test_long_tables_are_truncated(monkeypatch):
    monkeypatch.setattr(report_generator, "MAX_TABLE_ROWS", 3)
    rows = [{"seed": i} for i in range(5)]
    text = ReportGenerator().generate_markdown_report({"records": rows})
    assert "| 2 |" in text
    assert "| 3 |" not in text
    assert "*... and 2 more*" in text


def test_html_report_shows_status():
    html = ReportGenerator().generate_html_report({"status": "failed", "failed": 2}, "Verify")
    assert "<title>Verify</title>" in html
    assert 'class="status-failed"' in html
    assert "<li><strong>failed:</strong> 2</li>" in html


def test_html_report_escapes_title():
    html = ReportGenerator().generate_html_report({"exit_reason": "all_placed"}, "<d=1>")
    assert "<title>&lt;d=1&gt;</title>" in html
    assert 'class="status-ok"' in html
