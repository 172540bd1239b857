"""Report generator for scheduling results."""

from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import markdown2
from jinja2 import ChoiceLoader, DictLoader, Environment, FileSystemLoader

from ..config import get_settings
from ..utils.file_utils import jsonable

DEFAULT_TEMPLATE = """<!DOCTYPE html>
<html>
<head>
    <title>{{ title }}</title>
    <meta charset="utf-8">
    <style>
        body {
            font-family: -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, sans-serif;
            line-height: 1.6;
            margin: 0;
            padding: 20px;
            background-color: #f8f9fa;
        }
        .container {
            max-width: 1200px;
            margin: 0 auto;
            background-color: white;
            padding: 30px;
            border-radius: 8px;
            box-shadow: 0 2px 10px rgba(0,0,0,0.1);
        }
        .header {
            background: linear-gradient(135deg, #667eea 0%, #764ba2 100%);
            color: white;
            padding: 20px;
            border-radius: 8px;
            margin-bottom: 30px;
        }
        .header h1 {
            margin: 0;
            font-size: 2em;
        }
        .status-ok { color: #2e7d32; }
        .status-failed { color: #c62828; }
        table {
            width: 100%;
            border-collapse: collapse;
            margin: 20px 0;
        }
        th, td {
            padding: 8px;
            text-align: left;
            border-bottom: 1px solid #ddd;
        }
        th {
            background-color: #f5f5f5;
            font-weight: 600;
        }
        h2 {
            color: #333;
            border-bottom: 2px solid #007bff;
            padding-bottom: 5px;
        }
    </style>
</head>
<body>
    <div class="container">
        <div class="header">
            <h1>{{ title }}</h1>
            {% if status %}
            <p><strong>Status:</strong> <span class="status-{{ status_class }}">{{ status }}</span></p>
            {% endif %}
        </div>
        <div class="content">
            {{ content|safe }}
        </div>
    </div>
</body>
</html>"""

# Rows shown per table before the listing is truncated
MAX_TABLE_ROWS = 200


class ReportGenerator:
    """Renders flat report maps as markdown or HTML.

    Scalar entries become a summary list; entries holding a list of records
    (placements, table rows, per-seed results) become tables.
    """

    def __init__(self):
        """Initialize the report generator."""
        self.settings = get_settings()
        self.templates_dir = Path(self.settings.templates_dir)

        # Templates in templates_dir override the built-in one
        self.jinja_env = Environment(
            loader=ChoiceLoader([
                FileSystemLoader(str(self.templates_dir)),
                DictLoader({"report.html": DEFAULT_TEMPLATE}),
            ]),
            autoescape=True,
        )

    def generate_markdown_report(self, report: Mapping[str, Any], title: str = "Report") -> str:
        """Generate a Markdown report from a report map."""
        data = jsonable(report)
        report_lines = [f"# {title}", ""]

        scalars = {key: value for key, value in data.items() if not isinstance(value, (list, dict))}
        if scalars:
            report_lines.append("## Summary")
            report_lines.append("")
            for key, value in scalars.items():
                report_lines.append(f"- **{key}:** {self._cell(value)}")
            report_lines.append("")

        for key, value in data.items():
            if isinstance(value, dict):
                report_lines.append(f"## {key.replace('_', ' ').title()}")
                report_lines.append("")
                for sub_key, sub_value in value.items():
                    report_lines.append(f"- **{sub_key}:** {self._cell(sub_value)}")
                report_lines.append("")
            elif isinstance(value, list):
                report_lines.extend(self._section(key, value))

        return "\n".join(report_lines)

    def generate_html_report(self, report: Mapping[str, Any], title: str = "Report") -> str:
        """Generate an HTML report from a report map."""
        markdown_content = self.generate_markdown_report(report, title)
        html_content = markdown2.markdown(
            markdown_content,
            extras=["tables", "fenced-code-blocks", "code-friendly"],
        )
        status = self._status(report)
        template = self.jinja_env.get_template("report.html")
        return template.render(
            title=title,
            content=html_content,
            status=status,
            status_class="ok" if status in ("ok", "all_placed") else "failed",
        )

    def _section(self, key: str, rows: List[Any]) -> List[str]:
        lines = [f"## {key.replace('_', ' ').title()}", ""]
        if not rows:
            lines.extend(["*none*", ""])
            return lines
        if not all(isinstance(row, dict) for row in rows):
            lines.append(", ".join(self._cell(row) for row in rows))
            lines.append("")
            return lines

        columns: List[str] = []
        for row in rows:
            for column in row:
                if column not in columns:
                    columns.append(column)
        lines.append("| " + " | ".join(columns) + " |")
        lines.append("|" + "|".join("---" for _ in columns) + "|")
        for row in rows[:MAX_TABLE_ROWS]:
            lines.append("| " + " | ".join(self._cell(row.get(column)) for column in columns) + " |")
        if len(rows) > MAX_TABLE_ROWS:
            lines.append("")
            lines.append(f"*... and {len(rows) - MAX_TABLE_ROWS} more*")
        lines.append("")
        return lines

    @staticmethod
    def _cell(value: Any) -> str:
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, list):
            return "; ".join(str(item) for item in value) if value else "-"
        return str(value)

    @staticmethod
    def _status(report: Mapping[str, Any]) -> Optional[str]:
        status = report.get("exit_reason", report.get("status"))
        if status is None:
            return None
        return str(jsonable(status))
