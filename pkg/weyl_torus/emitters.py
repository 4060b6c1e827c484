"""Report writers: stable JSON, Markdown tables laid out by templates,
and CSV.
"""
import csv
import io
import json

from django.template.loader import render_to_string

from weyl_torus.serializers import SuiteResultSerializer

FORMATS = ("json", "md", "csv")


def document(result):
    return SuiteResultSerializer(result).data


def emit_json(results):
    documents = [document(result) for result in results]
    payload = documents[0] if len(documents) == 1 else {"suites": documents}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit_markdown(results):
    return "\n".join(
        render_to_string(
            f"weyl_torus/{result.name}.md",
            {"result": document(result)},
        )
        for result in results
    )


def _cell(value):
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


def emit_csv(results):
    buffer = io.StringIO()
    for position, result in enumerate(results):
        if position:
            buffer.write("\n")
        columns = ["suite"]
        for row in result.rows:
            columns.extend(key for key in row if key not in columns)
        writer = csv.DictWriter(
            buffer, fieldnames=columns, lineterminator="\n"
        )
        writer.writeheader()
        for row in result.rows:
            writer.writerow(
                {"suite": result.name}
                | {key: _cell(value) for key, value in row.items()}
            )
    return buffer.getvalue()


EMITTERS = {
    "json": emit_json,
    "md": emit_markdown,
    "csv": emit_csv,
}


def emit(results, output_format):
    return EMITTERS[output_format](list(results))
