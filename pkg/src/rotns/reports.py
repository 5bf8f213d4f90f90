"""CSV report writing: RFC-4180 style, '.' decimal, 17 significant digits.

The CSV files are the deterministic contract of every run: identical
configuration and seed must reproduce them byte for byte.
"""


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    text = str(v)
    if any(ch in text for ch in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


def write_report(rows, path, columns=None):
    """Write a list of dict rows as CSV with a header row."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to report")
    if columns is None:
        columns = list(rows[0].keys())
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_format_value(row.get(c, "")) for c in columns))
    data = "\r\n".join(lines) + "\r\n"
    with open(path, "wb") as fh:
        fh.write(data.encode("utf-8"))
