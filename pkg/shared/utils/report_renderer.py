"""
Report Renderer - Converts report documents to plain text.

Provides:
- render_text: the plain-text form of a ReportDocument (CLI without --json)
- render_json: deterministic JSON of a ReportDocument
- render_newton_ascii: lattice picture of a support and its Newton polygon
"""

from typing import Any, List, Optional

from shared.models.schemas import ReportDocument


def _format_value(value: Any) -> str:
    """Format a payload leaf for display."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list) and all(isinstance(v, dict) and set(v) == {"exp", "coeff"} for v in value) and value:
        return " ".join(f"{v['coeff']}@{v['exp']}" for v in value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return f"({value[0]},{value[1]})"
    if isinstance(value, list):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def _render_mapping(data: dict, indent: int = 0) -> List[str]:
    lines = []
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_mapping(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(v, dict) and {"exp", "coeff"} != set(v) for v in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  -")
                lines.extend(_render_mapping(item, indent + 2))
        else:
            lines.append(f"{pad}{key}: {_format_value(value)}")
    return lines


def render_text(document: ReportDocument) -> str:
    """
    Render a ReportDocument as plain text.

    Scalar results print on their own; structured results print as
    'key: value' lines, followed by the witnesses.

    Args:
        document: Report produced by run_command

    Returns:
        Text without a trailing newline
    """
    lines = []
    result = document.result
    if isinstance(result, dict):
        lines.extend(_render_mapping(result))
    elif isinstance(result, list) and result and all(isinstance(v, dict) for v in result):
        for item in result:
            lines.append("-")
            lines.extend(_render_mapping(item, 1))
    else:
        lines.append(_format_value(result))

    if document.witnesses:
        lines.append("witnesses:")
        for witness in document.witnesses:
            lines.append(f"  {witness.name}: {_format_value(witness.value)}")
    return "\n".join(lines)


def render_json(document: ReportDocument, indent: Optional[int] = None) -> str:
    """Byte-identical for identical documents."""
    return document.model_dump_json(indent=indent)


def render_newton_ascii(P) -> str:
    """
    Draw Supp(P) on the lattice, j growing upwards.

    '*' marks polygon vertices, 'o' other support points, '.' empty lattice points.
    """
    from algebra.support_geometry import newton_polygon

    vertices = set(newton_polygon(P).vertices)
    support = set(P.support)
    width, height = P.degree_x(), P.degree_y()
    rows = []
    for j in range(height, -1, -1):
        cells = []
        for i in range(width + 1):
            if (i, j) in vertices:
                cells.append("*")
            elif (i, j) in support:
                cells.append("o")
            else:
                cells.append(".")
        rows.append(f"{j:>3} " + " ".join(cells))
    rows.append("    " + " ".join(str(i % 10) for i in range(width + 1)))
    return "\n".join(rows)
