"""
JSON-ready conversion of algebra values.

Lattice points and directions become [a, b], univariate polynomials become
arrays of {exp, coeff} sorted by exp, elements become their canonical text.
"""

from fractions import Fraction
from typing import Any

from shared.utils.text_io import render_comm_poly, render_element, render_scalar


def to_payload(value: Any) -> Any:
    """Recursively convert a result into JSON-ready data."""
    from algebra.support_geometry import Direction, NewtonPolygon, _NegInfinity
    from algebra.unipoly import UniPoly
    from algebra.weyl_core import CommPoly, WeylElement

    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return render_scalar(value)
    if isinstance(value, _NegInfinity):
        return "-inf"
    if isinstance(value, WeylElement):
        return render_element(value)
    if isinstance(value, CommPoly):
        return render_comm_poly(value)
    if isinstance(value, UniPoly):
        return [{"exp": exp, "coeff": render_scalar(coeff)} for exp, coeff in value.items()]
    if isinstance(value, Direction):
        return [value.rho, value.sigma]
    if isinstance(value, NewtonPolygon):
        return {"kind": value.kind, "vertices": [to_payload(v) for v in value.vertices]}
    if hasattr(value, "model_dump"):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(key): to_payload(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_payload(item) for item in value]
    raise TypeError(f"No payload conversion for {type(value).__name__}")
