import json

import sympy

from graphcurves.config import config


def rational_text(value):
    """
    Canonical text for an exact rational: integers print without a denominator, others as p/q.
    None stands for infinity and prints as 'inf'
    """
    if value is None:
        return "inf"
    value = sympy.Rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def dumps(payload):
    """ Deterministic JSON: sorted keys, configured indent, trailing newline """
    return json.dumps(payload, indent=config.JSON_INDENT, sort_keys=True, ensure_ascii=False) + "\n"
