"""Exact JSON encoding of rationals, infinity and nested certificate data."""

import json
import math
from fractions import Fraction
from typing import Any, Union

INF_TOKEN = "inf"

Number = Union[int, float, Fraction]


def encode_number(value: Number) -> Any:
    """Integers stay integers, rationals become num/den pairs, infinity a token."""
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF_TOKEN
        raise ValueError(f"Refusing to encode inexact float {value!r}")
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return {"num": value.numerator, "den": 1}
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    raise TypeError(f"Not a number: {value!r}")


def decode_number(data: Any) -> Number:
    if data == INF_TOKEN:
        return math.inf
    if isinstance(data, dict):
        return Fraction(data["num"], data["den"])
    if isinstance(data, int):
        return data
    raise ValueError(f"Cannot decode number from {data!r}")


def encode_value(value: Any) -> Any:
    """Recursively encode tuples, lists and dicts containing numbers."""
    if isinstance(value, (Fraction, float)) or (isinstance(value, int) and not isinstance(value, bool)):
        return encode_number(value)
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    return value


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def fraction_text(value: Number) -> str:
    """Human-readable form used in text reports."""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)
