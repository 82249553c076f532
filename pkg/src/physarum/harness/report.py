"""_summary_
Canonical JSON serialization of run reports.

Keys are sorted, indentation is fixed and every float is written with nine
significant digits, always carrying a decimal point or exponent (1.0 stays
"1.0"). Non-finite floats and undefined metrics are written as null. Equal
reports therefore serialize to identical bytes.

Functions:
    format_float(value) -> str
    canonical_json(data) -> str
    emit_report(report, path, timing=False) -> str
"""

import json
import logging
import math
import os
from typing import Any

import numpy as np

from physarum.harness.models import RunReport

logger = logging.getLogger(__name__)

INDENT = '  '


def format_float(value: float) -> str:
    if not math.isfinite(value):
        return 'null'
    text = f'{value:.9g}'
    if '.' not in text and 'e' not in text:
        text += '.0'
    return text


def _encode(value: Any, depth: int) -> str:
    pad = INDENT * (depth + 1)
    if value is None:
        return 'null'
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [f'{pad}{json.dumps(str(k))}: {_encode(value[k], depth + 1)}'
                 for k in sorted(value, key=str)]
        return '{\n' + ',\n'.join(items) + '\n' + INDENT * depth + '}'
    if isinstance(value, (list, tuple)):
        if not value:
            return '[]'
        items = [f'{pad}{_encode(v, depth + 1)}' for v in value]
        return '[\n' + ',\n'.join(items) + '\n' + INDENT * depth + ']'
    if hasattr(value, 'value'):
        return _encode(value.value, depth)
    raise TypeError(f'cannot serialize {type(value).__name__}')


def canonical_json(data: Any) -> str:
    return _encode(data, 0) + '\n'


def emit_report(report: RunReport, path: str, timing: bool = False) -> str:
    """
    Writes the report as canonical JSON.
    Args:
        report (RunReport): The finished report.
        path (str): Output file.
        timing (bool): Include wall-clock seconds (breaks byte-identity across runs).
    Returns:
        str: The path written.
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(canonical_json(report.to_dict(timing=timing)))
    logger.info('report written to %s', path)
    return path
