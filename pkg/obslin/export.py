# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Writers for the artifacts produced by `ObsLin`: JSON documents (maps,
statistics, reports) and CSV tables (error fields, trajectories, per-run
norms).

Output is deterministic: JSON keys are sorted and floats are written with
their shortest round-trip representation, so that identical computations
produce byte-identical files.
"""
import csv
import json
import logging
import os

import numpy as np

LOG_WRITE_MSG = u"(write) %(path)s (%(kind)s, %(size)s)"

logger = logging.getLogger(__name__)


def to_builtin(value):
    """Convert `numpy` scalars and arrays nested in `value` to plain Python
    objects.
    """
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _prepare(path):
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        os.makedirs(directory)


def dumps(data):
    """Serialize `data` the way :func:`write_json` does."""
    return json.dumps(to_builtin(data), sort_keys=True, indent=2) + '\n'


def write_json(path, data):
    """Write `data` as a JSON document at `path`."""
    _prepare(path)
    text = dumps(data)
    with open(path, 'w') as file_:
        file_.write(text)
    logger.debug(
        LOG_WRITE_MSG, {'path': path, 'kind': 'json', 'size': len(text)}
    )


def write_csv(path, header, rows):
    """Write a CSV table at `path`. An empty `rows` writes the header
    only.
    """
    _prepare(path)
    count = 0
    with open(path, 'w', newline='') as file_:
        writer = csv.writer(file_, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow(to_builtin(list(row)))
            count += 1
    logger.debug(
        LOG_WRITE_MSG, {'path': path, 'kind': 'csv', 'size': count}
    )
