import json
import logging
import os
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from PIL import Image

from fixpoint_ppa.modules.encoding import Undefined, sharp_strip, format_letter
from .automaton import PeriodicConfig, StepRejected

logger = logging.getLogger(__name__)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def _stripped(value: str) -> str:
    try:
        return sharp_strip(value)
    except Undefined:
        return value


def gray_palette(rows: Sequence[PeriodicConfig], field_index: int) -> Dict[str, int]:
    """
    Gray level of every stripped value of a field

    Distinct values are sorted by (length, word) and spread evenly over 0..255,
    the empty value always mapping to 0. The palette only depends on the set
    of values, so renders of the same run are comparable.
    """
    values = sorted({_stripped(cell[field_index]) for row in rows for cell in row.cells},
                    key=lambda w: (len(w), w))
    if len(values) == 1:
        return {values[0]: 0}
    levels = np.linspace(0, 255, num=len(values)).round().astype(np.uint8)
    return {value: int(level) for value, level in zip(values, levels)}


def spacetime_array(rows: Sequence[PeriodicConfig], field_index: int) -> np.ndarray:
    """One row per time step (top = first row), one column per cell."""
    palette = gray_palette(rows, field_index)
    width = max(row.period for row in rows)
    array = np.zeros((len(rows), width), dtype=np.uint8)
    for t, row in enumerate(rows):
        array[t, :row.period] = [palette[_stripped(cell[field_index])] for cell in row.cells]
    return array


def write_pgm(rows: Sequence[PeriodicConfig], field_index: int, path: str) -> str:
    """Space-time diagram as a binary PGM image, one pixel per cell per time."""
    _ensure_parent(path)
    image = Image.fromarray(spacetime_array(rows, field_index), mode='L')
    image.save(path, format='PPM')
    logger.info("wrote %s (%d x %d)", path, image.width, image.height)
    return path


def write_png(rows: Sequence[PeriodicConfig], field_index: int, path: str, title: Optional[str] = None) -> str:
    """Matplotlib render of the same space-time array."""
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    _ensure_parent(path)
    array = spacetime_array(rows, field_index)
    fig, ax = plt.subplots(figsize=(max(4, array.shape[1] / 16), max(3, array.shape[0] / 16)))
    ax.imshow(array, cmap='gray', interpolation='nearest', aspect='auto')
    ax.set_xlabel('cell')
    ax.set_ylabel('time')
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def spacetime_frame(rows: Sequence[PeriodicConfig], start_time: int = 0) -> pd.DataFrame:
    """Long table with one row per (time, cell) and the serialized letter."""
    records = [
        {'time': start_time + t, 'cell': n, 'letter': format_letter(cell)}
        for t, row in enumerate(rows) for n, cell in enumerate(row.cells)
    ]
    return pd.DataFrame.from_records(records, columns=['time', 'cell', 'letter'])


def write_csv(rows: Sequence[PeriodicConfig], path: str, start_time: int = 0) -> str:
    _ensure_parent(path)
    spacetime_frame(rows, start_time).to_csv(path, index=False)
    return path


def trace_records(rows: Sequence[PeriodicConfig], rejection: Optional[StepRejected] = None,
                  start_time: int = 0) -> List[Dict]:
    records: List[Dict] = [
        {'status': 'ok', 'time': start_time + t, 'cells': row.to_text()}
        for t, row in enumerate(rows)
    ]
    if rejection is not None:
        records.append(rejection.record())
    return records


def write_ndjson(records: Iterable[Dict], path: str) -> str:
    """One JSON object per line; written to a temporary file first."""
    _ensure_parent(path)
    tmp = path + '.tmp'
    with open(tmp, 'w') as handle:
        for record in records:
            handle.write(json.dumps(record, sort_keys=True) + '\n')
    os.replace(tmp, path)
    return path
