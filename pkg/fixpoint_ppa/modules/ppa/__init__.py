# Partial Partition Automata Module
from .automaton import (
    StepRejected, LayoutError, FieldLayout, PeriodicConfig, StripPattern, PpaRule,
    DisjointUnionRule, PeriodReport, step_forward, step_backward, iterate, orbit,
    omega_truncated, build_strip, local_image, check_local_validity, step_window,
    restrict, disjoint_union, find_periods,
)
from .export import (
    gray_palette, spacetime_array, write_pgm, write_png, spacetime_frame, write_csv,
    trace_records, write_ndjson,
)

__all__ = [
    'StepRejected', 'LayoutError', 'FieldLayout', 'PeriodicConfig', 'StripPattern', 'PpaRule',
    'DisjointUnionRule', 'PeriodReport', 'step_forward', 'step_backward', 'iterate', 'orbit',
    'omega_truncated', 'build_strip', 'local_image', 'check_local_validity', 'step_window',
    'restrict', 'disjoint_union', 'find_periods',
    'gray_palette', 'spacetime_array', 'write_pgm', 'write_png', 'spacetime_frame', 'write_csv',
    'trace_records', 'write_ndjson',
]
