# Directions Module
from .slopes import (
    DirectionError, rational, fraction_text, Slope, HORIZONTAL, VERTICAL, SlopeInterval, UNIT,
    ne_map, nested_ne_interval, ne_union, union_report, slope_to_circle, circle_to_slope,
)
from .theta import (
    DirectiveWord, directive_word, word_digits, epsilon_vector, contraction, theta_interval,
    theta_limit, reali_levels, reali_epsilons, realized_directions,
)
from .cover import (
    below_sqrt2_minus_1, cover_bounds, cover_limit, word_intervals, cover_check, cover_table,
    directive_search,
)

__all__ = [
    'DirectionError', 'rational', 'fraction_text', 'Slope', 'HORIZONTAL', 'VERTICAL',
    'SlopeInterval', 'UNIT', 'ne_map', 'nested_ne_interval', 'ne_union', 'union_report',
    'slope_to_circle', 'circle_to_slope',
    'DirectiveWord', 'directive_word', 'word_digits', 'epsilon_vector', 'contraction',
    'theta_interval', 'theta_limit', 'reali_levels', 'reali_epsilons', 'realized_directions',
    'below_sqrt2_minus_1', 'cover_bounds', 'cover_limit', 'word_intervals', 'cover_check',
    'cover_table', 'directive_search',
]
