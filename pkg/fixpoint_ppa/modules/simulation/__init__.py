# Simulation Module
from .spec import (
    ADDRESS_FIELDS, CLOCK_FIELDS, DecodeError, SimulationSpec, ComposedSpec, AnySpec,
    decode, decodes, encode, colony_lengths, target_labels, toy_spec, machine_permutation, native_rule,
)
from .verify import (
    disjointness, completeness_probe, verify_simulation, simulated_configs, verify_simulation_suite,
)
from .compose import (
    composed_parameters, compose_specs, origin_counter, colony_origin, period_transfer_check,
    nested_rock_membership, rock_skeleton,
)
from .properties import (
    TOYS, toy_machines, orbit_samples, reversibility_check, coordinate_config, in_coordinate_grid,
    coordinate_suite, compute_check, shift_check, unive_suite, chekka_layout_ok, hier_prefix_ok,
    son_father_suite, two_level_tower, composition_check, period_suite, halting_check, DEFAULT_RECIPES,
    ne_pipeline_check, sequence_suite, instance_reversibility,
)

__all__ = [
    'ADDRESS_FIELDS', 'CLOCK_FIELDS', 'DecodeError', 'SimulationSpec', 'ComposedSpec', 'AnySpec',
    'decode', 'decodes', 'encode', 'colony_lengths', 'target_labels', 'toy_spec',
    'machine_permutation', 'native_rule',
    'disjointness', 'completeness_probe', 'verify_simulation', 'simulated_configs',
    'verify_simulation_suite',
    'composed_parameters', 'compose_specs', 'origin_counter', 'colony_origin', 'period_transfer_check',
    'nested_rock_membership', 'rock_skeleton',
    'TOYS', 'toy_machines', 'orbit_samples', 'reversibility_check', 'coordinate_config',
    'in_coordinate_grid', 'coordinate_suite', 'compute_check', 'shift_check', 'unive_suite',
    'chekka_layout_ok', 'hier_prefix_ok', 'son_father_suite', 'two_level_tower', 'composition_check',
    'period_suite', 'halting_check', 'DEFAULT_RECIPES', 'ne_pipeline_check', 'sequence_suite', 'instance_reversibility',
]
