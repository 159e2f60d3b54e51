# Turing Machine Module
from .machine import (
    ACCEPT, INITIAL, BLANK, Transition, ProgramFormatError, TmRejected,
    TmProgram, TmConfig, TmResult, initial_config, tm_step, tm_run, tm_run_word,
    universal_delta, default_step_budget, time_complexity_over, halt_within,
)
from .toys import (
    identity_machine, empty_machine, looping_machine, bit_flip_machine,
    countdown_machine, random_machine, lookup_machine, machine_for_map, swap_machine,
)
from .embedding import (
    Triple, archive, read_archive, is_live, gamma_forward, gamma_backward, head_field_length,
)

__all__ = [
    'ACCEPT', 'INITIAL', 'BLANK', 'Transition', 'ProgramFormatError', 'TmRejected',
    'TmProgram', 'TmConfig', 'TmResult', 'initial_config', 'tm_step', 'tm_run', 'tm_run_word',
    'universal_delta', 'default_step_budget', 'time_complexity_over', 'halt_within',
    'identity_machine', 'empty_machine', 'looping_machine', 'bit_flip_machine',
    'countdown_machine', 'random_machine', 'lookup_machine', 'machine_for_map', 'swap_machine',
    'Triple', 'archive', 'read_archive', 'is_live', 'gamma_forward', 'gamma_backward',
    'head_field_length',
]
