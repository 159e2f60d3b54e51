# Rule Library Module
from .fields import (
    FieldList, C_COORDI, C_COMPUTE, C_SHIFT, C_UNIVE, C_PROGRAMS, C_SELF, C_HSIM, C_OTHER,
    C_INTRU, C_HISTORY, C_SYNCOMP, C_REALI, AUX_FIELDS, FIELD_LISTS,
    layout_of, simulated_layout, lengths_for, sealed,
)
from .gamma import (
    GAMMA_FIELDS, gamma_pair, gamma_rule, ring_config, read_heads,
    gamma_fidelity, gamma_fidelity_suite, multi_head_check,
)
from .library import (
    coordi_listing, compute_listing, shift_listing, unive_listing, chekka_listing, hier_listing,
    start_checks, toy_unive_listing, self_listing, hsim_listing, intru_listing,
    syncomp_listing, reali_listing, reali_period,
)
from .instance import (
    GENERATORS, RuleInstance, make_coordi, make_gamma, make_compute, make_shift, make_unive,
    make_toy_unive, make_chekka, make_hier, make_self, make_hsim, make_intru, make_syncomp,
    make_reali, hsim_alphabet, syncomp_alphabet, reali_alphabet,
)
from .reductions import (
    ZERO_LETTER, table_pair, HaltingReduction, intruder_rule, decode_permutation,
    Enumerator, writer_machine, EnumerationSequence, build_enumeration_sequence,
)

__all__ = [
    'FieldList', 'C_COORDI', 'C_COMPUTE', 'C_SHIFT', 'C_UNIVE', 'C_PROGRAMS', 'C_SELF', 'C_HSIM',
    'C_OTHER', 'C_INTRU', 'C_HISTORY', 'C_SYNCOMP', 'C_REALI', 'AUX_FIELDS', 'FIELD_LISTS',
    'layout_of', 'simulated_layout', 'lengths_for', 'sealed',
    'GAMMA_FIELDS', 'gamma_pair', 'gamma_rule', 'ring_config', 'read_heads',
    'gamma_fidelity', 'gamma_fidelity_suite', 'multi_head_check',
    'coordi_listing', 'compute_listing', 'shift_listing', 'unive_listing', 'chekka_listing',
    'hier_listing', 'start_checks', 'toy_unive_listing', 'self_listing', 'hsim_listing',
    'intru_listing', 'syncomp_listing', 'reali_listing', 'reali_period',
    'GENERATORS', 'RuleInstance', 'make_coordi', 'make_gamma', 'make_compute', 'make_shift',
    'make_unive', 'make_toy_unive', 'make_chekka', 'make_hier', 'make_self', 'make_hsim',
    'make_intru', 'make_syncomp', 'make_reali', 'hsim_alphabet', 'syncomp_alphabet', 'reali_alphabet',
    'ZERO_LETTER', 'table_pair', 'HaltingReduction', 'intruder_rule', 'decode_permutation',
    'Enumerator', 'writer_machine', 'EnumerationSequence', 'build_enumeration_sequence',
]
