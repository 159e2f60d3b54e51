from typing import Dict, Iterable, Sequence, Tuple

from fixpoint_ppa.modules.ppa import FieldLayout

FieldList = Tuple[Tuple[str, int], ...]

# Coordinates: the _r twins travel right and carry the neighbour's values
C_COORDI: FieldList = (('Addr', 0), ('Addr_r', 1), ('Clock', 0), ('Clock_r', 1))
C_COMPUTE: FieldList = (('Tape', 0), ('NTape', 0), ('Head_l', -1), ('Head_r', 1))
C_SHIFT: FieldList = (('Tape_l', -1), ('Tape_r', 1))
C_UNIVE: FieldList = C_COORDI + C_COMPUTE + C_SHIFT

C_PROGRAMS: FieldList = (('Prog', 0), ('RevProg', 0))
C_SELF: FieldList = C_UNIVE + (('MAddr', 0), ('MClock', 0), ('Alarm', 0)) + C_PROGRAMS
C_HSIM: FieldList = C_UNIVE + C_PROGRAMS + (('Level', 0),)
C_OTHER: FieldList = (('OTape_l', -1), ('OTape', 0), ('OTape_r', 1))
C_INTRU: FieldList = C_HSIM + C_OTHER
C_HISTORY: FieldList = (('MHist', 0), ('MHist_r', 1))
C_SYNCOMP: FieldList = C_UNIVE + C_PROGRAMS + C_HISTORY
C_REALI: FieldList = C_SYNCOMP + (('MShift', 0), ('MShift_r', 1))

# Fields that must be empty when a work period starts
AUX_FIELDS: Tuple[str, ...] = ('NTape', 'Head_l', 'Head_r', 'Tape_l', 'Tape_r')

FIELD_LISTS: Dict[str, FieldList] = {
    'coordi': C_COORDI,
    'compute': C_COORDI + C_COMPUTE,
    'shift': C_COORDI + (('Tape', 0),) + C_SHIFT,
    'unive': C_UNIVE,
    'self': C_SELF,
    'hsim': C_HSIM,
    'intru': C_INTRU,
    'syncomp': C_SYNCOMP,
    'reali': C_REALI,
}


def layout_of(fields: FieldList) -> FieldLayout:
    return FieldLayout.from_pairs(fields)


def simulated_layout(labels: Sequence[str], directions: Sequence[int]) -> FieldLayout:
    """Layout of a simulated alphabet given by labels and directions."""
    return FieldLayout(tuple(labels), tuple(directions))


def lengths_for(layout: FieldLayout, values: Dict[str, int], default: int = 1) -> Tuple[int, ...]:
    """Length vector of a layout; unlisted fields get ``default``."""
    return tuple(values.get(label, default) for label in layout.labels)


def sealed(layout: FieldLayout, used: Iterable[str]) -> bool:
    """True when every field of the layout is mentioned by the program."""
    return set(layout.labels) <= set(used)
