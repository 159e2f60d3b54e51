"""
Syntax tree of the permutation language

Terms evaluate to words, valuations to integers, vectors to length vectors,
conditions to booleans and permutations to partial injective maps of
letters. Every node is an immutable dataclass so programs can be hashed,
compared and shared.
"""
from dataclasses import dataclass
from typing import Tuple


class Term:
    pass


class Valuation:
    pass


class Vector:
    pass


class Condition:
    pass


class Perm:
    pass


# Terms

@dataclass(frozen=True)
class Const(Term):
    word: str


@dataclass(frozen=True)
class Proj(Term):
    field: str


@dataclass(frozen=True)
class ChiOf(Term):
    term: Term


@dataclass(frozen=True)
class BinWord(Term):
    value: Valuation


@dataclass(frozen=True)
class Concat(Term):
    parts: Tuple[Term, ...]


@dataclass(frozen=True)
class IndexedAt(Term):
    """Symbol at 0-based position ``index`` of a word."""
    term: Term
    index: Valuation


@dataclass(frozen=True)
class Strip(Term):
    term: Term


# Valuations

@dataclass(frozen=True)
class Num(Valuation):
    value: int


@dataclass(frozen=True)
class BinOf(Valuation):
    """Number written in binary in the padded word."""
    term: Term


@dataclass(frozen=True)
class Length(Valuation):
    term: Term


@dataclass(frozen=True)
class Directive(Valuation):
    """Shift (D) or wait (W) count of a directive digit."""
    term: Term
    kind: str


@dataclass(frozen=True)
class Offset(Valuation):
    """Position of the separator of field ``index`` in a Chi encoding of the given lengths."""
    lengths: Vector
    index: Valuation


@dataclass(frozen=True)
class SeqAt(Valuation):
    name: str
    index: Valuation


@dataclass(frozen=True)
class Arith(Valuation):
    op: str
    left: Valuation
    right: Valuation


# Vectors

@dataclass(frozen=True)
class ConstVector(Vector):
    values: Tuple[int, ...]


@dataclass(frozen=True)
class FieldLengths(Vector):
    fields: Tuple[str, ...]


@dataclass(frozen=True)
class SeqVector(Vector):
    name: str
    index: Valuation


# Conditions

@dataclass(frozen=True)
class TrueC(Condition):
    pass


@dataclass(frozen=True)
class Cmp(Condition):
    op: str
    left: Valuation
    right: Valuation


@dataclass(frozen=True)
class TermCmp(Condition):
    op: str
    left: Term
    right: Term


@dataclass(frozen=True)
class TermIn(Condition):
    term: Term
    words: Tuple[str, ...]


@dataclass(frozen=True)
class Live(Condition):
    """The stripped term is a non-accepting state of the program written by ``program``."""
    term: Term
    program: Term


@dataclass(frozen=True)
class Empty(Condition):
    fields: Tuple[str, ...]


@dataclass(frozen=True)
class Halt(Condition):
    """The program does not stop within ``steps`` steps on ``word``."""
    program: Term
    steps: Valuation
    word: Term


@dataclass(frozen=True)
class And(Condition):
    items: Tuple[Condition, ...]


@dataclass(frozen=True)
class Or(Condition):
    items: Tuple[Condition, ...]


@dataclass(frozen=True)
class Not(Condition):
    item: Condition


# Permutations

@dataclass(frozen=True)
class Check(Perm):
    condition: Condition


@dataclass(frozen=True)
class Increment(Perm):
    """
    Add ``step`` to a binary counter modulo ``modulus``

    Acts only on canonical binary contents: the stripped field must have no
    leading 0 (the empty word is 0), so '01' is outside the domain rather
    than read as 1. The image is written canonically and re-padded.
    """
    modulus: Valuation
    field: str
    step: int = 1


@dataclass(frozen=True)
class RunTm(Perm):
    program: Term
    tape: str
    head_left: str
    head_right: str
    inverse: bool = False


@dataclass(frozen=True)
class Write(Perm):
    term: Term
    field: str


@dataclass(frozen=True)
class Unwrite(Perm):
    term: Term
    field: str


@dataclass(frozen=True)
class Exchange(Perm):
    first: str
    second: str


@dataclass(frozen=True)
class Seq(Perm):
    items: Tuple[Perm, ...] = ()


@dataclass(frozen=True)
class If(Perm):
    """IF / ELSIF / ELSE chain; an ELSE branch carries the condition TrueC."""
    branches: Tuple[Tuple[Condition, Seq], ...]


@dataclass(frozen=True)
class Intruder(Perm):
    """External permutation family applied to a group of fields, selected by a valuation."""
    name: str
    index: Valuation
    fields: Tuple[str, ...]
    inverse: bool = False


def seq(*items: Perm) -> Seq:
    """Flat sequence: nested sequences are spliced in."""
    flat = []
    for item in items:
        if isinstance(item, Seq):
            flat.extend(item.items)
        else:
            flat.append(item)
    return Seq(tuple(flat))


def if_then(condition: Condition, *body: Perm) -> If:
    return If(((condition, seq(*body)),))


def all_of(*items: Condition) -> Condition:
    return items[0] if len(items) == 1 else And(tuple(items))


def any_of(*items: Condition) -> Condition:
    return items[0] if len(items) == 1 else Or(tuple(items))


def field_names(node) -> Tuple[str, ...]:
    """Field labels a node refers to, in first-use order."""
    found = []

    def visit(value):
        if isinstance(value, (Proj,)):
            found.append(value.field)
        elif isinstance(value, (Increment, Write, Unwrite)):
            found.append(value.field)
        elif isinstance(value, Exchange):
            found.extend((value.first, value.second))
        elif isinstance(value, RunTm):
            found.extend((value.tape, value.head_left, value.head_right))
        elif isinstance(value, (Empty, FieldLengths, Intruder)):
            found.extend(value.fields)
        if isinstance(value, tuple):
            for item in value:
                visit(item)
        elif hasattr(value, '__dataclass_fields__'):
            for name in value.__dataclass_fields__:
                visit(getattr(value, name))

    visit(node)
    return tuple(dict.fromkeys(found))
