import logging
import operator
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from fixpoint_ppa.modules.encoding import (
    Letter, Word, EncodingError, Undefined,
    bin_decode, bin_encode, chi_encode_word, field_offset, sharp_pad, sharp_strip,
    is_canonical_binary, is_empty_field,
)
from fixpoint_ppa.modules.turing import (
    TmProgram, ProgramFormatError, gamma_forward, gamma_backward, is_live, halt_within,
)
from .ast import (
    Const, Proj, ChiOf, BinWord, Concat, IndexedAt, Strip,
    Num, BinOf, Length, Directive, Offset, SeqAt, Arith,
    ConstVector, FieldLengths, SeqVector,
    TrueC, Cmp, TermCmp, TermIn, Live, Empty, Halt, And, Or, Not,
    Check, Increment, RunTm, Write, Unwrite, Exchange, Seq, If, Intruder, Perm,
)

logger = logging.getLogger(__name__)

Permutation = Callable[[Letter], Letter]

# directive digit -> (D, W): (0,1) -> 0, (1,1) -> 1, (1,0) -> 2
DIRECTIVE_LETTERS: Tuple[Tuple[int, int], ...] = ((0, 1), (1, 1), (1, 0))

COMPARATORS = {
    '=': operator.eq, '!=': operator.ne,
    '<': operator.lt, '<=': operator.le, '>': operator.gt, '>=': operator.ge,
}


class Environment:
    """
    Names a program may use besides the letter itself

    Args:
        labels: Field labels in letter order
        sequences: Integer sequences for seq(NAME, v)
        vectors: Length-vector sequences for vseq(NAME, v)
        intruders: Families n -> (forward, backward) of partial permutations
    """

    def __init__(self, labels: Sequence[str],
                 sequences: Optional[Mapping[str, Callable[[int], int]]] = None,
                 vectors: Optional[Mapping[str, Callable[[int], Tuple[int, ...]]]] = None,
                 intruders: Optional[Mapping[str, Callable[[int], Tuple[Permutation, Permutation]]]] = None):
        self.labels = tuple(labels)
        self.index: Dict[str, int] = {label: i for i, label in enumerate(self.labels)}
        self.sequences = dict(sequences or {})
        self.vectors = dict(vectors or {})
        self.intruders = dict(intruders or {})

    def field(self, label: str, letter: Letter) -> int:
        i = self.index.get(label)
        if i is None or i >= len(letter):
            raise Undefined('field', f"letter has no field {label!r}")
        return i


class Interpreter:
    """Evaluates program nodes on letters; every failure raises Undefined."""

    def __init__(self, env: Environment):
        self.env = env

    # terms

    def term(self, node, u: Letter) -> Word:
        if isinstance(node, Const):
            return node.word
        if isinstance(node, Proj):
            return u[self.env.field(node.field, u)]
        if isinstance(node, ChiOf):
            try:
                return chi_encode_word(self.term(node.term, u))
            except EncodingError as e:
                raise Undefined('chi', str(e))
        if isinstance(node, BinWord):
            value = self.value(node.value, u)
            if value < 0:
                raise Undefined('binw', f"negative value {value}")
            return bin_encode(value)
        if isinstance(node, Concat):
            return ''.join(self.term(part, u) for part in node.parts)
        if isinstance(node, IndexedAt):
            word = self.term(node.term, u)
            i = self.value(node.index, u)
            if not 0 <= i < len(word):
                raise Undefined('at', f"position {i} outside a word of length {len(word)}")
            return word[i]
        if isinstance(node, Strip):
            return sharp_strip(self.term(node.term, u))
        raise TypeError(f"not a term: {node!r}")

    # valuations

    def value(self, node, u: Letter) -> int:
        if isinstance(node, Num):
            return node.value
        if isinstance(node, BinOf):
            try:
                return bin_decode(sharp_strip(self.term(node.term, u)))
            except EncodingError as e:
                raise Undefined('bin', str(e))
        if isinstance(node, Length):
            return len(self.term(node.term, u))
        if isinstance(node, Directive):
            digit = sharp_strip(self.term(node.term, u))
            if digit not in ('0', '1', '2'):
                raise Undefined('directive', f"{digit!r} is not a directive digit")
            shift, wait = DIRECTIVE_LETTERS[int(digit)]
            return shift if node.kind == 'D' else wait
        if isinstance(node, Offset):
            lengths = self.vector(node.lengths, u)
            try:
                return field_offset(lengths, self.value(node.index, u))
            except EncodingError as e:
                raise Undefined('offset', str(e))
        if isinstance(node, SeqAt):
            return self._sequence(self.env.sequences, node.name, self.value(node.index, u))
        if isinstance(node, Arith):
            left = self.value(node.left, u)
            right = self.value(node.right, u)
            if node.op == '+':
                return left + right
            if node.op == '-':
                return left - right
            if node.op == '*':
                return left * right
            if right == 0:
                raise Undefined('arith', 'division by zero')
            return left // right if node.op == '/' else left % right
        raise TypeError(f"not a valuation: {node!r}")

    def _sequence(self, table: Mapping, name: str, n: int):
        if name not in table:
            raise Undefined('sequence', f"unknown sequence {name!r}")
        if n < 0:
            raise Undefined('sequence', f"negative index {n} into {name}")
        return table[name](n)

    def vector(self, node, u: Letter) -> Tuple[int, ...]:
        if isinstance(node, ConstVector):
            return node.values
        if isinstance(node, FieldLengths):
            return tuple(len(u[self.env.field(label, u)]) for label in node.fields)
        if isinstance(node, SeqVector):
            return tuple(self._sequence(self.env.vectors, node.name, self.value(node.index, u)))
        raise TypeError(f"not a vector: {node!r}")

    # conditions

    def holds(self, node, u: Letter) -> bool:
        if isinstance(node, TrueC):
            return True
        if isinstance(node, Cmp):
            return COMPARATORS[node.op](self.value(node.left, u), self.value(node.right, u))
        if isinstance(node, TermCmp):
            return COMPARATORS[node.op](self.term(node.left, u), self.term(node.right, u))
        if isinstance(node, TermIn):
            return self.term(node.term, u) in node.words
        if isinstance(node, Live):
            return is_live(self.term(node.term, u), self.program(node.program, u))
        if isinstance(node, Empty):
            return all(is_empty_field(u[self.env.field(label, u)]) for label in node.fields)
        if isinstance(node, Halt):
            steps = self.value(node.steps, u)
            if steps < 0:
                raise Undefined('halt', f"negative step count {steps}")
            return halt_within(self.program(node.program, u), steps, self.term(node.word, u))
        # and / or evaluate left to right and stop at the first decisive item
        if isinstance(node, And):
            return all(self.holds(item, u) for item in node.items)
        if isinstance(node, Or):
            return any(self.holds(item, u) for item in node.items)
        if isinstance(node, Not):
            return not self.holds(node.item, u)
        raise TypeError(f"not a condition: {node!r}")

    def program(self, node, u: Letter) -> TmProgram:
        code = self.term(node, u)
        try:
            return TmProgram.from_code(code)
        except ProgramFormatError as e:
            raise Undefined('program', str(e))

    # permutations

    def apply(self, node: Perm, u: Letter) -> Letter:
        if isinstance(node, Seq):
            for item in node.items:
                u = self.apply(item, u)
            return u
        if isinstance(node, Check):
            if not self.holds(node.condition, u):
                raise Undefined('check', 'condition failed')
            return u
        if isinstance(node, Increment):
            return self._increment(node, u)
        if isinstance(node, Write):
            i = self.env.field(node.field, u)
            if not is_empty_field(u[i]):
                raise Undefined('write', f"field {node.field} is not empty")
            word = self.term(node.term, u)
            if '4' in word:
                raise Undefined('write', f"{word!r} contains the pad symbol")
            image = _replace(u, i, sharp_pad(len(u[i]), word))
            if self.term(node.term, image) != word:
                raise Undefined('write', 'written term depends on the target field')
            return image
        if isinstance(node, Unwrite):
            i = self.env.field(node.field, u)
            word = self.term(node.term, u)
            if sharp_strip(u[i]) != word or '4' in word:
                raise Undefined('unwrite', f"field {node.field} does not hold the term")
            image = _replace(u, i, '4' * len(u[i]))
            if self.term(node.term, image) != word:
                raise Undefined('unwrite', 'erased term depends on the target field')
            return image
        if isinstance(node, Exchange):
            i = self.env.field(node.first, u)
            j = self.env.field(node.second, u)
            if len(u[i]) != len(u[j]):
                raise Undefined('exch', f"fields {node.first} and {node.second} differ in length")
            image = list(u)
            image[i], image[j] = u[j], u[i]
            return tuple(image)
        if isinstance(node, RunTm):
            return self._run_tm(node, u)
        if isinstance(node, If):
            return self._if(node, u)
        if isinstance(node, Intruder):
            return self._intruder(node, u)
        raise TypeError(f"not a permutation: {node!r}")

    def _increment(self, node: Increment, u: Letter) -> Letter:
        i = self.env.field(node.field, u)
        modulus = self.value(node.modulus, u)
        digits = sharp_strip(u[i])
        if not is_canonical_binary(digits):
            raise Undefined('incr', f"{u[i]!r} is not a canonical binary numeral")
        number = bin_decode(digits)
        if not 0 <= number < modulus:
            raise Undefined('incr', f"{number} outside 0..{modulus - 1}")
        image = _replace(u, i, sharp_pad(len(u[i]), bin_encode((number + node.step) % modulus)))
        if self.value(node.modulus, image) != modulus:
            raise Undefined('incr', 'modulus changed by the update')
        return image

    def _run_tm(self, node: RunTm, u: Letter) -> Letter:
        code = self.term(node.program, u)
        program = self.program(node.program, u)
        positions = [self.env.field(label, u) for label in (node.tape, node.head_left, node.head_right)]
        triple = tuple(u[p] for p in positions)
        step = gamma_backward if node.inverse else gamma_forward
        new = step(program, triple)
        image = list(u)
        for p, value in zip(positions, new):
            image[p] = value
        image = tuple(image)
        if self.term(node.program, image) != code:
            raise Undefined('runtm', 'program changed by the step')
        return image

    def _branch(self, node: If, u: Letter) -> int:
        for k, (condition, _) in enumerate(node.branches):
            if self.holds(condition, u):
                return k
        return -1

    def _if(self, node: If, u: Letter) -> Letter:
        k = self._branch(node, u)
        if k < 0:
            return u
        image = self.apply(node.branches[k][1], u)
        if self._branch(node, image) != k:
            raise Undefined('if', 'body changed the selected branch')
        return image

    def _intruder(self, node: Intruder, u: Letter) -> Letter:
        if node.name not in self.env.intruders:
            raise Undefined('intruder', f"unknown intruder {node.name!r}")
        n = self.value(node.index, u)
        if n < 0:
            raise Undefined('intruder', f"negative index {n}")
        forward, backward = self.env.intruders[node.name](n)
        positions = [self.env.field(label, u) for label in node.fields]
        part = tuple(u[p] for p in positions)
        new = (backward if node.inverse else forward)(part)
        if len(new) != len(part) or any(len(a) != len(b) for a, b in zip(new, part)):
            raise Undefined('intruder', 'image changes the field lengths')
        image = list(u)
        for p, value in zip(positions, new):
            image[p] = value
        image = tuple(image)
        if self.value(node.index, image) != n:
            raise Undefined('intruder', 'index changed by the update')
        return image


def _replace(u: Letter, i: int, value: str) -> Letter:
    return u[:i] + (value,) + u[i + 1:]


def invert(node: Perm) -> Perm:
    """Syntactic inverse: evaluating it undoes the program exactly on its image."""
    if isinstance(node, (Check, Exchange)):
        return node
    if isinstance(node, Increment):
        return Increment(node.modulus, node.field, -node.step)
    if isinstance(node, Write):
        return Unwrite(node.term, node.field)
    if isinstance(node, Unwrite):
        return Write(node.term, node.field)
    if isinstance(node, RunTm):
        return RunTm(node.program, node.tape, node.head_left, node.head_right, not node.inverse)
    if isinstance(node, Intruder):
        return Intruder(node.name, node.index, node.fields, not node.inverse)
    if isinstance(node, If):
        return If(tuple((condition, invert(body)) for condition, body in node.branches))
    if isinstance(node, Seq):
        return Seq(tuple(invert(item) for item in reversed(node.items)))
    raise TypeError(f"not a permutation: {node!r}")


def eval_perm(program: Perm, letter: Iterable[str], env: Environment) -> Letter:
    """
    Apply a program to a letter

    Args:
        program: Permutation node
        letter: Letter to transform
        env: Field labels and external names

    Returns:
        Image letter; raises Undefined when the program rejects
    """
    return Interpreter(env).apply(program, tuple(letter))


def permutation_pair(program: Perm, env: Environment) -> Tuple[Permutation, Permutation]:
    """(forward, backward) partial permutations of letters denoted by a program."""
    interpreter = Interpreter(env)
    inverse = invert(program)
    return (lambda u: interpreter.apply(program, tuple(u)),
            lambda u: interpreter.apply(inverse, tuple(u)))
