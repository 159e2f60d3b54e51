"""
Pass compilation of permutation programs

Field lengths are fixed when a program is compiled, so every field of a
letter occupies known cells of its Chi encoding. Each primitive becomes a
route: a fixed walk that leaves cell 0, reads and rewrites the cells it
visits while carrying a small register in the control state, and comes
back to cell 0. Routes are chained by naming the state each final register
value continues in. Programs have no loops, so a run takes at most the
summed length of the routes, and the number of states grows polynomially
with the sum of the field lengths instead of with the alphabet size.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union

from fixpoint_ppa.config import Config
from fixpoint_ppa.modules.encoding import (
    EncodingError, Undefined, bin_encode, bit_length, chi_length, field_offset, sharp_pad,
)
from fixpoint_ppa.modules.encoding.chi import DOUBLE_CODE, DOUBLE_DECODE
from fixpoint_ppa.modules.turing import ACCEPT, INITIAL, TmProgram, Transition
from .ast import (
    Proj, IndexedAt, Strip, BinOf, Length, Offset, Arith, FieldLengths,
    Cmp, TermCmp, TermIn, Empty, And, Or, Not,
    Check, Increment, Write, Unwrite, Exchange, Seq, If, Perm, field_names,
)
from .evaluator import COMPARATORS, Environment, Interpreter

logger = logging.getLogger(__name__)

PAD = Config.PAD_SYMBOL
BLANK = Config.TAPE_BLANK
TAPE_SYMBOLS = '0123'
FLIPPED = {'=': '=', '!=': '!=', '<': '>', '>': '<', '<=': '>=', '>=': '<='}

# registers are hashable and never None; None always means "reject"
Register = Hashable
Action = Callable[[Register, str], Optional[Tuple[str, Register]]]
Combine = Callable[[Register, str], Optional[Register]]
Update = Callable[[Register, str], Optional[Tuple[str, Register]]]


class PassCompileError(ValueError):
    """The program uses a construct that has no pass form."""


class _Rejects(Exception):
    """Evaluating the node raises Undefined on every letter of the layout."""


class Route:
    """Walk from cell 0 back to cell 0 with an optional action on each visited cell."""

    def __init__(self):
        self.cells: List[int] = [0]
        self.actions: List[Optional[Action]] = [None]

    def _walk(self, cell: int):
        while self.cells[-1] != cell:
            self.cells.append(self.cells[-1] + (1 if cell > self.cells[-1] else -1))
            self.actions.append(None)

    def visit(self, cell: int, action: Action) -> 'Route':
        if cell == self.cells[-1] and self.actions[-1] is not None:
            self._walk(cell + 1)
        self._walk(cell)
        self.actions[-1] = action
        return self

    def read_slot(self, cell: int, combine: Combine) -> 'Route':
        """Read the triple at ``cell`` and fold its symbol into the register."""
        def last(reg, bit):
            symbol = DOUBLE_DECODE.get(reg[1] + bit)
            if symbol is None:
                return None
            inner = combine(reg[0], symbol)
            return None if inner is None else (bit, inner)

        self.visit(cell, _first_bit)
        self.visit(cell + 1, _next_bit)
        return self.visit(cell + 2, last)

    def rewrite_slot(self, cell: int, update: Update) -> 'Route':
        """Read the triple at ``cell``, then write back the symbol chosen by ``update``."""
        def last(reg, bit):
            symbol = DOUBLE_DECODE.get(reg[1] + bit)
            if symbol is None:
                return None
            result = update(reg[0], symbol)
            if result is None:
                return None
            new, inner = result
            code = DOUBLE_CODE[new]
            return code[2], (inner, code)

        self.visit(cell, _first_bit)
        self.visit(cell + 1, _next_bit)
        self.visit(cell + 2, last)
        self.visit(cell + 1, lambda reg, bit: (reg[1][1], reg))
        return self.visit(cell, lambda reg, bit: (reg[1][0], reg[0]))

    def close(self) -> 'Route':
        if self.cells[-1] == 0 and (len(self.cells) == 1 or self.actions[-1] is not None):
            self._walk(1)
        self._walk(0)
        return self

    def __len__(self) -> int:
        return len(self.cells) - 1


def _first_bit(reg, bit):
    return (bit, (reg, bit)) if bit in '01' else None


def _next_bit(reg, bit):
    return (bit, (reg[0], reg[1] + bit)) if bit in '01' else None


def _expect(symbol: str) -> Action:
    return lambda reg, read: (read, reg) if read == symbol else None


class MachineBuilder:
    """Collects the transitions of chained routes under fresh binary state names."""

    def __init__(self):
        self.states: List[str] = [INITIAL, ACCEPT]
        self.transitions: Dict[Tuple[str, str], Transition] = {}
        self.steps = 0
        self._count = 0

    def fresh(self) -> str:
        self._count += 1
        name = bin_encode(self._count)
        self.states.append(name)
        return name

    def emit(self, route: Route, entry: Optional[str], start: Register,
             finish: Callable[[Register], Optional[str]]):
        """
        Add the transitions of ``route`` run from state ``entry`` with register ``start``

        ``finish`` names the state each final register continues in; None
        (for the entry or a continuation) leaves the input rejected.
        """
        if entry is None:
            return
        route.close()
        layer = {start: entry}
        last = len(route) - 1
        for i in range(last + 1):
            action, move = route.actions[i], route.cells[i + 1] - route.cells[i]
            following: Dict[Register, str] = {}
            for reg, state in layer.items():
                for symbol in TAPE_SYMBOLS:
                    result = (symbol, reg) if action is None else action(reg, symbol)
                    if result is None:
                        continue
                    written, reg2 = result
                    if i == last:
                        target = finish(reg2)
                        if target is None:
                            continue
                    else:
                        target = following.get(reg2)
                        if target is None:
                            target = following[reg2] = self.fresh()
                    self.transitions[(symbol, state)] = (written, target, move)
            layer = following
        self.steps += len(route)

    def goto(self, entry: Optional[str], target: Optional[str]):
        if target is not None:
            self.emit(Route(), entry, 0, lambda reg: target)

    def build(self, exit: str) -> TmProgram:
        for symbol in TAPE_SYMBOLS:
            self.transitions[(symbol, exit)] = (symbol, ACCEPT, 1)
        return TmProgram.build(self.states, self.transitions)


# normal forms of valuations and terms

@dataclass(frozen=True)
class _Affine:
    """bin(field) + offset, or the constant ``offset`` when field is None."""
    field: Optional[int]
    offset: int


@dataclass(frozen=True)
class _Raw:
    field: int


@dataclass(frozen=True)
class _Stripped:
    field: int


@dataclass(frozen=True)
class _Indexed:
    """Symbol of a constant word at position bin(field) + offset."""
    word: str
    field: int
    offset: int


TermForm = Union[str, _Raw, _Stripped, _Indexed]


@dataclass
class _Test:
    route: Route
    start: Register
    outcome: Callable[[Register], Optional[bool]]


def _numeral_step(phase: str, symbol: str, canonical: bool = False):
    """(phase, digit) after one symbol of a padded numeral read from the top; None if malformed."""
    if symbol == PAD:
        return ('pad', 0) if phase == 'pad' else None
    if symbol in '01':
        if canonical and phase == 'pad' and symbol == '0':
            return None
        return 'num', int(symbol)
    return None


def _head_phase(phase: str, symbol: str) -> Optional[str]:
    """Padding check read from the first slot: no pad after another symbol."""
    if symbol == PAD:
        return phase if phase == 'pad' else None
    return 'body'


def _tail_phase(phase: str, symbol: str) -> Optional[str]:
    """Padding check read from the last slot."""
    if symbol == PAD:
        return 'pads'
    return None if phase == 'pads' else phase


def _comparator(bound: int, width: int):
    """(start, step) tracking sign(value - bound) for a numeral of ``width`` digits read from the top."""
    if bound < 0:
        return 1, lambda sign, j, digit: sign
    if bit_length(bound) > width:
        return -1, lambda sign, j, digit: sign
    bits = format(bound, 'b').rjust(width, '0') if width else ''

    def step(sign, j, digit):
        if sign:
            return sign
        return (digit > int(bits[j])) - (digit < int(bits[j]))

    return 0, step


def _order(sign: int, a: int, b: int) -> int:
    return sign if sign else (a > b) - (a < b)


def _polar(test, equal: bool):
    if isinstance(test, bool):
        return test == equal
    outcome = test.outcome

    def polar(reg):
        result = outcome(reg)
        return None if result is None else result == equal

    return _Test(test.route, test.start, polar)


class Layout:
    """Cell positions of the fields of 5^k in a Chi encoding."""

    def __init__(self, lengths: Sequence[int], env: Environment):
        self.lengths = tuple(lengths)
        self.env = env
        self.end = chi_length(self.lengths)

    def index(self, label: str) -> int:
        i = self.env.index.get(label)
        if i is None or i >= len(self.lengths):
            raise _Rejects(label)
        return i

    def length(self, i: int) -> int:
        return self.lengths[i]

    def separator(self, i: int) -> int:
        return field_offset(self.lengths, i)

    def slot(self, i: int, j: int) -> int:
        return field_offset(self.lengths, i) + 1 + 3 * j


class PassCompiler:
    """
    Compiles one program over one length vector into a single machine

    Args:
        lengths: Length vector k'
        env: Field labels and constant sequences
    """

    def __init__(self, lengths: Sequence[int], env: Environment):
        self.layout = Layout(lengths, env)
        self.interpreter = Interpreter(env)
        self.builder = MachineBuilder()

    def compile(self, program: Perm) -> Tuple[TmProgram, int]:
        """Machine and a bound on its running time on any input."""
        body, exit = self.builder.fresh(), self.builder.fresh()
        self.builder.emit(self._layout_route(), INITIAL, 0, lambda reg: body)
        self._perm(program, body, exit)
        machine = self.builder.build(exit)
        return machine, self.builder.steps + 1

    def _layout_route(self) -> Route:
        route = Route()
        for i, k in enumerate(self.layout.lengths):
            route.visit(self.layout.separator(i), _expect(Config.SEPARATOR))
            for j in range(k):
                route.read_slot(self.layout.slot(i, j), lambda reg, symbol: reg)
        return route.visit(self.layout.end, _expect(BLANK))

    # normal forms

    def _constant(self, kind: str, node):
        try:
            return getattr(self.interpreter, kind)(node, ())
        except Undefined:
            raise _Rejects(kind)

    def _valuation(self, node) -> _Affine:
        if not field_names(node):
            return _Affine(None, self._constant('value', node))
        if isinstance(node, BinOf) and isinstance(node.term, Proj):
            return _Affine(self.layout.index(node.term.field), 0)
        if isinstance(node, Length) and isinstance(node.term, Proj):
            return _Affine(None, self.layout.length(self.layout.index(node.term.field)))
        if isinstance(node, Offset) and isinstance(node.lengths, FieldLengths):
            index = self._valuation(node.index)
            if index.field is None:
                vector = tuple(self.layout.length(self.layout.index(f)) for f in node.lengths.fields)
                try:
                    return _Affine(None, field_offset(vector, index.offset))
                except EncodingError:
                    raise _Rejects('offset')
        if isinstance(node, Arith) and node.op in ('+', '-'):
            left, right = self._valuation(node.left), self._valuation(node.right)
            sign = 1 if node.op == '+' else -1
            if right.field is None:
                return _Affine(left.field, left.offset + sign * right.offset)
            if left.field is None and node.op == '+':
                return _Affine(right.field, left.offset + right.offset)
        raise PassCompileError(f"no pass form for the valuation {node!r}")

    def _term(self, node) -> TermForm:
        if not field_names(node):
            return self._constant('term', node)
        if isinstance(node, Proj):
            return _Raw(self.layout.index(node.field))
        if isinstance(node, Strip) and isinstance(node.term, Proj):
            return _Stripped(self.layout.index(node.term.field))
        if isinstance(node, IndexedAt) and not field_names(node.term):
            word = self._constant('term', node.term)
            index = self._valuation(node.index)
            if index.field is None:
                if not 0 <= index.offset < len(word):
                    raise _Rejects('at')
                return word[index.offset]
            return _Indexed(word, index.field, index.offset)
        raise PassCompileError(f"no pass form for the term {node!r}")

    # conditions

    def _cond(self, node, entry: Optional[str], on_true: Optional[str], on_false: Optional[str]):
        if not field_names(node):
            try:
                holds = self.interpreter.holds(node, ())
            except Undefined:
                return
            self.builder.goto(entry, on_true if holds else on_false)
            return
        if isinstance(node, Not):
            self._cond(node.item, entry, on_false, on_true)
            return
        if isinstance(node, (And, Or)):
            current = entry
            for item in node.items[:-1]:
                following = self.builder.fresh()
                if isinstance(node, And):
                    self._cond(item, current, following, on_false)
                else:
                    self._cond(item, current, on_true, following)
                current = following
            self._cond(node.items[-1], current, on_true, on_false)
            return
        try:
            test = self._test(node)
        except _Rejects:
            logger.debug("condition %r is undefined on every letter", node)
            return
        if isinstance(test, bool):
            self.builder.goto(entry, on_true if test else on_false)
            return
        targets = {True: on_true, False: on_false}
        self.builder.emit(test.route, entry, test.start, lambda reg: targets.get(test.outcome(reg)))

    def _test(self, node):
        if isinstance(node, Cmp):
            return self._compare(node.op, self._valuation(node.left), self._valuation(node.right))
        if isinstance(node, TermCmp):
            left, right = self._term(node.left), self._term(node.right)
            if isinstance(left, str) and isinstance(right, str):
                return COMPARATORS[node.op](left, right)
            if node.op not in ('=', '!='):
                raise PassCompileError(f"no pass form for word order {node.op!r}")
            return _polar(self._equal(left, right), node.op == '=')
        if isinstance(node, TermIn):
            return self._member(self._term(node.term), node.words)
        if isinstance(node, Empty):
            return self._empty(node.fields)
        raise PassCompileError(f"no pass form for the condition {type(node).__name__}")

    def _compare(self, op: str, left: _Affine, right: _Affine):
        if left.field is None and right.field is None:
            return COMPARATORS[op](left.offset, right.offset)
        if left.field is None:
            return self._compare(FLIPPED[op], right, left)
        if right.field is None:
            width = self.layout.length(left.field)
            start, step = _comparator(right.offset - left.offset, width)
            route = self._numeral(Route(), left.field, step)
            return _Test(route, ('pad', start), lambda reg: COMPARATORS[op](reg[1], 0))
        if left.field == right.field:
            result = COMPARATORS[op](left.offset, right.offset)
            route = self._numeral(Route(), left.field, lambda inner, j, digit: inner)
            return _Test(route, ('pad', 0), lambda reg: result)
        if left.offset != right.offset:
            raise PassCompileError("comparison of two fields with different offsets")
        return self._field_order(left.field, right.field, op)

    def _numeral(self, route: Route, i: int, consume, canonical: bool = False) -> Route:
        """Read field i as a padded numeral from the top; register (phase, inner)."""
        for j in range(self.layout.length(i)):
            route.read_slot(self.layout.slot(i, j), _numeral_reader(j, consume, canonical))
        return route

    def _field_order(self, f: int, g: int, op: str) -> _Test:
        lf, lg = self.layout.length(f), self.layout.length(g)
        width = max(lf, lg)
        route = Route()
        for t in range(width):
            jf, jg = t - (width - lf), t - (width - lg)
            if jf >= 0:
                route.read_slot(self.layout.slot(f, jf), _order_reader(True, jg < 0))
            if jg >= 0:
                route.read_slot(self.layout.slot(g, jg), _order_reader(False, False))
        return _Test(route, ('pad', 'pad', 0, 0), lambda reg: COMPARATORS[op](reg[2], 0))

    def _equal(self, left: TermForm, right: TermForm):
        rank = {_Raw: 0, _Stripped: 0, _Indexed: 1, str: 2}
        if rank[type(left)] > rank[type(right)]:
            left, right = right, left
        if isinstance(right, str):
            if isinstance(left, _Indexed):
                return self._indexed_test(left, lambda symbol: symbol == right)
            return self._member(left, (right,))
        if isinstance(left, _Raw) and isinstance(right, _Raw):
            return self._raw_pair(left.field, right.field)
        if isinstance(left, _Stripped) and isinstance(right, _Stripped):
            return self._stripped_pair(left.field, right.field)
        if isinstance(left, _Raw) and isinstance(right, _Indexed):
            return self._indexed_test(right, lambda symbol: symbol, read=left.field)
        raise PassCompileError(f"no pass form for comparing {left!r} with {right!r}")

    def _member(self, target: TermForm, words: Sequence[str]):
        if isinstance(target, str):
            return target in words
        if isinstance(target, _Indexed):
            return self._indexed_test(target, lambda symbol: symbol in words)
        i, stripped = target.field, isinstance(target, _Stripped)
        k = self.layout.length(i)
        if stripped:
            candidates = [sharp_pad(k, w) for w in words if PAD not in w and len(w) <= k]
        else:
            candidates = [w for w in words if len(w) == k]
        candidates = tuple(dict.fromkeys(candidates))
        if not candidates and not stripped:
            return False
        route = Route()
        for j in range(k):
            route.read_slot(self.layout.slot(i, j), _match_reader(j, candidates, stripped))
        return _Test(route, ('pad', frozenset(range(len(candidates)))), lambda reg: bool(reg[1]))

    def _raw_pair(self, f: int, g: int):
        k = self.layout.length(f)
        if k != self.layout.length(g):
            return False
        if f == g:
            return True
        route = Route()
        for j in range(k):
            route.read_slot(self.layout.slot(f, j), lambda reg, symbol: (reg[0], symbol))
            route.read_slot(self.layout.slot(g, j), lambda reg, symbol: (reg[0] and reg[1] == symbol, ''))
        return _Test(route, (True, ''), lambda reg: reg[0])

    def _stripped_pair(self, f: int, g: int) -> _Test:
        # right aligned, both padded to the longer field
        lf, lg = self.layout.length(f), self.layout.length(g)
        route = Route()
        for t in range(max(lf, lg)):
            jf, jg = lf - 1 - t, lg - 1 - t
            if jf >= 0:
                route.read_slot(self.layout.slot(f, jf), _pair_reader(True, jg < 0))
            if jg >= 0:
                route.read_slot(self.layout.slot(g, jg), _pair_reader(False, False))
        return _Test(route, ('body', 'body', True, PAD), lambda reg: reg[2])

    def _indexed_test(self, indexed: _Indexed, judge, read: Optional[int] = None):
        """Compute the index with a saturating counter, then judge the selected symbol."""
        word, offset = indexed.word, indexed.offset
        cap, low = len(word) - offset, -offset
        if cap <= max(low, 0):
            raise _Rejects('at')
        route = self._numeral(Route(), indexed.field, lambda count, j, digit: min(2 * count + digit, cap))
        other = None
        if read is not None:
            if self.layout.length(read) != 1:
                other = False
            else:
                route.read_slot(self.layout.slot(read, 0), lambda reg, symbol: (reg[0], (reg[1], symbol)))

        def outcome(reg):
            count = reg[1] if read is None or other is False else reg[1][0]
            if not low <= count < cap:
                return None
            symbol = word[count + offset]
            if read is None:
                return judge(symbol)
            return False if other is False else symbol == reg[1][1]

        return _Test(route, ('pad', 0), outcome)

    def _empty(self, labels: Sequence[str]):
        indices = []
        missing = False
        for label in labels:
            try:
                indices.append(self.layout.index(label))
            except _Rejects:
                missing = True
                break
        if not indices and missing:
            raise _Rejects('field')
        route = Route()
        for i in indices:
            for j in range(self.layout.length(i)):
                route.read_slot(self.layout.slot(i, j), lambda reg, symbol: reg and symbol == PAD)
        # a missing field is only reached when every earlier field is empty
        return _Test(route, True, lambda reg: None if reg and missing else reg)

    # permutations

    def _perm(self, node: Perm, entry: Optional[str], exit: Optional[str]):
        if isinstance(node, Seq):
            if not node.items:
                self.builder.goto(entry, exit)
                return
            current = entry
            for n, item in enumerate(node.items):
                following = exit if n == len(node.items) - 1 else self.builder.fresh()
                self._perm(item, current, following)
                current = following
            return
        if isinstance(node, Check):
            self._cond(node.condition, entry, exit, None)
            return
        if isinstance(node, If):
            self._if(node, entry, exit)
            return
        try:
            if isinstance(node, Increment):
                self._increment(node, entry, exit)
            elif isinstance(node, (Write, Unwrite)):
                self._write(node, entry, exit)
            elif isinstance(node, Exchange):
                self._exchange(node, entry, exit)
            else:
                raise PassCompileError(f"no pass form for {type(node).__name__}")
        except _Rejects:
            logger.debug("%s is undefined on every letter", type(node).__name__)

    def _if(self, node: If, entry: Optional[str], exit: Optional[str]):
        branches = node.branches
        if not branches:
            self.builder.goto(entry, exit)
            return
        bodies = [self.builder.fresh() for _ in branches]
        checks = [self.builder.fresh() for _ in branches]
        current = entry
        for k, (condition, _) in enumerate(branches):
            following = self.builder.fresh() if k + 1 < len(branches) else exit
            self._cond(condition, current, bodies[k], following)
            current = following
        for k, (condition, body) in enumerate(branches):
            self._perm(body, bodies[k], checks[k])
            # the image must select the same branch
            current = checks[k]
            for earlier, _ in branches[:k]:
                following = self.builder.fresh()
                self._cond(earlier, current, None, following)
                current = following
            self._cond(condition, current, exit, None)

    def _increment(self, node: Increment, entry: Optional[str], exit: Optional[str]):
        i = self.layout.index(node.field)
        modulus = self._valuation(node.modulus)
        if modulus.field is not None:
            raise PassCompileError("increment modulus must not depend on the letter")
        if node.step not in (1, -1):
            raise PassCompileError(f"no pass form for a step of {node.step}")
        M, k = modulus.offset, self.layout.length(i)
        if M <= 0:
            raise _Rejects('incr')
        edge, target = (M - 1, 0) if node.step > 0 else (0, M - 1)
        below_start, below = _comparator(M, k)
        edge_start, at_edge = _comparator(edge, k)
        arith, wrap = self.builder.fresh(), self.builder.fresh()

        def finish(reg):
            sign_bound, sign_edge = reg[1]
            if sign_bound >= 0:
                return None
            return wrap if sign_edge == 0 else arith

        route = self._numeral(Route(), i, lambda inner, j, digit: (below(inner[0], j, digit),
                                                                  at_edge(inner[1], j, digit)),
                              canonical=True)
        self.builder.emit(route, entry, ('pad', (below_start, edge_start)), finish)

        if bit_length(target) <= k:
            word = sharp_pad(k, bin_encode(target))
            route = Route()
            for j in range(k):
                route.rewrite_slot(self.layout.slot(i, j), lambda reg, old, new=word[j]: (new, reg))
            self.builder.emit(route, wrap, 0, lambda reg: exit)

        route = Route()
        if node.step > 0:
            for j in reversed(range(k)):
                route.rewrite_slot(self.layout.slot(i, j), _carry)
            self.builder.emit(route, arith, True, lambda carry: None if carry else exit)
        else:
            for j in reversed(range(k)):
                route.rewrite_slot(self.layout.slot(i, j), _borrow)
            for j in range(k):
                route.rewrite_slot(self.layout.slot(i, j), _drop_leading_zero)
            self.builder.emit(route, arith, (True, 'pad'), lambda reg: None if reg[0] else exit)

    def _write(self, node: Union[Write, Unwrite], entry: Optional[str], exit: Optional[str]):
        i = self.layout.index(node.field)
        k = self.layout.length(i)
        erase = isinstance(node, Unwrite)
        source = self._term(node.term)
        route = Route()
        if isinstance(source, str):
            if PAD in source or len(source) > k:
                raise _Rejects('write')
            word = sharp_pad(k, source)
            for j in range(k):
                if erase:
                    update = (lambda reg, old, w=word[j]: (PAD, reg) if old == w else None)
                else:
                    update = (lambda reg, old, w=word[j]: (w, reg) if old == PAD else None)
                route.rewrite_slot(self.layout.slot(i, j), update)
            self.builder.emit(route, entry, 0, lambda reg: exit)
            return
        if not isinstance(source, (_Raw, _Stripped)) or source.field == i:
            raise PassCompileError(f"no pass form for writing {node.term!r} into {node.field}")
        g, raw = source.field, isinstance(source, _Raw)
        lg = self.layout.length(g)
        if raw and lg > k:
            raise _Rejects('write')
        # right aligned copy: the source word ends where the field ends
        for t in range(max(k, lg)):
            jf, jg = k - 1 - t, lg - 1 - t
            if jg >= 0:
                route.read_slot(self.layout.slot(g, jg), _source_reader(raw, jf < 0))
            if jf >= 0:
                route.rewrite_slot(self.layout.slot(i, jf), _erase_slot if erase else _fill_slot)
        self.builder.emit(route, entry, ('body', PAD), lambda reg: exit)

    def _exchange(self, node: Exchange, entry: Optional[str], exit: Optional[str]):
        a, b = self.layout.index(node.first), self.layout.index(node.second)
        k = self.layout.length(a)
        if k != self.layout.length(b):
            raise _Rejects('exch')
        if a == b:
            self.builder.goto(entry, exit)
            return
        route = Route()
        for j in range(k):
            route.read_slot(self.layout.slot(a, j), lambda reg, symbol: symbol)
            route.rewrite_slot(self.layout.slot(b, j), lambda reg, old: (reg, old))
            route.rewrite_slot(self.layout.slot(a, j), lambda reg, old: (reg, ''))
        self.builder.emit(route, entry, '', lambda reg: exit)


# register updates

def _numeral_reader(j: int, consume, canonical: bool) -> Combine:
    def combine(reg, symbol):
        step = _numeral_step(reg[0], symbol, canonical)
        if step is None:
            return None
        phase, digit = step
        inner = consume(reg[1], j, digit)
        return None if inner is None else (phase, inner)
    return combine


def _order_reader(first: bool, alone: bool) -> Combine:
    """Top-aligned comparison of two numerals; register (phase_f, phase_g, sign, carried digit)."""
    def combine(reg, symbol):
        pf, pg, sign, carried = reg
        step = _numeral_step(pf if first else pg, symbol)
        if step is None:
            return None
        phase, digit = step
        if not first:
            return pf, phase, _order(sign, carried, digit), 0
        if alone:
            return phase, pg, _order(sign, digit, 0), 0
        return phase, pg, sign, digit
    return combine


def _pair_reader(first: bool, alone: bool) -> Combine:
    """Bottom-aligned comparison of two stripped words; register (phase_f, phase_g, same, carried)."""
    def combine(reg, symbol):
        pf, pg, same, carried = reg
        phase = _tail_phase(pf if first else pg, symbol)
        if phase is None:
            return None
        if not first:
            return pf, phase, same and symbol == carried, PAD
        if alone:
            return phase, pg, same and symbol == PAD, PAD
        return phase, pg, same, symbol
    return combine


def _match_reader(j: int, candidates: Tuple[str, ...], stripped: bool) -> Combine:
    def combine(reg, symbol):
        phase, alive = reg
        if stripped:
            phase = _head_phase(phase, symbol)
            if phase is None:
                return None
        return phase, frozenset(c for c in alive if candidates[c][j] == symbol)
    return combine


def _source_reader(raw: bool, overflow: bool) -> Combine:
    """One symbol of the copied word; past the end of the target only padding may remain."""
    def combine(reg, symbol):
        phase, _ = reg
        if raw:
            if symbol == PAD:
                return None
        else:
            phase = _tail_phase(phase, symbol)
            if phase is None:
                return None
        if overflow:
            return (phase, PAD) if symbol == PAD else None
        return phase, symbol
    return combine


def _fill_slot(reg, old):
    phase, carried = reg
    return (carried, (phase, PAD)) if old == PAD else None


def _erase_slot(reg, old):
    phase, carried = reg
    return (PAD, (phase, PAD)) if old == carried else None


def _carry(carry, symbol):
    if not carry:
        return symbol, False
    if symbol == '1':
        return '0', True
    return '1', False


def _borrow(reg, symbol):
    borrow, phase = reg
    if not borrow:
        return symbol, reg
    if symbol == '0':
        return '1', reg
    if symbol == '1':
        return '0', (False, phase)
    return None


def _drop_leading_zero(reg, symbol):
    borrow, phase = reg
    if phase != 'pad':
        return symbol, reg
    if symbol == '0':
        return PAD, reg
    return symbol, (borrow, 'pad' if symbol == PAD else 'num')


def compile_passes(program: Perm, lengths: Sequence[int], env: Environment) -> Tuple[TmProgram, int]:
    """
    Machine running ``program`` by passes over the tape of 5^k'

    Args:
        program: Permutation program
        lengths: Target length vector k'
        env: Field labels and constant sequences

    Returns:
        (machine, step bound); raises PassCompileError on constructs with no pass form
    """
    machine, bound = PassCompiler(lengths, env).compile(program)
    logger.debug("pass machine over 5^%s: %d states, at most %d steps",
                 tuple(lengths), len(machine.states), bound)
    return machine, bound
