import logging
import re
from typing import Iterable, List, NamedTuple, Optional, Set, Tuple

from .ast import (
    Term, Valuation, Vector, Condition, Perm,
    Const, Proj, ChiOf, BinWord, Concat, IndexedAt, Strip,
    Num, BinOf, Length, Directive, Offset, SeqAt, Arith,
    ConstVector, FieldLengths, SeqVector,
    TrueC, Cmp, TermCmp, TermIn, Live, Empty, Halt, And, Or, Not,
    Check, Increment, RunTm, Write, Unwrite, Exchange, Seq, If, Intruder, seq,
)

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"""
    (?P<space>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<string>'[^']*')
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|<=|>=|!=|[=<>+\-*/%(){},])
""", re.VERBOSE)

COMPARISONS = ('=', '!=', '<', '<=', '>', '>=')
ADDITIVE = ('+', '-')
MULTIPLICATIVE = ('*', '/', '%')
TERM_FUNCTIONS = ('chi', 'binw', 'cat', 'at', 'strip')
VALUATION_FUNCTIONS = ('bin', 'len', 'seq', 'off', 'dshift', 'wshift')
CONDITION_FUNCTIONS = ('live', 'empty', 'halt')


class ParseError(ValueError):
    """Syntax or name error with its source position (1-based)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize_line(text: str, line: int) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = match.lastgroup
        if kind not in ('space', 'comment'):
            tokens.append(Token(kind, match.group(), line, pos + 1))
        pos = match.end()
    return tokens


class _Line:
    """Cursor over the tokens of one source line."""

    def __init__(self, tokens: List[Token], line: int, width: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line
        self.width = width

    def peek(self, offset: int = 0) -> Optional[Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def at(self, *texts: str) -> bool:
        token = self.peek()
        return token is not None and token.kind in ('op', 'name') and token.text in texts

    def error(self, message: str) -> ParseError:
        token = self.peek()
        column = token.column if token else self.width + 1
        return ParseError(message, self.line, column)

    def next(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of line")
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.peek().text if self.peek() else 'end of line'
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def done(self) -> bool:
        return self.pos >= len(self.tokens)


class PermParser:
    """
    Recursive descent parser of the line-oriented permutation language

    Args:
        fields: Field labels a program may mention; anything else is an error
    """

    def __init__(self, fields: Iterable[str]):
        self.fields: Set[str] = set(fields)

    def parse(self, src: str) -> Seq:
        root: List[Perm] = []
        # open IF blocks: [branches, condition, body, has_else]
        blocks: List[list] = []
        lines = src.splitlines()
        for number, text in enumerate(lines, 1):
            tokens = tokenize_line(text, number)
            if not tokens:
                continue
            cursor = _Line(tokens, number, len(text))
            head = tokens[0]
            if head.kind == 'name' and head.text in ('IF', 'ELSIF', 'ELSE', 'ENDIF'):
                cursor.next()
                if head.text == 'IF':
                    condition = self._condition(cursor)
                    blocks.append([[], condition, [], False])
                elif not blocks:
                    raise ParseError(f"{head.text} without IF", number, head.column)
                elif head.text == 'ENDIF':
                    branches, condition, body, _ = blocks.pop()
                    branches.append((condition, seq(*body)))
                    (blocks[-1][2] if blocks else root).append(If(tuple(branches)))
                else:
                    block = blocks[-1]
                    if block[3]:
                        raise ParseError(f"{head.text} after ELSE", number, head.column)
                    block[0].append((block[1], seq(*block[2])))
                    block[1] = self._condition(cursor) if head.text == 'ELSIF' else TrueC()
                    block[2] = []
                    block[3] = head.text == 'ELSE'
            else:
                statement = self._statement(cursor)
                (blocks[-1][2] if blocks else root).append(statement)
            if not cursor.done():
                raise cursor.error(f"unexpected {cursor.peek().text!r}")
        if blocks:
            raise ParseError("missing ENDIF", len(lines), 1)
        return seq(*root)

    # statements

    def _field(self, cursor: _Line) -> str:
        token = cursor.peek()
        if token is None or token.kind != 'name':
            raise cursor.error("expected a field label")
        if token.text not in self.fields:
            raise cursor.error(f"unknown field {token.text!r}")
        cursor.next()
        return token.text

    def _statement(self, cursor: _Line) -> Perm:
        token = cursor.next()
        word = token.text
        if word == 'check':
            return Check(self._condition(cursor))
        if word in ('incr', 'decr'):
            modulus = self._valuation(cursor)
            return Increment(modulus, self._field(cursor), 1 if word == 'incr' else -1)
        if word in ('write', 'unwrite'):
            term = self._term(cursor)
            cursor.expect('->')
            field = self._field(cursor)
            return Write(term, field) if word == 'write' else Unwrite(term, field)
        if word == 'exch':
            return Exchange(self._field(cursor), self._field(cursor))
        if word in ('runtm', 'unruntm'):
            program = self._term(cursor)
            tape, left, right = self._field(cursor), self._field(cursor), self._field(cursor)
            return RunTm(program, tape, left, right, inverse=word == 'unruntm')
        if word in ('intruder', 'unintruder'):
            name = cursor.next()
            if name.kind != 'name':
                raise ParseError("expected an intruder name", name.line, name.column)
            index = self._valuation(cursor)
            fields = []
            while not cursor.done():
                fields.append(self._field(cursor))
            return Intruder(name.text, index, tuple(fields), inverse=word == 'unintruder')
        raise ParseError(f"unknown statement {word!r}", token.line, token.column)

    # conditions

    def _condition(self, cursor: _Line) -> Condition:
        items = [self._conjunction(cursor)]
        while cursor.at('or'):
            cursor.next()
            items.append(self._conjunction(cursor))
        return items[0] if len(items) == 1 else Or(tuple(items))

    def _conjunction(self, cursor: _Line) -> Condition:
        items = [self._negation(cursor)]
        while cursor.at('and'):
            cursor.next()
            items.append(self._negation(cursor))
        return items[0] if len(items) == 1 else And(tuple(items))

    def _negation(self, cursor: _Line) -> Condition:
        if cursor.at('not'):
            cursor.next()
            return Not(self._negation(cursor))
        return self._atom(cursor)

    def _atom(self, cursor: _Line) -> Condition:
        if cursor.at('true'):
            cursor.next()
            return TrueC()
        if cursor.at('('):
            saved = cursor.pos
            try:
                cursor.next()
                inner = self._condition(cursor)
                cursor.expect(')')
                if not cursor.at(*(COMPARISONS + ADDITIVE + MULTIPLICATIVE)):
                    return inner
            except ParseError:
                pass
            cursor.pos = saved
            return self._comparison(cursor)
        token = cursor.peek()
        if token is not None and token.kind == 'name' and token.text in CONDITION_FUNCTIONS \
                and cursor.peek(1) is not None and cursor.peek(1).text == '(':
            cursor.next()
            cursor.expect('(')
            if token.text == 'live':
                term = self._term(cursor)
                cursor.expect(',')
                program = self._term(cursor)
                cursor.expect(')')
                return Live(term, program)
            if token.text == 'empty':
                fields = self._field_list(cursor)
                return Empty(fields)
            program = self._term(cursor)
            cursor.expect(',')
            steps = self._valuation(cursor)
            cursor.expect(',')
            word = self._term(cursor)
            cursor.expect(')')
            return Halt(program, steps, word)
        return self._comparison(cursor)

    def _starts_term(self, cursor: _Line) -> bool:
        token = cursor.peek()
        if token is None:
            return False
        if token.kind == 'string':
            return True
        if token.kind != 'name':
            return False
        if token.text in TERM_FUNCTIONS and cursor.peek(1) is not None and cursor.peek(1).text == '(':
            return True
        return token.text in self.fields

    def _comparison(self, cursor: _Line) -> Condition:
        if self._starts_term(cursor):
            left = self._term(cursor)
            if cursor.at('in'):
                cursor.next()
                cursor.expect('{')
                words = []
                while not cursor.at('}'):
                    token = cursor.next()
                    if token.kind != 'string':
                        raise ParseError("expected a quoted word", token.line, token.column)
                    words.append(token.text[1:-1])
                    if not cursor.at('}'):
                        cursor.expect(',')
                cursor.expect('}')
                return TermIn(left, tuple(words))
            if not cursor.at('=', '!='):
                raise cursor.error("expected '=', '!=' or 'in' after a term")
            op = cursor.next().text
            return TermCmp(op, left, self._term(cursor))
        left = self._valuation(cursor)
        if not cursor.at(*COMPARISONS):
            raise cursor.error("expected a comparison operator")
        op = cursor.next().text
        return Cmp(op, left, self._valuation(cursor))

    def _field_list(self, cursor: _Line) -> Tuple[str, ...]:
        fields = []
        while not cursor.at(')'):
            fields.append(self._field(cursor))
            if not cursor.at(')'):
                cursor.expect(',')
        cursor.expect(')')
        return tuple(fields)

    # terms

    def _term(self, cursor: _Line) -> Term:
        token = cursor.peek()
        if token is None:
            raise cursor.error("expected a term")
        if token.kind == 'string':
            cursor.next()
            word = token.text[1:-1]
            if any(c not in '01234' for c in word):
                raise ParseError(f"word {word!r} has symbols outside 0..4", token.line, token.column)
            return Const(word)
        if token.kind == 'name' and token.text in TERM_FUNCTIONS and cursor.peek(1) is not None \
                and cursor.peek(1).text == '(':
            cursor.next()
            cursor.expect('(')
            if token.text == 'chi':
                node = ChiOf(self._term(cursor))
            elif token.text == 'binw':
                node = BinWord(self._valuation(cursor))
            elif token.text == 'strip':
                node = Strip(self._term(cursor))
            elif token.text == 'at':
                term = self._term(cursor)
                cursor.expect(',')
                node = IndexedAt(term, self._valuation(cursor))
            else:
                parts = [self._term(cursor)]
                while cursor.at(','):
                    cursor.next()
                    parts.append(self._term(cursor))
                node = Concat(tuple(parts))
            cursor.expect(')')
            return node
        if token.kind == 'name':
            return Proj(self._field(cursor))
        raise cursor.error(f"expected a term, found {token.text!r}")

    # valuations

    def _valuation(self, cursor: _Line) -> Valuation:
        node = self._product(cursor)
        while cursor.at(*ADDITIVE):
            op = cursor.next().text
            node = Arith(op, node, self._product(cursor))
        return node

    def _product(self, cursor: _Line) -> Valuation:
        node = self._factor(cursor)
        while cursor.at(*MULTIPLICATIVE):
            op = cursor.next().text
            node = Arith(op, node, self._factor(cursor))
        return node

    def _factor(self, cursor: _Line) -> Valuation:
        token = cursor.peek()
        if token is None:
            raise cursor.error("expected a valuation")
        if token.kind == 'int':
            cursor.next()
            return Num(int(token.text))
        if cursor.at('-') and cursor.peek(1) is not None and cursor.peek(1).kind == 'int':
            cursor.next()
            return Num(-int(cursor.next().text))
        if cursor.at('('):
            cursor.next()
            node = self._valuation(cursor)
            cursor.expect(')')
            return node
        if token.kind == 'name' and token.text in VALUATION_FUNCTIONS:
            cursor.next()
            cursor.expect('(')
            if token.text == 'bin':
                node = BinOf(self._term(cursor))
            elif token.text == 'len':
                node = Length(self._term(cursor))
            elif token.text in ('dshift', 'wshift'):
                node = Directive(self._term(cursor), 'D' if token.text == 'dshift' else 'W')
            elif token.text == 'seq':
                name = cursor.next()
                cursor.expect(',')
                node = SeqAt(name.text, self._valuation(cursor))
            else:
                lengths = self._vector(cursor)
                cursor.expect(',')
                node = Offset(lengths, self._valuation(cursor))
            cursor.expect(')')
            return node
        raise cursor.error(f"expected a valuation, found {token.text!r}")

    def _vector(self, cursor: _Line) -> Vector:
        token = cursor.next()
        cursor.expect('(')
        if token.text == 'vec':
            values = []
            while not cursor.at(')'):
                values.append(self._integer(cursor))
                if not cursor.at(')'):
                    cursor.expect(',')
            cursor.expect(')')
            return ConstVector(tuple(values))
        if token.text == 'lens':
            return FieldLengths(self._field_list(cursor))
        if token.text == 'vseq':
            name = cursor.next()
            cursor.expect(',')
            index = self._valuation(cursor)
            cursor.expect(')')
            return SeqVector(name.text, index)
        raise ParseError(f"unknown vector {token.text!r}", token.line, token.column)

    def _integer(self, cursor: _Line) -> int:
        token = cursor.next()
        if token.kind != 'int':
            raise ParseError("expected an integer", token.line, token.column)
        return int(token.text)


def parse(src: str, fields: Iterable[str]) -> Seq:
    """
    Parse a permutation program

    Args:
        src: Program text, one primitive per line
        fields: Known field labels

    Returns:
        Seq node of the program
    """
    return PermParser(fields).parse(src)
