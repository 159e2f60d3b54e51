from typing import List

from .ast import (
    Const, Proj, ChiOf, BinWord, Concat, IndexedAt, Strip,
    Num, BinOf, Length, Directive, Offset, SeqAt, Arith,
    ConstVector, FieldLengths, SeqVector,
    TrueC, Cmp, TermCmp, TermIn, Live, Empty, Halt, And, Or, Not,
    Check, Increment, RunTm, Write, Unwrite, Exchange, Seq, If, Intruder,
)

INDENT = '  '


def print_term(node) -> str:
    if isinstance(node, Const):
        return f"'{node.word}'"
    if isinstance(node, Proj):
        return node.field
    if isinstance(node, ChiOf):
        return f"chi({print_term(node.term)})"
    if isinstance(node, BinWord):
        return f"binw({print_valuation(node.value)})"
    if isinstance(node, Concat):
        return f"cat({', '.join(print_term(p) for p in node.parts)})"
    if isinstance(node, IndexedAt):
        return f"at({print_term(node.term)}, {print_valuation(node.index)})"
    if isinstance(node, Strip):
        return f"strip({print_term(node.term)})"
    raise TypeError(f"not a term: {node!r}")


def print_vector(node) -> str:
    if isinstance(node, ConstVector):
        return f"vec({', '.join(str(v) for v in node.values)})"
    if isinstance(node, FieldLengths):
        return f"lens({', '.join(node.fields)})"
    if isinstance(node, SeqVector):
        return f"vseq({node.name}, {print_valuation(node.index)})"
    raise TypeError(f"not a vector: {node!r}")


def print_valuation(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, BinOf):
        return f"bin({print_term(node.term)})"
    if isinstance(node, Length):
        return f"len({print_term(node.term)})"
    if isinstance(node, Directive):
        return f"{'dshift' if node.kind == 'D' else 'wshift'}({print_term(node.term)})"
    if isinstance(node, Offset):
        return f"off({print_vector(node.lengths)}, {print_valuation(node.index)})"
    if isinstance(node, SeqAt):
        return f"seq({node.name}, {print_valuation(node.index)})"
    if isinstance(node, Arith):
        return f"({print_valuation(node.left)} {node.op} {print_valuation(node.right)})"
    raise TypeError(f"not a valuation: {node!r}")


def _wrapped(node) -> str:
    text = print_condition(node)
    return f"({text})" if isinstance(node, (And, Or)) else text


def print_condition(node) -> str:
    if isinstance(node, TrueC):
        return 'true'
    if isinstance(node, Cmp):
        return f"{print_valuation(node.left)} {node.op} {print_valuation(node.right)}"
    if isinstance(node, TermCmp):
        return f"{print_term(node.left)} {node.op} {print_term(node.right)}"
    if isinstance(node, TermIn):
        return f"{print_term(node.term)} in {{{', '.join(repr_word(w) for w in node.words)}}}"
    if isinstance(node, Live):
        return f"live({print_term(node.term)}, {print_term(node.program)})"
    if isinstance(node, Empty):
        return f"empty({', '.join(node.fields)})"
    if isinstance(node, Halt):
        return (f"halt({print_term(node.program)}, {print_valuation(node.steps)}, "
                f"{print_term(node.word)})")
    if isinstance(node, And):
        return ' and '.join(_wrapped(item) for item in node.items)
    if isinstance(node, Or):
        return ' or '.join(_wrapped(item) for item in node.items)
    if isinstance(node, Not):
        return f"not {_wrapped(node.item)}"
    raise TypeError(f"not a condition: {node!r}")


def repr_word(word: str) -> str:
    return f"'{word}'"


def _lines(node, depth: int, out: List[str]) -> None:
    pad = INDENT * depth
    if isinstance(node, Seq):
        for item in node.items:
            _lines(item, depth, out)
    elif isinstance(node, Check):
        out.append(f"{pad}check {print_condition(node.condition)}")
    elif isinstance(node, Increment):
        verb = 'incr' if node.step > 0 else 'decr'
        out.append(f"{pad}{verb} {print_valuation(node.modulus)} {node.field}")
    elif isinstance(node, RunTm):
        verb = 'unruntm' if node.inverse else 'runtm'
        out.append(f"{pad}{verb} {print_term(node.program)} {node.tape} {node.head_left} {node.head_right}")
    elif isinstance(node, Write):
        out.append(f"{pad}write {print_term(node.term)} -> {node.field}")
    elif isinstance(node, Unwrite):
        out.append(f"{pad}unwrite {print_term(node.term)} -> {node.field}")
    elif isinstance(node, Exchange):
        out.append(f"{pad}exch {node.first} {node.second}")
    elif isinstance(node, Intruder):
        verb = 'unintruder' if node.inverse else 'intruder'
        out.append(f"{pad}{verb} {node.name} {print_valuation(node.index)} {' '.join(node.fields)}")
    elif isinstance(node, If):
        for i, (condition, body) in enumerate(node.branches):
            if i == 0:
                out.append(f"{pad}IF {print_condition(condition)}")
            elif isinstance(condition, TrueC) and i == len(node.branches) - 1:
                out.append(f"{pad}ELSE")
            else:
                out.append(f"{pad}ELSIF {print_condition(condition)}")
            _lines(body, depth + 1, out)
        out.append(f"{pad}ENDIF")
    else:
        raise TypeError(f"not a permutation: {node!r}")


def pretty_print(node) -> str:
    """Source text of a program; parse(pretty_print(p)) == p for flat sequences."""
    out: List[str] = []
    _lines(node, 0, out)
    return '\n'.join(out) + ('\n' if out else '')
