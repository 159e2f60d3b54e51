"""
Rule listings as permutation programs

Each ``*_listing`` function returns the program of one algorithm block;
clock guards compare ``bin(Clock) - t0`` with the phase boundaries, so a
negative relative clock simply selects no branch.
"""
from typing import Sequence, Union

from fixpoint_ppa.modules.turing import INITIAL
from fixpoint_ppa.modules.permlang import (
    Term, Valuation, Vector, Condition, Perm, Seq,
    Const, Proj, ChiOf, BinWord, Concat, IndexedAt, Strip,
    Num, BinOf, Length, Directive, Offset, SeqAt, Arith,
    ConstVector, FieldLengths, SeqVector,
    Cmp, TermCmp, TermIn, Live, Empty, Halt, Not,
    Check, Increment, RunTm, Write, Unwrite, Exchange, If, Intruder,
    seq, if_then, all_of, any_of,
)
from .fields import AUX_FIELDS, C_SELF, C_HSIM, C_INTRU, C_SYNCOMP, C_REALI

ValueLike = Union[int, Valuation]
TermLike = Union[str, Term]

ADDR = BinOf(Proj('Addr'))
CLOCK = BinOf(Proj('Clock'))
# program fields are padded to their length; machines read the stripped code
PROG = Strip(Proj('Prog'))
REV_PROG = Strip(Proj('RevProg'))


def value(x: ValueLike) -> Valuation:
    return Num(x) if isinstance(x, int) else x


def term(x: TermLike) -> Term:
    return Const(x) if isinstance(x, str) else x


def vector(x: Union[Sequence[int], Vector]) -> Vector:
    return x if isinstance(x, Vector) else ConstVector(tuple(x))


def plus(a: ValueLike, b: ValueLike) -> Valuation:
    a, b = value(a), value(b)
    if b == Num(0):
        return a
    return Arith('+', a, b)


def minus(a: ValueLike, b: ValueLike) -> Valuation:
    a, b = value(a), value(b)
    if b == Num(0):
        return a
    return Arith('-', a, b)


def times(k: int, a: ValueLike) -> Valuation:
    a = value(a)
    return a if k == 1 else Arith('*', Num(k), a)


def eq(a: ValueLike, b: ValueLike) -> Condition:
    return Cmp('=', value(a), value(b))


def _cmp(op: str):
    return lambda a, b: Cmp(op, value(a), value(b))


lt, le, gt, ge = _cmp('<'), _cmp('<='), _cmp('>'), _cmp('>=')


def coordi_listing(S: ValueLike, T: ValueLike, addr: str = 'Addr', clock: str = 'Clock') -> Seq:
    """Check the twins agree, then advance the address twin mod S and both clocks mod T."""
    return seq(
        Check(all_of(
            Cmp('=', BinOf(Proj(f'{addr}_r')), BinOf(Proj(addr))),
            Cmp('=', BinOf(Proj(f'{clock}_r')), BinOf(Proj(clock))),
        )),
        Increment(value(S), f'{addr}_r'),
        Increment(value(T), clock),
        Increment(value(T), f'{clock}_r'),
    )


def _no_heads(program: Term) -> Condition:
    return all_of(Not(Live(Proj('Head_l'), program)), Not(Live(Proj('Head_r'), program)))


def compute_listing(U: ValueLike, p: TermLike, p_inv: TermLike, t0: ValueLike = 0,
                    addr: Valuation = ADDR, clock: Valuation = CLOCK) -> Seq:
    """
    Four phases of length U around the machines p and p^-1

    Run p on Tape, copy its output to NTape, unwind p, run p^-1 on NTape,
    erase NTape against Tape, unwind p^-1 on Tape. The initial state is
    written at the colony origin before the first phase and erased after the
    last one.
    """
    U = value(U)
    p, p_inv = term(p), term(p_inv)
    tau = minus(clock, t0)
    u2, u3, u4 = times(2, U), times(3, U), times(4, U)
    return seq(
        if_then(all_of(eq(tau, 0), eq(addr, 0)), Write(Const(INITIAL), 'Head_l')),
        If((
            (all_of(ge(tau, 0), lt(tau, U)), seq(RunTm(p, 'Tape', 'Head_l', 'Head_r'))),
            (eq(tau, U), seq(
                Check(_no_heads(p)),
                Write(Strip(Proj('Tape')), 'NTape'),
                Exchange('Head_l', 'Head_r'),
            )),
            (all_of(gt(tau, U), le(tau, u2)), seq(RunTm(p, 'Tape', 'Head_r', 'Head_l', inverse=True))),
        )),
        If((
            (all_of(ge(tau, u2), lt(tau, u3)), seq(RunTm(p_inv, 'NTape', 'Head_l', 'Head_r'))),
            (eq(tau, u3), seq(
                Check(_no_heads(p_inv)),
                Unwrite(Strip(Proj('Tape')), 'NTape'),
                Exchange('Head_l', 'Head_r'),
            )),
            (all_of(gt(tau, u3), le(tau, u4)), seq(RunTm(p_inv, 'Tape', 'Head_r', 'Head_l', inverse=True))),
        )),
        if_then(all_of(eq(tau, u4), eq(addr, 0)), Unwrite(Const(INITIAL), 'Head_l')),
    )


def shift_listing(nu: Sequence[int], lengths: Union[Sequence[int], Vector], S: ValueLike,
                  start: ValueLike = 0, addr: Valuation = ADDR, clock: Valuation = CLOCK) -> Seq:
    """
    Move the encoding of every moving field to Tape_l or Tape_r for S steps

    At the start the symbols of field i (separator included) are exchanged
    into the moving tape of direction nu_i; S steps later they sit one colony
    further and are exchanged back.
    """
    lengths = vector(lengths)
    rel = minus(clock, start)
    moves = []
    for i, direction in enumerate(nu):
        if direction == 0:
            continue
        region = all_of(ge(addr, Offset(lengths, Num(i))), lt(addr, Offset(lengths, Num(i + 1))))
        moves.append(if_then(region, Exchange('Tape', 'Tape_r' if direction > 0 else 'Tape_l')))
    items = [if_then(eq(rel, 0), Check(Empty(('Tape_l', 'Tape_r'))))]
    if moves:
        items.append(if_then(any_of(eq(rel, 0), eq(rel, S)), *moves))
    return seq(*items)


def unive_listing(nu: Sequence[int], lengths: Union[Sequence[int], Vector], S: ValueLike,
                  U: ValueLike, p: TermLike, p_inv: TermLike, t0: ValueLike = 0,
                  addr: Valuation = ADDR, clock: Valuation = CLOCK) -> Seq:
    """compute during relative clocks 0..4U, then shift starting at 4U."""
    start = plus(t0, times(4, U))
    return seq(
        compute_listing(U, p, p_inv, t0, addr, clock),
        shift_listing(nu, lengths, S, start, addr, clock),
    )


def chekka_listing(lengths: Union[Sequence[int], Vector], count: int,
                   tape: TermLike = Proj('Tape'), addr: Valuation = ADDR) -> Seq:
    """Each colony's tape stream has the layout of an encoding of 5^k' followed by 3s."""
    lengths = vector(lengths)
    tape = term(tape)
    items = [if_then(ge(addr, Offset(lengths, Num(count))), Check(TermCmp('=', tape, Const('3'))))]
    for i in range(count):
        start, end = Offset(lengths, Num(i)), Offset(lengths, Num(i + 1))
        items.append(If((
            (eq(addr, start), seq(Check(TermCmp('=', tape, Const('2'))))),
            (all_of(gt(addr, start), lt(addr, end)), seq(Check(TermIn(tape, ('0', '1'))))),
        )))
    return seq(*items)


def hier_listing(lengths: Union[Sequence[int], Vector], index: int, word: TermLike,
                 tape: TermLike = Proj('Tape'), addr: Valuation = ADDR) -> Seq:
    """The encoded field ``index`` starts with the doubled ``word``."""
    lengths = vector(lengths)
    word, tape = term(word), term(tape)
    start = Offset(lengths, Num(index))
    end = plus(start, Arith('*', Num(3), Length(word)))
    return seq(if_then(
        all_of(gt(addr, start), le(addr, end)),
        Check(TermCmp('=', tape, IndexedAt(ChiOf(word), minus(addr, start)))),
    ))


def start_checks(lengths: Union[Sequence[int], Vector], count: int, fields: Sequence[str] = AUX_FIELDS) -> Seq:
    return seq(Check(Empty(tuple(fields))), chekka_listing(lengths, count))


def toy_unive_listing(nu: Sequence[int], kprime: Sequence[int], S: int, T: int, U: int,
                      p: str, p_inv: str, t0: int = 0) -> Seq:
    """unive with the start-of-period checks and the coordinate update."""
    return seq(
        if_then(eq(minus(CLOCK, t0), 0), start_checks(kprime, len(kprime))),
        unive_listing(nu, kprime, S, U, p, p_inv, t0),
        coordi_listing(S, T),
    )


def _labels(fields) -> tuple:
    return tuple(label for label, _ in fields)


def _directions(fields) -> tuple:
    return tuple(direction for _, direction in fields)


def _index(fields, label: str) -> int:
    return _labels(fields).index(label)


def self_listing() -> Seq:
    """Self: every parameter is read from the letter, the simulated letter has the same layout."""
    own = FieldLengths(_labels(C_SELF))
    count = len(C_SELF)
    S, T, U = BinOf(Proj('MAddr')), BinOf(Proj('MClock')), BinOf(Proj('Alarm'))
    hiers = [hier_listing(own, _index(C_SELF, label), Proj(label))
             for label in ('MAddr', 'MClock', 'Alarm', 'Prog', 'RevProg')]
    return seq(
        if_then(eq(CLOCK, 0), start_checks(own, count), *hiers),
        unive_listing(_directions(C_SELF), own, S, U, PROG, REV_PROG),
        coordi_listing(S, T),
    )


def _level(fields) -> Valuation:
    if 'Level' in _labels(fields):
        return BinOf(Proj('Level'))
    return Length(Proj('MHist'))


def _son_father(fields, extra_hiers=()) -> Perm:
    """Start-of-period checks against the simulated level n + 1."""
    n = _level(fields)
    child = SeqVector('k', plus(n, 1))
    hiers = [hier_listing(child, _index(fields, label), Proj(label)) for label in ('Prog', 'RevProg')]
    hiers.extend(hier_listing(child, _index(fields, label), word) for label, word in extra_hiers)
    return if_then(eq(CLOCK, 0), start_checks(child, len(fields)), *hiers)


def hsim_listing(fields=C_HSIM) -> Seq:
    """Level n simulates level n + 1 with the level-dependent parameters S_n, T_n, U_n."""
    n = BinOf(Proj('Level'))
    S, T, U = SeqAt('S', n), SeqAt('T', n), SeqAt('U', n)
    return seq(
        _son_father(fields, [('Level', BinWord(plus(n, 1)))]),
        unive_listing(_directions(fields), SeqVector('k', plus(n, 1)), S, U, PROG, REV_PROG),
        coordi_listing(S, T),
    )


def intru_listing(name: str = 'alpha') -> Seq:
    """hsim plus an external permutation on the Other fields, chosen by the level."""
    return seq(
        Intruder(name, BinOf(Proj('Level')), ('OTape_l', 'OTape', 'OTape_r')),
        hsim_listing(C_INTRU),
    )


def syncomp_listing(p_prime: str) -> Seq:
    """The level is the length of the history word, checked against p' at every period start."""
    history = Proj('MHist')
    n = Length(history)
    S, T, U = SeqAt('S', n), SeqAt('T', n), SeqAt('U', n)
    return seq(
        Check(TermCmp('=', Proj('MHist'), Proj('MHist_r'))),
        if_then(eq(CLOCK, 0), Check(Halt(Const(p_prime), n, history))),
        _son_father(C_SYNCOMP, [('MHist', history)]),
        unive_listing(_directions(C_SYNCOMP), SeqVector('k', plus(n, 1)), S, U,
                      PROG, REV_PROG),
        coordi_listing(S, T),
    )


def reali_period(n: Valuation) -> Valuation:
    """T_n = S_n (D + W + 1) + 4 U_n + 1 for the directive digit in MShift."""
    digit = Proj('MShift')
    factor = plus(plus(Directive(digit, 'D'), Directive(digit, 'W')), 1)
    return plus(plus(Arith('*', SeqAt('S', n), factor), times(4, SeqAt('U', n))), 1)


def reali_listing(p_prime: str) -> Seq:
    """syncomp with a macro-shift of D colonies followed by a wait of W colonies."""
    history = Proj('MHist')
    n = Length(history)
    S, U = SeqAt('S', n), SeqAt('U', n)
    transport = Arith('*', Directive(Proj('MShift'), 'D'), S)
    return seq(
        Check(TermCmp('=', Proj('MShift'), Proj('MShift_r'))),
        Check(TermCmp('=', Proj('MHist'), Proj('MHist_r'))),
        if_then(eq(CLOCK, 0), Check(Halt(Const(p_prime), n, history))),
        _son_father(C_REALI, [('MHist', Concat((history, Proj('MShift'))))]),
        if_then(eq(CLOCK, 0), Exchange('Tape', 'Tape_r')),
        if_then(eq(CLOCK, transport), Exchange('Tape', 'Tape_r')),
        unive_listing(_directions(C_REALI), SeqVector('k', plus(n, 1)), S, U,
                      PROG, REV_PROG, t0=transport),
        coordi_listing(S, reali_period(n)),
    )
