"""Bounded enumeration oracles.

An oracle enumerates a finite set in stages: each number appears at most
once, at a definite stage, and membership is cumulative from that stage
on.  Scripted oracles state their entries directly; machine oracles
derive them by running toy register-machine programs under increasing
step budgets (program x enumerates x at stage s when s is the least
budget within which it halts).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ValidationError

# Register machine instructions over two registers r0, r1:
#   ("INC", r)        increment register r, fall through
#   ("DECJZ", r, l)   if register r is zero jump to l, else decrement and fall through
#   ("HALT",)         stop
# A program counter outside the program also stops the machine.
Instruction = tuple
Program = Sequence[Instruction]

INC = "INC"
DECJZ = "DECJZ"
HALT = "HALT"


@dataclass(frozen=True)
class EnumerationOracle:
    """Stage-indexed enumeration of a finite set of non-negative integers."""

    entries: Mapping[int, int]
    stage_bound: int

    def __post_init__(self):
        if self.stage_bound < 0:
            raise ValidationError("stage bound must be non-negative")
        for x, s in self.entries.items():
            if x < 0:
                raise ValidationError(f"enumerated value {x} must be non-negative")
            if not 0 <= s <= self.stage_bound:
                raise ValidationError(
                    f"stage {s} of value {x} outside 0..{self.stage_bound}"
                )


def _check_stage(oracle: EnumerationOracle, s: int) -> None:
    if not 0 <= s <= oracle.stage_bound:
        raise ValidationError(f"stage {s} outside 0..{oracle.stage_bound}")


def member_at(oracle: EnumerationOracle, x: int, t: int) -> bool:
    """Cumulative membership: enumerated at some stage <= t."""
    _check_stage(oracle, t)
    entry = oracle.entries.get(x)
    return entry is not None and entry <= t


def newly_at(oracle: EnumerationOracle, x: int, s: int) -> bool:
    """First appearance exactly at stage s."""
    _check_stage(oracle, s)
    return oracle.entries.get(x) == s


def _check_program(index: int, program: Program) -> None:
    for pc, ins in enumerate(program):
        if not ins:
            raise ValidationError(f"program {index}: empty instruction at {pc}")
        op = ins[0]
        if op == HALT:
            ok = len(ins) == 1
        elif op == INC:
            ok = len(ins) == 2 and ins[1] in (0, 1)
        elif op == DECJZ:
            ok = len(ins) == 3 and ins[1] in (0, 1) and isinstance(ins[2], int)
        else:
            ok = False
        if not ok:
            raise ValidationError(f"program {index}: bad instruction {ins!r} at {pc}")


def run_program(program: Program, max_steps: int) -> int | None:
    """Steps until the program halts, or None if it runs past max_steps.

    Every executed instruction counts as one step, including HALT, so a
    bare HALT program halts in one step and the empty program in zero.
    """
    pc = 0
    regs = [0, 0]
    steps = 0
    while True:
        if pc < 0 or pc >= len(program):
            return steps
        if steps >= max_steps:
            return None
        ins = program[pc]
        steps += 1
        op = ins[0]
        if op == HALT:
            return steps
        if op == INC:
            regs[ins[1]] += 1
            pc += 1
        else:  # DECJZ
            if regs[ins[1]] == 0:
                pc = ins[2]
            else:
                regs[ins[1]] -= 1
                pc += 1


def machine_enumeration(programs: Sequence[Program], stage_bound: int) -> EnumerationOracle:
    """Oracle enumerating each program index at its least halting budget.

    Programs that do not halt within stage_bound steps get no entry.
    """
    for i, program in enumerate(programs):
        _check_program(i, program)
    entries = {}
    for x, program in enumerate(programs):
        steps = run_program(program, stage_bound)
        if steps is not None:
            entries[x] = steps
    return EnumerationOracle(entries, stage_bound)
