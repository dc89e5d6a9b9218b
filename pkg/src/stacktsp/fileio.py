"""Plain-text instance and solution files.

Instance::

    DTSPMS 1
    n k c goal
    <n+1 rows of dP>

    <n+1 rows of dD>

Entries are integers or p/q rationals.  Lines starting with ``#`` are
comments; comments of the form ``# key = value`` are kept as metadata and
written back after the matrices, so emit(parse(text)) == text for any
file produced by :func:`emit_instance`.

Solution::

    SOLUTION 1
    pickup: 0 ...
    delivery: 0 ...
    plan: r1= ... ; r2= ...
    value: p/q
"""
from __future__ import annotations

import re
from fractions import Fraction

from .core import GOALS, Instance, LoadingPlan, Solution

INSTANCE_MAGIC = "DTSPMS 1"
SOLUTION_MAGIC = "SOLUTION 1"
_NUMBER = re.compile(r"^-?\d+(/\d+)?$")
_META = re.compile(r"^#\s*([A-Za-z_][\w-]*)\s*=\s*(.*?)\s*$")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def fmt_number(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _tokens(line: str):
    """(column, token) pairs, columns 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _number(tok: str, line: int, col: int) -> Fraction:
    if not _NUMBER.match(tok):
        raise ParseError(f"expected an integer or p/q, got {tok!r}", line, col)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {tok!r}", line, col) from None


def parse_instance(text: str) -> Instance:
    meta: dict = {}
    body = []   # (line number, stripped text); blank lines kept as ""
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if line.lstrip().startswith("#"):
            m = _META.match(line.strip())
            if m:
                meta[m.group(1)] = m.group(2)
            continue
        body.append((num, line))
    # drop leading and trailing blanks
    while body and not body[0][1].strip():
        body.pop(0)
    while body and not body[-1][1].strip():
        body.pop()
    if not body:
        raise ParseError("empty instance file", 1)
    num, first = body[0]
    if first.strip() != INSTANCE_MAGIC:
        raise ParseError(f"expected header {INSTANCE_MAGIC!r}", num)
    if len(body) < 2:
        raise ParseError("missing 'n k c goal' line", num + 1)
    num, head = body[1]
    toks = _tokens(head)
    if len(toks) != 4:
        raise ParseError("expected 'n k c goal'", num)
    ints = []
    for col, tok in toks[:3]:
        if not tok.isdigit():
            raise ParseError(f"expected a positive integer, got {tok!r}", num, col)
        ints.append(int(tok))
    n, k, c = ints
    col, goal = toks[3]
    if goal not in GOALS:
        raise ParseError(f"goal must be min or max, got {goal!r}", num, col)
    size = n + 1
    rest = body[2:]
    blocks: list[list[tuple[int, str]]] = [[]]
    for num, line in rest:
        if not line.strip():
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((num, line))
    if len(blocks) != 2:
        where = rest[-1][0] if rest else body[1][0]
        raise ParseError(f"expected two matrices separated by a blank line, found {len(blocks)} block(s)", where)
    mats = []
    for name, block in zip(("dP", "dD"), blocks):
        if len(block) != size:
            raise ParseError(f"{name} has {len(block)} rows, expected {size}", block[0][0] if block else num)
        rows = []
        for r, (num, line) in enumerate(block):
            toks = _tokens(line)
            if len(toks) != size:
                raise ParseError(f"{name} row {r} has {len(toks)} entries, expected {size}", num)
            rows.append([_number(tok, num, col) for col, tok in toks])
        mats.append(rows)
    try:
        return Instance(n, k, c, mats[0], mats[1], goal, meta)
    except ValueError as exc:
        raise ParseError(str(exc), body[1][0]) from None


def emit_instance(inst: Instance) -> str:
    lines = [INSTANCE_MAGIC, f"{inst.n} {inst.k} {inst.c} {inst.goal}"]
    for i, m in enumerate((inst.dP, inst.dD)):
        if i:
            lines.append("")
        lines += [" ".join(fmt_number(x) for x in row) for row in m]
    for key, value in inst.meta.items():
        lines.append(f"# {key} = {value}")
    return "\n".join(lines) + "\n"


def _tour(text: str, line: int, col: int) -> tuple[int, ...]:
    out = []
    for c, tok in _tokens(text):
        if not tok.isdigit():
            raise ParseError(f"expected a vertex number, got {tok!r}", line, col + c - 1)
        out.append(int(tok))
    return tuple(out)


def parse_plan(text: str, line: int = 1, col: int = 1) -> LoadingPlan:
    rows = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        m = re.match(r"^r(\d+)=(.*)$", part)
        if not m or int(m.group(1)) != len(rows) + 1:
            raise ParseError(f"expected 'r{len(rows) + 1}= items', got {part!r}", line, col)
        rows.append(_tour(m.group(2), line, col))
    return LoadingPlan(tuple(rows))


def parse_solution(text: str) -> Solution:
    fields: dict[str, tuple[int, int, str]] = {}
    seen_magic = False
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_magic:
            if line != SOLUTION_MAGIC:
                raise ParseError(f"expected header {SOLUTION_MAGIC!r}", num)
            seen_magic = True
            continue
        key, sep, value = line.partition(":")
        if not sep or key not in ("pickup", "delivery", "plan", "value"):
            raise ParseError(f"expected 'pickup:', 'delivery:', 'plan:' or 'value:', got {line!r}", num)
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", num)
        fields[key] = (num, raw.index(":") + 2, value)
    if not seen_magic:
        raise ParseError("empty solution file", 1)
    for key in ("pickup", "delivery", "plan", "value"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", len(text.splitlines()) + 1)
    pickup = _tour(fields["pickup"][2], *fields["pickup"][:2])
    delivery = _tour(fields["delivery"][2], *fields["delivery"][:2])
    plan = parse_plan(fields["plan"][2], *fields["plan"][:2])
    num, col, value = fields["value"]
    return Solution(plan, pickup, delivery, _number(value.strip(), num, col))


def emit_solution(sol: Solution) -> str:
    return "\n".join([
        SOLUTION_MAGIC,
        "pickup: " + " ".join(map(str, sol.pickup)),
        "delivery: " + " ".join(map(str, sol.delivery)),
        f"plan: {sol.plan}",
        f"value: {fmt_number(sol.value)}",
    ]) + "\n"


def read_instance(path: str) -> Instance:
    with open(path) as fh:
        return parse_instance(fh.read())


def write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)
