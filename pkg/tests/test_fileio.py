from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stacktsp.core import Instance
from stacktsp.fileio import (ParseError, emit_instance, emit_solution, fmt_number, parse_instance,
                             parse_plan, parse_solution)
from stacktsp.generators import PROFILES, gen_metric_tight, gen_random
from stacktsp.pctsp import best_pair_given_plan

SMALL = """DTSPMS 1
# family = hand
2 2 1 min
0 1 3/2
1 0 2
3/2 2 0

0 1 1
1 0 1
1 1 0
"""


def test_parse_small_file():
    inst = parse_instance(SMALL)
    assert (inst.n, inst.k, inst.c, inst.goal) == (2, 2, 1, "min")
    assert inst.dP[0][2] == Fraction(3, 2)
    assert inst.meta == {"family": "hand"}


def test_emit_then_parse_is_identity():
    for profile in PROFILES:
        inst = gen_random(profile, 5, 2, seed=3)
        text = emit_instance(inst)
        assert emit_instance(parse_instance(text)) == text
        assert parse_instance(text) == inst
    inst, *_ = gen_metric_tight(Fraction(1, 2), 2, 3)
    assert parse_instance(emit_instance(inst)) == inst


@given(st.integers(1, 5), st.integers(1, 3),
       st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=7), min_size=72, max_size=72),
       st.sampled_from(["min", "max"]))
def test_round_trip_any_entries(n, k, vals, goal):
    size = n + 1
    it = iter(vals)
    dP = [[Fraction(0) if i == j else next(it) for j in range(size)] for i in range(size)]
    dD = [[Fraction(0) if i == j else next(it) for j in range(size)] for i in range(size)]
    inst = Instance(n, k, -(-n // k), dP, dD, goal)
    assert parse_instance(emit_instance(inst)) == inst


@pytest.mark.parametrize("text,line,col", [
    ("", 1, 1),
    ("DTSPMS 2\n", 1, 1),
    ("DTSPMS 1\n2 2 1 sideways\n", 2, 7),
    ("DTSPMS 1\n2 x 1 min\n", 2, 3),
    (SMALL.replace("3/2 2 0", "3/2 two 0"), 6, 5),
    (SMALL.replace("0 1 3/2\n", "0 1\n"), 4, 1),
    (SMALL.replace("\n\n", "\n"), 9, 1),
    (SMALL.replace("1 0 2", "1 0 2/0"), 5, 5),
])
def test_errors_carry_line_and_column(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"line {line}, column {col}:")


def test_solution_round_trip():
    inst = gen_random("general", 5, 2, seed=1)
    sol = best_pair_given_plan(inst, parse_plan("r1= 1 2 3 ; r2= 4 5"))
    text = emit_solution(sol)
    assert parse_solution(text) == sol
    assert emit_solution(parse_solution(text)) == text


def test_solution_errors():
    with pytest.raises(ParseError, match="missing field 'value'"):
        parse_solution("SOLUTION 1\npickup: 0 1\ndelivery: 0 1\nplan: r1= 1\n")
    with pytest.raises(ParseError, match="line 2, column 11"):
        parse_solution("SOLUTION 1\npickup: 0 a\ndelivery: 0 1\nplan: r1= 1\nvalue: 2\n")
    with pytest.raises(ParseError):
        parse_plan("r2= 1")


def test_fmt_number():
    assert fmt_number(Fraction(6, 4)) == "3/2"
    assert fmt_number(Fraction(-4, 2)) == "-2"
