import os
import subprocess
from fractions import Fraction

import pytest

import dichot


def test_root_of_a_line():
    r = dichot.run("root", fn="x - 1/3", eps="1/1000")
    assert r["outcome"] == "Decided"
    assert r["branch"] == "Root"
    assert abs(Fraction(r["value"]["z"]) - Fraction(1, 3)) < Fraction(1, 1000)


def test_jump_gives_evidence():
    r = dichot.run("root", fn="step(1/3; -1, 1)", eps="1/2", budget=40)
    assert r["branch"] == "Stuck"
    assert abs(Fraction(r["value"]["z"]) - Fraction(1, 3)) <= Fraction(1, 2**38)


def test_infimum_branches():
    assert dichot.run("inf", fn="(x - 1/2) * (x - 1/2) + 1/8")["branch"] == "InfPositive"
    assert dichot.run("inf", fn="x - 1/2")["outcome"] == "PreconditionFailed"


def test_enclosure_matches_interpreter():
    for x in [Fraction(0), Fraction(1, 3), Fraction(5, 7)]:
        lo, hi = dichot.enclose("x * x - abs(x - 1/2)", x, 40)
        v = dichot.interpret("x * x - abs(x - 1/2)", x)
        assert lo <= v <= hi
        assert hi - lo <= Fraction(1, 2**40)


def test_canonical_and_errors():
    assert dichot.canonical("1 + 2 * x") == "(1 + (2 * x))"
    assert not dichot.is_continuous("step(1/2; 0, 1)")
    with pytest.raises(ValueError):
        dichot.canonical("x +")
    with pytest.raises(KeyError):
        dichot.run("eval", colour="blue")


def test_unit_rationals():
    assert dichot.unit_rationals(5) == [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]


def test_cli_binary_agrees():
    exe = os.environ.get("DICHOT_BIN")
    if not exe:
        pytest.skip("DICHOT_BIN not set")
    out = subprocess.run([exe, "eval", "--fn", "x * x", "--at", "1/3", "--json"], capture_output=True, text=True)
    assert out.returncode == 0
    assert '"mid":"1/9"' in out.stdout
