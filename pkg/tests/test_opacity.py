import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from autoseq import opacity as O
from autoseq.words import DomainError


def test_identity_run():
    assert O.run(O.identity(), O.UPSignal.parse("+--++-"), 6) == list("ABBAAB")


def test_constant_and_tm_runs():
    assert set(O.run(O.constant(), O.UPSignal.parse("(+-)"), 20)) == {"A"}
    assert set(O.run(O.thue_morse(), O.UPSignal.parse("(+)"), 20)) == {"A"}


def test_distortions():
    for spec in ("(+-)", "+(-)", "--(+--)"):
        assert O.distortion(O.identity(), O.UPSignal.parse(spec)) == 0
    assert O.distortion(O.constant(), O.UPSignal.parse("(+-)")) == 1
    assert O.distortion(O.thue_morse(), O.UPSignal.parse("(+-)")) == 1


def test_distortion_oracle_tm():
    # period (+-) from A: states A B A B ..., relabel a on A, b on B:
    # ||delta - eps||^2 = ((a-1)^2 + (b+1)^2)/2 ... minimized over a, b
    d2 = O.distortion_squared(O.thue_morse(), O.UPSignal.parse("(+-)"))
    assert d2 == 1


def test_formula_values():
    assert O.opacity_formula(O.identity()) == 0
    assert O.opacity_formula(O.constant()) == 1
    assert O.opacity_formula(O.thue_morse()) == 1
    assert O.opacity_squared(O.worked_example()) == Fraction(1, 2)
    assert abs(O.opacity_formula(O.worked_example()) - 1 / math.sqrt(2)) < 1e-15


def test_worked_walk():
    # B -> C -> B -> C -> B: length 4, one strong state
    aut = O.worked_example()
    assert O.shortest_covering_walk(aut, {"C"}) == 4


def test_lower_estimates():
    assert O.opacity_lower_estimate(O.constant(), 4).value == 1
    assert O.opacity_lower_estimate(O.identity(), 6).value == 0
    prev = 0
    for p in (2, 4, 6, 8):
        v = O.opacity_lower_estimate(O.worked_example(), p).value
        assert prev <= v <= 1 / math.sqrt(2) + 1e-12
        prev = v
    assert abs(prev - 1 / math.sqrt(2)) < 1e-12


def test_hypotheses_checked():
    broken = O.SignedAutomaton(["A", "B"], "A", {"A": "B", "B": "B"}, {"A": "B", "B": "B"})
    with pytest.raises(DomainError, match="hypotheses"):
        O.opacity_squared(broken)


def test_json_round_trip(tmp_path):
    a = O.worked_example()
    f = tmp_path / "w.json"
    f.write_text(a.dumps())
    b = O.SignedAutomaton.load(f)
    assert (b.plus, b.minus, b.initial) == (a.plus, a.minus, a.initial)
    # digit 1 is +, digit 0 is -
    assert a.to_json()["transitions"]["A"] == [a.minus["A"], a.plus["A"]]


def _random_valid(rng, n):
    names = [chr(65 + i) for i in range(n)]
    while True:
        plus = {s: rng.choice(names) for s in names}
        minus = {s: rng.choice(names) for s in names}
        a = O.SignedAutomaton(names, "A", plus, minus)
        if a.is_strongly_connected() and (a.is_homogeneous() or a.is_extended_class()):
            return a


def test_subset_milp_walks_agree_random():
    rng = random.Random(11)
    for _ in range(25):
        a = _random_valid(rng, rng.randint(2, 6))
        s = O.opacity_squared(a, "subset")
        assert s == O.opacity_squared(a, "milp")
        assert s == O.walk_enumeration(a, 14)


@given(st.sampled_from(list(O.BUILTINS)), st.text(alphabet="+-", min_size=1, max_size=5))
def test_estimate_never_exceeds_formula(name, period):
    a = O.BUILTINS[name]()
    d2 = O.distortion_squared(a, O.UPSignal("", period))
    assert d2 <= O.opacity_squared(a)
