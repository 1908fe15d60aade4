import math
import warnings

import pytest
from hypothesis import given, strategies as st

from autoseq import complexity as C
from autoseq import zoo


def factors(w, n):
    return len({tuple(w[i:i + n]) for i in range(len(w) - n + 1)})


@given(st.text(alphabet="ab", min_size=1, max_size=60), st.integers(1, 8))
def test_count_matches_set(w, n):
    assert C.naive_count(w, n) == factors(w, n)
    codes, _ = C._codes(w)
    assert C.count_factors(codes, n) == factors(w, n)


def test_paperfolding_4n():
    p = C.profile(zoo.get("paperfolding"), 32, 2 ** 16)
    assert all(p.p(n) == 4 * n for n in range(7, 33))
    assert p.saturated


def test_rudin_shapiro_8n_minus_8():
    p = C.profile(zoo.get("rudin-shapiro"), 32, 2 ** 16)
    assert all(p.p(n) == 8 * n - 8 for n in range(8, 33))


def test_periodic():
    w = "01" * 200
    p = C.profile(w, 20, 400, check_stability=False)
    assert set(p.values) == {2}
    cls, n = C.morse_hedlund_check(C.profile("011" * 200, 10, 600, check_stability=False))
    assert cls == "ultimately-periodic-evidence" and n is not None


def test_sturmian():
    phi = (1 + math.sqrt(5)) / 2
    a = 1 / phi ** 2
    assert "".join(C.sturmian(a, a, "floor", 13)) == "0100101001001"
    h = zoo.get("sturmian")
    p = C.profile(h, 20, 4096)
    assert p.values == [n + 1 for n in range(1, 21)]
    assert C.morse_hedlund_check(p)[0] == "aperiodic-evidence"


def test_rational_slope_warns_and_is_bounded():
    with pytest.warns(UserWarning):
        w = C.sturmian(0.5, 0.0, "floor", 400)
    assert max(factors(w, n) for n in range(1, 20)) <= 2


def test_entropy():
    tm = C.profile(zoo.get("thue-morse"), 32, 4096)
    assert C.entropy_estimate(tm)[0] < 0.25
    assert C.morse_hedlund_check(tm)[0] == "aperiodic-evidence"
    # de Bruijn style word: every factor of length <= 12 present
    full = "".join(format(i, "012b") for i in range(2 ** 12))
    p = C.profile(full, 12, len(full), check_stability=False)
    assert p.values[-1] == 2 ** 12
    assert abs(C.entropy_estimate(p)[0] - 1.0) < 1e-12
    pf = C.profile(zoo.get("paperfolding"), 32, 4096)
    assert C.entropy_estimate(pf)[0] <= math.log(4 * 32) / (32 * math.log(2)) + 1e-12


def test_prefix_too_short():
    from autoseq.words import DomainError
    with pytest.raises(DomainError):
        C.profile(zoo.get("thue-morse"), 64, 100)


def test_csv():
    p = C.profile(zoo.get("thue-morse"), 4, 64)
    assert p.to_csv().splitlines()[:3] == ["n,p,diff", "1,2,2", "2,4,2"]
