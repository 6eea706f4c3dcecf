import math

import pytest

from sampling.roots import expand_bracket, safeguarded_newton


def _square_minus_two(x):
    return x * x - 2.0, 2.0 * x


def test_newton_finds_sqrt2():
    assert safeguarded_newton(_square_minus_two, 0.0, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_bad_start_falls_back_to_bisection():
    # x0 outside the bracket is ignored
    assert safeguarded_newton(_square_minus_two, 1.0, 2.0, x0=50.0) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_flat_derivative_still_converges():
    # f' vanishes at the root; Newton alone stalls
    def cubic(x):
        return x ** 3, 3.0 * x * x

    assert safeguarded_newton(cubic, -1.0, 2.0, tol=1e-10) == pytest.approx(0.0, abs=1e-6)


def test_not_bracketed():
    with pytest.raises(ValueError):
        safeguarded_newton(_square_minus_two, 2.0, 3.0)


def test_expand_bracket():
    lo, hi = expand_bracket(lambda x: (x - 10.0, 1.0), 0.0, 1.0)
    assert lo <= 10.0 <= hi
