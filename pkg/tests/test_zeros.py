import gzip
import logging
import math
import os
import pathlib

import numpy as np
import pytest
from scipy.integrate import quad

import rankbound.zeros.verify as verify_module
from rankbound import (
    AGREEMENT_SLACK,
    EFBreakdown,
    KernelParams,
    NotAscending,
    ParseError,
    ZeroDensity,
    ZeroList,
    compare_methods,
    curve_from_ainvs,
    direct_zero_sum,
    fejer_kernel,
    kernel_tail,
    load_zeros,
    parse_zeros,
)

from .oracles import SAMPLE_CURVES

E11A1 = curve_from_ainvs(*SAMPLE_CURVES["11a1"])

ZEROS_11A1 = os.environ.get("RANKBOUND_ZEROS_11A1", pathlib.Path(__file__).parent / "data" / "zeros_11a1.txt.gz")


@pytest.fixture(scope="module")
def zeros_11a1():
    return load_zeros(ZEROS_11A1)


def test_parse_zeros():
    zeros = parse_zeros(["# from lcalc", "#r=2", "", "1.5", "  2.25  ", "# trailing", "3"])
    assert zeros.ordinates.tolist() == [1.5, 2.25, 3.0]
    assert zeros.central_multiplicity == 2
    assert zeros.height == 3.0
    assert len(zeros) == 3


def test_parse_zeros_multiplicity_spacing():
    assert parse_zeros(["# r = 3", "1.0"]).central_multiplicity == 3
    assert parse_zeros(["1.0"]).central_multiplicity == 0


@pytest.mark.parametrize(
    ["lines", "line"],
    [
        (["1.0", "abc"], 2),
        (["#r=x", "1.0"], 1),
        (["#r=-1"], 1),
        (["", "1.0", "-2.0"], 3),
        (["1.0", "nan"], 2),
        (["0"], 1),
    ],
)
def test_parse_zeros_errors(lines, line):
    with pytest.raises(ParseError) as e:
        parse_zeros(lines)
    assert e.value.line == line


def test_parse_zeros_not_ascending():
    with pytest.raises(NotAscending) as e:
        parse_zeros(["1.0", "2.0", "2.0"])
    assert e.value.line == 3
    assert isinstance(e.value, ValueError)


def test_load_zeros(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("#r=1\n6.36\n8.6\n10.04\n", encoding="utf-8")
    zeros = load_zeros(path)
    assert zeros.ordinates.tolist() == [6.36, 8.6, 10.04]
    assert zeros.central_multiplicity == 1


def test_load_zeros_empty(tmp_path):
    path = tmp_path / "zeros.txt"
    path.write_text("", encoding="utf-8")
    zeros = load_zeros(path)
    assert len(zeros) == 0
    assert zeros.height == 0.0


def test_load_zeros_gzip(tmp_path):
    path = tmp_path / "zeros.txt.gz"
    with gzip.open(path, "wt", encoding="utf-8") as f:
        f.write("#r=0\n6.36\n8.6\n")
    assert load_zeros(path).ordinates.tolist() == [6.36, 8.6]
    assert load_zeros(str(path)).central_multiplicity == 0


@pytest.mark.parametrize(
    ["ordinates", "multiplicity"],
    [
        ([-1.0, 2.0], 0),
        ([2.0, 1.0], 0),
        ([[1.0, 2.0]], 0),
        ([1.0], -1),
    ],
)
def test_zero_list_validation(ordinates, multiplicity):
    with pytest.raises(ValueError):
        ZeroList(np.array(ordinates), multiplicity)


def test_zero_list_head():
    zeros = ZeroList(np.array([1.0, 2.0, 3.0]), 1)
    head = zeros.head(2)
    assert head.ordinates.tolist() == [1.0, 2.0]
    assert head.central_multiplicity == 1
    assert head.height == 2.0


def test_direct_sum_at_kernel_zeros():
    value, _ = direct_zero_sum(ZeroList(np.array([1.0, 2.0, 3.0]), 2), KernelParams(1.0))
    assert value == pytest.approx(2.0, abs=1e-25)


def test_direct_sum_counts_conjugates():
    value, _ = direct_zero_sum(ZeroList(np.array([0.5]), 0), KernelParams(1.0))
    assert value == pytest.approx(2 * 4 / math.pi ** 2)


def test_direct_sum_grows_with_zeros():
    params = KernelParams(1.5)
    ordinates = np.array([0.3, 1.1, 2.9, 4.2, 7.7])
    values = [direct_zero_sum(ZeroList(ordinates[:n]), params)[0] for n in range(len(ordinates) + 1)]
    assert values[0] == 0.0
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_direct_sum_shrinks_with_delta():
    zeros = ZeroList(np.array([0.2, 0.3]))
    assert direct_zero_sum(zeros, KernelParams(1.0))[0] > direct_zero_sum(zeros, KernelParams(2.0))[0]


def test_direct_sum_sensitivity():
    params = KernelParams(2.0)
    base = direct_zero_sum(ZeroList(np.array([0.1, 5.0])), params)[0]
    moved = direct_zero_sum(ZeroList(np.array([0.1 + 1e-6, 5.0])), params)[0]
    assert 0 < base - moved < 1e-5


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.5])
@pytest.mark.parametrize(["lo", "hi"], [(0.0, 3.0), (3.0, 10.0), (10.0, 40.0)])
def test_kernel_tail_against_quadrature(delta, lo, hi):
    params = KernelParams(delta)
    numeric, _ = quad(lambda t_: fejer_kernel(t_, params), lo, hi, limit=500, epsabs=1e-13)
    assert kernel_tail(lo, params) - kernel_tail(hi, params) == pytest.approx(numeric, abs=1e-10)


def test_kernel_tail_limits():
    params = KernelParams(1.0)
    assert kernel_tail(0.0, params) == pytest.approx(0.5)
    assert kernel_tail(-3.0, params) == 0.5
    assert kernel_tail(1e-9, params) == pytest.approx(0.5, abs=1e-8)
    # sin^2 averages 1/2 far out
    assert kernel_tail(1000.0, params) == pytest.approx(1 / (2 * math.pi ** 2 * 1000.0), rel=1e-3)


@pytest.mark.parametrize(["lo", "hi"], [(20.0, 200.0), (100.0, 1000.0)])
def test_log_tail_against_quadrature(lo, hi):
    params = KernelParams(1.0)
    numeric, _ = quad(lambda t_: math.log(t_) * fejer_kernel(t_, params), lo, hi, limit=2000, epsabs=1e-12)
    difference = verify_module._log_tail(lo, params) - verify_module._log_tail(hi, params)
    assert difference == pytest.approx(numeric, abs=1e-6)


def test_tail_densities():
    params = KernelParams(1.0)
    zeros = ZeroList(np.array([2.0, 5.0, 10.0]))
    log_conductor = math.log(11)

    _, flat = direct_zero_sum(zeros, params)
    assert flat == pytest.approx(2 * kernel_tail(10.0, params))

    _, flat = direct_zero_sum(zeros, params, log_conductor, ZeroDensity.Flat)
    assert flat == pytest.approx(2 * log_conductor / (2 * math.pi) * kernel_tail(10.0, params))

    _, height = direct_zero_sum(zeros, params, log_conductor, "height")
    assert height > 0
    _, taller = direct_zero_sum(ZeroList(np.array([2.0, 5.0, 10.0, 50.0])), params, log_conductor, "height")
    assert taller < height


def test_height_density_needs_conductor():
    with pytest.raises(ValueError):
        direct_zero_sum(ZeroList(np.array([2.0])), KernelParams(1.0), density=ZeroDensity.Height)


def test_height_density_below_one():
    _, tail = direct_zero_sum(ZeroList(np.array([0.5])), KernelParams(1.0), 2.0, ZeroDensity.Height)
    assert tail == math.inf


def _fake_bound(total):
    def zero_sum_bound(curve, log_conductor, params, parity=None, settings=None, stream=None):
        return EFBreakdown(conductor_term=total, log2pi_term=0.0, gamma_term=0.0, prime_term=0.0), None

    return zero_sum_bound


def test_compare_methods_pass(monkeypatch, caplog):
    zeros = ZeroList(np.array([0.4, 3.3, 12.0, 40.0]))
    params = KernelParams(1.0)
    direct, tail = direct_zero_sum(zeros, params, math.log(11), ZeroDensity.Flat)
    monkeypatch.setattr(verify_module, "zero_sum_bound", _fake_bound(direct + tail / 2))

    with caplog.at_level(logging.INFO, logger="rankbound"):
        report = compare_methods(E11A1, math.log(11), zeros, params)

    assert report.passed
    assert report.density is ZeroDensity.Flat
    assert report.zeros == 4
    assert report.difference == pytest.approx(tail / 2)
    assert report.tail_bound == tail
    assert "PASS" in str(report) and "heuristic" in str(report)
    assert not [record for record in caplog.records if record.levelno >= logging.WARNING]


def test_compare_methods_fail(monkeypatch, caplog):
    zeros = ZeroList(np.array([0.4, 3.3, 12.0, 40.0]))
    params = KernelParams(1.0)
    direct, tail = direct_zero_sum(zeros, params, math.log(11), ZeroDensity.Height)
    monkeypatch.setattr(verify_module, "zero_sum_bound", _fake_bound(direct + tail + 10 * AGREEMENT_SLACK))

    with caplog.at_level(logging.INFO, logger="rankbound"):
        report = compare_methods(E11A1, math.log(11), zeros, params, density=ZeroDensity.Height)

    assert not report.passed
    assert report.density is ZeroDensity.Height
    assert "FAIL" in str(report)
    assert any(record.levelno == logging.WARNING for record in caplog.records)


def test_11a1_zeros(zeros_11a1):
    assert len(zeros_11a1) >= 100_000
    assert zeros_11a1.central_multiplicity == 0
    assert zeros_11a1.ordinates[:3] == pytest.approx([6.3626138947, 8.6035396193, 10.0355090972], abs=1e-9)


@pytest.mark.parametrize("delta", [0.5, 1.0, 1.5])
def test_11a1_against_zeros(zeros_11a1, delta):
    report = compare_methods(E11A1, math.log(11), zeros_11a1, KernelParams(delta), density=ZeroDensity.Height)
    assert report.passed, str(report)
    assert abs(report.difference) <= report.tail_bound + 1e-6


@pytest.mark.parametrize(["delta", "passed"], [(0.5, False), (1.5, True)])
def test_11a1_flat_density_undercounts(zeros_11a1, delta, passed):
    # log N / 2 pi zeros per unit height misses the log t growth past the last ordinate
    flat = compare_methods(E11A1, math.log(11), zeros_11a1, KernelParams(delta))
    height = compare_methods(E11A1, math.log(11), zeros_11a1, KernelParams(delta), density=ZeroDensity.Height)
    assert flat.tail_bound < height.tail_bound / 5
    assert flat.passed == passed


def test_11a1_moved_zero_fails(zeros_11a1, caplog):
    ordinates = zeros_11a1.ordinates.copy()
    ordinates[0] += 0.1
    moved = ZeroList(ordinates, zeros_11a1.central_multiplicity)

    with caplog.at_level(logging.INFO, logger="rankbound"):
        report = compare_methods(E11A1, math.log(11), moved, KernelParams(1.0), density=ZeroDensity.Height)

    assert not report.passed
    assert abs(report.difference) > 10 * (report.tail_bound + AGREEMENT_SLACK)
    assert any(record.levelno == logging.WARNING for record in caplog.records)


def test_11a1_few_zeros_report_large_tail(zeros_11a1):
    params = KernelParams(2.0)
    _, full_tail = direct_zero_sum(zeros_11a1, params, math.log(11))
    few = compare_methods(E11A1, math.log(11), zeros_11a1.head(100), params)
    assert few.zeros == 100
    assert few.tail_bound > 100 * full_tail
    assert "heuristic, flat density" in str(few)


def test_11a1_zero_count_matters(zeros_11a1):
    params = KernelParams(1.0)
    full, _ = direct_zero_sum(zeros_11a1, params)
    head, _ = direct_zero_sum(zeros_11a1.head(10), params)
    assert 0 < head < full
