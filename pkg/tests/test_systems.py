"""Tests for chain continuation and the eliminant comparison."""

import numpy as np
import pytest

from curvetrace.errors import DegenerateInput, NoProgress
from curvetrace.fixtures import (
    example2_expected_endpoints,
    example2_system,
    example2_variant_system,
    linear_control_system,
)
from curvetrace.polynomial import BivariatePolynomial as B, UnivariatePolynomial as U
from curvetrace.systems import (
    ChainSystem,
    SystemOptions,
    compare_with_resultant,
    eliminate_middle,
    trace_system,
)


def test_single_equation_chain_degenerates_to_curve_trace():
    p1 = B([U([0, -1]), U([0]), U([1])])  # x1^2 - x0
    system = ChainSystem(equations=(p1,), initial=(1 + 0j, 1 + 0j),
                         target=4 + 0j)
    log = trace_system(system)
    assert log.outcome == "success"
    assert abs(log.final_positions[1] - 2) < 1e-9


def test_example2_endpoints():
    log = trace_system(example2_system())
    x1_expected, x2_expected = example2_expected_endpoints()
    assert abs(log.final_positions[1] - x1_expected) < 1e-9
    assert abs(log.final_positions[2] - x2_expected) < 1e-9
    assert log.halvings <= 60


def test_round_invariants():
    system = example2_system()
    log = trace_system(system)
    for rnd in log.rounds:
        # all residuals vanish at the accepted positions
        for k, eq in enumerate(system.equations, start=1):
            assert abs(eq(rnd.positions[k - 1], rnd.positions[k])) < 1e-8
        # the acceptance test of every inner pass, recomputed from the log
        for k in range(1, len(rnd.reports) + 1):
            assert rnd.reports[k - 1].delta >= rnd.epsilon_primes[k - 1]


def test_epsilon_pad_does_not_change_endpoints():
    base = trace_system(example2_system(), SystemOptions())
    padded = trace_system(example2_system(),
                          SystemOptions(epsilon_pad=2e-9))
    assert abs(base.final_positions[2] - padded.final_positions[2]) < 1e-9


def test_alt_range_estimate_same_endpoint_fewer_rounds():
    base = trace_system(example2_system(), SystemOptions())
    alt = trace_system(example2_system(),
                       SystemOptions(use_alt_range_estimate=True))
    assert abs(base.final_positions[2] - alt.final_positions[2]) < 1e-9
    assert alt.step_count <= base.step_count


def test_eliminant_matches_published_closed_form():
    system = example2_system()
    q = eliminate_middle(system.equations[0], system.equations[1])
    rng = np.random.default_rng(41)
    for _ in range(10):
        x0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        x2 = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        expected = (16 - 16 * x0 + 4 * x0 ** 2 + 9 * x2 ** 3
                    + 4 * x0 ** 2 * x2 ** 3 + x2 ** 6)
        assert q(x0, x2) == pytest.approx(expected, rel=1e-8, abs=1e-8)


def test_system_and_eliminant_agree_on_endpoint():
    report = compare_with_resultant(example2_system())
    assert not report.resultant_nonterminating
    assert abs(report.system_endpoint - report.resultant_endpoint) < 1e-6


def test_comparison_ordering():
    # run both tracers with a generous analyticity radius; the eliminant's
    # artificial critical point at x0 = -1/2 still costs it extra steps
    opts = SystemOptions(rho_fraction=0.85)
    report = compare_with_resultant(example2_system(), opts)
    assert not report.resultant_nonterminating
    assert report.resultant_steps > report.system_steps


def test_variant_resultant_stalls_but_system_passes():
    report = compare_with_resultant(example2_variant_system())
    assert report.resultant_nonterminating
    assert report.resultant_steps is None
    assert abs(report.system_endpoint.imag) < 1e-9


def test_variant_resultant_trace_raises_no_progress():
    from curvetrace.continuation import ParamPath, trace_curve
    system = example2_variant_system()
    q = eliminate_middle(system.equations[0], system.equations[1])
    with pytest.raises(NoProgress):
        trace_curve(q, ParamPath.segment(system.initial[0], system.target),
                    system.initial[2])


def test_linear_control_single_step_both_ways():
    report = compare_with_resultant(linear_control_system())
    assert report.system_steps == 1
    assert report.resultant_steps == 1


def test_initial_residual_validation():
    p1 = B([U([0, -1]), U([0]), U([1])])
    with pytest.raises(DegenerateInput):
        ChainSystem(equations=(p1,), initial=(1 + 0j, 1.5 + 0j),
                    target=4 + 0j)


def test_json_round_trip():
    system = example2_system()
    data = system.to_json_dict()
    back = ChainSystem.from_json_dict(data)
    assert back.n == system.n
    assert back.target == system.target
    assert max(abs(a - b) for a, b in
               zip(back.initial, system.initial)) == 0.0


def test_json_errors_name_the_field():
    with pytest.raises(ValueError, match="equations"):
        ChainSystem.from_json_dict({"initial": [], "target": [0, 0]})


def test_log_json_schema():
    log = trace_system(example2_system())
    rows = log.to_json_list()
    assert {"T", "positions", "epsilon_primes", "reports"} == set(rows[0])
    assert len(rows[0]["positions"]) == 3
    assert len(rows[0]["reports"]) == 2
