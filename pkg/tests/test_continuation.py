"""Tests for path handling and certified branch tracking."""

import math

import pytest

from curvetrace.continuation import (
    Arc,
    ParamPath,
    Segment,
    fiber,
    trace_curve,
)
from curvetrace.darboux import PENTAGON_RAMIFICATION, closure_curve, pentagon_curve
from curvetrace.errors import (
    CriticalPointOnPath,
    DegenerateInput,
    LeadingCoefficientVanishes,
    NoProgress,
)
from curvetrace.polynomial import BivariatePolynomial as B, UnivariatePolynomial as U

SQRT_CURVE = B([U([0, -1]), U([0]), U([1])])
CIRCLE = B([U([-1, 0, 1]), U([0]), U([1])])


class TestParamPath:
    def test_segment_point(self):
        p = ParamPath.segment(1 + 0j, 3 + 2j)
        assert p.point(0.0) == 1 + 0j
        assert p.point(1.0) == 3 + 2j
        assert p.point(0.5) == 2 + 1j

    def test_full_circle_splits_into_two_windows(self):
        p = ParamPath.circle(0j, 1.0, 0.0, turns=1)
        assert p.next_window_end(0.0) == pytest.approx(0.5)
        assert p.next_window_end(0.5) == pytest.approx(1.0)
        assert abs(p.point(0.25) - 1j) < 1e-12

    def test_two_turns(self):
        p = ParamPath.circle(0j, 1.0, 0.0, turns=2)
        ends = [p.next_window_end(t) for t in (0.0, 0.3, 0.6, 0.8)]
        assert ends == pytest.approx([0.25, 0.5, 0.75, 1.0])

    def test_discontinuous_pieces_rejected(self):
        with pytest.raises(DegenerateInput):
            ParamPath([Segment(0j, 1 + 0j), Segment(2 + 0j, 3 + 0j)])

    def test_arc_orientation_validation(self):
        with pytest.raises(DegenerateInput):
            Arc(0j, 1.0, 0.0, math.pi, orientation=-1)

    def test_reversed_round_trip(self):
        p = ParamPath([Segment(0j, 1 + 0j),
                       Arc(1 + 1j, 1.0, -math.pi / 2, math.pi / 2, 1)])
        r = p.reversed()
        assert abs(r.point(0.0) - p.point(1.0)) < 1e-12
        assert abs(r.point(1.0) - p.point(0.0)) < 1e-12
        assert abs(r.point(0.3) - p.point(0.7)) < 1e-12

    def test_json_round_trip(self):
        p = ParamPath([Segment(0j, 1 + 0j),
                       Arc(1 + 1j, 1.0, -math.pi / 2, math.pi / 2, 1)])
        q = ParamPath.from_json_list(p.to_json_list())
        for t in (0.0, 0.21, 0.77, 1.0):
            assert abs(p.point(t) - q.point(t)) < 1e-12

    def test_json_errors_name_the_piece(self):
        with pytest.raises(ValueError, match=r"path\[1\]"):
            ParamPath.from_json_list(
                [{"type": "segment", "from": [0, 0], "to": [1, 0]},
                 {"type": "arc"}])


class TestFiber:
    def test_circle_fiber(self):
        rs = fiber(CIRCLE, 0j, 1e-12)
        assert sorted(rs.roots, key=lambda z: z.real) == [-1 + 0j, 1 + 0j]

    def test_branch_point_fiber(self):
        rs = fiber(SQRT_CURVE, 0j, 1e-12)
        assert rs.roots == (0j, 0j)

    def test_pentagon_ramification_fiber_is_double(self):
        f = closure_curve(pentagon_curve())
        rs = fiber(f, complex(PENTAGON_RAMIFICATION, 0.0), 1e-12)
        assert abs(rs.roots[0] - rs.roots[1]) < 1e-5

    def test_leading_coefficient_vanishes(self):
        # (x) * y^2 - 1: leading y-coefficient vanishes at x = 0
        f = B([U([-1]), U([0]), U([0, 1])])
        with pytest.raises(LeadingCoefficientVanishes):
            fiber(f, 0j, 1e-12)


class TestTraceCurve:
    def test_sqrt_monodromy(self):
        path = ParamPath.circle(0j, 1.0, 0.0, turns=1)
        log = trace_curve(SQRT_CURVE, path, 1 + 0j)
        assert log.outcome == "success"
        assert abs(log.final_y - (-1)) < 1e-9

    def test_monodromy_order_two(self):
        path = ParamPath.circle(0j, 1.0, 0.0, turns=2)
        log = trace_curve(SQRT_CURVE, path, 1 + 0j)
        assert abs(log.final_y - 1) < 1e-9

    def test_real_branch_segment(self):
        log = trace_curve(SQRT_CURVE, ParamPath.segment(1 + 0j, 4 + 0j),
                          1 + 0j)
        assert abs(log.final_y - 2) < 1e-10

    def test_newton_homotopy_endpoint(self):
        m = 10.0
        f = B([U([-1 - m, m]), U([0]), U([1])])
        log = trace_curve(f, ParamPath.segment(1 + 0j, 0j), 1 + 0j)
        assert abs(log.final_y - math.sqrt(1 + m)) < 1e-9

    def test_log_invariants(self):
        path = ParamPath.circle(0j, 1.0, 0.0, turns=1)
        log = trace_curve(SQRT_CURVE, path, 1 + 0j)
        times = [s.T for s in log.steps]
        assert times[0] == 0.0 and times[-1] == 1.0
        assert all(a < b for a, b in zip(times, times[1:]))
        for step in log.steps:
            assert abs(SQRT_CURVE(step.x, step.y)) < 1e-9
        assert log.steps[-1].report is None
        assert log.step_count == len(log.steps) - 1

    def test_every_step_respects_its_bound(self):
        path = ParamPath.circle(0j, 1.0, 0.0, turns=1)
        log = trace_curve(SQRT_CURVE, path, 1 + 0j)
        for prev, nxt in zip(log.steps, log.steps[1:]):
            assert abs(nxt.x - prev.x) < prev.report.delta
            assert abs(nxt.y - prev.y) < prev.report.epsilon

    def test_path_invariance(self):
        f = B([U([0, -1]), U([1]), U([1])])  # y^2 + y - x
        direct = ParamPath.segment(0j, 1 + 0j)
        detour = ParamPath([Segment(0j, 0.5j), Segment(0.5j, 1 + 0.5j),
                            Segment(1 + 0.5j, 1 + 0j)])
        y_direct = trace_curve(f, direct, 0j).final_y
        y_detour = trace_curve(f, detour, 0j).final_y
        assert abs(y_direct - y_detour) < 1e-8

    def test_reversibility(self):
        path = ParamPath([Segment(1 + 0j, 1 + 1j), Segment(1 + 1j, 4 + 1j)])
        fwd = trace_curve(SQRT_CURVE, path, 1 + 0j)
        back = trace_curve(SQRT_CURVE, path.reversed(), fwd.final_y)
        assert abs(back.final_y - 1) < 1e-8

    def test_branch_point_on_path(self):
        with pytest.raises(CriticalPointOnPath) as info:
            trace_curve(SQRT_CURVE, ParamPath.segment(1 + 0j, -1 + 0j),
                        1 + 0j)
        assert info.value.log.outcome == "failure"
        # the diagnosed flavor still counts as a failure to advance
        assert isinstance(info.value, NoProgress)

    def test_wrong_y0_rejected(self):
        with pytest.raises(DegenerateInput):
            trace_curve(SQRT_CURVE, ParamPath.segment(1 + 0j, 4 + 0j),
                        5 + 0j)

    def test_json_log_schema(self):
        log = trace_curve(SQRT_CURVE, ParamPath.segment(1 + 0j, 4 + 0j),
                          1 + 0j)
        rows = log.to_json_list()
        for row in rows:
            assert set(row) == {"T", "x", "y", "rho", "Y", "M", "epsilon",
                                "delta"}
        assert rows[-1]["rho"] is None
        assert rows[0]["rho"] > 0
