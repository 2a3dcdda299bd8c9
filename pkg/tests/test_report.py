import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skirental import UNBOUNDED
from skirental.errors import DomainError
from skirental.report import (
    ROBUSTNESS_HEADER,
    SIMULATION_HEADER,
    SWEEP_HEADER,
    RobustnessRow,
    SweepRow,
    alpha_grid,
    emit_robustness,
    emit_sweep,
    parse_csv,
    parse_robustness_csv,
    parse_sweep_csv,
    records_to_csv,
    records_to_json,
    simulation_record,
)
from skirental.simulator import TrialConfig, run
from skirental.solver import NO_INFORMATION_ALPHA, NO_INFORMATION_CR, optimal_cr


def test_grid():
    assert alpha_grid(0, 1, 0.25) == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert len(alpha_grid(0, 1, 0.001)) == 1001
    assert 0.15 in alpha_grid(0, 1, 0.001)
    with pytest.raises(DomainError):
        alpha_grid(0.5, 0.5, 0.1)
    with pytest.raises(DomainError):
        alpha_grid(0, 1, 0)


@pytest.fixture(scope="module")
def rows():
    return emit_sweep(0.0, 1.0, 0.001, 10.0)


class TestSweep:
    def test_increasing(self, rows):
        alphas = [r.alpha for r in rows]
        assert alphas == sorted(set(alphas))

    def test_maximum_near_no_information_point(self, rows):
        best = max(rows, key=lambda r: r.optimal_cr)
        assert abs(best.alpha - NO_INFORMATION_ALPHA) <= 0.001
        assert best.optimal_cr == pytest.approx(NO_INFORMATION_CR, abs=1e-6)

    def test_grid_containing_the_exact_point(self):
        rows = emit_sweep(NO_INFORMATION_ALPHA - 0.1, NO_INFORMATION_ALPHA + 0.1, 0.1)
        assert max(rows, key=lambda r: r.optimal_cr).alpha == pytest.approx(NO_INFORMATION_ALPHA)

    def test_boundaries(self, rows):
        first, last = rows[0], rows[-1]
        assert (first.alpha, first.z_star, first.optimal_cr, first.delta) == (0.0, 0.0, 1.0, UNBOUNDED)
        assert last.z_star is UNBOUNDED and last.delta is UNBOUNDED

    def test_cutoff_days(self, rows):
        row = next(r for r in rows if r.alpha == 0.15)
        assert row.cutoff_days == pytest.approx(5.41, abs=0.005)


class TestRobustness:
    def test_agnostic_point(self):
        rows = emit_robustness(NO_INFORMATION_ALPHA, 1.0, 1.0)
        assert rows[0].cr_best == pytest.approx(NO_INFORMATION_CR, abs=1e-9)
        assert rows[0].cr_worst == pytest.approx(NO_INFORMATION_CR, abs=1e-9)

    def test_worst_case(self):
        rows = emit_robustness(0.0, 1.0, 0.05)
        row = next(r for r in rows if r.alpha_hat == 0.15)
        assert row.cr_worst == pytest.approx(2.3944711464269392, abs=1e-9)
        assert row.cr_best == optimal_cr(0.15)
        assert rows[0].cr_worst is UNBOUNDED and rows[-1].cr_worst is UNBOUNDED
        for r in rows[1:-1]:
            assert r.cr_best <= r.cr_worst


finite = st.floats(allow_nan=False, allow_infinity=False)
extended = st.one_of(finite, st.just(UNBOUNDED))


class TestSerialization:
    @given(st.lists(st.builds(SweepRow, finite, extended, extended, finite, extended), max_size=10))
    def test_sweep_csv_round_trip(self, rows):
        assert parse_sweep_csv(records_to_csv(rows, SWEEP_HEADER)) == rows

    @given(st.lists(st.builds(RobustnessRow, finite, finite, extended), max_size=10))
    def test_robustness_csv_round_trip(self, rows):
        assert parse_robustness_csv(records_to_csv(rows, ROBUSTNESS_HEADER)) == rows

    def test_headers(self):
        rows = emit_sweep(0.0, 1.0, 0.5)
        text = records_to_csv(rows, SWEEP_HEADER)
        assert text.splitlines()[0] == "alpha,z_star,cutoff_days,optimal_cr,delta"
        assert text.endswith("\n") and "\r" not in text
        assert text.splitlines()[-1] == "1.0,inf,inf,1.0,inf"
        assert records_to_csv([], ROBUSTNESS_HEADER) == "alpha_hat,cr_best,cr_worst\n"

    def test_json_tokens_and_order(self):
        rows = emit_sweep(0.0, 1.0, 0.5)
        data = json.loads(records_to_json(rows, SWEEP_HEADER))
        assert list(data[0]) == list(SWEEP_HEADER)
        assert data[0]["delta"] == "inf"
        assert data[1]["optimal_cr"] == rows[1].optimal_cr

    def test_json_rejects_raw_infinity(self):
        with pytest.raises(DomainError):
            records_to_json([RobustnessRow(0.1, 1.0, math.inf)], ROBUSTNESS_HEADER)
        with pytest.raises(DomainError):
            records_to_csv([RobustnessRow(0.1, 1.0, math.inf)], ROBUSTNESS_HEADER)

    def test_simulation_record(self):
        summary = run(TrialConfig(10.0, 1.0, 0.15, 1, 0))
        record = simulation_record("one", summary, NO_INFORMATION_CR)
        text = records_to_csv([record], SIMULATION_HEADER)
        assert text.splitlines()[0] == "label,trials,seed,mean_cr,std_err,ci95_lo,ci95_hi,theoretical"
        parsed = parse_csv(text, SIMULATION_HEADER)[0]
        assert parsed["std_err"] is None and parsed["trials"] == 1
        assert json.loads(records_to_json([record], SIMULATION_HEADER, single=True))["std_err"] is None

    def test_csv_and_json_agree(self):
        rows = emit_robustness(0.0, 1.0, 0.1)
        from_csv = parse_csv(records_to_csv(rows, ROBUSTNESS_HEADER), ROBUSTNESS_HEADER)
        from_json = json.loads(records_to_json(rows, ROBUSTNESS_HEADER))
        for a, b in zip(from_csv, from_json):
            for key in ROBUSTNESS_HEADER:
                left = "inf" if a[key] is UNBOUNDED else float(a[key])
                assert left == b[key]

    def test_wrong_header(self):
        with pytest.raises(DomainError):
            parse_sweep_csv("a,b\n1,2\n")
