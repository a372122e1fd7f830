"""Acceptance gate: one test per shipped guarantee, with runtime budgets.

Each criterion prints a single summary line (visible with -v as the
test's pass/fail status).  Criterion 2 is split: the oracle cross-check
and the convention recording hold, but no sidedness convention actually
reproduces the published p-values at one significant figure, so the
reproduction sub-test fails and is left failing on purpose rather than
loosened; the recorded candidates in the fixture report document how
close each convention comes.
"""

import io
import json
import time
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest
import scipy.stats

from test_fluctuation import oracle_max_coverage
from test_stats import enumeration_oracle

from segsim.cli import main
from segsim.experiment import report_dict, run_fixture_experiment
from segsim.fluctuation import f_measure
from segsim.io import PUBLISHED_P_VALUES, load_fixture
from segsim.properties import (
    MatchConfig,
    PropertySet,
    attribution_fraction,
    g_measure,
    property_set,
)
from segsim.series import FluctuationSequence, Segment
from segsim.stats import welch_t_test, wilcoxon_rank_sum
from segsim.warping import (
    CostModel,
    dtw_brute_force,
    dtw_exact,
    dtw_fast,
    validate_path,
)

G_LATTICE = (0.0, 14.29, 28.57, 42.86, 57.14, 71.43, 85.71, 100.0)


def seg(values):
    return Segment("s", 0.0, 1.0, np.asarray(values, dtype=np.float64))


def fl(values):
    return FluctuationSequence(np.asarray(values, dtype=np.float64))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # First call per kernel signature pays the jit compile; keep that
    # out of the per-criterion runtime budgets.
    s = seg([1.0, 2.0, 3.0])
    dtw_exact(s, s)
    dtw_fast(s, s, radius=1)
    f_measure(fl([1.0, 2.0, 1.0]), fl([1.0, 2.0, 1.0]))
    f_measure(fl([1.0, 2.0, 1.0]), fl([1.0, 2.0, 1.0]), mode="exact")


class Budget:
    def __init__(self, criterion, limit_s):
        self.criterion = criterion
        self.limit = limit_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            assert self.elapsed < self.limit, (
                f"criterion {self.criterion} took {self.elapsed:.2f}s, "
                f"budget {self.limit}s"
            )
            print(f"criterion {self.criterion}: PASS in {self.elapsed:.2f}s")
        return False


def test_criterion_1_fixture_aggregation_reproduces_published_means():
    with Budget(1, 1.0):
        report = run_fixture_experiment()
        means = report.means
        # the three internally consistent published aggregates, exact at
        # their printed precision
        assert round(means["set_one"]["f"], 3) == 1.036
        assert round(means["set_one"]["dtw"], 3) == 18.574
        assert round(means["set_two"]["g"], 3) == 25.716
        # the three discrepant ones: recomputed column means at
        # 2-decimal formatting, each carrying a discrepancy note
        assert f"{means['set_one']['g']:.2f}" == "57.14"
        assert f"{means['set_two']['f']:.2f}" == "1.01"
        assert f"{means['set_two']['dtw']:.2f}" == "31.71"
        comparison = report.published_comparison["means"]
        for set_name, measure in (
            ("set_one", "g"), ("set_two", "f"), ("set_two", "dtw"),
        ):
            entry = comparison[set_name][measure]
            assert entry["consistent"] is False
            assert "note" in entry
        for set_name, measure in (
            ("set_one", "f"), ("set_one", "dtw"), ("set_two", "g"),
        ):
            entry = comparison[set_name][measure]
            assert entry["consistent"] is True
            assert "note" not in entry
        # and the rendered report carries the exact printed values
        payload = report_dict(report)
        assert payload["means"]["set_one"]["f"] == 1.036
        assert payload["means"]["set_one"]["dtw"] == 18.574
        assert payload["means"]["set_two"]["g"] == 25.716


def _fixture_columns(measure):
    attr = {"f": "f_value", "g": "g_value", "dtw": "dtw_distance"}[measure]
    return (
        [getattr(r, attr) for r in load_fixture("table1").rows],
        [getattr(r, attr) for r in load_fixture("table3").rows],
    )


def test_criterion_2_independent_statistics_oracle_cross_check():
    with Budget("2 (oracle cross-check)", 1.0):
        for measure in ("g", "dtw"):
            one, two = _fixture_columns(measure)
            mine = welch_t_test(one, two)
            ref = scipy.stats.ttest_ind(one, two, equal_var=False)
            assert mine.statistic == pytest.approx(ref.statistic, rel=1e-9)
            assert mine.p_two_sided == pytest.approx(ref.pvalue, rel=1e-9)
            assert mine.degrees_of_freedom == pytest.approx(ref.df, rel=1e-9)
            greater = scipy.stats.ttest_ind(
                one, two, equal_var=False, alternative="greater"
            )
            assert mine.p_one_sided == pytest.approx(greater.pvalue, rel=1e-9)
        # rank-sum exact path against scipy on tie-free data
        rng = np.random.default_rng(2)
        a = list(rng.permutation(np.arange(20, dtype=np.float64))[:10])
        b = list(rng.permutation(np.arange(20, dtype=np.float64) + 0.5)[:10])
        mine = wilcoxon_rank_sum(a, b, mode="exact")
        ref = scipy.stats.mannwhitneyu(a, b, alternative="greater",
                                       method="exact")
        assert mine.p_one_sided == pytest.approx(ref.pvalue, rel=1e-12)
        # and against raw subset enumeration on the tied fixture columns
        one, two = _fixture_columns("f")
        mine = wilcoxon_rank_sum(one, two, mode="exact")
        p_ge, p_le = enumeration_oracle(one, two)
        assert mine.p_one_sided == pytest.approx(p_ge, rel=1e-12)
        assert mine.p_two_sided == pytest.approx(
            min(1.0, 2.0 * min(p_ge, p_le)), rel=1e-12
        )


def test_criterion_2_sidedness_conventions_recorded_in_report():
    with Budget("2 (convention recording)", 1.0):
        records = run_fixture_experiment().published_comparison["p_values"]
        for measure in ("f", "g", "dtw"):
            record = records[measure]
            assert record["published"] == PUBLISHED_P_VALUES[measure]
            assert set(record["candidates"]) == {
                "two_sided",
                "one_sided_set_one_greater",
                "one_sided_set_two_greater",
            }
            assert record["closest_convention"] in record["candidates"]
            assert "matched_convention" in record


def test_criterion_2_published_p_values_reproduced():
    # Known failure, left failing deliberately: no one-/two-sided
    # convention of the specified tests reproduces the published trio
    # (0.01, 0.04, 0.4) at one significant figure on the fixture
    # columns.  The closest candidates are recorded in the fixture
    # report for inspection; see the repo docs for the full analysis.
    with Budget("2 (published p reproduction)", 1.0):
        records = run_fixture_experiment().published_comparison["p_values"]
        for measure in ("f", "g", "dtw"):
            record = records[measure]
            assert record["matched_convention"] is not None, (
                f"no sidedness convention reproduces the published "
                f"p={record['published']} for {measure}; candidates: "
                f"{record['candidates']}"
            )


def test_criterion_3_g_quantization_identity_monotonicity_asymmetry():
    with Budget(3, 5.0):
        rng = np.random.default_rng(3)
        tolerances = [round(t, 1) for t in np.linspace(0.0, 1.0, 11)]
        for _ in range(1000):
            ka = seg(rng.uniform(0.0, rng.uniform(0.5, 20.0),
                                 size=rng.integers(1, 30)))
            la = seg(rng.uniform(0.0, rng.uniform(0.5, 20.0),
                                 size=rng.integers(1, 30)))
            k, l = property_set(ka), property_set(la)
            report = g_measure(k, l)
            assert report.g_value in G_LATTICE
            assert g_measure(k, k).g_value == 100.0
            counts = [
                g_measure(k, l, MatchConfig(tolerance=t)).matched_count
                for t in tolerances
            ]
            assert counts == sorted(counts)
        k = PropertySet(1.0, 1.1, 50.0, 60.0, 70.0, 80.0, 90.0)
        l = PropertySet(1.05, 200.0, 201.0, 202.0, 203.0, 204.0, 205.0)
        forward = g_measure(k, l).g_value
        backward = g_measure(l, k).g_value
        assert forward == 28.57 and backward == 14.29
        assert forward != backward


def test_criterion_4_f_exact_matches_exhaustive_oracle():
    with Budget(4, 60.0):
        rng = np.random.default_rng(4)
        for _ in range(500):
            a = rng.integers(0, 4, size=rng.integers(1, 13)).astype(float)
            o = rng.integers(0, 4, size=rng.integers(1, 13)).astype(float)
            exact = f_measure(fl(a), fl(o), mode="exact")
            greedy = f_measure(fl(a), fl(o), mode="greedy")
            assert exact.covered_length == oracle_max_coverage(a, o)
            assert greedy.covered_length <= exact.covered_length
            if len(a) >= 2:
                assert f_measure(fl(a), fl(a)).f_value == 100.0
        for _ in range(50):
            # disjoint block alphabets: swapping the blocks then cannot
            # change any occurrence count, so both blocks qualify and
            # together cover a completely
            b1 = rng.integers(0, 4, size=rng.integers(2, 7)).astype(float)
            b2 = rng.integers(10, 14, size=rng.integers(2, 7)).astype(float)
            swapped = f_measure(
                fl(np.concatenate([b1, b2])),
                fl(np.concatenate([b2, b1])),
                mode="exact",
            )
            assert swapped.f_value == 100.0


def test_criterion_5_dtw_oracle_equivalence_and_radius_monotonicity():
    with Budget(5, 30.0):
        rng = np.random.default_rng(5)
        # integer-valued inputs keep every path cost an exact float sum,
        # so the dynamic program and the enumeration must agree exactly
        for i in range(500):
            kind = ("absolute_difference", "squared_difference")[i % 2]
            cost = CostModel(kind)
            a = seg(rng.integers(0, 20, size=rng.integers(1, 7)).astype(float))
            b = seg(rng.integers(0, 20, size=rng.integers(1, 7)).astype(float))
            fast = dtw_exact(a, b, cost)
            brute = dtw_brute_force(a, b, cost)
            assert fast.distance == brute.distance
            validate_path(fast.path, len(a.values), len(b.values))
            validate_path(brute.path, len(a.values), len(b.values))
        for _ in range(100):
            n, m = rng.integers(2, 65), rng.integers(2, 65)
            a, b = seg(rng.normal(size=n)), seg(rng.normal(size=m))
            exact = dtw_exact(a, b)
            previous = np.inf
            for radius in range(max(n, m) + 1):
                result = dtw_fast(a, b, radius=radius)
                validate_path(result.path, n, m)
                assert result.distance <= previous
                previous = result.distance
            assert previous == exact.distance


def test_criterion_6_statistical_test_properties():
    with Budget(6, 30.0):
        rng = np.random.default_rng(6)
        sample = list(rng.normal(size=12))
        identical = welch_t_test(sample, sample)
        assert identical.statistic == 0.0
        assert identical.p_two_sided == 1.0
        other = list(rng.normal(loc=0.7, size=9))
        forward, backward = welch_t_test(sample, other), welch_t_test(other, sample)
        assert forward.statistic == -backward.statistic
        # the two-sided p is symmetric up to one rounding of 1 - sf(t)
        assert forward.p_two_sided == pytest.approx(backward.p_two_sided,
                                                    rel=1e-12)
        shifted = welch_t_test([x + 11.5 for x in sample],
                               [x + 11.5 for x in other])
        assert shifted.statistic == pytest.approx(forward.statistic, rel=1e-9)
        assert shifted.p_two_sided == pytest.approx(forward.p_two_sided,
                                                    rel=1e-9)
        for _ in range(20):
            a = list(rng.normal(size=10))
            b = list(rng.normal(loc=rng.uniform(-1, 1), size=10))
            exact = wilcoxon_rank_sum(a, b, mode="exact")
            transformed = wilcoxon_rank_sum(
                [np.exp(x) for x in a], [np.exp(x) for x in b], mode="exact"
            )
            assert transformed.statistic == exact.statistic
            assert transformed.p_one_sided == exact.p_one_sided
            assert transformed.p_two_sided == exact.p_two_sided
            approx = wilcoxon_rank_sum(a, b, mode="normal_approx")
            assert abs(approx.p_two_sided - exact.p_two_sided) <= 0.05
            assert abs(approx.p_one_sided - exact.p_one_sided) <= 0.05


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    assert code == 0, err.getvalue()
    return out.getvalue()


def test_criterion_7_end_to_end_deterministic_json(tmp_path):
    with Budget(7, 10.0):
        csv_text = _cli([
            "generate", "--length", "25", "--seed", "12", "--drift", "0.002",
            "--volatility", "0.05", "--years", "6",
        ])
        path = tmp_path / "series.csv"
        path.write_text(csv_text)
        experiment = [
            "experiment", "--input", str(path), "--y-year", "2005",
            "--set-one", "2000,2001,2002", "--set-two", "2003,2004",
            "--tolerance", "2",
        ]
        first = _cli(experiment + ["--jobs", "4"])
        second = _cli(experiment + ["--jobs", "4"])
        sequential = _cli(experiment + ["--jobs", "1"])
        assert first == second == sequential
        payload = json.loads(first)
        assert payload["mode"] == "computed"


def test_criterion_8_attribution_plumbing():
    with Budget(8, 5.0):
        rng = np.random.default_rng(8)
        identity_reports = []
        for _ in range(5):
            k = property_set(seg(rng.uniform(0, 50, size=12)))
            identity_reports.append(g_measure(k, k))
        identity = attribution_fraction(identity_reports)
        assert identity.value == 100.0 and identity.defined
        # one same-property match (index 0) plus one cross-property
        # match (K's std_dev against L's minimum): 1 of 2 -> 50%
        k = PropertySet(0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0)
        l = PropertySet(0.0, 100.0, 10.1, 200.0, 300.0, 400.0, 500.0)
        report = g_measure(k, l)
        assert report.matched_count == 2
        assert report.same_property_count == 1
        half = attribution_fraction([report])
        assert half.value == 50.0
        # the published 56.9% attribution figure is a property of the
        # original full dataset, which is not bundled; it is noted here
        # as data-dependent, not regenerated


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
