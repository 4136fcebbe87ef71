"""Scan harness tests: config validation, counter conservation, parse-error
handling, witness capping, worker-count determinism, and the enumerator."""

import json
from pathlib import Path

import pytest

from isk4lab.graphs import Graph, parse_graph6, write_graph6
from isk4lab.scan import CHECKS, ScanConfig, enumerate_small, scan_stream

from oracles import has_isk4

FIXTURES = Path(__file__).parent / "fixtures"
SMALL = (FIXTURES / "small_graphs_n_le_5.g6").read_text().splitlines()


def run(lines, checks=("ISK4-FILTER", "CHI-LE-4"), **kw):
    return scan_stream(lines, ScanConfig(checks=tuple(checks), **kw))


class TestScanConfig:
    def test_checks_sorted_and_deduped(self):
        cfg = ScanConfig(checks=("L-VOH", "CHI-LE-4", "L-VOH"))
        assert cfg.checks == ("CHI-LE-4", "L-VOH")

    def test_rejects_empty_checks(self):
        with pytest.raises(ValueError):
            ScanConfig(checks=())

    def test_rejects_unknown_check(self):
        with pytest.raises(ValueError, match="unknown"):
            ScanConfig(checks=("CHI-LE-4", "NOT-A-CHECK"))

    @pytest.mark.parametrize("kw", [{"budget": 0}, {"budget": -5},
                                    {"parallelism": 0}, {"witness_cap": -1}])
    def test_rejects_bad_numbers(self, kw):
        with pytest.raises(ValueError):
            ScanConfig(checks=CHECKS, **kw)


class TestStreamExamples:
    def test_small_fixture_all_pass(self):
        report = run(SMALL)
        assert report.totals()["read"] == len(SMALL) == 52
        assert report.failures == []
        assert report.parse_failures == 0
        assert report.consistent()

    def test_small_fixture_counts_by_n(self):
        report = run(SMALL)
        assert {n: c["read"] for n, c in report.per_n.items()} == {
            1: 1, 2: 2, 3: 4, 4: 11, 5: 34}

    def test_k4_counted_not_free_and_chi_skipped(self):
        report = run(["C~"])
        counters = report.per_n[4]
        assert counters["read"] == 1
        assert counters["isk4_free"] == 0
        assert counters["checks"]["ISK4-FILTER"] == {
            "pass": 0, "fail": 0, "skip": 1, "budget": 0}
        assert counters["checks"]["CHI-LE-4"]["skip"] == 1

    def test_empty_stream(self):
        report = run([])
        assert report.per_n == {}
        assert report.failures == []
        tot = report.totals()
        assert tot["read"] == 0 and tot["parse_failures"] == 0
        assert report.consistent()


class TestCounters:
    def test_isk4_free_matches_oracle(self):
        report = run(SMALL)
        expect = sum(not has_isk4(parse_graph6(line)) for line in SMALL)
        assert sum(c["isk4_free"] for c in report.per_n.values()) == expect

    def test_no_k123_below_six_vertices(self):
        report = run(SMALL)
        assert all(c["contains_k123"] == 0 for c in report.per_n.values())

    def test_k123_counter(self):
        g6 = write_graph6(Graph.complete_multipartite((1, 2, 3)))
        report = run([g6])
        assert report.per_n[6]["contains_k123"] == 1

    def test_all_checks_on_fixture_no_failures(self):
        report = run(SMALL, checks=CHECKS)
        assert report.failures == []
        assert report.consistent()

    def test_budget_exceeded_is_counted_not_failed(self):
        bowtie = write_graph6(Graph.from_edges(
            5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]))
        report = run([bowtie], checks=("L-LINK",), budget=1)
        assert report.per_n[5]["checks"]["L-LINK"] == {
            "pass": 0, "fail": 0, "skip": 0, "budget": 1}
        assert report.failures == []
        assert report.consistent()


class TestParseFailures:
    def test_bad_lines_counted_and_scan_continues(self):
        report = run(["C~", "this is not graph6", "CK", ""])
        assert report.parse_failures == 2
        assert report.totals()["read"] == 2
        assert [w["line_no"] for w in report.failures] == [2, 4]
        assert all(w["check"] == "parse" for w in report.failures)
        assert report.consistent()

    def test_truncated_line_is_parse_failure(self):
        report = run(["E"])
        assert report.parse_failures == 1
        assert "reason" in report.failures[0]["evidence"]

    def test_witness_cap_suppresses_overflow(self):
        report = run(["x"] * 5, witness_cap=2)
        assert report.parse_failures == 5
        assert len(report.failures) == 2
        assert report.suppressed == {"parse": 3}
        assert report.totals()["witnesses_suppressed"] == {"parse": 3}
        assert report.consistent()


class TestReportDocument:
    def test_json_shape(self):
        doc = json.loads(run(SMALL[:10]).to_json())
        assert set(doc) == {"meta", "per_n", "failures", "totals"}
        assert set(doc["meta"]) == {"version", "checks", "budget",
                                    "witness_cap"}
        assert "parallelism" not in json.dumps(doc)
        assert "wall_time" not in json.dumps(doc)

    def test_failures_keep_input_order(self):
        report = run(["A_", "zz", "A?", "yy"])
        assert [w["line_no"] for w in report.failures] == [2, 4]
        assert report.failures[0]["graph6"] == "zz"

    def test_wall_time_recorded_off_document(self):
        report = run(SMALL[:5])
        assert report.wall_time > 0


class TestDeterminism:
    def test_one_vs_two_workers_byte_identical(self):
        lines = SMALL + ["garbage line", "C~"]
        solo = run(lines, checks=CHECKS, parallelism=1)
        duo = run(lines, checks=CHECKS, parallelism=2)
        assert solo.to_json() == duo.to_json()

    def test_rerun_is_byte_identical(self):
        assert run(SMALL).to_json() == run(SMALL).to_json()

    def test_accepts_any_line_iterable(self):
        with open(FIXTURES / "small_graphs_n_le_5.g6") as fh:
            from_file = run(fh)
        assert from_file.to_json() == run(SMALL).to_json()


class TestEnumerateSmall:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 8), (4, 64)])
    def test_line_counts(self, n, count):
        lines = list(enumerate_small(n))
        assert len(lines) == count
        assert len(set(lines)) == count

    def test_n1_is_single_vertex(self):
        assert list(enumerate_small(1)) == ["@"]

    @pytest.mark.parametrize("bad", [0, 8, -1])
    def test_out_of_range(self, bad):
        with pytest.raises(ValueError):
            list(enumerate_small(bad))

    def test_lines_parse_back_in_code_order(self):
        for code, line in enumerate(enumerate_small(4)):
            assert parse_graph6(line) == Graph.from_code(4, code)

    @pytest.mark.parametrize("n,count", [(3, 4), (4, 38)])
    def test_connected_filter(self, n, count):
        assert len(list(enumerate_small(n, connected=True))) == count

    def test_scan_accepts_enumerator_output(self):
        report = run(enumerate_small(4), checks=("ISK4-FILTER",))
        assert report.totals()["read"] == 64
        assert report.per_n[4]["checks"]["ISK4-FILTER"]["skip"] == 1
