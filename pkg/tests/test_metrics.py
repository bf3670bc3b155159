import random

import pytest

from seqsan import (
    UndefinedWhenZero,
    ba_sanitize,
    build_instance,
    contains_sensitive,
    distortion,
    edit_distance,
    edre,
    kmer_counts,
    lost_ghost,
    pfs_sanitize,
    tfs_sanitize,
    verify,
    verify_levels,
)
from seqsan.metrics import MetricsReport
from conftest import random_instance


class TestBaSanitize:
    def test_identity_without_sensitive(self):
        inst = build_instance("abcabc", 3)
        assert ba_sanitize(inst) == "abcabc"

    def test_hand_simulated_example(self):
        inst = build_instance("aab", 2, patterns=["aa"])
        assert ba_sanitize(inst) == "bab"

    def test_single_letter_alphabet_falls_back_to_separator(self):
        inst = build_instance("aaa", 2, patterns=["aa"])
        out = ba_sanitize(inst)
        assert out == "##a"
        assert not contains_sensitive(out, inst)

    def test_never_contains_sensitive(self):
        rng = random.Random(22)
        for _ in range(80):
            inst = random_instance(rng)
            out = ba_sanitize(inst)
            assert not contains_sensitive(out, inst)
            assert len(out) == inst.n  # in-place rewrites only


class TestDistortion:
    def test_zero_on_frequency_preservation(self, example1):
        assert distortion(example1.text, tfs_sanitize(example1), 4, example1.sensitive_patterns) == 0

    def test_hand_counted(self):
        assert distortion("aaa", "aab", 2) == 2

    def test_matches_recomputation(self, example1):
        y = pfs_sanitize(example1)
        got = distortion(example1.text, y, 4, example1.sensitive_patterns)
        want = kmer_counts(example1.text, 4)
        have = kmer_counts(y, 4)
        manual = sum(
            (want[p] - have[p]) ** 2
            for p in (want.keys() | have.keys()) - example1.sensitive_patterns
        )
        assert got == manual == 0


def _naive_counts(text, k):
    # position scan, no splitting; deliberately separate from kmer_counts
    out = {}
    for i in range(len(text) - k + 1):
        win = text[i : i + k]
        if "#" in win:
            continue
        out[win] = out.get(win, 0) + 1
    return out


def test_metrics_agree_with_naive_position_scan(example1):
    import random

    from seqsan import mcsr_sanitize, uniform_cost_model

    rng = random.Random(31)
    for _ in range(20):
        inst = random_instance(rng)
        out = pfs_sanitize(inst)
        k = inst.k
        want = _naive_counts(inst.text, k)
        got = _naive_counts(out, k)
        manual_distortion = sum(
            (want.get(p, 0) - got.get(p, 0)) ** 2
            for p in set(want) | set(got)
            if p not in inst.sensitive_patterns
        )
        assert manual_distortion == distortion(inst.text, out, k, inst.sensitive_patterns)
        tau = rng.randint(1, 3)
        lost, ghost = lost_ghost(inst.text, out, k, tau, inst.sensitive_patterns)
        manual_lost = {
            p
            for p in set(want) | set(got)
            if p not in inst.sensitive_patterns and want.get(p, 0) >= tau > got.get(p, 0)
        }
        manual_ghost = {
            p
            for p in set(want) | set(got)
            if p not in inst.sensitive_patterns and want.get(p, 0) < tau <= got.get(p, 0)
        }
        assert lost == manual_lost
        assert ghost == manual_ghost


class TestLostGhost:
    def test_preserving_output_has_neither(self, example1):
        lost, ghost = lost_ghost(example1.text, tfs_sanitize(example1), 4, 1, example1.sensitive_patterns)
        assert lost == set() and ghost == set()

    def test_hand_counted(self):
        lost, ghost = lost_ghost("abab", "abaa", 2, 2)
        assert lost == {"ab"}
        assert ghost == set()

    def test_tau_validation(self):
        with pytest.raises(ValueError):
            lost_ghost("ab", "ab", 1, 0)


class TestEditDistance:
    def test_identity(self):
        assert edit_distance("x", "x") == 0

    def test_paper_examples(self):
        assert edit_distance("aaaaaab", "aaa#aab") == 1
        assert edit_distance("aaabbaabaccbbb", "aaab#aabaccb#cbbb") == 4

    def test_metric_axioms_spot_check(self):
        rng = random.Random(23)
        words = ["".join(rng.choice("abc") for _ in range(rng.randint(0, 8))) for _ in range(12)]
        for a in words:
            for b in words:
                d = edit_distance(a, b)
                assert d == edit_distance(b, a)
                assert (d == 0) == (a == b)
        for a in words[:6]:
            for b in words[:6]:
                for c in words[:6]:
                    assert edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c)


class TestEdre:
    def test_zero_when_equal(self):
        assert edre("abc", "abd", "abd") == 0.0

    def test_example_ratios(self):
        w = "aaabbaabaccbbb"
        assert edre(w, "aaabaccb#cbbb", "aaab#aabaccb#cbbb") == pytest.approx(0.25)
        assert edre("aaaaaab", "", "aaa#aab") == pytest.approx(6.0)

    def test_undefined_when_reference_zero(self):
        with pytest.raises(UndefinedWhenZero):
            edre("abc", "abd", "abc")
        assert edre("abc", "abc", "abc") == 0.0


class TestVerify:
    def test_example1_all_levels(self, example1):
        x = tfs_sanitize(example1)
        assert all(r.ok for r in verify_levels(x, example1))

    def test_source_fails_c1_with_counterexample(self, example1):
        res = verify(example1.text, example1, "C1")
        assert not res.ok
        assert res.detail

    def test_partial_order_distinction(self, example1):
        y = "aaacbcbbba#aabaabbacaab"
        assert not verify(y, example1, "P1").ok
        assert verify(y, example1, "Pi1").ok

    def test_unknown_level(self, example1):
        with pytest.raises(ValueError):
            verify("x", example1, "P9")


def test_report_serialization_round_trip_keys():
    rep = MetricsReport(pipeline="tpm")
    rep.lengths = {"w": 10, "z": 9}
    rep.distortion = 2.0
    rep.lost = ["ab"]
    rep.ghost = []
    rep.runtimes_ms = {"tfs": 0.5}
    text = rep.to_text()
    lines = dict(
        line.split("=", 1) for line in text.strip().splitlines() if not line.startswith(("lost=", "ghost="))
    )
    assert lines["pipeline"] == "tpm"
    assert lines["length_w"] == "10"
    assert lines["distortion"] == "2"
    assert lines["lost_count"] == "1"
    assert "lost=ab" in text
