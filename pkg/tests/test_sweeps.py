"""Cross-checks between the streamed per-instance checkers and the fast
aggregate kernels, plus worker-count invariance."""

from fractions import Fraction

import pytest

from homverify.graphs import hard_core_target, widom_rowlinson_target
from homverify.sweeps import (
    SweepConfig,
    SweepSummary,
    corollary_bundle_summary,
    oracle_equivalence_sweep,
    summarize,
    sweep_reports,
    sweep_summary,
)

CASES = [
    ("eq_ind", {}),
    ("eq_wr", {}),
    ("wr_lemma", {}),
    ("thm1_1", {"qs": (2, 3)}),
    ("eq_col", {"qs": (2, 3)}),
    ("cor1_4", {}),
    ("cor1_6", {}),
    ("cor1_2", {"qs": (3,)}),
    ("balanced", {"qs": (3,)}),
    ("sidorenko", {"target": hard_core_target()}),
    ("sidorenko", {"target": widom_rowlinson_target()}),
]


def _fold_reports(claim, dicts):
    s = SweepSummary(claim)
    for rd in dicts:
        m = rd["margin"]
        margin = None if m is None else Fraction(int(m.split("/")[0]), int(m.split("/")[1]))
        s.record(rd["instance"], rd["verdict"], margin)
    return s


@pytest.mark.parametrize("claim,kw", CASES)
def test_fast_summary_matches_streamed_reports(claim, kw):
    cfg = SweepConfig(claim, 4, **kw)
    slow = _fold_reports(claim, sweep_reports(cfg))
    fast = sweep_summary(cfg)
    assert (slow.instances, slow.holds, slow.violated, slow.inapplicable) == \
        (fast.instances, fast.holds, fast.violated, fast.inapplicable)
    assert slow.min_margin == fast.min_margin
    assert slow.tight_count == fast.tight_count


def test_worker_count_invariance():
    cfg = SweepConfig("eq_ind", 4)
    one = list(sweep_reports(cfg, workers=1))
    two = list(sweep_reports(cfg, workers=2))
    assert one == two
    s1 = sweep_summary(cfg, workers=1)
    s2 = sweep_summary(cfg, workers=2)
    assert s1.to_json_dict() == s2.to_json_dict()


def test_bundle_matches_individual_claims():
    bundle = corollary_bundle_summary(4)
    for claim, kw in [("cor1_4", {}), ("cor1_6", {}),
                      ("sidorenko", {"target": hard_core_target()})]:
        single = sweep_summary(SweepConfig(claim, 4, **kw))
        key = {"cor1_4": "cor1_4", "cor1_6": "cor1_6", "sidorenko": "sidorenko_hc"}[claim]
        b = bundle[key]
        assert (b.instances, b.holds, b.violated) == \
            (single.instances, single.holds, single.violated)
        assert b.min_margin == single.min_margin


def test_bundle_k3_counts_bipartite_only():
    bundle = corollary_bundle_summary(4)
    assert bundle["sidorenko_k3"].instances < bundle["sidorenko_hc"].instances
    assert bundle["sidorenko_k3"].violated == 0


def test_oracle_sweep_small():
    s = oracle_equivalence_sweep(max_n=4, wr_chrom_max_n=4, chrom_qs=(2, 3), workers=1)
    assert s.checked_ind == 2 + 8 + 64 + 1
    assert s.checked_wr == s.checked_ind
    assert s.checked_chrom == 2 * s.checked_ind
    assert not s.mismatches


def test_oracle_sweep_worker_invariance():
    a = oracle_equivalence_sweep(max_n=4, wr_chrom_max_n=3, workers=1)
    b = oracle_equivalence_sweep(max_n=4, wr_chrom_max_n=3, workers=2)
    assert (a.checked_ind, a.checked_wr, a.checked_chrom) == \
        (b.checked_ind, b.checked_wr, b.checked_chrom)


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig("nosuch", 4).validate()
    with pytest.raises(ValueError):
        SweepConfig("thm1_1", 4).validate()  # missing q
    with pytest.raises(ValueError):
        SweepConfig("sidorenko", 4).validate()  # missing target
    with pytest.raises(ValueError):
        SweepConfig("eq_ind", 9).validate()


def test_summarize_helper():
    from homverify.verify import check_edge_ratio
    from homverify.graphs import path_graph

    reports = [check_edge_ratio(path_graph(2), "independent", (0, 1))]
    s = summarize("eq_ind", reports)
    assert s.instances == 1 and s.holds == 1 and s.tight_count == 1
