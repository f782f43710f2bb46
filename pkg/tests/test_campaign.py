import subprocess
import sys

from shalika.campaign import (Campaign, chi_list, default_campaign,
                              default_deltap_cells, default_shalika_cells,
                              render_report, run_campaign, run_completeness_cell,
                              run_geometric_cell, run_hecke_deltap,
                              run_hecke_shalika, run_properties, strip_timing,
                              twist_list)


def test_default_grid_shape():
    cells = default_shalika_cells()
    assert (2, 1, 1) in cells and (3, 2, 2) in cells and (2, 0, 4) in cells
    for q, n, m in cells:
        assert n <= m and 1 <= n + m <= 4 and q in (2, 3)
    assert default_deltap_cells() == [(2, 1, 1), (2, 1, 2), (3, 1, 1),
                                      (3, 1, 2)]


def test_twist_lists():
    assert twist_list(2) == [(0, 0, 1)]
    assert len(twist_list(3)) == 8
    assert chi_list(2) == [(0, 0)]
    assert len(chi_list(3)) == 4


def test_geometric_cell_shares_scan():
    rows = run_geometric_cell(3, 1, 1)
    assert len(rows) == 8
    for row in rows:
        assert row["ok"], row
        assert not row["counterexamples"]
    # admissible counts may differ between additive twists
    assert {row["reps"] for row in rows} == {8}


def test_completeness_cell_and_skip():
    row = run_completeness_cell(2, 1, 1)
    assert row["covers"] and row["sizes"] == [2, 4]
    skip = run_completeness_cell(3, 2, 2, max_group_order=100)
    assert "skip" in skip


def test_hecke_cells():
    row = run_hecke_shalika(2, 1, 1, (0, 0, 1))
    assert row["ok"] and row["dimension"] == 2
    row = run_hecke_deltap(2, 1, 1, (0, 0))
    assert row["ok"]
    skip = run_hecke_shalika(3, 2, 2, (0, 0, 1), max_group_order=10)
    assert "skip" in skip


def test_report_render_and_strip():
    results = {"completeness": [run_completeness_cell(2, 1, 1)],
               "elapsed": 1.0, "timings": {"completeness": 1.0}}
    text, ok = render_report(results, seed=7)
    assert ok
    assert "seed 7" in text
    assert "verdict holds" in text
    stripped = strip_timing(text)
    assert "# timing" not in stripped
    assert "verdict holds" in stripped


def test_small_campaign_deterministic():
    campaign = Campaign(shalika_cells=[(2, 1, 1), (2, 1, 2)],
                        deltap_cells=[(2, 1, 1)], seed=11,
                        property_instances=50)
    t1, c1, _ = run_campaign(campaign)
    t2, c2, _ = run_campaign(campaign)
    assert c1 == c2 == 0
    assert strip_timing(t1) == strip_timing(t2)


def test_campaign_jobs_matches_serial():
    campaign = Campaign(shalika_cells=[(2, 1, 1), (2, 1, 2)],
                        deltap_cells=[], seed=3, property_instances=20)
    t1, _, _ = run_campaign(campaign)
    campaign.jobs = 4
    t2, _, _ = run_campaign(campaign)
    assert strip_timing(t1) == strip_timing(t2)


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "shalika.cli", *argv],
                          capture_output=True, text=True)
    return proc


def test_cli_hecke_check():
    proc = _cli("hecke-check", "--n", "1", "--m", "1", "--q", "2")
    assert proc.returncode == 0
    assert "commutative=yes" in proc.stdout


def test_cli_enumerate_cosets():
    proc = _cli("enumerate-cosets", "--n", "1", "--m", "1", "--q", "2")
    assert proc.returncode == 0
    assert "rep 0" in proc.stdout and "rep 1" in proc.stdout


def test_cli_enumerate_cosets_json(tmp_path):
    out = tmp_path / "cosets.json"
    proc = _cli("enumerate-cosets", "--n", "1", "--m", "1", "--q", "3",
                "--format", "json", "--out", str(out))
    assert proc.returncode == 0
    import json
    data = json.loads(out.read_text())
    assert len(data) == 8
    assert all("admissible" in row for row in data)


def test_cli_verify_single_cell():
    proc = _cli("verify-shalika", "--n", "1", "--m", "1", "--q", "3")
    assert proc.returncode == 0
    assert "[geometric]" in proc.stdout
    assert "verdict holds" in proc.stdout


def test_cli_verify_deltap():
    proc = _cli("verify-deltap", "--n", "1", "--m", "1", "--q", "2")
    assert proc.returncode == 0


def test_cli_properties():
    # quick seeded sanity; full suites run in the acceptance tests
    proc = _cli("properties", "--seed", "5")
    assert proc.returncode == 0
    assert "failures=0" in proc.stdout


def test_cli_bad_usage():
    proc = _cli("verify-shalika", "--n", "1", "--q", "2")
    assert proc.returncode == 2
