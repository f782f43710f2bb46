# Running a small verification campaign end to end and reading the report.
# The full default grid takes a few minutes; this demo trims it down.

from shalika.campaign import Campaign, run_campaign

campaign = Campaign(
    shalika_cells=[(2, 1, 1), (2, 1, 2), (3, 1, 1)],
    deltap_cells=[(2, 1, 1), (3, 1, 1)],
    seed=0,
    property_instances=200,
)

text, code, results = run_campaign(campaign)
print(text)
print("exit code:", code)

# The structured results back the report.  Geometric rows carry one entry
# per character twist; each records representative counts and (ideally
# empty) counterexample lists.
row = results["geometric"][0]
print("first geometric row:", {k: row[k] for k in ("q", "n", "m", "twist",
                                                   "reps", "admissible",
                                                   "ok")})

# Reports are deterministic for a fixed seed once timing comments are
# stripped; this is what makes reruns byte-comparable.
from shalika.campaign import strip_timing
text2, _, _ = run_campaign(campaign)
print("deterministic rerun:", strip_timing(text) == strip_timing(text2))
