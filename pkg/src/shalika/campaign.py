"""Verification campaigns: grids, pipelines, property suites, reports.

A campaign runs four pipelines over a parameter grid and renders one stable
text report:

  geometric     every admissible double coset representative has an
                invariance witness (the main claim)
  completeness  the explicit representative family partitions G
  hecke         the convolution algebra is commutative with the right
                dimension, for both the Shalika and the pair setting
  properties    seeded random suites for the algebraic identities the
                machinery rests on

Budget overruns are recorded as explicit skips, never silent.  Identical
configuration and seed give byte-identical reports apart from lines starting
with "# timing".
"""

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .field import Field
from .matrices import IndexSet, Mat, embed, tau, tau_by, weld
from .groups import (DeltaPContext, ShalikaContext, chi, gk_conjugators,
                     h_contains, hprime_contains, psi, psi_tau, psi_u,
                     random_gl, random_h, random_hprime, random_matrix)
from .cosets import (BudgetError, admissible_from_scan, completeness_check,
                     necessary_conditions, representatives, scan_representative,
                     witness_from_scan)
from .hecke import deltap_hecke_setup, hecke_report, shalika_hecke_setup


@dataclass
class Campaign:
    shalika_cells: list            # (q, n, m) triples
    deltap_cells: list             # (q, n, m) triples for the pair setting
    checks: tuple = ("geometric", "completeness", "hecke", "properties")
    seed: int = 0
    max_group_order: int = 10 ** 5
    max_subgroup_order: int = 10 ** 6
    hecke_max_group_order: int = 25000
    property_instances: int = 1000
    jobs: int = 1


def default_shalika_cells():
    cells = []
    for q in (2, 3):
        for total in range(1, 5):
            for n in range(0, total // 2 + 1):
                cells.append((q, n, total - n))
    return cells


def default_deltap_cells():
    return [(q, n, m) for q in (2, 3) for (n, m) in ((1, 1), (1, 2))]


def default_campaign(seed=0, jobs=1):
    return Campaign(shalika_cells=default_shalika_cells(),
                    deltap_cells=default_deltap_cells(), seed=seed, jobs=jobs)


def twist_list(q):
    """Untwisted plus every twist: det exponents mod q-1 and additive c."""
    exps = range(max(q - 1, 1))
    return [(a1, a2, c) for a1 in exps for a2 in exps for c in range(1, q)]


def chi_list(q):
    exps = range(max(q - 1, 1))
    return [(x1, x2) for x1 in exps for x2 in exps]


# -- geometric pipeline -----------------------------------------------------

def run_geometric_cell(q, n, m, max_subgroup_order=10 ** 6):
    """One pass over the representative family, every twist evaluated.

    The stabilizer/witness scan per representative does not depend on the
    character twist, so it is computed once and shared.
    """
    f = Field(q)
    base = ShalikaContext(f, n, m)
    twists = twist_list(q)
    per_twist = {tw: {"reps": 0, "admissible": 0, "counterexamples": [],
                      "condition_failures": 0} for tw in twists}
    try:
        for pos, record in enumerate(representatives(base)):
            scan = scan_representative(base, record.rep, max_subgroup_order)
            conds = necessary_conditions(base, record)
            cond_bad = any(v == "fail" for v in conds.values())
            for tw in twists:
                ctx = ShalikaContext(f, n, m, a1=tw[0], a2=tw[1], c=tw[2])
                stats = per_twist[tw]
                stats["reps"] += 1
                ok, _ = admissible_from_scan(ctx, scan, "psi_u")
                if not ok:
                    continue
                stats["admissible"] += 1
                if witness_from_scan(ctx, scan) is None:
                    stats["counterexamples"].append((pos, record.index))
                if cond_bad:
                    stats["condition_failures"] += 1
    except BudgetError as exc:
        return [{"q": q, "n": n, "m": m, "twist": tw, "skip": str(exc)}
                for tw in twists]
    out = []
    for tw in twists:
        stats = per_twist[tw]
        out.append({"q": q, "n": n, "m": m, "twist": tw, **stats,
                    "ok": not stats["counterexamples"]
                          and not stats["condition_failures"]})
    return out


# -- completeness pipeline --------------------------------------------------

def run_completeness_cell(q, n, m, max_group_order=10 ** 5):
    ctx = ShalikaContext(Field(q), n, m)
    try:
        res = completeness_check(ctx, max_group_order)
    except BudgetError as exc:
        return {"q": q, "n": n, "m": m, "skip": str(exc)}
    return {"q": q, "n": n, "m": m, **res}


# -- hecke pipeline ---------------------------------------------------------

def run_hecke_shalika(q, n, m, tw, max_group_order=25000):
    ctx = ShalikaContext(Field(q), n, m, a1=tw[0], a2=tw[1], c=tw[2])
    try:
        rep = hecke_report(shalika_hecke_setup(ctx, max_group_order))
    except BudgetError as exc:
        return {"q": q, "n": n, "m": m, "twist": tw, "skip": str(exc)}
    return {"q": q, "n": n, "m": m, "twist": tw, **rep}


def run_hecke_deltap(q, n, m, x, max_group_order=25000):
    ctx = DeltaPContext(Field(q), n, m, x1=x[0], x2=x[1])
    try:
        rep = hecke_report(deltap_hecke_setup(ctx, max_group_order))
    except BudgetError as exc:
        return {"q": q, "n": n, "m": m, "chi": x, "skip": str(exc)}
    return {"q": q, "n": n, "m": m, "chi": x, **rep}


# -- property suites --------------------------------------------------------

def _random_subset(rng, universe):
    return IndexSet(universe, [i for i in range(1, universe + 1)
                               if rng.random() < 0.5])


def _random_shapes(rng):
    q = rng.choice((2, 3))
    return Field(q)


def suite_scatter_identities(rng, count):
    """The four algebraic rules of the scatter operator E and welding."""
    failures = []
    for trial in range(count):
        f = _random_shapes(rng)
        nn = rng.randint(1, 5)
        s1 = _random_subset(rng, nn)
        s2 = _random_subset(rng, nn)
        s3 = _random_subset(rng, nn)
        a = random_matrix(f, len(s1.members), len(s2.members), rng)
        b = random_matrix(f, len(s2.members), len(s3.members), rng)
        if embed(s1, s2, a) @ embed(s2, s3, b) != embed(s1, s3, a @ b):
            failures.append(("product", trial))
        b2 = random_matrix(f, nn - len(s2.members), len(s3.members), rng)
        if embed(s1, s2, a) @ embed(s2.complement(), s3, b2) != Mat.zeros(f, nn):
            failures.append(("orthogonality", trial))
        if embed(s1, s2, a).T != embed(s2, s1, a.T):
            failures.append(("transpose", trial))
        ai = random_gl(f, len(s1.members), rng)
        bi = random_gl(f, nn - len(s1.members), rng)
        if weld(s1, s1, ai, bi).inv() != weld(s1, s1, ai.inv(), bi.inv()):
            failures.append(("welded-inverse", trial))
    return {"name": "scatter-identities", "instances": count, "failures": failures}


def suite_weld_product(rng, count):
    """(A + B) welded times (C + D) welded is the weld of the products."""
    failures = []
    for trial in range(count):
        f = _random_shapes(rng)
        nn = rng.randint(1, 5)
        s1, s2, s3 = (_random_subset(rng, nn) for _ in range(3))
        a = random_matrix(f, len(s1.members), len(s2.members), rng)
        b = random_matrix(f, nn - len(s1.members), nn - len(s2.members), rng)
        c = random_matrix(f, len(s2.members), len(s3.members), rng)
        d = random_matrix(f, nn - len(s2.members), nn - len(s3.members), rng)
        lhs = weld(s1, s2, a, b) @ weld(s2, s3, c, d)
        if lhs != weld(s1, s3, a @ c, b @ d):
            failures.append(("weld-product", trial))
    return {"name": "weld-product", "instances": count, "failures": failures}


def _random_weld_profile(rng):
    """(n, m, S) with S respecting the block structure of the subgroup."""
    n = rng.randint(0, 2)
    m = rng.randint(max(n, 1), 4 - n) if n < 2 else 2
    s0 = [i for i in range(1, n + 1) if rng.random() < 0.5]
    sbar = [i for i in range(1, m - n + 1) if rng.random() < 0.5]
    members = s0 + [i + n for i in s0] + [i + 2 * n for i in sbar]
    return n, m, len(s0), len(sbar), IndexSet(n + m, members)


def suite_weld_characters(rng, count):
    """Welding block-compatible subgroup elements stays in the subgroup and
    all three characters are multiplicative across the weld."""
    failures = []
    for trial in range(count):
        n, m, n0, nbar, s = _random_weld_profile(rng)
        f = _random_shapes(rng)
        q = f.q
        tw = (rng.randrange(max(q - 1, 1)), rng.randrange(max(q - 1, 1)),
              rng.randrange(1, q))
        small = ShalikaContext(f, n0, n0 + nbar, a1=tw[0], a2=tw[1], c=tw[2])
        big_rest = ShalikaContext(f, n - n0, m - n0 - nbar,
                                  a1=tw[0], a2=tw[1], c=tw[2])
        ctx = ShalikaContext(f, n, m, a1=tw[0], a2=tw[1], c=tw[2])
        h1 = random_h(small, rng)
        h2 = random_h(big_rest, rng)
        h = weld(s, s, h1, h2)
        if h_contains(ctx, h) is None:
            failures.append(("membership", trial))
            continue
        if psi(ctx, h) != psi(small, h1) * psi(big_rest, h2):
            failures.append(("psi", trial))
        if psi_u(ctx, h) != psi_u(small, h1) * psi_u(big_rest, h2):
            failures.append(("psi-u", trial))
        p1 = random_hprime(small, rng)
        p2 = random_hprime(big_rest, rng)
        hp = weld(s, s, p1, p2)
        if hprime_contains(ctx, hp) is None:
            failures.append(("membership-transposed", trial))
            continue
        if psi_tau(ctx, hp) != psi_tau(small, p1) * psi_tau(big_rest, p2):
            failures.append(("psi-tau", trial))
    return {"name": "weld-characters", "instances": count, "failures": failures}


def _random_reflected_sets(rng, n, m):
    """S1, S2 with S2 the top-bottom reflection of S1 inside the first 2n
    indices and identical tails."""
    r = [i for i in range(1, 2 * n + 1) if rng.random() < 0.5]
    sbar = [i for i in range(2 * n + 1, n + m + 1) if rng.random() < 0.5]
    s1 = IndexSet(n + m, sorted(r) + sbar)
    s2 = IndexSet(n + m, sorted(2 * n + 1 - i for i in r) + sbar)
    return s1, s2


def suite_tau_weld(rng, count):
    """The anti-involution distributes over welds of reflected index sets."""
    failures = []
    for trial in range(count):
        f = _random_shapes(rng)
        n = rng.randint(0, 2)
        m = rng.randint(max(n, 1), 4 - n) if n < 2 else 2
        s1, s2 = _random_reflected_sets(rng, n, m)
        r = sum(1 for i in s1.members if i <= 2 * n)
        a = random_matrix(f, len(s1.members), len(s2.members), rng)
        b = random_matrix(f, n + m - len(s1.members), n + m - len(s2.members), rng)
        lhs = tau(weld(s1, s2, a, b), n, m)
        rhs = weld(s1, s2, tau_by(a, r), tau_by(b, 2 * n - r))
        if lhs != rhs:
            failures.append(("tau-weld", trial))
    return {"name": "tau-weld", "instances": count, "failures": failures}


def suite_tau_laws(rng, count):
    """tau is an anti-involution: order two and product reversing."""
    failures = []
    for trial in range(count):
        f = _random_shapes(rng)
        n = rng.randint(0, 2)
        m = rng.randint(max(n, 1), 4 - n) if n < 2 else 2
        g = random_gl(f, n + m, rng)
        h = random_gl(f, n + m, rng)
        if tau(tau(g, n, m), n, m) != g:
            failures.append(("involution", trial))
        if tau(g @ h, n, m) != tau(h, n, m) @ tau(g, n, m):
            failures.append(("anti-homomorphism", trial))
    return {"name": "tau-laws", "instances": count, "failures": failures}


def suite_character_multiplicativity(rng, count):
    """psi, psi_u and the pair character chi are homomorphisms."""
    failures = []
    for trial in range(count):
        f = _random_shapes(rng)
        q = f.q
        n = rng.randint(0, 2)
        m = rng.randint(max(n, 1), 4 - n) if n < 2 else 2
        ctx = ShalikaContext(f, n, m, a1=rng.randrange(max(q - 1, 1)),
                             a2=rng.randrange(max(q - 1, 1)),
                             c=rng.randrange(1, q))
        h1 = random_h(ctx, rng)
        h2 = random_h(ctx, rng)
        if psi(ctx, h1 @ h2) != psi(ctx, h1) * psi(ctx, h2):
            failures.append(("psi", trial))
        if psi_u(ctx, h1 @ h2) != psi_u(ctx, h1) * psi_u(ctx, h2):
            failures.append(("psi-u", trial))
        dctx = DeltaPContext(f, n, m, x1=rng.randrange(max(q - 1, 1)),
                             x2=rng.randrange(max(q - 1, 1)))
        p1 = _random_deltap(dctx, rng)
        p2 = _random_deltap(dctx, rng)
        prod = (p1[0] @ p2[0], p1[1] @ p2[1])
        if chi(dctx, prod) != chi(dctx, p1) * chi(dctx, p2):
            failures.append(("chi", trial))
    return {"name": "character-multiplicativity", "instances": count,
            "failures": failures}


def _random_deltap(ctx, rng):
    f = ctx.field
    n, m = ctx.n, ctx.m
    g1 = random_gl(f, n, rng)
    g2 = random_gl(f, m, rng)
    u = random_matrix(f, n, m, rng)
    big = Mat.assemble(f, [[g1, u], [Mat.zeros(f, m, n), g2]])
    return (g1, big)


def suite_conjugators(rng, count):
    """The two fixed conjugators implementing the symmetrization criterion:
    a carries transpose to tau, b carries tau of the opposite subgroup back
    into the subgroup with matching character values."""
    failures = []
    for trial in range(count):
        f = _random_shapes(rng)
        q = f.q
        n = rng.randint(0, 2)
        m = rng.randint(max(n, 1), 4 - n) if n < 2 else 2
        ctx = ShalikaContext(f, n, m, a1=rng.randrange(max(q - 1, 1)),
                             a2=rng.randrange(max(q - 1, 1)),
                             c=rng.randrange(1, q))
        a, b = gk_conjugators(ctx)
        g = random_gl(f, n + m, rng)
        if tau(g, n, m) != a @ g.T @ a.inv():
            failures.append(("transpose-conjugator", trial))
        hp = random_hprime(ctx, rng)
        cand = b @ tau(hp.inv(), n, m) @ b.inv()
        if h_contains(ctx, cand) is None:
            failures.append(("b-membership", trial))
            continue
        if psi(ctx, cand) != psi(ctx, tau(hp, n, m)):
            failures.append(("b-character", trial))
    return {"name": "conjugator-conditions", "instances": count,
            "failures": failures}


ALL_SUITES = (suite_scatter_identities, suite_weld_product,
              suite_weld_characters, suite_tau_weld, suite_tau_laws,
              suite_character_multiplicativity, suite_conjugators)


def run_properties(seed, count=1000):
    out = []
    for suite in ALL_SUITES:
        rng = random.Random("%d:%s" % (seed, suite.__name__))
        out.append(suite(rng, count))
    return out


# -- report -----------------------------------------------------------------

def _twist_text(tw):
    return "a1=%d a2=%d c=%d" % tw


def render_report(results, seed):
    lines = []
    push = lines.append
    push("shalika verification report")
    push("version %s" % __version__)
    push("seed %d" % seed)
    push("# timing total %.2fs" % results.get("elapsed", 0.0))
    for name, secs in results.get("timings", {}).items():
        push("# timing %s %.2fs" % (name, secs))
    verdict_all = True

    if "geometric" in results:
        push("")
        push("[geometric]")
        for row in results["geometric"]:
            head = "config q=%d n=%d m=%d %s" % (row["q"], row["n"], row["m"],
                                                 _twist_text(row["twist"]))
            if "skip" in row:
                push("%s | skip: %s" % (head, row["skip"]))
                continue
            verdict = (not row["counterexamples"]
                       and not row["condition_failures"])
            verdict_all &= verdict
            push("%s | reps=%d admissible=%d counterexamples=%d"
                 " condition_failures=%d verdict=%s"
                 % (head, row["reps"], row["admissible"],
                    len(row["counterexamples"]), row["condition_failures"],
                    "holds" if verdict else "FAILS"))
            for pos, idx in row["counterexamples"]:
                push("  counterexample rep=%d index=(%d,%d,%d,%d)"
                     % (pos, idx.k1, idx.k2, idx.t, idx.s))

    if "completeness" in results:
        push("")
        push("[completeness]")
        for row in results["completeness"]:
            head = "config q=%d n=%d m=%d" % (row["q"], row["n"], row["m"])
            if "skip" in row:
                push("%s | skip: %s" % (head, row["skip"]))
                continue
            verdict_all &= row["covers"]
            push("%s | group=%d listed=%d distinct=%d repetitions=%d"
                 " sizes=%s verdict=%s"
                 % (head, row["group_order"], row["listed"], row["distinct"],
                    row["repetitions"], ",".join(map(str, row["sizes"])),
                    "holds" if row["covers"] else "FAILS"))

    if "hecke" in results:
        push("")
        push("[hecke]")
        for row in results["hecke"]:
            if "chi" in row:
                head = ("config deltap q=%d n=%d m=%d x1=%d x2=%d"
                        % (row["q"], row["n"], row["m"], *row["chi"]))
            else:
                head = ("config shalika q=%d n=%d m=%d %s"
                        % (row["q"], row["n"], row["m"],
                           _twist_text(row["twist"])))
            if "skip" in row:
                push("%s | skip: %s" % (head, row["skip"]))
                continue
            verdict_all &= row["ok"]
            push("%s | cosets=%d dimension=%d compatible=%d commutative=%s"
                 " verdict=%s"
                 % (head, row["double_cosets"], row["dimension"],
                    row["compatible_direct"],
                    "yes" if row["commutative"] else "NO",
                    "holds" if row["ok"] else "FAILS"))

    if "properties" in results:
        push("")
        push("[properties]")
        for row in results["properties"]:
            verdict = not row["failures"]
            verdict_all &= verdict
            push("suite %s | instances=%d failures=%d verdict=%s"
                 % (row["name"], row["instances"], len(row["failures"]),
                    "holds" if verdict else "FAILS"))
            for what, trial in row["failures"][:5]:
                push("  failure %s at trial %d" % (what, trial))

    push("")
    push("[summary]")
    push("verdict %s" % ("holds" if verdict_all else "FAILS"))
    return "\n".join(lines) + "\n", verdict_all


def strip_timing(text):
    """Drop the lines excluded from determinism comparisons."""
    return "".join(line for line in text.splitlines(keepends=True)
                   if not line.startswith("# timing"))


def run_campaign(campaign):
    """Execute all selected pipelines and return (report text, exit code)."""
    t0 = time.time()
    results = {"timings": {}}

    def run_ordered(fn, args_list):
        if campaign.jobs > 1:
            with ThreadPoolExecutor(max_workers=campaign.jobs) as pool:
                return list(pool.map(lambda a: fn(*a), args_list))
        return [fn(*a) for a in args_list]

    if "geometric" in campaign.checks:
        t = time.time()
        rows = run_ordered(
            lambda q, n, m: run_geometric_cell(q, n, m,
                                               campaign.max_subgroup_order),
            campaign.shalika_cells)
        results["geometric"] = [r for cell in rows for r in cell]
        results["timings"]["geometric"] = time.time() - t
    if "completeness" in campaign.checks:
        t = time.time()
        results["completeness"] = run_ordered(
            lambda q, n, m: run_completeness_cell(q, n, m,
                                                  campaign.max_group_order),
            campaign.shalika_cells)
        results["timings"]["completeness"] = time.time() - t
    if "hecke" in campaign.checks:
        t = time.time()
        shal = [(q, n, m, tw) for q, n, m in campaign.shalika_cells
                for tw in twist_list(q)]
        rows = run_ordered(
            lambda q, n, m, tw: run_hecke_shalika(
                q, n, m, tw, campaign.hecke_max_group_order), shal)
        delt = [(q, n, m, x) for q, n, m in campaign.deltap_cells
                for x in chi_list(q)]
        rows += run_ordered(
            lambda q, n, m, x: run_hecke_deltap(
                q, n, m, x, campaign.hecke_max_group_order), delt)
        results["hecke"] = rows
        results["timings"]["hecke"] = time.time() - t
    if "properties" in campaign.checks:
        t = time.time()
        results["properties"] = run_properties(campaign.seed,
                                               campaign.property_instances)
        results["timings"]["properties"] = time.time() - t

    results["elapsed"] = time.time() - t0
    text, ok = render_report(results, campaign.seed)
    return text, (0 if ok else 1), results
