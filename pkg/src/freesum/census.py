"""Counting compatible web pairs and sum-triangulations up to symmetry."""

from __future__ import annotations

import json
import os
import resource
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .complex import Triangulation
from .configuration import FreeSum, PointConfiguration, free_sum
from .regularity import is_regular
from .sumtri import SumTriangulation, construct_sum_triangulation
from .symmetry import (
    SymmetryGroup,
    automorphism_group,
    canonical_form,
    orbit_representatives,
    product_group,
)
from .webs import WebContext, _psum_images, complement_transpose, enumerate_proper_psum_webs

MEMORY_ENV = "FREESUM_MEMORY_BUDGET"

# homomorphism-count aggregation conventions
CONVENTIONS = {
    "psum": "P-sum webs, summed over pairs of summand representatives",
    "psum+qsum": "P-sum plus Q-sum webs over pairs of summand representatives",
    "psum_orbits_source": "P-sum webs up to symmetries of the P triangulation",
    "psum_orbits_target": "P-sum webs up to symmetries of the Q triangulation",
    "psum_orbits": "P-sum webs up to symmetries of both summand triangulations",
    "psum+qsum_orbits": "P-sum and Q-sum webs up to Aut(P) x Aut(Q)",
    "psum+qsum_orbits_swap": "P-sum and Q-sum webs up to all linear symmetries of the sum",
}

# the one convention that reproduces all three published counts (16, 1157, 1581647)
SELECTED_CONVENTION = "psum_orbits_target"

# published totals keyed by configuration names
PUBLISHED = {
    ("dp(2)", "dp(2)"): {"homomorphisms": 1157, "triangulations": 204},
    ("dp(2)", "cross(4)"): {"homomorphisms": 16, "triangulations": 13},
    ("dp(2)", "dp_minus(4)"): {"homomorphisms": 1581647, "triangulations": 250594},
}


class ResourceAbort(RuntimeError):
    """The memory budget ran out; ``checkpoint`` holds the partial counts."""

    def __init__(self, message: str, checkpoint: dict):
        super().__init__(message)
        self.checkpoint = checkpoint


@dataclass
class CountReport:
    p: str
    q: str
    p_representatives: int
    q_representatives: int
    sum_group_order: int
    product_group_order: int
    convention: str = SELECTED_CONVENTION
    homomorphism_count: int | None = None
    homomorphisms: dict = field(default_factory=dict)
    published: dict = field(default_factory=dict)
    matching_conventions: list = field(default_factory=list)
    distinct_triangulations: int | None = None
    distinct_triangulations_product: int | None = None
    regular_triangulations: int | None = None
    regularity_vs_total_order: dict | None = None
    pairs_processed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def memory_in_use() -> int:
    """Peak resident memory of this process in bytes."""
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


def default_budget() -> int | None:
    raw = os.environ.get(MEMORY_ENV)
    return int(raw) if raw else None


def images_totally_ordered(st: SumTriangulation) -> bool:
    """Are the images of both webs chains under inclusion?"""
    for web in (st.alpha, st.beta):
        ims = sorted(set(web.images), key=lambda m: bin(m).count("1"))
        for a, b in zip(ims, ims[1:]):
            if a & b != a:
                return False
    return True


class _Stub:
    """Stand-in for an unbuilt sum triangulation; exposes only the configuration."""

    def __init__(self, config):
        self.config = config


def _pair_webs(tp: Triangulation, tq: Triangulation, fs: FreeSum) -> Iterable[SumTriangulation]:
    """All P-sum and Q-sum web data for one pair, without building cells."""
    for w in enumerate_proper_psum_webs(tp, tq, WebContext.build(tp, tq)):
        yield SumTriangulation(_Stub(fs), "P", tp, tq, w, complement_transpose(w))
    for w in enumerate_proper_psum_webs(tq, tp, WebContext.build(tq, tp)):
        alpha = complement_transpose(w)
        yield SumTriangulation(_Stub(fs), "Q", tp, tq, alpha, w)


def _summand_stabilizer(g_prod: SymmetryGroup, fs: FreeSum, t: Triangulation, side: str) -> SymmetryGroup:
    """Elements fixing the other summand pointwise and mapping ``t`` to itself."""
    index = fs.p_index if side == "P" else fs.q_index
    cells = {frozenset(index[i] for i in c) for c in t.cells}
    other = set(range(len(fs))) - set(index)

    def keep(g):
        return all(g[i] == i for i in other) and all(frozenset(g[i] for i in c) in cells for c in cells)

    return g_prod.subgroup(keep)


def _cell_action(group: SymmetryGroup, fs: FreeSum, t: Triangulation, side: str) -> list[list[int]]:
    """How each group element permutes the cells of a summand triangulation."""
    index = fs.p_index if side == "P" else fs.q_index
    back = fs.p_of if side == "P" else fs.q_of
    out = []
    for g in group.elements:
        out.append([t.index[frozenset(back[g[index[i]]] for i in c)] for c in t.cells])
    return out


def _mask_map(perm: list[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def _count_pair(tp, tq, fs, g_prod, budget) -> dict:
    """Streaming counts with memory bounded by the backtracking frontier.

    Orbits under a summand stabilizer come from Burnside's lemma: every web
    is tested against each stabilizer element instead of being stored.
    """
    stab_p = _summand_stabilizer(g_prod, fs, tp, "P")
    stab_q = _summand_stabilizer(g_prod, fs, tq, "Q")
    # only the cells an element moves matter; the identity fixes every web
    moved_p = [[(i, j) for i, j in enumerate(a) if i != j] for a in _cell_action(stab_p, fs, tp, "P")]
    moved_q = [a for a in _cell_action(stab_q, fs, tq, "Q") if a != sorted(a)]
    fixed_p = fixed_q = 0
    counts = {"P": 0, "Q": 0}
    for k, ims in enumerate(_psum_images(WebContext.build(tp, tq))):
        if budget is not None and k % 4096 == 0 and memory_in_use() > budget:
            raise ResourceAbort("memory budget exceeded", counts)
        counts["P"] += 1
        fixed_p += sum(all(ims[j] == ims[i] for i, j in pairs) for pairs in moved_p)
        fixed_q += sum(all(_mask_map(a, m) == m for m in ims) for a in moved_q)
    # identity elements of the target stabilizer fix everything
    fixed_q += counts["P"] * (stab_q.order - len(moved_q))
    for k, _ in enumerate(_psum_images(WebContext.build(tq, tp))):
        if budget is not None and k % 4096 == 0 and memory_in_use() > budget:
            raise ResourceAbort("memory budget exceeded", counts)
        counts["Q"] += 1
    src, rem_p = divmod(fixed_p, stab_p.order)
    tgt, rem_q = divmod(fixed_q, stab_q.order)
    assert rem_p == 0 and rem_q == 0, "orbit count is not an integer"
    return {"P": counts["P"], "Q": counts["Q"], "src": src, "tgt": tgt, "keys_prod": [], "keys_full": [], "tri": []}


def _process_pair(args):
    tp, tq, fs, g_full, g_prod, materialize, budget = args
    if not materialize:
        return _count_pair(tp, tq, fs, g_prod, budget)
    stab_p = _summand_stabilizer(g_prod, fs, tp, "P")
    stab_q = _summand_stabilizer(g_prod, fs, tq, "Q")
    out = {"P": 0, "Q": 0, "keys_prod": [], "keys_full": [], "keys_src": set(), "keys_tgt": set(), "tri": []}
    for st in _pair_webs(tp, tq, fs):
        if budget is not None and memory_in_use() > budget:
            raise ResourceAbort("memory budget exceeded", {"P": out["P"], "Q": out["Q"]})
        out[st.side] += 1
        out["keys_prod"].append((st.side, canonical_form(st, g_prod)))
        out["keys_full"].append(canonical_form(st, g_full))
        if st.side == "P":
            out["keys_src"].add(canonical_form(st, stab_p))
            out["keys_tgt"].add(canonical_form(st, stab_q))
        if materialize:
            built = construct_sum_triangulation(tp, tq, st.alpha, side=st.side, config=fs, validate=False)
            t = built.triangulation
            out["tri"].append(
                (canonical_form(t, g_full), canonical_form(t, g_prod), images_totally_ordered(built), t)
            )
    out["src"] = len(out.pop("keys_src"))
    out["tgt"] = len(out.pop("keys_tgt"))
    return out


def count_up_to_symmetry(
    p: PointConfiguration,
    q: PointConfiguration,
    p_triangulations: list[Triangulation] | None = None,
    q_triangulations: list[Triangulation] | None = None,
    materialize: bool = False,
    check_regular: bool = True,
    memory_budget: int | None = None,
    threads: int = 1,
    published: dict | None = None,
) -> CountReport:
    """Stream all proper webs for pairs of summand representatives.

    Summand triangulations are reduced to orbit representatives first
    (brute-force enumerated if not given).  Homomorphisms are counted under
    every convention in :data:`CONVENTIONS`.  With ``materialize`` the sum
    triangulations are built and deduplicated by canonical form, optionally
    with a regularity check per orbit.  Without it only the conventions
    that can be counted in streaming fashion are reported.  Exceeding ``memory_budget`` bytes
    raises :class:`ResourceAbort` carrying the partial counts.
    """
    from .enumeration import brute_force_triangulations

    fs = free_sum(p, q)
    gp, gq = automorphism_group(p), automorphism_group(q)
    g_full = automorphism_group(fs)
    g_prod = product_group(gp, gq, fs)
    if p_triangulations is None:
        p_triangulations = brute_force_triangulations(p)
    if q_triangulations is None:
        q_triangulations = brute_force_triangulations(q)
    reps_p = orbit_representatives(p_triangulations, gp)
    reps_q = orbit_representatives(q_triangulations, gq)
    budget = memory_budget if memory_budget is not None else default_budget()

    report = CountReport(
        p=p.name or "P",
        q=q.name or "Q",
        p_representatives=len(reps_p),
        q_representatives=len(reps_q),
        sum_group_order=g_full.order,
        product_group_order=g_prod.order,
        published=dict(published or {}),
    )
    totals = {"P": 0, "Q": 0, "src": 0, "tgt": 0}
    keys_prod: set = set()
    keys_full: set = set()
    tris_full: dict = {}
    tris_prod: set = set()

    jobs = [(tp, tq, fs, g_full, g_prod, materialize, budget) for tp in reps_p for tq in reps_q]

    def absorb(res):
        totals["P"] += res["P"]
        totals["Q"] += res["Q"]
        totals["src"] += res["src"]
        totals["tgt"] += res["tgt"]
        keys_prod.update(res["keys_prod"])
        keys_full.update(res["keys_full"])
        for kf, kp, chain, t in res["tri"]:
            tris_prod.add(kp)
            entry = tris_full.setdefault(kf, [t, False])
            entry[1] = entry[1] or chain
        report.pairs_processed += 1

    def checkpoint():
        return {"pairs_processed": report.pairs_processed, "psum": totals["P"], "qsum": totals["Q"]}

    try:
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for res in pool.map(_process_pair, jobs):
                    absorb(res)
        else:
            for job in jobs:
                absorb(_process_pair(job))
    except ResourceAbort as exc:
        part = checkpoint()
        part["psum"] += exc.checkpoint.get("P", 0)
        part["qsum"] += exc.checkpoint.get("Q", 0)
        raise ResourceAbort(str(exc), part) from None

    report.homomorphisms = {
        "psum": totals["P"],
        "psum+qsum": totals["P"] + totals["Q"],
        "psum_orbits_source": totals["src"],
        "psum_orbits_target": totals["tgt"],
    }
    if materialize:
        # these need every web's canonical form held in memory
        report.homomorphisms.update({
            "psum_orbits": sum(1 for side, _ in keys_prod if side == "P"),
            "psum+qsum_orbits": len(keys_prod),
            "psum+qsum_orbits_swap": len(keys_full),
        })
    report.homomorphism_count = report.homomorphisms[report.convention]
    target = report.published.get("homomorphisms")
    if target is not None:
        report.matching_conventions = [k for k, v in report.homomorphisms.items() if v == target]
    if materialize:
        report.distinct_triangulations = len(tris_full)
        report.distinct_triangulations_product = len(tris_prod)
        if check_regular:
            table: dict = {}
            regular = 0
            for t, chain in tris_full.values():
                r = bool(is_regular(t))
                regular += r
                key = f"regular={r},totally_ordered={chain}"
                table[key] = table.get(key, 0) + 1
            report.regular_triangulations = regular
            report.regularity_vs_total_order = dict(sorted(table.items()))
    return report
