"""Exhaustive verification suites over bounded ranks.

Each suite sweeps a bounded family of special pairs (or symbol pairs) and
checks one batch of structural statements, returning a machine-readable
report with counterexample witnesses.  Suites fan out across worker
processes when DUALPAIRS_WORKERS is set above 1; results merge in a fixed
order, so reports are deterministic either way.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from . import branching, cells, derivative, relations, tables, uniform
from .symbols import (
    BOT,
    TOP,
    SpecialSymbol,
    Symbol,
    enumerate_symbols,
    specials_upto,
)


@dataclass
class SuiteReport:
    name: str
    bounds: Dict[str, object]
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    records: List[dict] = field(default_factory=list)  # per-item results

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "SuiteReport") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.records.extend(other.records)

    def finalize(self) -> "SuiteReport":
        # worker-count-independent output order
        self.failures.sort(key=lambda d: json.dumps(d, sort_keys=True))
        self.records.sort(key=lambda d: json.dumps(d, sort_keys=True))
        return self

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "bounds": self.bounds,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures[:20],
        }

    def line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _special_pairs(max_rank: int, summed: bool) -> List[Tuple[SpecialSymbol, SpecialSymbol]]:
    """(defect 1, defect 0) special pairs with both ranks (or the sum) bounded."""
    out = []
    for Z in specials_upto(max_rank, 1):
        cap = max_rank - Z.rank if summed else max_rank
        if cap < 0:
            continue
        for Zp in specials_upto(cap, 0):
            out.append((Z, Zp))
    return out


def _fan_out(worker, items, report: SuiteReport) -> SuiteReport:
    nworkers = int(os.environ.get("DUALPAIRS_WORKERS", "1"))
    if nworkers > 1 and len(items) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [items[i::nworkers] for i in range(nworkers)]
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            for sub in pool.map(worker, chunks):
                report.merge(sub)
    else:
        report.merge(worker(items))
    return report


# -- individual suites ---------------------------------------------------------


def suite_prop0216(max_rank: int = 10, **_) -> SuiteReport:
    """D nonempty implies the special pair itself is related."""
    report = SuiteReport("prop0216", {"max_rank": max_rank})
    pairs = _special_pairs(max_rank, summed=False)
    return _fan_out(_prop0216_worker, pairs, report)


def _prop0216_worker(pairs) -> SuiteReport:
    sub = SuiteReport("prop0216", {})
    for Z, Zp in pairs:
        sub.checked += 1
        if relations.in_D(Z.symbol, Zp.symbol):
            continue
        d = relations.relation_set(Z, Zp, "D")
        if d.pairs:
            sub.failures.append({"Z": str(Z), "Zp": str(Zp), "witness": d.to_json()})
    return sub


def suite_thm0310(max_rank: int = 8, eps: int = 1, **_) -> SuiteReport:
    """Sharp of the B indicator equals half the R x R sum over D (rank sums)."""
    report = SuiteReport("thm0310", {"max_rank_sum": max_rank, "epsilon": eps})
    pairs = _special_pairs(max_rank, summed=True)
    worker = _Thm0310Worker(eps)
    return _fan_out(worker, pairs, report)


@dataclass(frozen=True)
class _Thm0310Worker:
    eps: int

    def __call__(self, pairs) -> SuiteReport:
        sub = SuiteReport("thm0310", {})
        for Z, Zp in pairs:
            sub.checked += 1
            ok, witness = uniform.verify_thm0310(Z, Zp, self.eps)
            record = {"pair": [str(Z), str(Zp)], "ok": ok}
            if not ok:
                lam, lamp, got, want = witness
                record["witness"] = {
                    "at": [str(lam), str(lamp)],
                    "got": str(got),
                    "expected": str(want),
                }
                sub.failures.append({"Z": str(Z), "Zp": str(Zp), **record["witness"]})
            sub.records.append(record)
        return sub


def suite_lemma1112(max_rank: int = 9, **_) -> SuiteReport:
    """Growth-count identity and the emptiness dichotomy for related pairs."""
    report = SuiteReport("lemma1112", {"max_rank_sum": max_rank})
    items = []
    for n in range(max_rank + 1):
        for lam in enumerate_symbols(n, 1):
            items.append((lam, max_rank - n))
    return _fan_out(_lemma1112_worker, items, report)


def _lemma1112_worker(items) -> SuiteReport:
    sub = SuiteReport("lemma1112", {})
    for lam, cap in items:
        for npr in range(cap + 1):
            for lamp in enumerate_symbols(npr, 0):
                if not relations.in_B(lam, lamp, 1):
                    continue
                sub.checked += 1
                lhs1 = len(branching.theta_set(lam, branching.omega_plus(lamp)))
                rhs1 = 1 + len(branching.theta_set(lamp, branching.omega_minus(lam)))
                lhs2 = len(branching.theta_set(lamp, branching.omega_plus(lam)))
                rhs2 = 1 + len(branching.theta_set(lam, branching.omega_minus(lamp)))
                if lhs1 != rhs1 or lhs2 != rhs2:
                    sub.failures.append(
                        {
                            "pair": [str(lam), str(lamp)],
                            "counts": [lhs1, rhs1, lhs2, rhs2],
                        }
                    )
                # dichotomy: a smaller partner exists on the appropriate side
                m = len(lam.bot)
                mp = len(lamp.top)
                if mp not in (m, m + 1):
                    sub.failures.append(
                        {"pair": [str(lam), str(lamp)], "sizes": [m, mp]}
                    )
                elif mp == m + 1:
                    if not branching.theta_set(lam, branching.omega_minus(lamp)):
                        sub.failures.append(
                            {"pair": [str(lam), str(lamp)], "empty": "Omega-(lamp)"}
                        )
                elif not branching.theta_set(lamp, branching.omega_minus(lam)):
                    if lam != Symbol((0,), ()):
                        sub.failures.append(
                            {"pair": [str(lam), str(lamp)], "empty": "Omega-(lam)"}
                        )
    return sub


def suite_lemma0616(max_rank: int = 6, **_) -> SuiteReport:
    """Partner count bound |B+_L| <= |D_Z| and injectivity of normalization."""
    report = SuiteReport("lemma0616", {"max_rank_sum": max_rank})
    pairs = _special_pairs(max_rank, summed=True)
    return _fan_out(_lemma0616_worker, pairs, report)


def _lemma0616_worker(pairs) -> SuiteReport:
    sub = SuiteReport("lemma0616", {})
    for Z, Zp in pairs:
        d_z = [s for s in Zp.family("S+,0") if relations.in_D(Z.symbol, s)]
        bbar = relations.relation_set(Z, Zp, "Bbar+")
        by_first: Dict[Symbol, List[Symbol]] = {}
        for (lam, lamp) in bbar.pairs:
            by_first.setdefault(lam, []).append(lamp)
        for lam, partners in by_first.items():
            sub.checked += 1
            if len(partners) > len(d_z):
                sub.failures.append(
                    {"Z": str(Z), "Zp": str(Zp), "lam": str(lam), "count": len(partners)}
                )
                continue
            terminal = {relations.moveback_normalize(lam, p) for p in partners}
            if len(terminal) != len(partners):
                sub.failures.append(
                    {"Z": str(Z), "Zp": str(Zp), "lam": str(lam), "collision": True}
                )
            bad = [t for t in terminal if not relations.in_D(Z.symbol, t)]
            if bad:
                sub.failures.append(
                    {"Z": str(Z), "Zp": str(Zp), "lam": str(lam),
                     "outside_D": [str(t) for t in bad]}
                )
    return sub


def suite_cells(max_rank: int = 9, max_degree: int = 3, **_) -> SuiteReport:
    """Cell sizes, partitions, singleton intersections, parity congruence.

    Sweeps every special symbol within the rank bound, and always includes
    the minimal regular bases of each degree up to max_degree (the top
    degrees live above small rank bounds on the defect-1 side).
    """
    report = SuiteReport("cells", {"max_rank": max_rank, "max_degree": max_degree})
    zs = [
        Z
        for d in (1, 0)
        for Z in specials_upto(max_rank, d)
        if Z.degree <= max_degree
    ]
    seen = set(zs)
    for deg in range(1, max_degree + 1):
        for Z in (branching.z_cuspidal(deg), branching.zp_cuspidal(deg)):
            if Z not in seen:
                zs.append(Z)
                seen.add(Z)
    return _fan_out(_cells_worker, zs, report)


def _cells_worker(zs) -> SuiteReport:
    sub = SuiteReport("cells", {})
    for Z in zs:
        arrs = cells.arrangements(Z)
        # arrangement count against the factorial oracle
        tops, bots = Z.single_values(TOP), Z.single_values(BOT)
        expect = 1
        for i in range(len(bots)):
            expect *= len(tops) - i
        if len(arrs) != expect:
            sub.failures.append({"Z": str(Z), "arrangements": [len(arrs), expect]})
        for phi in arrs:
            sub.checked += 1
            if not cells.cell_partition_check(Z, phi):
                sub.failures.append({"Z": str(Z), "phi": str(phi), "partition": False})
            for psi in relations.subsets_of_pairs(phi.pair_set()):
                c = cells.cell(Z, phi, psi)
                if len(c) != 2**Z.degree:
                    sub.failures.append({"Z": str(Z), "phi": str(phi), "size": len(c)})
                if Z.defect == 0:
                    if any(s.t not in c.members for s in c.members):
                        sub.failures.append(
                            {"Z": str(Z), "phi": str(phi), "transpose_closed": False}
                        )
        if Z.defect == 1:
            for lam in Z.family("S"):
                cells.singleton_intersection(Z, lam)
                sub.checked += 1
        # parity congruence across members of one cell
        phi = arrs[0] if arrs else None
        if phi is not None:
            for psi in relations.subsets_of_pairs(phi.pair_set()):
                c = cells.cell(Z, phi, psi)
                msets = [Z.m_of(s) for s in c.members]
                for psip in relations.subsets_of_pairs(phi.pair_set()):
                    ent = relations.pair_entries(psip)
                    pars = {len(m & ent) % 2 for m in msets}
                    if len(pars) > 1:
                        sub.failures.append(
                            {"Z": str(Z), "phi": str(phi), "congruence": str(psip)}
                        )
    return sub


def suite_factorization(max_rank: int = 8, **_) -> SuiteReport:
    """Core-constrained cell statements on pairs with nonempty cores."""
    report = SuiteReport("factorization", {"max_rank_sum": max_rank})
    pairs = [
        (Z, Zp)
        for (Z, Zp) in _special_pairs(max_rank, summed=True)
        if relations.in_D(Z.symbol, Zp.symbol)
    ]
    return _fan_out(_factorization_worker, pairs, report)


def _factorization_worker(pairs) -> SuiteReport:
    sub = SuiteReport("factorization", {})
    for Z, Zp in pairs:
        cp = relations.cores(Z, Zp)
        for base, psi0 in ((Z, cp.psi0), (Zp, cp.psi0p)):
            free = set(relations.core_free_family(base, "all", psi0))
            flips = relations.flip_family(base, psi0)
            for phi in cells.arrangements(base):
                if not psi0 <= phi.pair_set():
                    continue
                for psi in relations.subsets_of_pairs(phi.pair_set()):
                    if not psi0 <= psi:
                        continue
                    sub.checked += 1
                    c = cells.cell(base, phi, psi)
                    nat = c.members & free
                    rebuilt = {base.add(l, f) for l in nat for f in flips}
                    if rebuilt != c.members:
                        sub.failures.append(
                            {"base": str(base), "phi": str(phi), "factorization": False}
                        )
                # membership in a cell forces the core into its psi
                for lam in free:
                    spsi = cells._psi_containing(base, phi, lam)
                    if not psi0 <= spsi:
                        sub.failures.append(
                            {"base": str(base), "phi": str(phi), "core_in_psi": False}
                        )
        try:
            relations.b_natural(Z, Zp, 1)
            relations.b_natural(Z, Zp, -1)
            sub.checked += 1
        except AssertionError as exc:
            sub.failures.append({"Z": str(Z), "Zp": str(Zp), "b_natural": str(exc)})
    return sub


def suite_derivative(max_rank: int = 9, **_) -> SuiteReport:
    """Per-step invariants and transport identities of the derivative chain."""
    report = SuiteReport("derivative", {"max_rank_sum": max_rank})
    pairs = [
        (Z, Zp)
        for (Z, Zp) in _special_pairs(max_rank, summed=True)
        if relations.relation_set(Z, Zp, "D").pairs
    ]
    return _fan_out(_derivative_worker, pairs, report)


def _derivative_worker(pairs) -> SuiteReport:
    sub = SuiteReport("derivative", {})
    for Z, Zp in pairs:
        try:
            chain = derivative.derive_full(Z, Zp)
        except Exception as exc:  # any violated internal assertion
            sub.failures.append({"Z": str(Z), "Zp": str(Zp), "chain": repr(exc)})
            continue
        for step in chain.steps:
            sub.checked += 1
            if not _check_step(step, sub):
                continue
        # composed transport carries the core-restricted relation exactly
        zt, zpt = chain.terminal
        nat = relations.b_natural(Z, Zp, 1)
        image = {
            (chain.transport(l, "Z"), chain.transport(r, "Zp")) for (l, r) in nat.pairs
        }
        target = relations.relation_set(zt, zpt, "B+").pairs
        if image != target:
            sub.failures.append({"Z": str(Z), "Zp": str(Zp), "transport": False})
        dchk = relations.relation_set(zt, zpt, "D")
        firsts = [p for (p, _) in dchk.pairs]
        seconds = [q for (_, q) in dchk.pairs]
        if len(set(firsts)) != len(dchk) or len(set(seconds)) != len(dchk):
            sub.failures.append({"Z": str(Z), "Zp": str(Zp), "terminal_D": "not one-to-one"})
    return sub


def _check_step(step, sub: SuiteReport) -> bool:
    ok = True
    expect_sizes = {
        "I": (-1, -1),
        "II": (-1, 0),
        "III": (0, -1),
    }[step.case]
    m1 = len(step.Z.symbol.bot)
    if len(step.Z1.symbol.bot) - m1 != expect_sizes[0]:
        sub.failures.append({"step": step.to_json(), "z_size": False})
        ok = False
    mp1 = len(step.Zp.symbol.top)
    if len(step.Zp1.symbol.top) - mp1 != expect_sizes[1]:
        sub.failures.append({"step": step.to_json(), "zp_size": False})
        ok = False
    ddeg = step.Z1.degree - step.Z.degree
    want = -1 if step.scan.z_kind == "core" else 0
    if ddeg != want:
        sub.failures.append({"step": step.to_json(), "z_degree": [ddeg, want]})
        ok = False
    ddegp = step.Zp1.degree - step.Zp.degree
    wantp = -1 if step.scan.zp_kind == "core" else 0
    if ddegp != wantp:
        sub.failures.append({"step": step.to_json(), "zp_degree": [ddegp, wantp]})
        ok = False
    # bar-relation transport in both directions
    bbar = relations.relation_set(step.Z, step.Zp, "Bbar+")
    skip = relations.pair_entries([step.removed_z]) if step.removed_z else frozenset()
    skipp = relations.pair_entries([step.removed_zp]) if step.removed_zp else frozenset()
    image = set()
    for (lam, lamp) in bbar.pairs:
        if step.Z.m_of(lam) & skip or step.Zp.m_of(lamp) & skipp:
            continue
        image.add(
            (derivative.transport(step, lam, "Z"), derivative.transport(step, lamp, "Zp"))
        )
    target = relations.relation_set(step.Z1, step.Zp1, "Bbar+").pairs
    if image != target:
        sub.failures.append({"step": step.to_json(), "bar_transport": False})
        ok = False
    for name, fn in (
        ("rho_scaling", uniform.check_step_scaling),
        ("r_scaling", uniform.check_step_r_scaling),
        ("pairing", uniform.check_step_pairing_transport),
    ):
        if not fn(step):
            sub.failures.append({"step": step.to_json(), name: False})
            ok = False
    return ok


def suite_theta(max_rank: int = 8, **_) -> SuiteReport:
    """The map's graph equals the core-restricted relation; cell images match."""
    report = SuiteReport("theta", {"max_rank_sum": max_rank})
    pairs = [
        (Z, Zp)
        for (Z, Zp) in _special_pairs(max_rank, summed=True)
        if relations.in_D(Z.symbol, Zp.symbol)
    ]
    return _fan_out(_theta_worker, pairs, report)


def _theta_worker(pairs) -> SuiteReport:
    sub = SuiteReport("theta", {})
    for Z, Zp in pairs:
        for eps in (1, -1):
            if eps == -1 and Zp.is_degenerate:
                continue
            sub.checked += 1
            tm = branching.theta_general(Z, Zp, eps)
            nat = relations.b_natural(Z, Zp, eps)
            if branching.theta_graph(tm) != nat.pairs:
                sub.failures.append(
                    {"Z": str(Z), "Zp": str(Zp), "eps": eps, "graph": False}
                )
                continue
            if not _theta_cells_agree(tm):
                sub.failures.append(
                    {"Z": str(Z), "Zp": str(Zp), "eps": eps, "cells": False}
                )
    return sub


def _theta_cells_agree(tm) -> bool:
    """Cell images under the map match the cells of the image arrangement."""
    src = tm.source_base()
    dst = tm.target_base()
    src_core = tm.psi0 if tm.direction == "up" else tm.psi0p
    dst_core = tm.psi0p if tm.direction == "up" else tm.psi0
    free = set(tm.source_family())
    for phi in cells.arrangements(src):
        if not src_core <= phi.pair_set():
            continue
        for psi in relations.subsets_of_pairs(phi.pair_set()):
            if not src_core <= psi:
                continue
            if tm.direction == "down" and cells.cell_sign(phi, psi) != tm.eps:
                continue
            phi1, psi1 = tm.map_arrangement(phi, psi)
            image_cell = cells.cell(dst, phi1, psi1).members
            src_cell = cells.cell(src, phi, psi).members & free
            if tm.direction == "up":
                got = set()
                for lam in src_cell:
                    for other in (tm(lam), tm(lam).t):
                        for flip in relations.flip_family(dst, dst_core):
                            got.add(dst.add(other, flip))
            else:
                got = {
                    dst.add(tm(lam), flip)
                    for lam in src_cell
                    for flip in relations.flip_family(dst, dst_core)
                }
            if got != image_cell:
                return False
    return True


def suite_correspondence(max_rank: int = 10, **_) -> SuiteReport:
    """Structural checks of the full tables over all rank splits."""
    report = SuiteReport("correspondence", {"max_rank_sum": max_rank})
    items = [
        (n, npr, eps)
        for n in range(max_rank + 1)
        for npr in range(max_rank + 1 - n)
        for eps in (1, -1)
    ]
    return _fan_out(_correspondence_worker, items, report)


def _correspondence_worker(items) -> SuiteReport:
    sub = SuiteReport("correspondence", {})
    for (n, npr, eps) in items:
        sub.checked += 1
        table = tables.correspondence(n, npr, eps)
        try:
            tables.check_table(table)
        except AssertionError as exc:
            sub.failures.append({"n": n, "np": npr, "eps": eps, "error": str(exc)})
    return sub


def suite_oracle(max_rank: int = 8, **_) -> SuiteReport:
    """Bipartition predicate vs the direct entrywise test, where both apply."""
    report = SuiteReport("oracle", {"max_rank": max_rank})
    pairs = _special_pairs(max_rank, summed=False)
    return _fan_out(_oracle_worker, pairs, report)


def _oracle_worker(pairs) -> SuiteReport:
    sub = SuiteReport("oracle", {})
    for Z, Zp in pairs:
        m = len(Z.symbol.bot)
        mp = len(Zp.symbol.top)
        if mp not in (m, m + 1):
            continue
        lams = [s for s in Z.family("all") if s.size == (m + 1, m)]
        lamps = [s for s in Zp.family("all") if s.size == (mp, mp)]
        for lam in lams:
            for lamp in lamps:
                sub.checked += 1
                if relations.interlace_oracle(lam, lamp) != relations.in_B(lam, lamp, 1):
                    sub.failures.append({"pair": [str(lam), str(lamp)]})
    return sub


def suite_counting(max_m: int = 3, **_) -> SuiteReport:
    """Family sizes of the staircase special symbols are central binomials."""
    from math import comb

    report = SuiteReport("counting", {"max_m": max_m})
    for m in range(max_m + 1):
        report.checked += 1
        Z = branching.z_cuspidal(m)
        Zp = branching.zp_cuspidal(m + 1)
        if len(Z.family("S,1")) != comb(2 * m + 1, m):
            report.failures.append({"m": m, "side": "Sp"})
        if len(Zp.family("S+,0")) != comb(2 * m + 2, m + 1):
            report.failures.append({"m": m, "side": "O"})
    return report


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "prop0216": suite_prop0216,
    "thm0310": suite_thm0310,
    "lemma1112": suite_lemma1112,
    "lemma0616": suite_lemma0616,
    "cells": suite_cells,
    "factorization": suite_factorization,
    "derivative": suite_derivative,
    "theta": suite_theta,
    "correspondence": suite_correspondence,
    "oracle": suite_oracle,
    "counting": suite_counting,
}


def run_suite(name: str, **bounds) -> SuiteReport:
    if name not in SUITES:
        raise ValueError("unknown suite %r (have: %s)" % (name, ", ".join(sorted(SUITES))))
    kwargs = {k: v for k, v in bounds.items() if v is not None}
    return SUITES[name](**kwargs).finalize()
