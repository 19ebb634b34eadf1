"""Arrangements of singles and the 2^delta-element cells they cut out.

An arrangement pairs every bottom-row single of a special symbol with a
top-row single (one top single stays isolated when the defect is 1).  A
subset Psi of its pairs determines a cell: the family members Lambda_M
whose M meets each pair of Psi in 0 or 2 elements and each remaining pair
in exactly 1.  Cells partition the family and support the separating and
singleton-intersection constructions used to pin down single symbols.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

from .relations import EMPTY_PAIRSET, Pair, PairSet, pair_entries, subsets_of_pairs
from .symbols import BOT, TOP, SpecialSymbol, Symbol


@dataclass(frozen=True)
class Arrangement:
    """Pairs (top single, bottom single) plus an isolated top single (defect 1)."""

    pairs: Tuple[Pair, ...]
    isolated: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs, reverse=True)))

    def pair_set(self) -> PairSet:
        return frozenset(self.pairs)

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def __str__(self) -> str:
        parts = ["(%d;%d)" % p for p in self.pairs]
        if self.isolated is not None:
            parts.append("(%d;-)" % self.isolated)
        return "{" + ", ".join(parts) + "}"


def arrangements(Z: SpecialSymbol) -> Tuple[Arrangement, ...]:
    """Every pairing of the singles of Z into row-crossing pairs."""
    tops = Z.single_values(TOP)
    bots = Z.single_values(BOT)
    out = []
    if Z.defect == 1:
        for isolated in tops:
            rest = [s for s in tops if s != isolated]
            for perm in itertools.permutations(rest):
                out.append(Arrangement(tuple(zip(perm, bots)), isolated))
    else:
        for perm in itertools.permutations(tops):
            out.append(Arrangement(tuple(zip(perm, bots)), None))
    return tuple(sorted(set(out), key=str))


def semi_consecutive_arrangements(Z: SpecialSymbol) -> Tuple[Arrangement, ...]:
    """The arrangements built from adjacent singles only.

    Two of them for defect 1 (isolated single at either end), one for
    defect 0.
    """
    s = Z.single_values(TOP)
    t = Z.single_values(BOT)
    if Z.defect == 1:
        phi1 = Arrangement(tuple(zip(s[: len(t)], t)), s[-1])
        phi2 = Arrangement(tuple(zip(s[1:], t)), s[0])
        return (phi1, phi2)
    return (Arrangement(tuple(zip(s, t)), None),)


@dataclass(frozen=True)
class Cell:
    base: SpecialSymbol
    phi: Arrangement
    psi: PairSet
    members: FrozenSet[Symbol]

    def __contains__(self, sym: Symbol) -> bool:
        return sym in self.members

    def __len__(self) -> int:
        return len(self.members)


def cell(Z: SpecialSymbol, phi: Arrangement, psi: Iterable[Pair]) -> Cell:
    """Members: all of each psi pair or none, exactly one of every other pair.

    For defect 1 the isolated single is included exactly when needed to
    keep |M| even (family membership); for defect 0 the member parity, and
    with it the S^+/S^- side, is determined by |phi \\ psi|.
    """
    psi = frozenset(psi)
    if not psi <= phi.pair_set():
        raise ValueError("psi %r is not a subset of pairs of %s" % (sorted(psi), phi))
    split = sorted(phi.pair_set() - psi)
    psi_sorted = sorted(psi)
    members = []
    for inside in subsets_of_pairs(frozenset(psi_sorted)):
        base_m = set(pair_entries(inside))
        for choice in itertools.product((TOP, BOT), repeat=len(split)):
            m = set(base_m)
            for (s, t), side in zip(split, choice):
                m.add((s, TOP) if side == TOP else (t, BOT))
            if Z.defect == 1:
                if len(m) % 2 == 1:
                    m.add((phi.isolated, TOP))
            members.append(Z.lambda_of(frozenset(m)))
    assert len(members) == 2 ** Z.degree
    return Cell(Z, phi, psi, frozenset(members))


def cell_sign(phi: Arrangement, psi: Iterable[Pair]) -> int:
    """+1 if the cell lands in S^+, -1 if in S^- (defect-0 arrangements)."""
    return 1 if (len(phi.pairs) - len(frozenset(psi))) % 2 == 0 else -1


def admissible(phi: Arrangement, psi: Iterable[Pair], eps: int) -> bool:
    """Whether the complement size parity matches the sign of the base group."""
    if phi.isolated is not None:
        raise ValueError("admissibility is a defect-0 notion")
    return cell_sign(phi, psi) == eps


def cell_partition_check(Z: SpecialSymbol, phi: Arrangement) -> bool:
    """Cells over all psi are disjoint and cover the family (split by sign)."""
    cells = [cell(Z, phi, psi) for psi in subsets_of_pairs(phi.pair_set())]
    seen = set()
    for c in cells:
        if seen & c.members:
            return False
        seen |= c.members
    if Z.defect == 1:
        return seen == set(Z.family("S"))
    plus, minus = set(), set()
    for c in cells:
        (plus if cell_sign(c.phi, c.psi) == 1 else minus).update(c.members)
    return plus == set(Z.family("S+")) and minus == set(Z.family("S-"))


def _psi_containing(Z: SpecialSymbol, phi: Arrangement, sym: Symbol) -> PairSet:
    """The unique psi <= phi with sym in the corresponding cell."""
    m = Z.m_of(sym)
    psi = []
    for (s, t) in phi.pairs:
        hit = len(m & {(s, TOP), (t, BOT)})
        if hit != 1:
            psi.append((s, t))
    return frozenset(psi)


def locate(Z: SpecialSymbol, phi: Arrangement, sym: Symbol) -> Cell:
    """The cell of the arrangement phi containing sym."""
    c = cell(Z, phi, _psi_containing(Z, phi, sym))
    assert sym in c
    return c


def singleton_intersection(
    Z: SpecialSymbol, lam: Symbol, psi0: PairSet = EMPTY_PAIRSET
) -> Tuple[Arrangement, PairSet, Arrangement, PairSet]:
    """Two cells whose intersection is exactly {lam}.

    Uses the two semi-consecutive arrangements; with a nonempty core psi0
    (and lam avoiding its entries) the arrangements are built on the
    core-free singles and extended by psi0, and the intersection is taken
    inside the core-free sub-family.
    """
    if Z.defect != 1:
        raise ValueError("singleton intersection applies to defect-1 symbols")
    if psi0:
        sub = _strip_core(Z, psi0)
        phis = [
            Arrangement(p.pairs + tuple(sorted(psi0, reverse=True)), p.isolated)
            for p in semi_consecutive_arrangements(sub)
        ]
    else:
        phis = list(semi_consecutive_arrangements(Z))
    phi1, phi2 = phis
    psi1 = _psi_containing(Z, phi1, lam)
    psi2 = _psi_containing(Z, phi2, lam)
    inter = cell(Z, phi1, psi1).members & cell(Z, phi2, psi2).members
    if psi0:
        banned = pair_entries(psi0)
        inter = {s for s in inter if not (Z.m_of(s) & banned)}
    assert inter == {lam}, "intersection %r is not {%s}" % (sorted(map(str, inter)), lam)
    return phi1, psi1, phi2, psi2


def _strip_core(Z: SpecialSymbol, psi0: PairSet) -> SpecialSymbol:
    """Z with the core-pair entries deleted (still special, same defect)."""
    drop = pair_entries(psi0)
    top = [v for v in Z.symbol.top if (v, TOP) not in drop]
    bot = [v for v in Z.symbol.bot if (v, BOT) not in drop]
    return SpecialSymbol(Symbol(top, bot))


def separating_pair(
    Z: SpecialSymbol,
    lam1: Symbol,
    lam2: Symbol,
    psi0: PairSet = EMPTY_PAIRSET,
) -> Tuple[Arrangement, PairSet, PairSet]:
    """An arrangement with two disjoint cells containing lam1 and lam2.

    Requires lam1 != lam2 for defect 1 and lam1 not in {lam2, lam2^t} for
    defect 0 (with transposes the construction is impossible: transposes
    always share every cell).  A core psi0 constrains both cells' psi to
    contain it.
    """
    m1, m2 = Z.m_of(lam1), Z.m_of(lam2)
    banned = pair_entries(psi0)
    if m1 & banned or m2 & banned:
        raise ValueError("arguments must avoid the core entries")
    if lam1 == lam2:
        raise ValueError("cannot separate a symbol from itself")
    core_free = frozenset(Z.singles) - banned
    if Z.defect == 0 and m1 == core_free - m2:
        # The core-free complement plays the role of the transpose here;
        # such a pair shares every core-respecting cell.
        raise ValueError("cannot separate a symbol from its core-free transpose")
    tops = [v for (v, r) in core_free if r == TOP]
    bots = [v for (v, r) in core_free if r == BOT]
    split_pair = None
    for s in tops:
        for t in bots:
            c1 = len(m1 & {(s, TOP), (t, BOT)})
            c2 = len(m2 & {(s, TOP), (t, BOT)})
            if c1 % 2 != c2 % 2:
                split_pair = (s, t)
                break
        if split_pair:
            break
    assert split_pair is not None, "no splitting pair for %s, %s" % (lam1, lam2)
    phi = _complete_arrangement(Z, frozenset({split_pair}) | psi0)
    psi1 = _psi_containing(Z, phi, lam1)
    psi2 = _psi_containing(Z, phi, lam2)
    assert psi0 <= psi1 and psi0 <= psi2
    assert not (cell(Z, phi, psi1).members & cell(Z, phi, psi2).members)
    return phi, psi1, psi2


def _complete_arrangement(Z: SpecialSymbol, forced: PairSet) -> Arrangement:
    """Any arrangement of Z containing the given disjoint pairs."""
    used = pair_entries(forced)
    tops = [v for v in Z.single_values(TOP) if (v, TOP) not in used]
    bots = [v for v in Z.single_values(BOT) if (v, BOT) not in used]
    pairs = list(forced)
    if Z.defect == 1:
        isolated = tops[0]
        pairs += list(zip(tops[1:], bots))
        return Arrangement(tuple(pairs), isolated)
    pairs += list(zip(tops, bots))
    return Arrangement(tuple(pairs), None)
