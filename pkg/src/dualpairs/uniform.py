"""Exact linear algebra on formal class-function spaces with basis rho_L.

The space attached to a special symbol carries one orthonormal basis
vector rho_L per family member L.  The distinguished vectors R_S (one per
defect-1 resp. defect-0 family member S) span the "uniform" subspace; the
sharp map is the orthogonal projection onto it, computed exactly over the
rationals.  Scalars live in Q + Q*sqrt(2): every constant in the
derivative identities is a power of sqrt(2) and nothing ever floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .cells import Cell, cell_sign
from .derivative import DerivativeStep
from .relations import pair_entries, relation_set
from .symbols import SpecialSymbol, Symbol


@dataclass(frozen=True)
class Rt2:
    """An element a + b*sqrt(2) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __add__(self, other: "Rt2") -> "Rt2":
        return Rt2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Rt2") -> "Rt2":
        return Rt2(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Rt2":
        return Rt2(-self.a, -self.b)

    def __mul__(self, other) -> "Rt2":
        if isinstance(other, Rt2):
            return Rt2(
                self.a * other.a + 2 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        return Rt2(self.a * other, self.b * other)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return "%s*r2" % self.b
        return "%s+%s*r2" % (self.a, self.b)


ZERO = Rt2()
ONE = Rt2(Fraction(1))


def rt2_pow(e: int) -> Rt2:
    """2^(e/2) as an exact scalar, for any integer e."""
    half, odd = divmod(e, 2)
    base = Fraction(2) ** half
    return Rt2(Fraction(0), base) if odd else Rt2(base)


def scalar(x) -> Rt2:
    if isinstance(x, Rt2):
        return x
    return Rt2(Fraction(x))


# -- vectors and tensors -------------------------------------------------------

Vec = Dict[Symbol, Rt2]
Ten = Dict[Tuple[Symbol, Symbol], Rt2]


def add_to(target, key, coeff: Rt2) -> None:
    cur = target.get(key, ZERO) + coeff
    if cur:
        target[key] = cur
    else:
        target.pop(key, None)


def vec_scale(v, c) -> dict:
    c = scalar(c)
    return {k: x * c for k, x in v.items()} if c else {}


def vec_add(u, v) -> dict:
    out = dict(u)
    for k, x in v.items():
        add_to(out, k, x)
    return out


def vec_eq(u, v) -> bool:
    return vec_add(u, vec_scale(v, Rt2(Fraction(-1)))) == {}


def inner(u: Vec, v: Vec) -> Rt2:
    """Inner product in the orthonormal rho basis."""
    if len(v) < len(u):
        u, v = v, u
    total = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y:
            total = total + x * y
    return total


def tensor(u: Vec, v: Vec) -> Ten:
    return {
        (k1, k2): x1 * x2 for k1, x1 in u.items() for k2, x2 in v.items() if x1 * x2
    }


# -- family spaces -------------------------------------------------------------


@dataclass(frozen=True)
class Space:
    """The coefficient space attached to one side of a special pair."""

    base: SpecialSymbol
    side: str            # "Sp" (defect 1) or "O" (defect 0)
    eps: int = 1         # sign of the orthogonal group, "O" side only

    def __post_init__(self):
        if self.side == "Sp" and self.base.defect != 1:
            raise ValueError("Sp side needs a defect-1 base")
        if self.side == "O" and self.base.defect != 0:
            raise ValueError("O side needs a defect-0 base")

    def family(self) -> Tuple[Symbol, ...]:
        return self.base.family("S" if self.side == "Sp" else ("S+" if self.eps == 1 else "S-"))

    def r_index(self) -> Tuple[Symbol, ...]:
        """The symbols indexing R vectors (defect exactly 1 resp. 0)."""
        return self.base.family("S,1" if self.side == "Sp" else "S+,0")


def sp_space(Z: SpecialSymbol) -> Space:
    return Space(Z, "Sp")


def o_space(Zp: SpecialSymbol, eps: int) -> Space:
    return Space(Zp, "O", eps)


def pairing(base: SpecialSymbol, lam1: Symbol, lam2: Symbol) -> int:
    """|M1 and M2| mod 2 for the flip sets of two family members."""
    return len(base.m_of(lam1) & base.m_of(lam2)) % 2


def r_vector(space: Space, sigma: Symbol) -> Vec:
    """The uniform basis vector attached to sigma, in the rho basis.

    Sp side: 2^(-deg) * sum over S_Z of (-1)^<sigma, L> rho_L.
    O side:  2^(-(deg-1)) * same sum over S^eps; the degenerate base has
    R = rho for eps = +1 and no vectors at all for eps = -1.
    """
    base = space.base
    if sigma not in set(space.r_index()):
        raise ValueError("%s does not index an R vector of %s" % (sigma, base))
    if space.side == "Sp":
        norm = Fraction(1, 2**base.degree)
    else:
        if base.is_degenerate and space.eps == -1:
            raise ValueError("degenerate base with eps=-1 carries no vectors")
        # The uniform normalization is kept at degree 0 as well (R = 2*rho
        # there): the main projection identity forces it.
        norm = Fraction(2, 2**base.degree)
    sig_m = base.mask_of(base.m_of(sigma))
    out: Vec = {}
    for lam in space.family():
        par = bin(base.mask_of(base.m_of(lam)) & sig_m).count("1") % 2
        out[lam] = Rt2(-norm if par else norm)
    return out


@lru_cache(maxsize=None)
def _projector(space: Space) -> Dict[Symbol, Vec]:
    """sharp of each rho basis vector, as a column map."""
    fam = space.family()
    base = space.base
    masks = {lam: base.mask_of(base.m_of(lam)) for lam in fam}
    sig_masks = [base.mask_of(base.m_of(s)) for s in space.r_index()]
    denom = 4**base.degree  # (rho-to-R constant) x (R-to-rho constant), both sides
    cols: Dict[Symbol, Vec] = {}
    for lam in fam:
        col: Vec = {}
        for mu in fam:
            k = masks[lam] ^ masks[mu]
            tot = sum(-1 if bin(s & k).count("1") % 2 else 1 for s in sig_masks)
            if tot:
                col[mu] = Rt2(Fraction(tot, denom))
        cols[lam] = col
    return cols


def sharp(space: Space, v: Vec) -> Vec:
    """Orthogonal projection onto the span of the R vectors."""
    cols = _projector(space)
    out: Vec = {}
    for lam, c in v.items():
        for mu, p in cols[lam].items():
            add_to(out, mu, p * c)
    return out


def sharp_tensor(sp: Space, op: Space, t: Ten) -> Ten:
    cols1 = _projector(sp)
    cols2 = _projector(op)
    out: Ten = {}
    for (lam, lamp), c in t.items():
        for mu, p in cols1[lam].items():
            pc = p * c
            for mup, q in cols2[lamp].items():
                add_to(out, (mu, mup), q * pc)
    return out


def cell_sum(space: Space, c: Cell) -> Vec:
    """Sum of rho over a cell's members (admissibility enforced on the O side)."""
    if space.side == "O":
        if cell_sign(c.phi, c.psi) != space.eps:
            raise ValueError("cell is not admissible for eps=%+d" % space.eps)
    return {sym: ONE for sym in c.members}


def cell_alternating_r_sum(space: Space, c: Cell) -> Vec:
    """The alternating combination of R vectors attached to a cell.

    Equals the cell sum on the defect-1 side, and twice it on the
    defect-0 side under the uniform normalization used here.
    """
    base = space.base
    out: Vec = {}
    complement = c.phi.pair_set() - c.psi
    from .relations import subsets_of_pairs

    for psip in subsets_of_pairs(c.phi.pair_set()):
        sign = (-1) ** len(psip & complement)
        sigma = base.lambda_of(pair_entries(psip))
        for sym, coeff in r_vector(space, sigma).items():
            add_to(out, sym, coeff * sign)
    return out


def omega_hat(Z: SpecialSymbol, Zp: SpecialSymbol, eps: int) -> Ten:
    """Indicator tensor of the B relation in the rho x rho basis."""
    kind = "B+" if eps == 1 else "B-"
    rel = relation_set(Z, Zp, kind)
    return {(lam, lamp): ONE for (lam, lamp) in rel.pairs}


def d_r_tensor(Z: SpecialSymbol, Zp: SpecialSymbol, eps: int) -> Ten:
    """Half the sum of R x R over the D relation, expanded in rho x rho."""
    spz, spo = sp_space(Z), o_space(Zp, eps)
    out: Ten = {}
    half = Rt2(Fraction(1, 2))
    if spo.base.is_degenerate and eps == -1:
        return out
    for (sig, sigp) in relation_set(Z, Zp, "D").pairs:
        for (k, v) in tensor(r_vector(spz, sig), r_vector(spo, sigp)).items():
            add_to(out, k, v * half)
    return out


def verify_thm0310(
    Z: SpecialSymbol, Zp: SpecialSymbol, eps: int
) -> Tuple[bool, Optional[tuple]]:
    """Sharp of the B indicator equals half the R x R sum over D, exactly.

    Returns (ok, witness); a witness is (L, L', got, expected) at the first
    differing coefficient.
    """
    spz, spo = sp_space(Z), o_space(Zp, eps)
    lhs = sharp_tensor(spz, spo, omega_hat(Z, Zp, eps))
    rhs = d_r_tensor(Z, Zp, eps)
    if lhs == rhs:
        return True, None
    keys = sorted(set(lhs) | set(rhs), key=lambda k: (str(k[0]), str(k[1])))
    for k in keys:
        got, want = lhs.get(k, ZERO), rhs.get(k, ZERO)
        if got != want:
            return False, (k[0], k[1], got, want)
    raise AssertionError("tensors differ but no witness found")


# -- derivative-step identities ------------------------------------------------


def _natural_vec(
    base: SpecialSymbol, sym: Symbol, removed, kind: Optional[str]
) -> Vec:
    """rho^(1): rho itself for a doubles step, (rho + rho^nat)/sqrt(2) for core."""
    if kind != "core":
        return {sym: ONE}
    flip = base.add(sym, base.lambda_of(pair_entries([removed])))
    c = rt2_pow(-1)
    return {sym: c, flip: c}


def step_rho_tensor_pairs(step: DerivativeStep, eps: int = 1):
    """The B pairs supported away from the removed entries."""
    rel = relation_set(step.Z, step.Zp, "B+" if eps == 1 else "B-")
    skip = pair_entries([step.removed_z]) if step.removed_z else frozenset()
    skipp = pair_entries([step.removed_zp]) if step.removed_zp else frozenset()
    return [
        (lam, lamp)
        for (lam, lamp) in rel.pairs
        if not (step.Z.m_of(lam) & skip) and not (step.Zp.m_of(lamp) & skipp)
    ]


def check_step_scaling(step: DerivativeStep) -> bool:
    """Sum over B of rho x rho equals C times the reduced sum of rho^(1) x rho^(1)."""
    full: Ten = {}
    for pair in relation_set(step.Z, step.Zp, "B+").pairs:
        add_to(full, pair, ONE)
    reduced: Ten = {}
    c = rt2_pow(step.cexp)
    for (lam, lamp) in step_rho_tensor_pairs(step):
        left = _natural_vec(step.Z, lam, step.removed_z, step.scan.z_kind)
        right = _natural_vec(step.Zp, lamp, step.removed_zp, step.scan.zp_kind)
        for k, v in tensor(left, right).items():
            add_to(reduced, k, v * c)
    return full == reduced


def check_step_r_scaling(step: DerivativeStep) -> bool:
    """Same scaling identity for the R x R sum over D."""
    lhs = d_r_tensor(step.Z, step.Zp, 1)
    spz, spo = sp_space(step.Z), o_space(step.Zp, 1)
    skip = pair_entries([step.removed_z]) if step.removed_z else frozenset()
    skipp = pair_entries([step.removed_zp]) if step.removed_zp else frozenset()
    rhs: Ten = {}
    c = rt2_pow(step.cexp) * Rt2(Fraction(1, 2))
    for (sig, sigp) in relation_set(step.Z, step.Zp, "D").pairs:
        if step.Z.m_of(sig) & skip or step.Zp.m_of(sigp) & skipp:
            continue
        left = _r_natural_vec(spz, sig, step.removed_z, step.scan.z_kind)
        right = _r_natural_vec(spo, sigp, step.removed_zp, step.scan.zp_kind)
        for k, v in tensor(left, right).items():
            add_to(rhs, k, v * c)
    return lhs == rhs


def _r_natural_vec(space: Space, sigma: Symbol, removed, kind: Optional[str]) -> Vec:
    if kind != "core":
        return r_vector(space, sigma)
    flip = space.base.add(sigma, space.base.lambda_of(pair_entries([removed])))
    c = rt2_pow(-1)
    return vec_add(
        vec_scale(r_vector(space, sigma), c), vec_scale(r_vector(space, flip), c)
    )


def check_step_pairing_transport(step: DerivativeStep) -> bool:
    """<R^(1)_S, rho^(1)_L> = <R_{f(S)}, rho_{f(L)}> over the step's domain."""
    from .derivative import transport

    for side, base, derived, removed, kind in (
        ("Z", step.Z, step.Z1, step.removed_z, step.scan.z_kind),
        ("Zp", step.Zp, step.Zp1, step.removed_zp, step.scan.zp_kind),
    ):
        if side == "Z":
            space, dspace = sp_space(base), sp_space(derived)
            sig_family, family = "S,1", "S"
        else:
            space, dspace = o_space(base, 1), o_space(derived, 1)
            sig_family, family = "S+,0", "S+"
        skip = pair_entries([removed]) if removed else frozenset()
        sigmas = [s for s in base.family(sig_family) if not (base.m_of(s) & skip)]
        lams = [l for l in base.family(family) if not (base.m_of(l) & skip)]
        for sig in sigmas:
            rv = _r_natural_vec(space, sig, removed, kind)
            rv_t = r_vector(dspace, transport(step, sig, side))
            for lam in lams:
                lhs = inner(rv, _natural_vec(base, lam, removed, kind))
                rhs = inner(rv_t, {transport(step, lam, side): ONE})
                if lhs != rhs:
                    return False
    return True
