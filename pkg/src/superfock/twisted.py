"""Order-two twisted modules: the parity-twisted sector of V and the
mirror-twisted sector of V (x) V built on the same underlying space.

The parity-twisted module lives on B (x) F_R.  Generator modes are the
integer-moded free-field actions (the fermion zero mode exchanges the two
ground states with coefficient 1/sqrt2); composite modes come from the same
component-identity recursion as the untwisted engine, now on half-integer
lattices, so the Ramond ground weight 1/16 is an output of the recursion,
never an input.

The mirror-twisted module is assembled through the weight-halving twist:
modes of a slot-1 vector are the twisted-sector modes of its twisted image,
evaluated at a halved variable; slot 2 follows by the root-phase flip; a
two-slot vector s (x) t is reached through s (x) t = (s^1 + s^2)_{-1} (1 (x) t)
minus the single-slot state 1 (x) (s_{-1} t), whose compositions the
recursion resolves.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .checks import (
    CheckReport,
    ModeHandle,
    TableReport,
    borcherds_check,
    bracket_table_check,
    diagonal_eigenvalues,
)
from .delta import apply_delta
from .errors import NonHomogeneous
from .fock import FockSpaceSpec, FockState, TruncatedSpace, character
from .modes import CompositeFamily, Family, GeneratorFamily, LinearFamily, VacuumFamily
from .operators import Vec, v_is_zero, v_iadd, v_scale
from .scalars import ExactScalar, ONE
from .series import Series
from .superalgebra import N1_RAMOND, N2_MIRROR_TWISTED, N1_NS, VIRASORO
from .vosa import TensorVosa, Vosa, N2Data
from .fock import mode_apply

HALF = Fraction(1, 2)


class SigmaModule:
    """The parity-twisted V-module on B (x) F_R, truncated by level."""

    order = 2

    def __init__(self, V: Vosa, levels: int = 6):
        self.V = V
        self.levels = levels
        offset = Fraction(1, 16)
        self.space = TruncatedSpace(FockSpaceSpec("sigma", offset + levels))
        self._fams: Dict[FockState, Family] = {}
        self._b_fam = GeneratorFamily(self, Fraction(1), 0, Fraction(0),
                                      self._alpha_action)
        self._f_fam = GeneratorFamily(self, HALF, 1, HALF, self._psi_action)

    # engine interface ------------------------------------------------

    def col_weight(self, i: int) -> Fraction:
        return self.space.weights[i]

    @property
    def weight_bound(self) -> Fraction:
        return self.space.bound

    @property
    def min_col_weight(self) -> Fraction:
        return self.space.min_weight

    def twist_exponent(self, vec: Vec) -> int:
        return self.V.parity_of(vec)

    # generator actions --------------------------------------------------

    def _alpha_action(self, t: Fraction, col: int):
        return [(self.space.index[st], c) for st, c in
                mode_apply(self.space, "a", t, self.space.states[col],
                           self.V.psi_delta)]

    def _psi_action(self, t: Fraction, col: int):
        return [(self.space.index[st], c) for st, c in
                mode_apply(self.space, "psi", t + HALF, self.space.states[col],
                           self.V.psi_delta)]

    # families: twisted modes of states of V ------------------------------

    def family_of_state(self, st: FockState) -> Family:
        fam = self._fams.get(st)
        if fam is not None:
            return fam
        V = self.V
        if st == V.vac_state:
            fam = VacuumFamily(self)
        elif st == V.b_state:
            fam = self._b_fam
        elif st == V.f_state:
            fam = self._f_fam
        else:
            if st.bosons:
                u_state = V.b_state
                u_fam = self._b_fam
                ell = Fraction(-st.bosons[0])
                rest = replace(st, bosons=st.bosons[1:])
            else:
                u_state = V.f_state
                u_fam = self._f_fam
                ell = -st.fermions[0] - HALF
                rest = replace(st, fermions=st.fermions[1:])
            rest_vec = V.vec_of(rest)
            u_vec = V.vec_of(u_state)

            def corrections(i: int, u_vec=u_vec, ell=ell, rest_vec=rest_vec):
                vec = V.product(u_vec, ell + i, rest_vec)
                return self.family(vec) if vec else None

            fam = CompositeFamily(self, u_fam, self.family_of_state(rest), ell,
                                  u_fam.mode_offset, corrections,
                                  Fraction(st.parity, 2))
        self._fams[st] = fam
        return fam

    def family(self, vec: Vec) -> Family:
        items = sorted(vec.items())
        if len(items) == 1 and items[0][1] == ONE:
            return self.family_of_state(self.V.space.states[items[0][0]])
        parts = [(c, self.family_of_state(self.V.space.states[i])) for i, c in items]
        offs = {f.mode_offset for _, f in parts}
        return LinearFamily(self, parts, offs.pop() if len(offs) == 1 else None)

    def product(self, u_vec: Vec, m: Fraction, v_vec: Vec) -> Vec:
        # composite states live in the untwisted algebra
        return self.V.product(u_vec, m, v_vec)

    # towers ----------------------------------------------------------------

    def L_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.V.omega_vec), Fraction(1))

    def G_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.V.tau_vec), HALF)

    def ground_eigenvalue(self) -> Fraction:
        """The twisted conformal weight of the ground states, computed from
        the constructed modes (this is where 1/16 must emerge)."""
        lh = self.L_handle()
        ground_cols = [i for i, s in enumerate(self.space.states)
                       if not s.bosons and not s.fermions]
        values = set()
        for col in ground_cols:
            got = lh.apply_basis(0, col)
            if set(got) - {col}:
                raise NonHomogeneous("twisted L(0) mixes ground states")
            values.add(got.get(col, ExactScalar(0)).as_rational())
        if len(values) != 1:
            raise NonHomogeneous(f"ground eigenvalues disagree: {values}")
        return values.pop()

    def l0_eigenvalues(self) -> List[Fraction]:
        return diagonal_eigenvalues(self.L_handle(), 0, self.space.dim)

    def graded_dimension(self) -> Series:
        """tr q**(-c/24 + L(0)) with the computed twisted L(0) spectrum."""
        c = self.V.central_charge
        eig = self.l0_eigenvalues()
        return character(self.space, c, eigenvalues=eig, bound=self.space.bound)


# ---------------------------------------------------------------------------
# Mirror-twisted module
# ---------------------------------------------------------------------------

class _SlotFamily(Family):
    """Twisted modes of a slot vector v^1 or v^2 of the tensor square.

    Built from the weight-halving expansion of v: the mode at t collects the
    twisted-sector modes of the lowered states at 2t + 1 - wt - d; slot 2
    differs by the root-phase sign (-1)**(2t).
    """

    def __init__(self, mirror: "MirrorModule", v_state: FockState, slot: int):
        V = mirror.V
        h = v_state.level
        super().__init__(mirror, h, v_state.parity, None)
        self.slot = slot
        self.h = h
        self.terms = mirror._delta_families(v_state)

    def _compute(self, t, col):
        acc: Vec = {}
        for d, fam in self.terms:
            s = 2 * t + 1 - self.h - d
            v_iadd(acc, fam.apply_basis(s, col), 1)
        if self.slot == 2 and (2 * t) % 2:
            acc = v_scale(acc, ExactScalar(-1))
        return acc


class MirrorModule:
    """The mirror-twisted (V (x) V)-module carried by the same space as the
    parity-twisted module."""

    order = 2

    def __init__(self, sigma: SigmaModule, tensor: TensorVosa, n2: N2Data):
        if tensor.V is not sigma.V:
            raise ValueError("tensor square and twisted sector must share V")
        self.sigma = sigma
        self.tensor = tensor
        self.V = sigma.V
        self.n2 = n2
        self.space = sigma.space  # the construction reuses the space on the nose
        self._offset = Fraction(1, 16)
        self._pair_fams: Dict[Tuple[int, int], Family] = {}
        self._slot_fams: Dict[Tuple[FockState, int], Family] = {}
        self._delta_cache: Dict[FockState, list] = {}

    # engine interface: weights in units of the twisted conformal grading

    def col_weight(self, i: int) -> Fraction:
        return (self.sigma.space.weights[i] - self._offset) / 2

    @property
    def weight_bound(self) -> Fraction:
        return (self.sigma.space.bound - self._offset) / 2

    @property
    def min_col_weight(self) -> Fraction:
        return Fraction(0)

    def twist_exponent(self, vec: Vec) -> int:
        k = self.tensor.kappa(vec)
        if k == vec:
            return 0
        if k == v_scale(vec, ExactScalar(-1)):
            return 1
        raise NonHomogeneous("vector is not a signed-transposition eigenvector")

    # slot vectors ---------------------------------------------------------

    def _delta_families(self, v_state: FockState):
        cached = self._delta_cache.get(v_state)
        if cached is not None:
            return cached
        V = self.V
        h = v_state.level
        lh = V.L_handle()
        terms = apply_delta(
            h, V.vec_of(v_state),
            lower=lambda j, vec: lh.apply(j, vec),
            vec_scale=v_scale,
            vec_add=lambda a, b: v_iadd(dict(a), b),
            is_zero=v_is_zero,
            k=2,
        )
        fams = []
        for exp, vec in terms:
            d = -2 * exp - h
            fams.append((d, self.sigma.family(vec)))
        self._delta_cache[v_state] = fams
        return fams

    def slot_family(self, v_state: FockState, slot: int) -> Family:
        key = (v_state, slot)
        fam = self._slot_fams.get(key)
        if fam is None:
            if v_state == self.V.vac_state:
                fam = VacuumFamily(self)
            else:
                fam = _SlotFamily(self, v_state, slot)
            self._slot_fams[key] = fam
        return fam

    def _slot_of_vec(self, vec: Vec, slot: int) -> Optional[Family]:
        if not vec:
            return None
        items = sorted(vec.items())
        parts = [(c, self.slot_family(self.V.space.states[i], slot))
                 for i, c in items]
        if len(parts) == 1 and parts[0][0] == ONE:
            return parts[0][1]
        return LinearFamily(self, parts, None)

    # pair vectors ------------------------------------------------------------

    def family_of_pair(self, i: int, j: int) -> Family:
        key = (i, j)
        fam = self._pair_fams.get(key)
        if fam is not None:
            return fam
        V = self.V
        si, sj = V.space.states[i], V.space.states[j]
        if si == V.vac_state:
            fam = self.slot_family(sj, 2)
        elif sj == V.vac_state:
            fam = self.slot_family(si, 1)
        else:
            u_fam = LinearFamily(
                self,
                [(ONE, self.slot_family(si, 1)), (ONE, self.slot_family(si, 2))],
                Fraction(0))
            w_fam = self.slot_family(sj, 2)
            u_vec, v_vec = V.vec_of(si), V.vec_of(sj)

            def corrections(k: int, u_vec=u_vec, v_vec=v_vec):
                # (s^1 + s^2)_{-1+k} (1 (x) t) = 1 (x) (s_{k-1} t) for k >= 1
                vec = V.product(u_vec, k - 1, v_vec)
                return self._slot_of_vec(vec, 2)

            comp = CompositeFamily(self, u_fam, w_fam, Fraction(-1),
                                   Fraction(0), corrections, None)
            minus_vec = V.product(u_vec, Fraction(-1), v_vec)
            minus_fam = self._slot_of_vec(minus_vec, 2)
            if minus_fam is None:
                fam = comp
            else:
                fam = LinearFamily(self, [(ONE, comp), (-ONE, minus_fam)], None)
        self._pair_fams[key] = fam
        return fam

    def family(self, vec: Vec) -> Family:
        items = sorted(vec.items())
        parts = []
        for k, c in items:
            i, j = self.tensor.space.states[k]
            parts.append((c, self.family_of_pair(i, j)))
        if len(parts) == 1 and parts[0][0] == ONE:
            return parts[0][1]
        return LinearFamily(self, parts, None)

    def product(self, u_vec: Vec, m: Fraction, v_vec: Vec) -> Vec:
        return self.tensor.product(u_vec, m, v_vec)

    # constructed towers ---------------------------------------------------------

    def L_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.tensor.omega_vec), Fraction(1))

    def G1_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.n2.tau1), HALF)

    def G2_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.n2.tau2), HALF)

    def J_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.n2.jvec), Fraction(0))

    def handles(self) -> Dict[str, ModeHandle]:
        return {"L": self.L_handle(), "J": self.J_handle(),
                "G1": self.G1_handle(), "G2": self.G2_handle()}

    def l0_eigenvalues(self) -> List[Fraction]:
        return diagonal_eigenvalues(self.L_handle(), 0, self.space.dim)

    def ground_eigenvalue(self) -> Fraction:
        lh = self.L_handle()
        ground_cols = [i for i, s in enumerate(self.space.states)
                       if not s.bosons and not s.fermions]
        values = set()
        for col in ground_cols:
            got = lh.apply_basis(0, col)
            if set(got) - {col}:
                raise NonHomogeneous("twisted L(0) mixes ground states")
            values.add(got.get(col, ExactScalar(0)).as_rational())
        if len(values) != 1:
            raise NonHomogeneous(f"ground eigenvalues disagree: {values}")
        return values.pop()

    def graded_dimension(self) -> Series:
        """tr q**(-2c/24 + L(0)) with c the central charge of V."""
        eig = self.l0_eigenvalues()
        c2 = 2 * self.V.central_charge
        bound = min(eig) + self.weight_bound if eig else self.weight_bound
        return character(self.space, c2, eigenvalues=eig, bound=bound)

    def mode_lattice_report(self, window: int = 2,
                            max_col_weight: Optional[Fraction] = None) -> CheckReport:
        """Eigenvalue bookkeeping: fixed vectors carry integer modes only,
        negated vectors half-integer modes only."""
        rep = CheckReport("mirror-mode-lattices")
        if max_col_weight is None:
            max_col_weight = self.weight_bound - 1
        cols = [i for i in range(self.space.dim)
                if self.col_weight(i) <= max_col_weight]
        towers = [
            ("omega", self.family(self.tensor.omega_vec), 0),
            ("tau1", self.family(self.n2.tau1), 0),
            ("tau2", self.family(self.n2.tau2), 1),
            ("J", self.family(self.n2.jvec), 1),
        ]
        for name, fam, j in towers:
            # off-lattice modes must vanish identically
            start = HALF if j == 0 else Fraction(0)
            t = start - window
            while t <= window:
                for col in cols:
                    try:
                        got = fam.apply_basis(t, col)
                    except Exception:
                        rep.filtered += 1
                        continue
                    rep.checked += 1
                    if got:
                        rep.violations.append(
                            _mk_violation({"tower": name, "mode": str(t), "col": col}))
                t += 1
        return rep


def _mk_violation(context):
    from .checks import CheckViolation

    return CheckViolation(context, 1)


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def sigma_virasoro_report(sigma: SigmaModule, window: int = 2,
                          max_col_level: Fraction = Fraction(2)) -> TableReport:
    cols = _sigma_cols(sigma, max_col_level)
    return bracket_table_check("sigma-virasoro", VIRASORO,
                               sigma.V.central_charge,
                               {"L": sigma.L_handle()}, window, cols, sigma)


def sigma_ramond_report(sigma: SigmaModule, window: int = 2,
                        max_col_level: Fraction = Fraction(2)) -> TableReport:
    cols = _sigma_cols(sigma, max_col_level)
    handles = {"L": sigma.L_handle(), "G": sigma.G_handle()}
    return bracket_table_check("sigma-n1-ramond", N1_RAMOND,
                               sigma.V.central_charge, handles, window, cols, sigma)


def sigma_twisted_jacobi_report(sigma: SigmaModule, window: int = 2,
                                max_col_level: Fraction = Fraction(1)) -> CheckReport:
    rep = CheckReport("sigma-twisted-jacobi")
    V = sigma.V
    gens = [("b", V.vec_of(V.b_state)), ("f", V.vec_of(V.f_state))]
    max_w = sigma.space.min_weight + max_col_level
    for name_u, u in gens:
        for name_v, v in gens:
            sub = borcherds_check(sigma, u, v, window, max_w,
                                  f"sigma-jacobi-{name_u}{name_v}")
            rep.merge(sub)
    return rep


def _sigma_cols(sigma: SigmaModule, max_level: Fraction) -> List[int]:
    top = sigma.space.min_weight + max_level
    return [i for i in range(sigma.space.dim)
            if sigma.space.weights[i] <= top]


def mirror_table_report(mirror: MirrorModule, window: int = 2,
                        max_col_level: Fraction = Fraction(2)) -> TableReport:
    cols = _mirror_cols(mirror, max_col_level)
    central = 2 * mirror.V.central_charge
    return bracket_table_check("mirror-twisted-n2", N2_MIRROR_TWISTED, central,
                               mirror.handles(), window, cols, mirror)


def mirror_subalgebra_reports(mirror: MirrorModule, window: int = 2,
                              max_col_level: Fraction = Fraction(2)) -> List[TableReport]:
    cols = _mirror_cols(mirror, max_col_level)
    central = 2 * mirror.V.central_charge
    h = mirror.handles()
    return [
        bracket_table_check("mirror-virasoro", VIRASORO, central,
                            {"L": h["L"]}, window, cols, mirror),
        bracket_table_check("mirror-g1-ns", N1_NS, central,
                            {"L": h["L"], "G": h["G1"]}, window, cols, mirror),
        bracket_table_check("mirror-g2-ramond", N1_RAMOND, central,
                            {"L": h["L"], "G": h["G2"]}, window, cols, mirror),
    ]


def mirror_twisted_jacobi_report(mirror: MirrorModule, window: int = 1,
                                 max_col_level: Fraction = Fraction(1)) -> CheckReport:
    """Twisted Jacobi identity for eigen pairs of free generators of V (x) V."""
    rep = CheckReport("mirror-twisted-jacobi")
    V = mirror.V
    tensor = mirror.tensor
    b, f = V.vec_of(V.b_state), V.vec_of(V.f_state)
    eigens = []
    for name, vec in (("b", b), ("f", f)):
        one = tensor.slot(vec, 1)
        two = tensor.slot(vec, 2)
        eigens.append((f"{name}+", v_iadd(dict(one), two)))
        eigens.append((f"{name}-", v_iadd(dict(one), two, -1)))
    max_w = max_col_level / 2
    for name_u, u in eigens:
        for name_v, v in eigens:
            sub = borcherds_check(mirror, u, v, window, max_w,
                                  f"mirror-jacobi-{name_u}{name_v}")
            rep.merge(sub)
    return rep


def mirror_equivariance_report(mirror: MirrorModule,
                               max_state_weight: Fraction = Fraction(2),
                               window: int = 2,
                               max_col_level: Fraction = Fraction(2)) -> CheckReport:
    """Y_g(kappa v, x) equals the root-phase flip of Y_g(v, x): mode-wise,
    (kappa v)_t = (-1)**(2t) v_t."""
    rep = CheckReport("mirror-equivariance")
    tensor = mirror.tensor
    cols = _mirror_cols(mirror, max_col_level)
    for k in range(tensor.space.dim):
        if tensor.col_weight(k) > max_state_weight:
            continue
        vec = {k: ONE}
        fam = mirror.family(vec)
        kfam = mirror.family(tensor.kappa(vec))
        t = Fraction(-window)
        while t <= window:
            sign = ExactScalar(-1 if (2 * t) % 2 else 1)
            for col in cols:
                try:
                    lhs = kfam.apply_basis(t, col)
                    rhs = v_scale(fam.apply_basis(t, col), sign)
                except Exception:
                    rep.filtered += 1
                    continue
                rep.checked += 1
                if lhs != rhs:
                    rep.violations.append(_mk_violation(
                        {"state": k, "mode": str(t), "col": col}))
            t += HALF
    return rep


def _mirror_cols(mirror: MirrorModule, max_level: Fraction) -> List[int]:
    top = mirror.sigma.space.min_weight + max_level
    return [i for i in range(mirror.space.dim)
            if mirror.sigma.space.weights[i] <= top]


# ---------------------------------------------------------------------------
# The character identity
# ---------------------------------------------------------------------------

@dataclass
class Corollary2Result:
    sigma_series: Series
    mirror_series: Series
    substituted: Series
    matches: bool
    sigma_ground: Fraction
    mirror_ground: Fraction

    def to_json(self):
        return {
            "sigma_graded_dimension": self.sigma_series.to_json(),
            "mirror_graded_dimension": self.mirror_series.to_json(),
            "mirror_in_q_squared": self.substituted.to_json(),
            "match": self.matches,
            "sigma_ground": str(self.sigma_ground),
            "mirror_ground": str(self.mirror_ground),
        }


def corollary2_check(mirror: MirrorModule,
                     truncation: Optional[Fraction] = None) -> Corollary2Result:
    """dim_q of the parity-twisted module equals dim_{q**2} of the
    mirror-twisted one, coefficient by coefficient below the truncation."""
    sigma_series = mirror.sigma.graded_dimension()
    mirror_series = mirror.graded_dimension()
    substituted = mirror_series.substitute_square()
    bound = min(sigma_series.truncation, substituted.truncation)
    if truncation is not None:
        bound = min(bound, Fraction(truncation))
    left = sigma_series.truncate(bound)
    right = substituted.truncate(bound)
    return Corollary2Result(
        sigma_series=left,
        mirror_series=mirror_series,
        substituted=right,
        matches=left == right,
        sigma_ground=mirror.sigma.ground_eigenvalue(),
        mirror_ground=mirror.ground_eigenvalue(),
    )
