"""Vertex operator superalgebra structure on the boson-fermion Fock space
V = B (x) F_NS, and on the tensor square V (x) V.

Generator modes are the free-field actions; every composite state's modes
come out of the shared component-identity recursion in `modes`, so one
tested rule replaces hand-derived normal-ordered formulas.  The tensor
square carries the Koszul-sign vertex operators, the signed transposition
automorphism, the parity map, and slot embeddings; the N=2 generators on
V (x) V are calibrated by solving for their scalars, never transcribed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .checks import CheckReport, ModeHandle, TableReport, bracket_table_check, borcherds_check
from .errors import NoCalibration, NonHomogeneous, TruncationOverflow
from .fock import FockSpaceSpec, FockState, TruncatedSpace, mode_apply
from .modes import CompositeFamily, Family, GeneratorFamily, LinearFamily, VacuumFamily
from .operators import Vec, v_iadd, v_scale
from .scalars import ExactScalar, I, ONE

HALF = Fraction(1, 2)


def _sqrt_in_field(x: ExactScalar) -> List[ExactScalar]:
    """Square roots of simple field elements: rationals and 2*(squares).

    Covers the calibration use cases; anything else returns [].
    """
    if not x.is_rational():
        return []
    r = x.as_rational()
    if r == 0:
        return [ExactScalar(0)]
    roots: List[ExactScalar] = []
    mag = abs(r)
    for base, unit in ((mag, ExactScalar(1)), (mag / 2, ExactScalar(0, 0, 1))):
        num, den = base.numerator, base.denominator
        ns, ds = _isqrt_exact(num), _isqrt_exact(den)
        if ns is not None and ds is not None:
            root = unit * ExactScalar(Fraction(ns, ds))
            if r < 0:
                root = root * I
            roots.extend([root, -root])
            break
    return roots


def _isqrt_exact(n: int) -> Optional[int]:
    from math import isqrt

    s = isqrt(n)
    return s if s * s == n else None


class Vosa:
    """The N=1 free-field model: one boson and one fermion, truncated by weight."""

    order = 1

    def __init__(self, max_weight=4, psi_delta: Fraction = Fraction(1)):
        self.space = TruncatedSpace(FockSpaceSpec("vosa", Fraction(max_weight)))
        self.psi_delta = Fraction(psi_delta)
        self.vac_state = FockState()
        self.b_state = FockState(bosons=(1,))
        self.f_state = FockState(fermions=(HALF,))
        self.vac = self.space.index[self.vac_state]
        self._fams: Dict[FockState, Family] = {}
        self.central_charge = Fraction(3, 2)

    # engine interface -------------------------------------------------

    def col_weight(self, i: int) -> Fraction:
        return self.space.weights[i]

    @property
    def weight_bound(self) -> Fraction:
        return self.space.bound

    @property
    def min_col_weight(self) -> Fraction:
        return self.space.min_weight

    def twist_exponent(self, vec: Vec) -> int:
        return 0

    # states -----------------------------------------------------------

    def vec_of(self, state: FockState) -> Vec:
        return {self.space.index[state]: ONE}

    @property
    def vacuum_vec(self) -> Vec:
        return {self.vac: ONE}

    @property
    def omega_vec(self) -> Vec:
        half = ExactScalar(HALF)
        return {
            self.space.index[FockState(bosons=(1, 1))]: half,
            self.space.index[FockState(fermions=(Fraction(3, 2), HALF))]: half,
        }

    @property
    def tau_vec(self) -> Vec:
        return {self.space.index[FockState(bosons=(1,), fermions=(HALF,))]: ONE}

    def weight_of(self, vec: Vec) -> Fraction:
        ws = {self.col_weight(i) for i in vec}
        if len(ws) != 1:
            raise NonHomogeneous(f"vector spans weights {sorted(ws)}")
        return ws.pop()

    def parity_of(self, vec: Vec) -> int:
        ps = {self.space.parities[i] for i in vec}
        if len(ps) != 1:
            raise NonHomogeneous("vector mixes parities")
        return ps.pop()

    # mode families ------------------------------------------------------

    def _alpha_action(self, t: Fraction, col: int):
        return [(self.space.index[st], c) for st, c in
                mode_apply(self.space, "a", t, self.space.states[col], self.psi_delta)]

    def _psi_action(self, t: Fraction, col: int):
        return [(self.space.index[st], c) for st, c in
                mode_apply(self.space, "psi", t + HALF, self.space.states[col],
                           self.psi_delta)]

    def _generator_offsets(self) -> Tuple[Fraction, Fraction]:
        # untwisted modes live on the integer lattice for both generators
        return Fraction(0), Fraction(0)

    def _state_mode_offset(self, st: FockState) -> Fraction:
        return Fraction(0)

    def family_of_state(self, st: FockState) -> Family:
        fam = self._fams.get(st)
        if fam is not None:
            return fam
        boff, foff = self._generator_offsets()
        if st == self.vac_state:
            fam = VacuumFamily(self)
        elif st == self.b_state:
            fam = GeneratorFamily(self, Fraction(1), 0, boff, self._alpha_action)
        elif st == self.f_state:
            fam = GeneratorFamily(self, HALF, 1, foff, self._psi_action)
        else:
            if st.bosons:
                u_state = self.b_state
                ell = Fraction(-st.bosons[0])
                rest = replace(st, bosons=st.bosons[1:])
            else:
                u_state = self.f_state
                ell = -st.fermions[0] - HALF
                rest = replace(st, fermions=st.fermions[1:])
            u_fam = self.family_of_state(u_state)
            w_fam = self.family_of_state(rest)
            u_vec = self._ambient_vec(u_state)
            rest_vec = self._ambient_vec(rest)

            def corrections(i: int, u_vec=u_vec, ell=ell, rest_vec=rest_vec):
                vec = self.product(u_vec, ell + i, rest_vec)
                return self.family(vec) if vec else None

            fam = CompositeFamily(self, u_fam, w_fam, ell, u_fam.mode_offset,
                                  corrections, self._state_mode_offset(st))
        self._fams[st] = fam
        return fam

    def _ambient_vec(self, st: FockState) -> Vec:
        """The state as a vector of the ambient (untwisted) algebra."""
        return {self.space.index[st]: ONE}

    def family(self, vec: Vec) -> Family:
        items = sorted(vec.items())
        if len(items) == 1 and items[0][1] == ONE:
            return self._family_by_index(items[0][0])
        parts = [(c, self._family_by_index(i)) for i, c in items]
        offs = {f.mode_offset for _, f in parts}
        off = offs.pop() if len(offs) == 1 else None
        return LinearFamily(self, parts, off)

    def _family_by_index(self, i: int) -> Family:
        return self.family_of_state(self.space.states[i])

    def product(self, u_vec: Vec, m: Fraction, v_vec: Vec) -> Vec:
        """The untwisted product state u_m v."""
        if not u_vec or not v_vec:
            return {}
        return self.family(u_vec).apply(Fraction(m), v_vec)

    # convenience towers ----------------------------------------------------

    def L_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.omega_vec), Fraction(1))

    def G_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.tau_vec), HALF)

    def L(self, n: int, vec: Vec) -> Vec:
        return self.family(self.omega_vec).apply(Fraction(n) + 1, vec)


# ---------------------------------------------------------------------------
# Axiom suites for any untwisted engine
# ---------------------------------------------------------------------------

def creation_report(V: Vosa, max_mode: int = 3) -> CheckReport:
    """v_{-1} vacuum = v and v_n vacuum = 0 for n >= 0, for every basis state."""
    rep = CheckReport("creation-axiom")
    for i in range(V.space.dim):
        fam = V._family_by_index(i)
        try:
            got = fam.apply(Fraction(-1), V.vacuum_vec)
        except TruncationOverflow:
            rep.filtered += 1
            continue
        rep.checked += 1
        if got != {i: ONE}:
            rep.violations.append(
                _violation({"state": str(V.space.states[i]), "mode": "-1"}, got))
        for n in range(0, max_mode + 1):
            try:
                got = fam.apply(Fraction(n), V.vacuum_vec)
            except TruncationOverflow:
                rep.filtered += 1
                continue
            rep.checked += 1
            if got:
                rep.violations.append(
                    _violation({"state": str(V.space.states[i]), "mode": str(n)}, got))
    return rep


def grading_report(V: Vosa) -> CheckReport:
    """L(0) built from the conformal vector acts as the weight on every state."""
    rep = CheckReport("l0-grading")
    lh = V.L_handle()
    for i in range(V.space.dim):
        got = lh.apply_basis(0, i)
        want = {i: ExactScalar(V.col_weight(i))} if V.col_weight(i) else {}
        rep.checked += 1
        if got != want:
            rep.violations.append(_violation({"state": str(V.space.states[i])}, got))
    return rep


def translation_report(V: Vosa, max_weight=Fraction(5, 2), window: int = 2) -> CheckReport:
    """(L(-1)v)_n = -n v_{n-1} on a spanning set, as exact operators."""
    rep = CheckReport("translation-axiom")
    lh = V.L_handle()
    cols = [i for i in range(V.space.dim) if V.col_weight(i) <= max_weight]
    for i in range(V.space.dim):
        if V.col_weight(i) > max_weight:
            continue
        dv = lh.apply(-1, {i: ONE})
        dfam = V.family(dv) if dv else None
        vfam = V._family_by_index(i)
        for n in range(-window, window + 1):
            for col in cols:
                try:
                    lhs = dfam.apply_basis(Fraction(n), col) if dfam else {}
                    rhs = v_scale(vfam.apply_basis(Fraction(n - 1), col),
                                  ExactScalar(-n))
                except TruncationOverflow:
                    rep.filtered += 1
                    continue
                rep.checked += 1
                if lhs != rhs:
                    rep.violations.append(_violation(
                        {"state": str(V.space.states[i]), "mode": str(n), "col": col},
                        lhs))
    return rep


def _violation(context: dict, payload) -> "CheckViolation":
    from .checks import CheckViolation

    return CheckViolation(context, len(payload) if payload else 0)


def n1_table_report(V: Vosa, window: int = 2,
                    max_col_weight: Optional[Fraction] = None) -> TableReport:
    """The tau-modes satisfy the N=1 Neveu-Schwarz table with c = 3/2."""
    from .superalgebra import N1_NS

    if max_col_weight is None:
        max_col_weight = V.space.bound - 1
    cols = [i for i in range(V.space.dim) if V.col_weight(i) <= max_col_weight]
    handles = {"L": V.L_handle(), "G": V.G_handle()}
    return bracket_table_check("n1-free-field", N1_NS, V.central_charge,
                               handles, window, cols, V)


# ---------------------------------------------------------------------------
# The tensor square
# ---------------------------------------------------------------------------

class PairSpace:
    """Ordered basis of V (x) V below a combined-weight truncation."""

    def __init__(self, V: Vosa, bound: Fraction):
        self.bound = Fraction(bound)
        pairs = []
        for i, wi in enumerate(V.space.weights):
            for j, wj in enumerate(V.space.weights):
                if wi + wj < self.bound:
                    pairs.append((wi + wj, i, j))
        pairs.sort()
        self.states: Tuple[Tuple[int, int], ...] = tuple((i, j) for _, i, j in pairs)
        self.index = {p: k for k, p in enumerate(self.states)}
        self.weights = tuple(w for w, _, _ in pairs)
        self.parities = tuple((V.space.parities[i] + V.space.parities[j]) % 2
                              for i, j in self.states)
        self.min_weight = Fraction(0)

    @property
    def dim(self) -> int:
        return len(self.states)


class _TensorMonoFamily(Family):
    """Modes of s (x) t through the Koszul-signed factorization of Y."""

    def __init__(self, engine: "TensorVosa", i: int, j: int):
        V = engine.V
        wi, wj = V.space.weights[i], V.space.weights[j]
        pi, pj = V.space.parities[i], V.space.parities[j]
        super().__init__(engine, wi + wj, pi + pj, Fraction(0))
        self.i, self.j = i, j
        self.fam_i = V.family_of_state(V.space.states[i])
        self.fam_j = V.family_of_state(V.space.states[j])

    def _compute(self, t, col):
        from math import ceil, floor

        eng: TensorVosa = self.engine
        V = eng.V
        a, b = eng.space.states[col]
        out_w = eng.col_weight(col) + self.weight - t - 1
        wa = V.space.weights[a]
        sign = -1 if (self.fam_j.parity * V.space.parities[a]) % 2 else 1
        acc: Vec = {}
        # integer p with left output weight wa + wt_i - p - 1 inside [0, out_w]
        p_low = ceil(wa + self.fam_i.weight - 1 - out_w)
        p_high = floor(wa + self.fam_i.weight - 1)
        for p in range(p_low, p_high + 1):
            lvec = self.fam_i.apply_basis(Fraction(p), a)
            if not lvec:
                continue
            rvec = self.fam_j.apply_basis(Fraction(t - 1 - p), b)
            if not rvec:
                continue
            for ia, ca in lvec.items():
                for jb, cb in rvec.items():
                    idx = eng.space.index[(ia, jb)]
                    v_iadd(acc, {idx: ca * cb}, sign)
        return acc


class TensorVosa:
    """V (x) V with Koszul-sign tensor vertex operators."""

    order = 1

    def __init__(self, V: Vosa, bound=None):
        self.V = V
        bound = Fraction(bound) if bound is not None else V.space.bound
        if bound > V.space.bound:
            raise ValueError("tensor truncation cannot exceed the factor truncation")
        self.space = PairSpace(V, bound)
        self._fams: Dict[Tuple[int, int], Family] = {}
        self.vac = self.space.index[(V.vac, V.vac)]
        self.central_charge = 2 * V.central_charge

    def col_weight(self, k: int) -> Fraction:
        return self.space.weights[k]

    @property
    def weight_bound(self) -> Fraction:
        return self.space.bound

    @property
    def min_col_weight(self) -> Fraction:
        return self.space.min_weight

    # states ------------------------------------------------------------

    @property
    def vacuum_vec(self) -> Vec:
        return {self.vac: ONE}

    def pair_vec(self, left: Vec, right: Vec) -> Vec:
        """The decomposable vector (sum left_i s_i) (x) (sum right_j t_j)."""
        out: Vec = {}
        for i, ci in left.items():
            for j, cj in right.items():
                v_iadd(out, {self.space.index[(i, j)]: ci * cj}, 1)
        return out

    def slot(self, v_vec: Vec, slot: int) -> Vec:
        if slot == 1:
            return self.pair_vec(v_vec, self.V.vacuum_vec)
        if slot == 2:
            return self.pair_vec(self.V.vacuum_vec, v_vec)
        raise ValueError("slot must be 1 or 2")

    @property
    def omega_vec(self) -> Vec:
        om = self.V.omega_vec
        return v_iadd(self.slot(om, 1), self.slot(om, 2))

    def kappa(self, vec: Vec) -> Vec:
        """Signed transposition: u (x) v -> (-1)**(|u||v|) v (x) u."""
        V = self.V
        out: Vec = {}
        for k, c in vec.items():
            i, j = self.space.states[k]
            if (V.space.parities[i] * V.space.parities[j]) % 2:
                c = -c
            v_iadd(out, {self.space.index[(j, i)]: c}, 1)
        return out

    def sigma(self, vec: Vec) -> Vec:
        """Parity map on the tensor square."""
        return {k: (-c if self.space.parities[k] else c) for k, c in vec.items()}

    def twist_exponent(self, vec: Vec) -> int:
        k = self.kappa(vec)
        if k == vec:
            return 0
        if k == v_scale(vec, ExactScalar(-1)):
            return 1
        raise NonHomogeneous("vector is not a signed-transposition eigenvector")

    def weight_of(self, vec: Vec) -> Fraction:
        ws = {self.col_weight(i) for i in vec}
        if len(ws) != 1:
            raise NonHomogeneous(f"vector spans weights {sorted(ws)}")
        return ws.pop()

    # families -------------------------------------------------------------

    def family_of_pair(self, i: int, j: int) -> Family:
        key = (i, j)
        fam = self._fams.get(key)
        if fam is None:
            if i == self.V.vac and j == self.V.vac:
                fam = VacuumFamily(self)
            else:
                fam = _TensorMonoFamily(self, i, j)
            self._fams[key] = fam
        return fam

    def family(self, vec: Vec) -> Family:
        items = sorted(vec.items())
        if len(items) == 1 and items[0][1] == ONE:
            i, j = self.space.states[items[0][0]]
            return self.family_of_pair(i, j)
        parts = []
        for k, c in items:
            i, j = self.space.states[k]
            parts.append((c, self.family_of_pair(i, j)))
        return LinearFamily(self, parts, Fraction(0))

    def product(self, u_vec: Vec, m: Fraction, v_vec: Vec) -> Vec:
        if not u_vec or not v_vec:
            return {}
        return self.family(u_vec).apply(Fraction(m), v_vec)

    def L_handle(self) -> ModeHandle:
        return ModeHandle(self.family(self.omega_vec), Fraction(1))


def kappa_automorphism_report(tensor: TensorVosa, max_state_weight=Fraction(2),
                              window: int = 2,
                              max_col_weight=Fraction(2)) -> CheckReport:
    """kappa Y(v,x) kappa = Y(kappa v, x) on windowed states and modes."""
    rep = CheckReport("kappa-vertex-compatibility")
    cols = [k for k in range(tensor.space.dim)
            if tensor.col_weight(k) <= max_col_weight]
    for k in range(tensor.space.dim):
        if tensor.col_weight(k) > max_state_weight:
            continue
        v = {k: ONE}
        fam = tensor.family(v)
        kfam = tensor.family(tensor.kappa(v))
        for t in range(-window, window + 1):
            for col in cols:
                try:
                    lhs = tensor.kappa(fam.apply(Fraction(t),
                                                 tensor.kappa({col: ONE})))
                    rhs = kfam.apply_basis(Fraction(t), col)
                except TruncationOverflow:
                    rep.filtered += 1
                    continue
                rep.checked += 1
                if lhs != rhs:
                    rep.violations.append(_violation(
                        {"state": k, "mode": t, "col": col}, lhs))
    return rep


# ---------------------------------------------------------------------------
# N=2 calibration on the tensor square
# ---------------------------------------------------------------------------

@dataclass
class N2Data:
    c1: ExactScalar
    c2: ExactScalar
    cJ: ExactScalar
    tau1: Vec
    tau2: Vec
    jvec: Vec
    table: TableReport
    solutions_tried: int

    def to_json(self):
        return {
            "c1": self.c1.to_json(),
            "c2": self.c2.to_json(),
            "cJ": self.cJ.to_json(),
            "table": self.table.to_json(),
            "solutions_tried": self.solutions_tried,
        }


def _raw_n2_vectors(tensor: TensorVosa) -> Tuple[Vec, Vec, Vec]:
    V = tensor.V
    tau1 = v_iadd(tensor.slot(V.tau_vec, 1), tensor.slot(V.tau_vec, 2))
    b, f = V.vec_of(V.b_state), V.vec_of(V.f_state)
    tau2 = v_iadd(tensor.pair_vec(b, f), tensor.pair_vec(f, b), -1)
    jraw = tensor.pair_vec(f, f)
    return tau1, tau2, jraw


def calibrate_n2(tensor: TensorVosa, window: int = 2,
                 max_col_weight=Fraction(2)) -> N2Data:
    """Solve for the scalars making (tau1, tau2, J) generate the N=2 algebra
    with central charge 3 on the truncated tensor square.

    The ansatz is the minimal signed-transposition-equivariant family of
    weight-3/2 vectors; the normalizations are pinned by the vacuum lines of
    [G1(3/2), G1(-3/2)] and [J(1), J(-1)], the relative scalar c2 by
    [J, G1] = -i G2, and every candidate is accepted only after the full
    windowed bracket table passes.
    """
    from .superalgebra import N2_NS

    V = tensor.V
    tau1_raw, tau2_raw, j_raw = _raw_n2_vectors(tensor)
    vac = tensor.vac
    central = ExactScalar(3)

    f1 = tensor.family(tau1_raw)
    # lambda1: {G1(3/2), G1(-3/2)} on the vacuum = c1**2 * lambda1, target 2.
    down = f1.apply_basis(Fraction(-1), vac)          # G(-3/2) = mode -1
    up_then = f1.apply(Fraction(2), down)             # G(3/2) = mode 2
    other = f1.apply_basis(Fraction(2), vac)
    anti = dict(up_then)
    if other:
        v_iadd(anti, f1.apply(Fraction(-1), other), 1)
    lam1 = anti.get(vac, ExactScalar(0))
    c1_roots = [r for r in _sqrt_in_field(ExactScalar(2) * lam1.inv())] if lam1 else []

    fj = tensor.family(j_raw)
    jdown = fj.apply_basis(Fraction(-1), vac)
    jcomm = fj.apply(Fraction(1), jdown)
    jother = fj.apply_basis(Fraction(1), vac)
    if jother:
        v_iadd(jcomm, fj.apply(Fraction(-1), jother), -1)
    lamj = jcomm.get(vac, ExactScalar(0))
    cj_roots = [r for r in _sqrt_in_field(lamj.inv())] if lamj else []

    f2 = tensor.family(tau2_raw)
    tried = 0
    for c1 in c1_roots:
        for cJ in cj_roots:
            tried += 1
            # [J(-1), G1(-1/2)] vac = -i G2(-3/2) vac fixes c2 linearly.
            g1m = f1.apply_basis(Fraction(0), vac)          # G1(-1/2)
            lhs = fj.apply(Fraction(-1), g1m)
            jm = fj.apply_basis(Fraction(-1), vac)
            if jm:
                v_iadd(lhs, f1.apply(Fraction(0), jm), -1)
            lhs = v_scale(lhs, cJ * c1)
            target = f2.apply_basis(Fraction(-1), vac)      # G2(-3/2) raw
            if not target:
                continue
            coord = sorted(target)[0]
            if coord not in lhs:
                continue
            c2 = lhs[coord] * (ExactScalar(0, -1) * target[coord]).inv()
            if v_scale(target, ExactScalar(0, -1) * c2) != lhs:
                continue
            tau1 = v_scale(tau1_raw, c1)
            tau2 = v_scale(tau2_raw, c2)
            jvec = v_scale(j_raw, cJ)
            cols = [k for k in range(tensor.space.dim)
                    if tensor.col_weight(k) <= max_col_weight]
            handles = {
                "L": tensor.L_handle(),
                "J": ModeHandle(tensor.family(jvec), Fraction(0)),
                "G1": ModeHandle(tensor.family(tau1), HALF),
                "G2": ModeHandle(tensor.family(tau2), HALF),
            }
            table = bracket_table_check("n2-calibrated", N2_NS, central,
                                        handles, window, cols, tensor)
            if table.passed:
                return N2Data(c1, c2, cJ, tau1, tau2, jvec, table, tried)
    raise NoCalibration(
        f"no scalar assignment satisfies the N=2 table ({tried} candidates tried); "
        "the ansatz family must be widened")
