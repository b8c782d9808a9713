"""Mode families: lazy, memoized actions of vertex-operator modes.

A Family represents the whole tower of modes of one state acting on one
module.  Generator modes act directly on Fock monomials; modes of composite
states are computed from the component form of the (twisted) Jacobi
identity,

    sum_i (-1)**i C(l,i) [u_{m+l-i} v_{n+i} - (-1)**l (-1)**|u||v| v_{n+l-i} u_{m+i}]
        = sum_i C(m,i) (u_{l+i} v)_{m+n-i},

read as a definition of (u_l v)_{m+n} once the right side is rearranged.
The identity holds for every m on u's mode lattice; m is chosen per column
so that no intermediate leaves the truncated space (m = 0 kills every
correction term since C(0,i) = 0 for i >= 1, so it is preferred when the
lattice allows it).  The same code serves the untwisted algebra and the
order-two twisted modules; only lattices and weight units differ.

Engines must expose: col_weight(i), weight_bound, min_col_weight.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import TruncationOverflow
from .operators import Vec, binomial, v_iadd
from .scalars import ExactScalar

HALF = Fraction(1, 2)


class Family:
    """Base: all mode operators of a fixed state on a fixed module."""

    def __init__(self, engine, weight, parity: int,
                 mode_offset: Optional[Fraction] = None):
        self.engine = engine
        self.weight = Fraction(weight)
        self.parity = parity % 2
        # mode_offset: the lattice Z + offset carrying all nonzero modes,
        # or None when both half-integer lattices can occur.
        self.mode_offset = mode_offset
        self._cols: dict = {}

    def apply_basis(self, t: Fraction, col: int) -> Vec:
        t = Fraction(t)
        if self.mode_offset is not None and (t - self.mode_offset).denominator != 1:
            return {}
        key = (t, col)
        hit = self._cols.get(key)
        if hit is not None:
            return hit
        eng = self.engine
        out_w = eng.col_weight(col) + self.weight - t - 1
        if out_w < eng.min_col_weight:
            res: Vec = {}
        elif out_w >= eng.weight_bound:
            raise TruncationOverflow(
                f"mode {t} of weight-{self.weight} state: output weight {out_w} "
                f">= bound {eng.weight_bound}")
        else:
            res = self._compute(t, col)
        self._cols[key] = res
        return res

    def apply(self, t: Fraction, vec: Vec) -> Vec:
        acc: Vec = {}
        for col, coeff in vec.items():
            v_iadd(acc, self.apply_basis(t, col), coeff)
        return acc

    def _compute(self, t: Fraction, col: int) -> Vec:
        raise NotImplementedError


class VacuumFamily(Family):
    """Y(1, x) = identity: the only nonzero mode is t = -1."""

    def __init__(self, engine):
        super().__init__(engine, 0, 0, Fraction(0))

    def _compute(self, t, col):
        if t == -1:
            return {col: ExactScalar(1)}
        return {}


class GeneratorFamily(Family):
    """Modes given directly by a callable (t, col) -> list[(index, scalar)]."""

    def __init__(self, engine, weight, parity, mode_offset, action: Callable):
        super().__init__(engine, weight, parity, mode_offset)
        self._action = action

    def _compute(self, t, col):
        out: Vec = {}
        for idx, coeff in self._action(t, col):
            v_iadd(out, {idx: ExactScalar.coerce(coeff)}, 1)
        return out


class LinearFamily(Family):
    """Linear combination of same-weight families."""

    def __init__(self, engine, parts: Sequence[Tuple[ExactScalar, Family]],
                 mode_offset: Optional[Fraction] = None):
        parts = [(ExactScalar.coerce(c), f) for c, f in parts if not ExactScalar.coerce(c).is_zero()]
        if not parts:
            raise ValueError("empty linear family")
        w = parts[0][1].weight
        p = parts[0][1].parity
        for _, f in parts:
            if f.weight != w or f.parity != p:
                raise ValueError("linear family parts must share weight and parity")
        super().__init__(engine, w, p, mode_offset)
        self.parts = parts

    def _compute(self, t, col):
        acc: Vec = {}
        for c, f in self.parts:
            v_iadd(acc, f.apply_basis(t, col), c)
        return acc


class CompositeFamily(Family):
    """Modes of u_l w defined through the component identity above.

    `corrections(i)` must return the Family of the state u_{l+i} w (or None
    when that state vanishes); it is consulted only when C(m, i) != 0.
    """

    def __init__(self, engine, u_fam: Family, w_fam: Family, ell: Fraction,
                 u_offset: Fraction,
                 corrections: Callable[[int], Optional[Family]],
                 mode_offset: Optional[Fraction] = None):
        ell = Fraction(ell)
        if ell.denominator != 1:
            raise ValueError("the product index l must be an integer")
        super().__init__(engine, u_fam.weight + w_fam.weight - ell - 1,
                         u_fam.parity + w_fam.parity, mode_offset)
        self.u_fam = u_fam
        self.w_fam = w_fam
        self.ell = int(ell)
        self.u_offset = Fraction(u_offset) % 1
        self.corrections = corrections

    def _feasible(self, m: Fraction, t: Fraction, col_w: Fraction) -> bool:
        bound = self.engine.weight_bound
        int1 = col_w + self.w_fam.weight - (t - m) - 1
        int2 = col_w + self.u_fam.weight - m - 1
        return int1 < bound and int2 < bound

    def _choose_m(self, t: Fraction, col_w: Fraction) -> Fraction:
        prefs: List[Fraction] = []
        if self.u_offset == 0:
            prefs.append(Fraction(0))
        else:
            prefs.extend([Fraction(-1, 2), Fraction(1, 2)])
        balanced = (t + self.u_fam.weight - self.w_fam.weight) / 2
        snapped = self.u_offset + Fraction(round(balanced - self.u_offset))
        prefs.append(snapped)
        for m in prefs:
            if self._feasible(m, t, col_w):
                return m
        for step in range(1, 64):
            for m in (snapped - step, snapped + step):
                if self._feasible(m, t, col_w):
                    return m
        raise TruncationOverflow(
            f"no admissible auxiliary index for mode {t} at column weight {col_w}")

    def _compute(self, t, col):
        eng = self.engine
        col_w = eng.col_weight(col)
        min_w = eng.min_col_weight
        m = self._choose_m(t, col_w)
        n = t - m
        ell = self.ell
        u_fam, w_fam = self.u_fam, self.w_fam
        acc: Vec = {}

        # sum_i (-1)**i C(l,i) u_{m+l-i} v_{n+i}
        i = 0
        while col_w + w_fam.weight - (n + i) - 1 >= min_w:
            mid = w_fam.apply_basis(n + i, col)
            if mid:
                res = u_fam.apply(m + ell - i, mid)
                if res:
                    v_iadd(acc, res, ExactScalar((-1) ** i * binomial(ell, i)))
            i += 1

        # -(-1)**l (-1)**|u||w| sum_i (-1)**i C(l,i) v_{n+l-i} u_{m+i}
        sgn = -((-1) ** (ell % 2)) * ((-1) ** (u_fam.parity * w_fam.parity))
        i = 0
        while col_w + u_fam.weight - (m + i) - 1 >= min_w:
            mid = u_fam.apply_basis(m + i, col)
            if mid:
                res = w_fam.apply(n + ell - i, mid)
                if res:
                    v_iadd(acc, res, ExactScalar(sgn * (-1) ** i * binomial(ell, i)))
            i += 1

        # -sum_{i>=1} C(m,i) (u_{l+i} w)_{t-i}
        i = 1
        while u_fam.weight + w_fam.weight - (ell + i) - 1 >= 0:
            cb = binomial(m, i)
            if cb:
                fam = self.corrections(i)
                if fam is not None:
                    res = fam.apply_basis(t - i, col)
                    if res:
                        v_iadd(acc, res, ExactScalar(-cb))
            i += 1
        return acc


def no_corrections(i: int) -> Optional[Family]:
    return None
