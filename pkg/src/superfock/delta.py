"""The weight-twisting operator for order-k cyclic permutations.

The rational coefficients a_1, a_2, ... are defined by requiring that the
flow exp(-sum_j a_j x**(j+1) d/dx) send x to (1+x)**k/k - 1/k.  They are
solved order by order: once a_1 .. a_{j-1} are fixed, a_j enters the
x**(j+1) coefficient linearly with unit coefficient.

Applying the twist to a weight-homogeneous state v of weight h (k = 2):

    Delta(x) v = 2**(-h) * x**(-h/2) * exp(sum_j a_j x**(-j/2) L(j)) v,

a finite sum because the positive Virasoro modes lower weight and weights
are bounded below.  Only k in {1, 2} is supported: 2**(-h) for half-integer
h needs sqrt(2), and the scalar field stops there.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .errors import InsufficientTerms, NonHomogeneous, UnsupportedK
from .scalars import ExactScalar, pow_two
from .series import Series

Poly = Dict[int, Fraction]  # exponent -> coefficient, exact

_coeff_cache: dict[tuple[int, int], tuple[Fraction, ...]] = {}


def _poly_trim(p: Poly, order: int) -> Poly:
    return {e: c for e, c in p.items() if c and e <= order}


def _flow_derivation(coeffs: List[Fraction], p: Poly, order: int) -> Poly:
    """Apply D = sum_j a_j x**(j+1) d/dx to p, truncated at x**order."""
    out: Poly = {}
    for e, c in p.items():
        if not c:
            continue
        for j, a in enumerate(coeffs, start=1):
            if not a:
                continue
            ee = e + j
            if ee > order:
                continue
            out[ee] = out.get(ee, Fraction(0)) + a * e * c
    return out


def _exp_flow_on_x(coeffs: List[Fraction], order: int) -> Poly:
    """exp(-D) . x through x**order, D as above with the given a_j."""
    acc: Poly = {1: Fraction(1)}
    term: Poly = {1: Fraction(1)}
    n = 0
    while term:
        n += 1
        term = _flow_derivation(coeffs, term, order)
        term = {e: -c / n for e, c in term.items() if c}
        for e, c in term.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        if n > order + 2:
            break
    return _poly_trim(acc, order)


def _target(k: int, order: int) -> Poly:
    """(1+x)**k / k - 1/k through x**order."""
    out: Poly = {}
    binom = 1
    for m in range(1, k + 1):
        binom = binom * (k - m + 1) // m
        if m <= order:
            out[m] = Fraction(binom, k)
    return out


def delta_coefficients(k: int, terms: int) -> Tuple[Fraction, ...]:
    """The first `terms` coefficients a_1 .. a_terms for order k."""
    if k < 1 or terms < 1:
        raise ValueError("k and terms must be positive")
    key = (k, terms)
    cached = _coeff_cache.get(key)
    if cached is not None:
        return cached
    target = _target(k, terms + 1)
    coeffs: List[Fraction] = []
    for j in range(1, terms + 1):
        partial = _exp_flow_on_x(coeffs + [Fraction(0)], j + 1)
        have = partial.get(j + 1, Fraction(0))
        want = target.get(j + 1, Fraction(0))
        # with a_j = 0 the x**(j+1) coefficient misses exactly -a_j
        coeffs.append(have - want)
    result = tuple(coeffs)
    _coeff_cache[key] = result
    return result


def residual_for_coefficients(k: int, coeffs: List[Fraction], order: int) -> Series:
    """Flow equation residual for an arbitrary candidate coefficient list."""
    flowed = _exp_flow_on_x(list(coeffs), order)
    target = _target(k, order)
    residual: Poly = dict(flowed)
    for e, c in target.items():
        residual[e] = residual.get(e, Fraction(0)) - c
    return Series("x", Fraction(order) + 1,
                  [(Fraction(e), ExactScalar(c)) for e, c in residual.items() if c])


def verify_delta_equation(k: int, terms: int, order: int) -> Series:
    """Residual of the defining flow equation, truncated at x**order.

    Returns the zero series exactly when the first `terms` coefficients
    reproduce (1+x)**k/k - 1/k through the requested order.  The coefficient
    a_j first matters at x**(j+1), so `terms` must reach order-1 unless the
    missing tail vanishes identically (as it does for k = 1).
    """
    if terms < order - 1:
        full = delta_coefficients(k, order - 1)
        if any(full[terms:]):
            raise InsufficientTerms(
                f"need {order - 1} coefficients to verify through x**{order}, "
                f"got {terms}")
    return residual_for_coefficients(k, list(delta_coefficients(k, terms)), order)


def apply_delta(weight: Fraction,
                vec,
                lower: Callable[[int, object], object],
                vec_scale: Callable[[object, ExactScalar], object],
                vec_add: Callable[[object, object], object],
                is_zero: Callable[[object], bool],
                k: int = 2,
                max_level: int | None = None) -> List[Tuple[Fraction, object]]:
    """Apply the twist operator to a weight-homogeneous vector.

    `lower(j, v)` must implement the positive Virasoro mode L(j); the caller
    owns the vector representation.  Returns [(x-exponent, vector)] sorted by
    exponent; for k=1 this is just [(0, vec)].
    """
    if k not in (1, 2):
        raise UnsupportedK(f"twist operator implemented for k in {{1, 2}}, got {k}")
    if k == 1:
        return [(Fraction(0), vec)]
    weight = Fraction(weight)
    if max_level is None:
        max_level = max(1, int(weight) + 1)
    coeffs = delta_coefficients(2, max_level)

    base = vec_scale(vec, pow_two(-weight))
    # layers[d] collects the total-lowering-d part of exp(sum a_j x**(-j/2) L(j))
    layers: dict[int, object] = {0: base}
    current: dict[int, object] = {0: base}
    n = 0
    while current:
        n += 1
        nxt: dict[int, object] = {}
        for d, v in current.items():
            for j in range(1, max_level + 1):
                if not coeffs[j - 1]:
                    continue
                w = lower(j, v)
                if is_zero(w):
                    continue
                w = vec_scale(w, ExactScalar(coeffs[j - 1]))
                dd = d + j
                nxt[dd] = vec_add(nxt[dd], w) if dd in nxt else w
        current = {}
        for d, v in nxt.items():
            v = vec_scale(v, ExactScalar(Fraction(1, n)))
            # accumulate 1/n! progressively: divide the running product each step
            layers[d] = vec_add(layers[d], v) if d in layers else v
            current[d] = v
        if n > 4 * max_level + 4:
            break
    out = []
    for d in sorted(layers):
        v = layers[d]
        if not is_zero(v):
            out.append((-(weight + d) / 2, v))
    return out
