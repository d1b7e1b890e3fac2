"""Volume under the distance roof of a pair of edges.

For points at offsets lam on an edge of length y and mu on an edge of
length z, with cross distances x00, x01, x10, x11 between the four
endpoints, the point-to-point distance is the lower envelope of four
planes over [0,y] x [0,z].  Its integral xi over the rectangle has a
closed form: one cubic polynomial per sign of the case expression

    L = x10 + x01 - x00 - x11.

The coefficient tables below were derived symbolically; rerun
scripts/derive_roof.py to regenerate them.  Keys are exponent tuples
over (y, z, x00, x01, x10, x11).
"""

from __future__ import annotations

import itertools
import math
import os
from fractions import Fraction

import numpy as np

RHO_PLUS = {
    (0, 0, 0, 0, 0, 3): Fraction(1, 24),
    (0, 0, 0, 0, 2, 1): Fraction(-1, 8),
    (0, 0, 0, 0, 3, 0): Fraction(1, 12),
    (0, 0, 0, 2, 0, 1): Fraction(-1, 8),
    (0, 0, 0, 3, 0, 0): Fraction(1, 12),
    (0, 0, 1, 0, 0, 2): Fraction(-1, 8),
    (0, 0, 1, 0, 1, 1): Fraction(1, 4),
    (0, 0, 1, 0, 2, 0): Fraction(-1, 8),
    (0, 0, 1, 1, 0, 1): Fraction(1, 4),
    (0, 0, 1, 2, 0, 0): Fraction(-1, 8),
    (0, 0, 2, 0, 0, 1): Fraction(-1, 8),
    (0, 0, 3, 0, 0, 0): Fraction(1, 24),
    (0, 1, 0, 0, 0, 2): Fraction(-1, 8),
    (0, 1, 0, 0, 2, 0): Fraction(-1, 8),
    (0, 1, 0, 1, 0, 1): Fraction(1, 4),
    (0, 1, 0, 2, 0, 0): Fraction(-1, 8),
    (0, 1, 1, 0, 1, 0): Fraction(1, 4),
    (0, 1, 2, 0, 0, 0): Fraction(-1, 8),
    (1, 0, 0, 0, 0, 2): Fraction(-1, 8),
    (1, 0, 0, 0, 1, 1): Fraction(1, 4),
    (1, 0, 0, 0, 2, 0): Fraction(-1, 8),
    (1, 0, 0, 2, 0, 0): Fraction(-1, 8),
    (1, 0, 1, 1, 0, 0): Fraction(1, 4),
    (1, 0, 2, 0, 0, 0): Fraction(-1, 8),
    (1, 1, 0, 0, 0, 1): Fraction(1, 4),
    (1, 1, 0, 0, 1, 0): Fraction(1, 4),
    (1, 1, 0, 1, 0, 0): Fraction(1, 4),
    (1, 1, 1, 0, 0, 0): Fraction(1, 4),
    (1, 2, 0, 0, 0, 0): Fraction(1, 4),
    (2, 1, 0, 0, 0, 0): Fraction(1, 4),
}

RHO_MINUS = {
    (0, 0, 0, 0, 0, 3): Fraction(1, 12),
    (0, 0, 0, 0, 1, 2): Fraction(-1, 8),
    (0, 0, 0, 0, 3, 0): Fraction(1, 24),
    (0, 0, 0, 1, 0, 2): Fraction(-1, 8),
    (0, 0, 0, 1, 1, 1): Fraction(1, 4),
    (0, 0, 0, 1, 2, 0): Fraction(-1, 8),
    (0, 0, 0, 2, 1, 0): Fraction(-1, 8),
    (0, 0, 0, 3, 0, 0): Fraction(1, 24),
    (0, 0, 1, 1, 1, 0): Fraction(1, 4),
    (0, 0, 2, 0, 1, 0): Fraction(-1, 8),
    (0, 0, 2, 1, 0, 0): Fraction(-1, 8),
    (0, 0, 3, 0, 0, 0): Fraction(1, 12),
    (0, 1, 0, 0, 0, 2): Fraction(-1, 8),
    (0, 1, 0, 0, 2, 0): Fraction(-1, 8),
    (0, 1, 0, 1, 0, 1): Fraction(1, 4),
    (0, 1, 0, 2, 0, 0): Fraction(-1, 8),
    (0, 1, 1, 0, 1, 0): Fraction(1, 4),
    (0, 1, 2, 0, 0, 0): Fraction(-1, 8),
    (1, 0, 0, 0, 0, 2): Fraction(-1, 8),
    (1, 0, 0, 0, 1, 1): Fraction(1, 4),
    (1, 0, 0, 0, 2, 0): Fraction(-1, 8),
    (1, 0, 0, 2, 0, 0): Fraction(-1, 8),
    (1, 0, 1, 1, 0, 0): Fraction(1, 4),
    (1, 0, 2, 0, 0, 0): Fraction(-1, 8),
    (1, 1, 0, 0, 0, 1): Fraction(1, 4),
    (1, 1, 0, 0, 1, 0): Fraction(1, 4),
    (1, 1, 0, 1, 0, 0): Fraction(1, 4),
    (1, 1, 1, 0, 0, 0): Fraction(1, 4),
    (1, 2, 0, 0, 0, 0): Fraction(1, 4),
    (2, 1, 0, 0, 0, 0): Fraction(1, 4),
}

TYPE1 = 1
TYPE2 = 2


def is_compliant(y, z, x00, x01, x10, x11, tol=1e-9):
    """Whether the cross distances can arise as graph distances.

    Equivalent to all four roof breakpoints lying inside the rectangle.
    """
    if y < -tol or z < -tol:
        return False
    x = {(0, 0): x00, (0, 1): x01, (1, 0): x10, (1, 1): x11}
    for a, b in itertools.product((0, 1), repeat=2):
        if x[(a, b)] < -tol:
            return False
        if abs(x[(a, b)] - x[(1 - a, b)]) > y + tol:
            return False
        if abs(x[(a, b)] - x[(a, 1 - b)]) > z + tol:
            return False
    return True


def case_sign(y, z, x00, x01, x10, x11, tol=0):
    """TYPE1 iff L = x10 + x01 - x00 - x11 >= 0 (ties go to TYPE1)."""
    if not is_compliant(y, z, x00, x01, x10, x11):
        raise ValueError("tuple is not compliant")
    return TYPE1 if x10 + x01 - x00 - x11 >= -tol else TYPE2


def eval_table(table, vals):
    acc = 0
    for mono, coeff in table.items():
        term = coeff
        for v, e in zip(vals, mono):
            for _ in range(e):
                term = term * v
        acc += term
    return acc


def xi(y, z, x00, x01, x10, x11):
    """Integral of the point-to-point distance over the edge rectangle."""
    if not is_compliant(y, z, x00, x01, x10, x11):
        raise ValueError("tuple is not compliant")
    table = RHO_PLUS if x10 + x01 - x00 - x11 >= 0 else RHO_MINUS
    return eval_table(table, (y, z, x00, x01, x10, x11))


def roof_breakpoints(y, z, x00, x01, x10, x11):
    half = Fraction(1, 2) if isinstance(y, Fraction) else 0.5
    return ((y + x10 - x00) * half, (y + x11 - x01) * half,
            (z + x01 - x00) * half, (z + x11 - x10) * half)


# -- five-variable cubic polynomials ----------------------------------
#
# The mean-distance engine stores, per canonical set, the sum over edge
# pairs of xi with the first edge's contribution folded in: a cubic in
# (z, x00, x01, x10, x11) with y pinned and each x shifted by a
# per-edge constant.  Dense 56-slot vectors over a fixed monomial order
# keep the sums cheap.

VARS5 = ("z", "x00", "x01", "x10", "x11")
MONOMIALS5 = [m for m in itertools.product(range(4), repeat=5) if sum(m) <= 3]
assert len(MONOMIALS5) == 56
MONO_INDEX5 = {m: i for i, m in enumerate(MONOMIALS5)}


def _expand_shifted(table, y_val, deltas):
    """Substitute y := y_val and x_ab := x_ab + delta_ab into a table.

    Returns a dict over 5-variable exponent tuples.  Exact when inputs
    are Fractions.
    """
    out = {}
    d = (None, deltas[0], deltas[1], deltas[2], deltas[3])
    for mono, coeff in table.items():
        ey = mono[0]
        base = coeff * (y_val ** ey)
        # remaining exponents over (z, x00, x01, x10, x11)
        exps = (mono[1], mono[2], mono[3], mono[4], mono[5])
        # expand each (x + delta)^e binomially; z passes through
        terms = [((exps[0],) + (0,) * 4, base)]
        for vi in range(1, 5):
            e = exps[vi]
            if e == 0:
                continue
            new_terms = []
            for k in range(e + 1):
                c = math.comb(e, k) * d[vi] ** (e - k)
                for mono5, tc in terms:
                    m2 = list(mono5)
                    m2[vi] += k
                    new_terms.append((tuple(m2), tc * c))
            terms = new_terms
        for mono5, tc in terms:
            out[mono5] = out.get(mono5, 0) + tc
    return out


def shifted_poly(ell_a, d00, d01, d10, d11, case):
    """Coefficient vector of xi as a function of the far edge.

    Evaluating the result at (z, e00, e01, e10, e11) equals
    rho_case(ell_a, z, e00 + d00, e01 + d01, e10 + d10, e11 + d11).
    """
    table = RHO_PLUS if case == TYPE1 else RHO_MINUS
    sparse = _expand_shifted(table, ell_a, (d00, d01, d10, d11))
    vec = np.zeros(len(MONOMIALS5))
    for mono5, coeff in sparse.items():
        vec[MONO_INDEX5[mono5]] += float(coeff)
    return vec


_POWS = np.array(MONOMIALS5)


def eval_poly5(vec, z, x00, x01, x10, x11):
    vals = np.array([z, x00, x01, x10, x11], dtype=float)
    monos = np.prod(vals[None, :] ** _POWS, axis=1)
    return float(vec @ monos)


def poly5_basis(z, x00, x01, x10, x11):
    """Monomial vector; dot with a coefficient vector evaluates it."""
    vals = np.array([z, x00, x01, x10, x11], dtype=float)
    return np.prod(vals[None, :] ** _POWS, axis=1)


def _table_arrays(table):
    exps = np.array(list(table.keys()), dtype=np.int64)
    coeffs = np.array([float(c) for c in table.values()])
    return exps, coeffs


_RP_EXPS, _RP_COEFFS = _table_arrays(RHO_PLUS)
_RM_EXPS, _RM_COEFFS = _table_arrays(RHO_MINUS)


def _eval_table_np(exps, coeffs, vals):
    acc = None
    for row, c in zip(exps, coeffs):
        term = None
        for v, e in zip(vals, row):
            if e:
                f = v if e == 1 else v ** int(e)
                term = f if term is None else term * f
        term = c if term is None else c * term
        acc = term if acc is None else acc + term
    return acc


def _xi_array_np(y, z, x00, x01, x10, x11):
    vals = (y, z, x00, x01, x10, x11)
    plus = _eval_table_np(_RP_EXPS, _RP_COEFFS, vals)
    minus = _eval_table_np(_RM_EXPS, _RM_COEFFS, vals)
    return np.where(x10 + x01 - x00 - x11 >= 0, plus, minus)


# The compiled kernel is optional: CONTIG_NUMBA=0 (or numba missing)
# selects the pure-numpy path; scripts/bench_xi.py compares the two.
_USE_NUMBA = os.environ.get("CONTIG_NUMBA", "1") not in ("0", "off", "")
if _USE_NUMBA:
    try:
        import numba
    except ImportError:
        _USE_NUMBA = False

if _USE_NUMBA:

    @numba.njit(cache=True)
    def _xi_kernel(y, z, x00, x01, x10, x11,
                   rp_exps, rp_coeffs, rm_exps, rm_coeffs, out):
        for i in range(y.size):
            vals = (y[i], z[i], x00[i], x01[i], x10[i], x11[i])
            if x10[i] + x01[i] - x00[i] - x11[i] >= 0.0:
                exps, coeffs = rp_exps, rp_coeffs
            else:
                exps, coeffs = rm_exps, rm_coeffs
            acc = 0.0
            for r in range(exps.shape[0]):
                term = coeffs[r]
                for v in range(6):
                    for _ in range(exps[r, v]):
                        term *= vals[v]
                acc += term
            out[i] = acc

    def xi_array(y, z, x00, x01, x10, x11):
        """Vectorized xi over numpy arrays; tuples assumed compliant."""
        arrs = np.broadcast_arrays(y, z, x00, x01, x10, x11)
        flat = [np.ascontiguousarray(a, dtype=np.float64).ravel()
                for a in arrs]
        out = np.empty(flat[0].size)
        _xi_kernel(*flat, _RP_EXPS, _RP_COEFFS, _RM_EXPS, _RM_COEFFS, out)
        return out.reshape(arrs[0].shape)

else:

    def xi_array(y, z, x00, x01, x10, x11):
        """Vectorized xi over numpy arrays; tuples assumed compliant."""
        return _xi_array_np(y, z, x00, x01, x10, x11)
