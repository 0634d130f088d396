"""Weight functions on pair-deleted sign vectors and their admissibility.

A weight function assigns a rational to each sign vector on m-2 coordinates.
The admissibility condition asks that for every full sign vector e, the
quantity e_i * f(-e_j * e restricted away from the pair) does not depend on
the ordered index pair (i, j).  This module generates that constraint
system literally, solves it by exact elimination, and checks candidate
weights exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AlphaVector,
    PairSelection,
    PreconditionError,
    SignVector,
)
from .invariants import enumerate_solutions

__all__ = [
    "WeightFunction",
    "ConstraintSystem",
    "WEIGHTS_MAX_M",
    "build_constraints",
    "solve_weight_space",
    "check_condition_star",
    "parity_product_weight",
    "weighted_count",
]

# 2^(m-2) unknowns; the generator enumerates 2^m sign vectors against all
# ordered index pairs, so the cap keeps the system practical.
WEIGHTS_MAX_M = 12


@dataclass(frozen=True)
class WeightFunction:
    """Rational table indexed by the bitmask of a length m-2 sign vector."""

    m: int
    table: tuple[Fraction, ...]

    def __post_init__(self):
        if self.m < 3:
            raise PreconditionError("weight functions require m >= 3")
        table = tuple(Fraction(v) for v in self.table)
        if len(table) != 1 << (self.m - 2):
            raise PreconditionError("weight table must have 2^(m-2) entries")
        object.__setattr__(self, "table", table)

    def value(self, sv: SignVector) -> Fraction:
        if sv.length != self.m - 2:
            raise PreconditionError("sign vector length does not match weight")
        return self.table[sv.bits]


@dataclass(frozen=True)
class ConstraintSystem:
    """Deduplicated pairwise constraints between signed table entries.

    Rows are canonical tuples: ("eq", a, b, r) meaning x_a = r * x_b with
    a < b and r in {+1, -1}, and ("zero", a) meaning x_a = 0.
    """

    m: int
    unknowns: int
    rows: tuple[tuple, ...]


def _check_m(m: int) -> None:
    if not 3 <= m <= WEIGHTS_MAX_M:
        raise PreconditionError(
            f"m must lie in [3, {WEIGHTS_MAX_M}] for the weight solver"
        )


def _argument_mask(eps_mask: int, m: int, i0: int, j0: int) -> int:
    """Bitmask of the weight argument -e_j * (e with the pair deleted).

    A deleted coordinate lands at -1 exactly when its sign agrees with e_j,
    which in mask terms means its bit equals bit j0.
    """
    ej_bit = (eps_mask >> j0) & 1
    mask = 0
    out = 0
    for pos in range(m):
        if pos == i0 or pos == j0:
            continue
        if ((eps_mask >> pos) & 1) == ej_bit:
            mask |= 1 << out
        out += 1
    return mask


def _ordered_pairs(m: int):
    return [(i0, j0) for i0 in range(m) for j0 in range(m) if i0 != j0]


def build_constraints(m: int) -> ConstraintSystem:
    """Emit the equality of the pair quantity across every ordered pair of
    index pairs, for every sign vector, then deduplicate."""
    _check_m(m)
    pairs = _ordered_pairs(m)
    rows = set()
    for eps_mask in range(1 << m):
        terms = set()
        for i0, j0 in pairs:
            s = -1 if (eps_mask >> i0) & 1 else 1
            terms.add((s, _argument_mask(eps_mask, m, i0, j0)))
        uniq = sorted(terms)
        for a_idx in range(len(uniq)):
            s1, m1 = uniq[a_idx]
            for b_idx in range(a_idx + 1, len(uniq)):
                s2, m2 = uniq[b_idx]
                if m1 == m2:
                    # distinct terms on the same entry force it to zero
                    rows.add(("zero", m1))
                else:
                    a, b = (m1, m2) if m1 < m2 else (m2, m1)
                    rows.add(("eq", a, b, s1 * s2))
    return ConstraintSystem(m, 1 << (m - 2), tuple(sorted(rows)))


def _nullspace(system: ConstraintSystem) -> list[tuple[Fraction, ...]]:
    """Exact nullspace by incremental elimination with first-column pivots.

    Rows stay at most 2-sparse, so each insertion touches a handful of
    entries.  Every pivot row's lead is its smallest column, which makes
    descending back-substitution well founded.
    """
    one = Fraction(1)
    pivots: dict[int, dict[int, Fraction]] = {}

    def insert(row: dict[int, Fraction]) -> None:
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                factor = row[lead]
                pivots[lead] = {c: v / factor for c, v in row.items()}
                return
            factor = row.pop(lead)
            for c, v in prow.items():
                if c == lead:
                    continue
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)

    for item in system.rows:
        if item[0] == "zero":
            insert({item[1]: one})
        else:
            _, a, b, r = item
            insert({a: one, b: Fraction(-r)})

    n = system.unknowns
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = one
        for p in sorted(pivots, reverse=True):
            acc = Fraction(0)
            for c, v in pivots[p].items():
                if c != p:
                    acc -= v * vec[c]
            vec[p] = acc
        lead_val = next(v for v in vec if v)
        basis.append(tuple(v / lead_val for v in vec))
    return basis


def solve_weight_space(m: int) -> tuple[int, list[WeightFunction]]:
    """Dimension and a normalized basis of the admissible weight space."""
    system = build_constraints(m)
    basis = _nullspace(system)
    return len(basis), [WeightFunction(m, vec) for vec in basis]


def check_condition_star(f: WeightFunction):
    """Exhaustive admissibility check.

    Returns (True, None) or (False, (eps, (i, j), (i2, j2))) where the two
    1-based ordered pairs give different values of the pair quantity on eps.
    """
    m = f.m
    _check_m(m)
    pairs = _ordered_pairs(m)
    for eps_mask in range(1 << m):
        ref = None
        ref_pair = None
        for i0, j0 in pairs:
            s = -1 if (eps_mask >> i0) & 1 else 1
            q = s * f.table[_argument_mask(eps_mask, m, i0, j0)]
            if ref is None:
                ref = q
                ref_pair = (i0 + 1, j0 + 1)
            elif q != ref:
                eps = SignVector(m, eps_mask)
                return False, (eps, ref_pair, (i0 + 1, j0 + 1))
    return True, None


def parity_product_weight(m: int) -> WeightFunction:
    """The coordinate-product weight, f(e) = prod e_k."""
    _check_m(m)
    size = 1 << (m - 2)
    table = tuple(
        Fraction(-1 if mask.bit_count() & 1 else 1) for mask in range(size)
    )
    return WeightFunction(m, table)


def weighted_count(
    alpha: AlphaVector, pair: PairSelection, f: WeightFunction
) -> Fraction:
    """Sum of f over the solution set of the pair."""
    if f.m != alpha.m:
        raise PreconditionError("weight length does not match the vector")
    sols = enumerate_solutions(alpha, pair)
    return sum((f.table[mask] for mask in sols.masks()), Fraction(0))
