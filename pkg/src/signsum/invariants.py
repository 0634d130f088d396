"""Solution sets of the two-sided signed-sum inequality and their invariants.

For a positive vector a of length m and an index pair (i, j), the solution
set collects the sign vectors e on the remaining m-2 coordinates with

    |a_i - a_j|  <  sum_k e_k a_k  <  a_i + a_j,

both inequalities strict.  This module enumerates that set exactly, computes
the signed count N (sum of coordinate products), the count parity, and the
closed-form sign-sum routes to the same numbers, and verifies the laws that
make N and the parity invariants of the vector rather than of the pair.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    AlphaVector,
    InternalCheckError,
    PairSelection,
    PreconditionError,
    Scalar,
    SignVector,
    check_generic,
    minimum_gap,
    require_generic,
    worker_count,
    zero_sum_masks,
    _gray_walk,
    _product_walk,
)

__all__ = [
    "SolutionSet",
    "PairInvariants",
    "InvariantReport",
    "WallCrossing",
    "enumerate_solutions",
    "count_solutions",
    "signed_count",
    "parity",
    "closed_form_g",
    "count_via_sign_sum",
    "signed_count_even_via_sign_sum",
    "extended_signed_count",
    "verify_invariance",
    "wall_crossing_check",
    "orient_pair",
]

# Chunked scans only pay off past this many masks per worker.
_PARALLEL_THRESHOLD = 1 << 12


@dataclass(frozen=True)
class SolutionSet:
    """Materialized solution set for one pair, sorted ascending by bitmask."""

    pair: PairSelection
    solutions: tuple[SignVector, ...]
    source: AlphaVector

    def masks(self) -> tuple[int, ...]:
        return tuple(sv.bits for sv in self.solutions)


@dataclass(frozen=True)
class ScanResult:
    count: int
    signed: int
    extended: int
    masks: tuple[int, ...] | None


def _pair_positions(alpha: AlphaVector, pair: PairSelection) -> tuple[int, int]:
    if alpha.m < 3:
        raise PreconditionError("solution sets require at least 3 components")
    pair.validate(alpha.m)
    return pair.i - 1, pair.j - 1


def _rest_positions(m: int, i0: int, j0: int) -> list[int]:
    return [pos for pos in range(m) if pos != i0 and pos != j0]


def _chunk_bounds(total: int, workers: int) -> list[tuple[int, int]]:
    step = -(-total // workers)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _effective_workers(total: int) -> int:
    w = worker_count()
    if w <= 1 or total < 2 * _PARALLEL_THRESHOLD:
        return 1
    return min(w, total // _PARALLEL_THRESHOLD)


def _scan_rational(alpha, i0, j0, materialize, h1):
    den = math.lcm(*[c.ratio.denominator for c in alpha.components])
    ints = [int(c.ratio * den) for c in alpha.components]
    rest = [ints[pos] for pos in _rest_positions(alpha.m, i0, j0)]
    lo_bound = abs(ints[i0] - ints[j0])
    hi_bound = ints[i0] + ints[j0]
    m2 = len(rest)
    total = 1 << m2

    def run(t_lo, t_hi):
        mask = t_lo ^ (t_lo >> 1)
        s = sum(-v if (mask >> k) & 1 else v for k, v in enumerate(rest))
        count = signed = ext = 0
        masks = [] if materialize else None
        t = t_lo
        while t < t_hi:
            if t != t_lo:
                b = (t & -t).bit_length() - 1
                bit = 1 << b
                mask ^= bit
                if mask & bit:
                    s -= 2 * rest[b]
                else:
                    s += 2 * rest[b]
            if lo_bound < s < hi_bound:
                prod = -1 if mask.bit_count() & 1 else 1
                count += 1
                signed += prod
                if h1 is not None:
                    ext += -prod if (mask >> h1) & 1 else prod
                if masks is not None:
                    masks.append(mask)
            elif s == lo_bound or s == hi_bound:
                raise InternalCheckError(
                    "boundary equality on a generic vector"
                )
            t += 1
        return count, signed, ext, masks

    return _merge_chunks(run, total, materialize)


def _scan_log(alpha, i0, j0, materialize, h1):
    ratios = alpha.ratios()
    rest_pos = _rest_positions(alpha.m, i0, j0)
    nums = [ratios[p].numerator for p in rest_pos]
    dens = [ratios[p].denominator for p in rest_pos]
    ui, uj = ratios[i0], ratios[j0]
    lo = max(ui, uj) / min(ui, uj)
    hi = ui * uj
    lo_n, lo_d = lo.numerator, lo.denominator
    hi_n, hi_d = hi.numerator, hi.denominator
    m2 = len(rest_pos)
    total = 1 << m2
    full = total - 1

    # Subset-product tables: one big-integer multiply per entry.  The
    # denominator table is skipped when every argument is an integer.
    pn = [1] * total
    for s in range(1, total):
        low = (s & -s).bit_length() - 1
        pn[s] = pn[s & (s - 1)] * nums[low]
    if all(d == 1 for d in dens):
        pd = None
    else:
        pd = [1] * total
        for s in range(1, total):
            low = (s & -s).bit_length() - 1
            pd[s] = pd[s & (s - 1)] * dens[low]

    def run(lo_mask, hi_mask):
        count = signed = ext = 0
        masks = [] if materialize else None
        for mask in range(lo_mask, hi_mask):
            comp = full ^ mask
            if pd is None:
                x = pn[comp]
                y = pn[mask]
            else:
                x = pn[comp] * pd[mask]
                y = pd[comp] * pn[mask]
            # membership: lo < x/y < hi, decided by cross-multiplication
            a = x * lo_d
            b = y * lo_n
            if a > b:
                c = x * hi_d
                d = y * hi_n
                if c < d:
                    prod = -1 if mask.bit_count() & 1 else 1
                    count += 1
                    signed += prod
                    if h1 is not None:
                        ext += -prod if (mask >> h1) & 1 else prod
                    if masks is not None:
                        masks.append(mask)
                elif c == d:
                    raise InternalCheckError(
                        "boundary equality on a generic vector"
                    )
            elif a == b:
                raise InternalCheckError("boundary equality on a generic vector")
        return count, signed, ext, masks

    return _merge_chunks(run, total, materialize)


def _merge_chunks(run, total, materialize):
    workers = _effective_workers(total)
    if workers == 1:
        count, signed, ext, masks = run(0, total)
    else:
        bounds = _chunk_bounds(total, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: run(*b), bounds))
        count = sum(p[0] for p in parts)
        signed = sum(p[1] for p in parts)
        ext = sum(p[2] for p in parts)
        masks = None
        if materialize:
            masks = [m for p in parts for m in p[3]]
    if masks is not None:
        masks = tuple(sorted(masks))
    return ScanResult(count, signed, ext, masks)


def _scan(alpha, pair, materialize=False, h1=None) -> ScanResult:
    i0, j0 = _pair_positions(alpha, pair)
    require_generic(alpha)
    if alpha.is_log:
        return _scan_log(alpha, i0, j0, materialize, h1)
    return _scan_rational(alpha, i0, j0, materialize, h1)


def enumerate_solutions(alpha: AlphaVector, pair: PairSelection) -> SolutionSet:
    """All sign vectors strictly inside the two-sided bound, ascending."""
    i0, j0 = _pair_positions(alpha, pair)
    result = _scan(alpha, pair, materialize=True)
    cmap = tuple(
        alpha.original_index(pos) for pos in _rest_positions(alpha.m, i0, j0)
    )
    sols = tuple(
        SignVector(alpha.m - 2, mask, cmap) for mask in result.masks
    )
    return SolutionSet(pair, sols, alpha)


def count_solutions(alpha: AlphaVector, pair: PairSelection) -> int:
    return _scan(alpha, pair).count


def signed_count(alpha: AlphaVector, pair: PairSelection) -> int:
    """Sum of coordinate products over the solution set."""
    return _scan(alpha, pair).signed


def parity(alpha: AlphaVector, pair: PairSelection) -> int:
    """Solution count mod 2; the same for every pair."""
    return _scan(alpha, pair).count & 1


def _half_sign_terms(alpha: AlphaVector, fixed_pos: int):
    """Yield (full_mask, sign) over sign vectors with ``fixed_pos`` at +1.

    full_mask is an m-bit mask with the fixed bit clear; sign is the exact
    sign of the signed sum.  Exactly 2^(m-1) terms.
    """
    m = alpha.m
    free = [pos for pos in range(m) if pos != fixed_pos]
    if alpha.is_log:
        fixed = alpha.components[fixed_pos].ratio
        n0, d0 = fixed.numerator, fixed.denominator
        for mask, x, y in _product_walk([alpha.components[p].ratio for p in free]):
            x, y = x * n0, y * d0
            full = 0
            for k, pos in enumerate(free):
                if (mask >> k) & 1:
                    full |= 1 << pos
            yield full, (x > y) - (x < y)
    else:
        den = math.lcm(*[c.ratio.denominator for c in alpha.components])
        ints = [int(c.ratio * den) for c in alpha.components]
        base = ints[fixed_pos]
        rest = [ints[p] for p in free]
        for mask, total in _gray_walk(rest):
            s = base + total
            full = 0
            for k, pos in enumerate(free):
                if (mask >> k) & 1:
                    full |= 1 << pos
            yield full, (s > 0) - (s < 0)


def closed_form_g(alpha: AlphaVector) -> int:
    """The sign-sum closed form: -(1/4) sum over all e of sgn(<e,a>) prod e.

    Equals the signed count for every pair when m is odd.  For even m the
    e and -e terms cancel pairwise, so the value is identically 0.
    """
    if alpha.m < 3:
        raise PreconditionError("closed form requires at least 3 components")
    require_generic(alpha)
    if alpha.m % 2 == 0:
        return 0
    total = 0
    for full, sign in _half_sign_terms(alpha, 0):
        prod = -1 if full.bit_count() & 1 else 1
        total += sign * prod
    # the fixed-coordinate half contributes exactly half of the full sum
    if total % 2:
        raise InternalCheckError("closed-form half sum must be even")
    return -total // 2


def orient_pair(alpha: AlphaVector, pair: PairSelection) -> tuple[int, int]:
    """0-based (smaller, larger) positions of the pair, by component value.

    Ties resolve to the lower index as the smaller element.
    """
    i0, j0 = _pair_positions(alpha, pair)
    if alpha.components[i0] <= alpha.components[j0]:
        return i0, j0
    return j0, i0


def count_via_sign_sum(alpha: AlphaVector, pair: PairSelection) -> int:
    """Solution count as (1/2) sum of sgn(<e,a>) over e fixing the smaller
    pair coordinate to +1."""
    require_generic(alpha)
    small, _ = orient_pair(alpha, pair)
    total = sum(sign for _, sign in _half_sign_terms(alpha, small))
    if total % 2:
        raise InternalCheckError("count sign sum must be even")
    return total // 2


def signed_count_even_via_sign_sum(alpha: AlphaVector, pair: PairSelection) -> int:
    """Signed count for even m as (1/4) sum of e_j sgn(<e,a>) prod e, with j
    the larger pair coordinate."""
    if alpha.m % 2:
        raise PreconditionError("this route requires even length")
    require_generic(alpha)
    _, large = orient_pair(alpha, pair)
    total = 0
    for full, sign in _half_sign_terms(alpha, 0):
        prod = -1 if full.bit_count() & 1 else 1
        ej = -1 if (full >> large) & 1 else 1
        total += ej * sign * prod
    # e and -e contribute equally when m is even, so this is half the sum
    if total % 2:
        raise InternalCheckError("signed-count sign sum must be even")
    return total // 2


def extended_signed_count(
    alpha: AlphaVector, pair: PairSelection, h: int
) -> int:
    """Signed count with one extra sign factor at the coordinate holding
    component h; pair-independent for even m over pairs avoiding h."""
    if alpha.m < 4:
        raise PreconditionError("extended count requires at least 4 components")
    i0, j0 = _pair_positions(alpha, pair)
    if not 1 <= h <= alpha.m:
        raise PreconditionError("extra index out of range")
    if h in (pair.i, pair.j):
        raise PreconditionError("extra index must avoid the pair")
    rest = _rest_positions(alpha.m, i0, j0)
    h1 = rest.index(h - 1)
    return _scan(alpha, pair, h1=h1).extended


@dataclass(frozen=True)
class PairInvariants:
    pair: PairSelection
    count: int
    parity: int
    signed: int


@dataclass
class InvariantReport:
    """Per-pair table plus the cross-pair invariance flags.

    Flags that do not apply to the parity of m are None.  Grouping maps are
    keyed by component value (the larger or smaller of each pair).
    """

    m: int
    rows: list[PairInvariants]
    parity_invariant: bool
    parity: int | None
    n_invariant: bool | None
    signed: int | None
    n_by_max_omitted: dict[Scalar, int] | None
    count_by_min_omitted: dict[Scalar, int]
    abs_n_invariant: bool | None
    violations: list[str] = field(default_factory=list)


def verify_invariance(alpha: AlphaVector) -> InvariantReport:
    """Compute every pair and check the cross-pair laws.

    A violation marks an implementation bug, not bad input; it is recorded
    in the report rather than raised.
    """
    require_generic(alpha)
    m = alpha.m
    rows = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            pair = PairSelection(i, j)
            scan = _scan(alpha, pair)
            rows.append(PairInvariants(pair, scan.count, scan.count & 1, scan.signed))

    violations = []
    parities = {row.parity for row in rows}
    parity_invariant = len(parities) == 1
    if not parity_invariant:
        violations.append("parity differs across pairs")
    common_parity = rows[0].parity if parity_invariant else None

    n_invariant = None
    common_signed = None
    n_by_max = None
    if m % 2:
        signs = {row.signed for row in rows}
        n_invariant = len(signs) == 1
        if n_invariant:
            common_signed = rows[0].signed
        else:
            violations.append("signed count differs across pairs (odd length)")
    else:
        n_by_max = {}
        for row in rows:
            small, large = orient_pair(alpha, row.pair)
            key = alpha.components[large]
            if key in n_by_max and n_by_max[key] != row.signed:
                violations.append(
                    "signed count not a function of the larger component"
                )
            n_by_max.setdefault(key, row.signed)

    count_by_min = {}
    for row in rows:
        small, _ = orient_pair(alpha, row.pair)
        key = alpha.components[small]
        if key in count_by_min and count_by_min[key] != row.count:
            violations.append("count not a function of the smaller component")
        count_by_min.setdefault(key, row.count)

    abs_n_invariant = None
    if m == 4:
        abs_vals = {abs(row.signed) for row in rows}
        abs_n_invariant = len(abs_vals) == 1
        if not abs_n_invariant:
            violations.append("absolute signed count differs across pairs (m=4)")

    return InvariantReport(
        m=m,
        rows=rows,
        parity_invariant=parity_invariant,
        parity=common_parity,
        n_invariant=n_invariant,
        signed=common_signed,
        n_by_max_omitted=n_by_max,
        count_by_min_omitted=count_by_min,
        abs_n_invariant=abs_n_invariant,
        violations=violations,
    )


@dataclass(frozen=True)
class WallCrossing:
    """Measured and predicted jumps across a degeneracy wall.

    Jumps are value(a with a_l - delta) minus value(a with a_l + delta).
    """

    pair: PairSelection
    perturbed: int
    delta: Fraction
    jump_signed: int
    jump_count: int
    predicted_signed: int
    predicted_count: int
    wall_masks: tuple[int, ...]


def wall_crossing_check(
    alpha: AlphaVector,
    l: int,
    pair: PairSelection,
    delta: Fraction | None = None,
) -> WallCrossing:
    """Measure the solution-set jumps when coordinate l crosses its wall.

    The input may sit on a wall (some vanishing signed sums) or be generic
    (no walls, all jumps zero).  Both perturbed endpoints must be generic,
    which holds automatically for any delta below half the minimum nonzero
    gap.  The measured jumps are compared against the wall-solution sums
    predicted by the crossing analysis; a mismatch raises, since it would
    mean the enumeration and the prediction disagree.
    """
    if alpha.is_log:
        raise PreconditionError("wall crossing requires the plain realization")
    i0, j0 = _pair_positions(alpha, pair)
    if not 1 <= l <= alpha.m:
        raise PreconditionError("perturbed index out of range")
    l0 = l - 1
    if l0 in (i0, j0):
        raise PreconditionError("perturbed index must avoid the pair")

    gap = minimum_gap(alpha)
    if delta is None:
        delta = gap / 4
    else:
        delta = Fraction(delta)
    if not 0 < delta < gap / 2:
        raise PreconditionError(
            "delta must be positive and below half the minimum nonzero gap"
        )
    walls = zero_sum_masks(alpha)

    base = alpha.components[l0].ratio
    if base <= delta:
        raise PreconditionError("delta would drive the component nonpositive")

    def perturbed(sign):
        comps = list(alpha.components)
        comps[l0] = Scalar(base + sign * delta, False)
        return AlphaVector(comps, index_map=alpha.index_map)

    minus = perturbed(-1)
    plus = perturbed(+1)
    for endpoint in (minus, plus):
        if not check_generic(endpoint).generic:
            raise InternalCheckError("perturbed endpoint is degenerate")

    scan_minus = _scan(minus, pair)
    scan_plus = _scan(plus, pair)
    jump_signed = scan_minus.signed - scan_plus.signed
    jump_count = scan_minus.count - scan_plus.count

    # Each wall solution r moves exactly one sign vector in or out of the
    # solution set.  Which side it lands on is decided by r_l, and its
    # contribution by whether the pair coordinates agree in r (a crossing
    # of the upper bound) or differ (the lower bound).
    small, _ = orient_pair(alpha, pair)
    pred_signed = 0
    pred_count = 0
    for mask in walls:
        sig = lambda pos: -1 if (mask >> pos) & 1 else 1
        ri, rj, rl, r_small = sig(i0), sig(j0), sig(l0), sig(small)
        pred_count += -r_small * rl
        prod_rest = 1
        for pos in range(alpha.m):
            if pos != i0 and pos != j0 and (mask >> pos) & 1:
                prod_rest = -prod_rest
        if ri == rj:
            norm = (-ri) ** (alpha.m - 1)
            pred_signed += norm * rl * prod_rest
        else:
            norm = r_small ** (alpha.m - 1)
            pred_signed += -norm * rl * prod_rest

    if jump_signed != pred_signed or jump_count != pred_count:
        raise InternalCheckError(
            "measured wall jumps disagree with the crossing prediction: "
            f"measured ({jump_signed}, {jump_count}), "
            f"predicted ({pred_signed}, {pred_count})"
        )
    return WallCrossing(
        pair=pair,
        perturbed=l,
        delta=delta,
        jump_signed=jump_signed,
        jump_count=jump_count,
        predicted_signed=pred_signed,
        predicted_count=pred_count,
        wall_masks=tuple(walls),
    )
