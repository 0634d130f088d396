"""Logarithms of primes as a worked input family, computed two ways.

For the vector of logs of the first n primes, unique factorization keeps
every signed sum away from zero, so the enumeration machinery applies
with exact big-integer comparisons.  The signed count has a second form:
a Mobius sum over smooth numbers in a square-root window around the
primorial.  Both routes are implemented and checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AlphaVector,
    InternalCheckError,
    PairSelection,
    PreconditionError,
    check_generic,
    log_vector,
    max_vector_length,
)
from .invariants import signed_count

__all__ = [
    "PRIMES_MAX_N",
    "PrimeExample",
    "PrimeReport",
    "prime_alpha",
    "mobius_sum",
    "verify_prime_example",
]

PRIMES_MAX_N = 20


def _first_primes(n: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < n:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    return primes


def _check_n(n: int) -> int:
    n = int(n)
    cap = min(PRIMES_MAX_N, max_vector_length())
    if not 3 <= n <= cap:
        raise PreconditionError(f"prime count must satisfy 3 <= n <= {cap}")
    return n


@dataclass(frozen=True)
class PrimeExample:
    n: int
    primes: tuple[int, ...]
    alpha: AlphaVector


def prime_alpha(n: int) -> PrimeExample:
    """First n primes as a log-realization vector.

    Genericity holds automatically by unique factorization; it is still
    asserted, and a failure would mean a bug rather than bad input.
    """
    n = _check_n(n)
    ps = _first_primes(n)
    alpha = log_vector(ps)
    if not check_generic(alpha).generic:
        raise InternalCheckError("prime logs must have no vanishing signed sum")
    return PrimeExample(n, tuple(ps), alpha)


def mobius_sum(n: int, i: int, j: int) -> int:
    """Signed count via a Mobius sum over smooth numbers.

    Sums the Mobius value over squarefree integers whose prime factors
    all lie among the first n primes, coprime to p_i * p_j, strictly
    between sqrt(P)/p_i and sqrt(P) with P the primorial, then flips the
    sign for odd n.  Every window comparison is done by squaring in big
    integers; P is squarefree, so neither boundary can be hit and the
    open window is decided exactly.  Non-squarefree integers contribute
    nothing and are never generated.
    """
    n = _check_n(n)
    i, j = int(i), int(j)
    if i == j:
        raise PreconditionError("pair indices must differ")
    if not 1 <= i < j <= n:
        raise PreconditionError("pair indices must satisfy 1 <= i < j <= n")
    primes = _first_primes(n)
    big_p = 1
    for p in primes:
        big_p *= p
    pi = primes[i - 1]
    pi_sq = pi * pi
    allowed = [p for k, p in enumerate(primes) if k not in (i - 1, j - 1)]
    total = 0

    def extend(pos: int, t: int, factors: int) -> None:
        nonlocal total
        if t * t * pi_sq > big_p:
            total += 1 if factors % 2 == 0 else -1
        for idx in range(pos, len(allowed)):
            tq = t * allowed[idx]
            if tq * tq >= big_p:
                break  # ascending primes: every later product is larger
            extend(idx + 1, tq, factors + 1)

    extend(0, 1, 0)
    return -total if n % 2 else total


@dataclass(frozen=True)
class PrimeReport:
    """Both routes for every pair, plus the cross-pair grouping.

    ``common`` is the shared value for odd n; ``by_larger`` keys the value
    by the larger prime of the pair for even n.
    """

    n: int
    primes: tuple[int, ...]
    rows: tuple[tuple[int, int, int, int], ...]  # (i, j, direct, mobius)
    common: int | None
    by_larger: dict[int, int] | None


def verify_prime_example(n: int) -> PrimeReport:
    """Run both routes over every pair and check the invariance pattern.

    Any disagreement between the routes, or any failure of the expected
    pair dependence, is an implementation bug and raises.
    """
    example = prime_alpha(n)
    n = example.n
    rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            direct = signed_count(example.alpha, PairSelection(i, j))
            via_mobius = mobius_sum(n, i, j)
            if direct != via_mobius:
                raise InternalCheckError(
                    f"routes disagree at pair ({i},{j}): "
                    f"direct {direct}, mobius {via_mobius}"
                )
            rows.append((i, j, direct, via_mobius))

    common: int | None = None
    by_larger: dict[int, int] | None = None
    if n % 2:
        values = {r[2] for r in rows}
        if len(values) != 1:
            raise InternalCheckError("odd-length value must be pair-independent")
        common = rows[0][2]
    else:
        by_larger = {}
        for i, j, direct, _ in rows:
            key = example.primes[j - 1]
            if key in by_larger and by_larger[key] != direct:
                raise InternalCheckError(
                    "even-length value must depend only on the larger prime"
                )
            by_larger.setdefault(key, direct)
    return PrimeReport(n, example.primes, tuple(rows), common, by_larger)
