"""Integer helpers: primality, factorization, prime powers, divisors."""

from __future__ import annotations

from sympy import divisors as _divisors
from sympy import factorint, isprime, primerange
from sympy.ntheory import pollard_rho

from .config import FactorizationError

# trial-division bound handed to sympy before Pollard rho / p-1 kick in
_TRIAL_LIMIT = 10**6


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def factorize(n: int, effort: int | None = None) -> dict[int, int]:
    """Complete prime factorization of ``n >= 1``.

    ``effort`` bounds the trial-division stage; if the remaining cofactor
    cannot be split, FactorizationError carries the partial result.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    if n == 1:
        return {}
    if effort is None:
        factors = factorint(n)
    else:
        factors = factorint(n, limit=effort, use_ecm=False)
    composite = [f for f in factors if not is_prime(f)]
    if composite:
        raise FactorizationError(
            f"could not fully factor {n}; unfactored part(s): {composite}",
        ) from None
    return {int(f): int(m) for f, m in sorted(factors.items())}


def partial_factorize(n: int, effort: int = _TRIAL_LIMIT,
                      rho_steps: int = 50_000) -> tuple[dict[int, int], int]:
    """Best-effort factorization: (prime factors found, unfactored cofactor).

    Trial division by primes below ``effort``, then Pollard rho with a
    bounded number of steps on whatever composite parts remain.
    """
    n = abs(n)
    if n == 0:
        return {}, 0
    primes: dict[int, int] = {}
    for d in primerange(2, effort):
        if d * d > n:
            break
        while n % d == 0:
            primes[d] = primes.get(d, 0) + 1
            n //= d
    rest = 1
    stack = [n] if n > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c):
            primes[c] = primes.get(c, 0) + 1
            continue
        d = pollard_rho(c, max_steps=rho_steps, retries=3)
        if d is None or d in (1, c):
            rest *= c
        else:
            stack.extend((int(d), c // int(d)))
    return dict(sorted(primes.items())), rest


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, n) with q = p**n, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, n),) = f.items()
    return p, n


def divisors(n: int) -> list[int]:
    return [int(d) for d in _divisors(n)]


def primes_up_to(n: int) -> list[int]:
    return [int(p) for p in primerange(2, n + 1)]


def odd_prime_powers(q_max: int, q_min: int = 3) -> list[tuple[int, int, int]]:
    """All (q, p, n) with q = p**n odd, q_min <= q <= q_max, sorted by q."""
    out = []
    for p in primes_up_to(q_max):
        if p == 2:
            continue
        q, n = p, 1
        while q <= q_max:
            if q >= q_min:
                out.append((q, p, n))
            q *= p
            n += 1
    out.sort()
    return out
