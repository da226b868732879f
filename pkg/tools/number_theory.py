"""Integer helpers over sympy's ntheory: primality, factorization and prime-power enumeration."""

from typing import Dict, List, Tuple

from sympy import divisors as _divisors
from sympy import factorint, isprime, primefactors, primerange, totient


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def factorize(n: int) -> Dict[int, int]:
    """Return {prime: exponent} for n >= 1 (empty for n = 1)."""
    return {int(p): int(e) for p, e in factorint(n).items()}


def prime_divisors(n: int) -> List[int]:
    return [int(p) for p in primefactors(n)]


def divisors(n: int) -> List[int]:
    return [int(d) for d in _divisors(n)]


def euler_phi(n: int) -> int:
    return int(totient(n))


def prime_powers_up_to(q_max: int) -> List[Tuple[int, int, int]]:
    """All (q, p, m) with q = p**m <= q_max, p prime, m >= 1, sorted by q."""
    powers = []
    for p in primerange(2, q_max + 1):
        q, m = int(p), 1
        while q <= q_max:
            powers.append((q, int(p), m))
            q *= int(p)
            m += 1
    return sorted(powers)
