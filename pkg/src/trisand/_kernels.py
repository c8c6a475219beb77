"""Exact determinants of integer matrices via CRT over word-sized primes.

Tree numbers in the recursive lower-bound family grow geometrically, so their
reduced Laplacians need exact big-integer determinants at sizes where pure
Python fraction-free elimination gets slow.  The approach here: compute the
determinant modulo enough 30-bit primes to cover the Hadamard bound, then
recombine with the Chinese remainder theorem.

The mod-p elimination is the hot kernel.  Two interchangeable implementations
exist: a numba-jitted one and a vectorised numpy one.  The environment
variable ``TRISAND_BACKEND`` ("numba" or "numpy") selects between them; the
default is numba when it imports, numpy otherwise.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

_PRIME_CEILING = (1 << 30) - 1  # keeps products of two residues inside int64
_primes: list[int] = []


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes(count: int) -> list[int]:
    """First `count` primes descending from just below 2**30, cached."""
    candidate = _primes[-1] - 2 if _primes else _PRIME_CEILING
    while len(_primes) < count:
        if _is_prime(candidate):
            _primes.append(candidate)
        candidate -= 2
    return _primes[:count]


def active_backend() -> str:
    """Return "numba" or "numpy" according to TRISAND_BACKEND and availability."""
    choice = os.environ.get("TRISAND_BACKEND", "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("TRISAND_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


def det_mod_numpy(a: np.ndarray, p: int) -> int:
    """Determinant of `a` modulo prime `p` by vectorised Gaussian elimination.

    `a` is modified in place and must already be reduced into [0, p).
    """
    n = a.shape[0]
    det = 1
    for k in range(n):
        col = a[k:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return 0
        piv = k + int(nz[0])
        if piv != k:
            a[[k, piv], k:] = a[[piv, k], k:]
            det = p - det
        pivot = int(a[k, k])
        det = det * pivot % p
        if k + 1 < n:
            inv = pow(pivot, p - 2, p)
            factors = a[k + 1:, k] * inv % p
            a[k + 1:, k:] = (a[k + 1:, k:] - factors[:, None] * a[k, k:]) % p
    return det % p


if HAS_NUMBA:

    @njit(cache=True)
    def _det_mod_numba(a, p):  # pragma: no cover - exercised via det_mod
        n = a.shape[0]
        det = 1
        for k in range(n):
            piv = -1
            for i in range(k, n):
                if a[i, k] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != k:
                for j in range(k, n):
                    tmp = a[k, j]
                    a[k, j] = a[piv, j]
                    a[piv, j] = tmp
                det = p - det
            pivot = a[k, k]
            det = det * pivot % p
            # modular inverse via Fermat
            inv = 1
            base = pivot % p
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = inv * base % p
                base = base * base % p
                e >>= 1
            for i in range(k + 1, n):
                f = a[i, k] * inv % p
                if f != 0:
                    for j in range(k, n):
                        a[i, j] = (a[i, j] - f * a[k, j]) % p
        return det % p


def det_mod(rows: list[list[int]], p: int) -> int:
    """Determinant mod p of an integer matrix given as list-of-rows."""
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    if active_backend() == "numba":
        return int(_det_mod_numba(a, p)) % p
    return det_mod_numpy(a, p) % p


def hadamard_bound(rows: list[list[int]]) -> int:
    """Integer upper bound on |det| via Hadamard's inequality."""
    bound_sq = 1
    for row in rows:
        s = sum(x * x for x in row)
        if s == 0:
            return 0
        bound_sq *= s
    return math.isqrt(bound_sq) + 1


def det_exact_crt(rows: list[list[int]]) -> int:
    """Exact determinant by CRT over enough primes to exceed 2 * Hadamard."""
    n = len(rows)
    if n == 0:
        return 1
    bound = hadamard_bound(rows)
    if bound == 0:
        return 0
    target = 2 * bound + 1
    residue, modulus = 0, 1
    idx = 0
    while modulus <= target:
        p = primes(idx + 1)[idx]
        idx += 1
        r = det_mod(rows, p)
        # combine (residue mod modulus) with (r mod p)
        inv = pow(modulus % p, p - 2, p)
        t = (r - residue) % p * inv % p
        residue += modulus * t
        modulus *= p
    if residue > modulus // 2:
        residue -= modulus
    return residue
