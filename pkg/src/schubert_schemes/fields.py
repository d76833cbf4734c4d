"""Finite field arithmetic on integer element indices.

Elements of GF(q), q = p**k, are the integers ``0 .. q-1``.  For a prime
field the index is the residue itself.  For an extension field the index
is the base-p number whose digits are the polynomial coefficients
(low-to-high) of the element modulo the defining polynomial.  In both
cases 0 is the additive and 1 the multiplicative identity.

All arithmetic methods accept Python ints or integer numpy arrays and
broadcast like numpy ufuncs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

MAX_ORDER = 2**16

# Default moduli (low-to-high coefficients, monic) for small extension fields.
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),  # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),  # x^2 + 1 over GF(3)
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise ValueError("field order must be a prime power")
            return p, k
    raise ValueError("field order must be at least 2")


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``mod`` over GF(p)."""
    a = list(a)
    deg = len(mod) - 1
    for top in range(len(a) - 1, deg - 1, -1):
        c = a[top] % p
        if c:
            shift = top - deg
            for t, m in enumerate(mod):
                a[shift + t] = (a[shift + t] - c * m) % p
    return [x % p for x in a[:deg]] + [0] * max(0, deg - len(a))


def _has_factor(mod: Sequence[int], p: int) -> bool:
    """Brute-force search for a monic factor of degree 1 .. deg//2."""
    deg = len(mod) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            cand = [(low // p**t) % p for t in range(d)] + [1]
            if not any(_poly_mod(list(mod), cand, p)):
                return True
    return False


@dataclass(frozen=True)
class FieldSpec:
    """Presentation of GF(p**k).

    ``modulus`` lists the coefficients of a monic irreducible polynomial of
    degree ``k`` from the constant term up; it is required when ``k > 1``
    (or taken from :data:`DEFAULT_MODULI` for q in {4, 8, 9}).
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    @classmethod
    def parse(cls, text: str, modulus: str | Sequence[int] | None = None) -> "FieldSpec":
        """Parse ``"P"``, ``"P^K"`` or a plain prime-power order such as ``"9"``."""
        text = str(text).strip()
        if "^" in text:
            p, k = (int(t) for t in text.split("^"))
        else:
            p, k = _prime_power(int(text))
        if isinstance(modulus, str):
            modulus = tuple(int(c) for c in modulus.split(","))
        elif modulus is not None:
            modulus = tuple(int(c) for c in modulus)
        return cls(p, k, modulus)


class FiniteField:
    """Immutable handle for GF(q).

    Parameters
    ----------
    spec : FieldSpec
        Characteristic, degree and (for k > 1) the defining polynomial.

    Raises
    ------
    ValueError
        If ``p`` is not prime, ``q`` exceeds :data:`MAX_ORDER`, or the
        modulus is missing, not monic of degree ``k``, or reducible.
    """

    def __init__(self, spec: FieldSpec):
        p, k = int(spec.p), int(spec.k)
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**k
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_ORDER}")
        modulus = spec.modulus
        if k > 1:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(q)
            if modulus is None:
                raise ValueError(f"GF({p}^{k}) needs an explicit modulus")
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != k + 1 or any(not 0 <= c < p for c in modulus):
                raise ValueError("modulus must have k+1 coefficients in [0, p)")
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            if _has_factor(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        else:
            modulus = None
        self.p, self.k, self.q = p, k, q
        self.modulus = modulus
        if k > 1:
            self._build_tables()

    # -- construction helpers -------------------------------------------
    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        digits = np.array([[(a // p**t) % p for t in range(k)] for a in range(q)], dtype=np.int64)
        self._digits = digits
        self._weights = p ** np.arange(k, dtype=np.int64)
        self._neg = ((-digits) % p) @ self._weights

        def polymul(a: int, b: int) -> int:
            prod = [0] * (2 * k - 1)
            for s, x in enumerate(digits[a]):
                if x:
                    for t, y in enumerate(digits[b]):
                        prod[s + t] += int(x) * int(y)
            red = _poly_mod(prod, self.modulus, p)
            return sum(c * p**t for t, c in enumerate(red))

        # find a generator of the multiplicative group for log/exp tables
        for g in range(2, q):
            exp = np.zeros(2 * q, dtype=np.int64)
            log = np.zeros(q, dtype=np.int64)
            x, seen = 1, 0
            for e in range(q - 1):
                exp[e] = x
                log[x] = e
                x = polymul(x, g)
                seen += 1
                if x == 1:
                    break
            if seen == q - 1:
                break
        exp[q - 1 : 2 * q - 2] = exp[: q - 1]
        self._exp, self._log = exp, log

    @classmethod
    def of_order(cls, q: int | str, modulus=None) -> "FiniteField":
        return cls(FieldSpec.parse(str(q), modulus))

    # -- identity ---------------------------------------------------------
    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __len__(self) -> int:
        return self.q

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.p, self.k, self.modulus)

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p if _is_array(a, b) else (a + b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        out = ((self._digits[a] + self._digits[b]) % self.p) @ self._weights
        return out if out.ndim else int(out)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p if _is_array(a) else (-a) % self.p
        out = self._neg[np.asarray(a)]
        return out if out.ndim else int(out)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a) - b) % self.p if _is_array(a, b) else (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p if _is_array(a, b) else (a * b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        out = np.where((a == 0) | (b == 0), 0, self._exp[self._log[a] + self._log[b]])
        return out if out.ndim else int(out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("0 has no inverse")
        if self.k == 1:
            if _is_array(a):
                return self._prime_inverses[np.asarray(a)]
            return pow(int(a), -1, self.p)
        out = self._exp[(self.q - 1 - self._log[np.asarray(a)]) % (self.q - 1)]
        return out if out.ndim else int(out)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @cached_property
    def _prime_inverses(self) -> np.ndarray:
        table = np.zeros(self.p, dtype=np.int64)
        for a in range(1, self.p):
            table[a] = pow(a, -1, self.p)
        return table

    # -- enumeration and sampling ----------------------------------------
    def elements(self) -> list[int]:
        return list(range(self.q))

    def random_element(self, rng=None, nonzero: bool = False, size=None):
        """Uniform draw; ``rng`` is a seed or a :class:`numpy.random.Generator`."""
        rng = np.random.default_rng(rng)
        low = 1 if nonzero else 0
        out = rng.integers(low, self.q, size=size)
        return out if size is not None else int(out)


def _is_array(*xs) -> bool:
    return any(isinstance(x, np.ndarray) for x in xs)


def make_field(spec: FieldSpec | int | str, modulus=None) -> FiniteField:
    """Build a field from a :class:`FieldSpec` or an order such as ``11``, ``"2^2"``."""
    if isinstance(spec, FieldSpec):
        return FiniteField(spec)
    return FiniteField(FieldSpec.parse(str(spec), modulus))


def elements(field: FiniteField) -> list[int]:
    return field.elements()


def random_element(field: FiniteField, rng=None) -> int:
    return field.random_element(rng)
