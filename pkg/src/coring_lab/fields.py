"""Exact scalar arithmetic over prime fields F_p and the rationals.

Arrays are plain numpy ndarrays: int64 entries reduced into [0, p) for a
prime field, Fraction objects for the rationals.  A Field instance owns
construction, reduction, inversion and products; arrays from different
fields must never be mixed (checked at the public boundaries).

Large integer mat-mats are routed through float64 BLAS when the exact
result provably fits in 53 bits, which keeps Gaussian elimination on
relation matrices fast without giving up exactness.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import FieldMismatchError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class Field:
    """Descriptor plus arithmetic for one exact field."""

    characteristic: int

    def asarray(self, data):
        raise NotImplementedError

    def zeros(self, shape):
        raise NotImplementedError

    def eye(self, n):
        raise NotImplementedError

    def inv_scalar(self, x):
        raise NotImplementedError

    def matmul(self, a, b):
        raise NotImplementedError

    def tensordot(self, a, b, axes):
        raise NotImplementedError

    def kron(self, a, b):
        raise NotImplementedError

    def random(self, rng, shape):
        raise NotImplementedError

    def parse_scalar(self, text):
        raise NotImplementedError

    def format_scalar(self, x) -> str:
        raise NotImplementedError

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatchError(f"field mismatch: {self} vs {other}")

    # numpy comparisons work elementwise for both int64 and object arrays
    @staticmethod
    def equal(a, b) -> bool:
        return a.shape == b.shape and bool(np.all(a == b))


class PrimeField(Field):
    """F_p for a prime p < 2**31, elements stored as int64 in [0, p)."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"characteristic must be a prime below 2**31, got {p}")
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def asarray(self, data):
        return np.asarray(data, dtype=np.int64) % self.characteristic

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def inv_scalar(self, x):
        return pow(int(x), self.characteristic - 2, self.characteristic)

    def _via_blas(self, inner: int) -> bool:
        # exactness bound: every dot product stays below 2**53
        return inner * (self.characteristic - 1) ** 2 < 2**53

    def matmul(self, a, b):
        p = self.characteristic
        inner = a.shape[-1]
        if a.size * b.size > 2**16 and self._via_blas(inner):
            c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
            return c % p
        return (a @ b) % p

    def tensordot(self, a, b, axes):
        p = self.characteristic
        if isinstance(axes, int):
            inner = int(np.prod(a.shape[-axes:])) if axes else 1
        else:
            inner = int(np.prod([a.shape[ax] for ax in np.atleast_1d(axes[0])]))
        if a.size * b.size > 2**18 and self._via_blas(max(inner, 1)):
            c = np.rint(np.tensordot(a.astype(np.float64), b.astype(np.float64), axes))
            return c.astype(np.int64) % p
        return np.tensordot(a, b, axes) % p

    def kron(self, a, b):
        return np.kron(a, b) % self.characteristic

    def random(self, rng, shape):
        return rng.integers(0, self.characteristic, size=shape, dtype=np.int64)

    def parse_scalar(self, text):
        p = self.characteristic
        if isinstance(text, int):
            return text % p
        s = str(text).strip()
        if "mod" in s:
            value, modulus = s.split("mod")
            if int(modulus) != p:
                raise ValueError(f"scalar {s!r} carries modulus {modulus.strip()}, field is GF({p})")
            return int(value) % p
        return int(s) % p

    def format_scalar(self, x) -> str:
        return f"{int(x) % self.characteristic} mod {self.characteristic}"


def _scaled_integral_view(arr):
    """(int64 array, denominator, max magnitude) with arr == ints / denom,
    or None.  Clearing the common denominator lets large products run
    through int64 at numpy speed; the caller checks the magnitude bound."""
    flat = arr.reshape(-1)
    denom = 1
    for v in flat:
        if type(v) is Fraction:
            d = v.denominator
            if denom % d:
                denom = denom * d // _gcd(denom, d)
                if denom > 1 << 16:
                    return None
        elif type(v) is not int and not isinstance(v, np.integer):
            return None
    out = np.empty(flat.shape[0], dtype=np.int64)
    biggest = 0
    for idx in range(flat.shape[0]):
        v = flat[idx]
        n = v.numerator * (denom // v.denominator) if type(v) is Fraction \
            else int(v) * denom
        if n > 1 << 40 or n < -(1 << 40):
            return None
        if abs(n) > biggest:
            biggest = abs(n)
        out[idx] = n
    return out.reshape(arr.shape), denom, biggest


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _box_scaled(ints, denom: int):
    """Object array of exact values ints / denom."""
    if denom == 1:
        return ints.astype(object)
    flat = ints.reshape(-1)
    out = np.empty(flat.shape[0], dtype=object)
    for idx in range(flat.shape[0]):
        out[idx] = Fraction(int(flat[idx]), denom)
    return out.reshape(ints.shape)


class RationalField(Field):
    """The rationals, elements stored as Fraction objects in object arrays.

    Products of all-integer arrays are routed through int64 (exact for the
    sizes this package handles) and boxed back into object arrays.
    """

    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def asarray(self, data):
        if isinstance(data, np.ndarray) and data.dtype == object:
            flat = data.reshape(-1)
            for v in flat:
                if type(v) is not Fraction and type(v) is not int:
                    break
            else:
                return data  # already exact; ints are exact rationals
        arr = np.array(data, dtype=object)
        if isinstance(data, np.ndarray):
            arr = arr.reshape(data.shape)
        flat = arr.reshape(-1)
        for i, v in enumerate(flat):
            if type(v) is Fraction or type(v) is int:
                continue
            flat[i] = int(v) if isinstance(v, np.integer) else Fraction(v)
        return flat.reshape(arr.shape)

    def zeros(self, shape):
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr

    def eye(self, n):
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr

    def inv_scalar(self, x):
        return Fraction(1) / x

    @staticmethod
    def _fast_binary(a, b, op):
        if a.size * b.size > 4096:
            av = _scaled_integral_view(a)
            if av is not None:
                bv = _scaled_integral_view(b)
                if bv is not None:
                    ai, da, big_a = av
                    bi, db, big_b = bv
                    # any contraction length is at most min(size); keep every
                    # intermediate exactly representable in int64
                    if big_a * big_b * min(a.size, b.size) < 1 << 62:
                        return _box_scaled(op(ai, bi), da * db)
        return None

    def matmul(self, a, b):
        fast = self._fast_binary(a, b, np.matmul)
        return np.dot(a, b) if fast is None else fast

    def tensordot(self, a, b, axes):
        fast = self._fast_binary(a, b, lambda x, y: np.tensordot(x, y, axes))
        return np.tensordot(a, b, axes) if fast is None else fast

    def kron(self, a, b):
        fast = self._fast_binary(a, b, np.kron)
        return np.kron(a, b) if fast is None else fast

    def random(self, rng, shape):
        return self.asarray(rng.integers(-4, 5, size=shape))

    def parse_scalar(self, text):
        if isinstance(text, int):
            return Fraction(text)
        return Fraction(str(text).strip())

    def format_scalar(self, x) -> str:
        return str(Fraction(x))


QQ = RationalField()

_prime_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field of order p."""
    if p not in _prime_cache:
        _prime_cache[p] = PrimeField(p)
    return _prime_cache[p]


def field_of_characteristic(char: int) -> Field:
    return QQ if char == 0 else GF(char)
