"""Exact scalar domains: integers, rationals, and prime fields GF(p).

Matrix entries stay plain Python values (``int`` for the integers and for
GF(p), ``fractions.Fraction`` for the rationals); a domain object supplies
normalization and arithmetic so matrix code never branches on element type.
All arithmetic is exact -- there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

#: Primes are validated by trial division; keep them word-sized.
PRIME_LIMIT = 2**31


def is_prime(n: int) -> bool:
    """Trial-division primality check (intended for small moduli)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Domain:
    """Base class for exact scalar domains.

    The default arithmetic delegates to Python operators, which is correct
    for ``int`` and ``Fraction`` elements; ``PrimeField`` overrides it.
    """

    kind: str = "abstract"
    is_field: bool = False
    modulus: int | None = None

    def normalize(self, x):
        """Coerce ``x`` into the domain's canonical element form."""
        raise NotImplementedError

    @property
    def zero(self):
        return self.normalize(0)

    @property
    def one(self):
        return self.normalize(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        """Exact division; only available in fields."""
        raise TypeError(f"{self!r} is not a field; division unavailable")

    def exact_div(self, a, b):
        """Division that the caller guarantees to be remainder-free.

        Bareiss elimination relies on this: over the integers the quotient
        is checked, a nonzero remainder means a bug upstream.
        """
        raise TypeError(f"exact division not supported in {self!r}")

    def __eq__(self, other):
        return (
            isinstance(other, Domain)
            and self.kind == other.kind
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.modulus))


class IntegerDomain(Domain):
    """The ring of integers (arbitrary precision)."""

    kind = "integer"
    is_field = False

    def normalize(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return int(x)
            raise ValueError(f"{x} is not an integer")
        raise TypeError(f"cannot interpret {x!r} as an integer")

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q

    def __repr__(self):
        return "ZZ"

    def to_json(self):
        return {"kind": self.kind}


class RationalDomain(Domain):
    """The field of rationals; elements are ``Fraction`` in lowest terms."""

    kind = "rational"
    is_field = True

    def normalize(self, x):
        if isinstance(x, bool):
            return Fraction(int(x))
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, tuple) and len(x) == 2:
            # (numerator, denominator); Fraction rejects a zero denominator.
            return Fraction(x[0], x[1])
        raise TypeError(f"cannot interpret {x!r} as a rational")

    def div(self, a, b):
        return a / b

    def exact_div(self, a, b):
        return a / b

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return {"kind": self.kind}


class PrimeField(Domain):
    """The prime field GF(p); elements are ints reduced to 0..p-1."""

    kind = "prime-field"
    is_field = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < PRIME_LIMIT:
            raise ValueError(f"prime field modulus must be an int in [2, 2^31), got {p!r}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.modulus = p

    def normalize(self, x):
        if isinstance(x, bool):
            return int(x) % self.modulus
        if isinstance(x, int):
            return x % self.modulus
        raise TypeError(f"cannot interpret {x!r} as an element of {self!r}")

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def div(self, a, b):
        if b % self.modulus == 0:
            raise ZeroDivisionError(f"division by zero in {self!r}")
        return (a * pow(b, -1, self.modulus)) % self.modulus

    def exact_div(self, a, b):
        return self.div(a, b)

    def __repr__(self):
        return f"GF({self.modulus})"

    def to_json(self):
        return {"kind": self.kind, "modulus": self.modulus}


ZZ = IntegerDomain()
QQ = RationalDomain()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """The prime field with p elements (cached per modulus)."""
    return PrimeField(p)
