"""Index-set avatars of cyclic-group universes and rotation representations.

A universe over C_n is recorded as the subset I of Z/n with 0 in I, closed
under negation mod n; member i stands for infinitely many copies of the
two-dimensional rotation representation of label i (the generator acts by
rotation through 2*pi*i/n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

CHARACTER_TOL = 1e-9


@dataclass(frozen=True)
class CyclicUniverseIndexSet:
    """Subset of Z/n containing 0 and closed under additive inversion."""

    modulus: int
    members: frozenset[int]

    @classmethod
    def canonical(cls, modulus: int, members) -> "CyclicUniverseIndexSet":
        """Canonicalize: reduce mod n, insert 0, close under negation."""
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        reduced = {int(i) % modulus for i in members}
        reduced.add(0)
        reduced |= {(-i) % modulus for i in reduced}
        return cls(modulus, frozenset(reduced))

    @classmethod
    def strict(cls, modulus: int, members) -> "CyclicUniverseIndexSet":
        """Reject input that is not already canonical."""
        given = {int(i) for i in members}
        out = cls.canonical(modulus, given)
        if given != set(out.members):
            raise ValueError(
                f"index set {sorted(given)} is not canonical mod {modulus}: "
                "it must contain 0, lie in 0..n-1, and be closed under negation")
        return out

    def reduction(self, e: int) -> frozenset[int]:
        return frozenset(i % e for i in self.members)

    def is_complete(self) -> bool:
        return len(self.members) == self.modulus

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __repr__(self) -> str:
        return f"U({self.modulus}; {{{','.join(map(str, self.sorted()))}}})"


def lambda_character(n: int, m: int, j: int) -> float:
    """Character of the label-m rotation representation of C_n at g^j."""
    return 2.0 * math.cos(2.0 * math.pi * m * j / n)


def restrict_lambda(n: int, d: int, m: int) -> int:
    """Restriction to C_d of the label-m representation: label m mod d."""
    if n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    return m % d


def induce_lambda(d: int, n: int, m: int) -> list[int]:
    """Induction from C_d to C_n of label m: labels m + d*a for 0 <= a < n/d."""
    if n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    return sorted((m + d * a) % n for a in range(n // d))


def induced_character(d: int, n: int, m: int, j: int) -> float:
    """Closed form for the character of the induced representation at g^j."""
    if n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    if j % (n // d) != 0:
        return 0.0
    return (n // d) * lambda_character(n, m, j)


def lambda_kernel_order(n: int, i: int) -> int:
    """Order of the kernel of the label-i rotation representation of C_n."""
    return math.gcd(n, i % n)


def all_index_sets(n: int):
    """All canonical index sets mod n, by choice of negation classes."""
    classes = []
    for i in range(1, n // 2 + 1):
        cls = frozenset({i, (n - i) % n})
        if cls not in classes:
            classes.append(cls)
    for bits in range(1 << len(classes)):
        members = {0}
        for pos, cls in enumerate(classes):
            if bits >> pos & 1:
                members |= cls
        yield CyclicUniverseIndexSet(n, frozenset(members))


def index_set_count(n: int) -> int:
    return 1 << (n // 2)
