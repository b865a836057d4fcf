"""Player permutations and the derived symmetry family.

A game network carries one base permutation per player; base_perms[i] must
map 0 to i and base_perms[0] must be the identity.  The full family is
derived as

    perm(i, j) = base_perms[j] . base_perms[i]^-1

which by construction satisfies the three laws a symmetry family needs:
perm(i, i) is the identity, perm(k, j) . perm(i, k) = perm(i, j), and
perm(i, j) maps i to j.  build_representation still checks all of them
exhaustively rather than trusting the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BaseAnchorViolated, LengthMismatch, NotABijection


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., n-1}, stored as its image tuple."""

    image: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def from_iterable(values: Iterable[int]) -> "Permutation":
        return Permutation(tuple(values))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        return self.image[k]

    def is_bijection(self) -> bool:
        n = len(self.image)
        return sorted(self.image) == list(range(n))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for k, v in enumerate(self.image):
            inv[v] = k
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self . other)(k) = self(other(k))."""
        if len(self.image) != len(other.image):
            raise LengthMismatch(len(self.image), len(other.image))
        return Permutation(tuple(self.image[other.image[k]] for k in range(len(self.image))))

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.image))


def permute_config(config: tuple[str, ...], perm: Permutation) -> tuple[str, ...]:
    """Rearrange a configuration: result[k] = config[perm(k)].

    Composes contravariantly with itself:
    permute_config(permute_config(t, p), q) == permute_config(t, p . q).
    """
    if len(config) != perm.size:
        raise LengthMismatch(perm.size, len(config))
    return tuple(config[perm.image[k]] for k in range(perm.size))


def permute_play(
    play: Sequence[tuple[str, ...]], perm: Permutation
) -> tuple[tuple[str, ...], ...]:
    """Apply permute_config pointwise along a configuration sequence."""
    return tuple(permute_config(t, perm) for t in play)


@dataclass(frozen=True)
class SymmetricRepresentation:
    """The derived family perm(i, j) for all player pairs."""

    n: int
    base: tuple[Permutation, ...]
    _family: tuple[tuple[Permutation, ...], ...]

    def perm(self, i: int, j: int) -> Permutation:
        """The permutation relating player i's viewpoint to player j's."""
        return self._family[i][j]


def build_representation(n: int, base_perms: Sequence[Permutation]) -> SymmetricRepresentation:
    """Derive and verify the full symmetry family from the base permutations.

    Raises NotABijection or BaseAnchorViolated on a bad base permutation.
    The derived family is checked exhaustively: identity at the diagonal,
    composition law over all n^3 triples, and the anchor perm(i, j)(i) = j.
    """
    if len(base_perms) != n:
        raise LengthMismatch(n, len(base_perms))
    for i, p in enumerate(base_perms):
        if p.size != n or not p.is_bijection():
            raise NotABijection(i)
        if p.image[0] != i:
            raise BaseAnchorViolated(i)

    inverses = [p.inverse() for p in base_perms]
    family = tuple(
        tuple(base_perms[j].compose(inverses[i]) for j in range(n)) for i in range(n)
    )

    for i in range(n):
        assert family[i][i].is_identity()
        for j in range(n):
            assert family[i][j].image[i] == j
            assert family[i][j].inverse() == family[j][i]
            for k in range(n):
                assert family[k][j].compose(family[i][k]) == family[i][j]

    return SymmetricRepresentation(n=n, base=tuple(base_perms), _family=family)
