"""Set partitions of small integer ground sets.

Ground sets are either plain, ``[m] = {1..m}``, or signed,
``[±m] = {-1, 1, -2, 2, ..., -m, m}``.  A :class:`SetPartition` stores its
blocks in a canonical form so that structural equality is partition equality
and partitions can be used as dictionary keys.

Elements are ordered by ``(|k|, k)`` throughout, so ``-1 < 1 < -2 < 2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_ENUMERATION_CAP = 12
# symmetric pairings are generated directly and are far fewer
SYMMETRIC_PAIRING_CAP = 16


class PartitionError(ValueError):
    """Base class for errors raised by this module."""


class GroundTooLarge(PartitionError):
    pass


class SymmetryNeedsSignedGround(PartitionError):
    pass


class GroundMismatch(PartitionError):
    pass


class SubsetNotContained(PartitionError):
    pass


class GroundsOverlap(PartitionError):
    pass


def element_key(k: int) -> tuple[int, int]:
    return (abs(k), k)


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements), key=element_key))
        if len(elems) != len(self.elements):
            raise PartitionError("ground set elements must be distinct")
        if any(k == 0 for k in elems):
            raise PartitionError("ground set elements must be nonzero")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def signed(cls, m: int) -> "GroundSet":
        """The set [±m]."""
        return cls(tuple(x for k in range(1, m + 1) for x in (-k, k)))

    @classmethod
    def plain(cls, m: int) -> "GroundSet":
        """The set [m]."""
        return cls(tuple(range(1, m + 1)))

    @property
    def is_signed(self) -> bool:
        s = set(self.elements)
        return any(k < 0 for k in s) and all(-k in s for k in s)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, k) -> bool:
        return k in set(self.elements)


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``ground`` into disjoint nonempty blocks.

    Blocks are tuples sorted by :func:`element_key` and ordered by their
    least element under the same key.
    """

    ground: GroundSet
    blocks: tuple[tuple[int, ...], ...]
    _label: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        blocks = [tuple(sorted(set(b), key=element_key)) for b in self.blocks]
        if any(len(b) == 0 for b in blocks):
            raise PartitionError("blocks must be nonempty")
        seen = [k for b in blocks for k in b]
        if len(seen) != len(set(seen)):
            raise PartitionError("blocks must be pairwise disjoint")
        if set(seen) != set(self.ground.elements):
            raise PartitionError("blocks must cover the ground set exactly")
        blocks.sort(key=lambda b: element_key(b[0]))
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "_label", {k: i for i, b in enumerate(blocks) for k in b})

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], ground: GroundSet | None = None) -> "SetPartition":
        blocks = [tuple(b) for b in blocks]
        if ground is None:
            ground = GroundSet(tuple(k for b in blocks for k in b))
        return cls(ground, tuple(blocks))

    @classmethod
    def from_labels(cls, ground: GroundSet, labels: Sequence[int]) -> "SetPartition":
        """Build from a label per ground element (in ground order)."""
        groups: dict[int, list[int]] = {}
        for k, lab in zip(ground.elements, labels):
            groups.setdefault(lab, []).append(k)
        return cls(ground, tuple(tuple(g) for g in groups.values()))

    @classmethod
    def one(cls, ground: GroundSet) -> "SetPartition":
        return cls(ground, (ground.elements,))

    @classmethod
    def discrete(cls, ground: GroundSet) -> "SetPartition":
        return cls(ground, tuple((k,) for k in ground.elements))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"

    def block_index(self, k: int) -> int:
        return self._label[k]

    def labels(self) -> tuple[int, ...]:
        """Block index of each ground element, in ground order."""
        return tuple(self._label[k] for k in self.ground.elements)

    def same_block(self, a: int, b: int) -> bool:
        return self._label[a] == self._label[b]

    @property
    def is_even(self) -> bool:
        return all(len(b) % 2 == 0 for b in self.blocks)

    @property
    def is_pairing(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)


@dataclass(frozen=True)
class IndexTuple:
    """A function from ``domain`` to ``{1..N}``."""

    domain: GroundSet
    values: Mapping[int, int]
    N: int

    def __post_init__(self):
        if set(self.values) != set(self.domain.elements):
            raise PartitionError("index tuple must assign exactly one value per domain element")
        if any(not 1 <= v <= self.N for v in self.values.values()):
            raise PartitionError(f"index values must lie in 1..{self.N}")

    @classmethod
    def from_sequence(cls, domain: GroundSet, values: Sequence[int], N: int) -> "IndexTuple":
        return cls(domain, dict(zip(domain.elements, values)), N)

    def __getitem__(self, k: int) -> int:
        return self.values[k]


@dataclass(frozen=True)
class SignedPermutationMap:
    """A bijection of a ground set onto itself."""

    domain: GroundSet
    images: Mapping[int, int]

    def __post_init__(self):
        keys = set(self.images)
        if keys != set(self.domain.elements) or set(self.images.values()) != keys:
            raise PartitionError("images must be a bijection of the domain")

    def __call__(self, k: int) -> int:
        return self.images[k]

    def inverse(self) -> "SignedPermutationMap":
        return SignedPermutationMap(self.domain, {v: k for k, v in self.images.items()})

    def compose(self, other: "SignedPermutationMap") -> "SignedPermutationMap":
        """``self ∘ other``."""
        return SignedPermutationMap(self.domain, {k: self.images[other.images[k]] for k in self.domain})

    def power(self, t: int) -> "SignedPermutationMap":
        base = self if t >= 0 else self.inverse()
        images = {k: k for k in self.domain}
        for _ in range(abs(t)):
            images = {k: base.images[v] for k, v in images.items()}
        return SignedPermutationMap(self.domain, images)

    @classmethod
    def identity(cls, domain: GroundSet) -> "SignedPermutationMap":
        return cls(domain, {k: k for k in domain})


# ---------------------------------------------------------------- enumeration

def _check_cap(ground: GroundSet, cap: int) -> None:
    if len(ground) > cap:
        raise GroundTooLarge(f"ground set has {len(ground)} elements; enumeration cap is {cap}")


def _all_labelings(n: int) -> Iterator[list[int]]:
    # restricted growth strings
    if n == 0:
        yield []
        return
    a = [0] * n
    maxes = [0] * n

    def rec(i: int):
        if i == n:
            yield a
            return
        top = maxes[i - 1] + 1
        for v in range(top + 1):
            a[i] = v
            maxes[i] = max(maxes[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def _symmetric_pairings(elems: list[int]) -> Iterator[list[tuple[int, int]]]:
    # pairing a with b forces -a with -b
    if not elems:
        yield []
        return
    a = elems[0]
    for b in elems[1:]:
        if b == -a:
            rest = [x for x in elems if x not in (a, b)]
            for p in _symmetric_pairings(rest):
                yield [(a, b)] + p
        elif -b in elems and -a != b:
            rest = [x for x in elems if x not in (a, b, -a, -b)]
            for p in _symmetric_pairings(rest):
                yield [(a, b), (-a, -b)] + p


def _pairings(elems: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not elems:
        yield []
        return
    a = elems[0]
    for i in range(1, len(elems)):
        rest = elems[1:i] + elems[i + 1:]
        for p in _pairings(rest):
            yield [(a, elems[i])] + p


def enumerate_partitions(ground: GroundSet, filter: str = "all", cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[SetPartition]:
    """Yield each partition of ``ground`` satisfying ``filter`` exactly once.

    ``filter`` is one of ``all``, ``even``, ``pairings`` or
    ``symmetric_pairings``.  Partitions come out in restricted-growth order
    for ``all``/``even`` and in lexicographic pairing order otherwise.
    Symmetric pairings are generated directly and may use ground sets of
    up to 16 elements.
    """
    if filter not in ("all", "even", "pairings", "symmetric_pairings"):
        raise ValueError(f"unknown filter {filter!r}")
    elems = list(ground.elements)
    if filter == "symmetric_pairings":
        if not ground.is_signed:
            raise SymmetryNeedsSignedGround("symmetric pairings need a signed ground set")
        _check_cap(ground, max(cap, SYMMETRIC_PAIRING_CAP))
        for p in _symmetric_pairings(elems):
            yield SetPartition(ground, tuple(p))
        return
    _check_cap(ground, cap)
    if filter == "pairings":
        if len(elems) % 2:
            return
        for p in _pairings(elems):
            yield SetPartition(ground, tuple(p))
        return
    for labs in _all_labelings(len(elems)):
        if filter == "even":
            counts: dict[int, int] = {}
            for v in labs:
                counts[v] = counts.get(v, 0) + 1
            if any(c % 2 for c in counts.values()):
                continue
        yield SetPartition.from_labels(ground, labs)


# -------------------------------------------------------------- lattice order

def _same_ground(a: SetPartition, b: SetPartition) -> None:
    if a.ground != b.ground:
        raise GroundMismatch("partitions live on different ground sets")


def is_refinement(pi: SetPartition, theta: SetPartition) -> bool:
    """True iff every block of ``pi`` sits inside a block of ``theta``."""
    _same_ground(pi, theta)
    return all(len({theta.block_index(k) for k in b}) == 1 for b in pi.blocks)


def mobius(pi: SetPartition, theta: SetPartition) -> int:
    """Möbius function of the partition lattice; 0 when pi is not below theta."""
    if not is_refinement(pi, theta):
        return 0
    splits: dict[int, int] = {}
    for b in pi.blocks:
        t = theta.block_index(b[0])
        splits[t] = splits.get(t, 0) + 1
    out = 1
    for m in splits.values():
        out *= (-1) ** (m - 1) * factorial(m - 1)
    return out


def coarsenings(pi: SetPartition) -> Iterator[SetPartition]:
    """All theta >= pi, obtained by partitioning the blocks of pi."""
    blocks = pi.blocks
    for labs in _all_labelings(len(blocks)):
        groups: dict[int, list[int]] = {}
        for b, lab in zip(blocks, labs):
            groups.setdefault(lab, []).extend(b)
        yield SetPartition(pi.ground, tuple(tuple(g) for g in groups.values()))


def kernel(tup: IndexTuple) -> SetPartition:
    """Partition of the domain into level sets of the tuple."""
    groups: dict[int, list[int]] = {}
    for k in tup.domain:
        groups.setdefault(tup.values[k], []).append(k)
    return SetPartition(tup.domain, tuple(tuple(g) for g in groups.values()))


def apply_permutation(sigma: SignedPermutationMap, pi: SetPartition) -> SetPartition:
    """The partition ``{sigma(B) : B in pi}``."""
    if sigma.domain != pi.ground:
        raise GroundMismatch("permutation and partition live on different ground sets")
    return SetPartition(pi.ground, tuple(tuple(sigma(k) for k in b) for b in pi.blocks))


def is_symmetric(pi: SetPartition) -> bool:
    """k ~ l implies -k ~ -l."""
    if not pi.ground.is_signed:
        raise SymmetryNeedsSignedGround("symmetry is only defined on signed ground sets")
    return all(len({pi.block_index(-k) for k in b}) == 1 for b in pi.blocks)


# ------------------------------------------------------ restriction and union

def _relabel(pi: SetPartition, f) -> SetPartition:
    blocks = tuple(tuple(f(k) for k in b) for b in pi.blocks)
    return SetPartition(GroundSet(tuple(f(k) for k in pi.ground)), blocks)


def restrict(pi: SetPartition, subset: GroundSet | Iterable[int] | None = None, variant: str | None = None) -> SetPartition:
    """Restriction of ``pi`` to ``subset``, dropping emptied blocks.

    ``variant`` selects one of the parity relabelings instead:

    * ``"even"`` / ``"odd"``: restriction to elements with even / odd modulus;
    * ``"up_even"``: every k is relabeled 2k;
    * ``"up_odd"``: every k is relabeled 2k - sign(k).
    """
    if variant is not None:
        if variant == "even":
            subset = [k for k in pi.ground if k % 2 == 0]
        elif variant == "odd":
            subset = [k for k in pi.ground if k % 2]
        elif variant == "up_even":
            return _relabel(pi, lambda k: 2 * k)
        elif variant == "up_odd":
            return _relabel(pi, lambda k: 2 * k - (1 if k > 0 else -1))
        else:
            raise ValueError(f"unknown restriction variant {variant!r}")
    if subset is None:
        return pi
    keep = set(subset.elements if isinstance(subset, GroundSet) else subset)
    if not keep <= set(pi.ground.elements):
        raise SubsetNotContained("subset is not contained in the ground set")
    blocks = [tuple(k for k in b if k in keep) for b in pi.blocks]
    return SetPartition(GroundSet(tuple(keep)), tuple(b for b in blocks if b))


def disjoint_union(pi1: SetPartition, pi2: SetPartition) -> SetPartition:
    if set(pi1.ground.elements) & set(pi2.ground.elements):
        raise GroundsOverlap("ground sets overlap")
    ground = GroundSet(pi1.ground.elements + pi2.ground.elements)
    return SetPartition(ground, pi1.blocks + pi2.blocks)
