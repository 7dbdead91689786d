"""Sequences over G: finite unordered multisets of group elements."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Mapping

from .errors import InvalidElementError, NotContainedError, ParseError, ZeroSumError
from .groups import Element, GroupSpec, format_element


class Sequence:
    """An immutable multiset over a GroupSpec.

    Entries are kept sorted by the lexicographic order on residue tuples, with
    multiplicities aggregated, so equal multisets compare and hash equal.
    """

    __slots__ = ("group", "entries", "_hash")

    def __init__(self, group: GroupSpec, items: Iterable[Element] | Mapping[Element, int] = ()):
        if isinstance(items, Mapping):
            counts = Counter()
            for g, m in items.items():
                if m < 0:
                    raise ZeroSumError(f"negative multiplicity {m} for {g}")
                if m:
                    counts[group.validate(g)] += int(m)
        else:
            counts = Counter(group.validate(g) for g in items)
        self.group = group
        self.entries: tuple[tuple[Element, int], ...] = tuple(sorted(counts.items()))
        self._hash = None

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "Sequence":
        return cls(group, [group.element(i) for i in indices])

    def __iter__(self) -> Iterator[Element]:
        """Elements with repetition, in sorted order."""
        for g, m in self.entries:
            for _ in range(m):
                yield g

    def __len__(self) -> int:
        return self.length()

    def __eq__(self, other) -> bool:
        return isinstance(other, Sequence) and self.group == other.group and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.group, self.entries))
        return self._hash

    def __repr__(self) -> str:
        body = "·".join(f"({format_element(g)})" + (f"^[{m}]" if m > 1 else "") for g, m in self.entries)
        return f"Sequence({self.group}: {body or 'empty'})"

    def length(self) -> int:
        return sum(m for _, m in self.entries)

    def sigma(self) -> Element:
        G = self.group
        total = [0] * G.rank()
        for g, m in self.entries:
            for j, x in enumerate(g):
                total[j] += m * x
        return G.reduce(total)

    def counts(self) -> Counter:
        return Counter(dict(self.entries))

    def multiplicity(self, g: Element) -> int:
        return dict(self.entries).get(tuple(g), 0)

    def support(self) -> list[Element]:
        return [g for g, _ in self.entries]

    def indices(self) -> list[int]:
        """Mixed-radix indices with repetition, nondecreasing."""
        G = self.group
        return [G.index(g) for g in self]

    def contains(self, other: "Sequence") -> bool:
        mine = self.counts()
        return all(mine[g] >= m for g, m in other.entries)

    def remove(self, other: "Sequence") -> "Sequence":
        """The multiset difference S T^{-1}."""
        self._check_same_group(other)
        mine = self.counts()
        for g, m in other.entries:
            if mine[g] < m:
                raise NotContainedError(f"{format_element(g)} occurs {m} times in T but {mine[g]} times in S")
            mine[g] -= m
        return Sequence(self.group, mine)

    def __add__(self, other: "Sequence") -> "Sequence":
        self._check_same_group(other)
        return Sequence(self.group, self.counts() + other.counts())

    def _check_same_group(self, other: "Sequence"):
        if other.group != self.group:
            raise InvalidElementError(f"sequences over different groups: {self.group} and {other.group}")

    def is_zero_sum(self) -> bool:
        return self.sigma() == self.group.zero()

    def canonical_form(self) -> "Sequence":
        from .symmetry import canonical_form

        return canonical_form(self)

    # text format

    def serialize(self) -> str:
        lines = [f"group {self.group.spec_string()}"]
        for g, m in self.entries:
            lines.append(format_element(g) + (f" x{m}" if m > 1 else ""))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str, group: GroupSpec | None = None) -> "Sequence":
        """Parse the sequence file format.

        The header line "group <spec>" is required unless ``group`` is given.
        """
        G = group
        counts: Counter = Counter()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("group"):
                parts = line.split()
                if len(parts) != 2:
                    raise ParseError("expected 'group <spec-string>'", lineno)
                try:
                    parsed = GroupSpec.parse(parts[1])
                except ZeroSumError as exc:
                    raise ParseError(str(exc), lineno) from exc
                if G is not None and parsed != G:
                    raise ParseError(f"header group {parsed} differs from {G}", lineno)
                G = parsed
                continue
            if G is None:
                raise ParseError("element line before the 'group' header", lineno)
            parts = line.split()
            if len(parts) > 2:
                raise ParseError(f"malformed line {line!r}", lineno)
            mult = 1
            if len(parts) == 2:
                tag = parts[1]
                if not (tag.startswith("x") and tag[1:].isdigit()):
                    raise ParseError(f"bad multiplicity {tag!r}, expected xM", lineno)
                mult = int(tag[1:])
                if mult == 0:
                    raise ParseError("zero multiplicity", lineno)
            try:
                g = tuple(int(x) for x in parts[0].split(","))
            except ValueError:
                raise ParseError(f"malformed residues {parts[0]!r}", lineno) from None
            try:
                G.validate(g)
            except InvalidElementError as exc:
                raise ParseError(str(exc), lineno) from exc
            counts[g] += mult
        if G is None:
            raise ParseError("missing 'group' header")
        return cls(G, counts)


def repeat(G: GroupSpec, g: Element, m: int) -> Sequence:
    return Sequence(G, {tuple(g): m})


def random_sequence(G: GroupSpec, length: int, rng) -> Sequence:
    """Uniform elements drawn from a random.Random-like ``rng``."""
    n = G.invariant_factors
    return Sequence(G, [tuple(rng.randrange(k) for k in n) for _ in range(length)])
