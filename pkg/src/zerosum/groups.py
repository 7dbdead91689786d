"""Finite abelian groups C_{n_1} + ... + C_{n_r} given by invariant factors.

Elements are plain tuples of residues.  Internally every element also has a
mixed-radix index (last coordinate varies fastest), so the lexicographic
order on residue tuples coincides with the order on indices.  Subsets of G
are encoded as Python ints used as bitsets over those indices.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence as Seq

import numpy as np

from .errors import GroupSpecError, InvalidElementError, NotInKernelError, UnsupportedGroupError

Element = tuple[int, ...]


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == {n: 1}


@dataclass(frozen=True)
class GroupSpec:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if not factors:
            raise GroupSpecError("a group needs at least one invariant factor")
        for n in factors:
            if n < 2:
                raise GroupSpecError(f"invariant factor {n} < 2")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise GroupSpecError(f"invariant factors must form a divisibility chain, {a} does not divide {b}")

    @classmethod
    def homocyclic(cls, n: int, r: int) -> "GroupSpec":
        return cls((n,) * r)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Accepts "p^n^r" (so "3^2^3" is C_9^3) or a comma list such as "9,9,9"."""
        s = text.strip().replace(" ", "")
        if re.fullmatch(r"\d+\^\d+\^\d+", s):
            p, n, r = (int(x) for x in s.split("^"))
            if not is_prime(p):
                raise GroupSpecError(f"{p} is not prime in {text!r}")
            if n < 1 or r < 1:
                raise GroupSpecError(f"exponent and rank must be positive in {text!r}")
            return cls.homocyclic(p**n, r)
        if re.fullmatch(r"\d+(,\d+)*", s):
            return cls(tuple(int(x) for x in s.split(",")))
        raise GroupSpecError(f"malformed group spec {text!r}; use p^n^r or a comma list of invariant factors")

    def __str__(self) -> str:
        f = self.invariant_factors
        if len(set(f)) == 1:
            return f"C_{f[0]}^{len(f)}"
        return " + ".join(f"C_{n}" for n in f)

    def spec_string(self) -> str:
        f = self.invariant_factors
        p = self.prime
        if p is not None and len(set(f)) == 1:
            return f"{p}^{round(math.log(f[0], p))}^{len(f)}"
        return ",".join(str(n) for n in f)

    # structural data

    def rank(self) -> int:
        return len(self.invariant_factors)

    def exponent(self) -> int:
        return self.invariant_factors[-1]

    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def davenport_star(self) -> int:
        return 1 + sum(n - 1 for n in self.invariant_factors)

    @cached_property
    def prime(self) -> int | None:
        """The prime p if G is a p-group, else None."""
        pf = _prime_factors(self.exponent())
        return next(iter(pf)) if len(pf) == 1 else None

    def is_p_group(self) -> bool:
        return self.prime is not None

    def is_elementary(self) -> bool:
        return self.prime is not None and self.exponent() == self.prime

    def is_homocyclic(self) -> bool:
        return len(set(self.invariant_factors)) == 1

    # elements

    def zero(self) -> Element:
        return (0,) * self.rank()

    def validate(self, g: Seq[int]) -> Element:
        g = tuple(g)
        if len(g) != self.rank():
            raise InvalidElementError(f"element {g} has {len(g)} coordinates, group {self} needs {self.rank()}")
        for x, n in zip(g, self.invariant_factors):
            if not 0 <= x < n:
                raise InvalidElementError(f"residue {x} out of range [0,{n}) in {g}")
        return g

    def reduce(self, g: Seq[int]) -> Element:
        if len(g) != self.rank():
            raise InvalidElementError(f"element {tuple(g)} has {len(g)} coordinates, group {self} needs {self.rank()}")
        return tuple(x % n for x, n in zip(g, self.invariant_factors))

    def add(self, g: Element, h: Element) -> Element:
        if len(g) != self.rank() or len(h) != self.rank():
            raise InvalidElementError(f"arity mismatch adding {g} and {h} in {self}")
        return tuple((a + b) % n for a, b, n in zip(g, h, self.invariant_factors))

    def neg(self, g: Element) -> Element:
        return tuple((-a) % n for a, n in zip(g, self.invariant_factors))

    def sub(self, g: Element, h: Element) -> Element:
        return self.add(g, self.neg(h))

    def scalar_mul(self, c: int, g: Element) -> Element:
        self.validate(g)
        return tuple((c * a) % n for a, n in zip(g, self.invariant_factors))

    def order_of(self, g: Element) -> int:
        self.validate(g)
        m = 1
        for a, n in zip(g, self.invariant_factors):
            m = math.lcm(m, n // math.gcd(a, n))
        return m

    def elements(self) -> Iterator[Element]:
        for i in range(self.order()):
            yield self.element(i)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for n in reversed(self.invariant_factors):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    def index(self, g: Element) -> int:
        return sum(a * s for a, s in zip(g, self.strides))

    def element(self, i: int) -> Element:
        out = []
        for n, s in zip(self.invariant_factors, self.strides):
            out.append((i // s) % n)
        return tuple(out)

    @cached_property
    def coords(self) -> np.ndarray:
        """Array of shape (|G|, r): the residue tuple of every index."""
        idx = np.arange(self.order())
        return np.stack([(idx // s) % n for n, s in zip(self.invariant_factors, self.strides)], axis=1)

    @cached_property
    def neg_index(self) -> np.ndarray:
        f = np.array(self.invariant_factors)
        return ((-self.coords) % f) @ np.array(self.strides)

    def translation(self, g: Element) -> np.ndarray:
        """perm with perm[x] = index(x - g), so that (counts[perm])[y] = counts[y - g]."""
        f = np.array(self.invariant_factors)
        return ((self.coords - np.array(g)) % f) @ np.array(self.strides)

    # bitset helpers

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order()) - 1

    @cached_property
    def _rotation_masks(self) -> dict[tuple[int, int], tuple[int, int, int, int]]:
        """(coordinate j, shift a) -> (low mask, high mask, left shift, right shift)."""
        out = {}
        coords = self.coords
        for j, (n, s) in enumerate(zip(self.invariant_factors, self.strides)):
            col = coords[:, j]
            for a in range(1, n):
                lo = _mask_from_bool(col < n - a)
                hi = self.full_mask ^ lo
                out[j, a] = (lo, hi, a * s, (n - a) * s)
        return out

    def translate_mask(self, mask: int, g: Element) -> int:
        """The bitset {x + g : x in mask}."""
        rot = self._rotation_masks
        for j, a in enumerate(g):
            if a:
                lo, hi, sl, sr = rot[j, a]
                mask = ((mask & lo) << sl) | ((mask & hi) >> sr)
        return mask

    def mask_of(self, elems) -> int:
        m = 0
        for g in elems:
            m |= 1 << self.index(g)
        return m


def _mask_from_bool(flags: np.ndarray) -> int:
    bits = np.packbits(flags.astype(np.uint8), bitorder="little")
    return int.from_bytes(bits.tobytes(), "little")


def parse_element(text: str, G: GroupSpec) -> Element:
    try:
        g = tuple(int(x) for x in text.strip().split(","))
    except ValueError as exc:
        raise InvalidElementError(f"malformed element {text!r}") from exc
    return G.validate(g)


def format_element(g: Element) -> str:
    return ",".join(str(x) for x in g)


def _homocyclic_prime_power(G: GroupSpec) -> tuple[int, int]:
    p = G.prime
    if p is None or not G.is_homocyclic():
        raise UnsupportedGroupError(f"{G} is not a homocyclic p-group")
    n = round(math.log(G.exponent(), p))
    return p, n


def projection_hom(g: Element, G: GroupSpec) -> Element:
    """pi: C_{p^n}^r -> C_p^r, g -> p^{n-1} g, read back in C_p^r.

    The image coordinate is (p^{n-1} x mod p^n) / p^{n-1}, which is x mod p.
    """
    p, n = _homocyclic_prime_power(G)
    if n < 2:
        raise UnsupportedGroupError(f"projection needs exponent p^n with n >= 2, got {G}")
    G.validate(g)
    q = p ** (n - 1)
    return tuple(((q * x) % G.exponent()) // q for x in g)


def kernel_iso(g: Element, G: GroupSpec) -> Element:
    """ker(pi) = pC_{p^n}^r  ->  C_{p^{n-1}}^r by dividing every coordinate by p."""
    p, n = _homocyclic_prime_power(G)
    if n < 2:
        raise UnsupportedGroupError(f"kernel identification needs n >= 2, got {G}")
    G.validate(g)
    if any(x % p for x in g):
        raise NotInKernelError(f"{g} is not in the kernel of the projection (coordinates must be divisible by {p})")
    return tuple(x // p for x in g)


def kernel_lift(h: Element, G: GroupSpec) -> Element:
    """Inverse of kernel_iso: C_{p^{n-1}}^r -> ker(pi) inside G = C_{p^n}^r."""
    p, n = _homocyclic_prime_power(G)
    if n < 2:
        raise UnsupportedGroupError(f"kernel identification needs n >= 2, got {G}")
    small = GroupSpec.homocyclic(p ** (n - 1), G.rank())
    small.validate(h)
    return tuple(p * x for x in h)


def quotient_group(G: GroupSpec) -> GroupSpec:
    """C_p^r, the target of projection_hom."""
    p, _ = _homocyclic_prime_power(G)
    return GroupSpec.homocyclic(p, G.rank())


def kernel_group(G: GroupSpec) -> GroupSpec:
    """C_{p^{n-1}}^r, the target of kernel_iso."""
    p, n = _homocyclic_prime_power(G)
    if n < 2:
        raise UnsupportedGroupError(f"kernel identification needs n >= 2, got {G}")
    return GroupSpec.homocyclic(p ** (n - 1), G.rank())
