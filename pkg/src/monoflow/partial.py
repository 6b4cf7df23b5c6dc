"""Partial functions ``S ⇀ M`` as a property space.

Two orders live here side by side:

* the domain-inclusion order (``leq_partial`` / ``join_partial`` /
  ``meet_partial``), which is antisymmetric and is what the solver uses;
* the derived-total order (``leq_derived`` / ``join_derived``), which treats an
  undefined point as ``⊥_M``.  It is only a preorder on raw maps and becomes a
  lattice on classes of maps with equal lifts (:class:`EqUpClass`).

``alpha`` and ``gamma`` translate between the two.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import Any, Optional

from .lattice import FrozenMap, LatticeDescriptor


class ConfigurationError(ValueError):
    """An operation needs the finite key universe but none was supplied."""


class PartialMap(Mapping):
    """An immutable finite partial function into a value lattice.

    Equality and hashing look only at the stored entries, so two maps over the
    same lattice compare structurally.
    """

    __slots__ = ("entries", "lattice", "keys_universe")

    def __init__(self, entries: Mapping | Iterable[tuple[Hashable, Any]],
                 lattice: LatticeDescriptor,
                 keys_universe: Optional[Iterable[Hashable]] = None):
        entries = entries if isinstance(entries, FrozenMap) else FrozenMap(entries)
        if lattice.contains is not None:
            for v in entries.values():
                lattice.check(v)
        self.entries = entries
        self.lattice = lattice
        self.keys_universe = None if keys_universe is None else frozenset(keys_universe)

    def __getitem__(self, key):
        return self.entries[key]

    def __iter__(self) -> Iterator:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, PartialMap):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k!r}: {v!r}" for k, v in self.entries.items())
        return f"PartialMap({{{inner}}})"

    @property
    def dom(self) -> frozenset:
        return frozenset(self.entries)

    def get_lifted(self, key):
        """``↑f(key)``: the stored value, or ``⊥_M`` when undefined."""
        return self.entries.get(key, self.lattice.bottom)

    def _derive(self, entries) -> "PartialMap":
        out = PartialMap.__new__(PartialMap)
        out.entries = entries if isinstance(entries, FrozenMap) else FrozenMap(entries)
        out.lattice = self.lattice
        out.keys_universe = self.keys_universe
        return out

    def with_entries(self, entries) -> "PartialMap":
        """Same lattice and key universe, new (trusted) entries."""
        return self._derive(entries)


def empty(lattice: LatticeDescriptor, keys_universe=None) -> PartialMap:
    return PartialMap({}, lattice, keys_universe)


def _universe(*maps: PartialMap) -> frozenset:
    for m in maps:
        if m.keys_universe is not None:
            return m.keys_universe
    raise ConfigurationError("operation requires a finite key universe")


def lift(f: PartialMap) -> PartialMap:
    """The total map agreeing with ``f`` and sending every other key to ``⊥_M``."""
    universe = _universe(f)
    bottom = f.lattice.bottom
    return f._derive((s, f.entries.get(s, bottom)) for s in sorted(universe, key=repr))


def leq_partial(f: PartialMap, g: PartialMap) -> bool:
    leq = f.lattice.leq
    ge = g.entries
    for s, v in f.entries.items():
        if s not in ge or not leq(v, ge[s]):
            return False
    return True


def join_partial(f: PartialMap, g: PartialMap) -> PartialMap:
    if not f.entries:
        return g
    if not g.entries:
        return f
    join = f.lattice.join
    out = dict(f.entries)
    for s, v in g.entries.items():
        out[s] = join(out[s], v) if s in out else v
    return f._derive(out)


def meet_partial(f: PartialMap, g: PartialMap) -> PartialMap:
    meet = f.lattice.require_meet()
    ge = g.entries
    return f._derive((s, meet(v, ge[s])) for s, v in f.entries.items() if s in ge)


def leq_derived(f: PartialMap, g: PartialMap) -> bool:
    """``f ≼ g``: every defined value of ``f`` is below ``↑g`` at that key."""
    leq = f.lattice.leq
    return all(leq(v, g.get_lifted(s)) for s, v in f.entries.items())


def canonical(f: PartialMap) -> PartialMap:
    """Drop the keys bound to ``⊥_M``; equal lifts give equal canonical maps."""
    bottom = f.lattice.bottom
    if all(v != bottom for v in f.entries.values()):
        return f
    return f._derive((s, v) for s, v in f.entries.items() if v != bottom)


def eq_up(f: PartialMap, g: PartialMap) -> bool:
    return canonical(f).entries == canonical(g).entries


def join_derived(f: PartialMap, g: PartialMap) -> PartialMap:
    join = f.lattice.join
    fe, ge = f.entries, g.entries
    out = {}
    for s in fe.keys() | ge.keys():
        if s in fe and s in ge:
            out[s] = join(fe[s], ge[s])
        elif s in fe:
            out[s] = fe[s]
        else:
            out[s] = ge[s]
    return f._derive(out)


@dataclass(frozen=True)
class EqUpClass:
    """A class of partial maps with equal lifts, held by its canonical member."""

    representative: PartialMap

    def __post_init__(self):
        bottom = self.representative.lattice.bottom
        if any(v == bottom for v in self.representative.entries.values()):
            raise ValueError("class representative must not bind ⊥")

    def __contains__(self, f: PartialMap) -> bool:
        return eq_up(self.representative, f)

    def leq(self, other: "EqUpClass") -> bool:
        return leq_derived(self.representative, other.representative)

    def join(self, other: "EqUpClass") -> "EqUpClass":
        return alpha(join_derived(self.representative, other.representative))


def alpha(f: PartialMap) -> EqUpClass:
    return EqUpClass(canonical(f))


def gamma(c: EqUpClass) -> PartialMap:
    """The ⊑-greatest member of the class: the lift of its representative."""
    return lift(c.representative)


def lattice_of_partial_maps(values: LatticeDescriptor, keys: Iterable[Hashable]) -> list[PartialMap]:
    """Every partial map ``keys ⇀ values`` (needs ``values.elements``)."""
    if values.elements is None:
        raise ConfigurationError(f"{values.name} is not enumerable")
    keys = sorted(set(keys), key=repr)
    options = [None, *values.elements]
    maps: list[dict] = [{}]
    for s in keys:
        maps = [
            {**m, s: v} if v is not None else m
            for m in maps
            for v in options
        ]
    return [PartialMap(m, values, keys) for m in maps]
