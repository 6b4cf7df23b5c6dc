"""Complete lattices as runtime descriptors.

A :class:`LatticeDescriptor` bundles the order, join and bottom of a lattice
with optional meet/top and, for small test universes, a full enumeration of
its elements.  Lattice values are plain immutable Python objects compared
structurally (``==``), so descriptors can be chosen at runtime by the CLI.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import Any, Callable, Optional


class DomainError(ValueError):
    """A value is not an element of the lattice it was handed to."""


class UnsupportedOperation(TypeError):
    """The lattice does not provide the requested operation (e.g. meet)."""


class FrozenMap(Mapping):
    """Hashable, immutable mapping with structural equality."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data: Mapping | Iterable[tuple[Any, Any]] = ()):
        self._data = dict(data)
        self._hash: Optional[int] = None

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, FrozenMap):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"FrozenMap({self._data!r})"

    def set(self, key, value) -> "FrozenMap":
        data = dict(self._data)
        data[key] = value
        return FrozenMap(data)

    def update(self, items: Mapping) -> "FrozenMap":
        data = dict(self._data)
        data.update(items)
        return FrozenMap(data)


@dataclass(frozen=True, eq=False)
class LatticeDescriptor:
    """Operations of a complete lattice, bundled as data.

    ``height`` is the length of the longest strictly ascending chain (number of
    strict steps); it is used only to bound fixpoint iteration counts.
    ``contains`` validates membership; ``render`` prints a value for reports.
    """

    name: str
    leq: Callable[[Any, Any], bool]
    join: Callable[[Any, Any], Any]
    bottom: Any
    meet: Optional[Callable[[Any, Any], Any]] = None
    top: Any = None
    elements: Optional[tuple] = None
    height: Optional[int] = None
    contains: Optional[Callable[[Any], bool]] = None
    render: Callable[[Any], str] = repr

    def join_all(self, values: Iterable) -> Any:
        result = self.bottom
        for v in values:
            result = self.join(result, v)
        return result

    def require_meet(self) -> Callable[[Any, Any], Any]:
        if self.meet is None:
            raise UnsupportedOperation(f"lattice {self.name!r} has no meet")
        return self.meet

    def check(self, value) -> None:
        if self.contains is not None and not self.contains(value):
            raise DomainError(f"{value!r} is not an element of {self.name}")

    def __repr__(self) -> str:
        return f"<LatticeDescriptor {self.name}>"


def leq_via_join(lattice: LatticeDescriptor, a, b) -> bool:
    """``a ⊑ b`` decided as ``a ⊔ b == b``."""
    return lattice.join(a, b) == b


# -- powerset ---------------------------------------------------------------

def _render_set(value: frozenset) -> str:
    return "[" + ", ".join(sorted(map(str, value))) + "]"


def powerset_lattice(universe: Iterable[Hashable], *, name: str = "powerset",
                     render: Callable[[frozenset], str] = _render_set,
                     enumerate_elements: Optional[bool] = None) -> LatticeDescriptor:
    """Subsets of a finite universe ordered by inclusion.

    Elements are enumerated only when the universe is tiny (at most 6 tokens)
    unless ``enumerate_elements`` says otherwise.
    """
    universe = frozenset(universe)

    def contains(a) -> bool:
        return isinstance(a, frozenset) and a <= universe

    def check(a):
        if not contains(a):
            raise DomainError(f"{set(a) - universe!r} outside the universe of {name}")

    def join(a, b):
        check(a)
        check(b)
        return a | b

    def meet(a, b):
        check(a)
        check(b)
        return a & b

    def leq(a, b):
        check(a)
        check(b)
        return a <= b

    if enumerate_elements is None:
        enumerate_elements = len(universe) <= 6
    elements = None
    if enumerate_elements:
        items = sorted(universe, key=repr)
        elements = tuple(
            frozenset(c)
            for r in range(len(items) + 1)
            for c in itertools.combinations(items, r)
        )
    return LatticeDescriptor(
        name=name, leq=leq, join=join, meet=meet, bottom=frozenset(),
        top=universe, elements=elements, height=len(universe),
        contains=contains, render=render,
    )


def powerset_join(universe: frozenset, a: frozenset, b: frozenset) -> frozenset:
    if not (a <= universe and b <= universe):
        raise DomainError(f"{set((a | b) - universe)!r} outside the universe")
    return a | b


# -- flat constants ----------------------------------------------------------

class _Extreme:
    __slots__ = ("_symbol",)

    def __init__(self, symbol: str):
        self._symbol = symbol

    def __repr__(self) -> str:
        return self._symbol

    __str__ = __repr__

    def __reduce__(self):
        return (_extreme, (self._symbol,))


FLAT_BOTTOM = _Extreme("⊥")
FLAT_TOP = _Extreme("⊤")


def _extreme(symbol: str) -> _Extreme:
    return FLAT_BOTTOM if symbol == "⊥" else FLAT_TOP


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self) -> str:
        return str(self.value)


def _is_flat(v) -> bool:
    return v is FLAT_BOTTOM or v is FLAT_TOP or isinstance(v, Const)


def flat_join(a, b):
    if a is FLAT_BOTTOM:
        return b
    if b is FLAT_BOTTOM:
        return a
    if a == b:
        return a
    return FLAT_TOP


def flat_meet(a, b):
    if a is FLAT_TOP:
        return b
    if b is FLAT_TOP:
        return a
    if a == b:
        return a
    return FLAT_BOTTOM


def flat_leq(a, b) -> bool:
    return a is FLAT_BOTTOM or b is FLAT_TOP or a == b


def flat_lattice(constants: Optional[Iterable[int]] = None) -> LatticeDescriptor:
    """⊥ < every ``Const(n)`` < ⊤.

    ``constants`` restricts the enumerated elements to a finite sample; the
    operations themselves accept any integer constant.
    """
    elements = None
    if constants is not None:
        elements = (FLAT_BOTTOM, *(Const(n) for n in constants), FLAT_TOP)
    return LatticeDescriptor(
        name="flat", leq=flat_leq, join=flat_join, meet=flat_meet,
        bottom=FLAT_BOTTOM, top=FLAT_TOP, elements=elements, height=2,
        contains=_is_flat, render=str,
    )


# -- total maps ----------------------------------------------------------------

def map_lattice(keys: Iterable[Hashable], values: LatticeDescriptor, *,
                name: Optional[str] = None,
                render: Optional[Callable[[FrozenMap], str]] = None) -> LatticeDescriptor:
    """Total maps ``keys -> values`` ordered pointwise."""
    keys = tuple(sorted(set(keys), key=str))
    keyset = frozenset(keys)

    def contains(m) -> bool:
        return (isinstance(m, Mapping) and set(m) == keyset
                and all(values.contains is None or values.contains(v) for v in m.values()))

    def leq(a, b) -> bool:
        return all(values.leq(a[k], b[k]) for k in keys)

    def join(a, b):
        return FrozenMap((k, values.join(a[k], b[k])) for k in keys)

    meet = None
    if values.meet is not None:
        def meet(a, b):
            return FrozenMap((k, values.meet(a[k], b[k])) for k in keys)

    top = None
    if values.top is not None:
        top = FrozenMap((k, values.top) for k in keys)

    elements = None
    if values.elements is not None and len(values.elements) ** len(keys) <= 4096:
        elements = tuple(
            FrozenMap(zip(keys, combo))
            for combo in itertools.product(values.elements, repeat=len(keys))
        )

    height = None if values.height is None else len(keys) * values.height

    def default_render(m) -> str:
        return "{" + ", ".join(f"{k}: {values.render(m[k])}" for k in keys) + "}"

    return LatticeDescriptor(
        name=name or f"map[{values.name}]", leq=leq, join=join, meet=meet,
        bottom=FrozenMap((k, values.bottom) for k in keys), top=top,
        elements=elements, height=height, contains=contains,
        render=render or default_render,
    )
