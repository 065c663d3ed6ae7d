"""Finite multisets (bags) over place identifiers.

A :class:`Marking` is immutable and hashable.  Zero counts are never
stored, so two markings compare equal exactly when they agree on every
place.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping


class BagUnderflowError(ValueError):
    """Raised when subtracting a bag that is not contained in the minuend."""


class Marking(Mapping[str, int]):
    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[str, int] | Iterable[str] | None = None):
        items: dict[str, int] = {}
        if counts is None:
            pass
        elif isinstance(counts, Mapping):
            for place, n in counts.items():
                if not isinstance(n, int) or n < 0:
                    raise ValueError(f"count for {place!r} must be a nonnegative int, got {n!r}")
                if n:
                    items[place] = n
        else:
            for place in counts:
                items[place] = items.get(place, 0) + 1
        self._counts = items
        self._hash: int | None = None

    @classmethod
    def of(cls, *places: str) -> Marking:
        """``Marking.of("p", "p", "q")`` is the bag ``[p^2, q]``."""
        return cls(places)

    @classmethod
    def parse(cls, text: str) -> Marking:
        """Parse the CLI form ``p:2,q:1`` (a bare ``p`` means one token)."""
        counts: dict[str, int] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            name, sep, n = part.partition(":")
            name = name.strip()
            try:
                value = int(n) if sep else 1
            except ValueError:
                raise ValueError(f"bad token count in {part!r}") from None
            if not name or value < 0:
                raise ValueError(f"bad marking entry {part!r}")
            counts[name] = counts.get(name, 0) + value
        return cls(counts)

    # Mapping protocol; missing places have count 0.
    def __getitem__(self, place: str) -> int:
        return self._counts.get(place, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, place: object) -> bool:
        return place in self._counts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Marking):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    @property
    def size(self) -> int:
        """Total number of tokens, ``|m|``."""
        return sum(self._counts.values())

    def __add__(self, other: Marking) -> Marking:
        if not isinstance(other, Marking):
            return NotImplemented
        out = dict(self._counts)
        for place, n in other._counts.items():
            out[place] = out.get(place, 0) + n
        return Marking(out)

    def __sub__(self, other: Marking) -> Marking:
        if not isinstance(other, Marking):
            return NotImplemented
        if not other <= self:
            raise BagUnderflowError(f"cannot subtract {other} from {self}")
        out = dict(self._counts)
        for place, n in other._counts.items():
            out[place] -= n
        return Marking(out)

    def __le__(self, other: Marking) -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return all(other[place] >= n for place, n in self._counts.items())

    def __ge__(self, other: Marking) -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return other <= self

    def __lt__(self, other: Marking) -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return self <= other and self != other

    def __gt__(self, other: Marking) -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return other < self

    def scale(self, k: int) -> Marking:
        """The sum of ``k`` copies of this bag."""
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        return Marking({p: n * k for p, n in self._counts.items()})

    def __rmul__(self, k: int) -> Marking:
        if not isinstance(k, int):
            return NotImplemented
        return self.scale(k)

    def __bool__(self) -> bool:
        return bool(self._counts)

    def sorted_items(self) -> list[tuple[str, int]]:
        return sorted(self._counts.items())

    def __str__(self) -> str:
        parts = [p if n == 1 else f"{p}^{n}" for p, n in self.sorted_items()]
        return "[" + ", ".join(parts) + "]"

    def __repr__(self) -> str:
        return f"Marking({dict(self.sorted_items())!r})"

    def to_cli(self) -> str:
        return ",".join(f"{p}:{n}" for p, n in self.sorted_items())


EMPTY = Marking()
