"""Boolean transformations f: Z_2^n -> Z_2^n as explicit tables.

Bit convention, used everywhere in the package: the tuple <x1, ..., xn> is
encoded as an integer with x1 as the most significant bit, and the output
word <f1(x), ..., fn(x)> is encoded the same way.  Output index ``i`` in the
Python API is 0-based, so ``bit(x, 0)`` is f1(x).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence


@dataclass(frozen=True)
class TruthTable:
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} entries for n={self.n}, got {len(self.entries)}")
        limit = 1 << self.n
        for x, e in enumerate(self.entries):
            if not 0 <= e < limit:
                raise ValueError(f"entry {x} = {e} is not an {self.n}-bit word")

    def __call__(self, x: int) -> int:
        return self.entries[x]

    def __len__(self) -> int:
        return len(self.entries)

    def bit(self, x: int, i: int) -> int:
        """Value of output i (0-based, MSB first) on input word x."""
        return (self.entries[x] >> (self.n - 1 - i)) & 1

    def output_function(self, i: int) -> tuple[int, ...]:
        return tuple(self.bit(x, i) for x in range(1 << self.n))

    def to_strings(self) -> list[str]:
        return [format(e, f"0{self.n}b") if self.n else "" for e in self.entries]

    @classmethod
    def from_function(cls, n: int, func: Callable[[int], int]) -> "TruthTable":
        return cls(n, tuple(func(x) for x in range(1 << n)))

    @classmethod
    def identity(cls, n: int) -> "TruthTable":
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "TruthTable":
        return cls(n, (value,) * (1 << n))

    @classmethod
    def bit_reversal(cls, n: int) -> "TruthTable":
        """The permutation <x1..xn> -> <xn..x1>."""
        return cls.from_function(n, lambda x: int(format(x, f"0{n}b")[::-1], 2) if n else 0)

    @classmethod
    def random(cls, n: int, seed: int | str) -> "TruthTable":
        """2**n independent uniform n-bit words.

        The generator is Python's MT19937 (``random.Random``) seeded with the
        string ``"{seed}/{n}"``; words are drawn in row order with
        ``getrandbits(n)``.  The stream is stable across Python versions.
        """
        rng = random.Random(f"{seed}/{n}")
        if n == 0:
            return cls(0, (0,))
        return cls(n, tuple(rng.getrandbits(n) for _ in range(1 << n)))


def as_truth_table(obj: "TruthTable | Sequence[int]", n: int | None = None) -> TruthTable:
    if isinstance(obj, TruthTable):
        return obj
    entries = [int(e) for e in obj]
    if n is None:
        n = max(len(entries).bit_length() - 1, 0)
    return TruthTable(n, tuple(entries))
