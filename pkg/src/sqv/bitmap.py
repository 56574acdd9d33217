"""Bit-packed membership bitmap over the integers 1..limit.

Storage is ceil(limit/64) little-endian 64-bit words; integer n occupies bit
(n-1) & 63 of word (n-1) >> 6, i.e. one bit per integer.  This is also the
payload layout of the on-disk cache format (see the cache module).
"""

import numpy as np


class PackedBitmap:
    __slots__ = ("limit", "words")

    def __init__(self, limit: int, words: np.ndarray = None):
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        nwords = (limit + 63) // 64
        if words is None:
            words = np.zeros(nwords, dtype=np.uint64)
        elif len(words) != nwords:
            raise ValueError(f"expected {nwords} words for limit {limit}, got {len(words)}")
        self.limit = limit
        self.words = words

    @classmethod
    def from_members(cls, limit: int, members) -> "PackedBitmap":
        """Build from an iterable/array of member integers in [1, limit]."""
        bm = cls(limit)
        idx = np.asarray(members, dtype=np.int64) - 1
        if idx.size:
            if idx.min() < 0 or idx.max() >= limit:
                raise ValueError("member out of range")
            np.bitwise_or.at(bm.words, idx >> 6, np.uint64(1) << (idx & 63).astype(np.uint64))
        return bm

    @classmethod
    def from_bool_array(cls, flags: np.ndarray) -> "PackedBitmap":
        """Build from a bool array indexed 0..limit (index 0 is ignored)."""
        limit = len(flags) - 1
        packed = np.packbits(flags[1:], bitorder="little").tobytes()
        pad = (-len(packed)) % 8
        words = np.frombuffer(packed + b"\x00" * pad, dtype="<u8").astype(np.uint64)
        return cls(limit, words)

    def test(self, n: int) -> bool:
        if not 1 <= n <= self.limit:
            return False
        i = n - 1
        return bool((int(self.words[i >> 6]) >> (i & 63)) & 1)

    __contains__ = test

    def count(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def count_upto(self, x: int) -> int:
        """Number of set bits for integers <= x."""
        if x >= self.limit:
            return self.count()
        if x < 1:
            return 0
        q, r = divmod(x, 64)
        total = int(np.bitwise_count(self.words[:q]).sum())
        if r:
            mask = np.uint64((1 << r) - 1)
            total += int(np.bitwise_count(self.words[q] & mask))
        return total

    def members(self) -> np.ndarray:
        """Sorted int64 array of all set integers."""
        bits = np.unpackbits(self.words.view(np.uint8), count=self.limit, bitorder="little")
        return np.flatnonzero(bits).astype(np.int64) + 1

    def __eq__(self, other):
        return (
            isinstance(other, PackedBitmap)
            and self.limit == other.limit
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):  # pragma: no cover
        return hash((self.limit, self.words.tobytes()))
