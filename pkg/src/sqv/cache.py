"""On-disk sieve cache.

File layout (all little-endian):

    offset  size  field
    0       4     magic, the bytes "SQVS"
    4       2     version, currently 1 (uint16)
    6       1     kind: 1 = squareful sieve, 2 = sumset bitmap
    7       8     limit (uint64)
    15      8*W   payload: W = ceil(limit/64) words (uint64); integer n
                  occupies bit (n-1) % 64 of word (n-1) // 64
    15+8W   8     checksum (uint64) over everything before it

The checksum is a rolling FNV-1a variant over 8-byte units: the covered
bytes are zero-padded to a multiple of 8 and read as little-endian uint64
words w_i, then h = 0xcbf29ce484222325 and per word
h = (h ^ w_i) * 0x100000001b3 mod 2^64.  Writes are atomic (temp file +
rename).  A short file or a checksum mismatch raises CacheCorruptionError;
a wrong magic, version, or kind raises CacheFormatError.
"""

import os
import struct
import tempfile

import numpy as np

from .bitmap import PackedBitmap
from .errors import CacheCorruptionError, CacheFormatError, ParameterError
from .squareful import SquarefulSieve
from .sumset import SumsetBitmap

MAGIC = b"SQVS"
VERSION = 1
KIND_SQUAREFUL = 1
KIND_SUMSET = 2

_HEADER = struct.Struct("<4sHBQ")
ENV_CACHE_DIR = "SQV_CACHE_DIR"


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h = ((h ^ byte) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def resolve_cache_dir(cache_dir: str = None) -> str:
    """The explicit directory, else $SQV_CACHE_DIR, else an error."""
    d = cache_dir or os.environ.get(ENV_CACHE_DIR)
    if not d:
        raise ParameterError(f"no cache directory: pass one or set {ENV_CACHE_DIR}")
    return d


def cache_path(directory: str, kind: int, limit: int) -> str:
    name = {KIND_SQUAREFUL: "squareful", KIND_SUMSET: "sumset"}[kind]
    return os.path.join(directory, f"{name}-{limit}.sqvs")


def save_bitmap(path: str, kind: int, bitmap: PackedBitmap) -> str:
    """Write a bitmap atomically; returns the path."""
    if kind not in (KIND_SQUAREFUL, KIND_SUMSET):
        raise ParameterError(f"unknown kind {kind}")
    header = _HEADER.pack(MAGIC, VERSION, kind, bitmap.limit)
    payload = bitmap.words.astype("<u8").tobytes()
    checksum = fnv1a64(header + payload)
    blob = header + payload + struct.pack("<Q", checksum)
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load_bitmap(path: str, expect_kind: int = None) -> tuple:
    """Read (kind, PackedBitmap) back, validating structure and checksum."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size + 8:
        raise CacheCorruptionError(f"{path}: truncated ({len(blob)} bytes)")
    magic, version, kind, limit = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise CacheFormatError(f"{path}: unknown version {version}")
    if kind not in (KIND_SQUAREFUL, KIND_SUMSET):
        raise CacheFormatError(f"{path}: unknown kind {kind}")
    nwords = (limit + 63) // 64
    expected = _HEADER.size + 8 * nwords + 8
    if len(blob) != expected:
        raise CacheCorruptionError(f"{path}: expected {expected} bytes, found {len(blob)}")
    stored = struct.unpack_from("<Q", blob, expected - 8)[0]
    actual = fnv1a64(blob[: expected - 8])
    if stored != actual:
        raise CacheCorruptionError(f"{path}: checksum mismatch")
    if expect_kind is not None and kind != expect_kind:
        raise CacheFormatError(f"{path}: kind {kind}, expected {expect_kind}")
    words = np.frombuffer(blob[_HEADER.size: expected - 8], dtype="<u8").astype(np.uint64)
    return kind, PackedBitmap(limit, words)


def save_squareful(sieve: SquarefulSieve, directory: str) -> str:
    return save_bitmap(cache_path(directory, KIND_SQUAREFUL, sieve.limit), KIND_SQUAREFUL, sieve.bits)


def load_squareful(directory: str, limit: int) -> SquarefulSieve:
    _, bits = load_bitmap(cache_path(directory, KIND_SQUAREFUL, limit), KIND_SQUAREFUL)
    members = bits.members()
    return SquarefulSieve(limit=limit, bits=bits, count=int(members.size), members=members)


def save_sumset(sumset: SumsetBitmap, directory: str) -> str:
    return save_bitmap(cache_path(directory, KIND_SUMSET, sumset.limit), KIND_SUMSET, sumset.bits)


def load_sumset(directory: str, limit: int) -> SumsetBitmap:
    _, bits = load_bitmap(cache_path(directory, KIND_SUMSET, limit), KIND_SUMSET)
    return SumsetBitmap(limit=limit, bits=bits, count=bits.count())


def cache_roundtrip(obj, directory: str = None):
    """Persist a sieve or sumset and read it back; returns the reloaded copy.

    The reloaded bitmap is verified bit-identical to the original.
    """
    directory = resolve_cache_dir(directory)
    if isinstance(obj, SquarefulSieve):
        save_squareful(obj, directory)
        back = load_squareful(directory, obj.limit)
    elif isinstance(obj, SumsetBitmap):
        save_sumset(obj, directory)
        back = load_sumset(directory, obj.limit)
    else:
        raise ParameterError(f"cannot cache object of type {type(obj).__name__}")
    if back.bits != obj.bits:
        raise CacheCorruptionError("reloaded bitmap differs from the original")
    return back
