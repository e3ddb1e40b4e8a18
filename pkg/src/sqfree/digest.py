"""64-bit FNV-1a digests for the text artifacts.

Cheap and reproducible; used to tie weights/certificate files to the exact
state-set file they were computed from. Not security-sensitive.
"""

_OFFSET = 0xCBF29CE484222325
_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> str:
    h = _OFFSET
    for b in data:
        h ^= b
        h = (h * _PRIME) & _MASK
    return f"{h:016x}"
