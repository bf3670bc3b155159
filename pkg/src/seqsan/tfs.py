"""Shortest sanitized string preserving the total order of non-sensitive windows.

The construction reads the input left to right and maintains two rules: when
the last letter of a sensitive window would be emitted, a separator '#' is
appended followed by the next non-sensitive window in full; when the k-1
letters after a separator would duplicate the k-1 letters before it, the
separator and the duplicate letters are elided and only the new last letter is
emitted.  The result conceals every sensitive pattern while keeping each
non-sensitive pattern at its original frequency and relative order, and no
shorter string does.

Two construction paths are provided: `tfs_sanitize` materializes the output,
`tfs_compact` emits interval references into the input so the output never has
to exist in memory.  Both paths must agree; the compact path answers its
overlap queries with precomputed rolling-hash fingerprints instead of direct
letter comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SEPARATOR, SanitizationInstance
from .errors import OutOfBounds


@dataclass(frozen=True)
class Interval:
    """Inclusive reference to source positions start..end."""

    start: int
    end: int


@dataclass(frozen=True)
class Separator:
    """Marker segment standing for a single '#'."""


SEP_SEGMENT = Separator()

Segment = Interval | Separator


@dataclass(frozen=True)
class CompactTfs:
    """Sanitized output as segments over the source string."""

    segments: tuple[Segment, ...]

    def __len__(self) -> int:
        return len(self.segments)


def tfs_sanitize(inst: SanitizationInstance) -> str:
    """Construct the shortest order- and frequency-preserving sanitized string.

    Returns the empty string when every window is sensitive.
    """
    text, k, mask = inst.text, inst.k, inst.mask
    n = len(text)

    j = mask.find(0)
    if j == -1 or j + k - 1 >= n:
        return ""
    parts = [text[j : j + k]]
    j += k
    f = -1

    while j < n:
        p = j - k
        c = p + 1
        mp, mc = mask[p], mask[c]
        if mp == 0 and mc == 0:
            # Bulk-extend through the run of adjacent non-sensitive windows.
            nxt = mask.find(1, c)
            if nxt == -1:
                nxt = n
            parts.append(text[j : nxt + k - 1])
            j = nxt + k - 1
        elif mp == 0 and mc == 1:
            f = c
            j += 1
        elif mp == 1 and mc == 1:
            nxt = mask.find(0, c)
            if nxt == -1:
                j = n
            else:
                j = nxt + k - 1
        else:  # leaving a sensitive stretch at a non-sensitive window
            if text[c : c + k - 1] == text[f : f + k - 1]:
                parts.append(text[j])
            else:
                parts.append(SEPARATOR)
                parts.append(text[c : j + 1])
            j += 1

    return "".join(parts)


_MOD1 = (1 << 61) - 1
_MOD2 = (1 << 31) - 1
_BASE1 = 131
_BASE2 = 1_000_003


class _Fingerprints:
    """Rolling-hash substring fingerprints with O(1) equality queries.

    Two independent moduli keep the collision probability across the O(n)
    queries of one construction far below 2^-40.
    """

    def __init__(self, text: str):
        n = len(text)
        h1 = [0] * (n + 1)
        h2 = [0] * (n + 1)
        p1 = [1] * (n + 1)
        p2 = [1] * (n + 1)
        for i, ch in enumerate(text):
            o = ord(ch)
            h1[i + 1] = (h1[i] * _BASE1 + o) % _MOD1
            h2[i + 1] = (h2[i] * _BASE2 + o) % _MOD2
            p1[i + 1] = (p1[i] * _BASE1) % _MOD1
            p2[i + 1] = (p2[i] * _BASE2) % _MOD2
        self._h1, self._h2, self._p1, self._p2 = h1, h2, p1, p2

    def equal(self, a: int, b: int, length: int) -> bool:
        """Whether text[a:a+length] == text[b:b+length]."""
        if length <= 0:
            return True
        h1, h2, p1, p2 = self._h1, self._h2, self._p1, self._p2
        fa1 = (h1[a + length] - h1[a] * p1[length]) % _MOD1
        fb1 = (h1[b + length] - h1[b] * p1[length]) % _MOD1
        if fa1 != fb1:
            return False
        fa2 = (h2[a + length] - h2[a] * p2[length]) % _MOD2
        fb2 = (h2[b + length] - h2[b] * p2[length]) % _MOD2
        return fa2 == fb2


def tfs_compact(inst: SanitizationInstance) -> CompactTfs:
    """Interval-form construction; never materializes the output string."""
    text, k, mask = inst.text, inst.k, inst.mask
    n = len(text)

    j = mask.find(0)
    if j == -1 or j + k - 1 >= n:
        return CompactTfs(segments=())

    fp = _Fingerprints(text)
    segments: list[Segment] = []
    cur_start, cur_end = j, j + k - 1
    j += k
    f = -1

    while j < n:
        p = j - k
        c = p + 1
        mp, mc = mask[p], mask[c]
        if mp == 0 and mc == 0:
            nxt = mask.find(1, c)
            if nxt == -1:
                nxt = n
            cur_end = min(nxt + k - 2, n - 1)
            j = nxt + k - 1
        elif mp == 0 and mc == 1:
            f = c
            j += 1
        elif mp == 1 and mc == 1:
            nxt = mask.find(0, c)
            if nxt == -1:
                j = n
            else:
                j = nxt + k - 1
        else:
            if fp.equal(c, f, k - 1):
                # One letter joins the current block; it is only contiguous
                # with the open interval when no sensitive stretch intervened.
                if j == cur_end + 1:
                    cur_end = j
                else:
                    segments.append(Interval(cur_start, cur_end))
                    cur_start = cur_end = j
            else:
                segments.append(Interval(cur_start, cur_end))
                segments.append(SEP_SEGMENT)
                cur_start, cur_end = c, j
            j += 1

    segments.append(Interval(cur_start, cur_end))
    return CompactTfs(segments=tuple(segments))


def expand(compact: CompactTfs, text: str) -> str:
    """Materialize a compact form against its source string."""
    n = len(text)
    parts: list[str] = []
    for seg in compact.segments:
        if isinstance(seg, Interval):
            if not (0 <= seg.start <= seg.end < n):
                raise OutOfBounds(f"interval {seg.start}..{seg.end} outside source of length {n}")
            parts.append(text[seg.start : seg.end + 1])
        else:
            parts.append(SEPARATOR)
    return "".join(parts)
