"""Instance model: alphabets, sensitive-occurrence bookkeeping, and k-mer counting.

A sanitization instance fixes a sequence, a pattern length k, and a closed set
of sensitive occurrence positions.  Closure means: if one occurrence of a
pattern is sensitive, every occurrence of that pattern is.  All sanitizers in
this package consume instances built here.

Sequences are handled internally as plain Python strings over an encoded
alphabet.  Char mode keeps input characters as-is; token mode maps arbitrary
whitespace-separated tokens onto private-use code points so that large
alphabets (hundreds of distinct tokens) still fit the one-char-per-letter
representation.  The separator '#' is reserved in both modes.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import BadK, BadPosition, SeparatorInInput

SEPARATOR = "#"

# Token-mode letters are mapped into the Unicode private-use area, far away
# from '#' (U+0023) and from anything a char-mode input could contain.
_TOKEN_BASE = 0xE000

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Alphabet:
    """Ordered alphabet with a bijection between user tokens and internal chars.

    The token order is total and defines the lexicographic rank used by every
    comparison in the package.  Internal characters are assigned in rank order,
    so comparing encoded strings agrees with comparing token sequences.
    """

    tokens: tuple[str, ...]
    token_mode: bool = False

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("alphabet must contain at least one letter")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("alphabet tokens must be unique")
        if SEPARATOR in self.tokens:
            raise SeparatorInInput("the separator '#' cannot be an alphabet letter")
        if not self.token_mode:
            for tok in self.tokens:
                if len(tok) != 1:
                    raise ValueError(f"char-mode letters must be single characters, got {tok!r}")

    @classmethod
    def from_text(cls, text: str) -> "Alphabet":
        """Char-mode alphabet: the sorted distinct characters of `text`."""
        if SEPARATOR in text:
            raise SeparatorInInput("input sequence contains the reserved separator '#'")
        return cls(tokens=tuple(sorted(set(text))), token_mode=False)

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "Alphabet":
        """Token-mode alphabet: the sorted distinct tokens of the iterable."""
        distinct = sorted(set(tokens))
        if SEPARATOR in distinct:
            raise SeparatorInInput("input sequence contains the reserved separator '#'")
        return cls(tokens=tuple(distinct), token_mode=True)

    @property
    def size(self) -> int:
        return len(self.tokens)

    @cached_property
    def chars(self) -> str:
        """Internal one-char letters, in rank order."""
        if self.token_mode:
            return "".join(chr(_TOKEN_BASE + i) for i in range(len(self.tokens)))
        return "".join(self.tokens)

    @cached_property
    def _encode_map(self) -> dict[str, str]:
        return dict(zip(self.tokens, self.chars))

    @cached_property
    def _decode_map(self) -> dict[str, str]:
        out = {c: t for t, c in zip(self.tokens, self.chars)}
        out[SEPARATOR] = SEPARATOR
        return out

    def encode(self, tokens: Iterable[str]) -> str:
        """Map a token sequence (or a char-mode string) to the internal form."""
        enc = self._encode_map
        try:
            return "".join(enc[t] for t in tokens)
        except KeyError as exc:
            raise ValueError(f"token {exc.args[0]!r} is not in the alphabet") from None

    def decode_tokens(self, encoded: str) -> list[str]:
        dec = self._decode_map
        return [dec[c] for c in encoded]

    def decode(self, encoded: str) -> str:
        """Render an internal string for output: char mode verbatim, token mode space-joined."""
        if not self.token_mode:
            return encoded
        return " ".join(self.decode_tokens(encoded))


@dataclass(frozen=True)
class SanitizationInstance:
    """An immutable sanitization problem: sequence, k, and closed sensitive set.

    `mask` has one flag per position: mask[i] == 1 iff i is a sensitive
    occurrence start, for i <= n-k; the last k-1 entries copy mask[n-k].
    """

    text: str
    k: int
    alphabet: Alphabet
    sensitive_positions: frozenset[int]
    sensitive_patterns: frozenset[str]
    mask: bytes = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.text)

    @cached_property
    def nonsensitive_positions(self) -> tuple[int, ...]:
        """Occurrence starts of non-sensitive patterns, ascending."""
        last = self.n - self.k
        mask = self.mask
        return tuple(i for i in range(last + 1) if not mask[i])

    def window(self, i: int) -> str:
        return self.text[i : i + self.k]


def _occurrences(text: str, pattern: str) -> Iterator[int]:
    pos = text.find(pattern)
    while pos != -1:
        yield pos
        pos = text.find(pattern, pos + 1)


def build_instance(
    text: str,
    k: int,
    *,
    patterns: Iterable[str] = (),
    positions: Iterable[int] = (),
    alphabet: Alphabet | None = None,
) -> SanitizationInstance:
    """Build an instance, closing the sensitive set.

    Sensitive material can be given as patterns, as occurrence positions, or
    both.  Positions are expanded to all occurrences of the pattern found
    there; listed patterns mark all of their occurrences.  A listed pattern
    that never occurs in `text` is accepted (it is trivially concealed) and
    logged.
    """
    if SEPARATOR in text:
        raise SeparatorInInput("input sequence contains the reserved separator '#'")
    n = len(text)
    if not 0 < k < n:
        raise BadK(f"k must satisfy 0 < k < {n}, got {k}")
    if alphabet is None:
        alphabet = Alphabet.from_text(text)

    wanted: set[str] = set()
    for pat in patterns:
        if len(pat) != k:
            raise BadK(f"sensitive pattern {pat!r} does not have length k={k}")
        wanted.add(pat)
    for pos in positions:
        if not 0 <= pos <= n - k:
            raise BadPosition(f"position {pos} outside valid range 0..{n - k}")
        wanted.add(text[pos : pos + k])

    sens_positions: set[int] = set()
    sens_patterns: set[str] = set()
    for pat in sorted(wanted):
        occ = list(_occurrences(text, pat))
        if not occ:
            logger.warning("sensitive pattern %r does not occur in the input; nothing to conceal", pat)
            continue
        sens_patterns.add(pat)
        sens_positions.update(occ)

    mask = bytearray(n)
    for i in sens_positions:
        mask[i] = 1
    # Tail rule: the last k-1 flags copy the flag of the final full window.
    tail = mask[n - k]
    for i in range(n - k + 1, n):
        mask[i] = tail

    return SanitizationInstance(
        text=text,
        k=k,
        alphabet=alphabet,
        sensitive_positions=frozenset(sens_positions),
        sensitive_patterns=frozenset(sens_patterns),
        mask=bytes(mask),
    )


def kmer_counts(text: str, k: int) -> Counter[str]:
    """Occurrence counts of every length-k window free of the separator.

    Windows that touch '#' contribute to no count, so the result only has
    alphabet-only patterns as keys.
    """
    if k < 1:
        raise BadK(f"k must be positive, got {k}")
    counts: Counter[str] = Counter()
    for block in text.split(SEPARATOR):
        m = len(block)
        for i in range(m - k + 1):
            counts[block[i : i + k]] += 1
    return counts


def contains_sensitive(text: str, inst: SanitizationInstance) -> bool:
    """True iff some separator-free window of `text` is a sensitive pattern."""
    if not inst.sensitive_patterns:
        return False
    k = inst.k
    for block in text.split(SEPARATOR):
        for i in range(len(block) - k + 1):
            if block[i : i + k] in inst.sensitive_patterns:
                return True
    return False


def overlap_chains(inst: SanitizationInstance) -> list[str]:
    """Spelled strings of the maximal overlap chains of non-sensitive occurrences.

    Two successive non-sensitive occurrences belong to the same chain when the
    length-(k-1) suffix of the earlier window equals the length-(k-1) prefix of
    the later one.  Each chain is spelled as its first window followed by the
    last letter of every subsequent window.
    """
    text, k = inst.text, inst.k
    chains: list[str] = []
    positions = inst.nonsensitive_positions
    if not positions:
        return chains
    prev = positions[0]
    pieces = [text[prev : prev + k]]
    for cur in positions[1:]:
        if text[prev + 1 : prev + k] == text[cur : cur + k - 1]:
            pieces.append(text[cur + k - 1])
        else:
            chains.append("".join(pieces))
            pieces = [text[cur : cur + k]]
        prev = cur
    chains.append("".join(pieces))
    return chains
