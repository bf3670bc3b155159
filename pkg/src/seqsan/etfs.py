"""Sanitize at minimal edit distance from the input.

Instead of building one canonical output, this setting asks for the string
closest to the input among all strings that conceal the sensitive patterns
while preserving non-sensitive window order and frequency.  That family is
exactly a regular language: the non-sensitive windows must appear in order,
consecutive windows sharing a length-(k-1) overlap may either fuse into one
letter or be separated by filler, and filler is any separator-delimited
string that never runs k alphabet letters in a row.  The optimum is found by
approximate regular-expression matching: compile the language to an
epsilon-automaton with symbolic any-letter edges and run an edit-distance
dynamic program over (input position, automaton state), then trace back a
witness.

For long inputs the traceback checkpoints distance columns and re-derives
parent pointers window by window, keeping memory linear in the automaton.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import SEPARATOR, Alphabet, SanitizationInstance
from .errors import NoNonSensitive

ANY = -1  # consuming-edge label: any single alphabet letter
_FULL_TRACE_CELLS = 4_000_000
_CHECKPOINT_STRIDE = 64


@dataclass(frozen=True)
class Merge:
    """Next window overlaps the previous one: keep one letter or interleave."""

    short: str  # the single letter left after fusing the overlap
    pattern: str


@dataclass(frozen=True)
class Gap:
    """Next window does not overlap: filler is mandatory."""

    pattern: str


@dataclass(frozen=True)
class SanRegex:
    """Structured regular expression over the alphabet plus '#'.

    `head` is the first mandatory window; a None head is the degenerate form
    used when no non-sensitive window exists, accepting exactly the strings
    with no k consecutive alphabet letters.
    """

    k: int
    letters: str
    head: str | None
    segments: tuple[Merge | Gap, ...]

    def flattened_length(self) -> int:
        """Size of the expression with gadgets spelled out letter by letter."""
        sigma_lt_k = (self.k - 1) * (len(self.letters) + 1)
        gadget = sigma_lt_k + 2
        if self.head is None:
            return sigma_lt_k + gadget
        total = gadget + len(self.head) + gadget
        for seg in self.segments:
            if isinstance(seg, Merge):
                total += 1 + gadget + len(seg.pattern) + 2
            else:
                total += gadget + len(seg.pattern)
        return total

    def to_pattern(self) -> str:
        """Equivalent `re` pattern, for independent membership checking."""
        cls = "[" + re.escape(self.letters) + "]"
        run = f"(?:{cls}?){{{self.k - 1}}}" if self.k > 1 else ""
        if self.head is None:
            return f"{run}(?:#{run})*"
        plus = f"#(?:{run}#)*"
        parts = [f"(?:{run}#)*", re.escape(self.head)]
        for seg in self.segments:
            if isinstance(seg, Merge):
                parts.append(f"(?:{re.escape(seg.short)}|{plus}{re.escape(seg.pattern)})")
            else:
                parts.append(f"{plus}{re.escape(seg.pattern)}")
        parts.append(f"(?:#{run})*")
        return "".join(parts)

    def matches(self, text: str) -> bool:
        return re.fullmatch(self.to_pattern(), text) is not None


@dataclass(frozen=True)
class MatchResult:
    text: str
    distance: int
    trace: tuple[tuple[str, str], ...] | None = None


def build_regex(inst: SanitizationInstance) -> SanRegex:
    """Language of all order- and frequency-preserving sanitized strings."""
    positions = inst.nonsensitive_positions
    if not positions:
        raise NoNonSensitive("every window is sensitive; the standard form needs an anchor window")
    text, k = inst.text, inst.k
    head = text[positions[0] : positions[0] + k]
    segments: list[Merge | Gap] = []
    prev = positions[0]
    for cur in positions[1:]:
        pattern = text[cur : cur + k]
        if text[prev + 1 : prev + k] == text[cur : cur + k - 1]:
            segments.append(Merge(short=pattern[k - 1], pattern=pattern))
        else:
            segments.append(Gap(pattern=pattern))
        prev = cur
    return SanRegex(k=k, letters=inst.alphabet.chars, head=head, segments=tuple(segments))


def fallback_regex(alphabet: Alphabet, k: int) -> SanRegex:
    """Strings with no k consecutive alphabet letters; used when nothing is preservable."""
    return SanRegex(k=k, letters=alphabet.chars, head=None, segments=())


class _Automaton:
    """Epsilon-automaton with integer-labelled consuming edges (ANY = any letter)."""

    def __init__(self, regex: SanRegex):
        self.n_states = 1
        self.cons: list[tuple[int, int, int]] = []  # (src, dst, label ord or ANY)
        self.eps: list[tuple[int, int]] = []
        k = regex.k

        def new() -> int:
            self.n_states += 1
            return self.n_states - 1

        def sigma_run(src: int) -> int:
            cur = src
            for _ in range(k - 1):
                nxt = new()
                self.cons.append((cur, nxt, ANY))
                self.eps.append((cur, nxt))
                cur = nxt
            return cur

        def literal(src: int, s: str) -> int:
            cur = src
            for ch in s:
                nxt = new()
                self.cons.append((cur, nxt, ord(ch)))
                cur = nxt
            return cur

        sep = ord(SEPARATOR)
        start = 0
        if regex.head is None:
            p = sigma_run(start)
            h = new()
            self.cons.append((p, h, sep))
            q = sigma_run(h)
            self.cons.append((q, h, sep))
            acc = new()
            self.eps.append((p, acc))
            self.eps.append((q, acc))
            self.accept = acc
            return

        r = sigma_run(start)
        self.cons.append((r, start, sep))  # leading filler loops back to the head
        cur = literal(start, regex.head)
        for seg in regex.segments:
            branch = cur
            h = new()
            self.cons.append((branch, h, sep))
            p = sigma_run(h)
            self.cons.append((p, h, sep))
            cur = literal(h, seg.pattern)
            if isinstance(seg, Merge):
                self.cons.append((branch, cur, ord(seg.short)))
        h = new()
        self.cons.append((cur, h, sep))
        q = sigma_run(h)
        self.cons.append((q, h, sep))
        acc = new()
        self.eps.append((cur, acc))
        self.eps.append((q, acc))
        self.accept = acc


INF = float("inf")


class _Matcher:
    """Edit-distance DP over (input position, automaton state)."""

    def __init__(self, auto: _Automaton, letters: str):
        self.auto = auto
        self.letters = letters
        # In-column edges: epsilon moves cost 0, generate-without-consuming costs 1.
        in_edges = [(src, 0, dst, -1) for src, dst in auto.eps]
        in_edges += [(src, 1, dst, e) for e, (src, dst, _lab) in enumerate(auto.cons)]
        in_edges.sort()
        self.in_edges = in_edges
        self.cons = auto.cons

    def _relax(self, col: list[float]) -> None:
        edges = self.in_edges
        changed = True
        while changed:
            changed = False
            for src, w, dst, _e in edges:
                v = col[src] + w
                if v < col[dst]:
                    col[dst] = v
                    changed = True

    def _relax_recording(self, col: list[float], ops: list[int], refs: list[int]) -> None:
        edges = self.in_edges
        changed = True
        while changed:
            changed = False
            for src, w, dst, e in edges:
                v = col[src] + w
                if v < col[dst]:
                    col[dst] = v
                    if e < 0:
                        ops[dst] = 4
                        refs[dst] = src
                    else:
                        ops[dst] = 3
                        refs[dst] = e
                    changed = True

    def _column0(self, record: bool):
        col = [INF] * self.auto.n_states
        col[0] = 0
        if not record:
            self._relax(col)
            return col, None
        ops = [0] * self.auto.n_states
        refs = [0] * self.auto.n_states
        self._relax_recording(col, ops, refs)
        return col, (ops, refs)

    def _advance(self, col: list[float], oc: int, record: bool):
        nxt = [v + 1 for v in col]
        if not record:
            for src, dst, lab in self.cons:
                v = col[src] + (0 if (lab == ANY or lab == oc) else 1)
                if v < nxt[dst]:
                    nxt[dst] = v
            self._relax(nxt)
            return nxt, None
        ops = [1] * self.auto.n_states
        refs = list(range(self.auto.n_states))
        for e, (src, dst, lab) in enumerate(self.cons):
            v = col[src] + (0 if (lab == ANY or lab == oc) else 1)
            if v < nxt[dst]:
                nxt[dst] = v
                ops[dst] = 2
                refs[dst] = e
        self._relax_recording(nxt, ops, refs)
        return nxt, (ops, refs)

    def match(self, text: str) -> MatchResult:
        n = len(text)
        codes = [ord(ch) for ch in text]
        full = (n + 1) * self.auto.n_states <= _FULL_TRACE_CELLS
        stride = n + 1 if full else _CHECKPOINT_STRIDE

        checkpoints: dict[int, list[float]] = {}
        col, _ = self._column0(record=False)
        for i in range(n):
            col, _ = self._advance(col, codes[i], record=False)
            if (i + 1) % stride == 0 and i + 1 < n:
                checkpoints[i + 1] = col[:]
        distance = col[self.auto.accept]

        pieces: list[str] = []
        trace_rev: list[tuple[str, str]] = []
        state = self.auto.accept
        i = n
        boundaries = [0] + sorted(checkpoints)
        min_letter = self.letters[0] if self.letters else SEPARATOR
        done = False
        while not done:
            hi = i
            lo = max(b for b in boundaries if b < hi) if hi > 0 else 0
            records: dict[int, tuple[list[int], list[int]]] = {}
            if lo == 0:
                c, rec = self._column0(record=True)
                records[0] = rec
            else:
                c = checkpoints[lo]
            for j in range(lo, hi):
                c, rec = self._advance(c, codes[j], record=True)
                records[j + 1] = rec
            while True:
                if i == lo and lo > 0:
                    break  # resume in the previous window
                ops, refs = records[i]
                op = ops[state]
                if op == 0:
                    done = True
                    break
                if op == 1:
                    trace_rev.append(("delete", text[i - 1]))
                    i -= 1
                elif op == 2:
                    e = refs[state]
                    src, _dst, lab = self.cons[e]
                    ch = text[i - 1] if lab == ANY else chr(lab)
                    trace_rev.append(("match" if ch == text[i - 1] else "substitute", ch))
                    pieces.append(ch)
                    state = src
                    i -= 1
                elif op == 3:
                    e = refs[state]
                    src, _dst, lab = self.cons[e]
                    ch = min_letter if lab == ANY else chr(lab)
                    trace_rev.append(("insert", ch))
                    pieces.append(ch)
                    state = src
                else:
                    state = refs[state]

        witness = "".join(reversed(pieces))
        return MatchResult(text=witness, distance=int(distance), trace=tuple(reversed(trace_rev)))


def approx_regex_match(text: str, regex: SanRegex) -> MatchResult:
    """Closest string in the language of `regex` to `text`, with a witness."""
    matcher = _Matcher(_Automaton(regex), regex.letters)
    return matcher.match(text)


def etfs_sanitize(inst: SanitizationInstance) -> MatchResult:
    """Minimal-edit-distance sanitized string for the instance."""
    try:
        regex = build_regex(inst)
    except NoNonSensitive:
        regex = fallback_regex(inst.alphabet, inst.k)
    return approx_regex_match(inst.text, regex)
