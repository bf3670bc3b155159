"""Baseline sanitizer, utility metrics, and the property verifiers.

The verifiers are the shared ground truth for tests and the CLI.  Levels:

  C1   no separator-free window equals a sensitive pattern
  P1   the left-to-right sequence of alphabet-only windows equals the
       sequence of non-sensitive windows of the source, element by element
  Pi1  every maximal overlap chain of the source occurs in the candidate at
       least as many times as it occurs as a chain (multiset containment of
       spelled chains)
  P2   alphabet-only window frequencies equal the source's non-sensitive
       window frequencies exactly (multiset equality)
  P3   separators are rare (at most floor((n-k+1)/2)) and isolated: the
       output neither starts nor ends with '#', and every block between
       separators has at least k letters
  P4   output length is at most ceil((n-k+1)/2)*k + floor((n-k+1)/2)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import SEPARATOR, SanitizationInstance, kmer_counts, overlap_chains
from .errors import UndefinedWhenZero

VERIFY_LEVELS = ("C1", "P1", "Pi1", "P2", "P3", "P4")


@dataclass(frozen=True)
class VerifyResult:
    level: str
    ok: bool
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class MetricsReport:
    """Flat bundle of utility measurements for one pipeline run."""

    pipeline: str
    lengths: dict[str, int] = field(default_factory=dict)
    distortion: float | None = None
    lost: list[str] = field(default_factory=list)
    ghost: list[str] = field(default_factory=list)
    edre: float | None = None
    edit_distance: int | None = None
    implausible_pct: float | None = None
    runtimes_ms: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_text(self, alphabet=None) -> str:
        """Key=value lines; list-valued metrics repeat their key per entry."""
        dec = (lambda p: alphabet.decode(p)) if alphabet is not None else (lambda p: p)
        lines = [f"pipeline={self.pipeline}"]
        for name, value in sorted(self.lengths.items()):
            lines.append(f"length_{name}={value}")
        if self.distortion is not None:
            lines.append(f"distortion={self.distortion:g}")
        lines.append(f"lost_count={len(self.lost)}")
        lines.extend(f"lost={dec(p)}" for p in sorted(self.lost))
        lines.append(f"ghost_count={len(self.ghost)}")
        lines.extend(f"ghost={dec(p)}" for p in sorted(self.ghost))
        if self.edit_distance is not None:
            lines.append(f"edit_distance={self.edit_distance}")
        if self.edre is not None:
            lines.append(f"edre={self.edre:g}")
        if self.implausible_pct is not None:
            lines.append(f"implausible_pct={self.implausible_pct:g}")
        for name, value in sorted(self.runtimes_ms.items()):
            lines.append(f"runtime_ms_{name}={value:.3f}")
        lines.extend(f"note={note}" for note in self.notes)
        return "\n".join(lines) + "\n"


def _sigma_windows(text: str, k: int) -> list[str]:
    out: list[str] = []
    for block in text.split(SEPARATOR):
        out.extend(block[i : i + k] for i in range(len(block) - k + 1))
    return out


def _count_occurrences(text: str, pattern: str) -> int:
    count = 0
    pos = text.find(pattern)
    while pos != -1:
        count += 1
        pos = text.find(pattern, pos + 1)
    return count


def verify(candidate: str, inst: SanitizationInstance, level: str) -> VerifyResult:
    """Check one property level, returning a counterexample on failure."""
    text, k = inst.text, inst.k
    n = len(text)

    if level == "C1":
        for block in candidate.split(SEPARATOR):
            for i in range(len(block) - k + 1):
                win = block[i : i + k]
                if win in inst.sensitive_patterns:
                    return VerifyResult(level, False, f"sensitive window {win!r} at block offset {i}")
        return VerifyResult(level, True)

    if level == "P1":
        want = [text[i : i + k] for i in inst.nonsensitive_positions]
        got = _sigma_windows(candidate, k)
        if want != got:
            bad = next(
                (i for i, (a, b) in enumerate(zip(want, got)) if a != b),
                min(len(want), len(got)),
            )
            return VerifyResult(level, False, f"window order diverges at chain index {bad}")
        return VerifyResult(level, True)

    if level == "Pi1":
        need = Counter(overlap_chains(inst))
        for chain, mult in need.items():
            have = _count_occurrences(candidate, chain)
            if have < mult:
                return VerifyResult(level, False, f"chain {chain!r} needed {mult}x, found {have}x")
        return VerifyResult(level, True)

    if level == "P2":
        want = Counter(text[i : i + k] for i in inst.nonsensitive_positions)
        got = Counter(_sigma_windows(candidate, k))
        if want != got:
            diff = (want - got) + (got - want)
            pat = next(iter(diff))
            return VerifyResult(level, False, f"frequency of {pat!r}: expected {want[pat]}, got {got[pat]}")
        return VerifyResult(level, True)

    if level == "P3":
        seps = candidate.count(SEPARATOR)
        limit = (n - k + 1) // 2
        if seps > limit:
            return VerifyResult(level, False, f"{seps} separators exceed the bound {limit}")
        if seps:
            for idx, block in enumerate(candidate.split(SEPARATOR)):
                if len(block) < k:
                    return VerifyResult(level, False, f"block {idx} has length {len(block)} < k")
        return VerifyResult(level, True)

    if level == "P4":
        bound = ((n - k + 1 + 1) // 2) * k + (n - k + 1) // 2
        if not 0 <= len(candidate) <= bound:
            return VerifyResult(level, False, f"length {len(candidate)} outside 0..{bound}")
        return VerifyResult(level, True)

    raise ValueError(f"unknown verify level {level!r}; expected one of {VERIFY_LEVELS}")


def verify_levels(candidate: str, inst: SanitizationInstance, levels=VERIFY_LEVELS) -> list[VerifyResult]:
    return [verify(candidate, inst, lv) for lv in levels]


def ba_sanitize(inst: SanitizationInstance) -> str:
    """Greedy in-place baseline: rewrite one letter inside each sensitive occurrence.

    Scans left to right; in each sensitive occurrence the currently
    most-frequent letter (leftmost on ties) is replaced by the least-frequent
    alphabet letter outside the occurrence (smallest on ties) that introduces
    no sensitive pattern, falling back to '#' when no letter is safe.
    """
    if not inst.sensitive_patterns:
        return inst.text
    k = inst.k
    seq = list(inst.text)
    n = len(seq)
    freq = Counter(inst.text)
    letters = inst.alphabet.chars

    def creates_sensitive(pos: int) -> bool:
        lo = max(0, pos - k + 1)
        hi = min(n - k, pos)
        for s in range(lo, hi + 1):
            win = seq[s : s + k]
            if SEPARATOR in win:
                continue
            if "".join(win) in inst.sensitive_patterns:
                return True
        return False

    i = 0
    while i <= n - k:
        window = "".join(seq[i : i + k])
        if SEPARATOR in window or window not in inst.sensitive_patterns:
            i += 1
            continue
        in_window = set(window)
        target_off = max(range(k), key=lambda off: (freq[seq[i + off]], -off))
        target = i + target_off
        original = seq[target]
        replaced = False
        for cand in sorted((c for c in letters if c not in in_window), key=lambda c: (freq[c], c)):
            seq[target] = cand
            if not creates_sensitive(target):
                freq[original] -= 1
                freq[cand] += 1
                replaced = True
                break
            seq[target] = original
        if not replaced:
            seq[target] = SEPARATOR
            freq[original] -= 1
        # Re-examine the same start: the rewritten window must no longer be sensitive.

    return "".join(seq)


def distortion(source: str, output: str, k: int, sensitive: frozenset[str] | set[str] = frozenset()) -> float:
    """Sum of squared frequency changes over non-sensitive patterns.

    Patterns are drawn from the union of windows occurring in either string;
    sensitive patterns are excluded (their removal is the point, not noise).
    """
    want = kmer_counts(source, k)
    got = kmer_counts(output, k)
    total = 0.0
    for pat in want.keys() | got.keys():
        if pat in sensitive:
            continue
        total += (want[pat] - got[pat]) ** 2
    return total


def lost_ghost(
    source: str,
    output: str,
    k: int,
    tau: int,
    sensitive: frozenset[str] | set[str] = frozenset(),
) -> tuple[set[str], set[str]]:
    """Patterns crossing the frequency threshold tau downward / upward.

    Sensitive patterns are excluded: losing them is the mandate, not a defect.
    """
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    want = kmer_counts(source, k)
    got = kmer_counts(output, k)
    lost = set()
    ghost = set()
    for pat in want.keys() | got.keys():
        if pat in sensitive:
            continue
        before, after = want[pat], got[pat]
        if before >= tau > after:
            lost.add(pat)
        elif before < tau <= after:
            ghost.add(pat)
    return lost, ghost


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit insert, delete, and substitute."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        append = cur.append
        for j, cb in enumerate(b, start=1):
            append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def edre(source: str, heuristic_output: str, optimal_output: str) -> float:
    """Relative excess of the heuristic's edit distance over the optimum."""
    d_opt = edit_distance(source, optimal_output)
    d_heu = edit_distance(source, heuristic_output)
    if d_opt == 0:
        if d_heu == 0:
            return 0.0
        raise UndefinedWhenZero("optimal edit distance is zero but heuristic distance is not")
    return (d_heu - d_opt) / d_opt
