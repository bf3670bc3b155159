"""Replace or delete every separator under a distortion budget.

Separators reveal where sensitive material was removed, so each one is either
deleted or replaced by an alphabet letter.  Choices are costed by the spurious
patterns they could push over the mining threshold tau (worst-case additive
estimate per separator), weighted by a substitution model, and solved as a
multiple-choice knapsack: one choice per separator, minimum total cost,
total weight at most theta.  Choices that would recreate a sensitive pattern
are discarded outright, as are choices that would complete a statistically
implausible window when an implausible set is supplied.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, replace as dc_replace
from typing import Callable

from .core import SEPARATOR, SanitizationInstance, kmer_counts
from .errors import BadK, Infeasible

EPSILON = ""  # deletion pseudo-letter


@dataclass(frozen=True)
class CostModel:
    """Ghost cost per created window, substitution weight per choice, capacity, threshold.

    `sub` may return None to forbid a choice outright; safety-based forbidding
    (sensitive or implausible windows) is applied on top of it.  `theta=None`
    resolves to the separator count of the string being rewritten.
    """

    ghost: Callable[[int, str], float]
    sub: Callable[[int, str], float | None]
    theta: float | None
    tau: int


def uniform_cost_model(tau: int, theta: float | None = None) -> CostModel:
    """Unit ghost cost, unit substitution weight, capacity defaulting to the separator count."""
    return CostModel(ghost=lambda pos, pat: 1.0, sub=lambda i, choice: 1, theta=theta, tau=tau)


@dataclass(frozen=True)
class GhostCandidateSet:
    """Patterns below tau in the input that some replacement could lift to tau."""

    entries: dict[str, tuple[int, int]]  # pattern -> (freq_in, max_freq_out)
    tau: int

    def __contains__(self, pattern: str) -> bool:
        return pattern in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MckElement:
    choice: str  # alphabet letter, or "" for deletion
    cost: float
    weight: float


@dataclass(frozen=True)
class MckInstance:
    classes: tuple[tuple[MckElement, ...], ...]
    capacity: float


@dataclass(frozen=True)
class ImplausibleSet:
    """Length-k patterns whose plausibility score falls below rho."""

    patterns: frozenset[str]
    rho: float
    k: int

    def __contains__(self, pattern: str) -> bool:
        return pattern in self.patterns


@dataclass(frozen=True)
class McsrResult:
    text: str
    choices: tuple[str, ...]
    ghost_cost: float
    total_weight: float
    site_windows: tuple[tuple[int, str], ...]  # (separator index, realized window)


def separator_positions(text: str) -> list[int]:
    return [i for i, ch in enumerate(text) if ch == SEPARATOR]


def context_string(text: str, sep_index: int, letter: str, k: int) -> str:
    """The letters a replacement exposes: up to k-1 on each side of the separator.

    `sep_index` is 1-based.  Contexts truncate at the string boundaries and at
    neighbouring separators, since windows crossing another separator cannot
    contribute alphabet-only patterns.
    """
    return _context(text, separator_positions(text), sep_index, letter, k)


def _context(text: str, positions: list[int], sep_index: int, letter: str, k: int) -> str:
    pos = positions[sep_index - 1]
    left = text[max(0, pos - k + 1) : pos]
    cut = left.rfind(SEPARATOR)
    if cut != -1:
        left = left[cut + 1 :]
    right = text[pos + 1 : pos + k]
    cut = right.find(SEPARATOR)
    if cut != -1:
        right = right[:cut]
    return left + letter + right


def candidate_ghosts(text: str, k: int, tau: int, letters: str) -> GhostCandidateSet:
    """Worst-case reachable frequencies: per separator, the best single choice.

    max_freq_out(U) adds to U's current frequency, for every separator, the
    largest number of occurrences of U any one choice there would create.
    """
    base = kmer_counts(text, k)
    gains: dict[str, int] = defaultdict(int)
    positions = separator_positions(text)
    choices = list(letters) + [EPSILON]
    for i in range(1, len(positions) + 1):
        best: dict[str, int] = defaultdict(int)
        for choice in choices:
            ctx = _context(text, positions, i, choice, k)
            counts = Counter(ctx[t : t + k] for t in range(len(ctx) - k + 1))
            for win, cnt in counts.items():
                if cnt > best[win]:
                    best[win] = cnt
        for win, gain in best.items():
            gains[win] += gain
    entries = {}
    for pat in base.keys() | gains.keys():
        freq_in = base.get(pat, 0)
        top = freq_in + gains.get(pat, 0)
        if freq_in < tau <= top:
            entries[pat] = (freq_in, top)
    return GhostCandidateSet(entries=entries, tau=tau)


def build_mck(
    text: str,
    k: int,
    letters: str,
    cands: GhostCandidateSet,
    cm: CostModel,
    sensitive: frozenset[str] | set[str],
    implausible: ImplausibleSet | None = None,
    banned: set[tuple[int, str]] | None = None,
) -> MckInstance:
    """One knapsack class per separator; elements are the surviving choices."""
    if cm.theta is None:
        raise ValueError("capacity must be resolved before building the knapsack")
    positions = separator_positions(text)
    classes: list[tuple[MckElement, ...]] = []
    for i in range(1, len(positions) + 1):
        elements: list[MckElement] = []
        left_len = _left_len(text, positions[i - 1], k)
        ctx_start = positions[i - 1] - left_len
        for choice in list(letters) + [EPSILON]:
            if banned and (i, choice) in banned:
                continue
            ctx = _context(text, positions, i, choice, k)
            windows = [ctx[t : t + k] for t in range(len(ctx) - k + 1)]
            if any(w in sensitive for w in windows):
                continue
            if implausible is not None and any(w in implausible for w in windows):
                continue
            weight = cm.sub(i, choice)
            if weight is None or weight > cm.theta:
                continue
            cost = sum(cm.ghost(ctx_start + t, w) for t, w in enumerate(windows) if w in cands)
            elements.append(MckElement(choice=choice, cost=cost, weight=weight))
        if not elements:
            raise Infeasible(f"no admissible choice for separator {i}; Z cannot be constructed")
        classes.append(tuple(elements))
    return MckInstance(classes=tuple(classes), capacity=cm.theta)


def _left_len(text: str, pos: int, k: int) -> int:
    left = text[max(0, pos - k + 1) : pos]
    cut = left.rfind(SEPARATOR)
    if cut != -1:
        left = left[cut + 1 :]
    return len(left)


def solve_mck(inst: MckInstance) -> list[MckElement]:
    """Minimum-cost selection of one element per class within the capacity.

    Weights must be non-negative integers.  When the capacity cannot bind
    (every worst-case selection fits) each class is solved independently;
    otherwise an exact table over residual capacities is used.  Equal-cost
    ties rotate the preferred letter with the class index (deletion last), so
    tied choices spread instead of piling occurrences onto one pattern.
    """
    for cls in inst.classes:
        for el in cls:
            if not float(el.weight).is_integer() or el.weight < 0:
                raise ValueError(f"weights must be non-negative integers, got {el.weight}")
    theta = int(math.floor(inst.capacity)) if inst.capacity != float("inf") else None
    if inst.capacity < 0:
        raise Infeasible("negative capacity")

    def preference(cls_idx: int, size: int):
        def key(pair: tuple[int, MckElement]) -> tuple:
            j, el = pair
            return (el.cost, el.choice == EPSILON, (j - cls_idx) % size, el.choice)

        return key

    if theta is None or sum(max(int(el.weight) for el in cls) for cls in inst.classes) <= inst.capacity:
        return [
            min(enumerate(cls), key=preference(i, len(cls)))[1] for i, cls in enumerate(inst.classes)
        ]

    INF = float("inf")
    dp = [INF] * (theta + 1)
    dp[0] = 0.0
    parents: list[list[tuple[int, int] | None]] = []
    for cls_idx, cls in enumerate(inst.classes):
        key = preference(cls_idx, len(cls))
        ordered = [j for j, _el in sorted(enumerate(cls), key=key)]
        nxt = [INF] * (theta + 1)
        par: list[tuple[int, int] | None] = [None] * (theta + 1)
        for w in range(theta + 1):
            cur = dp[w]
            if cur == INF:
                continue
            for idx in ordered:
                el = cls[idx]
                w2 = w + int(el.weight)
                if w2 > theta:
                    continue
                cand = cur + el.cost
                if cand < nxt[w2]:
                    nxt[w2] = cand
                    par[w2] = (idx, w)
        dp = nxt
        parents.append(par)
    best_w = min(range(theta + 1), key=lambda w: (dp[w], w))
    if dp[best_w] == INF:
        raise Infeasible("no selection satisfies the capacity; Z cannot be constructed")
    chosen_rev: list[MckElement] = []
    w = best_w
    for cls, par in zip(reversed(inst.classes), reversed(parents)):
        idx, w = par[w]  # type: ignore[misc]
        chosen_rev.append(cls[idx])
    return list(reversed(chosen_rev))


def z_score(text: str, pattern: str) -> float:
    """Normalized over/under-representation of `pattern` in `text`.

    The expectation composes the frequencies of the two length-(|U|-1)
    sub-patterns over the frequency of their shared core; a negative score
    marks a pattern occurring less often than its parts predict.
    """
    if len(pattern) <= 2:
        raise ValueError("plausibility scores need patterns longer than 2")
    freq = _overlapping_count(text, pattern)
    mid = _overlapping_count(text, pattern[1:-1])
    if mid > 0:
        expected = _overlapping_count(text, pattern[:-1]) * _overlapping_count(text, pattern[1:]) / mid
    else:
        expected = 0.0
    return (freq - expected) / max(math.sqrt(expected), 1.0)


def _overlapping_count(text: str, pattern: str) -> int:
    if not pattern:
        return 0
    count = 0
    pos = text.find(pattern)
    while pos != -1:
        count += 1
        pos = text.find(pattern, pos + 1)
    return count


def implausible_set(text: str, k: int, rho: float) -> ImplausibleSet:
    """All length-k patterns scoring below rho against `text`.

    Only patterns whose two length-(k-1) parts both occur in `text` can score
    negatively, so enumeration composes observed parts instead of walking the
    full alphabet power.
    """
    if k <= 2:
        raise BadK(f"implausibility needs k > 2, got {k}")
    if rho >= 0:
        raise ValueError(f"rho must be negative, got {rho}")
    counts_k = kmer_counts(text, k)
    counts_km1 = kmer_counts(text, k - 1)
    counts_km2 = kmer_counts(text, k - 2)

    by_core_left: dict[str, list[str]] = defaultdict(list)  # core -> first letters
    by_core_right: dict[str, list[str]] = defaultdict(list)  # core -> last letters
    for part in counts_km1:
        by_core_left[part[1:]].append(part[0])
        by_core_right[part[:-1]].append(part[-1])

    found: set[str] = set()
    for core, firsts in by_core_left.items():
        lasts = by_core_right.get(core)
        if not lasts:
            continue
        mid = counts_km2[core]
        for a in firsts:
            left_part = a + core
            left_freq = counts_km1[left_part]
            for b in lasts:
                pattern = left_part + b
                expected = left_freq * counts_km1[core + b] / mid if mid > 0 else 0.0
                score = (counts_k.get(pattern, 0) - expected) / max(math.sqrt(expected), 1.0)
                if score < rho:
                    found.add(pattern)
    return ImplausibleSet(patterns=frozenset(found), rho=rho, k=k)


def mcsr_sanitize(
    text: str,
    inst: SanitizationInstance,
    cm: CostModel | None = None,
    implausible: ImplausibleSet | None = None,
) -> McsrResult:
    """Rewrite every separator of `text` into an alphabet letter or a deletion.

    Costing uses the per-separator contexts of the input; after committing,
    the realized windows around every junction are re-checked and, should an
    interaction between nearby sites have produced a sensitive or implausible
    window, the offending choice is banned and the knapsack re-solved.
    """
    k = inst.k
    if cm is None:
        cm = uniform_cost_model(tau=1)
    n_seps = text.count(SEPARATOR)
    if n_seps == 0:
        return McsrResult(text=text, choices=(), ghost_cost=0.0, total_weight=0.0, site_windows=())
    if cm.theta is None:
        cm = dc_replace(cm, theta=float(n_seps))

    cands = candidate_ghosts(text, k, cm.tau, inst.alphabet.chars)
    banned: set[tuple[int, str]] = set()
    parts = text.split(SEPARATOR)
    max_rounds = n_seps * (inst.alphabet.size + 1) + 1

    for _ in range(max_rounds):
        mck = build_mck(
            text, k, inst.alphabet.chars, cands, cm, inst.sensitive_patterns, implausible, banned
        )
        selection = solve_mck(mck)
        choices = [el.choice for el in selection]

        assembled: list[str] = [parts[0]]
        junctions: list[int] = []
        length = len(parts[0])
        for choice, block in zip(choices, parts[1:]):
            junctions.append(length)
            assembled.append(choice)
            length += len(choice)
            assembled.append(block)
            length += len(block)
        z = "".join(assembled)

        site_windows: list[tuple[int, str]] = []
        violation: tuple[int, str] | None = None
        for idx, (choice, pos) in enumerate(zip(choices, junctions), start=1):
            if choice == EPSILON:
                lo, hi = pos - k + 1, pos - 1
            else:
                lo, hi = pos - k + 1, pos
            lo = max(0, lo)
            hi = min(len(z) - k, hi)
            for s in range(lo, hi + 1):
                win = z[s : s + k]
                site_windows.append((idx, win))
                if win in inst.sensitive_patterns or (implausible is not None and win in implausible):
                    violation = (idx, choice)
            if violation:
                break
        if violation is None:
            return McsrResult(
                text=z,
                choices=tuple(choices),
                ghost_cost=sum(el.cost for el in selection),
                total_weight=sum(el.weight for el in selection),
                site_windows=tuple(site_windows),
            )
        banned.add(violation)

    raise Infeasible("separator rewriting failed to converge; Z cannot be constructed")
