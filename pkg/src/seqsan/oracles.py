"""Exhaustive reference solvers for certifying the fast algorithms on small inputs.

These share no code with the implementations they certify: feasibility is
re-derived from first principles (a string is feasible iff its separator-free
windows spell exactly the non-sensitive window sequence of the source), and
optimality comes from enumeration, not cleverness.  Budgets abort oversized
requests instead of running unbounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import SEPARATOR, SanitizationInstance
from .errors import BudgetExceeded, Infeasible
from .mcsr import MckElement, MckInstance
from .pfs import RankPair


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 10
    max_sigma: int = 2
    max_len: int = 48
    max_candidates: int = 500_000
    etfs_slack: int = 2


def _guard(inst: SanitizationInstance, budget: OracleBudget) -> None:
    if inst.n > budget.max_n:
        raise BudgetExceeded(f"n={inst.n} exceeds oracle budget {budget.max_n}")
    if inst.alphabet.size > budget.max_sigma:
        raise BudgetExceeded(f"sigma={inst.alphabet.size} exceeds oracle budget {budget.max_sigma}")


def _targets(inst: SanitizationInstance) -> list[str]:
    return [inst.text[i : i + inst.k] for i in inst.nonsensitive_positions]


def oracle_min_tfs(inst: SanitizationInstance, budget: OracleBudget = OracleBudget()) -> tuple[int, str]:
    """Minimal length of a feasible string, with the first witness found.

    Enumerates candidate strings in increasing length; within a length, the
    character order is alphabet rank first, separator last, so the witness is
    canonical.
    """
    _guard(inst, budget)
    targets = _targets(inst)
    k = inst.k
    letters = inst.alphabet.chars
    m_total = len(targets)
    upper = m_total * k + max(0, m_total - 1)  # windows joined by separators
    if upper > budget.max_len:
        raise BudgetExceeded(f"search length {upper} exceeds oracle budget {budget.max_len}")

    def extend(s: str, m: int, limit: int) -> str | None:
        if len(s) == limit:
            return s if m == m_total else None
        remaining = m_total - m
        if remaining:
            # Cheapest completion: reuse the longest separator-free suffix that
            # is a prefix of the next target window, then one letter per window.
            cut = s.rfind(SEPARATOR)
            run = s[cut + 1 :][-(k - 1) :] if k > 1 else ""
            overlap = 0
            for o in range(len(run), 0, -1):
                if run[len(run) - o :] == targets[m][:o]:
                    overlap = o
                    break
            need = (k - overlap) + remaining - 1
            if len(s) + need > limit:
                return None
        for ch in letters:
            tail = s[len(s) - k + 1 :] if k > 1 else ""
            if len(tail) == k - 1 and SEPARATOR not in tail:
                win = tail + ch
                if m < m_total and win == targets[m]:
                    found = extend(s + ch, m + 1, limit)
                    if found is not None:
                        return found
                continue  # a window would form but it is out of order or sensitive
            found = extend(s + ch, m, limit)
            if found is not None:
                return found
        found = extend(s + SEPARATOR, m, limit)
        return found

    for limit in range(upper + 1):
        witness = extend("", 0, limit)
        if witness is not None:
            return limit, witness
    raise RuntimeError("the separator-joined window sequence must be feasible")  # pragma: no cover


def oracle_min_etfs(inst: SanitizationInstance, budget: OracleBudget = OracleBudget()) -> tuple[int, str]:
    """Minimal edit distance from the source to any feasible string, with a witness."""
    _guard(inst, budget)
    targets = _targets(inst)
    text, k = inst.text, inst.k
    n = len(text)
    letters = inst.alphabet.chars
    m_total = len(targets)

    naive = SEPARATOR.join(targets)
    best = _levenshtein(text, naive)
    best_witness = naive
    cap = n + max(budget.etfs_slack, best)
    if cap > budget.max_len:
        raise BudgetExceeded(f"search length {cap} exceeds oracle budget {budget.max_len}")

    first_row = list(range(n + 1))

    def advance(row: list[int], ch: str, depth: int) -> list[int]:
        out = [depth]
        for j in range(1, n + 1):
            out.append(min(row[j] + 1, out[j - 1] + 1, row[j - 1] + (ch != text[j - 1])))
        return out

    def search(s: str, m: int, row: list[int]) -> None:
        nonlocal best, best_witness
        if min(row) >= best:
            return
        if m == m_total and row[n] < best:
            best = row[n]
            best_witness = s
        if len(s) >= cap:
            return
        depth = len(s) + 1
        for ch in letters:
            tail = s[len(s) - k + 1 :] if k > 1 else ""
            if len(tail) == k - 1 and SEPARATOR not in tail:
                win = tail + ch
                if m < m_total and win == targets[m]:
                    search(s + ch, m + 1, advance(row, ch, depth))
                continue
            search(s + ch, m, advance(row, ch, depth))
        search(s + SEPARATOR, m, advance(row, SEPARATOR, depth))

    search("", 0, first_row)
    return best, best_witness


def _levenshtein(a: str, b: str) -> int:
    # Local copy: the oracles deliberately avoid importing the metrics module.
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def oracle_mck(inst: MckInstance, budget: OracleBudget = OracleBudget()) -> tuple[float, list[MckElement]]:
    """Exhaustive product enumeration of one-element-per-class selections."""
    combos = 1
    for cls in inst.classes:
        combos *= len(cls)
        if combos > budget.max_candidates:
            raise BudgetExceeded(f"{combos}+ selections exceed oracle budget {budget.max_candidates}")
    best: tuple[float, list[MckElement]] | None = None
    for pick in itertools.product(*inst.classes):
        weight = sum(el.weight for el in pick)
        if weight > inst.capacity:
            continue
        cost = sum(el.cost for el in pick)
        if best is None or cost < best[0]:
            best = (cost, list(pick))
    if best is None:
        raise Infeasible("no selection satisfies the capacity")
    return best


def oracle_fo_ssm(
    pairs: list[RankPair],
    block_lengths: list[int],
    ell: int,
    budget: OracleBudget = OracleBudget(),
) -> int:
    """Minimal assembled length over all block permutations.

    Adjacent blocks merge (dropping ell letters and the separator) exactly when
    the left suffix rank equals the right prefix rank; other junctions cost one
    separator.
    """
    n_blocks = len(pairs)
    if n_blocks == 0:
        return 0
    combos = 1
    for i in range(2, n_blocks + 1):
        combos *= i
        if combos > budget.max_candidates:
            raise BudgetExceeded(f"{n_blocks}! permutations exceed oracle budget {budget.max_candidates}")
    base = sum(block_lengths)
    best = None
    for perm in itertools.permutations(pairs):
        length = base
        for left, right in zip(perm, perm[1:]):
            if left.suffix_rank == right.prefix_rank:
                length -= ell
            else:
                length += 1
        if best is None or length < best:
            best = length
    return best
