"""Cross-validation of the three computation paths.

For a space with involution, the pinched grid compares, per smash power s
and degree t: brute-force homology of the pinched subset, the
cover-intersection sum, and the closed multi-index formula.  The loop row
assembles the loop-space Betti numbers from quotient tables per path.

Quotient tables are brute-forced directly when the ambient smash power is
small enough to materialize; otherwise they follow from exact-sequence
bookkeeping, which is certified only when in every needed degree either the
ambient homology (a smash power of the orbit table) or the pinched homology
vanishes.  Cells that cannot be computed honestly stay empty rather than
guessed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .closed_form import BettiInput, betti_pinched_formula, loop_betti
from .constructions import find_section, orbit_space, quotient, smash_power
from .homology import (
    BettiTable,
    UncertifiedRangeError,
    kunneth_power,
    reduced_betti,
)
from .pinched import (
    check_diagonal_null,
    mv_e1_betti,
    pinched_betti_brute,
    pinched_set,
    pinched_top_bound,
)
from .simplicial import FiniteSimplicialSet, Involution, PointedSubset

DEFAULT_DIRECT_BUDGET = 30000

HYPOTHESIS_NOT_SATISFIED = "hypothesis not satisfied"
NOT_COMPUTED = "not computed"


@dataclass
class GridCell:
    s: int
    t: int
    brute: Optional[int]
    mv_e1: Optional[int]
    closed: Optional[int]
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        values = [v for v in (self.brute, self.mv_e1, self.closed) if v is not None]
        return len(set(values)) <= 1


@dataclass
class LoopCell:
    n: int
    brute: Optional[int]
    mv_e1: Optional[int]
    closed: Optional[int]
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        values = [v for v in (self.brute, self.mv_e1, self.closed) if v is not None]
        return len(set(values)) <= 1


@dataclass
class RunReport:
    """Result grid of a verification run, with hypothesis flags and timings."""

    fixture: str
    truncation: int
    s_max: int
    t_max: int
    section_found: bool
    diagonal_null: bool
    cells: list[GridCell] = field(default_factory=list)
    loop_row: list[LoopCell] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return all(c.agree for c in self.cells) and all(c.agree for c in self.loop_row)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": "verify",
            "fixture": self.fixture,
            "truncation": self.truncation,
            "s_max": self.s_max,
            "t_max": self.t_max,
            "hypotheses": {
                "section_exists": self.section_found,
                "diagonal_null": self.diagonal_null,
            },
            "pinched_cells": [
                {
                    "s": c.s,
                    "t": c.t,
                    "brute": c.brute,
                    "mv_e1": c.mv_e1,
                    "closed": c.closed,
                    "agree": c.agree,
                    "notes": dict(sorted(c.notes.items())),
                }
                for c in self.cells
            ],
            "loop_row": [
                {
                    "n": c.n,
                    "brute": c.brute,
                    "mv_e1": c.mv_e1,
                    "closed": c.closed,
                    "agree": c.agree,
                    "notes": dict(sorted(c.notes.items())),
                }
                for c in self.loop_row
            ],
            "agreement": self.agreement,
            "messages": list(self.messages),
            "timings": {k: round(v, 6) for k, v in sorted(self.timings.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        rows = ["kind,s_or_n,t,brute,mv_e1,closed,agree"]

        def show(v: Optional[int]) -> str:
            return "" if v is None else str(v)

        for c in self.cells:
            rows.append(
                f"pinched,{c.s},{c.t},{show(c.brute)},{show(c.mv_e1)},"
                f"{show(c.closed)},{str(c.agree).lower()}"
            )
        for c in self.loop_row:
            rows.append(
                f"loop,{c.n},,{show(c.brute)},{show(c.mv_e1)},"
                f"{show(c.closed)},{str(c.agree).lower()}"
            )
        return "\n".join(rows) + "\n"

    def human(self) -> str:
        out = [
            f"fixture {self.fixture}: section {'found' if self.section_found else 'absent'}, "
            f"reduced diagonal of fixed set "
            f"{'homologous to zero' if self.diagonal_null else 'NOT homologous to zero'}"
        ]
        out.extend(self.messages)

        def show(v: Optional[int]) -> str:
            return "-" if v is None else str(v)

        out.append("")
        out.append("pinched grid (brute | cover sum | closed formula)")
        header = "  s\\t " + "".join(f"{t:>12}" for t in range(self.t_max + 1))
        out.append(header)
        by_s: dict[int, dict[int, GridCell]] = {}
        for c in self.cells:
            by_s.setdefault(c.s, {})[c.t] = c
        for s in sorted(by_s):
            row = f"  {s:>3} "
            for t in range(self.t_max + 1):
                c = by_s[s].get(t)
                if c is None:
                    row += f"{'':>12}"
                else:
                    mark = "" if c.agree else "!"
                    row += f"{show(c.brute)}|{show(c.mv_e1)}|{show(c.closed)}{mark}".rjust(12)
            out.append(row)
        out.append("")
        out.append("loop-space Betti numbers (brute | cover sum | closed formula)")
        for c in self.loop_row:
            mark = "" if c.agree else "  <- DISAGREE"
            out.append(
                f"  n={c.n:>2}  {show(c.brute):>5} | {show(c.mv_e1):>5} | {show(c.closed):>5}{mark}"
            )
        out.append("")
        out.append(f"agreement: {'yes' if self.agreement else 'NO'}")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Quotient-table strategies.
# ---------------------------------------------------------------------------

def try_materialize_count(space, top: int, budget: int) -> Optional[int]:
    """Total nondegenerate simplices through ``top``, or None over budget.

    Enumeration aborts as soon as the budget is exceeded, so asking about an
    explosively large smash power stays cheap."""
    total = 0
    for n in range(min(top, space.top_dim(), space.truncation) + 1):
        for _ in space.iter_nondeg(n):
            total += 1
            if total > budget:
                return None
    return total


def stunted_quotient_betti(
    q,
    fixed: PointedSubset,
    s: int,
    n_max: int,
    pinched_table: BettiTable,
    betti_q: BettiTable,
    direct_budget: int = DEFAULT_DIRECT_BUDGET,
) -> tuple[Optional[BettiTable], str]:
    """Betti table of (smash power)/(pinched subset) through n_max.

    Directly when the ambient is small enough; otherwise by exact-sequence
    bookkeeping, valid in each degree where the ambient (Kunneth power of
    the orbit table) or the pinched homology vanishes.  Returns the table
    and a note describing the route taken, or (None, reason).
    """
    if s == 1:
        ambient_table = betti_q
        entries = {n: ambient_table[n] for n in range(n_max + 1)}
        zf = q.top_dim() * s + 1
        return BettiTable(entries, certified=n_max, zero_from=zf), "quotient by the basepoint"
    trunc = min(n_max + 1, q.top_dim() * s)
    ambient = smash_power(q, s, trunc)
    count = try_materialize_count(ambient, n_max + 1, direct_budget)
    if count is not None:
        subset = pinched_set(q, fixed, s, truncation=trunc, ambient=ambient)
        quot, _ = quotient(ambient, subset)
        return reduced_betti(quot, n_max), f"direct quotient homology ({count} cells)"
    ambient_table = kunneth_power(betti_q, s)
    entries = {}
    for n in range(n_max + 1):
        if not (ambient_table.covers(n) and pinched_table.covers(n - 1)):
            return None, f"tables not certified at degree {n}"
        amb_n = ambient_table[n]
        pin_prev = pinched_table[n - 1]
        # b_n(quot) = amb_n - rank_n + pin_prev - rank_{n-1}; an inclusion
        # rank is certifiably zero when either side of the map vanishes
        if amb_n and not (pinched_table.covers(n) and pinched_table[n] == 0):
            return None, (
                f"cannot certify the inclusion rank at degree {n}: ambient and "
                "pinched homology may both be nonzero"
            )
        if pin_prev and not (ambient_table.covers(n - 1) and ambient_table[n - 1] == 0):
            return None, (
                f"cannot certify the inclusion rank at degree {n - 1}: ambient "
                "and pinched homology may both be nonzero"
            )
        entries[n] = amb_n + pin_prev
    zf = q.top_dim() * s + 1
    return (
        BettiTable(entries, certified=n_max, zero_from=zf if n_max + 1 >= zf else None),
        "exact-sequence bookkeeping (ambient too large to materialize)",
    )


def loop_tables_for_path(
    q,
    fixed: PointedSubset,
    n_max: int,
    pinched_source: Callable[[int], Optional[BettiTable]],
    betti_q: BettiTable,
    direct_budget: int = DEFAULT_DIRECT_BUDGET,
) -> tuple[dict[int, BettiTable], dict[int, str]]:
    """Quotient tables for s = 1..n_max from a per-s pinched-table source."""
    tables: dict[int, BettiTable] = {}
    notes: dict[int, str] = {}
    for s in range(1, n_max + 1):
        pinched_table = pinched_source(s)
        if pinched_table is None:
            notes[s] = NOT_COMPUTED
            continue
        table, note = stunted_quotient_betti(
            q, fixed, s, n_max, pinched_table, betti_q, direct_budget
        )
        notes[s] = note
        if table is not None:
            tables[s] = table
    return tables, notes


# ---------------------------------------------------------------------------
# The run.
# ---------------------------------------------------------------------------

def run_verify(
    space: FiniteSimplicialSet,
    invol: Involution,
    s_max: int,
    t_max: int,
    fixture: str = "",
    loop_max: Optional[int] = None,
    brute_loop_max: Optional[int] = None,
    direct_budget: int = DEFAULT_DIRECT_BUDGET,
) -> RunReport:
    """Fill the three-path grid and loop row for a space with involution."""
    t_start = time.perf_counter()
    orbit, _, fixed = orbit_space(space, invol)
    loop_max = t_max if loop_max is None else loop_max
    brute_loop_max = loop_max if brute_loop_max is None else brute_loop_max

    section = find_section(space, invol)
    diagonal_null = check_diagonal_null(fixed)
    report = RunReport(
        fixture=fixture,
        truncation=space.truncation,
        s_max=s_max,
        t_max=t_max,
        section_found=section is not None,
        diagonal_null=diagonal_null,
    )
    if section is None:
        report.messages.append(
            "no simplicial section of the orbit projection exists (exhaustive "
            "search); the loop-space decomposition does not apply, so loop "
            "rows carry brute-force columns only where defined"
        )
    if not diagonal_null:
        report.messages.append(
            "the reduced diagonal of the fixed set is not homologous to zero; "
            "cover-sum and closed-formula columns are disabled"
        )

    top_needed = max(t_max, loop_max)
    betti_q = reduced_betti(orbit, max(top_needed, orbit.top_dim()))
    betti_a = reduced_betti(fixed, max(top_needed, fixed.top_dim()))
    inp = BettiInput(betti_q, betti_a)

    brute_tables: dict[int, BettiTable] = {}

    def brute_table(s: int, needed: int) -> Optional[BettiTable]:
        cached = brute_tables.get(s)
        if cached is not None and cached.certified >= needed:
            return cached
        table = pinched_betti_brute(orbit, fixed, s, needed)
        brute_tables[s] = table
        return table

    # --- pinched grid ---
    t0 = time.perf_counter()
    for s in range(2, s_max + 1):
        table = brute_table(s, t_max)
        for t in range(t_max + 1):
            brute = table[t] if table is not None and table.covers(t) else None
            mv: Optional[int] = None
            closed: Optional[int] = None
            notes: dict[str, str] = {}
            if table is None:
                notes["brute"] = NOT_COMPUTED
            if diagonal_null:
                mv = mv_e1_betti(orbit, fixed, s, t, betti_q, betti_a)
                closed = betti_pinched_formula(inp, s, t)
            else:
                notes["mv_e1"] = HYPOTHESIS_NOT_SATISFIED
                notes["closed"] = HYPOTHESIS_NOT_SATISFIED
            report.cells.append(GridCell(s, t, brute, mv, closed, notes))
    report.timings["pinched_grid"] = time.perf_counter() - t0

    # --- loop row ---
    t0 = time.perf_counter()
    if section is not None:
        def brute_source(s: int) -> Optional[BettiTable]:
            return brute_table(s, max(loop_max - 1, 0)) if s <= brute_loop_max else None

        def mv_source(s: int) -> Optional[BettiTable]:
            if not diagonal_null:
                return None
            if s == 1:
                return BettiTable({}, certified=loop_max, zero_from=0)
            bound = pinched_top_bound(orbit, fixed, s)
            entries = {
                t: mv_e1_betti(orbit, fixed, s, t, betti_q, betti_a)
                for t in range(min(loop_max - 1, bound) + 1)
            }
            return BettiTable(entries, certified=max(loop_max - 1, 0), zero_from=bound + 1)

        def closed_source(s: int) -> Optional[BettiTable]:
            if not diagonal_null:
                return None
            if s == 1:
                return BettiTable({}, certified=loop_max, zero_from=0)
            bound = pinched_top_bound(orbit, fixed, s)
            entries = {
                t: betti_pinched_formula(inp, s, t)
                for t in range(min(loop_max - 1, bound) + 1)
            }
            return BettiTable(entries, certified=max(loop_max - 1, 0), zero_from=bound + 1)

        sources = {
            "brute": brute_source,
            "mv_e1": mv_source,
            "closed": closed_source,
        }
        per_path_tables: dict[str, dict[int, BettiTable]] = {}
        per_path_notes: dict[str, dict[int, str]] = {}
        for name, source in sources.items():
            tables, notes = loop_tables_for_path(
                orbit, fixed, loop_max, source, betti_q, direct_budget
            )
            per_path_tables[name] = tables
            per_path_notes[name] = notes

        for n in range(1, loop_max + 1):
            values: dict[str, Optional[int]] = {}
            notes: dict[str, str] = {}
            for name in sources:
                tables = per_path_tables[name]
                try:
                    values[name] = loop_betti(tables, n)
                except (UncertifiedRangeError, KeyError):
                    values[name] = None
                    missing = [
                        f"s={s}: {per_path_notes[name].get(s, NOT_COMPUTED)}"
                        for s in range(1, n + 1)
                        if s not in tables
                    ]
                    notes[name] = "; ".join(missing) if missing else NOT_COMPUTED
            report.loop_row.append(
                LoopCell(n, values["brute"], values["mv_e1"], values["closed"], notes)
            )
    report.timings["loop_row"] = time.perf_counter() - t0
    report.timings["total"] = time.perf_counter() - t_start
    return report
