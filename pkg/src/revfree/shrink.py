"""Executable shrinking procedure for reverse-free codes.

State revolves around the code's overall matrix (the OR of its word
matrices) and three derived quantities: its weight, its density
``weight / (n sqrt(k))``, and its emptiness (rows with at most one 1).

A 1-entry of the overall matrix is *light* when at most |U|/n words support
it; an *avoided pair* is two 1-entries in distinct rows and distinct
columns that no single word realizes together.  A light step drops the
words supporting the smallest light entry; a heavy step keeps exactly the
words supporting the entry lying in the most avoided pairs.  Each step's
guaranteed effects are asserted at runtime and recorded in a trace, along
with phase boundaries (a new phase starts when the density halves).

Guarantees checked per step:

  light:  |U'| >= (1 - 1/n)|U|,  weight' <= weight - 1,  emptiness' >= emptiness
  heavy:  every avoided partner of the chosen entry vanishes; the chosen
          row becomes a single-1 row; |U'| >= |U|/n when no light entry
          existed; emptiness' >= emptiness + 1 when the entry lay inside an
          S occurrence.

The heavy-step load guarantee -- the chosen entry lies in at least
2 n m^3 / (5 sqrt(k)) avoided pairs -- holds under stronger premises
(density >= 5, no light entry, and an exact S count of at least
n^2 m^4 / 5); it is asserted when they hold and recorded as premise-not-met
otherwise, never silently skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bitmatrix import BinaryMatrix, count_s
from .errors import InvariantError, PreconditionError
from .words import Code, overall_matrix, verify_reverse_free

DEFAULT_DENSITY_THRESHOLD = 10.0


class ShrinkState:
    """A reverse-free code plus cached overall-matrix statistics."""

    __slots__ = ("code", "overall", "weight", "density_m", "emptiness_z", "_support")

    def __init__(self, code, overall, weight, density_m, emptiness_z, support):
        self.code = code
        self.overall = overall
        self.weight = weight
        self.density_m = density_m
        self.emptiness_z = emptiness_z
        self._support = support

    @classmethod
    def from_code(cls, code: Code) -> "ShrinkState":
        if code.words:
            overall = overall_matrix(code)
        else:
            overall = BinaryMatrix.zeros(code.k, code.n)
        weight = overall.weight()
        density = weight / (code.n * math.sqrt(code.k))
        emptiness = sum(
            1 for r in range(code.k) if overall.row_weight(r) <= 1
        )
        support: dict = {}
        for idx, w in enumerate(code.words):
            for i, c in enumerate(w):
                support[(i, c)] = support.get((i, c), 0) | (1 << idx)
        return cls(code, overall, weight, density, emptiness, support)

    @property
    def size(self) -> int:
        return len(self.code.words)

    def support_mask(self, entry) -> int:
        return self._support.get(entry, 0)

    def support_count(self, entry) -> int:
        return self._support.get(entry, 0).bit_count()


def light_entries(state: ShrinkState):
    """Overall 1-entries supported by at most |U|/n words, sorted."""
    if not state.code.words:
        raise PreconditionError("light entries of an empty code are undefined")
    n = state.code.n
    size = state.size
    return sorted(
        entry for entry, mask in state._support.items() if mask.bit_count() * n <= size
    )


def avoided_pairs(state: ShrinkState):
    """Pairs of overall 1-entries, distinct rows and columns, that never
    co-occur inside a single word; sorted, each pair ordered ascending."""
    if not state.code.words:
        raise PreconditionError("avoided pairs of an empty code are undefined")
    entries = sorted(state._support)
    support = state._support
    out = []
    for a in range(len(entries)):
        r1, c1 = entries[a]
        mask1 = support[entries[a]]
        for b in range(a + 1, len(entries)):
            r2, c2 = entries[b]
            if r1 == r2 or c1 == c2:
                continue
            if mask1 & support[entries[b]] == 0:
                out.append((entries[a], entries[b]))
    return out


# -- steps ----------------------------------------------------------------------


def light_step(state: ShrinkState) -> ShrinkState:
    """Remove all words supporting the smallest light entry."""
    return _apply_light(state, light_entries(state))[0]


def heavy_step(state: ShrinkState) -> ShrinkState:
    """Keep exactly the words supporting the most-loaded avoided entry."""
    pairs = avoided_pairs(state)
    had_light = bool(light_entries(state))
    return _apply_heavy(state, pairs, had_light)[0]


def _restrict(code: Code, keep_mask: int) -> Code:
    kept = tuple(
        w for idx, w in enumerate(code.words) if (keep_mask >> idx) & 1
    )
    return Code(n=code.n, k=code.k, repetition_free=code.repetition_free, words=kept)


def _apply_light(state: ShrinkState, lights):
    if not lights:
        raise PreconditionError("no light entry")
    entry = lights[0]
    n = state.code.n
    all_words = (1 << state.size) - 1
    new_state = ShrinkState.from_code(
        _restrict(state.code, all_words & ~state.support_mask(entry))
    )
    if new_state.size * n < (n - 1) * state.size:
        raise InvariantError(
            f"light step kept {new_state.size} of {state.size} words, below (1-1/n)"
        )
    if new_state.weight > state.weight - 1:
        raise InvariantError("light step failed to reduce the overall weight")
    if new_state.emptiness_z < state.emptiness_z:
        raise InvariantError("light step decreased emptiness")
    return new_state, entry


def _entry_in_s_occurrence(state: ShrinkState, entry) -> bool:
    r, c = entry
    row_masks = state.overall.row_masks()
    own = row_masks[r] & ~(1 << c)
    for r2, other in enumerate(row_masks):
        if r2 != r and (other >> c) & 1 and own & other & ~(1 << c):
            return True
    return False


def _apply_heavy(state: ShrinkState, pairs, had_light):
    if not pairs:
        raise PreconditionError("no heavy candidate: no avoided pair exists")
    counts: dict = {}
    for e1, e2 in pairs:
        counts[e1] = counts.get(e1, 0) + 1
        counts[e2] = counts.get(e2, 0) + 1
    best_count = max(counts.values())
    entry = min(e for e, cnt in counts.items() if cnt == best_count)

    n = state.code.n
    k = state.code.k
    m = state.density_m
    premise_ok = False
    if not had_light and m >= 5.0:
        s_exact = count_s(state.overall).exact_count
        if s_exact >= n * n * m ** 4 / 5.0:
            premise_ok = True
            required = 2.0 * n * m ** 3 / (5.0 * math.sqrt(k))
            if best_count < required:
                raise InvariantError(
                    f"loaded entry covers {best_count} avoided pairs, "
                    f"below the guaranteed {required:.3f}"
                )

    in_s = _entry_in_s_occurrence(state, entry)
    partners = [
        e2 if e1 == entry else e1 for e1, e2 in pairs if entry in (e1, e2)
    ]
    new_state = ShrinkState.from_code(
        _restrict(state.code, state.support_mask(entry))
    )
    for r2, c2 in partners:
        if new_state.overall.get(r2, c2):
            raise InvariantError(f"avoided partner {(r2, c2)} survived the heavy step")
    if new_state.overall.row_weight(entry[0]) != 1:
        raise InvariantError("heavy step left more than one 1 in the chosen row")
    if new_state.weight >= state.weight:
        raise InvariantError("heavy step failed to reduce the overall weight")
    if not had_light and new_state.size * n < state.size:
        raise InvariantError(
            f"heavy step kept {new_state.size} of {state.size} words, below 1/n"
        )
    if in_s and new_state.emptiness_z < state.emptiness_z + 1:
        raise InvariantError("heavy step on an S entry failed to raise emptiness")
    return new_state, entry, best_count, premise_ok


# -- the full procedure ----------------------------------------------------------


@dataclass(frozen=True)
class ShrinkStep:
    kind: str  # "light" | "heavy"
    entry: tuple
    size_before: int
    size_after: int
    weight_before: int
    weight_after: int
    density_before: float
    emptiness_before: int
    emptiness_after: int
    phase: int
    premise_ok: bool
    avoided_count: int | None = None


@dataclass(frozen=True)
class ShrinkTrace:
    """Full record of a shrink run plus the terminal size bounds (log2)."""

    n: int
    k: int
    initial_size: int
    final_size: int
    steps: tuple
    phase_starts: tuple
    heavy_count: int
    final_weight: int
    final_density: float
    log2_size_bound_trivial: float | None
    log2_size_bound_combined: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "initial_size": self.initial_size,
            "final_size": self.final_size,
            "steps": [
                {
                    "kind": s.kind,
                    "entry": [s.entry[0] + 1, s.entry[1] + 1],
                    "size_before": s.size_before,
                    "size_after": s.size_after,
                    "weight_before": s.weight_before,
                    "weight_after": s.weight_after,
                    "density": s.density_before,
                    "emptiness": s.emptiness_after,
                    "phase": s.phase,
                    "premise_ok": s.premise_ok,
                    "avoided_count": s.avoided_count,
                }
                for s in self.steps
            ],
            "phase_starts": list(self.phase_starts),
            "heavy_count": self.heavy_count,
            "final_weight": self.final_weight,
            "final_density": self.final_density,
            "log2_size_bound_trivial": self.log2_size_bound_trivial,
            "log2_size_bound_combined": self.log2_size_bound_combined,
        }


def run_shrink(
    code: Code, density_threshold: float = DEFAULT_DENSITY_THRESHOLD
) -> ShrinkTrace:
    """Run the shrinking procedure until the density drops below the
    threshold or no step applies.

    Light steps take strict precedence over heavy steps.  The input must be
    reverse-free; every executed step's guarantees are asserted.  When the
    loop ends with neither a light entry nor an avoided pair, the overall
    matrix is necessarily S-free.
    """
    ok, witness = verify_reverse_free(code, method="signature")
    if not ok:
        raise PreconditionError(
            f"input code is not reverse-free: words {witness[0]} and {witness[1]} "
            f"reverse at positions ({witness[2] + 1}, {witness[3] + 1})",
            witness=witness,
        )
    state = ShrinkState.from_code(code)
    steps: list[ShrinkStep] = []
    phase_starts: list[int] = []
    phase = 0
    anchor = None
    heavy_count = 0
    while state.size > 0:
        m = state.density_m
        if m < density_threshold:
            break
        lights = light_entries(state)
        pairs = None
        if not lights:
            pairs = avoided_pairs(state)
            if not pairs:
                break
        index = len(steps) + 1
        if anchor is None or m <= anchor / 2.0:
            phase += 1
            anchor = m
            phase_starts.append(index)
        before = state
        if lights:
            state, entry = _apply_light(before, lights)
            kind = "light"
            premise_ok = True
            avoided_count = None
        else:
            state, entry, avoided_count, premise_ok = _apply_heavy(
                before, pairs, had_light=False
            )
            kind = "heavy"
            heavy_count += 1
        steps.append(
            ShrinkStep(
                kind=kind,
                entry=entry,
                size_before=before.size,
                size_after=state.size,
                weight_before=before.weight,
                weight_after=state.weight,
                density_before=before.density_m,
                emptiness_before=before.emptiness_z,
                emptiness_after=state.emptiness_z,
                phase=phase,
                premise_ok=premise_ok,
                avoided_count=avoided_count,
            )
        )
    n, k = code.n, code.k
    final_density = state.density_m
    bound_m = density_threshold if final_density < density_threshold else final_density
    if bound_m > 0:
        trivial = k * math.log2(bound_m * n / math.sqrt(k))
    else:
        trivial = None
    t = heavy_count
    combined = (
        (k - t) * math.log2(n)
        + k * math.log2(12.0 / math.sqrt(k))
        + 2.0 * k * math.log2(math.e)
        + t * math.log2(n)
    )
    return ShrinkTrace(
        n=n,
        k=k,
        initial_size=len(code.words),
        final_size=state.size,
        steps=tuple(steps),
        phase_starts=tuple(phase_starts),
        heavy_count=heavy_count,
        final_weight=state.weight,
        final_density=final_density,
        log2_size_bound_trivial=trivial,
        log2_size_bound_combined=combined,
    )
