"""Lower-bound constructions for reverse-free codes.

Three combinators, each preserving reverse-freeness:

  * plane matchings: the permutation matrices dominated by an S-free 0/1
    matrix (e.g. a projective-plane incidence matrix) form a reverse-free
    permutation code, because a reverse between two matchings would place
    all four corners of an S inside the host matrix;
  * padding: appending the fixed tail (n'+1, ..., n) to every word of a
    reverse-free permutation code over [n'] keeps it reverse-free;
  * lifting: replacing each letter of a k-permutation by any representative
    of its residue class mod k inside [n] multiplies the code size by
    roughly (n/k)^k, again without creating reverses.

``bound_table`` reports the exponents these constructions achieve against
the generic reference curves, in log2 to avoid overflow.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product

from .bitmatrix import BinaryMatrix, S_PATTERN, contains, count_s
from .errors import PreconditionError
from .galois import factor_prime_power
from .words import Code


def largest_plane_order(n: int):
    """Largest prime power q with q^2 + q + 1 <= n, or None when n < 7."""
    if n < 7:
        return None
    q = (math.isqrt(4 * n - 3) - 1) // 2
    while q >= 2:
        if factor_prime_power(q) is not None:
            return q
        q -= 1
    return None


# -- matchings inside an S-free matrix ---------------------------------------


def _check_matching_host(matrix: BinaryMatrix):
    if matrix.rows != matrix.cols:
        raise PreconditionError(
            f"matching host must be square, got {matrix.rows}x{matrix.cols}"
        )
    for r in range(matrix.rows):
        if matrix.row_mask(r) == 0:
            raise PreconditionError(f"row {r} is empty")
    for c, mask in enumerate(matrix.col_masks()):
        if mask == 0:
            raise PreconditionError(f"column {c} is empty")
    if count_s(matrix).exact_count:
        witness = contains(matrix, S_PATTERN)
        raise PreconditionError(
            f"host matrix contains the S pattern at rows {witness[0]} "
            f"cols {witness[1]}; matchings would not be reverse-free",
            witness=witness,
        )


def plane_permutation_code(matrix: BinaryMatrix, limit: int | None = None) -> Code:
    """Enumerate permutation matrices dominated by an S-free square matrix.

    Deterministic backtracking (rows ascending, candidate columns
    ascending), so a ``limit`` yields a reproducible prefix of the full
    enumeration, whose size equals the permanent.  Output is reverse-free.
    """
    _check_matching_host(matrix)
    n = matrix.rows
    row_bits = matrix.row_masks()
    words: list[tuple] = []
    word = [0] * n

    def rec(r: int, used: int) -> bool:
        if r == n:
            words.append(tuple(word))
            return limit is not None and len(words) >= limit
        cand = row_bits[r] & ~used
        while cand:
            low = cand & -cand
            cand ^= low
            word[r] = low.bit_length() - 1
            if rec(r + 1, used | low):
                return True
        return False

    if limit is None or limit > 0:
        rec(0, 0)
    return Code(n=n, k=n, repetition_free=True, words=tuple(words))


@dataclass(frozen=True)
class SampleResult:
    """Outcome of randomized matching sampling.

    ``complete`` is False when the attempt budget ran out before reaching
    the requested count; the partial code is still returned.
    """

    code: Code
    attempts: int
    complete: bool


ATTEMPT_BUDGET_FACTOR = 100


def sample_plane_permutations(
    matrix: BinaryMatrix, count: int, seed: int = 0
) -> SampleResult:
    """Sample distinct matchings of an S-free square matrix.

    Each attempt builds one matching by augmenting-path search under a
    fresh random row order and random per-row candidate priorities, so an
    attempt fails only when the matrix has no perfect matching at all (the
    search is polynomial per attempt; plain restart-on-dead-end greedy has
    a vanishing success rate already at side 57).  Results are deduplicated
    until ``count`` distinct words are found or the budget of
    ``100 * count`` attempts is exhausted.  Deterministic for a fixed seed.
    """
    _check_matching_host(matrix)
    if count < 0:
        raise PreconditionError("count must be nonnegative")
    n = matrix.rows
    row_bits = matrix.row_masks()
    row_cols = []
    for r in range(n):
        mask = row_bits[r]
        cols = []
        while mask:
            low = mask & -mask
            cols.append(low.bit_length() - 1)
            mask ^= low
        row_cols.append(cols)
    rng = random.Random(seed)
    found: dict = {}
    budget = ATTEMPT_BUDGET_FACTOR * count
    attempts = 0
    order = list(range(n))
    priority = list(range(n))
    while len(found) < count and attempts < budget:
        attempts += 1
        rng.shuffle(order)
        rng.shuffle(priority)
        candidates = [sorted(row_cols[r], key=priority.__getitem__) for r in range(n)]
        word = _augmenting_matching(candidates, n, order)
        if word is not None:
            found.setdefault(word, None)
    code = Code(n=n, k=n, repetition_free=True, words=tuple(found))
    return SampleResult(code=code, attempts=attempts, complete=len(found) >= count)


def _augmenting_matching(candidates, n, order):
    """One perfect matching via augmenting paths (rows in the given order)."""
    col_owner = [-1] * n
    row_choice = [-1] * n

    def augment(r, visited):
        for c in candidates[r]:
            if not (visited >> c) & 1:
                visited |= 1 << c
                owner = col_owner[c]
                if owner < 0:
                    col_owner[c] = r
                    row_choice[r] = c
                    return visited, True
                visited, ok = augment(owner, visited)
                if ok:
                    col_owner[c] = r
                    row_choice[r] = c
                    return visited, True
        return visited, False

    for r in order:
        _, ok = augment(r, 0)
        if not ok:
            return None
    return tuple(row_choice)


# -- padding and lifting -------------------------------------------------------


def pad_code(code: Code, n: int) -> Code:
    """Extend every word of a permutation code by the tail (n'+1, ..., n).

    The appended tail is the same for all words, so no new reverses arise:
    the result is reverse-free iff the input was.
    """
    if not code.repetition_free or code.k != code.n:
        raise PreconditionError("padding requires a permutation code (k = n)")
    if n < code.n:
        raise PreconditionError(f"target alphabet {n} smaller than current {code.n}")
    tail = tuple(range(code.n, n))
    return Code(
        n=n,
        k=n,
        repetition_free=True,
        words=tuple(w + tail for w in code.words),
    )


def residue_classes(n: int, k: int):
    """For each residue 0..k-1, the ascending letters of [n] congruent to it."""
    return [tuple(range(rho, n, k)) for rho in range(k)]


def compress_word(word, k: int):
    """Coordinatewise mod-k image of a word (0-based letters)."""
    return tuple(c % k for c in word)


def lift_code(code: Code, n: int, limit: int | None = None) -> Code:
    """All repetition-free words over [n] whose mod-k compression lies in
    the given permutation code.

    Every position's letter is replaced by any member of its residue class
    mod k, giving prod of class sizes words per source permutation (classes
    are disjoint across positions, so words stay repetition-free).
    Enumeration order: source words in code order, replacements in
    lexicographic order; ``limit`` truncates deterministically.
    """
    if not code.repetition_free or code.k != code.n:
        raise PreconditionError("lifting requires a permutation code (k = n)")
    k = code.k
    if n < k:
        raise PreconditionError(f"target alphabet {n} smaller than word length {k}")
    classes = residue_classes(n, k)
    words: list[tuple] = []
    done = False
    for pi in code.words:
        if done:
            break
        for lifted in product(*(classes[c % k] for c in pi)):
            words.append(lifted)
            if limit is not None and len(words) >= limit:
                done = True
                break
    return Code(n=n, k=k, repetition_free=True, words=tuple(words))


def lift_size(code: Code, n: int) -> int:
    """Exact size of the full lift: |code| * prod of residue class sizes."""
    k = code.k
    per_word = 1
    for cls in residue_classes(n, k):
        per_word *= len(cls)
    return len(code.words) * per_word


# -- bound reporting ------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    """Achieved vs reference exponents for a constructed code size.

    ``exponent_achieved`` is log_n(size).  ``reference_exponent`` is
    k - (k/2) log_n(k), the generic target exponent (up to lower-order
    terms).  ``log2_lower_combinator`` is log2(floor(n/k)^k * f_kk) for a
    supplied permutation-code size f_kk.  The two upper evaluators are
    log2((10 n / sqrt(k))^k) and log2(n^k (12 e^2 / sqrt(k))^k).
    """

    n: int
    k: int
    size: int
    exponent_achieved: float
    reference_exponent: float
    log2_lower_combinator: float | None
    log2_upper_trivial: float
    log2_upper_combined: float

    CSV_HEADER = (
        "n,k,size,exponent_achieved,reference_exponent,"
        "log2_lower_combinator,log2_upper_trivial,log2_upper_combined"
    )

    def to_csv_row(self) -> str:
        combinator = "" if self.log2_lower_combinator is None else repr(self.log2_lower_combinator)
        return ",".join(
            [
                str(self.n),
                str(self.k),
                str(self.size),
                repr(self.exponent_achieved),
                repr(self.reference_exponent),
                combinator,
                repr(self.log2_upper_trivial),
                repr(self.log2_upper_combined),
            ]
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "size": self.size,
            "exponent_achieved": self.exponent_achieved,
            "reference_exponent": self.reference_exponent,
            "log2_lower_combinator": self.log2_lower_combinator,
            "log2_upper_trivial": self.log2_upper_trivial,
            "log2_upper_combined": self.log2_upper_combined,
        }


def bound_table(n: int, k: int, size: int, f_kk: int | None = None) -> BoundsReport:
    """Evaluate a constructed code size against the reference exponents."""
    if not n >= k >= 1:
        raise PreconditionError(f"need n >= k >= 1, got n={n}, k={k}")
    if size < 1:
        raise PreconditionError("constructed size must be at least 1")
    if n == 1:
        exponent = 0.0
        reference = float(k)
    else:
        log_n = math.log(n)
        exponent = math.log(size) / log_n
        reference = k - (k / 2.0) * (math.log(k) / log_n)
    combinator = None
    if f_kk is not None:
        if f_kk < 1:
            raise PreconditionError("f_kk must be at least 1")
        combinator = k * math.log2(n // k) + math.log2(f_kk)
    sqrt_k = math.sqrt(k)
    trivial = k * math.log2(10.0 * n / sqrt_k)
    combined = k * (math.log2(n) + math.log2(12.0 / sqrt_k) + 2.0 * math.log2(math.e))
    return BoundsReport(
        n=n,
        k=k,
        size=size,
        exponent_achieved=exponent,
        reference_exponent=reference,
        log2_lower_combinator=combinator,
        log2_upper_trivial=trivial,
        log2_upper_combined=combined,
    )
