"""Words, codes, the reverse relation, and word/matrix bijections.

Two words w, x of the same length have a *reverse* at positions i < j when
w_i != w_j, w_i = x_j and w_j = x_i: the same two distinct letters sit on
the same two positions in swapped order.  A code is *reverse-free* when no
pair of its words has a reverse, and *full of flips* when every pair does.

Letters are 0-based internally (0..n-1) and 1-based in JSON, matching the
usual 1..n presentation at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitmatrix import BinaryMatrix
from .errors import PreconditionError

Word = tuple  # letters as a tuple of ints, 0-based


@dataclass(frozen=True)
class Code:
    """A set of distinct words sharing alphabet size n and length k.

    Words keep insertion order so witnesses and enumeration prefixes are
    reproducible.  With ``repetition_free`` set, every word must use
    pairwise-distinct letters.
    """

    n: int
    k: int
    repetition_free: bool
    words: tuple[Word, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise PreconditionError("need n >= 1 and k >= 1")
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))
        seen = set()
        for w in self.words:
            validate_word(w, self.n, self.k, self.repetition_free)
            if w in seen:
                raise PreconditionError(f"duplicate word {w}")
            seen.add(w)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def validate_word(letters, n: int, k: int | None = None, repetition_free: bool = False):
    word = tuple(letters)
    if k is not None and len(word) != k:
        raise PreconditionError(f"word {word} has length {len(word)}, expected {k}")
    if not word:
        raise PreconditionError("words must be nonempty")
    for c in word:
        if not isinstance(c, int) or not 0 <= c < n:
            raise PreconditionError(f"letter {c!r} outside alphabet of size {n}")
    if repetition_free and len(set(word)) != len(word):
        raise PreconditionError(f"word {word} repeats a letter in repetition-free mode")
    return word


# -- the reverse relation -----------------------------------------------------


def _letter_positions(word):
    """Map letter -> ascending list of positions holding it."""
    pos = {}
    for i, c in enumerate(word):
        pos.setdefault(c, []).append(i)
    return pos


def find_reverse(w, x):
    """Smallest (i, j), i < j, at which w and x have a reverse, else None.

    Expected O(k): for each position i with w_i != x_i, the candidate
    partners are the positions of x_i inside w.
    """
    if len(w) != len(x):
        raise PreconditionError(f"length mismatch: {len(w)} vs {len(x)}")
    pos_w = _letter_positions(w)
    for i, (wi, xi) in enumerate(zip(w, x)):
        if wi == xi:
            # a reverse at (i, j) would force w_i = w_j, contradiction
            continue
        for j in pos_w.get(xi, ()):
            # w_j = x_i by construction; w_i != w_j since w_i != x_i
            if j > i and x[j] == wi:
                return (i, j)
    return None


def _pair_has_reverse(w, x, pos_w):
    """Boolean reverse test given w's precomputed letter positions."""
    for i, (wi, xi) in enumerate(zip(w, x)):
        if wi == xi:
            continue
        for j in pos_w.get(xi, ()):
            if x[j] == wi:
                return True
    return False


# -- code-level verification --------------------------------------------------


def verify_reverse_free(code: Code, method: str = "pairwise"):
    """Check that no pair of words in the code has a reverse.

    ``method`` selects one of two independent algorithms that must agree:
    ``"pairwise"`` scans all word pairs with the reverse test (O(M^2 k));
    ``"signature"`` hashes every word's ordered position-pair signatures and
    looks for a swapped collision (O(M k^2)).  Returns ``(True, None)`` or
    ``(False, (a, b, i, j))`` with word indices a < b and positions i < j;
    the two methods agree on the verdict but may report different witnesses.
    """
    if method == "pairwise":
        return _reverse_free_pairwise(code)
    if method == "signature":
        return _reverse_free_signatures(code)
    raise PreconditionError(f"unknown method {method!r}")


def _reverse_free_pairwise(code: Code):
    words = code.words
    if code.repetition_free:
        # dense inverse arrays: inv[letter] = position or -1
        invs = []
        for w in words:
            inv = [-1] * code.n
            for i, c in enumerate(w):
                inv[c] = i
            invs.append(inv)
        krange = range(code.k)
        for a in range(len(words)):
            wa = words[a]
            inv_a = invs[a]
            for b in range(a + 1, len(words)):
                wb = words[b]
                for i in krange:
                    la = wa[i]
                    lb = wb[i]
                    if la == lb:
                        continue
                    j = inv_a[lb]
                    if j >= 0 and wb[j] == la:
                        return False, (a, b, *find_reverse(wa, wb))
        return True, None
    posmaps = [_letter_positions(w) for w in words]
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            if _pair_has_reverse(words[a], words[b], posmaps[a]):
                return False, (a, b, *find_reverse(words[a], words[b]))
    return True, None


def _reverse_free_signatures(code: Code):
    # signature (i, j, w_i, w_j) for i < j, w_i != w_j; a reverse between two
    # words is exactly a collision between (i, j, a, b) and (i, j, b, a).
    seen: dict = {}
    k = code.k
    for idx, w in enumerate(code.words):
        for i in range(k):
            wi = w[i]
            for j in range(i + 1, k):
                wj = w[j]
                if wi == wj:
                    continue
                other = seen.get((i, j, wj, wi))
                if other is not None:
                    return False, (other, idx, i, j)
                seen.setdefault((i, j, wi, wj), idx)
    return True, None


def verify_full_of_flips(code: Code):
    """Check that every pair of words has a reverse.

    Returns ``(True, None)`` or ``(False, (a, b))`` for the first
    reverse-free pair in code order.
    """
    words = code.words
    posmaps = [_letter_positions(w) for w in words]
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            if not _pair_has_reverse(words[a], words[b], posmaps[a]):
                return False, (a, b)
    return True, None


# -- word/matrix bijections ---------------------------------------------------


def word_to_matrix(word, n: int) -> BinaryMatrix:
    """The k x n matrix with a single 1 per row at (i, word_i)."""
    w = validate_word(word, n)
    return BinaryMatrix(len(w), n, [1 << c for c in w])


def matrix_to_word(matrix: BinaryMatrix):
    """Inverse of word_to_matrix; rejects rows without exactly one 1."""
    letters = []
    for r in range(matrix.rows):
        mask = matrix.row_mask(r)
        if mask.bit_count() != 1:
            raise PreconditionError(
                f"malformed word matrix: row {r} has {mask.bit_count()} ones"
            )
        letters.append(mask.bit_length() - 1)
    return tuple(letters)


def overall_matrix(code: Code) -> BinaryMatrix:
    """Entrywise OR of the code's word matrices: (i, c) is 1 iff some word
    has letter c at position i."""
    if not code.words:
        raise PreconditionError("overall matrix of an empty code is undefined")
    masks = [0] * code.k
    for w in code.words:
        for i, c in enumerate(w):
            masks[i] |= 1 << c
    return BinaryMatrix(code.k, code.n, masks)


# -- JSON ---------------------------------------------------------------------


def code_to_json_dict(code: Code) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "repetition_free": code.repetition_free,
        "words": [[c + 1 for c in w] for w in code.words],
    }


def code_from_json_dict(data: dict) -> Code:
    try:
        n = data["n"]
        k = data["k"]
        repetition_free = data["repetition_free"]
        words = data["words"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed code document: missing {exc}") from exc
    if not (isinstance(n, int) and isinstance(k, int) and isinstance(repetition_free, bool)):
        raise PreconditionError("code n/k must be integers and repetition_free a bool")
    converted = []
    try:
        for w in words:
            if not isinstance(w, (list, tuple)):
                raise PreconditionError(f"malformed word {w!r}")
            converted.append(tuple(int(c) - 1 for c in w))
    except PreconditionError:
        raise
    except (TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed code document: {exc}") from exc
    return Code(n=n, k=k, repetition_free=repetition_free, words=tuple(converted))
