"""Nonincreasing words, their lattice and the signed slide expansion of
monomials.

check_word : validate a nonincreasing word
leq_m : the order on words of equal length
join, meet : lattice operations
interval : all words between two comparable words
BSubsetCertificate : a unit-drop perturbation of C with its marks
b_set : all unit-drop perturbations of C
mobius, mobius_recursive : Mobius function, closed form and recursion
monomials_below : sum of x(D) over D <=_m C above a floor
monomial_to_backslides, monomial_to_slides : signed expansions of x(C)

"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby, product
from typing import FrozenSet, Iterator, List, Sequence, Tuple
from more_itertools import powerset
from flagged_slides.core import NVector
from flagged_slides.helper import ValidationError
from flagged_slides.poly import Polynomial, monomial
from flagged_slides.slide import SlideExpansion
from flagged_slides.backstable import BackSlideExpansion

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


def check_word(C: Sequence[int]) -> Word:
    """Return C as a tuple, rejecting words that increase somewhere."""
    C = tuple(int(x) for x in C)
    if any(a < b for a, b in zip(C, C[1:])):
        raise ValidationError(f"Expected a nonincreasing word : {C}")
    return C


def _check_pair(C: Sequence[int], D: Sequence[int]) -> Tuple[Word, Word]:
    C, D = check_word(C), check_word(D)
    if len(C) != len(D):
        raise ValidationError(f"Word lengths differ : {C}, {D}")
    return C, D


def blocks(C: Word) -> List[Tuple[int, int]]:
    """Return the block form [(M_1, m_1), ..., (M_t, m_t)] of C."""
    return [(val, len(list(grp))) for val, grp in groupby(C)]


def format_word(C: Sequence[int]) -> str:
    """Render a word as space-separated letters."""
    return " ".join(str(x) for x in C)


def words_in_box(ranges: Sequence[range]) -> Iterator[Word]:
    """Yield the nonincreasing words with letter k drawn from ranges[k]."""
    for E in product(*ranges):
        if all(a >= b for a, b in zip(E, E[1:])):
            yield E


# %%
def leq_m(D: Sequence[int], C: Sequence[int]) -> bool:
    """Whether D <=_m C.

    D_i <= C_i everywhere, and D_i > D_{i+1} wherever C_i > C_{i+1}.

    """
    C, D = _check_pair(C, D)
    if any(d > c for d, c in zip(D, C)):
        return False
    return all(
        D[k] > D[k + 1] for k in range(len(C) - 1) if C[k] > C[k + 1]
    )


def join(C: Sequence[int], D: Sequence[int]) -> Word:
    """Return the least upper bound of C and D.

    Starts from the componentwise max E'. Positions where both words
    descend are kept as breaks; every other position copies the value
    of E' at the last break before it.

    """
    C, D = _check_pair(C, D)
    if not C:
        return ()
    top = [max(c, d) for c, d in zip(C, D)]
    out = []
    for k in range(len(C)):
        if not k or (C[k - 1] > C[k] and D[k - 1] > D[k]):
            anchor = top[k]
        out.append(anchor)
    return tuple(out)


def floor_word(C: Sequence[int], D: Sequence[int]) -> Word:
    """Return k(k-1)...(k-m+1), k the smallest letter of C and D."""
    C, D = _check_pair(C, D)
    if not C:
        return ()
    low = min(C + D)
    return tuple(low - k for k in range(len(C)))


def meet(C: Sequence[int], D: Sequence[int]) -> Word:
    """Return the greatest lower bound of C and D.

    The join of every common lower bound lying above floor_word(C, D).

    """
    C, D = _check_pair(C, D)
    return _meet(*sorted((C, D)))


@lru_cache(maxsize=None)
def _meet(C: Word, D: Word) -> Word:
    base = floor_word(C, D)
    ranges = [range(b, min(c, d) + 1) for b, c, d in zip(base, C, D)]
    lower = [
        E
        for E in words_in_box(ranges)
        if leq_m(base, E) and leq_m(E, C) and leq_m(E, D)
    ]
    out = base
    for E in lower:
        out = join(out, E)
    return out


def interval(D: Sequence[int], C: Sequence[int]) -> List[Word]:
    """Return every E with D <=_m E <=_m C, sum descending."""
    C, D = _check_pair(C, D)
    if not leq_m(D, C):
        raise ValidationError(f"Incomparable words : {D}, {C}")
    found = [
        E
        for E in words_in_box([range(d, c + 1) for d, c in zip(D, C)])
        if leq_m(D, E) and leq_m(E, C)
    ]
    return sorted(found, key=lambda E: (-sum(E), [-x for x in E]))


# %%
@dataclass(frozen=True)
class BSubsetCertificate:
    """Element D of B_C with its mark set S_C(D).

    Marks are positions j, 0-based within the block and offset by the
    lengths of the preceding blocks, where the chain of the block drops
    by one.

    """

    word: Word
    marks: FrozenSet[int]

    @property
    def sign(self) -> int:
        """(-1)^|S_C(D)|."""
        return -1 if len(self.marks) % 2 else 1

    def rebuild(self, C: Sequence[int]) -> Word:
        """Return the word obtained from C by applying the marks."""
        C = check_word(C)
        out = []
        offset = 0
        for val, size in blocks(C):
            cur = val
            for j in range(size):
                if offset + j in self.marks:
                    cur -= 1
                out.append(cur)
            offset += size
        return tuple(out)


def b_set(C: Sequence[int]) -> List[BSubsetCertificate]:
    """Return B_C, ordered by number of marks then marks.

    Within each block M^m, a chain starts at M and keeps or drops by one
    at each of its m steps; it must end above the next block value. The
    last block has no floor.

    """
    C = check_word(C)
    parts = blocks(C)
    per_block = []
    offset = 0
    for pos, (val, size) in enumerate(parts):
        floor = parts[pos + 1][0] if pos + 1 < len(parts) else None
        options = []
        for drops in powerset(range(size)):
            chain = []
            cur = val
            for j in range(size):
                if j in drops:
                    cur -= 1
                chain.append(cur)
            if floor is None or chain[-1] > floor:
                options.append(
                    (tuple(chain), frozenset(offset + j for j in drops))
                )
        per_block.append(options)
        offset += size
    out = []
    for combo in product(*per_block):
        word = tuple(x for chain, _ in combo for x in chain)
        marks = frozenset().union(*(m for _, m in combo))
        out.append(BSubsetCertificate(word, marks))
    out.sort(key=lambda x: (len(x.marks), sorted(x.marks)))
    logger.debug("B_%s has %d elements", format_word(C), len(out))
    return out


def mobius(D: Sequence[int], C: Sequence[int]) -> int:
    """Return mu(D, C): the sign of D when D is in B_C, else 0."""
    C, D = _check_pair(C, D)
    if not leq_m(D, C):
        raise ValidationError(f"Incomparable words : {D}, {C}")
    for cert in b_set(C):
        if cert.word == D:
            return cert.sign
    return 0


def mobius_recursive(D: Sequence[int], C: Sequence[int]) -> int:
    """Return mu(D, C) from sum_{D <= E <= C} mu(E, C) = 0, D < C."""
    C, D = _check_pair(C, D)
    elements = interval(D, C)
    mu = {}
    for E in elements:
        if E == C:
            mu[E] = 1
            continue
        mu[E] = -sum(
            val for F, val in mu.items() if F != E and leq_m(E, F)
        )
    return mu[D]


# %%
def monomials_below(C: Sequence[int], floor: int) -> Polynomial:
    """Return the sum of x(D) over D <=_m C with every letter >= floor."""
    C = check_word(C)
    out = Polynomial()
    for D in words_in_box([range(floor, c + 1) for c in C]):
        if leq_m(D, C):
            out = out + monomial(D)
    return out


def monomial_to_backslides(C: Sequence[int]) -> BackSlideExpansion:
    """Return x(C) as a signed sum of back-stable slides over B_C."""
    out = {}
    for cert in b_set(C):
        key = NVector.from_word(cert.word)
        out[key] = out.get(key, 0) + cert.sign
    return BackSlideExpansion(out)


def monomial_to_slides(C: Sequence[int]) -> SlideExpansion:
    """Return x(C) as a signed sum of slides over positive D in B_C."""
    C = check_word(C)
    if any(x < 1 for x in C):
        raise ValidationError(f"Expected positive letters : {C}")
    out = {}
    for cert in b_set(C):
        if all(x >= 1 for x in cert.word):
            key = NVector.from_word(cert.word)
            out[key] = out.get(key, 0) + cert.sign
    return SlideExpansion(out)
