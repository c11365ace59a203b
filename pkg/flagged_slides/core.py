"""Alphabets, words, N-vectors and compositions.

Letter : letter l(i,j) of the augmented alphabet
NVector : finitely supported vector of nonnegative counts
standardize : label repeated integers with increasing tiers
flatten : positive entries of an N-vector
word_of : the canonical word W_c of an N-vector
rs_normalize : scan an injective word into the N-vector of its slide
concat, near_concat : composition products
splittings : all (beta, gamma) with beta.gamma or beta(.)gamma = alpha
composition_subset, subset_composition : folklore correspondence
reverse, transpose : composition involutions
parse_letters, parse_nvector, parse_composition : text grammar
format_letters, format_composition : text rendering

"""

import re
from functools import total_ordering
from itertools import accumulate
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional
from typing import Sequence, Tuple
from collections import Counter
from dataclasses import dataclass
from flagged_slides.helper import ParseError, ValidationError


Composition = Tuple[int, ...]
Word = Tuple["Letter", ...]


# %%
@total_ordering
@dataclass(frozen=True)
class Letter:
    """Letter l(value, tier) of the augmented alphabet.

    Letters are ordered lexicographically by (value, tier). Against a
    plain integer k, l(i,j) sits strictly between i and i+1.

    """

    value: int
    tier: int

    def __post_init__(self):
        if self.tier < 1:
            raise ValidationError(f"Letter tier must be positive : {self}")

    def __lt__(self, other) -> bool:
        if isinstance(other, Letter):
            return (self.value, self.tier) < (other.value, other.tier)
        if isinstance(other, int):
            return self.value < other
        return NotImplemented

    def __str__(self) -> str:
        return f"l({self.value},{self.tier})"


def check_injective(word: Sequence[Letter]) -> Word:
    """Return word as a tuple, rejecting repeated letters."""
    word = tuple(word)
    if len(set(word)) != len(word):
        raise ValidationError(
            f"Expected an injective word : {format_letters(word)}"
        )
    return word


def standardize(word: Sequence[int]) -> Word:
    """Label occurrences of each integer by tiers 1, 2, ... left to right."""
    seen = Counter()
    out = []
    for val in word:
        seen[val] += 1
        out.append(Letter(val, seen[val]))
    return tuple(out)


# %%
class NVector:
    """Finitely supported integer-indexed vector of nonnegative counts.

    Immutable and hashable; zero entries are never stored.

    Parameters
    ----------
    entries : dict, optional
        {index: count}, counts >= 0

    Example
    -------
    c = NVector.from_list([0, 2, 0, 2])
    c.weight
    c.shift(-1)

    """

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Optional[Dict[int, int]] = None):
        entries = entries or {}
        for idx, cnt in entries.items():
            if cnt < 0:
                raise ValidationError(
                    f"Negative count {cnt} at index {idx} in N-vector"
                )
        self._items = tuple(
            sorted((int(i), int(n)) for i, n in entries.items() if n)
        )
        self._hash = hash(self._items)

    @classmethod
    def from_list(cls, counts: Iterable[int], start: int = 1) -> "NVector":
        """Build from consecutive counts beginning at index start."""
        return cls({start + k: n for k, n in enumerate(counts)})

    @classmethod
    def from_word(cls, word: Iterable[int]) -> "NVector":
        """Build the N-vector counting the letters of an integer word."""
        return cls(dict(Counter(word)))

    def items(self) -> Tuple[Tuple[int, int], ...]:
        """Return (index, count) pairs in increasing index order."""
        return self._items

    def __getitem__(self, idx: int) -> int:
        for i, n in self._items:
            if i == idx:
                return n
        return 0

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "NVector") -> "NVector":
        out = dict(self._items)
        for i, n in other._items:
            out[i] = out.get(i, 0) + n
        return NVector(out)

    def __sub__(self, other: "NVector") -> "NVector":
        out = dict(self._items)
        for i, n in other._items:
            out[i] = out.get(i, 0) - n
        return NVector(out)

    @property
    def support(self) -> Tuple[int, ...]:
        """Indices with positive count."""
        return tuple(i for i, _ in self._items)

    @property
    def weight(self) -> int:
        """Sum of all counts."""
        return sum(n for _, n in self._items)

    @property
    def is_positive(self) -> bool:
        """Whether the support lies in the positive integers."""
        return all(i >= 1 for i, _ in self._items)

    def shift(self, step: int) -> "NVector":
        """Move every count from index i to index i + step."""
        return NVector({i + step: n for i, n in self._items})

    def revlex_key(self) -> Tuple[Tuple[int, int], ...]:
        """Sort key: larger entry at the largest differing index wins."""
        return tuple(reversed(self._items))

    def word(self) -> Tuple[int, ...]:
        """Nonincreasing integer word with letter i repeated c_i times."""
        return tuple(
            i for i, n in reversed(self._items) for _ in range(n)
        )

    def __repr__(self) -> str:
        return f"NVector({format_nvector(self)})"

    def __str__(self) -> str:
        return format_nvector(self)


def flatten(c: NVector) -> Composition:
    """Return the positive counts of c in increasing index order."""
    return tuple(n for _, n in c)


def word_of(c: NVector) -> Word:
    """Return W_c: letters l(i,1)..l(i,c_i), blocks by decreasing i."""
    return standardize(c.word())


def rs_normalize(
    word: Sequence[Letter], backstable: bool = False
) -> Optional[NVector]:
    """Return the N-vector c with slide(word) = slide(W_c).

    Scans word left to right building a nonincreasing integer word U:
    u_1 = val(w_1); on a descent u_{k+1} = min(val(w_{k+1}), u_k - 1),
    otherwise u_{k+1} = u_k. In polynomial mode None (zero) is returned
    when some u_k <= 0.

    Parameters
    ----------
    word : sequence of Letter
        Injective word
    backstable : bool
        Whether nonpositive letters of U are allowed

    Returns
    -------
    NVector, None

    """
    word = check_injective(word)
    scan = []
    for pos, letter in enumerate(word):
        if not pos:
            scan.append(letter.value)
        elif letter < word[pos - 1]:
            scan.append(min(letter.value, scan[-1] - 1))
        else:
            scan.append(scan[-1])
    if not backstable and any(u <= 0 for u in scan):
        return None
    return NVector.from_word(scan)


# %%
def check_composition(alpha: Iterable[int]) -> Composition:
    """Return alpha as a tuple, rejecting nonpositive parts."""
    alpha = tuple(int(x) for x in alpha)
    if any(x < 1 for x in alpha):
        raise ValidationError(f"Composition parts must be positive : {alpha}")
    return alpha


def concat(alpha: Composition, beta: Composition) -> Composition:
    """Return alpha.beta."""
    return tuple(alpha) + tuple(beta)


def near_concat(alpha: Composition, beta: Composition) -> Composition:
    """Return alpha(.)beta, merging the last part of alpha with beta's first.

    An empty argument returns the other argument.

    """
    if not alpha:
        return tuple(beta)
    if not beta:
        return tuple(alpha)
    return tuple(alpha[:-1]) + (alpha[-1] + beta[0],) + tuple(beta[1:])


def splittings(alpha: Composition) -> List[Tuple[Composition, Composition]]:
    """Return every (beta, gamma) with beta.gamma = alpha or beta(.)gamma = alpha.

    Each pair is listed once: the len(alpha)+1 cuts between parts, then
    for every part of size p >= 2 the p-1 cuts inside it.

    """
    alpha = tuple(alpha)
    out = [(alpha[:k], alpha[k:]) for k in range(len(alpha) + 1)]
    for pos, part in enumerate(alpha):
        for left in range(1, part):
            out.append(
                (alpha[:pos] + (left,), (part - left,) + alpha[pos + 1:])
            )
    return out


def composition_subset(alpha: Composition, weight: int) -> FrozenSet[int]:
    """Return {alpha_1, alpha_1+alpha_2, ...} inside {1..weight-1}."""
    alpha = check_composition(alpha)
    if sum(alpha) != weight:
        raise ValidationError(
            f"Composition {format_composition(alpha)} is not of weight {weight}"
        )
    return frozenset(list(accumulate(alpha))[:-1])


def subset_composition(subset: Iterable[int], weight: int) -> Composition:
    """Return the composition of weight whose partial sums are subset."""
    cuts = sorted(set(subset))
    if cuts and (cuts[0] < 1 or cuts[-1] > weight - 1):
        raise ValidationError(
            f"Subset {cuts} is not inside 1..{weight - 1}"
        )
    if weight == 0:
        return ()
    bounds = [0] + cuts + [weight]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def reverse(alpha: Composition) -> Composition:
    """Return the parts of alpha in reverse order."""
    return tuple(reversed(alpha))


def transpose(alpha: Composition) -> Composition:
    """Return the conjugate composition.

    Its subset is the complement in {1..r-1} of {r - s : s in S(alpha)}.

    """
    weight = sum(alpha)
    mirrored = {weight - s for s in composition_subset(alpha, weight)}
    return subset_composition(
        set(range(1, weight)) - mirrored, weight
    )


# %%
_LETTER_RE = re.compile(r"l\(\s*(-?\d+)\s*,\s*(\d+)\s*\)")


def parse_letters(text: str) -> Word:
    """Parse "l(1,2) l(1,1)" into letters, or plain integers to standardize."""
    text = text.strip()
    if not text:
        return ()
    if "l(" in text:
        found = _LETTER_RE.findall(text)
        leftover = _LETTER_RE.sub("", text).replace(",", "").strip()
        if leftover or not found:
            raise ParseError(f"Unexpected letters : {text}")
        try:
            return tuple(Letter(int(i), int(j)) for i, j in found)
        except ValidationError as e:
            raise ParseError(f"Unexpected letters : {text}") from e
    return standardize(parse_integers(text))


def parse_integers(text: str) -> Tuple[int, ...]:
    """Parse a space- or comma-separated integer list."""
    tokens = [x for x in re.split(r"[\s,]+", text.strip()) if x]
    try:
        return tuple(int(x) for x in tokens)
    except ValueError as e:
        raise ParseError(f"Expected integers : {text}") from e


def parse_nvector(text: str) -> NVector:
    """Parse counts "0,2,0,2" (index 1 first) or "1,0|2" (bar before 1)."""
    left, bar, right = text.strip().partition("|")
    try:
        if bar:
            below = parse_integers(left)
            above = parse_integers(right)
            entries = {1 - len(below) + k: n for k, n in enumerate(below)}
            entries.update({1 + k: n for k, n in enumerate(above)})
        else:
            entries = {1 + k: n for k, n in enumerate(parse_integers(left))}
        return NVector(entries)
    except ValidationError as e:
        raise ParseError(f"Unexpected N-vector : {text}") from e


def parse_composition(text: str) -> Composition:
    """Parse "(2,1)", "2,1" or "()" into a composition."""
    inner = text.strip()
    if inner.startswith("(") and inner.endswith(")"):
        inner = inner[1:-1]
    try:
        return check_composition(parse_integers(inner))
    except ValidationError as e:
        raise ParseError(f"Unexpected composition : {text}") from e


def format_letters(word: Sequence[Letter]) -> str:
    """Render letters as "l(i,j) l(i,j)"."""
    return " ".join(str(x) for x in word)


def format_nvector(c: NVector) -> str:
    """Render counts from index 1, with "|" before index 1 if needed."""
    if not c:
        return "0"
    lo, hi = c.support[0], c.support[-1]
    above = ",".join(str(c[i]) for i in range(1, hi + 1))
    if lo >= 1:
        return above
    below = ",".join(str(c[i]) for i in range(lo, 1))
    return f"{below}|{above}"


def format_composition(alpha: Composition) -> str:
    """Render a composition as "(a,b,...)"."""
    return "(" + ",".join(str(x) for x in alpha) + ")"
