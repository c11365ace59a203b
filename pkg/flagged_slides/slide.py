"""Slide polynomials and the slide basis.

SlideExpansion : integer combination of slide polynomials
slide_series : slide(W) of an injective word
slide_polynomial : slide polynomial of an N-vector
expand_in_slide_basis : triangular change of basis from monomials
slide_from_monomials : slide(C) as the sum of x(D) over D <=_m C

"""

import logging
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, Optional, Sequence, Tuple
from flagged_slides.core import Letter, NVector, check_injective, word_of
from flagged_slides.core import format_nvector
from flagged_slides.helper import ValidationError
from flagged_slides import poly

logger = logging.getLogger(__name__)


# %%
class SlideExpansion:
    """Finite integer combination of slide polynomials.

    Subclasses change the basis by overriding symbol, basis_element and
    check_key.

    Parameters
    ----------
    terms : dict, optional
        {NVector: int}

    """

    symbol = "F"

    def __init__(self, terms: Optional[Dict[NVector, int]] = None):
        terms = {c: k for c, k in (terms or {}).items() if k}
        for c in terms:
            self.check_key(c)
        self._terms = terms

    @staticmethod
    def check_key(c: NVector):
        """Reject indices outside the basis."""
        if not c.is_positive:
            raise ValidationError(f"Slide index must be positive : {c}")

    @staticmethod
    def basis_element(c: NVector) -> poly.Polynomial:
        """Return the basis polynomial indexed by c."""
        return slide_polynomial(c)

    def terms(self) -> Dict[NVector, int]:
        """Return a copy of the {index: coefficient} mapping."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[NVector, int]]:
        """Iterate terms with keys revlex descending."""
        for c in sorted(self._terms, key=NVector.revlex_key, reverse=True):
            yield c, self._terms[c]

    def coefficient(self, c: NVector) -> int:
        """Return the coefficient of the basis element indexed by c."""
        return self._terms.get(c, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other):
        out = dict(self._terms)
        for c, k in other._terms.items():
            out[c] = out.get(c, 0) + k
        return type(self)(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor: int):
        """Return factor * self."""
        return type(self)({c: factor * k for c, k in self._terms.items()})

    def synthesize(self):
        """Return the sum of coefficient times basis element."""
        out = None
        for c, k in self.items():
            part = self.basis_element(c).scale(k)
            out = part if out is None else out + part
        return out if out is not None else self.basis_element(NVector()).scale(0)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self)} terms)"

    def __str__(self) -> str:
        return format_expansion(self)


def format_expansion(expansion: SlideExpansion) -> str:
    """Render one "+k F(c)" line per term, or "0"."""
    if not expansion:
        return "0"
    return "\n".join(
        f"{'-' if k < 0 else '+'}{abs(k)} "
        + f"{expansion.symbol}({format_nvector(c)})"
        for c, k in expansion.items()
    )


# %%
def slide_series(word: Sequence[Letter]) -> poly.Polynomial:
    """Return slide(W).

    Sums x_{i_1}...x_{i_r} over i_1 >= ... >= i_r >= 1 with
    i_j <= val(a_j), strictly decreasing where a_j > a_{j+1}.

    """
    word = check_injective(word)
    size = len(word)

    @lru_cache(maxsize=None)
    def _tail(pos: int, upper: int) -> poly.Polynomial:
        if pos == size:
            return poly.Polynomial.one()
        drop = int(pos + 1 < size and word[pos] > word[pos + 1])
        out = poly.Polynomial()
        for idx in range(1, min(upper, word[pos].value) + 1):
            rest = _tail(pos + 1, idx - drop)
            if rest:
                out = out + rest * poly.Polynomial.variable(idx)
        return out

    if not size:
        return poly.Polynomial.one()
    return _tail(0, word[0].value)


def slide_polynomial(c: NVector) -> poly.Polynomial:
    """Return the slide polynomial slide(W_c) for positive c."""
    if not c.is_positive:
        raise ValidationError(f"Slide polynomial needs positive support : {c}")
    return slide_series(word_of(c))


def expand_in_slide_basis(p: poly.Polynomial) -> SlideExpansion:
    """Return the unique slide expansion of p.

    Each homogeneous component is reduced by repeatedly subtracting
    the slide polynomial of its revlex leading exponent.

    """
    if any(i < 1 for i in p.variables):
        raise ValidationError(
            f"Slide expansion needs variables x(i), i >= 1 : {p}"
        )
    return SlideExpansion(triangular_reduce(p, slide_polynomial))


def triangular_reduce(p: poly.Polynomial, basis) -> Dict[NVector, int]:
    """Return {index: coefficient} of p in a unitriangular basis.

    basis maps an exponent c to a polynomial with revlex leading
    term x^c and coefficient 1.

    """
    out = {}
    for degree, part in p.by_degree().items():
        rounds = 0
        while part:
            lead = poly.revlex_leading(part)
            coeff = part.coefficient(lead)
            out[lead] = out.get(lead, 0) + coeff
            part = part - basis(lead).scale(coeff)
            if part.coefficient(lead):
                raise RuntimeError(
                    f"Basis element {lead} does not lead with x^{lead}"
                )
            rounds += 1
        logger.debug("Degree %d reduced in %d rounds", degree, rounds)
    return out


def slide_from_monomials(C: Sequence[int]) -> poly.Polynomial:
    """Return the sum of x(D) over positive D <=_m C.

    Equals slide(W_c) for the N-vector c of C.

    """
    C = tuple(C)
    if any(a < b for a, b in zip(C, C[1:])):
        raise ValidationError(f"Expected a nonincreasing word : {C}")
    if any(a < 1 for a in C):
        raise ValidationError(f"Expected positive letters : {C}")
    out = poly.Polynomial()
    for D in product(*(range(1, a + 1) for a in C)):
        if _below(D, C):
            out = out + poly.monomial(D)
    return out


def _below(D: Tuple[int, ...], C: Tuple[int, ...]) -> bool:
    """D nonincreasing, D_i <= C_i, strict descent where C descends."""
    for k in range(len(C) - 1):
        if D[k] < D[k + 1]:
            return False
        if C[k] > C[k + 1] and D[k] == D[k + 1]:
            return False
    return True
