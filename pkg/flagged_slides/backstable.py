"""Back-stable quasisymmetric functions in the tensor basis.

Elements are finite sums of F_alpha(x_-) * x^c, where x_- holds the
variables x_i, i <= 0 and c is any N-vector.

BackQSymElement : integer combination of tensor terms
BackSlideExpansion : integer combination of back-stable slides
fundamental_truncated : F_alpha in x_1..x_n
good_decompositions : splittings c = d + e compatible with fl(c)
backslide : tensor expansion of the back-stable slide of c
eta0, pi_plus : projection to QSym, truncation to x_i, i >= 1
expand_F_shifted : F_alpha(x_{<=b}) in the tensor basis
gamma_shift : shift of variables x_i -> x_{i+step}
expand_in_backslide_basis : back-slide expansion of an element
multiply_backslides, multiply : shuffle products
back_k : back-stable generating function of a flagged poset
evaluate_window : element with variables outside a window set to 0
qsym_product : product of fundamental quasisymmetric functions
element_from_document : build from a JSON element document

"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple
from flagged_slides.core import Composition, Letter, NVector
from flagged_slides.core import check_composition, composition_subset
from flagged_slides.core import flatten, format_composition, format_nvector
from flagged_slides.core import parse_composition
from flagged_slides.core import parse_nvector, rs_normalize, splittings
from flagged_slides.core import transpose, word_of
from flagged_slides.helper import ParseError, ValidationError, check_document
from flagged_slides.poly import Polynomial, format_monomial
from flagged_slides import poset
from flagged_slides import slide

logger = logging.getLogger(__name__)

TensorKey = Tuple[Composition, NVector]


# %%
class BackQSymElement:
    """Finite sum of coefficient * F_alpha(x_-) * x^c.

    Parameters
    ----------
    terms : dict, optional
        {(alpha, c): int}

    Example
    -------
    f = BackQSymElement.fundamental((2, 1))
    g = f * Polynomial.variable(1)
    eta0(g + f)

    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[TensorKey, int]] = None):
        self._terms = {
            (tuple(alpha), c): k
            for (alpha, c), k in (terms or {}).items()
            if k
        }

    @classmethod
    def one(cls) -> "BackQSymElement":
        """Return the unit element."""
        return cls({((), NVector()): 1})

    @classmethod
    def fundamental(cls, alpha: Composition) -> "BackQSymElement":
        """Return F_alpha(x_-)."""
        return cls({(check_composition(alpha), NVector()): 1})

    @classmethod
    def from_polynomial(
        cls, p: Polynomial, alpha: Composition = ()
    ) -> "BackQSymElement":
        """Return F_alpha(x_-) * p."""
        return cls({(tuple(alpha), c): k for c, k in p.terms().items()})

    def terms(self) -> Dict[TensorKey, int]:
        """Return a copy of the {(alpha, c): coefficient} mapping."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[TensorKey, int]]:
        """Iterate terms, exponents revlex descending then compositions."""
        keys = sorted(
            self._terms,
            key=lambda x: (x[1].revlex_key(), len(x[0]), x[0]),
            reverse=True,
        )
        for key in keys:
            yield key, self._terms[key]

    def coefficient(self, alpha: Composition, c: NVector) -> int:
        """Return the coefficient of F_alpha(x_-) * x^c."""
        return self._terms.get((tuple(alpha), c), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BackQSymElement):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "BackQSymElement") -> "BackQSymElement":
        out = dict(self._terms)
        for key, k in other._terms.items():
            out[key] = out.get(key, 0) + k
        return BackQSymElement(out)

    def __neg__(self) -> "BackQSymElement":
        return self.scale(-1)

    def __sub__(self, other: "BackQSymElement") -> "BackQSymElement":
        return self + other.scale(-1)

    def __mul__(self, other) -> "BackQSymElement":
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Polynomial):
            out = {}
            for (alpha, c), k in self._terms.items():
                for d, m in other.terms().items():
                    key = (alpha, c + d)
                    out[key] = out.get(key, 0) + k * m
            return BackQSymElement(out)
        if isinstance(other, BackQSymElement):
            return multiply(self, other)
        return NotImplemented

    def scale(self, factor: int) -> "BackQSymElement":
        """Return factor * self."""
        return BackQSymElement(
            {key: factor * k for key, k in self._terms.items()}
        )

    def polynomial_parts(self) -> Dict[Composition, Polynomial]:
        """Return {alpha: polynomial factor of F_alpha(x_-)}."""
        parts = {}
        for (alpha, c), k in self._terms.items():
            parts.setdefault(alpha, {})[c] = k
        return {alpha: Polynomial(t) for alpha, t in parts.items()}

    @property
    def min_index(self) -> Optional[int]:
        """Smallest variable index in any exponent, None if there is none."""
        found = [c.support[0] for _, c in self._terms if c]
        return min(found) if found else None

    @property
    def poly_degree(self) -> int:
        """Max weight of any exponent, -1 for the zero element."""
        return max((c.weight for _, c in self._terms), default=-1)

    def __repr__(self) -> str:
        return f"BackQSymElement({len(self)} terms)"

    def __str__(self) -> str:
        return format_element(self)


def format_tensor(alpha: Composition, c: NVector) -> str:
    """Render F_alpha(x_-) * x^c as "F(2,1)|x(0)*x(2)^2"."""
    if not alpha:
        return format_monomial(c)
    if not c:
        return f"F{format_composition(alpha)}"
    return f"F{format_composition(alpha)}|{format_monomial(c)}"


def format_element(f: BackQSymElement) -> str:
    """Render one "+k F(alpha)|x^c" line per term, or "0"."""
    if not f:
        return "0"
    return "\n".join(
        f"{'-' if k < 0 else '+'}{abs(k)} {format_tensor(alpha, c)}"
        for (alpha, c), k in f.items()
    )


class BackSlideExpansion(slide.SlideExpansion):
    """Finite integer combination of back-stable slides."""

    symbol = "bF"

    @staticmethod
    def check_key(c: NVector):
        """Accept any N-vector on Z."""

    @staticmethod
    def basis_element(c: NVector) -> BackQSymElement:
        """Return the back-slide indexed by c."""
        return backslide(c)


# %%
def fundamental_truncated(alpha: Composition, n: int) -> Polynomial:
    """Return F_alpha(x_1, ..., x_n).

    Sums x_{i_1}...x_{i_r} over 1 <= i_1 <= ... <= i_r <= n, strict at
    the partial sums of alpha.

    """
    if n < 0:
        raise ValidationError(f"Expected a nonnegative variable count : {n}")
    return _fundamental(check_composition(alpha), n)


@lru_cache(maxsize=None)
def _fundamental(alpha: Composition, n: int) -> Polynomial:
    weight = sum(alpha)
    strict = composition_subset(alpha, weight)

    @lru_cache(maxsize=None)
    def _tail(pos: int, lower: int) -> Polynomial:
        if pos == weight:
            return Polynomial.one()
        step = int(pos + 1 in strict)
        out = Polynomial()
        for idx in range(lower, n + 1):
            rest = _tail(pos + 1, idx + step)
            if rest:
                out = out + rest * Polynomial.variable(idx)
        return out

    return _tail(0, 1)


def fundamental_window(alpha: Composition, lo: int, hi: int) -> Polynomial:
    """Return F_alpha(x_lo, ..., x_hi), 1 when the window is empty."""
    if hi < lo:
        return Polynomial.one() if not alpha else Polynomial()
    return fundamental_truncated(alpha, hi - lo + 1).shift(lo - 1)


def pack(alpha: Composition) -> NVector:
    """Return the N-vector with alpha at indices <= 0, last part at 0."""
    size = len(alpha)
    return NVector({k + 1 - size: part for k, part in enumerate(alpha)})


# %%
def good_decompositions(c: NVector) -> List[Tuple[NVector, NVector]]:
    """Return the good decompositions c = d + e, d below e.

    d takes the entries of c at the lowest indices and e the rest, split
    either between two support indices or inside one entry.

    """
    if not c.is_positive:
        raise ValidationError(
            f"Good decompositions need positive support : {c}"
        )
    entries = c.items()
    out = []
    for cut in range(len(entries) + 1):
        low, high = dict(entries[:cut]), dict(entries[cut:])
        out.append((NVector(low), NVector(high)))
    for pos, (idx, cnt) in enumerate(entries):
        for left in range(1, cnt):
            low = dict(entries[:pos])
            low[idx] = left
            high = dict(entries[pos + 1:])
            high[idx] = cnt - left
            out.append((NVector(low), NVector(high)))
    return out


@lru_cache(maxsize=None)
def backslide(c: NVector) -> BackQSymElement:
    """Return the tensor expansion of the back-stable slide of c.

    For positive c this is the sum over good decompositions c = d + e of
    F_fl(d)(x_-) times the slide polynomial of e. Other supports are
    shifted right into the positive integers and shifted back.

    """
    if not c.is_positive:
        step = 1 - c.support[0]
        return gamma_shift(backslide(c.shift(step)), -step)
    out = BackQSymElement()
    for d, e in good_decompositions(c):
        out = out + BackQSymElement.from_polynomial(
            slide.slide_polynomial(e), flatten(d)
        )
    return out


def eta0(f: BackQSymElement) -> Dict[Composition, int]:
    """Return {alpha: coefficient} of the terms with x^c = 1."""
    return {alpha: k for (alpha, c), k in f.items() if not c}


def pi_plus(f: BackQSymElement) -> Polynomial:
    """Return f with x_i = 0 for every i <= 0."""
    return Polynomial(
        {
            c: k
            for (alpha, c), k in f.terms().items()
            if not alpha and c.is_positive
        }
    )


@lru_cache(maxsize=None)
def expand_F_shifted(alpha: Composition, b: int) -> BackQSymElement:
    """Return F_alpha(x_{<=b}) in the tensor basis.

    For b >= 1 the F_gamma factors live on x_1..x_b; for b <= -1 they
    enter with sign (-1)^|gamma| as F_(gamma^t) on x_{b+1}..x_0.

    """
    alpha = check_composition(alpha)
    if not b:
        return BackQSymElement.fundamental(alpha)
    out = BackQSymElement()
    for beta, gamma in splittings(alpha):
        if b > 0:
            part = fundamental_window(gamma, 1, b)
        else:
            part = fundamental_window(transpose(gamma), b + 1, 0)
            part = part.scale((-1) ** sum(gamma))
        out = out + BackQSymElement.from_polynomial(part, beta)
    return out


def gamma_shift(f: BackQSymElement, step: int) -> BackQSymElement:
    """Send every x_i to x_{i+step}, one unit step at a time."""
    unit = 1 if step > 0 else -1
    for _ in range(abs(step)):
        out = BackQSymElement()
        for (alpha, c), k in f.terms().items():
            lifted = expand_F_shifted(alpha, unit)
            shifted = Polynomial.from_exponent(c.shift(unit), k)
            out = out + lifted * shifted
        f = out
    return f


# %%
def expand_in_backslide_basis(f: BackQSymElement) -> BackSlideExpansion:
    """Return the unique back-slide expansion of f.

    f is first shifted so that every exponent is positive. Each round
    expands the polynomial factors in slides, and for every term
    F_alpha * slide(e) of maximal |e| subtracts the back-stable slide
    of d = (..., 0, alpha | e). The maximal |e| strictly decreases.

    """
    low = f.min_index
    step = max(0, 1 - low) if low is not None else 0
    rest = gamma_shift(f, step)
    found = {}
    last = None
    while rest:
        expansions = {
            alpha: slide.expand_in_slide_basis(p)
            for alpha, p in rest.polynomial_parts().items()
        }
        top = max(
            e.weight for exp in expansions.values() for e, _ in exp.items()
        )
        if last is not None and top >= last:
            raise RuntimeError(f"Back-slide reduction stalled at weight {top}")
        for alpha, exp in expansions.items():
            for e, k in exp.items():
                if e.weight != top:
                    continue
                d = pack(alpha) + e
                found[d] = found.get(d, 0) + k
                rest = rest - backslide(d).scale(k)
        logger.debug("Reduced weight %d, %d terms left", top, len(rest))
        last = top
    return BackSlideExpansion({d.shift(-step): k for d, k in found.items()})


def shifted_letters(c: NVector, d: NVector) -> Tuple[Letter, ...]:
    """Return W_d with every l(i,j) renamed l(i, j + c_i)."""
    return tuple(Letter(x.value, x.tier + c[x.value]) for x in word_of(d))


def shuffles(
    left: Tuple[Letter, ...], right: Tuple[Letter, ...]
) -> Iterator[Tuple[Letter, ...]]:
    """Yield every shuffle of two words."""
    size = len(left) + len(right)
    for spots in combinations(range(size), len(right)):
        chosen = set(spots)
        lit, rit = iter(left), iter(right)
        yield tuple(
            next(rit) if k in chosen else next(lit) for k in range(size)
        )


def multiply_backslides(c: NVector, d: NVector) -> BackSlideExpansion:
    """Return the back-slide expansion of the product of two back-slides."""
    out = {}
    count = 0
    for word in shuffles(word_of(c), shifted_letters(c, d)):
        e = rs_normalize(word, backstable=True)
        out[e] = out.get(e, 0) + 1
        count += 1
    logger.debug("Multiplied %s by %s over %d shuffles", c, d, count)
    return BackSlideExpansion(out)


def multiply(f: BackQSymElement, g: BackQSymElement) -> BackQSymElement:
    """Return f * g, computed through the back-slide basis."""
    left = expand_in_backslide_basis(f)
    right = expand_in_backslide_basis(g)
    out = BackSlideExpansion()
    for c, k in left.items():
        for d, m in right.items():
            out = out + multiply_backslides(c, d).scale(k * m)
    return out.synthesize()


def back_k_expansion(P: poset.FlaggedPoset) -> BackSlideExpansion:
    """Return the back-stable generating function of P in back-slides."""
    out = {}
    for ext in poset.linear_extensions(P):
        c = rs_normalize([P.flag[u] for u in ext], backstable=True)
        out[c] = out.get(c, 0) + 1
    return BackSlideExpansion(out)


def back_k(P: poset.FlaggedPoset) -> BackQSymElement:
    """Return the back-stable generating function of P, flags anywhere."""
    return back_k_expansion(P).synthesize()


# %%
def evaluate_window(f: BackQSymElement, lo: int, hi: int) -> Polynomial:
    """Return f with every x_i, i outside [lo, hi], set to zero."""
    if lo > hi:
        raise ValidationError(f"Empty window : {lo}..{hi}")
    out = Polynomial()
    for (alpha, c), k in f.terms().items():
        if any(i < lo or i > hi for i in c.support):
            continue
        head = fundamental_window(alpha, lo, min(hi, 0))
        out = out + (head * Polynomial.from_exponent(c)).scale(k)
    return out


def qsym_product(
    alpha: Composition, beta: Composition
) -> Dict[Composition, int]:
    """Return F_alpha * F_beta in the fundamental basis."""
    alpha, beta = check_composition(alpha), check_composition(beta)
    out = {}
    for e, k in multiply_backslides(pack(alpha), pack(beta)).items():
        out[flatten(e)] = out.get(flatten(e), 0) + k
    return {gamma: k for gamma, k in out.items() if k}


# %%
def element_from_document(doc: dict) -> BackQSymElement:
    """Build a BackQSymElement from a JSON element document."""
    check_document(doc, ("terms",), "element")
    out = BackQSymElement()
    try:
        for term in doc["terms"]:
            alpha = parse_composition(
                ",".join(str(x) for x in term["composition"])
            )
            c = parse_nvector(str(term["vector"]))
            out = out + BackQSymElement({(alpha, c): int(term["coefficient"])})
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Unexpected element document : {e}") from e
    return out


def element_to_document(f: BackQSymElement) -> dict:
    """Return the JSON element document of f."""
    return {
        "terms": [
            {
                "composition": list(alpha),
                "vector": format_nvector(c),
                "coefficient": k,
            }
            for (alpha, c), k in f.items()
        ]
    }
