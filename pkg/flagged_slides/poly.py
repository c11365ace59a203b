"""Sparse exact-integer polynomials in variables x_i, i in Z.

Polynomial : immutable sparse polynomial keyed by exponent N-vectors
monomial : x(C) for a nonincreasing word C
revlex_leading : revlex maximal exponent of a homogeneous polynomial
parse_polynomial : read the text rendering back

"""

import re
from typing import Dict, Iterable, Iterator, Optional, Tuple
from flagged_slides.core import NVector
from flagged_slides.helper import ParseError, ValidationError


class Polynomial:
    """Finite sum of monomials x^c with nonzero integer coefficients.

    Terms are stored canonically (no zero coefficients); instances
    are immutable and hashable.

    Parameters
    ----------
    terms : dict, optional
        {NVector: int}

    Example
    -------
    p = Polynomial.variable(1) + Polynomial.variable(2)
    q = p * p
    q.truncate(1, 1)

    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Dict[NVector, int]] = None):
        self._terms = {c: k for c, k in (terms or {}).items() if k}
        self._hash = None

    @classmethod
    def one(cls) -> "Polynomial":
        """Return the constant 1."""
        return cls({NVector(): 1})

    @classmethod
    def variable(cls, idx: int) -> "Polynomial":
        """Return x_idx."""
        return cls({NVector({idx: 1}): 1})

    @classmethod
    def from_exponent(cls, c: NVector, coeff: int = 1) -> "Polynomial":
        """Return coeff * x^c."""
        return cls({c: coeff})

    def terms(self) -> Dict[NVector, int]:
        """Return a copy of the {exponent: coefficient} mapping."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[NVector, int]]:
        """Iterate terms in revlex descending order of exponents."""
        for c in sorted(self._terms, key=NVector.revlex_key, reverse=True):
            yield c, self._terms[c]

    def coefficient(self, c: NVector) -> int:
        """Return the coefficient of x^c."""
        return self._terms.get(c, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.one().scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self._terms)
        for c, k in other._terms.items():
            out[c] = out.get(c, 0) + k
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        for c, k in self._terms.items():
            for d, m in other._terms.items():
                e = c + d
                out[e] = out.get(e, 0) + k * m
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, factor: int) -> "Polynomial":
        """Return factor * self."""
        return Polynomial({c: factor * k for c, k in self._terms.items()})

    @property
    def degree(self) -> int:
        """Max weight of any exponent, -1 for the zero polynomial."""
        return max((c.weight for c in self._terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        """Whether all exponents share one weight."""
        return len({c.weight for c in self._terms}) <= 1

    @property
    def variables(self) -> Tuple[int, ...]:
        """Sorted indices of variables occurring in some term."""
        return tuple(sorted({i for c in self._terms for i in c.support}))

    def by_degree(self) -> Dict[int, "Polynomial"]:
        """Split into homogeneous components {degree: component}."""
        parts = {}
        for c, k in self._terms.items():
            parts.setdefault(c.weight, {})[c] = k
        return {deg: Polynomial(t) for deg, t in sorted(parts.items())}

    def truncate(self, lo: int, hi: int) -> "Polynomial":
        """Kill every term using a variable outside [lo, hi]."""
        if lo > hi:
            raise ValidationError(f"Empty window : {lo}..{hi}")
        return Polynomial(
            {
                c: k
                for c, k in self._terms.items()
                if all(lo <= i <= hi for i in c.support)
            }
        )

    def shift(self, step: int) -> "Polynomial":
        """Send every x_i to x_{i+step}."""
        return Polynomial({c.shift(step): k for c, k in self._terms.items()})

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"

    def __str__(self) -> str:
        return format_polynomial(self)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return p + q."""
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return p * q."""
    return p * q


def scale(p: Polynomial, factor: int) -> Polynomial:
    """Return factor * p."""
    return p.scale(factor)


def truncate(p: Polynomial, lo: int, hi: int) -> Polynomial:
    """Return p with every variable outside [lo, hi] set to zero."""
    return p.truncate(lo, hi)


def shift(p: Polynomial, step: int) -> Polynomial:
    """Return p with x_i sent to x_{i+step}."""
    return p.shift(step)


def monomial(word: Iterable[int]) -> Polynomial:
    """Return x(C) = x_{C_1}...x_{C_m} for a nonincreasing word C."""
    word = tuple(word)
    if any(a < b for a, b in zip(word, word[1:])):
        raise ValidationError(f"Expected a nonincreasing word : {word}")
    return Polynomial.from_exponent(NVector.from_word(word))


def revlex_leading(p: Polynomial) -> NVector:
    """Return the revlex maximal exponent of a nonzero homogeneous p."""
    if not p:
        raise ValidationError("Zero polynomial has no leading monomial")
    if not p.is_homogeneous:
        raise ValidationError(f"Expected a homogeneous polynomial : {p}")
    return max(p.terms(), key=NVector.revlex_key)


# %%
def format_monomial(c: NVector) -> str:
    """Render x^c as "x(i)^k*x(j)", or "1"."""
    if not c:
        return "1"
    return "*".join(
        f"x({i})" if n == 1 else f"x({i})^{n}" for i, n in c.items()
    )


def format_polynomial(p: Polynomial) -> str:
    """Render p as "3*x(-1)*x(2)^2 + x(1) - 2", revlex descending."""
    if not p:
        return "0"
    out = []
    for c, k in p.items():
        sign = "-" if k < 0 else "+"
        mag = abs(k)
        if not c:
            body = str(mag)
        elif mag == 1:
            body = format_monomial(c)
        else:
            body = f"{mag}*{format_monomial(c)}"
        out.append((sign, body))
    head_sign, head = out[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TERM_RE = re.compile(r"^(\d+)?((?:\*?x\(-?\d+\)(?:\^\d+)?)*)$")
_VAR_RE = re.compile(r"x\((-?\d+)\)(?:\^(\d+))?")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the text rendering of a polynomial.

    Accepts sums and differences of terms "k", "x(i)^e*x(j)" and
    "k*x(i)..." with arbitrary spacing.

    """
    # negative indices are masked so that "-" only separates terms
    compact = re.sub(r"\s+", "", text).replace("(-", "(~")
    if not compact:
        raise ParseError("Empty polynomial")
    if compact[0] not in "+-":
        compact = "+" + compact
    pieces = re.findall(r"([+-])([^+-]+)", compact)
    if "".join(s + b for s, b in pieces) != compact:
        raise ParseError(f"Unexpected polynomial : {text}")

    out = {}
    for sign, body in pieces:
        body = body.replace("(~", "(-")
        match = _TERM_RE.match(body)
        if not match or not (match.group(1) or match.group(2)):
            raise ParseError(f"Unexpected term : {body}")
        coeff = int(match.group(1) or 1)
        factors = match.group(2)
        if match.group(1) and factors and not factors.startswith("*"):
            raise ParseError(f"Expected '*' after coefficient : {body}")
        exps = {}
        for idx, power in _VAR_RE.findall(factors):
            exps[int(idx)] = exps.get(int(idx), 0) + int(power or 1)
        c = NVector(exps)
        out[c] = out.get(c, 0) + (coeff if sign == "+" else -coeff)
    return Polynomial(out)
