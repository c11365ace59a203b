"""Invariant suites behind the verify command.

Tally : per-property pass/fail bookkeeping
random_poset : random flagged poset
nvectors : all N-vectors in an index range up to a weight
compositions : all compositions of a weight
SUITES : suite name -> suite function
RunVerify : run every suite in parallel and report

"""

# %%
import sys
import random
import logging
from itertools import combinations_with_replacement, product
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Sequence
import networkx as nx
import pandas as pd
from more_itertools import powerset
from flagged_slides.core import Letter, NVector, check_injective, flatten
from flagged_slides.core import composition_subset, rs_normalize, standardize
from flagged_slides.core import subset_composition, transpose, word_of
from flagged_slides.helper import ValidationError, VerifyBounds
from flagged_slides.poly import Polynomial, monomial, revlex_leading
from flagged_slides import backstable
from flagged_slides import forest
from flagged_slides import kostka
from flagged_slides import poset
from flagged_slides import slide

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["suite", "property", "cases", "passed", "detail"]


class Tally:
    """Count cases and keep the first failure of each property."""

    def __init__(self, suite: str):
        self.suite = suite
        self._cases = {}
        self._fail = {}

    def check(self, prop: str, ok: bool, detail: str = ""):
        """Record one case of prop."""
        self._cases[prop] = self._cases.get(prop, 0) + 1
        if not ok and prop not in self._fail:
            self._fail[prop] = detail or "failed"

    def records(self) -> List[dict]:
        """Return one report row per property."""
        return [
            {
                "suite": self.suite,
                "property": prop,
                "cases": cnt,
                "passed": prop not in self._fail,
                "detail": self._fail.get(prop, ""),
            }
            for prop, cnt in self._cases.items()
        ]


# %%
def random_poset(
    rng: random.Random, size: int, flag_max: int, density: float = 0.4
) -> poset.FlaggedPoset:
    """Return a random flagged poset with flag values in 1..flag_max."""
    names = [f"p{k}" for k in range(size)]
    order = names[:]
    rng.shuffle(order)
    graph = nx.DiGraph()
    graph.add_nodes_from(names)
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < density:
                graph.add_edge(order[i], order[j])
    covers = list(nx.transitive_reduction(graph).edges)
    values = [rng.randint(1, flag_max) for _ in names]
    seen = {}
    flag = {}
    for name in rng.sample(names, size):
        val = values[names.index(name)]
        seen[val] = seen.get(val, 0) + 1
        flag[name] = Letter(val, seen[val])
    return poset.FlaggedPoset(names, covers, flag)


def nvectors(lo: int, hi: int, weight: int) -> List[NVector]:
    """Return every N-vector supported in [lo, hi] of weight <= weight."""
    return [
        NVector.from_word(word)
        for w in range(weight + 1)
        for word in combinations_with_replacement(range(lo, hi + 1), w)
    ]


def compositions(weight: int) -> List[tuple]:
    """Return every composition of weight."""
    if not weight:
        return [()]
    return [
        subset_composition(cuts, weight)
        for cuts in powerset(range(1, weight))
    ]


def random_polynomial(
    rng: random.Random, lo: int, hi: int, terms: int = 3, degree: int = 3
) -> Polynomial:
    """Return a random polynomial in x_lo..x_hi."""
    out = Polynomial()
    for _ in range(rng.randint(0, terms)):
        word = [rng.randint(lo, hi) for _ in range(rng.randint(0, degree))]
        out = out + Polynomial.from_exponent(
            NVector.from_word(word), rng.randint(-3, 3)
        )
    return out


def _partition_key(P: poset.FlaggedPoset, f: dict) -> tuple:
    return tuple(f[u] for u in P.elements)


# %%
def suite_core(bounds: VerifyBounds) -> List[dict]:
    """Letters, words, N-vectors and compositions."""
    tally = Tally("core")

    images = {}
    for size in range(5):
        for word in product(range(1, 4), repeat=size):
            std = standardize(word)
            check_injective(std)
            tally.check(
                "standardize_injective",
                std not in images,
                f"{word} and {images.get(std)}",
            )
            images[std] = word

    for c in nvectors(-3, 5, bounds.weight):
        W = word_of(c)
        tally.check(
            "word_of_round_trip",
            NVector.from_word(x.value for x in W) == c,
            str(c),
        )
        tally.check(
            "rs_fixed_point",
            rs_normalize(W, backstable=True) == c
            and rs_normalize(W) == (c if c.is_positive else None),
            str(c),
        )

    for weight in range(8):
        for alpha in compositions(weight):
            subset = composition_subset(alpha, weight) if alpha else set()
            tally.check(
                "composition_round_trip",
                subset_composition(subset, weight) == alpha,
                str(alpha),
            )
            tr = transpose(alpha)
            tally.check(
                "transpose_involution",
                transpose(tr) == alpha
                and sum(tr) == weight
                and (not alpha or len(tr) == weight - len(alpha) + 1),
                str(alpha),
            )
    return tally.records()


def suite_poly(bounds: VerifyBounds) -> List[dict]:
    """Ring axioms, revlex order and slide triangularity."""
    tally = Tally("poly")
    rng = random.Random(bounds.seed)
    for _ in range(bounds.samples):
        p, q, r = (random_polynomial(rng, -2, 3) for _ in range(3))
        tally.check("associativity", (p * q) * r == p * (q * r), f"{p}; {q}; {r}")
        tally.check("distributivity", p * (q + r) == p * q + p * r, f"{p}; {q}; {r}")
        tally.check("commutativity", p * q == q * p, f"{p}; {q}")

    for weight in range(bounds.weight + 1):
        group = [c for c in nvectors(-2, 4, weight) if c.weight == weight]
        keys = sorted(c.revlex_key() for c in group)
        tally.check(
            "revlex_total_order",
            len(set(keys)) == len(group),
            f"weight {weight}",
        )

    for c in nvectors(1, 4, bounds.weight):
        F = slide.slide_polynomial(c)
        tally.check(
            "slide_triangular",
            revlex_leading(F) == c and F.coefficient(c) == 1,
            str(c),
        )
    return tally.records()


def suite_poset(bounds: VerifyBounds) -> List[dict]:
    """Stanley decomposition and flag equivalences on random posets."""
    tally = Tally("poset")
    rng = random.Random(bounds.seed)
    for num in range(bounds.posets):
        P = random_poset(rng, rng.randint(1, bounds.poset_size), bounds.flag_max)
        parts = sorted(_partition_key(P, f) for f in poset.enumerate_partitions(P))
        blocks = poset.stanley_decomposition(P)
        union = sorted(_partition_key(P, f) for fs in blocks.values() for f in fs)
        tally.check("stanley_decomposition", union == parts, f"poset {num}")

        total = Polynomial()
        for ext in blocks:
            total = total + poset.k_polynomial(poset.restrict_to_chain(P, ext))
        tally.check("k_expansion", total == poset.k_polynomial(P), f"poset {num}")

        omega, rho = poset.omega_rho_from_flag(P)
        flagged = poset.flag_from_omega_rho(P, omega, rho)
        same = sorted(
            _partition_key(P, f) for f in poset.enumerate_partitions(flagged)
        )
        direct = sorted(
            _partition_key(P, f)
            for f in poset.omega_rho_partitions(P, omega, rho)
        )
        tally.check(
            "omega_rho_equivalence",
            poset.check_lf_flag(P, omega, rho) and same == parts == direct,
            f"poset {num}",
        )

        labels = list(range(1, len(P) + 1))
        rng.shuffle(labels)
        omega = dict(zip(P.elements, labels))
        rho = {}
        for u in P.topological_order():
            top = min(
                [rho[w] for w in P.lower_covers(u)] or [bounds.flag_max]
            )
            rho[u] = rng.randint(1, top)
        if poset.check_ab_flag(P, omega, rho):
            ab = poset.flag_from_ab_flag(P, omega, rho)
            tally.check(
                "ab_flag_equivalence",
                sorted(
                    _partition_key(P, f) for f in poset.enumerate_partitions(ab)
                )
                == sorted(
                    _partition_key(P, f)
                    for f in poset.omega_rho_partitions(P, omega, rho)
                ),
                f"poset {num}",
            )

    for bound in range(1, 7):
        expected = backstable.fundamental_truncated(
            (2, 1), bound
        ) + backstable.fundamental_truncated((1, 2), bound)
        tally.check(
            "three_element_fundamental",
            poset.k_polynomial(poset.FlaggedPoset.three_element(bound)) == expected,
            f"bound {bound}",
        )
    return tally.records()


def suite_slide(bounds: VerifyBounds) -> List[dict]:
    """Slide normalization, basis uniqueness and linearity."""
    tally = Tally("slide")
    for size in range(bounds.weight + 2):
        for word in product(range(1, 6), repeat=size):
            W = standardize(word)
            c = rs_normalize(W)
            expected = (
                slide.slide_series(word_of(c)) if c is not None else Polynomial()
            )
            tally.check(
                "rs_normalization", slide.slide_series(W) == expected, str(word)
            )

    for c in nvectors(1, 4, bounds.weight):
        tally.check(
            "slide_basis_unique",
            slide.expand_in_slide_basis(slide.slide_polynomial(c))
            == slide.SlideExpansion({c: 1}),
            str(c),
        )

    rng = random.Random(bounds.seed)
    for _ in range(bounds.samples):
        p, q = random_polynomial(rng, 1, 4), random_polynomial(rng, 1, 4)
        tally.check(
            "expansion_linearity",
            slide.expand_in_slide_basis(p + q)
            == slide.expand_in_slide_basis(p) + slide.expand_in_slide_basis(q),
            f"{p}; {q}",
        )

    for size in range(5):
        for C in kostka.words_in_box([range(1, 5)] * size):
            tally.check(
                "kostka_agreement",
                slide.expand_in_slide_basis(monomial(C))
                == kostka.monomial_to_slides(C),
                kostka.format_word(C),
            )
    return tally.records()


def suite_forest(bounds: VerifyBounds) -> List[dict]:
    """Forest bijection, leading monomials and slide expansions."""
    tally = Tally("forest")
    seen = {}
    for F in forest.all_forests(1, 6, bounds.weight):
        c = forest.c_of_forest(F)
        tally.check("bijection", forest.forest_of_c(c) == F, repr(F))
        tally.check("c_injective", c not in seen, str(c))
        seen[c] = F
        P = forest.forest_polynomial(F)
        tally.check(
            "leading_monomial",
            revlex_leading(P) == c and P.coefficient(c) == 1,
            str(c),
        )
        tally.check(
            "slide_expansion_sum",
            forest.slide_expansion_of_forest(F).synthesize() == P,
            str(c),
        )
        if F.size <= 3:
            back = forest.back_forest(F)
            tally.check(
                "back_forest_truncation", backstable.pi_plus(back) == P, str(c)
            )
            moved = forest.IndexedForest(
                [((a - 3, b - 3), tree) for (a, b), tree in F.trees]
            )
            tally.check(
                "back_forest_shift",
                forest.back_forest(moved) == backstable.gamma_shift(back, -3),
                str(c),
            )

    for c in nvectors(1, 4, bounds.weight):
        tally.check(
            "forest_basis_unique",
            forest.expand_in_forest_basis(
                forest.forest_polynomial(forest.forest_of_c(c))
            )
            == forest.ForestExpansion({c: 1}),
            str(c),
        )
    return tally.records()


def suite_backstable(bounds: VerifyBounds) -> List[dict]:
    """Back-slide structure maps, basis, shifts and products."""
    tally = Tally("backstable")
    for c in nvectors(-2, 4, bounds.weight):
        bc = backstable.backslide(c)
        truncated = slide.slide_polynomial(c) if c.is_positive else Polynomial()
        tally.check("pi_plus_truncation", backstable.pi_plus(bc) == truncated, str(c))
        tally.check(
            "eta0_flattening", backstable.eta0(bc) == {flatten(c): 1}, str(c)
        )
        for step in range(-2, 3):
            tally.check(
                "gamma_equivariance",
                backstable.gamma_shift(bc, step)
                == backstable.backslide(c.shift(step)),
                f"{c} by {step}",
            )
        tally.check(
            "backslide_basis_unique",
            backstable.expand_in_backslide_basis(bc)
            == backstable.BackSlideExpansion({c: 1}),
            str(c),
        )

    for weight in range(5):
        for alpha in compositions(weight):
            for b in range(-2, 3):
                lhs = backstable.fundamental_window(alpha, -5, b)
                rhs = backstable.evaluate_window(
                    backstable.expand_F_shifted(alpha, b), -5, max(b, 0)
                )
                tally.check("shifted_fundamental", lhs == rhs, f"{alpha} at {b}")

    rng = random.Random(bounds.seed)
    small = nvectors(-1, 3, 3)
    for _ in range(bounds.samples):
        f = _random_element(rng)
        predicted = Polynomial()
        for alpha, k in backstable.eta0(f).items():
            predicted = predicted + backstable.fundamental_truncated(alpha, 3).scale(k)
        for b in range(6, 9):
            tally.check(
                "stabilization",
                backstable.pi_plus(backstable.gamma_shift(f, b)).truncate(1, 3)
                == predicted,
                f"{f!r} at {b}",
            )
        tally.check(
            "element_round_trip",
            backstable.expand_in_backslide_basis(f).synthesize() == f,
            repr(f),
        )

    for _ in range(bounds.pairs):
        c, d = rng.choice(small), rng.choice(small)
        prod = backstable.multiply_backslides(c, d)
        tally.check(
            "product_commutes",
            prod == backstable.multiply_backslides(d, c),
            f"{c} * {d}",
        )
        whole = prod.synthesize()
        tally.check(
            "product_pi_plus",
            backstable.pi_plus(whole)
            == backstable.pi_plus(backstable.backslide(c))
            * backstable.pi_plus(backstable.backslide(d)),
            f"{c} * {d}",
        )
        tally.check(
            "product_eta0",
            backstable.eta0(whole)
            == backstable.qsym_product(flatten(c), flatten(d)),
            f"{c} * {d}",
        )

    basis = [backstable.backslide(c) for c in nvectors(-1, 1, 2)]
    for _ in range(bounds.pairs):
        f, g, h = (rng.choice(basis) for _ in range(3))
        tally.check(
            "multiply_associative",
            backstable.multiply(backstable.multiply(f, g), h)
            == backstable.multiply(f, backstable.multiply(g, h)),
            f"{f!r} {g!r} {h!r}",
        )
        tally.check(
            "multiply_commutes",
            backstable.multiply(f, g) == backstable.multiply(g, f),
            f"{f!r} {g!r}",
        )

    # fundamental quasisymmetric polynomials in 4 variables
    for weight in range(bounds.weight + 1):
        for wa in range(weight + 1):
            for alpha, beta in product(compositions(wa), compositions(weight - wa)):
                lhs = Polynomial()
                for gamma, k in backstable.qsym_product(alpha, beta).items():
                    lhs = lhs + backstable.fundamental_truncated(gamma, 4).scale(k)
                rhs = backstable.fundamental_truncated(
                    alpha, 4
                ) * backstable.fundamental_truncated(beta, 4)
                tally.check("qsym_shuffle", lhs == rhs, f"{alpha} * {beta}")
    return tally.records()


def _random_element(rng: random.Random) -> backstable.BackQSymElement:
    """Return a random element of weight <= 3, exponents in [-2, 2]."""
    out = backstable.BackQSymElement()
    for _ in range(rng.randint(1, 3)):
        size = rng.randint(0, 3)
        alpha = rng.choice(compositions(rng.randint(0, size)))
        word = [rng.randint(-2, 2) for _ in range(size - sum(alpha))]
        out = out + backstable.BackQSymElement(
            {(alpha, NVector.from_word(word)): rng.choice([-2, -1, 1, 2])}
        )
    return out


def suite_kostka(bounds: VerifyBounds) -> List[dict]:
    """Lattice laws, Mobius functions and monomial expansions."""
    tally = Tally("kostka")
    for size in range(4):
        words = list(kostka.words_in_box([range(0, 5)] * size))
        for C in words:
            for D in words:
                if kostka.leq_m(D, C):
                    tally.check(
                        "mobius_closed_form",
                        kostka.mobius(D, C) == kostka.mobius_recursive(D, C),
                        f"{D} <= {C}",
                    )
                J, M = kostka.join(C, D), kostka.meet(C, D)
                tally.check(
                    "lattice_laws",
                    J == kostka.join(D, C)
                    and M == kostka.meet(D, C)
                    and kostka.join(C, C) == C
                    and kostka.meet(C, C) == C
                    and kostka.join(C, kostka.meet(C, D)) == C
                    and kostka.meet(C, kostka.join(C, D)) == C,
                    f"{C}, {D}",
                )
                uppers = [
                    E
                    for E in kostka.words_in_box([range(0, 7)] * size)
                    if kostka.leq_m(C, E) and kostka.leq_m(D, E)
                ]
                tally.check(
                    "join_is_least",
                    J in uppers and all(kostka.leq_m(J, E) for E in uppers),
                    f"{C}, {D}",
                )

    rng = random.Random(bounds.seed)
    words = list(kostka.words_in_box([range(0, 5)] * 3))
    for _ in range(bounds.samples):
        A, B, C = (rng.choice(words) for _ in range(3))
        tally.check(
            "lattice_associative",
            kostka.join(kostka.join(A, B), C) == kostka.join(A, kostka.join(B, C))
            and kostka.meet(kostka.meet(A, B), C)
            == kostka.meet(A, kostka.meet(B, C)),
            f"{A}, {B}, {C}",
        )

    for size in range(1, 5):
        for C in kostka.words_in_box([range(1, 5)] * size):
            certs = kostka.b_set(C)
            marks = {cert.marks for cert in certs}
            tally.check(
                "marks_lower_ideal",
                all(frozenset(sub) in marks for m in marks for sub in powerset(m)),
                str(C),
            )
            if size <= 3:
                for x in certs:
                    for y in certs:
                        tally.check(
                            "b_set_order_embedding",
                            kostka.leq_m(x.word, y.word) == (y.marks <= x.marks),
                            f"{x.word}, {y.word}",
                        )
            tally.check(
                "monomial_identity",
                kostka.monomial_to_slides(C).synthesize() == monomial(C),
                str(C),
            )

    for size in range(4):
        for C in kostka.words_in_box([range(-1, 4)] * size):
            lhs = backstable.BackQSymElement.from_polynomial(monomial(C))
            rhs = kostka.monomial_to_backslides(C).synthesize()
            tally.check("backslide_identity_exact", lhs == rhs, str(C))
            for b in range(3):
                tally.check(
                    "backslide_identity",
                    backstable.pi_plus(backstable.gamma_shift(lhs, b))
                    == backstable.pi_plus(backstable.gamma_shift(rhs, b)),
                    f"{C} at {b}",
                )
            if size <= 2 and C:
                lo = min(C) - 2
                tally.check(
                    "mobius_inversion",
                    backstable.evaluate_window(
                        backstable.backslide(NVector.from_word(C)), lo, max(C)
                    )
                    == kostka.monomials_below(C, lo),
                    str(C),
                )
    return tally.records()


SUITES: Dict[str, Callable[[VerifyBounds], List[dict]]] = {
    "core": suite_core,
    "poly": suite_poly,
    "poset": suite_poset,
    "slide": suite_slide,
    "forest": suite_forest,
    "backstable": suite_backstable,
    "kostka": suite_kostka,
}


def _run_suite(args) -> List[dict]:
    """Run one suite, converting a crash into a failed record."""
    name, bounds = args
    print(f"Running suite : {name}", file=sys.stderr, flush=True)
    try:
        return SUITES[name](bounds)
    except Exception as e:
        logger.exception("Suite %s crashed", name)
        return [
            {
                "suite": name,
                "property": "suite_completed",
                "cases": 1,
                "passed": False,
                "detail": f"{type(e).__name__}: {e}",
            }
        ]


# %%
class RunVerify:
    """Run the invariant suites and collect a pass/fail report.

    Suites run in parallel worker processes; the report keeps the
    suite order of SUITES.

    Parameters
    ----------
    bounds : helper.VerifyBounds
        Desk-scale bounds
    suites : sequence, optional
        Suite names, default all

    Attributes
    ----------
    df_report : pd.DataFrame
        One row per property, columns REPORT_COLUMNS

    Example
    -------
    rv = verify.RunVerify(helper.VerifyBounds.from_env())
    rv.run()
    rv.passed

    """

    def __init__(self, bounds: VerifyBounds, suites: Optional[Sequence[str]] = None):
        """Initialize."""
        self._bounds = bounds
        self._suites = list(suites or SUITES)
        unknown = [x for x in self._suites if x not in SUITES]
        if unknown:
            raise ValidationError(f"Unknown verify suites : {', '.join(unknown)}")
        self.df_report = pd.DataFrame(columns=REPORT_COLUMNS)

    def run(self) -> pd.DataFrame:
        """Run suites and build df_report."""
        jobs = [(name, self._bounds) for name in self._suites]
        if self._bounds.procs > 1 and len(jobs) > 1:
            with Pool(min(self._bounds.procs, len(jobs))) as pool:
                results = pool.map(_run_suite, jobs)
        else:
            results = [_run_suite(job) for job in jobs]
        rows = [row for records in results for row in records]
        self.df_report = pd.DataFrame(rows, columns=REPORT_COLUMNS)
        print("Done : verify.RunVerify.run", file=sys.stderr, flush=True)
        return self.df_report

    @property
    def passed(self) -> bool:
        """Whether every property passed."""
        return bool(self.df_report["passed"].all())
