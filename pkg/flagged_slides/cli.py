r"""Compute with flagged P-partitions, slide and forest polynomials.

Generating functions of flagged posets, slide polynomials, forest
polynomials, back-stable slides in the tensor basis F_alpha(x_-) * x^c,
and the signed expansion of monomials in (back-stable) slides.

Output is written to stdout in a fixed term order: expansions list keys
revlex descending and print every sign.

Notes
-----
- N-vectors are counts from index 1, e.g. 0,2,0,1; a bar marks
    index 1 when indices <= 0 are used, e.g. 1,0|2 is x(-1)*x(1)^2.
- Posets, forests and back-stable elements are read from JSON files,
    see README.md for the document layouts.
- Optional global variable FLAGGED_SLIDES_VERIFY overrides the bounds
    of the verify suites, e.g. "posets=50,procs=1".
- Exit status 2 for malformed input, 3 for invalid input, 1 when
    verify finds a failing property.

Examples
--------
flagged_slides slide word "l(3,1) l(3,2) l(1,1)"

flagged_slides --vars=-2..3 kpoly poset.json --back

flagged_slides back mul 0,1,0,2 0,1

flagged_slides kostka expand 4 4 2

flagged_slides --format machine verify --bounds posets=20

"""

# %%
import sys
import json
import logging
import textwrap
from argparse import ArgumentParser, RawTextHelpFormatter
from typing import List, Optional, Sequence, Tuple
import pandas as pd
import flagged_slides._version as ver
from flagged_slides import helper
from flagged_slides import core
from flagged_slides import poly
from flagged_slides import poset
from flagged_slides import slide
from flagged_slides import forest
from flagged_slides import backstable
from flagged_slides import kostka
from flagged_slides import verify

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


# %%
def _get_args():
    """Get and parse arguments."""
    ver_info = f"\nVersion : {ver.__version__}\n\n"
    parser = ArgumentParser(
        prog="flagged_slides",
        description=ver_info + __doc__,
        formatter_class=RawTextHelpFormatter,
    )
    parser.add_argument(
        "--format",
        choices=["text", "machine"],
        default="text",
        help=textwrap.dedent(
            """\
            Output format, machine writes CSV
            (default : %(default)s)
            """
        ),
    )
    parser.add_argument(
        "--vars",
        type=str,
        default=None,
        help=textwrap.dedent(
            """\
            Window lo..hi, print the output as a polynomial with
            every variable outside x(lo)..x(hi) set to zero
            """
        ),
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Log debug messages to stderr",
    )
    verbs = parser.add_subparsers(dest="verb", metavar="verb")
    verbs.required = True

    # kpoly
    kpoly = verbs.add_parser(
        "kpoly", help="Generating function of a flagged poset"
    )
    kpoly.add_argument("poset_file", help="JSON poset document")
    kpoly.add_argument(
        "--back",
        action="store_true",
        help="Back-stable generating function, flags anywhere in Z",
    )

    # slide
    slide_p = verbs.add_parser("slide", help="Slide polynomials")
    slide_v = slide_p.add_subparsers(dest="action", metavar="action")
    slide_v.required = True
    slide_v.add_parser(
        "word", help="slide(W) of a word, e.g. 'l(1,2) l(1,1)'"
    ).add_argument("letters")
    slide_v.add_parser(
        "poly", help="Slide polynomial of an N-vector"
    ).add_argument("nvector")
    slide_v.add_parser(
        "expand", help="Slide expansion of a polynomial"
    ).add_argument("polynomial")

    # forest
    forest_p = verbs.add_parser("forest", help="Forest polynomials")
    forest_v = forest_p.add_subparsers(dest="action", metavar="action")
    forest_v.required = True
    forest_v.add_parser(
        "poly", help="Forest polynomial of a JSON forest"
    ).add_argument("forest_file")
    forest_v.add_parser(
        "slides", help="Slide expansion of a forest polynomial"
    ).add_argument("forest_file")
    forest_v.add_parser(
        "back", help="Back-stable forest series, back-slide expansion"
    ).add_argument("forest_file")
    forest_v.add_parser(
        "ofc", help="Indexed forest with the given c(F)"
    ).add_argument("nvector")
    forest_v.add_parser(
        "expand", help="Forest expansion of a polynomial"
    ).add_argument("polynomial")

    # back
    back_p = verbs.add_parser("back", help="Back-stable slides")
    back_v = back_p.add_subparsers(dest="action", metavar="action")
    back_v.required = True
    back_v.add_parser(
        "slide", help="Tensor expansion of a back-stable slide"
    ).add_argument("nvector")
    mul_p = back_v.add_parser("mul", help="Product of two back-stable slides")
    mul_p.add_argument("left")
    mul_p.add_argument("right")
    back_v.add_parser(
        "expand", help="Back-slide expansion of a JSON element"
    ).add_argument("element_file")

    # kostka
    kostka_p = verbs.add_parser(
        "kostka", help="Lattice of words and monomial expansions"
    )
    kostka_v = kostka_p.add_subparsers(dest="action", metavar="action")
    kostka_v.required = True
    expand_p = kostka_v.add_parser(
        "expand", help="Signed back-slide expansion of x(C)"
    )
    expand_p.add_argument("word", nargs="+")
    expand_p.add_argument(
        "--positive",
        action="store_true",
        help="Expand in slide polynomials instead",
    )
    for name, text, first, second in [
        ("mobius", "Mobius function mu(D, C)", "D", "C"),
        ("join", "Least upper bound of C and D", "C", "D"),
        ("meet", "Greatest lower bound of C and D", "C", "D"),
    ]:
        act = kostka_v.add_parser(name, help=text)
        act.add_argument(first)
        act.add_argument(second)
    kostka_v.add_parser(
        "bset", help="Unit-drop perturbations of C with marks and signs"
    ).add_argument("word", nargs="+")

    # verify
    verify_p = verbs.add_parser("verify", help="Run the invariant suites")
    verify_p.add_argument(
        "--bounds",
        type=str,
        default="",
        help=textwrap.dedent(
            """\
            Bound overrides applied after FLAGGED_SLIDES_VERIFY,
            e.g. posets=20,procs=1
            """
        ),
    )
    verify_p.add_argument(
        "--suite",
        nargs="+",
        choices=list(verify.SUITES),
        help="Run only these suites",
    )
    return parser


# %%
def _vector_frame(items) -> pd.DataFrame:
    """Return (N-vector, coefficient) pairs as a frame."""
    return pd.DataFrame(
        [{"vector": core.format_nvector(c), "coefficient": k} for c, k in items],
        columns=["vector", "coefficient"],
    )


def _element_frame(f: backstable.BackQSymElement) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "composition": core.format_composition(alpha),
                "vector": core.format_nvector(c),
                "coefficient": k,
            }
            for (alpha, c), k in f.items()
        ],
        columns=["composition", "vector", "coefficient"],
    )


class Renderer:
    """Render results in the requested format.

    Parameters
    ----------
    fmt : str
        {"text", "machine"}
    window : tuple, optional
        (lo, hi) variable window from --vars

    """

    def __init__(self, fmt: str, window: Optional[Tuple[int, int]] = None):
        self.fmt = fmt
        self.window = window

    def _frame(self, df: pd.DataFrame) -> str:
        return helper.frame_to_text(df).rstrip("\n")

    def polynomial(self, p: poly.Polynomial) -> str:
        if self.window:
            p = p.truncate(*self.window)
        if self.fmt == "machine":
            return self._frame(_vector_frame(p.items()))
        return poly.format_polynomial(p)

    def expansion(self, expansion: slide.SlideExpansion) -> str:
        """Render a slide, forest or back-slide expansion."""
        if self.window:
            whole = expansion.synthesize()
            if isinstance(whole, backstable.BackQSymElement):
                return self.element(whole)
            return self.polynomial(whole)
        if self.fmt == "machine":
            return self._frame(_vector_frame(expansion.items()))
        return slide.format_expansion(expansion)

    def element(self, f: backstable.BackQSymElement) -> str:
        """Render a tensor element, as a polynomial under --vars."""
        if self.window:
            return self.polynomial(backstable.evaluate_window(f, *self.window))
        if self.fmt == "machine":
            return self._frame(_element_frame(f))
        return backstable.format_element(f)

    def frame(self, df: pd.DataFrame, text: List[str]) -> str:
        """Render df in machine format, text lines otherwise."""
        if self.fmt == "machine":
            return self._frame(df)
        return "\n".join(text)


# %%
def _word_arg(tokens: Sequence[str]) -> Tuple[int, ...]:
    return kostka.check_word(core.parse_integers(" ".join(tokens)))


def _run_kpoly(args, out: Renderer) -> str:
    P = poset.poset_from_document(
        helper.load_document(args.poset_file), backstable=args.back
    )
    if args.back:
        return out.expansion(backstable.back_k_expansion(P))
    p = poset.k_polynomial(P)
    expansion = slide.expand_in_slide_basis(p)
    if out.fmt == "machine" or out.window:
        return out.expansion(expansion)
    return out.polynomial(p) + "\n\n" + out.expansion(expansion)


def _run_slide(args, out: Renderer) -> str:
    if args.action == "word":
        return out.polynomial(slide.slide_series(core.parse_letters(args.letters)))
    if args.action == "poly":
        return out.polynomial(slide.slide_polynomial(core.parse_nvector(args.nvector)))
    return out.expansion(
        slide.expand_in_slide_basis(poly.parse_polynomial(args.polynomial))
    )


def _run_forest(args, out: Renderer) -> str:
    if args.action == "ofc":
        F = forest.forest_of_c(core.parse_nvector(args.nvector))
        return json.dumps(forest.forest_to_document(F))
    if args.action == "expand":
        return out.expansion(
            forest.expand_in_forest_basis(poly.parse_polynomial(args.polynomial))
        )
    F = forest.forest_from_document(helper.load_document(args.forest_file))
    if args.action == "poly":
        return out.polynomial(forest.forest_polynomial(F))
    if args.action == "slides":
        return out.expansion(forest.slide_expansion_of_forest(F))
    return out.expansion(forest.back_forest_expansion(F))


def _run_back(args, out: Renderer) -> str:
    if args.action == "slide":
        return out.element(backstable.backslide(core.parse_nvector(args.nvector)))
    if args.action == "mul":
        return out.expansion(
            backstable.multiply_backslides(
                core.parse_nvector(args.left), core.parse_nvector(args.right)
            )
        )
    f = backstable.element_from_document(helper.load_document(args.element_file))
    return out.expansion(backstable.expand_in_backslide_basis(f))


def _run_kostka(args, out: Renderer) -> str:
    if args.action == "expand":
        C = _word_arg(args.word)
        if args.positive:
            return out.expansion(kostka.monomial_to_slides(C))
        return out.expansion(kostka.monomial_to_backslides(C))
    if args.action == "bset":
        certs = kostka.b_set(_word_arg(args.word))
        rows = [
            {
                "word": ",".join(str(x) for x in cert.word),
                "marks": ",".join(str(x) for x in sorted(cert.marks)),
                "sign": cert.sign,
            }
            for cert in certs
        ]
        text = [
            f"{kostka.format_word(cert.word)} : "
            + "{" + ",".join(str(x) for x in sorted(cert.marks)) + "} : "
            + f"{cert.sign:+d}"
            for cert in certs
        ]
        return out.frame(pd.DataFrame(rows, columns=["word", "marks", "sign"]), text)
    if args.action == "mobius":
        D, C = _word_arg([args.D]), _word_arg([args.C])
        mu = kostka.mobius(D, C)
        return out.frame(pd.DataFrame({"mobius": [mu]}), [str(mu)])
    first, second = _word_arg([args.C]), _word_arg([args.D])
    word = (kostka.join if args.action == "join" else kostka.meet)(first, second)
    return out.frame(
        pd.DataFrame({"word": [",".join(str(x) for x in word)]}),
        [kostka.format_word(word)],
    )


def _run_verify(args, out: Renderer) -> Tuple[str, bool]:
    bounds = helper.VerifyBounds.from_env().override(args.bounds)
    rv = verify.RunVerify(bounds, args.suite)
    df = rv.run()
    text = [
        f"{'PASS' if row.passed else 'FAIL'} {row.suite} {row.property} "
        + f"({row.cases} cases)"
        + ("" if row.passed else f" : {row.detail}")
        for row in df.itertuples()
    ]
    text.append(f"{int(df['passed'].sum())}/{len(df)} properties passed")
    return out.frame(df, text), rv.passed


# %%
def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status."""
    parser = _get_args()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        parser.print_help(sys.stderr)
        return 0
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        format=LOG_FORMAT,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
    )

    status = 0
    try:
        window = helper.parse_window(args.vars) if args.vars else None
        out = Renderer(args.format, window)
        if args.verb == "verify":
            text, passed = _run_verify(args, out)
            status = 0 if passed else 1
        else:
            text = {
                "kpoly": _run_kpoly,
                "slide": _run_slide,
                "forest": _run_forest,
                "back": _run_back,
                "kostka": _run_kostka,
            }[args.verb](args, out)
    except helper.ParseError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 2
    except (helper.ValidationError, FileNotFoundError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 3
    print(text)
    return status


def main():
    """Entry point of the flagged_slides console script."""
    sys.exit(run())


if __name__ == "__main__":
    main()
