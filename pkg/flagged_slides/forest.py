"""Indexed forests and forest polynomials.

IndexedForest : disjoint intervals each carrying a plane binary tree
flag_of_forest : the flagged poset (F, Phi_F)
forest_polynomial : K_(F, Phi_F)
c_of_forest, forest_of_c : bijection with N-vectors
decreasing_labelings : linear extensions of the forest poset
slide_expansion_of_forest : one slide term per decreasing labeling
back_forest : back-stable forest series, F anywhere in Z
ForestExpansion : integer combination of forest polynomials
expand_in_forest_basis : triangular change of basis from monomials
forest_from_document, forest_to_document : JSON forest documents
plane_trees, all_forests : exhaustive generators

A tree is None (a leaf) or a pair (left, right). Internal nodes are
identified by (tree position, path), the path spelling the "L"/"R"
steps from the root.

"""

from typing import Any, List, Optional, Sequence, Tuple
from flagged_slides.core import Letter, NVector, rs_normalize
from flagged_slides.helper import ParseError, ValidationError, check_document
from flagged_slides.poly import Polynomial
from flagged_slides import backstable
from flagged_slides import poset
from flagged_slides import slide

Tree = Optional[Tuple[Any, Any]]
NodeId = Tuple[int, str]


def tree_size(tree: Tree) -> int:
    """Return the number of internal nodes."""
    if tree is None:
        return 0
    return 1 + tree_size(tree[0]) + tree_size(tree[1])


class IndexedForest:
    """Collection of indexed trees on disjoint intervals.

    Parameters
    ----------
    trees : sequence
        (interval, tree) pairs, interval an (a, b) tuple with a < b
        and tree a nested pair structure with b - a internal nodes

    Example
    -------
    F = IndexedForest([((2, 5), ((None, None), (None, None)))])
    F.size

    """

    def __init__(self, trees: Sequence[Tuple[Tuple[int, int], Tree]]):
        norm = []
        for (a, b), tree in trees:
            tree = _freeze(tree)
            if a >= b:
                raise ValidationError(f"Empty tree interval : [{a},{b}]")
            if tree_size(tree) != b - a:
                raise ValidationError(
                    f"Tree on [{a},{b}] needs {b - a} internal nodes, "
                    + f"got {tree_size(tree)}"
                )
            norm.append(((int(a), int(b)), tree))
        norm.sort(key=lambda x: x[0])
        for ((_, b), _), ((a, _), _) in zip(norm, norm[1:]):
            if a <= b:
                raise ValidationError("Forest intervals overlap")
        self.trees = tuple(norm)

    @property
    def size(self) -> int:
        """Number of internal nodes |F|."""
        return sum(b - a for (a, b), _ in self.trees)

    @property
    def is_positive(self) -> bool:
        """Whether every interval lies in the positive integers."""
        return all(a >= 1 for (a, _), _ in self.trees)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexedForest):
            return NotImplemented
        return self.trees == other.trees

    def __hash__(self) -> int:
        return hash(self.trees)

    def __repr__(self) -> str:
        return f"IndexedForest({list(self.trees)})"

    def nodes(self) -> List[Tuple[NodeId, int, int]]:
        """Return (node id, leftmost leaf, left-branch height), preorder.

        The left-branch height of a node is its tier on the left branch
        through it, counted from 1 at the bottom.

        """
        out = []

        def _walk(tree: Tree, idx: int, path: str, first: int):
            """Return (#leaves, left-branch height) of tree at leaf first."""
            if tree is None:
                return 1, 0
            entry = [(idx, path), first, 0]
            out.append(entry)
            left, height = _walk(tree[0], idx, path + "L", first)
            right, _ = _walk(tree[1], idx, path + "R", first + left)
            entry[2] = height + 1
            return left + right, height + 1

        for idx, ((a, _), tree) in enumerate(self.trees):
            _walk(tree, idx, "", a)
        return [tuple(x) for x in out]


def _freeze(tree) -> Tree:
    """Convert nested lists into nested tuples."""
    if tree is None:
        return None
    if not isinstance(tree, (list, tuple)) or len(tree) != 2:
        raise ParseError(f"Unexpected tree node : {tree}")
    return (_freeze(tree[0]), _freeze(tree[1]))


# %%
def flag_of_forest(F: IndexedForest, backstable: bool = False) -> poset.FlaggedPoset:
    """Return (F, Phi_F).

    Children are covered by their parents. The nodes on the left branch
    ending at leaf m get l(m,1), l(m,2), ... bottom to top.

    """
    if not backstable and not F.is_positive:
        raise ValidationError("Forest intervals must lie in x(i), i >= 1")
    nodes = F.nodes()
    flag = {node: Letter(leaf, tier) for node, leaf, tier in nodes}
    covers = []
    for (idx, path), _, _ in nodes:
        for step in "LR":
            if (idx, path + step) in flag:
                covers.append(((idx, path + step), (idx, path)))
    return poset.FlaggedPoset([x[0] for x in nodes], covers, flag)


def forest_polynomial(F: IndexedForest) -> Polynomial:
    """Return the forest polynomial of F."""
    return poset.k_polynomial(flag_of_forest(F))


def c_of_forest(F: IndexedForest) -> NVector:
    """Return c(F): c_m counts the nodes on the left branch ending at m."""
    counts = {}
    for _, leaf, _ in F.nodes():
        counts[leaf] = counts.get(leaf, 0) + 1
    return NVector(counts)


def forest_of_c(c: NVector) -> IndexedForest:
    """Return the unique indexed forest F with c(F) = c.

    The tree rooted at a left leaf i with c_i > 0 grows a left spine of
    c_i nodes; each spine node takes as right child the tree of the next
    free leaf j, or the bare leaf j when c_j = 0.

    """

    def _grow(start: int) -> Tuple[Tree, int]:
        """Return the tree at leaf start and its last leaf."""
        cur, end = None, start
        for _ in range(c[start]):
            nxt = end + 1
            if c[nxt]:
                right, end = _grow(nxt)
            else:
                right, end = None, nxt
            cur = (cur, right)
        return cur, end

    trees = []
    covered = None
    for i in c.support:
        if covered is not None and i <= covered:
            continue
        tree, end = _grow(i)
        trees.append(((i, end), tree))
        covered = end
    return IndexedForest(trees)


# %%
def word_of_labeling(F: poset.FlaggedPoset, labeling: poset.Extension) -> Tuple[Letter, ...]:
    """Return the flag word Phi(v_1)...Phi(v_r), bottom to top."""
    return tuple(F.flag[u] for u in labeling)


def decreasing_labelings(F: IndexedForest) -> List[poset.Extension]:
    """Return the decreasing labelings of F as node sequences.

    Each sequence lists the internal nodes bottom to top, i.e. it is a
    linear extension of the forest poset.

    """
    return poset.linear_extensions(flag_of_forest(F, backstable=True))


def slide_expansion_of_forest(F: IndexedForest) -> slide.SlideExpansion:
    """Return the slide expansion of the forest polynomial of F."""
    P = flag_of_forest(F)
    out = {}
    for ext in poset.linear_extensions(P):
        c = rs_normalize(word_of_labeling(P, ext))
        if c is not None:
            out[c] = out.get(c, 0) + 1
    return slide.SlideExpansion(out)


def back_forest_expansion(F: IndexedForest) -> backstable.BackSlideExpansion:
    """Return the back-stable forest series of F in back-stable slides.

    F may sit anywhere in Z; every decreasing labeling contributes one
    back-stable slide.

    """
    P = flag_of_forest(F, backstable=True)
    return backstable.back_k_expansion(P)


def back_forest(F: IndexedForest) -> backstable.BackQSymElement:
    """Return the back-stable forest series of F in the tensor basis."""
    return back_forest_expansion(F).synthesize()


class ForestExpansion(slide.SlideExpansion):
    """Finite integer combination of forest polynomials, keyed by c(F)."""

    symbol = "P"

    @staticmethod
    def check_key(c: NVector):
        """Reject indices outside the positive integers."""
        if not c.is_positive:
            raise ValidationError(f"Forest index must be positive : {c}")

    @staticmethod
    def basis_element(c: NVector) -> Polynomial:
        """Return the forest polynomial indexed by c."""
        return forest_polynomial(forest_of_c(c))


def expand_in_forest_basis(p: Polynomial) -> ForestExpansion:
    """Return the unique expansion of p in forest polynomials."""
    if any(i < 1 for i in p.variables):
        raise ValidationError(
            f"Forest expansion needs variables x(i), i >= 1 : {p}"
        )
    return ForestExpansion(
        slide.triangular_reduce(p, ForestExpansion.basis_element)
    )


# %%
def _tree_to_json(tree: Tree):
    """Return tree as nested two-element lists."""
    if tree is None:
        return None
    return [_tree_to_json(tree[0]), _tree_to_json(tree[1])]


def forest_to_document(F: IndexedForest) -> dict:
    """Return the JSON forest document of F."""
    return {
        "trees": [
            {"interval": [a, b], "tree": _tree_to_json(tree)}
            for (a, b), tree in F.trees
        ]
    }


def forest_from_document(doc: dict) -> IndexedForest:
    """Build an IndexedForest from a JSON forest document."""
    check_document(doc, ("trees",), "forest")
    try:
        trees = [
            ((int(x["interval"][0]), int(x["interval"][1])), x["tree"])
            for x in doc["trees"]
        ]
    except (KeyError, IndexError, TypeError, ValueError) as e:
        raise ParseError(f"Unexpected forest document : {e}") from e
    return IndexedForest(trees)


def plane_trees(size: int) -> List[Tree]:
    """Return every plane binary tree with size internal nodes."""
    if not size:
        return [None]
    out = []
    for left in range(size):
        for lt in plane_trees(left):
            for rt in plane_trees(size - 1 - left):
                out.append((lt, rt))
    return out


def all_forests(lo: int, hi: int, max_size: int) -> List[IndexedForest]:
    """Return every forest with intervals in [lo, hi], |F| <= max_size."""

    def _place(start: int, budget: int) -> List[list]:
        """Return tree lists using leaves >= start within budget."""
        out = [[]]
        for a in range(start, hi):
            for b in range(a + 1, min(hi, a + budget) + 1):
                for tree in plane_trees(b - a):
                    for rest in _place(b + 1, budget - (b - a)):
                        out.append([((a, b), tree)] + rest)
        return out

    return [IndexedForest(trees) for trees in _place(lo, max_size)]
