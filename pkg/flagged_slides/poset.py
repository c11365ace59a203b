"""Finite posets with labeled flags and their (P,Phi)-partitions.

FlaggedPoset : poset with cover relations and an injective flag
linear_extensions : all linear extensions, bottom to top
restrict_to_chain : flagged chain induced by a linear extension
enumerate_partitions : all (P,Phi)-partitions
k_polynomial : generating polynomial K_(P,Phi)
stanley_decomposition : partitions grouped by linear extension
flag_from_omega_rho : labeled flag l(rho(u), omega(u)) of an LF-flag
flag_from_ab_flag : labeled flag l(rho(u), omega(u)) of an AB-flag
omega_rho_from_flag : labeling and restriction read off a flag
omega_rho_partitions : all (P,omega,rho)-partitions
check_ab_flag, check_lf_flag : restriction conditions
descent_composition : composition of the descent set of a chain
poset_from_document : build from a JSON poset document

"""

import logging
from itertools import permutations, product
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple
import networkx as nx
from flagged_slides.core import Composition, Letter, NVector
from flagged_slides.core import subset_composition
from flagged_slides.helper import ParseError, ValidationError, check_document
from flagged_slides.poly import Polynomial

logger = logging.getLogger(__name__)

PartitionMap = Dict[Hashable, int]
Extension = Tuple[Hashable, ...]


# %%
class FlaggedPoset:
    """Finite poset with a labeled flag.

    Covers (u, v) mean u is covered by v; a (P,Phi)-partition f then
    satisfies f(u) >= f(v), strictly when Phi(u) > Phi(v). Covers must be
    acyclic and irredundant.

    Parameters
    ----------
    elements : sequence
        Element ids, in the order used for output
    covers : sequence
        (u, v) pairs
    flag : mapping
        {element: Letter}, injective

    Attributes
    ----------
    elements : tuple
        Element ids
    covers : tuple
        Irredundant (u, v) cover pairs, in element order
    flag : dict
        {element: Letter}
    graph : nx.DiGraph
        Hasse diagram, edges from lower to upper element

    Example
    -------
    P = FlaggedPoset(
        ["a", "b"], [("a", "b")], {"a": Letter(2, 1), "b": Letter(2, 2)}
    )
    P.linear_extensions()

    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        covers: Sequence[Tuple[Hashable, Hashable]],
        flag: Mapping[Hashable, Letter],
    ):
        """Initialize."""
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValidationError("Duplicate poset elements")
        self._pos = {u: k for k, u in enumerate(self.elements)}

        covers = [tuple(x) for x in covers]
        if len(set(covers)) != len(covers):
            raise ValidationError("Duplicate cover relations")
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        for u, v in covers:
            if u not in self._pos or v not in self._pos:
                raise ValidationError(f"Cover on unknown element : {(u, v)}")
            if u == v:
                raise ValidationError(f"Reflexive cover : {(u, v)}")
            graph.add_edge(u, v)
        if not nx.is_directed_acyclic_graph(graph):
            raise ValidationError("Cover relations contain a cycle")
        self.graph = nx.transitive_reduction(graph)
        self.graph.add_nodes_from(self.elements)
        redundant = [e for e in covers if not self.graph.has_edge(*e)]
        if redundant:
            raise ValidationError(
                f"Cover implied by transitivity : {redundant[0]}"
            )
        self.covers = tuple(
            sorted(
                self.graph.edges,
                key=lambda e: (self._pos[e[0]], self._pos[e[1]]),
            )
        )

        if set(flag) != set(self.elements):
            raise ValidationError("Flag must be defined on exactly the elements")
        self.flag = {u: flag[u] for u in self.elements}
        if len(set(self.flag.values())) != len(self.flag):
            raise ValidationError("Flag is not injective")

    @classmethod
    def chain(
        cls, elements: Sequence[Hashable], flag: Mapping[Hashable, Letter]
    ) -> "FlaggedPoset":
        """Return the chain elements[0] < elements[1] < ... with flag."""
        return cls(elements, list(zip(elements, elements[1:])), flag)

    @classmethod
    def from_word(cls, word: Sequence[Letter]) -> "FlaggedPoset":
        """Return the chain v1 < ... < vr with Phi(v_k) = word[k-1]."""
        names = [f"v{k + 1}" for k in range(len(word))]
        return cls.chain(names, dict(zip(names, word)))

    @classmethod
    def three_element(cls, bound: int) -> "FlaggedPoset":
        """Three-element poset with f(a) >= f(b) and f(c) > f(b).

        Covers a < b (weak) and c < b (strict), every flag value bound.

        """
        flag = {
            "a": Letter(bound, 1),
            "b": Letter(bound, 2),
            "c": Letter(bound, 3),
        }
        return cls(["a", "b", "c"], [("a", "b"), ("c", "b")], flag)

    def __len__(self) -> int:
        return len(self.elements)

    def is_strict(self, u: Hashable, v: Hashable) -> bool:
        """Whether cover (u, v) forces f(u) > f(v)."""
        return self.flag[u] > self.flag[v]

    def lower_covers(self, v: Hashable) -> List[Hashable]:
        """Return the elements covered by v, in element order."""
        return sorted(self.graph.predecessors(v), key=self._pos.__getitem__)

    def leq(self, u: Hashable, v: Hashable) -> bool:
        """Whether u <= v in the poset."""
        return u == v or nx.has_path(self.graph, u, v)

    def topological_order(self) -> Extension:
        """Return a fixed linear extension, ties broken by element order."""
        return tuple(
            nx.lexicographical_topological_sort(
                self.graph, key=self._pos.__getitem__
            )
        )

    def with_flag(self, flag: Mapping[Hashable, Letter]) -> "FlaggedPoset":
        """Return the same poset with another flag."""
        return FlaggedPoset(self.elements, self.covers, flag)

    def check_positive(self):
        """Reject flags with value < 1 (polynomial mode)."""
        bad = [u for u, x in self.flag.items() if x.value < 1]
        if bad:
            raise ValidationError(
                f"Flag values must be positive, got {self.flag[bad[0]]} "
                + f"at {bad[0]}"
            )

    def linear_extensions(self) -> List[Extension]:
        """Wrap linear_extensions."""
        return linear_extensions(self)


# %%
def linear_extensions(P: FlaggedPoset) -> List[Extension]:
    """Return every linear extension of P, bottom to top, sorted."""
    if not P.elements:
        return [()]
    pos = {u: k for k, u in enumerate(P.elements)}
    found = [tuple(x) for x in nx.all_topological_sorts(P.graph)]
    return sorted(found, key=lambda ext: [pos[u] for u in ext])


def restrict_to_chain(P: FlaggedPoset, extension: Extension) -> FlaggedPoset:
    """Return the chain of extension, each element keeping its letter."""
    return FlaggedPoset.chain(extension, {u: P.flag[u] for u in extension})


def _bounded_partitions(
    order: Extension,
    lower: Mapping[Hashable, List[Tuple[Hashable, bool]]],
    bound: Mapping[Hashable, int],
) -> List[PartitionMap]:
    """Depth-first enumeration of bounded partitions.

    Elements are assigned in order (bottom first), values descending
    from min(bound, f(w) - strict) over lower covers w down to 1.

    """
    out = []
    assign = {}

    def _visit(pos: int):
        if pos == len(order):
            out.append(dict(assign))
            return
        u = order[pos]
        top = bound[u]
        for w, strict in lower[u]:
            top = min(top, assign[w] - int(strict))
        for val in range(top, 0, -1):
            assign[u] = val
            _visit(pos + 1)
        assign.pop(u, None)

    _visit(0)
    return out


def enumerate_partitions(P: FlaggedPoset) -> List[PartitionMap]:
    """Return all (P,Phi)-partitions.

    f(u) >= f(v) on covers u < v, strict when Phi(u) > Phi(v), and
    1 <= f(u) <= val(Phi(u)).

    """
    P.check_positive()
    lower = {
        v: [(u, P.is_strict(u, v)) for u in P.lower_covers(v)]
        for v in P.elements
    }
    bound = {u: P.flag[u].value for u in P.elements}
    return _bounded_partitions(P.topological_order(), lower, bound)


def partition_monomial(f: PartitionMap) -> NVector:
    """Return the exponent of prod x_{f(u)}."""
    return NVector.from_word(f.values())


def k_polynomial(P: FlaggedPoset) -> Polynomial:
    """Return K_(P,Phi), the sum of monomials over (P,Phi)-partitions."""
    out = {}
    for f in enumerate_partitions(P):
        c = partition_monomial(f)
        out[c] = out.get(c, 0) + 1
    return Polynomial(out)


def stanley_decomposition(P: FlaggedPoset) -> Dict[Extension, List[PartitionMap]]:
    """Return {linear extension: partitions of the induced chain}.

    Every (P,Phi)-partition appears under exactly one extension.

    """
    P.check_positive()
    return {
        ext: enumerate_partitions(restrict_to_chain(P, ext))
        for ext in linear_extensions(P)
    }


# %%
def check_lf_flag(
    P: FlaggedPoset, omega: Mapping[Hashable, int], rho: Mapping[Hashable, int]
) -> bool:
    """Whether rho(u) > rho(v) implies omega(u) > omega(v) for all u, v."""
    return all(
        omega[u] > omega[v]
        for u in P.elements
        for v in P.elements
        if rho[u] > rho[v]
    )


def check_ab_flag(
    P: FlaggedPoset, omega: Mapping[Hashable, int], rho: Mapping[Hashable, int]
) -> bool:
    """Whether rho is an AB-flag for (P, omega).

    (AB1) rho(u) >= rho(v) on covers u < v; (AB2) on covers with
    rho(u) > rho(v), omega(u) > omega(v).

    """
    for u, v in P.covers:
        if rho[u] < rho[v]:
            return False
        if rho[u] > rho[v] and omega[u] <= omega[v]:
            return False
    return True


def _check_labeling(P: FlaggedPoset, omega: Mapping[Hashable, int]):
    """Check omega is a bijection onto 1..#P."""
    if sorted(omega[u] for u in P.elements) != list(range(1, len(P) + 1)):
        raise ValidationError("Labeling must be a bijection onto 1..#P")


def flag_from_omega_rho(
    P: FlaggedPoset, omega: Mapping[Hashable, int], rho: Mapping[Hashable, int]
) -> FlaggedPoset:
    """Return P with flag Phi(u) = l(rho(u), omega(u)).

    Only the covers of P are used; its current flag is replaced.

    """
    _check_labeling(P, omega)
    if any(rho[u] < 1 for u in P.elements):
        raise ValidationError("Restriction values must be positive")
    if not check_lf_flag(P, omega, rho):
        raise ValidationError("Restriction violates the LF condition")
    return P.with_flag({u: Letter(rho[u], omega[u]) for u in P.elements})


def flag_from_ab_flag(
    P: FlaggedPoset, omega: Mapping[Hashable, int], rho: Mapping[Hashable, int]
) -> FlaggedPoset:
    """Return P with flag l(rho(u), omega(u)) for an AB-flag rho.

    LF may fail away from covers; the partition sets still agree.

    """
    _check_labeling(P, omega)
    if any(rho[u] < 1 for u in P.elements):
        raise ValidationError("Restriction values must be positive")
    if not check_ab_flag(P, omega, rho):
        raise ValidationError("Restriction is not an AB-flag")
    return P.with_flag({u: Letter(rho[u], omega[u]) for u in P.elements})


def omega_rho_from_flag(
    P: FlaggedPoset,
) -> Tuple[Dict[Hashable, int], Dict[Hashable, int]]:
    """Return (omega, rho): omega order-isomorphic to Phi, rho = val(Phi)."""
    ranked = sorted(P.elements, key=P.flag.__getitem__)
    omega = {u: k + 1 for k, u in enumerate(ranked)}
    rho = {u: P.flag[u].value for u in P.elements}
    return omega, rho


def omega_rho_partitions(
    P: FlaggedPoset, omega: Mapping[Hashable, int], rho: Mapping[Hashable, int]
) -> List[PartitionMap]:
    """Return all (P,omega,rho)-partitions.

    f(u) >= f(v) on covers u < v, strict when omega(u) > omega(v), and
    1 <= f(u) <= rho(u).

    """
    _check_labeling(P, omega)
    lower = {
        v: [(u, omega[u] > omega[v]) for u in P.lower_covers(v)]
        for v in P.elements
    }
    return _bounded_partitions(P.topological_order(), lower, dict(rho))


def descent_composition(
    L: FlaggedPoset, omega: Mapping[Hashable, int]
) -> Composition:
    """Return the composition of {i : omega(v_i) > omega(v_{i+1})}.

    Parameters
    ----------
    L : FlaggedPoset
        Chain v_1 < ... < v_r
    omega : mapping
        {element: label}

    Raises
    ------
    ValidationError
        L is not a chain

    """
    chain = chain_elements(L)
    descents = {
        k + 1 for k in range(len(chain) - 1) if omega[chain[k]] > omega[chain[k + 1]]
    }
    return subset_composition(descents, len(chain))


def chain_elements(P: FlaggedPoset) -> Extension:
    """Return the elements of a chain bottom to top, rejecting non-chains."""
    order = P.topological_order()
    if any(not P.graph.has_edge(u, v) for u, v in zip(order, order[1:])):
        raise ValidationError("Expected a chain")
    return order


# %%
def poset_from_document(doc: dict, backstable: bool = False) -> FlaggedPoset:
    """Build a FlaggedPoset from a JSON poset document.

    Strictness of covers is never read from the document; it is
    recomputed from the flag.

    """
    check_document(doc, ("elements", "covers", "flag"), "poset")
    try:
        elements = [str(x) for x in doc["elements"]]
        covers = [(str(u), str(v)) for u, v in doc["covers"]]
        flag = {str(u): Letter(int(i), int(j)) for u, (i, j) in doc["flag"].items()}
    except (TypeError, ValueError) as e:
        raise ParseError(f"Unexpected poset document : {e}") from e
    P = FlaggedPoset(elements, covers, flag)
    if not backstable:
        P.check_positive()
    return P


def poset_to_document(P: FlaggedPoset) -> dict:
    """Return the JSON poset document of P."""
    return {
        "elements": [str(u) for u in P.elements],
        "covers": [[str(u), str(v)] for u, v in P.covers],
        "flag": {str(u): [x.value, x.tier] for u, x in P.flag.items()},
    }


def brute_force_partitions(P: FlaggedPoset, top: Optional[int] = None) -> List[PartitionMap]:
    """Return (P,Phi)-partitions by testing every f into 1..top.

    Exponential; used to cross-check enumerate_partitions.

    """
    top = top or max((x.value for x in P.flag.values()), default=1)
    out = []
    for values in product(range(1, top + 1), repeat=len(P)):
        f = dict(zip(P.elements, values))
        if all(1 <= f[u] <= P.flag[u].value for u in P.elements) and all(
            f[u] > f[v] if P.is_strict(u, v) else f[u] >= f[v]
            for u, v in P.covers
        ):
            out.append(f)
    return out


def all_labelings(P: FlaggedPoset) -> List[Dict[Hashable, int]]:
    """Return every bijection P -> 1..#P."""
    return [
        dict(zip(P.elements, perm))
        for perm in permutations(range(1, len(P) + 1))
    ]
