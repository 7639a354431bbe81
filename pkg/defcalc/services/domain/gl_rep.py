"""
Domain service: finite-dimensional gl_M representations and tensor slots.

Generators are the Cartan-Weyl basis e_ab (1-based a, b) with

    [e_ab, e_cd] = delta_bc e_ad - delta_ad e_cb.

Anything that places N copies of gl_M on one space is a *slot realization*:
a tensor product of modules, or the row/column actions of the polynomial
duality model. The coproduct, Casimir elements and the two-tensors
Omega, Omega+, Omega- are all derived from ``slot_generator``.
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterator, Mapping, Union

from defcalc.domain.exceptions import IndexOutOfRange, RepresentationError, SameSlot
from defcalc.domain.linear_map import LinearMap, commutator
from defcalc.domain.models import CheckReport

logger = logging.getLogger(__name__)

Generator = tuple[int, int]

HALF = Fraction(1, 2)


def generator_indices(rank: int) -> Iterator[Generator]:
    for a in range(1, rank + 1):
        for b in range(1, rank + 1):
            yield a, b


def structure_bracket(x: Generator, y: Generator) -> dict[Generator, int]:
    """[e_ab, e_cd] in the Cartan-Weyl basis."""
    (a, b), (c, d) = x, y
    result: dict[Generator, int] = {}
    if b == c:
        result[(a, d)] = result.get((a, d), 0) + 1
    if a == d:
        result[(c, b)] = result.get((c, b), 0) - 1
    return {k: v for k, v in result.items() if v}


def _combination(action, element: Mapping[Generator, int], dim: int) -> LinearMap:
    total = LinearMap.zero(dim)
    for generator, coeff in element.items():
        total = total + action(generator).scale(coeff)
    return total


def relation_violations(rank: int, dim: int, action) -> list[dict]:
    """Quadruples where the matrices break the gl_M commutation relations."""
    violations = []
    for x in generator_indices(rank):
        for y in generator_indices(rank):
            lhs = commutator(action(x), action(y))
            rhs = _combination(action, structure_bracket(x, y), dim)
            if lhs != rhs:
                violations.append({"x": list(x), "y": list(y)})
    return violations


# ============================================================================
# Modules
# ============================================================================

class RepSpace:
    """A gl_M module given by explicit generator matrices."""

    def __init__(
        self,
        rank: int,
        basis_labels: list[str],
        action: Mapping[Generator, LinearMap],
        name: str = "module",
        validate: bool = True,
    ):
        """
        Initialize and machine-check the module.

        Args:
            rank: M
            basis_labels: One label per basis vector
            action: (a, b) -> matrix of e_ab, for all 1 <= a, b <= M
            name: Short description, e.g. "vector" or "sym:2"
            validate: Check the commutation relations

        Raises:
            RepresentationError: If the relations fail
        """
        self.rank = rank
        self.dim = len(basis_labels)
        self.basis_labels = list(basis_labels)
        self.name = name
        self._action = dict(action)
        if validate:
            violations = relation_violations(rank, self.dim, self.generator)
            if violations:
                raise RepresentationError(
                    f"{name} violates the gl_{rank} relations on {len(violations)} pairs"
                )
        logger.debug(f"Built gl_{rank} module {name} of dimension {self.dim}")

    def generator(self, generator: Generator) -> LinearMap:
        a, b = generator
        if not (1 <= a <= self.rank and 1 <= b <= self.rank):
            raise IndexOutOfRange(f"generator e_{a}{b} outside gl_{self.rank}")
        return self._action.get((a, b), LinearMap.zero(self.dim))

    def casimir(self) -> LinearMap:
        total = LinearMap.zero(self.dim)
        for a, b in generator_indices(self.rank):
            total = total + self.generator((a, b)) @ self.generator((b, a))
        return total

    def __repr__(self) -> str:
        return f"RepSpace(gl_{self.rank}, {self.name}, dim={self.dim})"


def vector_rep(rank: int) -> RepSpace:
    """C^M with e_ab the matrix unit E_ab."""
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    action = {(a, b): LinearMap.elementary(rank, a - 1, b - 1) for a, b in generator_indices(rank)}
    return RepSpace(rank, [f"v{a}" for a in range(1, rank + 1)], action, name="vector")


def _monomial_label(exponents: tuple[int, ...], prefix: str = "x") -> str:
    parts = [f"{prefix}{i + 1}" if e == 1 else f"{prefix}{i + 1}^{e}" for i, e in enumerate(exponents) if e]
    return "*".join(parts) or "1"


def symmetric_power_rep(rank: int, degree: int) -> RepSpace:
    """
    Degree-k polynomials in M variables with e_ab = x_a d/dx_b.

    The basis is ordered x1^k, x1^(k-1) x2, ..., xM^k.
    """
    if rank < 1 or degree < 0:
        raise ValueError(f"invalid symmetric power rank={rank} degree={degree}")
    basis = []
    for combo in combinations_with_replacement(range(rank), degree):
        exponents = [0] * rank
        for index in combo:
            exponents[index] += 1
        basis.append(tuple(exponents))
    position = {exponents: k for k, exponents in enumerate(basis)}
    action = {}
    for a, b in generator_indices(rank):
        entries = {}
        for column, exponents in enumerate(basis):
            if not exponents[b - 1]:
                continue
            image = list(exponents)
            image[b - 1] -= 1
            image[a - 1] += 1
            entries[(position[tuple(image)], column)] = exponents[b - 1]
        action[(a, b)] = LinearMap(len(basis), len(basis), entries)
    return RepSpace(rank, [_monomial_label(e) for e in basis], action, name=f"sym:{degree}")


def module_from_name(name: str, rank: int) -> RepSpace:
    """``vector`` or ``sym:k``."""
    if name == "vector":
        return vector_rep(rank)
    if name.startswith("sym:"):
        return symmetric_power_rep(rank, int(name.split(":", 1)[1]))
    raise ValueError(f"unknown module {name!r}; expected vector or sym:k")


# ============================================================================
# Slot realizations
# ============================================================================

class SlotRealization(ABC):
    """N commuting copies of gl_M acting on one space."""

    rank: int
    slot_count: int
    dim: int

    def __init__(self):
        self._slot_cache: dict[tuple[Generator, int], LinearMap] = {}
        self._coproduct_cache: dict[Generator, LinearMap] = {}
        self._omega_cache: dict[tuple[int, int], tuple[LinearMap, LinearMap, LinearMap]] = {}
        self._casimir: LinearMap | None = None

    @abstractmethod
    def _build_slot_generator(self, a: int, b: int, i: int) -> LinearMap:
        """Matrix of (e_ab)_(i)."""

    def _check_generator(self, generator: Generator) -> None:
        a, b = generator
        if not (1 <= a <= self.rank and 1 <= b <= self.rank):
            raise IndexOutOfRange(f"generator e_{a}{b} outside gl_{self.rank}")

    def _check_slot(self, i: int) -> None:
        if not 1 <= i <= self.slot_count:
            raise IndexOutOfRange(f"slot {i} outside 1..{self.slot_count}")

    def slot_generator(self, generator: Generator, i: int) -> LinearMap:
        """(e_ab)_(i)."""
        self._check_generator(generator)
        self._check_slot(i)
        key = (tuple(generator), i)
        if key not in self._slot_cache:
            self._slot_cache[key] = self._build_slot_generator(generator[0], generator[1], i)
        return self._slot_cache[key]

    def coproduct(self, generator: Generator) -> LinearMap:
        """Delta^N(e_ab) = sum_i (e_ab)_(i)."""
        self._check_generator(generator)
        key = tuple(generator)
        if key not in self._coproduct_cache:
            total = LinearMap.zero(self.dim)
            for i in range(1, self.slot_count + 1):
                total = total + self.slot_generator(key, i)
            self._coproduct_cache[key] = total
        return self._coproduct_cache[key]

    def casimir(self) -> LinearMap:
        """Delta^N(C_2) = sum_{a,b} Delta(e_ab) Delta(e_ba)."""
        if self._casimir is None:
            total = LinearMap.zero(self.dim)
            for a, b in generator_indices(self.rank):
                total = total + self.coproduct((a, b)) @ self.coproduct((b, a))
            self._casimir = total
        return self._casimir

    def slot_casimir(self, i: int) -> LinearMap:
        """C_2 acting in slot i alone."""
        total = LinearMap.zero(self.dim)
        for a, b in generator_indices(self.rank):
            total = total + self.slot_generator((a, b), i) @ self.slot_generator((b, a), i)
        return total

    def two_tensor(self, x: Generator, y: Generator, i: int, j: int) -> LinearMap:
        """(x)_(i) (y)_(j)."""
        return self.slot_generator(x, i) @ self.slot_generator(y, j)

    def omega(self, i: int, j: int) -> tuple[LinearMap, LinearMap, LinearMap]:
        """(Omega, Omega+, Omega-) on slots (i, j)."""
        self._check_slot(i)
        self._check_slot(j)
        if i == j:
            raise SameSlot(f"two-tensor requested on a single slot {i}")
        if (i, j) not in self._omega_cache:
            diagonal = LinearMap.zero(self.dim)
            upper = LinearMap.zero(self.dim)
            lower = LinearMap.zero(self.dim)
            for a in range(1, self.rank + 1):
                diagonal = diagonal + self.two_tensor((a, a), (a, a), i, j)
                for b in range(a + 1, self.rank + 1):
                    upper = upper + self.two_tensor((a, b), (b, a), i, j)
                    lower = lower + self.two_tensor((b, a), (a, b), i, j)
            half_diagonal = diagonal.scale(HALF)
            plus = half_diagonal + upper
            minus = half_diagonal + lower
            self._omega_cache[(i, j)] = (diagonal + upper + lower, plus, minus)
        return self._omega_cache[(i, j)]

    def slot_pairs(self) -> Iterator[tuple[int, int]]:
        return combinations(range(1, self.slot_count + 1), 2)

    def describe(self) -> dict:
        return {"M": self.rank, "N": self.slot_count, "dim": self.dim}


class TensorContext(SlotRealization):
    """Tensor product of N gl_M modules; slot i is factor i."""

    def __init__(self, factors: list[RepSpace]):
        super().__init__()
        if not factors:
            raise ValueError("a tensor product needs at least one factor")
        ranks = {f.rank for f in factors}
        if len(ranks) != 1:
            raise ValueError(f"tensor factors over different ranks {sorted(ranks)}")
        self.factors = list(factors)
        self.rank = factors[0].rank
        self.slot_count = len(factors)
        dims = [f.dim for f in factors]
        self.dim = 1
        for d in dims:
            self.dim *= d
        self._dims = dims

    def _build_slot_generator(self, a: int, b: int, i: int) -> LinearMap:
        left = 1
        for d in self._dims[: i - 1]:
            left *= d
        right = 1
        for d in self._dims[i:]:
            right *= d
        factor = self.factors[i - 1].generator((a, b))
        return LinearMap.identity(left).kron(factor).kron(LinearMap.identity(right))

    def describe(self) -> dict:
        return {**super().describe(), "modules": [f.name for f in self.factors]}

    def __repr__(self) -> str:
        return f"TensorContext(gl_{self.rank}, {[f.name for f in self.factors]})"


def tensor_power(module: RepSpace, count: int) -> TensorContext:
    return TensorContext([module] * count)


# ============================================================================
# Operations
# ============================================================================

def embed_at(generator: Generator, i: int, ctx: SlotRealization) -> LinearMap:
    """id x ... x e_ab x ... x id with e_ab in slot i."""
    return ctx.slot_generator(generator, i)


def coproduct_embed(generator: Generator, ctx: SlotRealization) -> LinearMap:
    return ctx.coproduct(generator)


def casimir_c2(space: Union[RepSpace, SlotRealization]) -> LinearMap:
    """sum_{a,b=1}^M e_ab e_ba on a module or, through Delta^N, on a realization."""
    return space.casimir()


def omega_tensors(ctx: SlotRealization, slots: tuple[int, int]) -> tuple[LinearMap, LinearMap, LinearMap]:
    """(Omega_(ij), Omega+_(ij), Omega-_(ij))."""
    return ctx.omega(*slots)


def flip_operator(rank: int) -> LinearMap:
    """v_a x v_b -> v_b x v_a on C^M x C^M."""
    entries = {(b * rank + a, a * rank + b): 1 for a in range(rank) for b in range(rank)}
    return LinearMap(rank * rank, rank * rank, entries)


def cartan_involution(element: Mapping[Generator, int]) -> dict[Generator, int]:
    """omega(e_ab) = -e_ba, extended linearly."""
    return {(b, a): -c for (a, b), c in element.items()}


# ============================================================================
# Checks
# ============================================================================

def _ctx_parameters(ctx: SlotRealization) -> dict:
    return ctx.describe()


def check_commutation_relations(ctx: SlotRealization) -> CheckReport:
    """Every slot and the coproduct satisfy the gl_M relations; distinct slots commute."""
    violations = []
    for i in range(1, ctx.slot_count + 1):
        for v in relation_violations(ctx.rank, ctx.dim, lambda g, i=i: ctx.slot_generator(g, i)):
            violations.append({"slot": i, **v})
    for v in relation_violations(ctx.rank, ctx.dim, ctx.coproduct):
        violations.append({"slot": "coproduct", **v})
    for i, j in permutations(range(1, ctx.slot_count + 1), 2):
        if i > j:
            continue
        for x in generator_indices(ctx.rank):
            for y in generator_indices(ctx.rank):
                if not commutator(ctx.slot_generator(x, i), ctx.slot_generator(y, j)).is_zero:
                    violations.append({"slots": [i, j], "x": list(x), "y": list(y)})
    return CheckReport.from_outcome(
        "gl.commutation_relations",
        not violations,
        parameters=_ctx_parameters(ctx),
        witness={"violations": violations[:10]},
    )


def check_casimir_centrality(ctx: SlotRealization) -> CheckReport:
    """[Delta(C_2), Delta(e_ab)] = 0 for all generators."""
    casimir = ctx.casimir()
    failing = [list(g) for g in generator_indices(ctx.rank)
               if not commutator(casimir, ctx.coproduct(g)).is_zero]
    return CheckReport.from_outcome(
        "gl.casimir_centrality",
        not failing,
        parameters=_ctx_parameters(ctx),
        witness={"generators": failing},
    )


def check_omega_decomposition(ctx: SlotRealization) -> CheckReport:
    """
    On every slot pair: Omega = Omega+ + Omega-, and
    Omega = 1/2 (C_2 on slots i+j - C_2 on slot i - C_2 on slot j).
    """
    failures = []
    for i, j in ctx.slot_pairs():
        omega, plus, minus = ctx.omega(i, j)
        if omega != plus + minus:
            failures.append({"slots": [i, j], "identity": "omega = plus + minus"})
        pair_casimir = LinearMap.zero(ctx.dim)
        for a, b in generator_indices(ctx.rank):
            left = ctx.slot_generator((a, b), i) + ctx.slot_generator((a, b), j)
            right = ctx.slot_generator((b, a), i) + ctx.slot_generator((b, a), j)
            pair_casimir = pair_casimir + left @ right
        via_casimir = (pair_casimir - ctx.slot_casimir(i) - ctx.slot_casimir(j)).scale(HALF)
        if omega != via_casimir:
            failures.append({"slots": [i, j], "identity": "omega = (C2 pair - C2 i - C2 j)/2"})
    return CheckReport.from_outcome(
        "gl.omega_decomposition",
        not failures,
        parameters=_ctx_parameters(ctx),
        witness={"failures": failures},
    )


def check_flip(rank: int) -> CheckReport:
    """Omega on C^M x C^M is the flip."""
    ctx = tensor_power(vector_rep(rank), 2)
    omega, _, _ = ctx.omega(1, 2)
    flip = flip_operator(rank)
    return CheckReport.from_outcome(
        "gl.omega_flip",
        omega == flip,
        parameters={"M": rank},
        witness={"omega": omega.to_json(), "flip": flip.to_json()},
    )


def check_omega_invariance(ctx: SlotRealization) -> CheckReport:
    """[Omega_(ij), Delta(e_ab)] = 0."""
    failures = []
    for i, j in ctx.slot_pairs():
        omega, _, _ = ctx.omega(i, j)
        for g in generator_indices(ctx.rank):
            if not commutator(omega, ctx.coproduct(g)).is_zero:
                failures.append({"slots": [i, j], "generator": list(g)})
    return CheckReport.from_outcome(
        "gl.omega_invariance",
        not failures,
        parameters=_ctx_parameters(ctx),
        witness={"failures": failures[:10]},
    )


def check_infinitesimal_braid(ctx: SlotRealization) -> CheckReport:
    """
    [Omega_ij, Omega_ik + Omega_jk] = 0 for distinct i, j, k and
    [Omega_ij, Omega_kl] = 0 for disjoint pairs.
    """
    failures = []
    slots = range(1, ctx.slot_count + 1)

    def omega(i: int, j: int) -> LinearMap:
        return ctx.omega(i, j)[0]

    for i, j, k in permutations(slots, 3):
        if not commutator(omega(i, j), omega(i, k) + omega(j, k)).is_zero:
            failures.append({"relation": "triple", "slots": [i, j, k]})
    for (i, j), (k, l) in combinations(list(ctx.slot_pairs()), 2):
        if len({i, j, k, l}) == 4 and not commutator(omega(i, j), omega(k, l)).is_zero:
            failures.append({"relation": "disjoint", "slots": [i, j, k, l]})
    return CheckReport.from_outcome(
        "gl.infinitesimal_braid",
        not failures,
        parameters=_ctx_parameters(ctx),
        witness={"failures": failures[:10]},
    )


def cartan_automorphism_check(ctx: SlotRealization) -> CheckReport:
    """
    (omega x omega)(Omega+-) = Omega-+ on every slot pair, computed by
    replacing each (e_ab)_(i) with -(e_ba)_(i) inside the defining sums;
    plus omega is an involutive automorphism of the structure constants.
    """
    failures = []
    for x in generator_indices(ctx.rank):
        if cartan_involution(cartan_involution({x: 1})) != {x: 1}:
            failures.append({"identity": "involution", "x": list(x)})
        for y in generator_indices(ctx.rank):
            lhs = cartan_involution(structure_bracket(x, y))
            rhs: dict[Generator, int] = {}
            (ox, cx), = cartan_involution({x: 1}).items()
            (oy, cy), = cartan_involution({y: 1}).items()
            for g, c in structure_bracket(ox, oy).items():
                rhs[g] = rhs.get(g, 0) + cx * cy * c
            if lhs != {g: c for g, c in rhs.items() if c}:
                failures.append({"identity": "automorphism", "x": list(x), "y": list(y)})

    def transformed(terms: list[tuple[Fraction, Generator, Generator]], i: int, j: int) -> LinearMap:
        total = LinearMap.zero(ctx.dim)
        for coeff, x, y in terms:
            (ox, cx), = cartan_involution({x: 1}).items()
            (oy, cy), = cartan_involution({y: 1}).items()
            total = total + ctx.two_tensor(ox, oy, i, j).scale(coeff * cx * cy)
        return total

    for i, j in ctx.slot_pairs():
        _, plus, minus = ctx.omega(i, j)
        plus_terms = [(HALF, (a, a), (a, a)) for a in range(1, ctx.rank + 1)]
        minus_terms = list(plus_terms)
        for a in range(1, ctx.rank + 1):
            for b in range(a + 1, ctx.rank + 1):
                plus_terms.append((Fraction(1), (a, b), (b, a)))
                minus_terms.append((Fraction(1), (b, a), (a, b)))
        if transformed(plus_terms, i, j) != minus:
            failures.append({"identity": "omega(plus) = minus", "slots": [i, j]})
        if transformed(minus_terms, i, j) != plus:
            failures.append({"identity": "omega(minus) = plus", "slots": [i, j]})
    return CheckReport.from_outcome(
        "gl.cartan_automorphism",
        not failures,
        parameters=_ctx_parameters(ctx),
        witness={"failures": failures[:10]},
    )
