"""Encoding, worker computation and interpolation decoding for AG polynomial and AG matdot schemes."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union
from warnings import warn

import galois
import numpy as np

from ._constructions import SolutionKind, SolutionPair, construct
from ._exceptions import (
    CrossTermMismatchError,
    DimensionMismatchError,
    DuplicatePlaceError,
    NotEnoughPlacesError,
    PartitionIndivisibleError,
    RankDeficientError,
    SemigroupCurveMismatchError,
    TooFewRespondersError,
)
from ._function_field import (
    BasisRegistry,
    CurveKind,
    CurveModel,
    RationalPlace,
    evaluation_matrix,
    expand,
    get_places,
    monomial_basis,
    tweak_matdot_basis,
    tweak_polynomial_basis,
)
from ._semigroup import NumericalSemigroup

MatrixLike = Union[galois.FieldArray, np.ndarray, Sequence[Sequence[int]]]


@dataclass(frozen=True)
class CodeScheme:
    """A solution pair over a curve, with its frozen post-tweak basis and the N evaluation places."""

    kind: SolutionKind
    curve: CurveModel
    solution: SolutionPair
    registry: BasisRegistry
    places: tuple[RationalPlace, ...]

    @property
    def GF(self) -> type[galois.FieldArray]:  # noqa: N802
        return self.curve.field.GF

    @property
    def N(self) -> int:  # noqa: N802
        return len(self.places)

    @property
    def k(self) -> int:
        return self.solution.k

    @property
    def threshold(self) -> int:
        return self.solution.threshold

    @property
    def partition(self) -> tuple[int, ...]:
        if self.kind is SolutionKind.POLY:
            return (self.solution.m, self.solution.n)
        return (self.solution.m,)

    @cached_property
    def basis_orders(self) -> tuple[int, ...]:
        """The semigroup elements s_0 < ... < s_kappa in [0, k]."""
        return self.curve.semigroup.elements_below(self.k)

    @property
    def block_pairs(self) -> list[tuple[int, int]]:
        """(a_i, b_j) in block order, i major; only defined for polynomial schemes."""
        return [(a, b) for a in self.solution.D_A for b in self.solution.D_B]

    @cached_property
    def cross_terms(self) -> galois.FieldArray:
        """
        Expansion of f_a * f_b over the basis orders, one row per pair of ``block_pairs``.

        After the polynomial tweak each row is the indicator of a + b.
        """
        column_of = {s: index for index, s in enumerate(self.basis_orders)}
        pairs = self.block_pairs
        terms = self.GF.Zeros((len(pairs), len(self.basis_orders)))
        for row, (a, b) in enumerate(pairs):
            for s, coefficient in expand(registry=self.registry, g=self.registry[a] * self.registry[b]).items():
                terms[row, column_of[s]] = coefficient
        return terms

    @cached_property
    def evaluations_A(self) -> galois.FieldArray:
        """f_a(P_i) with one row per a in D_A and one column per place."""
        return evaluation_matrix(registry=self.registry, places=self.places, orders=self.solution.D_A)

    @cached_property
    def evaluations_B(self) -> galois.FieldArray:
        """
        f_b(P_i) with one row per block of B.

        For matdot schemes row i holds the partner d - a_i of the i-th element of D_A.
        """
        if self.kind is SolutionKind.POLY:
            orders = self.solution.D_B
        else:
            orders = [self.solution.matdot_partner(a) for a in self.solution.D_A]
        return evaluation_matrix(registry=self.registry, places=self.places, orders=orders)


@dataclass(frozen=True)
class EncodedShare:
    place_index: int
    A_tilde: galois.FieldArray
    B_tilde: galois.FieldArray


@dataclass(frozen=True)
class WorkerResult:
    place_index: int
    product: galois.FieldArray
    multiplications: int = field(default=0, compare=False)


def _same_semigroup(first: NumericalSemigroup, second: NumericalSemigroup) -> bool:
    bound = max(first.table_bound, second.table_bound)
    return first.conductor == second.conductor and first.elements_below(bound) == second.elements_below(bound)


def registry_bound(curve: CurveModel, solution: SolutionPair) -> int:
    """max(D_A) + max(D_B), plus q0(q0+1) of slack on Hermitian curves."""
    if curve.kind is CurveKind.HERMITIAN:
        return solution.k + curve.q0 * (curve.q0 + 1)  # type: ignore
    return solution.k


def build_scheme(
    kind: Union[str, SolutionKind],
    curve: CurveModel,
    method: str,
    m: int,
    N: int,  # noqa: N803
    n: Optional[int] = None,
    semigroup: Optional[NumericalSemigroup] = None,
) -> CodeScheme:
    """
    Run a construction, tweak and freeze the basis, and select the first N places in canonical order.

    Parameters
    ----------
    kind : str or SolutionKind
        Either "poly" or "matdot".
    curve : CurveModel
    method : str
        A construction name, such as "apery" or "optimal".
    m, n : int
        Partition sizes; n is only used by polynomial schemes.
    N : int
        Number of workers.
    semigroup : NumericalSemigroup, optional
        Must agree with the Weierstrass semigroup of the curve when given.
    """
    kind = SolutionKind(kind) if isinstance(kind, str) else kind
    if semigroup is not None and not _same_semigroup(semigroup, curve.semigroup):
        raise SemigroupCurveMismatchError(
            f"Indicated semigroup {semigroup} is not the Weierstrass semigroup {curve.semigroup} of {curve}!"
        )
    if N > curve.place_count:
        raise NotEnoughPlacesError(
            f"Indicated number of workers ({N}) exceeds the {curve.place_count} places of {curve}!"
        )

    solution = construct(semigroup=curve.semigroup, kind=kind, method=method, m=m, n=n)
    return scheme_from_solution(curve=curve, solution=solution, N=N)


def scheme_from_solution(curve: CurveModel, solution: SolutionPair, N: int) -> CodeScheme:  # noqa: N803
    """Tweak and freeze the basis for an already chosen pair of degree sets."""
    kind = solution.kind
    if not _same_semigroup(solution.semigroup, curve.semigroup):
        raise SemigroupCurveMismatchError(
            f"The degree sets live in {solution.semigroup}, "
            f"not in the Weierstrass semigroup {curve.semigroup} of {curve}!"
        )
    if N > curve.place_count:
        raise NotEnoughPlacesError(
            f"Indicated number of workers ({N}) exceeds the {curve.place_count} places of {curve}!"
        )
    if solution.threshold > N:
        raise NotEnoughPlacesError(
            f"The {solution.method} {kind.value} scheme needs {solution.threshold} workers to decode, "
            f"but only {N} are available!"
        )

    registry = monomial_basis(curve=curve, k_max=registry_bound(curve=curve, solution=solution))
    if kind is SolutionKind.POLY:
        registry = tweak_polynomial_basis(registry=registry, D_A=solution.D_A, D_B=solution.D_B)
    else:
        registry = tweak_matdot_basis(
            registry=registry, D_A=solution.D_A, D_B=solution.D_B, d=solution.d  # type: ignore
        )
    return CodeScheme(
        kind=kind, curve=curve, solution=solution, registry=registry.freeze(), places=get_places(curve)[:N]
    )


def as_field_matrix(scheme: CodeScheme, matrix: MatrixLike) -> galois.FieldArray:
    """Coerce integer codes (or a matrix of the right field) to a 2-D array over the scheme's field."""
    if isinstance(matrix, galois.FieldArray) and type(matrix) is not scheme.GF:
        raise DimensionMismatchError(f"The matrix lives over {type(matrix).name}, not over {scheme.curve.field}!")
    array = scheme.GF(np.asarray(matrix.view(np.ndarray) if isinstance(matrix, galois.FieldArray) else matrix))
    if array.ndim != 2:
        raise DimensionMismatchError(f"Expected a matrix, but received an array of shape {array.shape}!")
    return array


def _check_dimensions(scheme: CodeScheme, A: galois.FieldArray, B: galois.FieldArray) -> None:
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"Cannot multiply matrices of shapes {A.shape} and {B.shape}!")
    m = scheme.solution.m
    if scheme.kind is SolutionKind.POLY:
        n = scheme.solution.n
        if A.shape[0] % m or B.shape[1] % n:
            raise PartitionIndivisibleError(
                f"The rows of A ({A.shape[0]}) must split into m = {m} blocks and the columns of B "
                f"({B.shape[1]}) into n = {n} blocks!"
            )
    elif A.shape[1] % m:
        raise PartitionIndivisibleError(f"The inner dimension ({A.shape[1]}) must split into m = {m} blocks!")


def _combine_blocks(blocks: list[galois.FieldArray], evaluations: galois.FieldArray) -> galois.FieldArray:
    """sum_j evaluations[j, i] * blocks[j] for every place i, as an array of shape (N, *block shape)."""
    block_shape = blocks[0].shape
    flat = type(blocks[0])(np.stack([np.asarray(block.view(np.ndarray)).reshape(-1) for block in blocks]))
    return (evaluations.T @ flat).reshape((evaluations.shape[1], *block_shape))


def encode(scheme: CodeScheme, A: MatrixLike, B: MatrixLike) -> list[EncodedShare]:
    """Evaluate p_A and p_B at every place, shipping blockwise scalar combinations of A and B."""
    A = as_field_matrix(scheme=scheme, matrix=A)
    B = as_field_matrix(scheme=scheme, matrix=B)
    _check_dimensions(scheme=scheme, A=A, B=B)
    m = scheme.solution.m
    if scheme.kind is SolutionKind.POLY:
        n = scheme.solution.n
        row_block, col_block = A.shape[0] // m, B.shape[1] // n
        A_blocks = [A[i * row_block : (i + 1) * row_block, :] for i in range(m)]
        B_blocks = [B[:, j * col_block : (j + 1) * col_block] for j in range(n)]
    else:
        inner_block = A.shape[1] // m
        A_blocks = [A[:, i * inner_block : (i + 1) * inner_block] for i in range(m)]
        B_blocks = [B[i * inner_block : (i + 1) * inner_block, :] for i in range(m)]

    A_shares = _combine_blocks(blocks=A_blocks, evaluations=scheme.evaluations_A)
    B_shares = _combine_blocks(blocks=B_blocks, evaluations=scheme.evaluations_B)
    return [
        EncodedShare(place_index=index, A_tilde=A_shares[index], B_tilde=B_shares[index]) for index in range(scheme.N)
    ]


def worker_multiply(share: EncodedShare) -> WorkerResult:
    """h(P_i) = A_tilde @ B_tilde, counting rows * inner * cols field multiplications."""
    if share.A_tilde.shape[1] != share.B_tilde.shape[0]:
        raise DimensionMismatchError(
            f"Share {share.place_index} has incompatible shapes {share.A_tilde.shape} and {share.B_tilde.shape}!"
        )
    rows, inner = share.A_tilde.shape
    return WorkerResult(
        place_index=share.place_index,
        product=share.A_tilde @ share.B_tilde,
        multiplications=rows * inner * share.B_tilde.shape[1],
    )


def _check_responders(scheme: CodeScheme, responders: Sequence[int]) -> None:
    if len(set(responders)) != len(responders):
        raise DuplicatePlaceError(f"Indicated responders ({list(responders)}) contain duplicate places!")
    if len(responders) < scheme.k + 1:
        raise TooFewRespondersError(
            f"Decoding needs {scheme.k + 1} responders, but only {len(responders)} are available!"
        )
    for index in responders:
        if not 0 <= index < scheme.N:
            raise ValueError(f"Indicated responder ({index}) is not a place index of this scheme (N = {scheme.N})!")


def build_G(scheme: CodeScheme, responders: Sequence[int]) -> galois.FieldArray:  # noqa: N802
    """G[l][i] = f_(s_l)(P_i), one row per basis order in [0, k] and one column per responder."""
    _check_responders(scheme=scheme, responders=responders)
    places = [scheme.places[index] for index in responders]
    return evaluation_matrix(registry=scheme.registry, places=places, orders=scheme.basis_orders)


def right_inverse(G: galois.FieldArray) -> galois.FieldArray:  # noqa: N803
    """A matrix R with G @ R = I, supported on the pivot columns of G."""
    GF = type(G)
    rows, cols = G.shape
    reduced = np.asarray(G.row_reduce().view(np.ndarray))
    pivots = [int(np.flatnonzero(row)[0]) for row in reduced if np.any(row)]
    if len(pivots) < rows:
        raise RankDeficientError(f"The interpolation matrix has rank {len(pivots)} < {rows}!")
    inverse = np.linalg.inv(G[:, pivots])
    R = GF.Zeros((cols, rows))
    R[pivots, :] = inverse
    return R


def decode_and_verify(scheme: CodeScheme, results: Sequence[WorkerResult]) -> tuple[galois.FieldArray, bool]:
    """
    Recover AB from the first k + 1 results in arrival order, and whether the recovered coordinates are consistent.

    Polynomial schemes read the coordinates of f_(a_i + b_j) to fill the block grid. Every other coordinate, at the
    semigroup elements outside the block positions, must equal the sum of the cross terms f_(a_i) * f_(b_j) weighted
    by the recovered blocks; a mismatch means some worker returned a wrong product. Matdot schemes only need the
    coordinate of f_d and are always reported consistent.
    """
    if len(results) < scheme.k + 1:
        raise TooFewRespondersError(
            f"Decoding needs {scheme.k + 1} worker results, but only {len(results)} arrived!"
        )
    indices = [result.place_index for result in results]
    if len(set(indices)) != len(indices):
        raise DuplicatePlaceError(f"Worker results arrived twice for the same place: {indices}!")
    if len(results) > scheme.k + 1:
        warn(
            message=f"Only the first {scheme.k + 1} of {len(results)} worker results are used for decoding.",
            category=UserWarning,
            stacklevel=3,
        )

    chosen = sorted(results[: scheme.k + 1], key=lambda result: result.place_index)
    G = build_G(scheme=scheme, responders=[result.place_index for result in chosen])
    R = right_inverse(G)
    product_shape = chosen[0].product.shape
    H = scheme.GF(np.stack([np.asarray(result.product.view(np.ndarray)).reshape(-1) for result in chosen], axis=1))
    column_of = {s: index for index, s in enumerate(scheme.basis_orders)}

    if scheme.kind is SolutionKind.MATDOT:
        return (H @ R[:, column_of[scheme.solution.d]]).reshape(product_shape), True

    coordinates = H @ R
    blocks = coordinates[:, [column_of[a + b] for a, b in scheme.block_pairs]]
    block_positions = {column_of[a + b] for a, b in scheme.block_pairs}
    others = [column for column in range(len(scheme.basis_orders)) if column not in block_positions]
    expected = blocks @ scheme.cross_terms
    consistent = bool(
        np.array_equal(
            np.asarray(coordinates[:, others].view(np.ndarray)), np.asarray(expected[:, others].view(np.ndarray))
        )
    )

    n = scheme.solution.n
    block_rows, block_cols = product_shape
    AB = scheme.GF.Zeros((scheme.solution.m * block_rows, n * block_cols))
    for index in range(len(scheme.block_pairs)):
        i, j = divmod(index, n)
        AB[i * block_rows : (i + 1) * block_rows, j * block_cols : (j + 1) * block_cols] = blocks[:, index].reshape(
            product_shape
        )
    return AB, consistent


def decode(scheme: CodeScheme, results: Sequence[WorkerResult]) -> galois.FieldArray:
    """Recover AB from the first k + 1 results in arrival order, raising if the cross terms do not add up."""
    AB, consistent = decode_and_verify(scheme=scheme, results=results)
    if not consistent:
        responders = sorted(result.place_index for result in results[: scheme.k + 1])
        raise CrossTermMismatchError(
            f"The coordinates recovered from responders {responders} disagree with the cross terms of the decoded "
            "blocks!"
        )
    return AB


def decode_multiplication_count(scheme: CodeScheme, product_shape: tuple[int, int]) -> int:
    """
    Field multiplications of one decode, computed from the dimensions rather than counted while decoding.

    Each of the product entries takes k + 1 multiplications per recovered coordinate (every basis coordinate for
    polynomial schemes, only f_d for matdot schemes), plus the cube of the number of basis orders for inverting G.
    """
    entries = product_shape[0] * product_shape[1]
    kappa = len(scheme.basis_orders)
    coordinates = kappa if scheme.kind is SolutionKind.POLY else 1
    return entries * (scheme.k + 1) * coordinates + kappa**3


def matrices_equal(first: galois.FieldArray, second: galois.FieldArray) -> bool:
    return first.shape == second.shape and bool(np.array_equal(first.view(np.ndarray), second.view(np.ndarray)))


def reference_product(A: galois.FieldArray, B: galois.FieldArray) -> galois.FieldArray:
    """Schoolbook A @ B."""
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"Cannot multiply matrices of shapes {A.shape} and {B.shape}!")
    return A @ B


def pad_matrix(matrix: galois.FieldArray, row_multiple: int = 1, col_multiple: int = 1) -> galois.FieldArray:
    """Zero-pad a matrix so its dimensions become multiples of the given block counts."""
    rows = -(-matrix.shape[0] // row_multiple) * row_multiple
    cols = -(-matrix.shape[1] // col_multiple) * col_multiple
    padded = type(matrix).Zeros((rows, cols))
    padded[: matrix.shape[0], : matrix.shape[1]] = matrix
    return padded


def pad_for_scheme(
    scheme: CodeScheme, A: galois.FieldArray, B: galois.FieldArray
) -> tuple[galois.FieldArray, galois.FieldArray]:
    m = scheme.solution.m
    if scheme.kind is SolutionKind.POLY:
        return pad_matrix(A, row_multiple=m), pad_matrix(B, col_multiple=scheme.solution.n)
    return pad_matrix(A, col_multiple=m), pad_matrix(B, row_multiple=m)


def run_dmm(
    scheme: CodeScheme,
    A: MatrixLike,
    B: MatrixLike,
    drop: Iterable[int] = (),
    responders: Optional[Sequence[int]] = None,
    pad: bool = False,
) -> tuple[galois.FieldArray, dict]:
    """
    The full pipeline: encode, multiply at every surviving worker, decode and compare against schoolbook AB.

    Parameters
    ----------
    drop : iterable of int
        Place indices of workers that never respond.
    responders : sequence of int, optional
        Arrival order of the workers; defaults to place order.
    pad : bool
        Zero-pad A and B up to divisible sizes and truncate the decoded product.

    Returns
    -------
    product, report
        The decoded AB and a report {threshold, responders_used, ops: {worker_mults, decode_mults}, ok}. ``ok``
        requires consistent cross terms as well as agreement with schoolbook AB.
    """
    A = as_field_matrix(scheme=scheme, matrix=A)
    B = as_field_matrix(scheme=scheme, matrix=B)
    result_shape = (A.shape[0], B.shape[1])
    padded_A, padded_B = pad_for_scheme(scheme=scheme, A=A, B=B) if pad else (A, B)

    shares = encode(scheme=scheme, A=padded_A, B=padded_B)
    dropped = set(drop)
    order = list(responders) if responders is not None else list(range(scheme.N))
    results = [worker_multiply(shares[index]) for index in order if index not in dropped]
    if len(results) < scheme.threshold:
        raise TooFewRespondersError(
            f"Only {len(results)} workers responded, but the recovery threshold is {scheme.threshold}!"
        )
    used = results[: scheme.threshold]
    decoded, consistent = decode_and_verify(scheme=scheme, results=used)
    product = decoded[: result_shape[0], : result_shape[1]]

    report = dict(
        threshold=scheme.threshold,
        responders_used=[result.place_index for result in used],
        ops=dict(
            worker_mults=used[0].multiplications,
            decode_mults=decode_multiplication_count(scheme=scheme, product_shape=used[0].product.shape),
        ),
        ok=consistent and matrices_equal(product, reference_product(A, B)),
    )
    return product, report
