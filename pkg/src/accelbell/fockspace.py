"""Dense complex linear algebra over tensor products of finite-dimensional factors.

States are amplitude vectors (`Ket`) and operators are square matrices
(`DensityOperator`); both carry the ordered factor dimensions of the composite
space they live on, so partial traces and partial transposes never need
external bookkeeping.  Storage is dense row-major complex double precision:
the spaces handled here top out at a few hundred dimensions, where dense
numpy is both the simplest and the fastest option.

Every value is immutable after construction (amplitude buffers are frozen)
and every operation is a pure function, so values can be shared freely across
threads.  Dimension mismatches are hard errors, never broadcasts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

# Absolute tolerance for exact algebraic identities (tensor/trace/transpose
# bookkeeping) versus quantities that pass through an eigendecomposition or
# other spectral machinery, which get less double-precision headroom.
ATOL_ALGEBRAIC = 1e-12
ATOL_SPECTRAL = 1e-9


class NumericalConsistencyError(ArithmeticError):
    """A quantity that must be real came out with a measurable imaginary part."""


class ZeroNormError(ValueError):
    """Normalization was requested for a numerically zero vector."""


@dataclass(frozen=True)
class FactorDims:
    """Ordered dimensions of the tensor factors of a composite space."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims:
            raise ValueError("a composite space needs at least one factor")
        if any(d < 1 for d in self.dims):
            raise ValueError(f"factor dimensions must be >= 1, got {self.dims}")

    @property
    def total(self) -> int:
        """Dimension of the full space: the product of the factor dimensions."""
        return math.prod(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def __getitem__(self, index: int) -> int:
        return self.dims[index]

    def concat(self, other: "FactorDims") -> "FactorDims":
        return FactorDims(self.dims + other.dims)

    def drop(self, indices: Iterable[int]) -> "FactorDims":
        gone = set(indices)
        return FactorDims(tuple(d for i, d in enumerate(self.dims) if i not in gone))


def _frozen_array(values, shape_check) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    shape_check(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Ket:
    """Complex amplitude vector over a tensor product of factors.

    Amplitudes are stored in row-major composite index order, i.e. the order
    produced by a Kronecker product of the factors; `basis_ket` and `tensor`
    are the intended constructors.  A Ket is not required to be normalized
    (truncated expansions deliberately are not); use `normalize` when a unit
    vector is needed.
    """

    amplitudes: np.ndarray
    dims: FactorDims

    def __post_init__(self) -> None:
        def check(arr: np.ndarray) -> None:
            if arr.ndim != 1:
                raise ValueError(f"amplitudes must be one-dimensional, got shape {arr.shape}")
            if arr.size != self.dims.total:
                raise ValueError(
                    f"amplitude length {arr.size} does not match factor dimensions "
                    f"{tuple(self.dims)} (total {self.dims.total})"
                )

        object.__setattr__(self, "amplitudes", _frozen_array(self.amplitudes, check))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "Ket") -> complex:
        """Inner product <self|other> (conjugate-linear in self)."""
        if self.dims != other.dims:
            raise ValueError(f"factor mismatch: {tuple(self.dims)} vs {tuple(other.dims)}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __add__(self, other: "Ket") -> "Ket":
        if self.dims != other.dims:
            raise ValueError(f"factor mismatch: {tuple(self.dims)} vs {tuple(other.dims)}")
        return Ket(self.amplitudes + other.amplitudes, self.dims)

    def __sub__(self, other: "Ket") -> "Ket":
        if self.dims != other.dims:
            raise ValueError(f"factor mismatch: {tuple(self.dims)} vs {tuple(other.dims)}")
        return Ket(self.amplitudes - other.amplitudes, self.dims)

    def __mul__(self, scalar: complex) -> "Ket":
        return Ket(self.amplitudes * scalar, self.dims)

    __rmul__ = __mul__

    def __neg__(self) -> "Ket":
        return Ket(-self.amplitudes, self.dims)


@dataclass(frozen=True)
class DensityOperator:
    """Complex square matrix with factor metadata: a state or an observable.

    The `hermitian` flag is a verified promise, not a hint: constructing an
    operator with the flag set checks max|M - M^dag| < 1e-12 elementwise and
    raises if the matrix does not comply.
    """

    matrix: np.ndarray
    dims: FactorDims
    hermitian: bool = False

    def __post_init__(self) -> None:
        def check(arr: np.ndarray) -> None:
            n = self.dims.total
            if arr.shape != (n, n):
                raise ValueError(
                    f"matrix shape {arr.shape} does not match factor dimensions "
                    f"{tuple(self.dims)} (side {n})"
                )

        object.__setattr__(self, "matrix", _frozen_array(self.matrix, check))
        if self.hermitian:
            deviation = np.abs(self.matrix - self.matrix.conj().T).max()
            if deviation >= ATOL_ALGEBRAIC:
                raise ValueError(
                    f"hermitian flag set but max|M - M^dag| = {deviation:.3e}"
                )

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def normalized(self) -> "DensityOperator":
        """Scale to unit trace.  The trace must be real and nonzero."""
        tr = self.trace()
        if abs(tr) < 1e-15:
            raise ZeroNormError("operator has numerically zero trace")
        if abs(tr.imag) >= ATOL_SPECTRAL:
            raise NumericalConsistencyError(f"trace {tr} is not real")
        return DensityOperator(self.matrix / tr.real, self.dims, hermitian=self.hermitian)

    def as_hermitian(self, atol: float = ATOL_ALGEBRAIC) -> "DensityOperator":
        """Verify hermiticity at `atol` and return the operator with the flag set."""
        deviation = np.abs(self.matrix - self.matrix.conj().T).max()
        if deviation >= atol:
            raise ValueError(f"matrix is not hermitian: max deviation {deviation:.3e}")
        return DensityOperator(self.matrix, self.dims, hermitian=True)

    def __add__(self, other: "DensityOperator") -> "DensityOperator":
        if self.dims != other.dims:
            raise ValueError(f"factor mismatch: {tuple(self.dims)} vs {tuple(other.dims)}")
        return DensityOperator(
            self.matrix + other.matrix, self.dims, hermitian=self.hermitian and other.hermitian
        )

    def __sub__(self, other: "DensityOperator") -> "DensityOperator":
        if self.dims != other.dims:
            raise ValueError(f"factor mismatch: {tuple(self.dims)} vs {tuple(other.dims)}")
        return DensityOperator(
            self.matrix - other.matrix, self.dims, hermitian=self.hermitian and other.hermitian
        )

    def __mul__(self, scalar: complex) -> "DensityOperator":
        keeps_hermitian = self.hermitian and complex(scalar).imag == 0.0
        return DensityOperator(self.matrix * scalar, self.dims, hermitian=keeps_hermitian)

    __rmul__ = __mul__

    def __neg__(self) -> "DensityOperator":
        return DensityOperator(-self.matrix, self.dims, hermitian=self.hermitian)


def _check_factor_indices(dims: FactorDims, indices: Iterable[int]) -> set[int]:
    chosen = set(int(i) for i in indices)
    for i in chosen:
        if not 0 <= i < len(dims):
            raise ValueError(f"factor index {i} out of range for {len(dims)} factors")
    return chosen


def basis_ket(dim: int, n: int) -> Ket:
    """Unit vector |n> on a single factor of the given dimension."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if not 0 <= n < dim:
        raise ValueError(f"occupation index {n} out of range for dimension {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return Ket(amps, FactorDims((dim,)))


def tensor(kets: Sequence[Ket]) -> Ket:
    """Kronecker product of kets, in list order; factor lists concatenate."""
    if not kets:
        raise ValueError("tensor of an empty list")
    amps = reduce(np.kron, (k.amplitudes for k in kets))
    dims = reduce(FactorDims.concat, (k.dims for k in kets))
    return Ket(amps, dims)


def tensor_op(ops: Sequence[DensityOperator]) -> DensityOperator:
    """Kronecker product of operators, in list order."""
    if not ops:
        raise ValueError("tensor of an empty list")
    matrix = reduce(np.kron, (op.matrix for op in ops))
    dims = reduce(FactorDims.concat, (op.dims for op in ops))
    return DensityOperator(matrix, dims, hermitian=all(op.hermitian for op in ops))


def identity(dims: FactorDims | Sequence[int]) -> DensityOperator:
    """Identity operator on the given factor structure."""
    fd = dims if isinstance(dims, FactorDims) else FactorDims(tuple(dims))
    return DensityOperator(np.eye(fd.total, dtype=complex), fd, hermitian=True)


def outer(a: Ket, b: Ket) -> DensityOperator:
    """Outer product |a><b|; the hermitian flag is set only when a equals b."""
    if a.dims != b.dims:
        raise ValueError(f"factor mismatch: {tuple(a.dims)} vs {tuple(b.dims)}")
    same = a is b or np.array_equal(a.amplitudes, b.amplitudes)
    return DensityOperator(np.outer(a.amplitudes, b.amplitudes.conj()), a.dims, hermitian=same)


def partial_trace(rho: DensityOperator, discard: Iterable[int]) -> DensityOperator:
    """Trace out the factors in `discard`, keeping the rest in original order."""
    gone = _check_factor_indices(rho.dims, discard)
    k = len(rho.dims)
    if len(gone) == k:
        raise ValueError("cannot trace out every factor")
    tensor_form = rho.matrix.reshape(*rho.dims, *rho.dims)
    for step, idx in enumerate(sorted(gone, reverse=True)):
        tensor_form = np.trace(tensor_form, axis1=idx, axis2=idx + (k - step))
    kept = rho.dims.drop(gone)
    return DensityOperator(
        tensor_form.reshape(kept.total, kept.total), kept, hermitian=rho.hermitian
    )


def expectation(rho: DensityOperator, obs: DensityOperator) -> float:
    """Real part of tr(rho . obs) for a hermitian observable.

    The imaginary part of the trace is asserted below 1e-9; a larger residual
    indicates the inputs were not what they claimed to be and raises
    `NumericalConsistencyError` rather than silently returning garbage.
    """
    if rho.dims.total != obs.dims.total:
        raise ValueError(
            f"dimension mismatch: state side {rho.dims.total}, observable side {obs.dims.total}"
        )
    _require_hermitian(obs, "observable")
    value = complex(np.einsum("ij,ji->", rho.matrix, obs.matrix))
    if abs(value.imag) >= ATOL_SPECTRAL:
        raise NumericalConsistencyError(
            f"expectation value {value} has imaginary part above {ATOL_SPECTRAL}"
        )
    return float(value.real)


def normalize(psi: Ket) -> Ket:
    """Scale to unit norm, preserving direction."""
    n = psi.norm()
    if n <= 1e-15:
        raise ZeroNormError("cannot normalize a zero vector")
    return Ket(psi.amplitudes / n, psi.dims)


def partial_transpose(rho: DensityOperator, factor: int) -> DensityOperator:
    """Transpose the chosen factor's row/column indices, leaving the rest alone."""
    _check_factor_indices(rho.dims, (factor,))
    k = len(rho.dims)
    n = rho.dims.total
    swapped = rho.matrix.reshape(*rho.dims, *rho.dims).swapaxes(factor, factor + k)
    return DensityOperator(swapped.reshape(n, n), rho.dims, hermitian=rho.hermitian)


def log_negativity(rho: DensityOperator, partition: Iterable[int]) -> float:
    """log2 of the trace norm of the partial transpose across `partition`.

    The input must be hermitian; for a trace-one state the result is >= 0 and
    vanishes exactly on states that stay positive under partial transposition.
    The trace norm is computed from the eigenvalues of the (hermitian) partial
    transpose, which avoids a general SVD.
    """
    _require_hermitian(rho, "density operator")
    part = _check_factor_indices(rho.dims, partition)
    transposed = rho
    for factor in sorted(part):
        transposed = partial_transpose(transposed, factor)
    eigenvalues = np.linalg.eigvalsh(transposed.matrix)
    return float(np.log2(np.abs(eigenvalues).sum()))


def _require_hermitian(op: DensityOperator, role: str) -> None:
    if op.hermitian:
        return
    deviation = np.abs(op.matrix - op.matrix.conj().T).max()
    if deviation >= ATOL_ALGEBRAIC:
        raise ValueError(f"{role} is not hermitian: max|M - M^dag| = {deviation:.3e}")
