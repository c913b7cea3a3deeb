"""Friend-in-a-box Bell experiment: states, observables, CHSH statistic.

Two friends (C and D) each measure one mode of an entangled two-mode bosonic
field inside sealed laboratories; two outside agents treat each mode+lab pair
as a single quantum system and run a CHSH test across the two wings.  Each
wing carries a pair of binary observables patterned on Pauli z and x:

    O_1 = |g><g| - |e><e|          O_2 = |g><e| + |e><g|

built from the "friend saw vacuum" and "friend saw one particle" branch
vectors of that wing.

Three configurations:

* ``inertial``  -- both wings at rest; factors (2, 2, 2, 2) ordered
                   (A field, C lab, B field, D lab).
* ``compat``    -- D's wing uniformly accelerated, its field handled by the
                   single-factor `rindler.*_compat` builders, every factor
                   (labs included) padded to the ladder size N; factors
                   (N, N, N, N).  Nothing is renormalized anywhere in this
                   mode: the correlators are taken directly on the
                   subnormalized branch state.  This arithmetic is the
                   regression target for the default sweep.
* ``faithful``  -- D's wing accelerated with the full two-wedge expansion;
                   factors (N, 2, N, N, 2) ordered (A field, C lab, wedge I,
                   wedge II, D lab).  Wedge II is causally out of reach, so
                   the branch state is trace-normalized and wedge II traced
                   out before correlators.

In faithful mode the accelerated wing's observables can be read two ways,
selected by ``bob_observables``:

* ``global``   -- operators built from the raw two-wedge branch vectors on
                  (wedge I, wedge II, D lab); correlators are then pure-state
                  expectations on the normalized five-factor state.
* ``reduced``  -- branch vectors contracted onto (wedge I, D lab) by dropping
                  the wedge-II ket of each ladder term, then orthonormalized
                  (g first, e against g); correlators are tr(rho_I . A x B)
                  on the wedge-II-traced state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fockspace import (
    ATOL_SPECTRAL,
    DensityOperator,
    FactorDims,
    Ket,
    NumericalConsistencyError,
    basis_ket,
    expectation,
    log_negativity,
    normalize,
    outer,
    partial_trace,
    tensor,
    tensor_op,
)
from .rindler import (
    TruncationSpec,
    particle_compat,
    particle_two_mode,
    vacuum_compat,
    vacuum_two_mode,
)

MODES = ("inertial", "compat", "faithful")
BOB_OBSERVABLE_CHOICES = ("global", "reduced")

# Factor index of wedge II in the faithful five-factor layout.
WEDGE_II = 3

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class ExperimentConfig:
    """One CHSH evaluation: mixing angle, truncation, squeeze, and mode."""

    mode: str = "inertial"
    theta: float = math.pi / 4
    r: float = 0.0
    trunc: TruncationSpec = TruncationSpec.fixed(3)
    bob_observables: str = "global"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta}")
        if not math.isfinite(self.r) or self.r < 0.0:
            raise ValueError(f"squeeze parameter must be finite and >= 0, got {self.r}")
        if self.bob_observables not in BOB_OBSERVABLE_CHOICES:
            raise ValueError(
                f"unknown bob_observables {self.bob_observables!r}; "
                f"expected one of {BOB_OBSERVABLE_CHOICES}"
            )
        if self.bob_observables == "reduced" and self.mode != "faithful":
            raise ValueError("reduced observables only apply to faithful mode")

    @property
    def n_levels(self) -> int:
        """Ladder dimension at this configuration's squeeze parameter."""
        return self.trunc.level(self.r)


@dataclass(frozen=True)
class ChshResult:
    """The four correlators (<A1B1>, <A1B2>, <A2B1>, <A2B2>) and the statistic.

    s = |E11 + E12 + E21 - E22|, the absolute-value convention.
    """

    correlators: tuple[float, float, float, float]
    s: float


def friend_composite_state() -> Ket:
    """(|0>|F0> + |1>|F1>)/sqrt(2) on factors (2, 2): field mode, then memory."""
    zero, one = basis_ket(2, 0), basis_ket(2, 1)
    return (tensor([zero, zero]) + tensor([one, one])) * _SQRT_HALF


def bell_basis() -> tuple[Ket, Ket, Ket, Ket]:
    """Orthonormal Bell states (phi+, phi-, psi+, psi-) of the mode-memory pair."""
    zero, one = basis_ket(2, 0), basis_ket(2, 1)
    zz, oo = tensor([zero, zero]), tensor([one, one])
    zo, oz = tensor([zero, one]), tensor([one, zero])
    return (
        (zz + oo) * _SQRT_HALF,
        (zz - oo) * _SQRT_HALF,
        (zo + oz) * _SQRT_HALF,
        (zo - oz) * _SQRT_HALF,
    )


def schmidt_rank(psi: Ket, n_left: int, atol: float = ATOL_SPECTRAL) -> int:
    """Schmidt rank across the cut after the first `n_left` factors."""
    if not 0 < n_left < len(psi.dims):
        raise ValueError(f"cut must leave factors on both sides, got {n_left}")
    d_left = math.prod(psi.dims[i] for i in range(n_left))
    singulars = np.linalg.svd(
        psi.amplitudes.reshape(d_left, psi.dims.total // d_left), compute_uv=False
    )
    return int(np.count_nonzero(singulars > atol))


def message_factorization_check(message_dim: int) -> bool:
    """Attach an outcome-independent message to the friend state; check it factors.

    The message ket is a fixed basis state of the given dimension, so the
    joint state should always be Schmidt rank 1 across the (mode+memory |
    message) cut; returns that verdict.
    """
    if message_dim < 1:
        raise ValueError(f"message dimension must be positive, got {message_dim}")
    joint = tensor([friend_composite_state(), basis_ket(message_dim, 0)])
    return schmidt_rank(joint, 2) == 1


def initial_field_state(theta: float) -> Ket:
    """-sin(theta/2)|phi-> + cos(theta/2)|psi+> on the two field modes (2, 2)."""
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta}")
    zero, one = basis_ket(2, 0), basis_ket(2, 1)
    phi_minus = (tensor([zero, zero]) - tensor([one, one])) * _SQRT_HALF
    psi_plus = (tensor([zero, one]) + tensor([one, zero])) * _SQRT_HALF
    return (-math.sin(theta / 2.0)) * phi_minus + math.cos(theta / 2.0) * psi_plus


def _branch_vectors(config: ExperimentConfig) -> tuple[Ket, Ket, Ket, Ket]:
    """(A_g, A_e, B_g, B_e) for the configured mode.

    A vectors are (field, lab) pairs on the inertial wing; B vectors carry
    whatever field representation the mode dictates plus D's lab.  In the
    accelerated modes the B vectors are subnormalized for r > 0.
    """
    if config.mode == "inertial":
        a_g = tensor([basis_ket(2, 0), basis_ket(2, 0)])
        a_e = tensor([basis_ket(2, 1), basis_ket(2, 1)])
        b_g = tensor([basis_ket(2, 0), basis_ket(2, 0)])
        b_e = tensor([basis_ket(2, 1), basis_ket(2, 1)])
    elif config.mode == "compat":
        n = config.n_levels
        a_g = tensor([basis_ket(n, 0), basis_ket(n, 0)])
        a_e = tensor([basis_ket(n, 1), basis_ket(n, 1)])
        b_g = tensor([vacuum_compat(n, config.r), basis_ket(n, 0)])
        b_e = tensor([particle_compat(n, config.r), basis_ket(n, 1)])
    else:
        n = config.n_levels
        a_g = tensor([basis_ket(n, 0), basis_ket(2, 0)])
        a_e = tensor([basis_ket(n, 1), basis_ket(2, 1)])
        b_g = tensor([vacuum_two_mode(n, config.r), basis_ket(2, 0)])
        b_e = tensor([particle_two_mode(n, config.r), basis_ket(2, 1)])
    return a_g, a_e, b_g, b_e


def post_measurement_state(config: ExperimentConfig) -> Ket:
    """Branch state after both friends have measured, before any tracing.

    -sin(theta/2) (|A_g B_g> - |A_e B_e|)/sqrt(2)
    +cos(theta/2) (|A_g B_e> + |A_e B_g|)/sqrt(2)

    Unit norm in inertial mode; subnormalized in the accelerated modes for
    r > 0 (the truncation deficit of the B vectors), and deliberately left so.
    """
    a_g, a_e, b_g, b_e = _branch_vectors(config)
    phi_plus = (tensor([a_g, b_g]) - tensor([a_e, b_e])) * _SQRT_HALF
    psi_minus = (tensor([a_g, b_e]) + tensor([a_e, b_g])) * _SQRT_HALF
    s, c = math.sin(config.theta / 2.0), math.cos(config.theta / 2.0)
    return (-s) * phi_plus + c * psi_minus


def _reduced_bob_vectors(config: ExperimentConfig) -> tuple[Ket, Ket]:
    """Wedge-II-contracted B vectors, orthonormalized on (wedge I, D lab).

    Each ladder term of the two-wedge vectors carries a distinct wedge-II
    basis ket, so dropping that ket (keeping the coefficient on the wedge-I
    side) is well defined term by term.  The g vector is normalized first,
    then e is orthogonalized against it and normalized; with orthogonal lab
    states the orthogonalization step is a no-op, but the order is fixed for
    determinism.
    """
    n, r = config.n_levels, config.r
    t, ch = math.tanh(r), math.cosh(r)
    g = np.zeros((n, 2), dtype=complex)
    e = np.zeros((n, 2), dtype=complex)
    for m in range(n):
        g[m, 0] = t**m / ch
    for m in range(n - 1):
        e[m + 1, 1] = t**m * math.sqrt(m + 1) / ch**2
    dims = FactorDims((n, 2))
    g_ket = normalize(Ket(g.reshape(-1), dims))
    e_ket = Ket(e.reshape(-1), dims)
    e_ket = normalize(e_ket - g_ket.inner(e_ket) * g_ket)
    return g_ket, e_ket


def _pauli_pair(g: Ket, e: Ket) -> tuple[DensityOperator, DensityOperator]:
    o1 = (outer(g, g) - outer(e, e)).as_hermitian()
    o2 = (outer(g, e) + outer(e, g)).as_hermitian()
    return o1, o2


def observables(
    config: ExperimentConfig,
) -> tuple[DensityOperator, DensityOperator, DensityOperator, DensityOperator]:
    """(A1, A2, B1, B2) built from the same branch vectors as the state.

    A1/B1 are the z-patterned projector differences, A2/B2 the x-patterned
    flips.  In faithful mode B1/B2 act on (wedge I, wedge II, D lab) under
    ``global`` and on (wedge I, D lab) under ``reduced``.
    """
    a_g, a_e, b_g, b_e = _branch_vectors(config)
    a1, a2 = _pauli_pair(a_g, a_e)
    if config.mode == "faithful" and config.bob_observables == "reduced":
        b_g, b_e = _reduced_bob_vectors(config)
    b1, b2 = _pauli_pair(b_g, b_e)
    return a1, a2, b1, b2


def _real_part(value: complex) -> float:
    if abs(value.imag) >= ATOL_SPECTRAL:
        raise NumericalConsistencyError(
            f"correlator {value} has imaginary part above {ATOL_SPECTRAL}"
        )
    return float(value.real)


def _pure_correlator(psi: Ket, op_a: DensityOperator, op_b: DensityOperator) -> float:
    """<psi|(A x B)|psi>.real without materializing the Kronecker product."""
    block = psi.amplitudes.reshape(op_a.dims.total, op_b.dims.total)
    acted = (op_a.matrix @ block @ op_b.matrix.T).reshape(-1)
    return _real_part(complex(np.vdot(psi.amplitudes, acted)))


def _result(correlators: list[float]) -> ChshResult:
    e11, e12, e21, e22 = correlators
    return ChshResult((e11, e12, e21, e22), abs(e11 + e12 + e21 - e22))


def chsh(config: ExperimentConfig) -> ChshResult:
    """CHSH correlators and statistic for the configured mode.

    Inertial and compat correlators are pure-state expectations on the branch
    state exactly as built (compat never normalizes).  Faithful correlators
    are taken on the trace-normalized state: via tr(rho_I . A x B) after
    tracing out wedge II under ``reduced``, or as pure-state expectations of
    the wedge-II-inclusive operators under ``global``.
    """
    psi = post_measurement_state(config)
    if config.mode == "faithful" and config.bob_observables == "reduced":
        rho_region_one = partial_trace(outer(psi, psi), {WEDGE_II})
        return chsh_from_density(rho_region_one, config)
    a1, a2, b1, b2 = observables(config)
    if config.mode == "faithful":
        psi = normalize(psi)
    return _result(
        [
            _pure_correlator(psi, a1, b1),
            _pure_correlator(psi, a1, b2),
            _pure_correlator(psi, a2, b1),
            _pure_correlator(psi, a2, b2),
        ]
    )


def chsh_from_density(rho_region_one: DensityOperator, config: ExperimentConfig) -> ChshResult:
    """CHSH statistic evaluated on a wedge-II-traced density operator.

    Faithful mode only.  The operator must live on (A field, C lab, wedge I,
    D lab) = (N, 2, N, 2); it may carry any positive trace (the truncation
    deficit), and is trace-normalized before taking correlators.  B operators
    are the reduced ones: nothing supported on wedge II can act here.
    """
    if config.mode != "faithful":
        raise ValueError("a wedge-II-traced density applies to faithful mode only")
    n = config.n_levels
    expected = FactorDims((n, 2, n, 2))
    if rho_region_one.dims != expected:
        raise ValueError(
            f"density factors {tuple(rho_region_one.dims)} do not match {tuple(expected)}"
        )
    a_g = tensor([basis_ket(n, 0), basis_ket(2, 0)])
    a_e = tensor([basis_ket(n, 1), basis_ket(2, 1)])
    a1, a2 = _pauli_pair(a_g, a_e)
    b1, b2 = _pauli_pair(*_reduced_bob_vectors(config))
    rho = rho_region_one.normalized()
    return _result(
        [
            expectation(rho, tensor_op([a1, b1])),
            expectation(rho, tensor_op([a1, b2])),
            expectation(rho, tensor_op([a2, b1])),
            expectation(rho, tensor_op([a2, b2])),
        ]
    )


def termwise_reduced_density(config: ExperimentConfig) -> DensityOperator:
    """Wedge-II-traced density operator assembled term by term.

    Independent of the generic `partial_trace` route: the sixteen outer
    products of branch vectors are written out with their sin/cos(theta/2)
    weights, and the wedge-II contraction of each B-side outer product is an
    explicit ladder sum over occupation numbers.  Intended as an oracle to
    cross-check the generic reduction; trace equals the squared norm of the
    untraced branch state.
    """
    if config.mode != "faithful":
        raise ValueError("the term-by-term reduction applies to faithful mode only")
    n, r = config.n_levels, config.r
    t, ch = math.tanh(r), math.cosh(r)
    s, c = math.sin(config.theta / 2.0), math.cos(config.theta / 2.0)

    d0, d1 = basis_ket(2, 0), basis_ket(2, 1)
    vac_coeff = [t**m / ch for m in range(n)]
    part_coeff = [t**m * math.sqrt(m + 1) / ch**2 for m in range(n - 1)]

    def wedge_one(occupation: int, lab: Ket) -> Ket:
        return tensor([basis_ket(n, occupation), lab])

    def opsum(terms: list[DensityOperator]) -> DensityOperator:
        total = terms[0]
        for term in terms[1:]:
            total = total + term
        return total

    # Wedge-II contractions of |B_y><B_y'|: diagonal in the wedge-II index, so
    # each surviving term pairs ladder coefficients with matching occupation.
    contractions = {
        "gg": opsum(
            [vac_coeff[m] * vac_coeff[m] * outer(wedge_one(m, d0), wedge_one(m, d0))
             for m in range(n)]
        ),
        "ge": opsum(
            [vac_coeff[m] * part_coeff[m] * outer(wedge_one(m, d0), wedge_one(m + 1, d1))
             for m in range(n - 1)]
        ),
        "eg": opsum(
            [part_coeff[m] * vac_coeff[m] * outer(wedge_one(m + 1, d1), wedge_one(m, d0))
             for m in range(n - 1)]
        ),
        "ee": opsum(
            [part_coeff[m] * part_coeff[m] * outer(wedge_one(m + 1, d1), wedge_one(m + 1, d1))
             for m in range(n - 1)]
        ),
    }

    alice = {
        "g": tensor([basis_ket(n, 0), basis_ket(2, 0)]),
        "e": tensor([basis_ket(n, 1), basis_ket(2, 1)]),
    }
    weights = {
        ("g", "g", "g", "g"): s * s / 2, ("g", "g", "e", "e"): -s * s / 2,
        ("g", "g", "g", "e"): -s * c / 2, ("g", "g", "e", "g"): -s * c / 2,
        ("e", "e", "g", "g"): -s * s / 2, ("e", "e", "e", "e"): s * s / 2,
        ("e", "e", "g", "e"): s * c / 2, ("e", "e", "e", "g"): s * c / 2,
        ("g", "e", "g", "g"): -s * c / 2, ("g", "e", "e", "e"): s * c / 2,
        ("g", "e", "g", "e"): c * c / 2, ("g", "e", "e", "g"): c * c / 2,
        ("e", "g", "g", "g"): -s * c / 2, ("e", "g", "e", "e"): s * c / 2,
        ("e", "g", "g", "e"): c * c / 2, ("e", "g", "e", "g"): c * c / 2,
    }

    total = None
    for (ax, by, axp, byp), weight in weights.items():
        term = weight * tensor_op([outer(alice[ax], alice[axp]), contractions[by + byp]])
        total = term if total is None else total + term
    return DensityOperator(total.matrix, total.dims, hermitian=True)


def entanglement_curve(config: ExperimentConfig) -> float:
    """Log-negativity of the wedge-II-traced field pair across (A mode | wedge I).

    Computed on the field sector alone, before the friends' measurements tie
    the labs to the field: carrying the lab factors through the trace would
    classically decohere the pair (memories are perfectly correlated with
    occupations) and pin the negativity at zero.  The field-sector curve is
    the one comparable to the known monotone loss of two-mode entanglement
    with acceleration; the wedge-II-traced state is trace-normalized first.
    """
    if config.mode != "faithful":
        raise ValueError("the entanglement curve applies to faithful mode only")
    n = config.n_levels
    zero, one = basis_ket(n, 0), basis_ket(n, 1)
    vac = vacuum_two_mode(n, config.r)
    part = particle_two_mode(n, config.r)
    phi_minus = (tensor([zero, vac]) - tensor([one, part])) * _SQRT_HALF
    psi_plus = (tensor([zero, part]) + tensor([one, vac])) * _SQRT_HALF
    s, c = math.sin(config.theta / 2.0), math.cos(config.theta / 2.0)
    psi = (-s) * phi_minus + c * psi_plus
    rho = partial_trace(outer(psi, psi), {2}).normalized()
    return log_negativity(rho, {0})
