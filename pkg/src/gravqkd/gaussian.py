"""Two-mode Gaussian state toolbox.

Covariance matrices are in shot-noise units: vacuum = identity.  A two-mode
state is stored as the 2x2 blocks of

    sigma = [[A, C], [C^T, B]]

with quadrature ordering (x1, p1, x2, p2).  The states produced here all have
the standard form A = a*I, B = b*I, C = c*Z with Z = diag(1, -1), but the
block container and the spectrum routines accept general blocks.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalDomainError

# Phase-space reflection, the correlation pattern of two-mode squeezing.
Z = np.array([[1.0, 0.0], [0.0, -1.0]])

# x-quadrature projector used by homodyne conditioning.
PI_X = np.array([[1.0, 0.0], [0.0, 0.0]])

# Symplectic eigenvalues below 1 - LAMBDA_TOL are treated as unphysical
# rather than as rounding noise.
LAMBDA_TOL = 1e-9


@dataclass
class TwoModeCovariance:
    """Container for the 2x2 blocks of a two-mode covariance matrix.

    :param a_block: covariance of the first mode (2x2).
    :param b_block: covariance of the second mode (2x2).
    :param c_block: cross-correlation block (2x2), upper-right of sigma.
    """

    a_block: np.ndarray
    b_block: np.ndarray
    c_block: np.ndarray

    def __post_init__(self):
        self.a_block = np.asarray(self.a_block, dtype=float)
        self.b_block = np.asarray(self.b_block, dtype=float)
        self.c_block = np.asarray(self.c_block, dtype=float)
        for name in ("a_block", "b_block", "c_block"):
            if getattr(self, name).shape != (2, 2):
                raise DomainError(f"{name} must be 2x2")

    @property
    def matrix(self):
        """Assembled 4x4 covariance matrix."""
        return np.block([[self.a_block, self.c_block],
                         [self.c_block.T, self.b_block]])

    def standard_form(self):
        """Return (a, b, c) for a state in standard form a*I, b*I, c*Z.

        Raises DomainError when the blocks do not have that structure,
        tolerance 1e-12 relative to the largest entry.
        """
        a = self.a_block[0, 0]
        b = self.b_block[0, 0]
        c = self.c_block[0, 0]
        tol = 1e-12 * max(1.0, abs(a), abs(b), abs(c))
        ok = (abs(self.a_block[1, 1] - a) <= tol
              and abs(self.b_block[1, 1] - b) <= tol
              and abs(self.c_block[1, 1] + c) <= tol
              and abs(self.a_block[0, 1]) <= tol and abs(self.a_block[1, 0]) <= tol
              and abs(self.b_block[0, 1]) <= tol and abs(self.b_block[1, 0]) <= tol
              and abs(self.c_block[0, 1]) <= tol and abs(self.c_block[1, 0]) <= tol)
        if not ok:
            raise DomainError("state is not in standard form (a*I, b*I, c*Z)")
        return a, b, c


def make_tmsv(variance):
    """Two-mode squeezed vacuum with quadrature variance V per mode.

    Blocks are V*I, V*I, sqrt(V^2-1)*Z.  V = 1 is the two-mode vacuum.

    :param variance: V >= 1, shot-noise units.
    """
    v = float(variance)
    if v < 1.0:
        raise DomainError(f"TMSV variance must be >= 1, got {v!r}")
    c = math.sqrt(v * v - 1.0)
    return TwoModeCovariance(v * np.eye(2), v * np.eye(2), c * Z)


def apply_thermal_loss(state, transmissivity, added_noise):
    """Send the second mode through a thermal-loss channel.

    The channel contracts amplitudes by sqrt(T) and adds noise referred to
    the channel input:  B -> T*(B + chi*I), C -> sqrt(T)*C.  `added_noise`
    is that input-referred chi; pass (1-T)/T + eps for a channel whose
    environment carries excess noise eps at the output.

    :param state: TwoModeCovariance before the channel.
    :param transmissivity: T in (0, 1].
    :param added_noise: chi >= 0, shot-noise units at the channel input.
    """
    t = float(transmissivity)
    chi = float(added_noise)
    if not 0.0 < t <= 1.0:
        raise DomainError(f"transmissivity must be in (0, 1], got {t!r}")
    if chi < 0.0:
        raise DomainError(f"added noise must be >= 0, got {chi!r}")
    return TwoModeCovariance(
        state.a_block.copy(),
        t * (state.b_block + chi * np.eye(2)),
        math.sqrt(t) * state.c_block,
    )


def _matched_ancilla_variance(state):
    # The mode-mismatch ancilla is the channel output for a vacuum input.
    # For a standard-form state produced by apply_thermal_loss from a TMSV,
    # that variance is recoverable from the blocks alone:
    #   b = T*(V + chi), c^2 = T*(V^2 - 1)  =>  b - c^2/(a + 1) = T*(1 + chi).
    a, b, c = state.standard_form()
    return b - c * c / (a + 1.0)


def apply_overlap_beamsplitter(state, overlap, ancilla_variance=None):
    """Mix the second mode with a matched-noise ancilla on a beamsplitter.

    Models imperfect wave-packet overlap Theta at the receiver: only the
    matched fraction of the field interferes with the local oscillator.  The
    lost fraction is replaced by light that crossed the same channel, so the
    ancilla is thermal with the channel's vacuum-output variance unless an
    explicit `ancilla_variance` is given.

    Implemented constructively: embed (A, B, ancilla) in a 6x6 covariance,
    apply the beamsplitter symplectic on the last two modes, discard the
    ancilla.

    :param state: TwoModeCovariance after the loss channel.
    :param overlap: Theta in [0, 1], beamsplitter amplitude.
    :param ancilla_variance: optional variance of the admixed mode.
    :return: TwoModeCovariance with blocks (A, Theta*C, Theta^2*B + (1-Theta^2)*nu*I).
    """
    th = float(overlap)
    if not 0.0 <= th <= 1.0:
        raise DomainError(f"overlap must be in [0, 1], got {th!r}")
    nu = _matched_ancilla_variance(state) if ancilla_variance is None else float(ancilla_variance)
    if nu <= 0.0:
        raise DomainError(f"ancilla variance must be positive, got {nu!r}")

    full = np.zeros((6, 6))
    full[0:2, 0:2] = state.a_block
    full[2:4, 2:4] = state.b_block
    full[0:2, 2:4] = state.c_block
    full[2:4, 0:2] = state.c_block.T
    full[4:6, 4:6] = nu * np.eye(2)

    sb = math.sqrt(1.0 - th * th)
    bs = np.block([[th * np.eye(2), sb * np.eye(2)],
                   [-sb * np.eye(2), th * np.eye(2)]])
    y = np.eye(6)
    y[2:6, 2:6] = bs
    out = y.T @ full @ y

    return TwoModeCovariance(out[0:2, 0:2], out[2:4, 2:4], out[0:2, 2:4])


def overlap_beamsplitter_closed_form(state, overlap, ancilla_variance=None):
    """Block-level shortcut for apply_overlap_beamsplitter.

    A -> A, C -> Theta*C, B -> Theta^2*B + (1-Theta^2)*nu*I.  Kept separate
    so the constructive path can be tested against it.
    """
    th = float(overlap)
    if not 0.0 <= th <= 1.0:
        raise DomainError(f"overlap must be in [0, 1], got {th!r}")
    nu = _matched_ancilla_variance(state) if ancilla_variance is None else float(ancilla_variance)
    return TwoModeCovariance(
        state.a_block.copy(),
        th * th * state.b_block + (1.0 - th * th) * nu * np.eye(2),
        th * state.c_block,
    )


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a two-mode state plus the invariants.

    delta_invariant is det A + det B + 2 det C and det_invariant is
    sqrt(det sigma); both scale as variance squared and satisfy
    lambda_{1,2}^2 = (delta +- sqrt(delta^2 - 4*det_invariant^2)) / 2.
    For a pure state lambda1 = lambda2 = 1 and det sigma = 1.
    """

    lambda1: float
    lambda2: float
    delta_invariant: float
    det_invariant: float


# Two-mode symplectic form for ordering (x1, p1, x2, p2).
OMEGA = np.array([[0.0, 1.0, 0.0, 0.0],
                  [-1.0, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0, 1.0],
                  [0.0, 0.0, -1.0, 0.0]])


def _clamped_sqrt(value, scale, what):
    # Rounding can push a mathematically non-negative radicand slightly
    # below zero; anything worse than the scaled tolerance is a real
    # domain violation and must surface.
    tol = LAMBDA_TOL * max(1.0, abs(scale))
    if value < -tol:
        raise NumericalDomainError(f"{what} is negative beyond rounding: {value!r}")
    return math.sqrt(max(value, 0.0))


def _det2(m):
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _check_physical(lam2):
    if lam2 < 1.0 - LAMBDA_TOL:
        raise NumericalDomainError(
            f"unphysical state: smallest symplectic eigenvalue {lam2!r} < 1")


def spectrum_from_standard_form(a, b, c):
    """Symplectic eigenvalues for a state with blocks a*I, b*I, c*Z.

    The discriminant delta^2 - 4 det(sigma) factors exactly as

        (a - b)^2 * ((a + b)^2 - 4 c^2)

    for this block structure.  The factored form is used because the
    unfactored difference cancels catastrophically for near-degenerate
    (near-pure) spectra: a pure V = 10 state evaluated the naive way
    loses eight digits of lambda.

    :param a: first-mode variance.
    :param b: second-mode variance.
    :param c: cross-correlation amplitude (sign irrelevant).
    :return: SymplecticSpectrum; raises when lambda2 < 1 - 1e-9.
    """
    a = float(a)
    b = float(b)
    c = float(c)
    delta = a * a + b * b - 2.0 * c * c
    # sqrt(det sigma); the x-quadrature submatrix alone forces ab >= c^2
    d = a * b - c * c
    if d < -LAMBDA_TOL * max(1.0, a * b):
        raise NumericalDomainError(f"invalid covariance: a*b - c^2 = {d!r} < 0")
    d = max(d, 0.0)
    disc = abs(a - b) * _clamped_sqrt(
        (a + b - 2.0 * c) * (a + b + 2.0 * c), (a + b) ** 2, "spectrum discriminant")
    lam1 = _clamped_sqrt((delta + disc) / 2.0, delta, "lambda1^2")
    # lambda1*lambda2 = sqrt(det sigma) is better conditioned than
    # (delta - disc)/2
    lam2 = d / lam1 if lam1 > 0.0 else 0.0
    _check_physical(lam2)
    return SymplecticSpectrum(lam1, lam2, delta, d)


def _spectrum_general(state):
    # Williamson eigenvalues for arbitrary blocks: the singular values of
    # sqrt(sigma) Omega sqrt(sigma) are (lambda1, lambda1, lambda2, lambda2).
    # Backward-stable, unlike the invariant route, but only needed off the
    # standard form.
    sigma = state.matrix
    evals, evecs = np.linalg.eigh(0.5 * (sigma + sigma.T))
    if evals[0] <= 0.0:
        raise NumericalDomainError(
            f"covariance matrix is not positive definite (eigenvalue {evals[0]!r})")
    root = (evecs * np.sqrt(evals)) @ evecs.T
    sv = np.linalg.svd(root @ OMEGA @ root, compute_uv=False)
    lam1 = 0.5 * (sv[0] + sv[1])
    lam2 = 0.5 * (sv[2] + sv[3])
    _check_physical(lam2)
    delta = _det2(state.a_block) + _det2(state.b_block) + 2.0 * _det2(state.c_block)
    return SymplecticSpectrum(lam1, lam2, delta, lam1 * lam2)


def symplectic_spectrum(state):
    """Symplectic eigenvalues lambda1 >= lambda2 of a two-mode covariance.

    Standard-form states (every state this module constructs) go through
    the exactly factored invariant formulas; anything else falls back to
    a Williamson decomposition of the full matrix.  Physical states have
    lambda2 >= 1; values below 1 - 1e-9 raise.
    """
    try:
        a, b, c = state.standard_form()
    except DomainError:
        return _spectrum_general(state)
    return spectrum_from_standard_form(a, b, c)


def conditional_after_homodyne(state, measured=0, convention="det"):
    """Covariance of the kept mode after x-homodyne of the other, plus its
    spectrum value.

    Homodyne of the x quadrature of mode `measured` (0 or 1) maps the kept
    mode's covariance to  K - C (Pi M Pi)^+ C^T, which for invertible M_xx
    reduces to K - C Pi C^T / M_xx.

    :param state: TwoModeCovariance.
    :param measured: index of the measured mode, 0 or 1.
    :param convention: how to read the spectrum value off the conditional
        matrix, see conditional_eigenvalue.
    :return: (2x2 conditional covariance, eigenvalue per convention).
    """
    if measured == 0:
        kept, cross, meas = state.b_block, state.c_block.T, state.a_block
    elif measured == 1:
        kept, cross, meas = state.a_block, state.c_block, state.b_block
    else:
        raise DomainError(f"measured must be 0 or 1, got {measured!r}")
    m_xx = meas[0, 0]
    if m_xx <= 0.0:
        raise NumericalDomainError(f"measured x variance must be positive, got {m_xx!r}")
    cond = kept - (cross @ PI_X @ cross.T) / m_xx
    return cond, conditional_eigenvalue(cond, convention)


def conditional_eigenvalue(conditional, convention="det"):
    """Spectrum value assigned to a post-measurement single-mode covariance.

    convention "det": the symplectic eigenvalue sqrt(det) of the conditional
    matrix.  convention "diagonal": the unmeasured-quadrature diagonal entry
    conditional[1, 1], which ignores the off-diagonal structure and reads the
    p-p variance directly.
    """
    cond = np.asarray(conditional, dtype=float)
    if convention == "det":
        det = float(np.linalg.det(cond))
        lam = _clamped_sqrt(det, abs(cond[0, 0] * cond[1, 1]), "det of conditional state")
    elif convention == "diagonal":
        lam = float(cond[1, 1])
    else:
        raise DomainError(f"unknown lambda3 convention {convention!r}")
    if lam < 1.0 - LAMBDA_TOL:
        raise NumericalDomainError(
            f"unphysical conditional state: eigenvalue {lam!r} < 1")
    return lam


def entropy_g(x, tol=LAMBDA_TOL):
    """Von Neumann entropy of a thermal state with symplectic eigenvalue x.

    g(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), in bits.
    g(1) = 0 (pure state): the 0*log 0 limit is taken by an explicit
    branch covering [1 - tol, 1 + 1e-12], which also absorbs rounding
    noise around a pure eigenvalue.

    :param x: symplectic eigenvalue, >= 1 up to rounding.
    :param tol: how far below 1 still counts as rounding noise.
    """
    x = float(x)
    if x < 1.0 - tol:
        raise NumericalDomainError(f"entropy argument {x!r} < 1 beyond rounding")
    if x <= 1.0 + 1e-12:
        return 0.0
    xp = (x + 1.0) / 2.0
    xm = (x - 1.0) / 2.0
    return xp * math.log2(xp) - xm * math.log2(xm)
