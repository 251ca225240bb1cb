"""Local Fourier analysis of the Vanka-based Braess-Sarazin smoother.

Fourier modes are position based, ``exp(i theta . x / h)`` with ``x`` the
physical location of each unknown, so the staggered half-cell offsets appear
as ``sin(theta/2)`` factors in the gradient blocks and as sign factors in the
transfer symbols of the aliased harmonics.

All symbol routines broadcast over arrays of frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .vanka import vanka_coefficients

HARMONICS = np.array([(0.0, 0.0), (np.pi, 0.0), (0.0, np.pi), (np.pi, np.pi)])

# coarse-point position (in fine cells, mod 2) of the u, v, p unknowns
_COARSE_PARITY = np.array([(0.0, 1.0), (1.0, 0.0), (1.0, 1.0)])


# -- closed forms -------------------------------------------------------------


def d1(r):
    """Largest high-frequency eigenvalue of ``M^{-1} K``."""
    return (8.0 + r) / (6.0 + r)


def d2(r):
    """Smallest high-frequency eigenvalue of ``M^{-1} K``."""
    return (3.0 + r) / (4.0 + r)


def omega_opt(r):
    return (2.0 * r * r + 20.0 * r + 48.0) / (2.0 * r * r + 21.0 * r + 50.0)


def mu_opt(r):
    return (3.0 * r + 14.0) / (2.0 * r * r + 21.0 * r + 50.0)


def mu_omega_one(r):
    return 2.0 / (6.0 + r)


@dataclass(frozen=True)
class SpectralBounds:
    r: float
    d1: float
    d2: float
    omega_opt: float
    mu_opt: float
    mu_omega_one: float


def spectral_bounds(r: float) -> SpectralBounds:
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return SpectralBounds(r, d1(r), d2(r), omega_opt(r), mu_opt(r), mu_omega_one(r))


# -- symbols ------------------------------------------------------------------


def lambda_star(r, theta1, theta2):
    """Non-trivial eigenvalue of the preconditioned symbol ``M^{-1} K``."""
    co = vanka_coefficients(r)
    c1, c2 = np.cos(theta1), np.cos(theta2)
    return (co.a + co.b * c1 + co.b * c2 + co.c * c1 * c2) * (4.0 + r - 2.0 * c1 - 2.0 * c2)


def symbol_Me(theta1, theta2, eps, h):
    co = vanka_coefficients(h * h / (eps * eps))
    c1, c2 = np.cos(theta1), np.cos(theta2)
    return (h * h / (eps * eps)) * (co.a + co.b * c1 + co.b * c2 + co.c * c1 * c2)


def _block_symbol(diag, theta1, theta2, h):
    """``(1/h^2) [[t,0,g1],[0,t,g2],[-g1,-g2,0]]`` with ``g = 2ih sin(theta/2)``."""
    theta1, theta2, diag = np.broadcast_arrays(
        np.asarray(theta1, float), np.asarray(theta2, float), np.asarray(diag)
    )
    g1 = 2j * h * np.sin(theta1 / 2.0)
    g2 = 2j * h * np.sin(theta2 / 2.0)
    out = np.zeros(theta1.shape + (3, 3), dtype=complex)
    out[..., 0, 0] = diag
    out[..., 1, 1] = diag
    out[..., 0, 2] = g1
    out[..., 1, 2] = g2
    out[..., 2, 0] = -g1
    out[..., 2, 1] = -g2
    return out / (h * h)


def symbol_K(theta1, theta2, eps, h):
    r = h * h / (eps * eps)
    t = eps**2 * (4.0 + r - 2.0 * np.cos(theta1) - 2.0 * np.cos(theta2))
    return _block_symbol(t, theta1, theta2, h)


def symbol_M(theta1, theta2, eps, h):
    """Symbol of the Braess-Sarazin smoother matrix with ``C = M_e^{-1}``."""
    t_hat = h * h / symbol_Me(theta1, theta2, eps, h)
    return _block_symbol(t_hat, theta1, theta2, h)


def symbol_relaxation(theta1, theta2, eps, h, omega):
    """``I - omega M^{-1} K``."""
    k = symbol_K(theta1, theta2, eps, h)
    m = symbol_M(theta1, theta2, eps, h)
    return np.eye(3) - omega * np.linalg.solve(m, k)


def symbol_restriction(theta1, theta2):
    """Diagonal entries (u, v, p) of the restriction symbol at one frequency."""
    ru = 0.5 * np.cos(theta2 / 2.0) * (1.0 + np.cos(theta1))
    rv = 0.5 * np.cos(theta1 / 2.0) * (1.0 + np.cos(theta2))
    rp = np.cos(theta1 / 2.0) * np.cos(theta2 / 2.0)
    return np.stack(np.broadcast_arrays(ru, rv, rp), axis=-1)


# -- sampling -----------------------------------------------------------------


def frequency_axis(samples: int, offset: bool = True) -> np.ndarray:
    """``samples`` points per half period, covering ``[-pi/2, 3pi/2)``."""
    shift = 0.5 if offset else 0.0
    return -np.pi / 2 + np.pi * (np.arange(2 * samples) + shift) / samples


def high_frequencies(samples: int, offset: bool = True) -> tuple[np.ndarray, np.ndarray]:
    ax = frequency_axis(samples, offset)
    t1, t2 = np.meshgrid(ax, ax, indexing="ij")
    low = (t1 < np.pi / 2) & (t2 < np.pi / 2)
    return t1[~low], t2[~low]


def low_frequencies(samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Cell-centred samples of ``[-pi/2, pi/2)^2``; never hits ``(0, 0)``."""
    ax = -np.pi / 2 + np.pi * (np.arange(samples) + 0.5) / samples
    t1, t2 = np.meshgrid(ax, ax, indexing="ij")
    return t1.ravel(), t2.ravel()


def smoothing_factor_sampled(omega: float, r: float, samples: int = 64, offset: bool = True) -> float:
    """Sampled LFA smoothing factor, using the eigenvalues ``{1, 1, lambda*}``."""
    if samples < 32:
        raise ValueError("need at least 32 samples per dimension")
    t1, t2 = high_frequencies(samples, offset)
    lam = lambda_star(r, t1, t2)
    return float(max(abs(1.0 - omega), np.max(np.abs(1.0 - omega * lam))))


# -- spectral radius ----------------------------------------------------------


def spectral_radius(m, tol: float = 1e-5, max_squarings: int = 64):
    """Spectral radius by repeated squaring, ``lim ||M^(2^k)||^(1/2^k)``.

    Works on a single square matrix or a stack of them (leading axes).
    """
    a = np.array(m, dtype=complex)
    single = a.ndim == 2
    if single:
        a = a[None]
    batch = a.shape[:-2]
    log_scale = np.zeros(batch)
    est = np.full(batch, np.inf)
    zero = np.zeros(batch, dtype=bool)
    for k in range(max_squarings):
        nrm = np.linalg.norm(a, axis=(-2, -1))
        zero |= nrm == 0.0
        safe = np.where(nrm == 0.0, 1.0, nrm)
        new = np.exp((log_scale + np.log(safe)) / 2.0**k)
        new = np.where(zero, 0.0, new)
        done = np.abs(new - est) <= tol
        est = new
        if np.all(done | zero):
            break
        a = a / safe[..., None, None]
        log_scale = 2.0 * (log_scale + np.log(safe))
        a = a @ a
    return float(est[0]) if single else est


# -- two-grid analysis --------------------------------------------------------


def restriction_symbol(theta1, theta2):
    """3x12 restriction symbols (stacked over frequencies) on the four harmonics.

    Coarse component ``c`` sees harmonic ``alpha`` with the aliasing sign
    ``exp(i alpha . x_c / h)`` of its coarse-point parity.
    """
    theta1 = np.atleast_1d(np.asarray(theta1, float))
    theta2 = np.atleast_1d(np.asarray(theta2, float))
    f1 = theta1[:, None] + HARMONICS[None, :, 0]
    f2 = theta2[:, None] + HARMONICS[None, :, 1]
    rsym = symbol_restriction(f1, f2)  # (nb, 4, 3)
    phase = np.exp(1j * HARMONICS @ _COARSE_PARITY.T)  # (4, 3)
    r12 = np.zeros((theta1.shape[0], 3, 12), dtype=complex)
    for a in range(4):
        for c in range(3):
            r12[:, c, 3 * a + c] = rsym[:, a, c] * phase[a, c]
    return r12


def prolongation_symbol(theta1, theta2):
    """12x3 symbols of ``P = 4 R^T``.

    Coarse modes are four times sparser than fine ones, which cancels the
    factor 4, leaving the conjugate transpose of the restriction symbol.
    """
    return np.conj(np.swapaxes(restriction_symbol(theta1, theta2), -1, -2))



def twogrid_symbol(theta1, theta2, eps, h, omega, nu1, nu2):
    """12x12 two-grid error symbols for arrays of low frequencies.

    ``omega`` damps the fine-level smoother.  The coarse operator is the
    rediscretisation at ``2h`` evaluated at the doubled frequency.
    """
    theta1 = np.atleast_1d(np.asarray(theta1, float))
    theta2 = np.atleast_1d(np.asarray(theta2, float))
    nb = theta1.shape[0]
    f1 = theta1[:, None] + HARMONICS[None, :, 0]
    f2 = theta2[:, None] + HARMONICS[None, :, 1]
    k_fine = symbol_K(f1, f2, eps, h)  # (nb, 4, 3, 3)
    s_fine = symbol_relaxation(f1, f2, eps, h, omega)

    def blockdiag(blocks):
        out = np.zeros((nb, 12, 12), dtype=complex)
        for a in range(4):
            out[:, 3 * a : 3 * a + 3, 3 * a : 3 * a + 3] = blocks[:, a]
        return out

    k12 = blockdiag(k_fine)
    s12 = blockdiag(s_fine)
    r12 = restriction_symbol(theta1, theta2)
    p12 = prolongation_symbol(theta1, theta2)
    k_coarse = symbol_K(2 * theta1, 2 * theta2, eps, 2 * h)
    cgc = np.eye(12) - p12 @ np.linalg.solve(k_coarse, r12 @ k12)
    e = cgc
    for _ in range(nu1):
        e = e @ s12
    for _ in range(nu2):
        e = s12 @ e
    return e


def twogrid_lfa_factor(eps, h, omega, nu1=1, nu2=0, samples: int = 64) -> float:
    """Two-grid LFA convergence factor ``max_theta rho(E(theta))`` over low frequencies.

    ``omega`` may be a number or ``"one"``/``"opt"``.
    """
    if isinstance(omega, str):
        r = h * h / (eps * eps)
        omega = 1.0 if omega.lower() == "one" else omega_opt(r)
    t1, t2 = low_frequencies(samples)
    e = twogrid_symbol(t1, t2, eps, h, omega, nu1, nu2)
    return float(np.max(spectral_radius(e)))
