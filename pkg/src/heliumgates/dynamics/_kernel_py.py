"""Pure-numpy twin of the compiled RK4 kernel (same signatures)."""

import numpy as np


def _lindblad(h, rho, jump_to, jump_from, jump_rate):
    out = -1j * (h @ rho - rho @ h)
    for m, n, k in zip(jump_to, jump_from, jump_rate):
        out[m, m] += k * rho[n, n]
        out[n, :] -= 0.5 * k * rho[n, :]
        out[:, n] -= 0.5 * k * rho[:, n]
    return out


def rk4_lindblad(rho0, hs, jump_to, jump_from, jump_rate, dt, stride):
    n_steps = (hs.shape[0] - 1) // 2
    jumps = (list(jump_to), list(jump_from), list(jump_rate))
    rho = np.array(rho0, dtype=complex)
    out = np.empty(((n_steps + stride - 1) // stride + 1,) + rho.shape, dtype=complex)
    out[0] = rho
    rec = 1
    for s in range(n_steps):
        h0, hm, h1 = hs[2 * s], hs[2 * s + 1], hs[2 * s + 2]
        k1 = _lindblad(h0, rho, *jumps)
        k2 = _lindblad(hm, rho + 0.5 * dt * k1, *jumps)
        k3 = _lindblad(hm, rho + 0.5 * dt * k2, *jumps)
        k4 = _lindblad(h1, rho + dt * k3, *jumps)
        rho = rho + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (s + 1) % stride == 0 or s + 1 == n_steps:
            out[rec] = rho
            rec += 1
    return out


def rk4_unitary(u0, hs, dt):
    n_steps = (hs.shape[0] - 1) // 2
    u = np.array(u0, dtype=complex)
    for s in range(n_steps):
        h0, hm, h1 = -1j * hs[2 * s], -1j * hs[2 * s + 1], -1j * hs[2 * s + 2]
        k1 = h0 @ u
        k2 = hm @ (u + 0.5 * dt * k1)
        k3 = hm @ (u + 0.5 * dt * k2)
        k4 = h1 @ (u + dt * k3)
        u = u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return u
