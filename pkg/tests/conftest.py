"""Shared independent oracles and acceptance reporting for the test suite."""
import math

import numpy as np

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def naive_dft(x, size):
    """Direct O(M^2) unitary DFT, the reference for the FFT-based path."""
    x = np.asarray(x, dtype=np.complex128)
    n = np.arange(size)
    kernel = np.exp(-2j * np.pi * np.outer(n, n) / size)
    padded = np.zeros(size, dtype=np.complex128)
    padded[: len(x)] = x
    return kernel @ padded / np.sqrt(size)


def naive_convolve(a, b):
    """Direct double-loop linear convolution."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.complex128)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def golden_refine(fun, center, halfwidth, iters=100):
    """Golden-section minimization of a scalar function on [c-h, c+h]."""
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = center - halfwidth, center + halfwidth
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = fun(d)
    return min(fc, fd)


def grid_extrema(fun, grid_points, refine=True):
    """Brute-force extrema of fun over [0, 2pi), optionally refined locally."""
    theta = np.linspace(0.0, 2.0 * np.pi, grid_points, endpoint=False)
    vals = fun(theta)
    step = 2.0 * np.pi / grid_points
    lo = float(vals.min())
    hi = float(vals.max())
    if refine:
        lo = golden_refine(lambda t: float(fun(np.array([t]))[0]), float(theta[np.argmin(vals)]), step)
        hi = -golden_refine(lambda t: -float(fun(np.array([t]))[0]), float(theta[np.argmax(vals)]), step)
    return lo, hi
