#!/usr/bin/env python3
"""Reference radii for the fixed matrices used in tests/test_radius.cpp.

Independent of the C++ search: the pair radius is the maximum of
N(v1 Re B + v2 Im B + v3 Re C + v4 Im C) over unit v in R^4 (the map from
(l1, l2, theta) to these coefficients covers the whole sphere), found with
many Nelder-Mead restarts; single radii use a dense theta scan plus a
bounded scalar polish.
"""
import numpy as np
from scipy.optimize import minimize, minimize_scalar

B = np.array([[1 + 2j, -0.5j, 0.25], [0.5, -1 + 0.5j, 2j], [-1j, 0.75, 0.5 - 1j]])
C = np.array([[0.5, 1j, -1], [2, 0.25j, 0.5 - 0.5j], [0, -1 + 1j, 1.5]])


def herm_parts(t):
    return (t + t.conj().T) / 2, (t - t.conj().T) / 2j


def norm(kind, h):
    s = np.abs(np.linalg.eigvalsh(h))
    if kind == "op":
        return s.max()
    if kind == "hs":
        return np.sqrt((s**2).sum())
    if kind == "trace":
        return s.sum()
    if kind == "schatten3":
        return (s**3).sum() ** (1 / 3)
    raise ValueError(kind)


def w(kind, t):
    re, im = herm_parts(t)
    f = lambda th: norm(kind, np.cos(th) * re - np.sin(th) * im)
    grid = np.linspace(0, np.pi, 4001)
    k = int(np.argmax([f(g) for g in grid]))
    r = minimize_scalar(lambda th: -f(th), bounds=(grid[max(k - 1, 0)], grid[min(k + 1, 4000)]),
                        method="bounded", options={"xatol": 1e-13})
    return max(-r.fun, f(grid[k]))


def we(kind, b, c, starts=60, seed=1):
    hs = [*herm_parts(b), *herm_parts(c)]
    f = lambda v: -norm(kind, sum(x * h for x, h in zip(v / np.linalg.norm(v), hs)))
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(starts):
        r = minimize(f, rng.normal(size=4), method="Nelder-Mead",
                     options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
        best = max(best, -r.fun)
    return best


if __name__ == "__main__":
    for kind in ["op", "hs", "trace", "schatten3"]:
        print(f"{kind:10s} w(B)={w(kind, B):.15g} w(C)={w(kind, C):.15g} we(B,C)={we(kind, B, C):.15g}")
