"""Benchmark problems with analytic Jacobians, plus start-point sampling.

Sampling boxes, objective counts and dimensions follow the usual benchmark
table for unconstrained multiobjective descent methods. Objective formulas are
transcribed from the original sources named in each class's ``source``.
Maximization problems (MLF2) are stated as minimization of the negated
objectives. Boxes only seed the starting points; nothing here is enforced
during iteration.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Problem


class UnknownProblem(KeyError):
    pass


class InvalidDimension(ValueError):
    pass


# ---------------------------------------------------------------------------
# Quadratic and polynomial problems


class JOS1(Problem):
    name = "JOS1"
    source = "Jin, Olhofer, Sendhoff (2001), GECCO"
    convex = True

    def __init__(self, n: int = 50):
        super().__init__(n, 2, -100.0, 100.0)

    def _f(self, x):
        return np.array([x @ x, (x - 2.0) @ (x - 2.0)]) / self.n

    def _jac(self, x):
        return np.vstack((2.0 * x, 2.0 * (x - 2.0))) / self.n


class AP2(Problem):
    name = "AP2"
    source = "Ansary, Panda (2015), Optim. Methods Softw."
    convex = True

    def __init__(self):
        super().__init__(1, 2, -100.0, 100.0)

    def _f(self, x):
        return np.array([x[0] ** 2 - 4.0, (x[0] - 1.0) ** 2])

    def _jac(self, x):
        return np.array([[2.0 * x[0]], [2.0 * (x[0] - 1.0)]])


class BK1(Problem):
    name = "BK1"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = True

    def __init__(self):
        super().__init__(2, 2, [-5.0, -5.0], [10.0, 10.0])

    def _f(self, x):
        return np.array([x @ x, (x - 5.0) @ (x - 5.0)])

    def _jac(self, x):
        return np.vstack((2.0 * x, 2.0 * (x - 5.0)))


class SP1(Problem):
    name = "SP1"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = True

    def __init__(self):
        super().__init__(2, 2, -100.0, 100.0)

    def _f(self, x):
        x1, x2 = x
        return np.array([(x1 - 1.0) ** 2 + (x1 - x2) ** 2, (x2 - 3.0) ** 2 + (x1 - x2) ** 2])

    def _jac(self, x):
        x1, x2 = x
        u = 2.0 * (x1 - x2)
        return np.array([[2.0 * (x1 - 1.0) + u, -u], [u, 2.0 * (x2 - 3.0) - u]])


class Lov1(Problem):
    name = "Lov1"
    source = "Lovison (2011), SIAM J. Optim."
    convex = True

    def __init__(self):
        super().__init__(2, 2, -10.0, 10.0)

    def _f(self, x):
        x1, x2 = x
        return np.array([1.05 * x1**2 + 0.98 * x2**2, 0.99 * (x1 - 3.0) ** 2 + 1.03 * (x2 - 2.5) ** 2])

    def _jac(self, x):
        x1, x2 = x
        return np.array([[2.1 * x1, 1.96 * x2], [1.98 * (x1 - 3.0), 2.06 * (x2 - 2.5)]])


class Lov3(Problem):
    name = "Lov3"
    source = "Lovison (2011), SIAM J. Optim."
    convex = False

    def __init__(self):
        super().__init__(2, 2, -20.0, 20.0)

    def _f(self, x):
        x1, x2 = x
        return np.array([x1**2 + x2**2, (x1 - 6.0) ** 2 - (x2 + 0.3) ** 2])

    def _jac(self, x):
        x1, x2 = x
        return np.array([[2.0 * x1, 2.0 * x2], [2.0 * (x1 - 6.0), -2.0 * (x2 + 0.3)]])


class Lov4(Problem):
    name = "Lov4"
    source = "Lovison (2011), SIAM J. Optim."
    convex = False

    def __init__(self):
        super().__init__(2, 2, -20.0, 20.0)

    def _f(self, x):
        x1, x2 = x
        bumps = math.exp(-((x1 + 2.0) ** 2) - x2**2) + math.exp(-((x1 - 2.0) ** 2) - x2**2)
        return np.array([x1**2 + x2**2 + 4.0 * bumps, (x1 - 6.0) ** 2 + (x2 + 0.5) ** 2])

    def _jac(self, x):
        x1, x2 = x
        ea = math.exp(-((x1 + 2.0) ** 2) - x2**2)
        eb = math.exp(-((x1 - 2.0) ** 2) - x2**2)
        g1 = [
            2.0 * x1 - 8.0 * ((x1 + 2.0) * ea + (x1 - 2.0) * eb),
            2.0 * x2 - 8.0 * x2 * (ea + eb),
        ]
        return np.array([g1, [2.0 * (x1 - 6.0), 2.0 * (x2 + 0.5)]])


class MHHM2(Problem):
    name = "MHHM2"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = True
    centers = np.array([[0.8, 0.6], [0.85, 0.7], [0.9, 0.6]])

    def __init__(self):
        super().__init__(2, 3, 0.0, 1.0)

    def _f(self, x):
        diff = x - self.centers
        return np.sum(diff * diff, axis=1)

    def _jac(self, x):
        return 2.0 * (x - self.centers)


class PNR(Problem):
    name = "PNR"
    source = "Preuss, Naujoks, Rudolph (2006), PPSN"
    # Listed as convex in the benchmark table, although the first objective is not.
    convex = True

    def __init__(self):
        super().__init__(2, 2, -2.0, 2.0)

    def _f(self, x):
        x1, x2 = x
        return np.array([x1**4 + x2**4 - x1**2 + x2**2 - 10.0 * x1 * x2 + 20.0, x1**2 + x2**2])

    def _jac(self, x):
        x1, x2 = x
        return np.array(
            [
                [4.0 * x1**3 - 2.0 * x1 - 10.0 * x2, 4.0 * x2**3 + 2.0 * x2 - 10.0 * x1],
                [2.0 * x1, 2.0 * x2],
            ]
        )


class TOI4(Problem):
    name = "TOI4"
    source = "Toint (1983); multiobjective form of Mita, Fukuda, Yamashita (2019)"
    convex = True

    def __init__(self):
        super().__init__(4, 2, -2.0, 2.0)

    def _f(self, x):
        x1, x2, x3, x4 = x
        return np.array([x1**2 + x2**2 + 1.0, 0.5 * ((x1 - x2) ** 2 + (x3 - x4) ** 2) + 1.0])

    def _jac(self, x):
        x1, x2, x3, x4 = x
        return np.array([[2.0 * x1, 2.0 * x2, 0.0, 0.0], [x1 - x2, x2 - x1, x3 - x4, x4 - x3]])


class MGH33(Problem):
    """Rank-one linear function, one squared residual per objective.

    ``F_i(x) = (i * sum_j j x_j - 1)^2`` for ``i = 1..m`` with ``m = n``.
    """

    name = "MGH33"
    source = "More, Garbow, Hillstrom (1981) #33; multiobjective form of Mita, Fukuda, Yamashita (2019)"
    convex = True

    def __init__(self, n: int = 10):
        super().__init__(n, n, -1.0, 1.0)
        self._w = np.arange(1.0, n + 1.0)

    def _f(self, x):
        s = self._w @ x
        return (self._w * s - 1.0) ** 2

    def _jac(self, x):
        s = self._w @ x
        return np.outer(2.0 * (self._w * s - 1.0) * self._w, self._w)


class FDS(Problem):
    name = "FDS"
    source = "Fliege, Grana Drummond, Svaiter (2009), SIAM J. Optim."
    convex = True

    def __init__(self, n: int = 10):
        super().__init__(n, 3, -2.0, 2.0)
        i = np.arange(1.0, n + 1.0)
        self._i = i
        self._c3 = i * (n - i + 1.0) / (n * (n + 1.0))

    def _f(self, x):
        n = self.n
        return np.array(
            [
                np.sum(self._i * (x - self._i) ** 4) / n**2,
                math.exp(np.sum(x) / n) + x @ x,
                np.sum(self._c3 * np.exp(-x)),
            ]
        )

    def _jac(self, x):
        n = self.n
        return np.vstack(
            (
                4.0 * self._i * (x - self._i) ** 3 / n**2,
                math.exp(np.sum(x) / n) / n + 2.0 * x,
                -self._c3 * np.exp(-x),
            )
        )


class AP4(FDS):
    """Three-variable instance of the FDS family."""

    name = "AP4"
    source = "Ansary, Panda (2015), Optim. Methods Softw."

    def __init__(self):
        super().__init__(3)
        self.lower_bound = np.full(3, -10.0)
        self.upper_bound = np.full(3, 10.0)
        self.lower_bound.setflags(write=False)
        self.upper_bound.setflags(write=False)


# ---------------------------------------------------------------------------
# One-dimensional problems


class DGO1(Problem):
    name = "DGO1"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = False

    def __init__(self):
        super().__init__(1, 2, -10.0, 13.0)

    def _f(self, x):
        return np.array([math.sin(x[0]), math.sin(x[0] + 0.7)])

    def _jac(self, x):
        return np.array([[math.cos(x[0])], [math.cos(x[0] + 0.7)]])


class DGO2(Problem):
    name = "DGO2"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = True

    def __init__(self):
        super().__init__(1, 2, -9.0, 9.0)

    def in_domain(self, x):
        return abs(x[0]) < 9.0

    def _f(self, x):
        return np.array([x[0] ** 2, 9.0 - math.sqrt(81.0 - x[0] ** 2)])

    def _jac(self, x):
        return np.array([[2.0 * x[0]], [x[0] / math.sqrt(81.0 - x[0] ** 2)]])


class MLF1(Problem):
    name = "MLF1"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = False

    def __init__(self):
        super().__init__(1, 2, 0.0, 20.0)

    def _f(self, x):
        a = 1.0 + x[0] / 20.0
        return np.array([a * math.sin(x[0]), a * math.cos(x[0])])

    def _jac(self, x):
        a = 1.0 + x[0] / 20.0
        s, c = math.sin(x[0]), math.cos(x[0])
        return np.array([[s / 20.0 + a * c], [c / 20.0 - a * s]])


# ---------------------------------------------------------------------------
# Nonconvex two-variable problems


class MLF2(Problem):
    """Negated Himmelblau-type pair (the original is a maximization)."""

    name = "MLF2"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = False

    def __init__(self):
        super().__init__(2, 2, -100.0, 100.0)

    def _f(self, x):
        x1, x2 = x
        a, b = x1**2 + x2 - 11.0, x1 + x2**2 - 7.0
        c, d = 4.0 * x1**2 + 2.0 * x2 - 11.0, 2.0 * x1 + 4.0 * x2**2 - 7.0
        return np.array([(a * a + b * b) / 200.0 - 5.0, (c * c + d * d) / 200.0 - 5.0])

    def _jac(self, x):
        x1, x2 = x
        a, b = x1**2 + x2 - 11.0, x1 + x2**2 - 7.0
        c, d = 4.0 * x1**2 + 2.0 * x2 - 11.0, 2.0 * x1 + 4.0 * x2**2 - 7.0
        return np.array(
            [
                [(4.0 * a * x1 + 2.0 * b) / 200.0, (2.0 * a + 4.0 * b * x2) / 200.0],
                [(16.0 * c * x1 + 4.0 * d) / 200.0, (4.0 * c + 16.0 * d * x2) / 200.0],
            ]
        )


class Far1(Problem):
    name = "Far1"
    source = "Huband et al. (2006), IEEE TEVC review"
    convex = False
    # (coefficient, sharpness, center_x, center_y) of each Gaussian bump.
    terms = (
        ((-2.0, 15.0, 0.1, 0.0), (-1.0, 20.0, 0.6, 0.6), (1.0, 20.0, -0.6, 0.6), (1.0, 20.0, 0.6, -0.6), (1.0, 20.0, -0.6, -0.6)),
        ((2.0, 20.0, 0.0, 0.0), (1.0, 20.0, 0.4, 0.6), (-1.0, 20.0, -0.5, 0.7), (-1.0, 20.0, 0.5, -0.7), (1.0, 20.0, -0.4, -0.8)),
    )

    def __init__(self):
        super().__init__(2, 2, -1.0, 1.0)

    def _f(self, x):
        x1, x2 = x
        return np.array(
            [sum(c * math.exp(-a * ((x1 - u) ** 2 + (x2 - w) ** 2)) for c, a, u, w in obj) for obj in self.terms]
        )

    def _jac(self, x):
        x1, x2 = x
        jac = np.zeros((2, 2))
        for i, obj in enumerate(self.terms):
            for c, a, u, w in obj:
                e = c * math.exp(-a * ((x1 - u) ** 2 + (x2 - w) ** 2))
                jac[i, 0] -= 2.0 * a * (x1 - u) * e
                jac[i, 1] -= 2.0 * a * (x2 - w) * e
        return jac


class FF1(Problem):
    name = "FF1"
    source = "Fonseca, Fleming (1995); Huband et al. (2006)"
    convex = False

    def __init__(self):
        super().__init__(2, 2, -1.0, 1.0)

    def _f(self, x):
        s = 1.0 / math.sqrt(self.n)
        return np.array([1.0 - math.exp(-np.sum((x - s) ** 2)), 1.0 - math.exp(-np.sum((x + s) ** 2))])

    def _jac(self, x):
        s = 1.0 / math.sqrt(self.n)
        e1 = math.exp(-np.sum((x - s) ** 2))
        e2 = math.exp(-np.sum((x + s) ** 2))
        return np.vstack((2.0 * e1 * (x - s), 2.0 * e2 * (x + s)))


class Hil1(Problem):
    name = "Hil1"
    source = "Hillermeier (2001), Nonlinear Multiobjective Optimization"
    convex = False

    def __init__(self):
        super().__init__(2, 2, 0.0, 1.0)

    @staticmethod
    def _parts(x):
        x1, x2 = x
        k = 2.0 * math.pi / 360.0
        a = k * (45.0 + 40.0 * math.sin(2.0 * math.pi * x1) + 25.0 * math.sin(4.0 * math.pi * x1))
        da = k * (80.0 * math.pi * math.cos(2.0 * math.pi * x1) + 100.0 * math.pi * math.cos(4.0 * math.pi * x1))
        b = 1.0 + 0.5 * math.cos(2.0 * math.pi * x2)
        db = -math.pi * math.sin(2.0 * math.pi * x2)
        return a, da, b, db

    def _f(self, x):
        a, _, b, _ = self._parts(x)
        return np.array([math.cos(a) * b, math.sin(a) * b])

    def _jac(self, x):
        a, da, b, db = self._parts(x)
        ca, sa = math.cos(a), math.sin(a)
        return np.array([[-sa * da * b, ca * db], [ca * da * b, sa * db]])


class KW2(Problem):
    name = "KW2"
    source = "Kim, de Weck (2005); Lovison (2011)"
    convex = False

    def __init__(self):
        super().__init__(2, 2, -3.0, 3.0)

    def _f(self, x):
        x1, x2 = x
        b = math.exp(-(x1**2) - x2**2)
        f1 = (
            -3.0 * (1.0 - x1) ** 2 * math.exp(-(x1**2) - (x2 + 1.0) ** 2)
            + 10.0 * (x1 / 5.0 - x1**3 - x2**5) * b
            + 3.0 * math.exp(-((x1 + 2.0) ** 2) - x2**2)
            - 0.5 * (2.0 * x1 + x2)
        )
        f2 = (
            -3.0 * (1.0 + x2) ** 2 * math.exp(-(x2**2) - (1.0 - x1) ** 2)
            + 10.0 * (-x2 / 5.0 + x2**3 + x1**5) * b
            + 3.0 * math.exp(-((2.0 - x2) ** 2) - x1**2)
        )
        return np.array([f1, f2])

    def _jac(self, x):
        x1, x2 = x
        A = math.exp(-(x1**2) - (x2 + 1.0) ** 2)
        B = math.exp(-(x1**2) - x2**2)
        C = math.exp(-((x1 + 2.0) ** 2) - x2**2)
        D = math.exp(-(x2**2) - (1.0 - x1) ** 2)
        E = math.exp(-((2.0 - x2) ** 2) - x1**2)
        P = x1 / 5.0 - x1**3 - x2**5
        Q = -x2 / 5.0 + x2**3 + x1**5
        g11 = (
            6.0 * (1.0 - x1) * A
            + 6.0 * x1 * (1.0 - x1) ** 2 * A
            + 10.0 * (0.2 - 3.0 * x1**2) * B
            - 20.0 * x1 * P * B
            - 6.0 * (x1 + 2.0) * C
            - 1.0
        )
        g12 = 6.0 * (1.0 - x1) ** 2 * (x2 + 1.0) * A - 50.0 * x2**4 * B - 20.0 * x2 * P * B - 6.0 * x2 * C - 0.5
        g21 = -6.0 * (1.0 + x2) ** 2 * (1.0 - x1) * D + 50.0 * x1**4 * B - 20.0 * x1 * Q * B - 6.0 * x1 * E
        g22 = (
            -6.0 * (1.0 + x2) * D
            + 6.0 * x2 * (1.0 + x2) ** 2 * D
            + 10.0 * (-0.2 + 3.0 * x2**2) * B
            - 20.0 * x2 * Q * B
            + 6.0 * (2.0 - x2) * E
        )
        return np.array([[g11, g12], [g21, g22]])


class MMR1(Problem):
    """``f1 = x1``, ``f2 = g(x2) / x1`` with a two-well ``g``; defined for ``x1 > 0``."""

    name = "MMR1"
    source = "Miglierina, Molho, Recchioni (2008), Eur. J. Oper. Res."
    convex = False

    def __init__(self):
        super().__init__(2, 2, [0.1, 0.0], [1.0, 1.0])

    def in_domain(self, x):
        return x[0] > 0.0

    @staticmethod
    def _g(x2):
        e1 = math.exp(-(((x2 - 0.2) / 0.004) ** 2))
        e2 = math.exp(-(((x2 - 0.6) / 0.4) ** 2))
        g = 2.0 - e1 - 0.8 * e2
        dg = e1 * 2.0 * (x2 - 0.2) / 0.004**2 + 0.8 * e2 * 2.0 * (x2 - 0.6) / 0.4**2
        return g, dg

    def _f(self, x):
        g, _ = self._g(x[1])
        return np.array([x[0], g / x[0]])

    def _jac(self, x):
        g, dg = self._g(x[1])
        return np.array([[1.0, 0.0], [-g / x[0] ** 2, dg / x[0]]])


class MOP3(Problem):
    name = "MOP3"
    source = "Poloni et al. (2000); Miglierina, Molho, Recchioni (2008)"
    convex = False
    A1 = 0.5 * math.sin(1.0) - 2.0 * math.cos(1.0) + math.sin(2.0) - 1.5 * math.cos(2.0)
    A2 = 1.5 * math.sin(1.0) - math.cos(1.0) + 2.0 * math.sin(2.0) - 0.5 * math.cos(2.0)

    def __init__(self):
        super().__init__(2, 2, -math.pi, math.pi)

    def _f(self, x):
        x1, x2 = x
        b1 = 0.5 * math.sin(x1) - 2.0 * math.cos(x1) + math.sin(x2) - 1.5 * math.cos(x2)
        b2 = 1.5 * math.sin(x1) - math.cos(x1) + 2.0 * math.sin(x2) - 0.5 * math.cos(x2)
        return np.array([1.0 + (self.A1 - b1) ** 2 + (self.A2 - b2) ** 2, (x1 + 3.0) ** 2 + (x2 + 1.0) ** 2])

    def _jac(self, x):
        x1, x2 = x
        s1, c1, s2, c2 = math.sin(x1), math.cos(x1), math.sin(x2), math.cos(x2)
        b1 = 0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2
        b2 = 1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2
        db1 = np.array([0.5 * c1 + 2.0 * s1, c2 + 1.5 * s2])
        db2 = np.array([1.5 * c1 + s1, 2.0 * c2 + 0.5 * s2])
        g1 = -2.0 * (self.A1 - b1) * db1 - 2.0 * (self.A2 - b2) * db2
        return np.vstack((g1, [2.0 * (x1 + 3.0), 2.0 * (x2 + 1.0)]))


class WIT(Problem):
    """Witting's parametric family.

    ``f1 = w ((x1-2)^2 + (x2-1)^2) + (1-w) ((x1-2)^4 + (x2-1)^8)`` and
    ``f2 = (x1 + 2w)^2 + x2^2`` for a blend weight ``w`` in [0, 1]. Small ``w``
    makes ``f1`` increasingly flat around its minimizer.
    """

    name = "WIT"
    source = "Witting (2012), PhD thesis, Example 4.2"
    convex = True

    def __init__(self, weight: float, name: str = "WIT"):
        self.name = name
        self.weight = float(weight)
        super().__init__(2, 2, -2.0, 2.0)

    def _f(self, x):
        w = self.weight
        a, b = x[0] - 2.0, x[1] - 1.0
        f1 = w * (a * a + b * b) + (1.0 - w) * (a**4 + b**8)
        return np.array([f1, (x[0] + 2.0 * w) ** 2 + x[1] ** 2])

    def _jac(self, x):
        w = self.weight
        a, b = x[0] - 2.0, x[1] - 1.0
        g1 = [2.0 * w * a + 4.0 * (1.0 - w) * a**3, 2.0 * w * b + 8.0 * (1.0 - w) * b**7]
        return np.array([g1, [2.0 * (x[0] + 2.0 * w), 2.0 * x[1]]])


# ---------------------------------------------------------------------------
# Registry

WIT_WEIGHTS = {"WIT1": 0.0, "WIT2": 0.5, "WIT3": 0.9, "WIT4": 0.99, "WIT5": 0.999, "WIT6": 1.0}


@dataclass(frozen=True)
class Entry:
    name: str
    factory: Callable[..., Problem]
    scalable: bool = False
    default_n: int | None = None


def _entries() -> dict[str, Entry]:
    fixed = [AP2, AP4, BK1, DGO1, DGO2, Far1, FF1, Hil1, KW2, Lov1, Lov3, Lov4, MHHM2, MLF1, MLF2, MMR1, MOP3, PNR, SP1, TOI4]
    out = {cls.name: Entry(cls.name, cls) for cls in fixed}
    out["FDS"] = Entry("FDS", FDS, scalable=True, default_n=10)
    out["JOS1"] = Entry("JOS1", JOS1, scalable=True, default_n=50)
    out["MGH33"] = Entry("MGH33", MGH33, scalable=True, default_n=10)
    for suffix, n in zip("abcd", (50, 100, 1000, 5000)):
        out[f"JOS1{suffix}"] = Entry(f"JOS1{suffix}", lambda n=n, s=suffix: _renamed(JOS1(n), f"JOS1{s}"))
    for name, w in WIT_WEIGHTS.items():
        out[name] = Entry(name, lambda w=w, name=name: WIT(w, name))
    return out


def _renamed(problem: Problem, name: str) -> Problem:
    problem.name = name
    return problem


REGISTRY: dict[str, Entry] = _entries()

# The benchmark table's problem list, in table order.
TABLE_PROBLEMS = (
    "AP2", "AP4", "BK1", "DGO1", "DGO2", "Far1", "FDS", "FF1", "Hil1",
    "JOS1a", "JOS1b", "JOS1c", "JOS1d", "KW2", "Lov1", "Lov3", "Lov4",
    "MGH33", "MHHM2", "MLF1", "MLF2", "MMR1", "MOP3", "PNR", "SP1", "TOI4",
    "WIT1", "WIT2", "WIT3", "WIT4", "WIT5", "WIT6",
)  # fmt: skip

_LOOKUP = {name.lower(): name for name in REGISTRY}


def problem_names() -> list[str]:
    return list(TABLE_PROBLEMS)


def get_problem(name: str, n_override: int | None = None) -> Problem:
    """Build a registered problem, optionally at a custom dimension.

    Raises
    ------
    UnknownProblem
        If ``name`` is not registered (lookup is case-insensitive).
    InvalidDimension
        If ``n_override`` is given for a fixed-dimension problem or is < 1.
    """
    key = _LOOKUP.get(str(name).lower())
    if key is None:
        raise UnknownProblem(name)
    entry = REGISTRY[key]
    if n_override is None:
        return entry.factory()
    if not entry.scalable:
        raise InvalidDimension(f"{key} has a fixed dimension")
    if int(n_override) < 1:
        raise InvalidDimension("dimension must be positive")
    return entry.factory(int(n_override))


def parse_problem_spec(spec: str) -> tuple[str, int | None]:
    """Split ``NAME[:n]`` into a name and an optional dimension."""
    name, _, n = spec.partition(":")
    if not name:
        raise UnknownProblem(spec)
    if n == "":
        return name, None
    try:
        return name, int(n)
    except ValueError:
        raise InvalidDimension(f"bad dimension in {spec!r}") from None


def check_jacobian(problem: Problem, x, h: float | None = None) -> float:
    """Largest discrepancy between the analytic Jacobian and central differences.

    The step for coordinate ``j`` is ``h * max(1, |x_j|)`` with ``h = 1e-6`` by
    default. Each entry's error is scaled by ``max(1, |analytic entry|)``.
    """
    x = np.asarray(x, dtype=float)
    h = 1e-6 if h is None else h
    jac = problem.jacobian(x)
    fd = np.empty_like(jac)
    for j in range(problem.n):
        step = h * max(1.0, abs(x[j]))
        e = np.zeros(problem.n)
        e[j] = step
        fd[:, j] = (problem.evaluate(x + e) - problem.evaluate(x - e)) / (2.0 * step)
    return float(np.max(np.abs(jac - fd) / np.maximum(1.0, np.abs(jac))))


# ---------------------------------------------------------------------------
# Sampling


@dataclass(frozen=True)
class SamplerSpec:
    seed: int = 0
    count: int = 100

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")


PRNG_DESCRIPTION = (
    "numpy PCG64 bit generator; start i of a problem is drawn from its own stream seeded by "
    "SeedSequence(entropy=seed, spawn_key=(crc32(problem name), n, i)); coordinates are "
    "x_L + (x_U - x_L) * u with u the generator's 53-bit doubles in [0, 1)."
)


def start_stream(seed: int, problem: Problem, index: int) -> np.random.Generator:
    key = (zlib.crc32(problem.name.encode()), problem.n, int(index))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=key)))


def sample_starts(problem: Problem, spec: SamplerSpec) -> list[np.ndarray]:
    lb, ub = problem.lower_bound, problem.upper_bound
    return [lb + (ub - lb) * start_stream(spec.seed, problem, i).random(problem.n) for i in range(spec.count)]


def manifest() -> dict:
    """Machine-readable listing of every registered problem."""
    rows = []
    for name in TABLE_PROBLEMS:
        p = get_problem(name)
        rows.append(
            {
                "name": name,
                "m": p.m,
                "n": p.n,
                "convex": bool(p.convex),
                "lower_bound": p.lower_bound.tolist() if p.n <= 10 else float(p.lower_bound[0]),
                "upper_bound": p.upper_bound.tolist() if p.n <= 10 else float(p.upper_bound[0]),
                "scalable": REGISTRY[name].scalable,
                "source": p.source,
            }
        )
    return {"problems": rows, "omitted": [], "prng": PRNG_DESCRIPTION}
