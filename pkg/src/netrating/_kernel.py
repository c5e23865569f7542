"""Batched exact utility evaluation on integer-scaled values.

Evaluations and bribes are scaled by a common denominator ``D`` and every
utility by ``L = lcm(1..n)``, so that each average becomes an integer
operation. Results are exact integers equal to ``utility * D * L``. Used by
the grid oracle and the placement enumerator, which evaluate many strategies
or placements at once; the Fraction code in :mod:`netrating.strategy` stays
the reference implementation.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from netrating.model import NO_OPINION, System

_INT64_SAFE = 2**62


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


class ScaledNetwork:
    """Adjacency matrix (self-loops included) plus the integer reciprocal table.

    Parameters
    ----------
    net : CustomersNetwork
    denominator : int
        Common denominator ``D`` of all evaluations and bribes that will be passed.
    """

    def __init__(self, net, denominator: int):
        n = net.n
        self.n = n
        self.D = denominator
        self.L = math.lcm(*range(1, n + 1))
        # sums of up to n values each <= D, times L, times n customers
        bound = 2 * (n * n + n) * denominator * self.L
        self.dtype = np.int64 if bound < _INT64_SAFE else object
        adj = np.zeros((n, n), dtype=self.dtype)
        for c, nb in enumerate(net.neighborhoods):
            for k in nb:
                adj[c, k] = 1
        self.adj = adj
        lut = [0] + [self.L // k for k in range(1, n + 1)]
        self.lut = np.array(lut, dtype=self.dtype)

    def utilities(self, vals, mask, spent, system: System):
        """Scaled utilities for a batch.

        Parameters
        ----------
        vals : ndarray (B, n)
            Post-bribe evaluations times ``D`` (entries where ``mask`` is False are ignored).
        mask : ndarray (B, n) of bool
            Post-bribe voter indicator. Every row must give each customer a visible voter
            under P, and at least one voter under O.
        spent : ndarray (B,) or int
            Total bribes times ``D``.
        """
        vals = np.asarray(vals, dtype=self.dtype)
        m = np.asarray(mask).astype(self.dtype)
        live = vals * m
        if system is System.O:
            cnt = m.sum(axis=1).astype(np.intp)
            gross = self.n * live.sum(axis=1) * self.lut[cnt]
        else:
            sums = live @ self.adj
            cnt = (m @ self.adj).astype(np.intp)
            gross = (sums * self.lut[cnt]).sum(axis=1)
        return gross - np.asarray(spent, dtype=self.dtype) * self.L

    def to_fraction(self, scaled) -> Fraction:
        return Fraction(int(scaled), self.D * self.L)

    def scaled_profile(self, values):
        """Integer-scaled evaluations and voter mask; no opinion becomes (0, False)."""
        vals = np.array([0 if v is NO_OPINION else int(v * self.D) for v in values], dtype=self.dtype)
        mask = np.array([v is not NO_OPINION for v in values], dtype=bool)
        return vals, mask

    def execute(self, vals, mask, bribes):
        """Apply scaled bribes (B, n) to a scaled profile; returns (vals, mask, spent)."""
        bribes = np.asarray(bribes, dtype=self.dtype)
        post_vals = np.where(mask, np.minimum(vals + bribes, self.D), bribes)
        post_mask = mask | (bribes != 0)
        return post_vals, post_mask, bribes.sum(axis=1)
