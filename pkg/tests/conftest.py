"""Shared independent oracles for the test suite.

Everything here re-derives RSC behaviour from first principles (explicit
shift registers and exhaustive path enumeration) without touching the
library's transition tables, so the two sides of each comparison stay
independent.
"""

from __future__ import annotations

import numpy as np
import pytest


def octal_taps(poly_octal: int, length: int) -> list[int]:
    """Octal digits MSB-first -> coefficient list for D^0 .. D^(L-1)."""
    bits = format(poly_octal, "b").zfill(length)
    return [int(c) for c in bits]


class RegisterOracle:
    """Plain shift-register simulation of a rate-1/2 RSC code.

    The register is a list [s_1, ..., s_{L-1}], s_1 newest.
    """

    def __init__(self, feedback_octal: int, forward_octal: int, length: int):
        self.f = octal_taps(feedback_octal, length)
        self.g = octal_taps(forward_octal, length)
        self.length = length

    def step(self, regs: list[int], u: int) -> tuple[list[int], int]:
        a = u
        for tap, s in zip(self.f[1:], regs):
            a ^= tap & s
        parity = self.g[0] & a
        for tap, s in zip(self.g[1:], regs):
            parity ^= tap & s
        return [a] + regs[:-1], parity

    def state_index(self, regs: list[int]) -> int:
        idx = 0
        for s in regs:
            idx = (idx << 1) | s
        return idx

    def transitions(self) -> dict[tuple[int, int], tuple[int, int]]:
        """(from_state, to_state) -> (info_bit, parity_bit)."""
        out = {}
        m = self.length - 1
        for state in range(1 << m):
            regs = [(state >> (m - 1 - i)) & 1 for i in range(m)]
            for u in (0, 1):
                nxt, p = self.step(list(regs), u)
                out[(state, self.state_index(nxt))] = (u, p)
        return out

    def terminated_parity(self, info) -> tuple[list[int], list[int]]:
        """(parity bits of the info steps, termination info bits)."""
        regs = [0] * (self.length - 1)
        parity = []
        for u in info:
            regs, p = self.step(regs, int(u))
            parity.append(p)
        tail = []
        for _ in range(self.length - 1):
            # Zero-driving input cancels the feedback sum.
            u = 0
            for tap, s in zip(self.f[1:], regs):
                u ^= tap & s
            tail.append(u)
            regs, _ = self.step(regs, u)
        assert all(s == 0 for s in regs)
        return parity, tail


def enumerate_codeword_paths(oracle: RegisterOracle, k: int):
    """All 2^k terminated trellis paths as (info, labels, state_sequence).

    labels[t] = (b1, b2) for every step including the termination tail;
    states has one entry per trellis node, zero at both ends.
    """
    out = []
    for word in range(1 << k):
        info = [(word >> t) & 1 for t in range(k)]
        regs = [0] * (oracle.length - 1)
        states = [0]
        labels = []
        _, tail = oracle.terminated_parity(info)
        for u in info + tail:
            regs, p = oracle.step(regs, u)
            labels.append((u, p))
            states.append(oracle.state_index(regs))
        out.append((info, labels, states))
    return out


@pytest.fixture(scope="session")
def oracle75() -> RegisterOracle:
    return RegisterOracle(7, 5, 3)


@pytest.fixture(scope="session")
def paths75_k8(oracle75):
    return enumerate_codeword_paths(oracle75, 8)


def rng_for(*seed) -> np.random.Generator:
    return np.random.default_rng(list(seed))
