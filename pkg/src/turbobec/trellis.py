"""Trellis model of rate-1/2 recursive systematic convolutional (RSC) codes.

Derives the state-transition table of an RSC constituent from its octal
generator polynomials and precomputes the 3^2 label-constraint lookup
masks used by the erasure decoder.

A transition mask is stored as a plain int: entry (i, j) of the
state-to-state matrix is bit ``i * n_states + j``.  The decoding loop is
dominated by logical ANDs and all-zero row/column checks, both of which
are single integer operations in this representation.
"""

from __future__ import annotations

from dataclasses import dataclass

# Wildcard value for an unreceived bit position in a label constraint.
UNKNOWN = 2


@dataclass(frozen=True)
class RscSpec:
    """A rate-1/2 RSC constituent code.

    Polynomials are given as octal integers with coefficients
    most-significant-first: 0o7 over constraint length 3 is 1 + D + D^2,
    0o5 is 1 + D^2.
    """

    feedback_poly: int
    forward_poly: int
    constraint_length: int
    k: int = 1
    n: int = 2

    def __post_init__(self):
        L = self.constraint_length
        if L < 2:
            raise ValueError("constraint length must be >= 2")
        if self.k != 1 or self.n != 2:
            raise ValueError("only rate-1/2 (k=1, n=2) constituents are supported")
        for name in ("feedback_poly", "forward_poly"):
            p = getattr(self, name)
            if not 0 < p < (1 << L):
                raise ValueError(f"{name} {p:o} does not fit in {L} coefficients")
        # Coefficient of D^0 is the top bit in the MSB-first convention.
        if not (self.feedback_poly >> (L - 1)) & 1:
            raise ValueError("feedback polynomial needs a nonzero constant term")

    @property
    def n_states(self) -> int:
        return 1 << (self.constraint_length - 1)

    def taps(self, poly: int) -> tuple[int, ...]:
        """Coefficients of D^0 .. D^(L-1), low degree first."""
        L = self.constraint_length
        return tuple((poly >> (L - 1 - i)) & 1 for i in range(L))

    def step(self, state: int, info_bit: int) -> tuple[int, int]:
        """One shift-register step: returns (next_state, parity_bit).

        The register is read MSB-first, newest bit highest, so state i is
        the paper-style label e_{i+1} written in binary.
        """
        L = self.constraint_length
        f = self.taps(self.feedback_poly)
        g = self.taps(self.forward_poly)
        regs = [(state >> (L - 1 - i)) & 1 for i in range(1, L)]  # s_1 .. s_{L-1}
        a = info_bit
        for i in range(1, L):
            a ^= f[i] & regs[i - 1]
        parity = g[0] & a
        for i in range(1, L):
            parity ^= g[i] & regs[i - 1]
        next_state = (a << (L - 2)) | (state >> 1)
        return next_state, parity


class TransitionTable:
    """All state transitions of an RSC code between two trellis steps.

    ``next_state[s][u]`` and ``parity[s][u]`` describe the transition
    taken from state ``s`` on information bit ``u``; the label is
    ``(u, parity[s][u])``.
    """

    def __init__(self, spec: RscSpec):
        self.spec = spec
        S = spec.n_states
        self.n_states = S
        self.next_state = [[0, 0] for _ in range(S)]
        self.parity = [[0, 0] for _ in range(S)]
        for s in range(S):
            for u in (0, 1):
                nxt, p = spec.step(s, u)
                self.next_state[s][u] = nxt
                self.parity[s][u] = p
        indeg = [0] * S
        for s in range(S):
            if self.next_state[s][0] == self.next_state[s][1]:
                raise ValueError("degenerate recursion: both inputs reach one state")
            for u in (0, 1):
                indeg[self.next_state[s][u]] += 1
        if any(d != 2 for d in indeg):
            raise ValueError("transition table is not 2-in/2-out")

    def transitions(self):
        """Yields (from_state, to_state, info_bit, parity_bit)."""
        for s in range(self.n_states):
            for u in (0, 1):
                yield s, self.next_state[s][u], u, self.parity[s][u]

    def termination_input(self, state: int) -> int:
        """Information bit that shifts a zero into the register."""
        target = state >> 1
        for u in (0, 1):
            if self.next_state[state][u] == target:
                return u
        raise AssertionError("no zero-driving input; recursion is broken")

    def to_text(self) -> str:
        """Paper-style table: rows are from-states, entries b1b2 or X."""
        S = self.n_states
        labels = [["X"] * S for _ in range(S)]
        for i, j, b1, b2 in self.transitions():
            labels[i][j] = f"{b1}{b2}"
        header = "      " + " ".join(f"e{j + 1:<2}" for j in range(S))
        rows = [
            f"e{i + 1:<4} " + " ".join(f"{labels[i][j]:<3}" for j in range(S))
            for i in range(S)
        ]
        return "\n".join([header] + rows)


def build_transition_table(spec: RscSpec) -> TransitionTable:
    return TransitionTable(spec)


def mask_and(a: int, b: int) -> int:
    """Elementwise AND of two same-sized transition masks."""
    return a & b


def format_mask(mask: int, n_states: int) -> str:
    rows = []
    for i in range(n_states):
        row = (mask >> (i * n_states)) & ((1 << n_states) - 1)
        rows.append("".join(str((row >> j) & 1) for j in range(n_states)))
    return "\n".join(rows)


class LookupMasks:
    """The 3^2 label-constraint masks of a transition table.

    Indexed by ``(b1, b2)`` with each coordinate in {0, 1, UNKNOWN}.
    ``full`` is the unconstrained adjacency mask, ``info[b]`` keeps only
    transitions with information bit b, ``parity[b]`` only those with
    parity bit b.
    """

    def __init__(self, table: TransitionTable):
        S = table.n_states
        self.n_states = S
        self.table = table
        by = {}
        for c1 in (0, 1, UNKNOWN):
            for c2 in (0, 1, UNKNOWN):
                m = 0
                for i, j, b1, b2 in table.transitions():
                    if c1 in (b1, UNKNOWN) and c2 in (b2, UNKNOWN):
                        m |= 1 << (i * S + j)
                by[(c1, c2)] = m
        self.by_constraint = by
        self.full = by[(UNKNOWN, UNKNOWN)]
        self.info = (by[(0, UNKNOWN)], by[(1, UNKNOWN)])
        self.parity = (by[(UNKNOWN, 0)], by[(UNKNOWN, 1)])
        full_row = (1 << S) - 1
        self.row_masks = tuple(full_row << (i * S) for i in range(S))
        self.col_masks = tuple(
            sum(1 << (i * S + j) for i in range(S)) for j in range(S)
        )

    def zero_rows(self, mask: int) -> list[int]:
        return [i for i, rm in enumerate(self.row_masks) if not mask & rm]

    def zero_cols(self, mask: int) -> list[int]:
        return [j for j, cm in enumerate(self.col_masks) if not mask & cm]

    def is_subset_info(self, mask: int, bit: int) -> bool:
        """True iff every allowed transition of ``mask`` carries info bit ``bit``.

        The empty mask trivially satisfies this; callers treat emptiness
        as a contradiction before asking.
        """
        return not mask & ~self.info[bit]


def build_lookup_masks(table: TransitionTable) -> LookupMasks:
    return LookupMasks(table)
