"""Dimension-group style invariant for one-sided subshifts of finite type.

For a shift with nonnegative transition matrix A, the level-1 cylinder
lattice Z^states carries the preimage-summing transfer map, whose matrix
on indicator vectors is the transpose of A.  K0 of the limit algebra is
the stationary limit of that system; K1 vanishes because the shift space
is totally disconnected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import IntMatrix
from .limits import Classification, StationaryLimitGroup, make_limit
from .model import Finding, ValidationReport


@dataclass(frozen=True)
class SftPresentation:
    states: tuple[str, ...]
    adjacency: IntMatrix

    def __post_init__(self):
        if self.adjacency.shape != (len(self.states), len(self.states)):
            raise ValueError("adjacency must be square over the states")

    @staticmethod
    def from_matrix(rows: list[list[int]]) -> "SftPresentation":
        states = tuple(str(i) for i in range(len(rows)))
        return SftPresentation(states=states, adjacency=IntMatrix.from_rows(rows, cols=len(rows)))


def _strongly_connected(A: IntMatrix) -> bool:
    n = A.rows
    if n == 0:
        return True

    def reach(start: int, forward: bool) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                linked = A[i, j] > 0 if forward else A[j, i] > 0
                if linked and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    return len(reach(0, True)) == n and len(reach(0, False)) == n


def validate_sft(s: SftPresentation) -> ValidationReport:
    """Nonnegativity, no dead states, and an irreducibility warning."""
    findings: list[Finding] = []
    A = s.adjacency
    n = A.rows
    for i in range(n):
        for j in range(n):
            if A[i, j] < 0:
                findings.append(
                    Finding("error", "negative-entry", f"entry ({i},{j}) is negative")
                )
    for i in range(n):
        if all(A[i, j] == 0 for j in range(n)):
            findings.append(
                Finding("error", "dead-state", f"state '{s.states[i]}' has no outgoing transition")
            )
        if all(A[j, i] == 0 for j in range(n)):
            findings.append(
                Finding("error", "dead-state", f"state '{s.states[i]}' has no incoming transition")
            )
    if not any(f.severity == "error" for f in findings) and not _strongly_connected(A):
        findings.append(
            Finding("warning", "reducible", "transition graph is not strongly connected")
        )
    return ValidationReport(tuple(findings))


@dataclass(frozen=True)
class SftDimensionGroup:
    k0: StationaryLimitGroup
    k0_classification: Classification
    k1: str  # always "trivial"


def sft_dimension_group(s: SftPresentation) -> SftDimensionGroup:
    """K0 as the stationary limit of the transfer map; K1 is trivial."""
    k0 = make_limit(s.adjacency.transpose())
    return SftDimensionGroup(k0=k0, k0_classification=k0.classify(), k1="trivial")


def edge_shift(s: SftPresentation) -> SftPresentation:
    """Recode to the edge shift: one state per transition of the original.

    Entry A[i][j] = m contributes m parallel transitions from i to j.  The
    recoding is conjugate to the original shift, so it must produce the
    same classification; it serves as a consistency oracle for the
    transfer-map convention.
    """
    A = s.adjacency
    edges: list[tuple[int, int, int]] = []
    for i in range(A.rows):
        for j in range(A.cols):
            for k in range(A[i, j]):
                edges.append((i, j, k))
    n = len(edges)
    entries = [[0] * n for _ in range(n)]
    for a, (_, j, _) in enumerate(edges):
        for b, (i2, _, _) in enumerate(edges):
            if j == i2:
                entries[a][b] = 1
    states = tuple(f"{s.states[i]}>{s.states[j]}#{k}" for i, j, k in edges)
    return SftPresentation(states=states, adjacency=IntMatrix.from_rows(entries, cols=n))
