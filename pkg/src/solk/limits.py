"""Stationary inductive limits of free abelian groups, as first-class values.

lim(Z^r, T) is presented by its eventual lattice L (the saturation of the
column span of T^r) and the restriction T' of T to L, which is injective.
Every element of the limit is represented at some stage k by a vector in
the coordinates of L, with (k, v) identified with (k+1, T'v).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import (
    IntMatrix,
    column_hnf,
    determinant,
    restrict_endomorphism,
    saturate_columns,
    smith_normal_form,
    solve_columns,
)


@dataclass(frozen=True)
class Classification:
    """Stable descriptor of a stationary limit group."""

    kind: str  # "free_abelian" | "z_one_over" | "generic"
    rank: int
    n: int | None = None
    presentation: tuple[tuple[int, ...], ...] | None = None

    def __str__(self) -> str:
        if self.kind == "free_abelian":
            return f"FreeAbelian({self.rank})"
        if self.kind == "z_one_over":
            return f"ZOneOver({self.n})"
        rows = [list(r) for r in self.presentation or ()]
        return f"Generic(rank={self.rank}, matrix={rows})"


class StationaryLimitGroup:
    """lim(Z^r, T) with element arithmetic.

    Immutable after construction; elements are value objects tied to their
    group.
    """

    def __init__(self, endomorphism: IntMatrix):
        if endomorphism.rows != endomorphism.cols:
            raise ValueError("endomorphism must be square")
        r = endomorphism.rows
        self.ambient_rank = r
        self.endomorphism = endomorphism
        power = endomorphism.power(r) if r > 0 else IntMatrix.identity(0)
        self.eventual_basis = saturate_columns(power)
        self.eventual_rank = self.eventual_basis.cols
        if self.eventual_rank > 0:
            self.reduced_endomorphism = restrict_endomorphism(endomorphism, self.eventual_basis)
        else:
            self.reduced_endomorphism = IntMatrix.identity(0)

    # -- elements ---------------------------------------------------------

    def zero(self) -> "LimitElement":
        return LimitElement(self, 0, (0,) * self.eventual_rank)

    def element(self, stage: int, vector: tuple[int, ...] | list[int]) -> "LimitElement":
        """Element given by a vector in eventual-lattice coordinates at a stage."""
        if stage < 0:
            raise ValueError("stage must be nonnegative")
        vector = tuple(int(x) for x in vector)
        if len(vector) != self.eventual_rank:
            raise ValueError("vector length must equal the eventual rank")
        return self._canonical(stage, vector)

    def from_ambient(self, stage: int, vector: tuple[int, ...] | list[int]) -> "LimitElement":
        """Element represented by an ambient Z^r vector at a stage.

        Pushing forward r more steps lands the vector in the eventual
        lattice, where it is re-expressed in the lattice basis.
        """
        if len(vector) != self.ambient_rank:
            raise ValueError("vector length must equal the ambient rank")
        pushed = self.endomorphism.power(self.ambient_rank).mul_vector(vector)
        coords = solve_columns(self.eventual_basis, IntMatrix.column(pushed))
        if coords is None:
            raise AssertionError("pushed vector must lie in the eventual lattice")
        return self._canonical(stage + self.ambient_rank, coords.col(0))

    def _canonical(self, stage: int, vector: tuple[int, ...]) -> "LimitElement":
        # Minimal stage: retract through T' while the vector stays integral.
        while stage > 0:
            pre = solve_columns(self.reduced_endomorphism, IntMatrix.column(vector))
            if pre is None:
                break
            vector = pre.col(0)
            stage -= 1
        return LimitElement(self, stage, tuple(vector))

    def _promote(self, el: "LimitElement", stage: int) -> tuple[int, ...]:
        v = el.vector
        for _ in range(stage - el.stage):
            v = self.reduced_endomorphism.mul_vector(v)
        return v

    def classify(self) -> Classification:
        t = self.reduced_endomorphism
        r = self.eventual_rank
        det = determinant(t)
        if abs(det) == 1:
            return Classification(kind="free_abelian", rank=r)
        if r == 1 and abs(t[0, 0]) >= 2:
            return Classification(kind="z_one_over", rank=1, n=abs(t[0, 0]))
        return Classification(
            kind="generic", rank=r, presentation=tuple(tuple(row) for row in t.to_rows())
        )

    def __repr__(self) -> str:
        return (
            f"StationaryLimitGroup(ambient_rank={self.ambient_rank}, "
            f"eventual_rank={self.eventual_rank}, classify={self.classify()})"
        )


@dataclass(frozen=True)
class LimitElement:
    """Canonical representative (stage, vector): stage 0 or vector not in im T'."""

    group: StationaryLimitGroup
    stage: int
    vector: tuple[int, ...]


def make_limit(T: IntMatrix) -> StationaryLimitGroup:
    return StationaryLimitGroup(T)


def element_equal(a: LimitElement, b: LimitElement) -> bool:
    if a.group is not b.group:
        raise ValueError("elements of different groups")
    m = max(a.stage, b.stage)
    return a.group._promote(a, m) == b.group._promote(b, m)


def element_add(a: LimitElement, b: LimitElement) -> LimitElement:
    if a.group is not b.group:
        raise ValueError("elements of different groups")
    m = max(a.stage, b.stage)
    va = a.group._promote(a, m)
    vb = b.group._promote(b, m)
    return a.group.element(m, tuple(x + y for x, y in zip(va, vb)))


def element_negate(a: LimitElement) -> LimitElement:
    return a.group.element(a.stage, tuple(-x for x in a.vector))


def element_positive(a: LimitElement) -> bool:
    """Strict positivity, defined for rank-one limits with a positive
    connecting number (the Z[1/n] case): the element is a rational v / n^k
    and its sign is the sign of v.
    """
    g = a.group
    if g.eventual_rank != 1 or g.reduced_endomorphism[0, 0] <= 0:
        raise ValueError("order structure is only defined for Z[1/n]-type limits")
    return a.vector[0] > 0


def classify(group: StationaryLimitGroup) -> Classification:
    return group.classify()


def stationary_torsion_limit(moduli: tuple[int, ...], endo: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of the stationary limit of a finite abelian group.

    The group is the direct sum of Z/m for m in moduli (each m > 1) and the
    endomorphism is given by an integer matrix in those coordinates.  The
    limit is isomorphic to the eventual image, reached after finitely many
    iterations.
    """
    s = len(moduli)
    if endo.shape != (s, s):
        raise ValueError("endomorphism shape must match the moduli")
    if any(m <= 1 for m in moduli):
        raise ValueError("moduli must all exceed 1")
    relations = IntMatrix(s, s, [moduli[i] if i == j else 0 for i in range(s) for j in range(s)])

    def subgroup_lattice(gens: IntMatrix) -> IntMatrix:
        return column_hnf(gens.hstack(relations))

    current = subgroup_lattice(IntMatrix.identity(s))
    while True:
        nxt = subgroup_lattice(endo @ current)
        if nxt == current:
            break
        current = nxt

    # Structure of (lattice of the eventual image) / (relations lattice).
    coords = solve_columns(current, relations)
    if coords is None:
        raise AssertionError("relations lattice must sit inside the image lattice")
    diag = smith_normal_form(coords).diagonal()
    return tuple(d for d in diag if d > 1)
