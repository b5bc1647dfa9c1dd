"""Built-in example data, each reproducible bit for bit.

Every fixture resolves to an exact ADHM datum; the charge-1 and line
fixtures also expose their native parameters for the rank-0 commands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .adhm import AdhmDatum
from .linalg import Matrix
from .rank0 import (
    Charge1Datum,
    LineConfig,
    charge1_to_datum,
    lines_to_datum,
    pair_parametrization,
)
from .scalars import rat


def _gitvsfj() -> AdhmDatum:
    return AdhmDatum(
        2, 1,
        b10=Matrix.from_rows([[1, 1], [0, 0]]),
        b11=Matrix.from_rows([[0, 0], [1, 1]]),
        b20=Matrix.from_rows([[1, -1], [0, 0]]),
        b21=Matrix.from_rows([[0, 0], [1, -1]]),
        i0=Matrix.from_rows([[1], [0]]),
        i1=Matrix.from_rows([[0], [1]]),
        j0=Matrix.from_rows([[0, 2]]),
        j1=Matrix.from_rows([[-2, 0]]),
    )


def staircase_datum(c: int, r: int) -> AdhmDatum:
    """Zero pencils and framing-out, framing-in the two-shift staircase
    (i0 the left identity block, i1 shifted one column right)."""
    if r < c + 1:
        raise ValueError("staircase needs r >= c + 1")
    i0 = Matrix.from_rows(
        [[1 if k == m else 0 for k in range(r)] for m in range(c)], cols=r
    )
    i1 = Matrix.from_rows(
        [[1 if k == m + 1 else 0 for k in range(r)] for m in range(c)], cols=r
    )
    return AdhmDatum(
        c, r,
        Matrix.zero(c, c), Matrix.zero(c, c),
        Matrix.zero(c, c), Matrix.zero(c, c),
        i0, i1,
        Matrix.zero(r, c), Matrix.zero(r, c),
    )


def charge1_nonsingular() -> Charge1Datum:
    return Charge1Datum.of([1, 0], [2, 0], [0, 1], [0, 1])


def charge1_rank2() -> Charge1Datum:
    return Charge1Datum.of([1, 0], [2, 0], [0, 0], [0, 0])


def lines_demo() -> LineConfig:
    return LineConfig.of([(0, 0, 0, 0), (1, 2, 3, 4)])


def c2_components_sample() -> AdhmDatum:
    """A shared-parameter point of the charge-2 rank-0 variety (the
    component dominated by line configurations)."""
    params = [rat(1), rat(2), rat(3), rat(4), rat(5), rat(6),
              rat(1), rat(2), rat(7), rat(8), rat(9), rat(10)]
    return pair_parametrization(params)


@dataclass(frozen=True)
class Fixture:
    id: str
    kind: str
    description: str
    datum: Callable[[], AdhmDatum]


FIXTURES: dict[str, Fixture] = {
    "gitvsfj": Fixture(
        id="gitvsfj",
        kind="adhm",
        description=(
            "rank 1, charge 2 datum that is regular (stable and costable) "
            "yet pointwise unstable at every point of the line"
        ),
        datum=_gitvsfj,
    ),
    "fj-counterexample": Fixture(
        id="fj-counterexample",
        kind="adhm",
        description=(
            "rank 4, charge 3 staircase datum: pointwise stable everywhere "
            "but the moment map is not a submersion (obstruction space of "
            "dimension 3)"
        ),
        datum=lambda: staircase_datum(3, 4),
    ),
    "charge1-nonsingular": Fixture(
        id="charge1-nonsingular",
        kind="charge1",
        description=(
            "charge 1, rank 2 datum with dependent framing-in vectors that "
            "is stable, not pointwise stable, yet a smooth point (moment "
            "derivative of full rank 3)"
        ),
        datum=lambda: charge1_to_datum(charge1_nonsingular()),
    ),
    "charge1-rank2": Fixture(
        id="charge1-rank2",
        kind="charge1",
        description=(
            "charge 1, rank 2 datum with dependent framing-in vectors and "
            "zero framing-out: stable but singular (moment derivative of "
            "rank 2)"
        ),
        datum=lambda: charge1_to_datum(charge1_rank2()),
    ),
    "c2-components": Fixture(
        id="c2-components",
        kind="c2",
        description=(
            "charge 2 rank-0 datum built from the two-parameter commuting "
            "family at a shared-parameter point"
        ),
        datum=c2_components_sample,
    ),
    "lines-demo": Fixture(
        id="lines-demo",
        kind="lines",
        description=(
            "rank-0 datum supported on two disjoint lines away from the "
            "line at infinity"
        ),
        datum=lambda: lines_to_datum(lines_demo()),
    ),
}


class UnknownFixture(KeyError):
    pass


def get_fixture_datum(fixture_id: str) -> AdhmDatum:
    try:
        return FIXTURES[fixture_id].datum()
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {fixture_id!r}; known: {', '.join(sorted(FIXTURES))}"
        ) from None


def list_fixtures() -> list[dict]:
    out = []
    for fid in sorted(FIXTURES):
        fixture = FIXTURES[fid]
        datum = fixture.datum()
        out.append({
            "id": fixture.id,
            "kind": fixture.kind,
            "c": datum.c,
            "r": datum.r,
            "description": fixture.description,
        })
    return out
