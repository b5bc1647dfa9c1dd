"""HTTP service exposing the toolkit operations.

Every endpoint is a pure function of its request body: exact scalars
travel as strings in the canonical grammar, reports come back as typed
JSON. The CLI drives the same handlers in-process; run the server with
``adhmkit serve`` (or ``uvicorn adhmkit.service:app``) for remote use.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import reports
from .adhm import InvariantViolation

LinearForm = dict[str, str]


class DatumModel(BaseModel):
    """ADHM datum document; linear forms map coordinate names to exact
    scalar strings, absent keys meaning zero."""

    c: int = Field(ge=0)
    r: int = Field(ge=0)
    B1: list[list[LinearForm]]
    B2: list[list[LinearForm]]
    i: list[list[LinearForm]]
    j: list[list[LinearForm]]


class DatumRequest(BaseModel):
    fixture: str | None = None
    datum: DatumModel | None = None

    def resolve(self):
        raw = self.datum.model_dump() if self.datum is not None else None
        return reports.resolve_datum(self.fixture, raw)


class CheckRequest(DatumRequest):
    max_c: int = Field(default=8, ge=0, le=12)


class MonadRequest(DatumRequest):
    point: list[str] | None = None
    line: list[list[str]] | None = None
    include_minors: bool = False
    include_matrices: bool = True


class DeformRequest(DatumRequest):
    include_complex: bool = False


class DuRequest(DatumRequest):
    require_stable: bool = True
    include_polystable: bool = False


class Charge1Model(BaseModel):
    x: list[str]
    y: list[str]
    z: list[str]
    w: list[str]


class Rank0Request(BaseModel):
    lines: list[list[str]] | None = None
    traces: int | None = Field(default=None, ge=1, le=10)
    charge1: Charge1Model | None = None
    c2_fixtures: bool = False
    samples_per_ideal: int = Field(default=50, ge=1, le=500)
    intersection_samples: int = Field(default=20, ge=1, le=500)
    seed: int = 0


class PointModel(BaseModel):
    a: str
    b: str


class LocusModel(BaseModel):
    kind: str
    points: list[PointModel]
    residual: str | None


class ChernModel(BaseModel):
    rank: int
    charge: int


class CheckResponse(BaseModel):
    c: int
    r: int
    chern: ChernModel
    is_adhm: bool
    stable: bool
    costable: bool
    regular: bool
    fj_stable: bool
    fj_semistable: bool
    fj_costable: bool
    fj_regular: bool
    unstable_locus: LocusModel
    uncostable_locus: LocusModel


class FramingModel(BaseModel):
    valid: bool
    rank: int
    alpha_certificate: str
    beta_certificate: str
    w_summand: list[int]
    failure: str | None


class EvaluationModel(BaseModel):
    point: str
    rank_alpha: int
    rank_beta: int
    ker_alpha_dim: int
    coker_beta_dim: int
    fiber_dim: int | None


class LineLocusModel(BaseModel):
    whole_line: bool
    params: list[str]
    points: list[str]
    infinity_degenerate: bool
    residual: str | None


class RestrictionModel(BaseModel):
    p0: str
    p1: str
    alpha_locus: LineLocusModel
    beta_locus: LineLocusModel


class MonadResponse(BaseModel):
    c: int
    r: int
    beta_alpha_zero: bool
    framing: FramingModel
    alpha: list[list[LinearForm]] | None
    beta: list[list[LinearForm]] | None
    evaluation: EvaluationModel | None
    restriction: RestrictionModel | None
    alpha_minors: list[str] | None
    beta_minors: list[str] | None


class DeformResponse(BaseModel):
    c: int
    r: int
    h0: int
    h1: int
    h2: int
    rank_d0: int
    rank_dmu: int
    expected_dim: int
    euler_characteristic: int
    stable: bool
    smooth_point: bool
    surjectivity_criterion: bool | None
    d0: list[list[str]] | None
    d1: list[list[str]] | None


class SubspaceModel(BaseModel):
    ambient_dim: int
    basis: list[list[str]]


class PolystableModel(BaseModel):
    split: bool
    v1: SubspaceModel
    v2: SubspaceModel
    x1: DatumModel | None
    x2: DatumModel | None
    x1_regular: bool | None
    rank0_closed_orbit: str | None


class DuResponse(BaseModel):
    c: int
    r: int
    c_prime: int
    rank0_charge: int
    v2: SubspaceModel
    regular_part: DatumModel
    rank0_part: DatumModel
    input_stable: bool
    regular_part_regular: bool
    polystable: PolystableModel | None


class LinesSection(BaseModel):
    c: int
    datum: DatumModel
    is_adhm: bool
    stable: bool
    trace_max_len: int
    traces: dict[str, str]


class Charge1Section(BaseModel):
    r: int
    residuals: list[str]
    is_adhm: bool
    dmu_rank: int
    stable: bool
    costable: bool
    fj_stable: bool
    assembled_datum: DatumModel


class C2Section(BaseModel):
    symbolic_commutator_zero: bool
    samples_per_ideal: int
    ideal_samples_passing: dict[str, int]
    intersection_samples: int
    intersection_samples_passing: int
    isotropy_samples: int
    isotropy_samples_passing: int
    seed: int
    all_passed: bool


class Rank0Response(BaseModel):
    lines: LinesSection | None = None
    charge1: Charge1Section | None = None
    c2: C2Section | None = None


class FixtureInfo(BaseModel):
    id: str
    kind: str
    c: int
    r: int
    description: str


class FixturesResponse(BaseModel):
    fixtures: list[FixtureInfo]


app = FastAPI(
    title="adhmkit",
    description=(
        "Exact-arithmetic analysis of ADHM data on the projective line: "
        "stability, pointwise-stability loci, the associated monad on "
        "projective 3-space, deformation cohomology and rank-0 module "
        "invariants."
    ),
    version="0.1.0",
)


def _run(handler, *args, **kwargs):
    try:
        return handler(*args, **kwargs)
    except reports.InputError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    except InvariantViolation as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from None


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/fixtures", response_model=FixturesResponse)
def fixtures() -> dict:
    return reports.fixtures_report()


@app.post("/check", response_model=CheckResponse)
def check(request: CheckRequest) -> dict:
    datum = _run(request.resolve)
    return _run(reports.check_report, datum, request.max_c)


@app.post("/monad", response_model=MonadResponse)
def monad(request: MonadRequest) -> dict:
    datum = _run(request.resolve)
    return _run(
        reports.monad_report, datum,
        point=request.point, line=request.line,
        include_minors=request.include_minors,
        include_matrices=request.include_matrices,
    )


@app.post("/deform", response_model=DeformResponse)
def deform(request: DeformRequest) -> dict:
    datum = _run(request.resolve)
    return _run(reports.deform_report, datum, include_complex=request.include_complex)


@app.post("/du", response_model=DuResponse)
def du(request: DuRequest) -> dict:
    datum = _run(request.resolve)
    return _run(
        reports.du_report, datum,
        require_stable=request.require_stable,
        include_polystable=request.include_polystable,
    )


@app.post("/rank0", response_model=Rank0Response)
def rank0_endpoint(request: Rank0Request) -> dict:
    sections: dict = {}
    if request.lines is not None:
        sections["lines"] = _run(
            reports.rank0_lines_report, request.lines, request.traces
        )
    if request.charge1 is not None:
        sections["charge1"] = _run(
            reports.rank0_charge1_report,
            request.charge1.x, request.charge1.y,
            request.charge1.z, request.charge1.w,
        )
    if request.c2_fixtures:
        sections["c2"] = _run(
            reports.rank0_c2_report,
            request.samples_per_ideal, request.intersection_samples, request.seed,
        )
    if not sections:
        raise HTTPException(
            status_code=422,
            detail="provide lines, charge1 or c2_fixtures",
        )
    return sections
