"""Operation handlers shared by the HTTP service and the CLI.

Each handler takes exact inputs and returns a JSON-ready dict whose
leaves are strings (exact scalars and polynomials), ints and bools.
Identical inputs always produce identical dicts.
"""

from __future__ import annotations

from . import adhm, deform, monad, rank0
from .adhm import AdhmDatum
from .fixtures import get_fixture_datum, list_fixtures
from .jsonio import (
    DatumSchemaError,
    datum_to_json,
    line_locus_to_json,
    locus_to_json,
    matrix_to_json,
    parse_datum,
    polymatrix_to_json,
    subspace_to_json,
)
from .monad import P3Point
from .rank0 import Charge1Datum, LineConfig
from .scalars import parse_scalar


class InputError(ValueError):
    """Bad request payload: unknown fixture, schema violation, or an
    operation precondition failure on otherwise well-formed input."""


def resolve_datum(fixture: str | None, datum: dict | None) -> AdhmDatum:
    if (fixture is None) == (datum is None):
        raise InputError("provide exactly one of a fixture id or a datum document")
    if fixture is not None:
        try:
            return get_fixture_datum(fixture)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    try:
        return parse_datum(datum)
    except DatumSchemaError as exc:
        raise InputError(str(exc)) from None


def _parse_point4(values: list[str]) -> P3Point:
    if len(values) != 4:
        raise InputError("a point of projective 3-space needs four coordinates")
    try:
        return P3Point.of(*(parse_scalar(v) for v in values))
    except (ValueError, monad.MonadError) as exc:
        raise InputError(str(exc)) from None


def check_report(x: AdhmDatum, max_c: int = 8) -> dict:
    try:
        unstable = adhm.unstable_locus(x, max_c)
        uncostable = adhm.uncostable_locus(x, max_c)
    except adhm.SizeLimitError as exc:
        raise InputError(str(exc)) from None
    stable = adhm.is_stable(x)
    costable = adhm.is_costable(x)
    fj_stable = unstable.is_empty()
    fj_semistable = unstable.kind is not adhm.LocusKind.WHOLE_LINE
    fj_costable = uncostable.is_empty()
    rank, charge = adhm.chern(x)
    return {
        "c": x.c,
        "r": x.r,
        "chern": {"rank": rank, "charge": charge},
        "is_adhm": adhm.is_adhm(x),
        "stable": stable,
        "costable": costable,
        "regular": stable and costable,
        "fj_stable": fj_stable,
        "fj_semistable": fj_semistable,
        "fj_costable": fj_costable,
        "fj_regular": fj_stable and fj_costable,
        "unstable_locus": locus_to_json(unstable),
        "uncostable_locus": locus_to_json(uncostable),
    }


def monad_report(x: AdhmDatum, point: list[str] | None = None,
                 line: list[list[str]] | None = None,
                 include_minors: bool = False,
                 include_matrices: bool = True) -> dict:
    try:
        m = monad.build_monad(x)
    except adhm.MomentNonzeroError as exc:
        raise InputError(str(exc)) from None
    framing = monad.check_framing(m)
    out: dict = {
        "c": m.c,
        "r": m.r,
        "beta_alpha_zero": True,
        "framing": {
            "valid": framing.valid,
            "rank": framing.rank,
            "alpha_certificate": str(framing.alpha_certificate),
            "beta_certificate": str(framing.beta_certificate),
            "w_summand": list(framing.w_summand),
            "failure": framing.failure,
        },
        "alpha": None,
        "beta": None,
        "evaluation": None,
        "restriction": None,
        "alpha_minors": None,
        "beta_minors": None,
    }
    if include_matrices:
        out["alpha"] = polymatrix_to_json(m.alpha)
        out["beta"] = polymatrix_to_json(m.beta)
    if point is not None:
        p = _parse_point4(point)
        report = monad.eval_monad(m, p)
        out["evaluation"] = {
            "point": str(p),
            "rank_alpha": report.rank_alpha,
            "rank_beta": report.rank_beta,
            "ker_alpha_dim": report.ker_alpha_dim,
            "coker_beta_dim": report.coker_beta_dim,
            "fiber_dim": report.fiber_dim,
        }
    if line is not None:
        if len(line) != 2:
            raise InputError("a line needs exactly two points")
        p0 = _parse_point4(line[0])
        p1 = _parse_point4(line[1])
        try:
            restriction = monad.restriction_pencil(m, p0, p1)
        except monad.MonadError as exc:
            raise InputError(str(exc)) from None
        out["restriction"] = {
            "p0": str(p0),
            "p1": str(p1),
            "alpha_locus": line_locus_to_json(restriction.alpha_locus),
            "beta_locus": line_locus_to_json(restriction.beta_locus),
        }
    if include_minors:
        out["alpha_minors"] = [str(p) for p in monad.alpha_degeneracy_minors(m)]
        out["beta_minors"] = [str(p) for p in monad.beta_degeneracy_minors(m)]
    return out


def deform_report(x: AdhmDatum, include_complex: bool = False) -> dict:
    try:
        report = deform.cohomology_dims(x)
    except adhm.MomentNonzeroError as exc:
        raise InputError(str(exc)) from None
    surjective = None
    if report.stable:
        surjective = deform.surjectivity_criterion(x)
    out: dict = {
        "c": x.c,
        "r": x.r,
        "h0": report.h0,
        "h1": report.h1,
        "h2": report.h2,
        "rank_d0": report.rank_d0,
        "rank_dmu": report.rank_dmu,
        "expected_dim": report.expected_dim,
        "euler_characteristic": report.euler_characteristic(),
        "stable": report.stable,
        "smooth_point": report.smooth_point,
        "surjectivity_criterion": surjective,
        "d0": None,
        "d1": None,
    }
    if include_complex:
        complex_ = deform.deformation_complex(x)
        out["d0"] = matrix_to_json(complex_.d0)
        out["d1"] = matrix_to_json(complex_.d1)
    return out


def du_report(x: AdhmDatum, require_stable: bool = True,
              include_polystable: bool = False) -> dict:
    try:
        decomposition = adhm.du_decompose(x, require_stable=require_stable)
    except (adhm.MomentNonzeroError, adhm.NotStableError) as exc:
        raise InputError(str(exc)) from None
    return {
        "c": x.c,
        "r": x.r,
        "c_prime": decomposition.c_prime,
        "rank0_charge": decomposition.v2.dim,
        "v2": subspace_to_json(decomposition.v2),
        "regular_part": datum_to_json(decomposition.regular_part),
        "rank0_part": datum_to_json(decomposition.rank0_part),
        "input_stable": decomposition.input_stable,
        "regular_part_regular": decomposition.regular_part_regular,
        "polystable": polystable_report(x) if include_polystable else None,
    }


def polystable_report(x: AdhmDatum) -> dict:
    try:
        result = adhm.try_polystable_split(x)
    except adhm.MomentNonzeroError as exc:
        raise InputError(str(exc)) from None
    if isinstance(result, adhm.NotSplit):
        return {
            "split": False,
            "v1": subspace_to_json(result.v1),
            "v2": subspace_to_json(result.v2),
            "x1": None,
            "x2": None,
            "x1_regular": None,
            "rank0_closed_orbit": None,
        }
    return {
        "split": True,
        "v1": subspace_to_json(result.v1),
        "v2": subspace_to_json(result.v2),
        "x1": datum_to_json(result.x1),
        "x2": datum_to_json(result.x2),
        "x1_regular": result.x1_regular,
        "rank0_closed_orbit": result.rank0_closed_orbit,
    }


def _parse_scalar_list(values, what: str):
    try:
        return [parse_scalar(v) for v in values]
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def rank0_lines_report(lines: list[list[str]], traces: int | None = None) -> dict:
    config = LineConfig.of([_parse_scalar_list(quad, "line") for quad in lines])
    datum = rank0.lines_to_datum(config)
    module = rank0.datum_to_module(datum)
    vector = rank0.trace_invariants(module, traces)
    return {
        "c": datum.c,
        "datum": datum_to_json(datum),
        "is_adhm": True,
        "stable": adhm.is_stable(datum),
        "trace_max_len": vector.max_len,
        "traces": {
            "*".join(word) if word else "1": str(vector.entries[word])
            for word in vector.words()
        },
    }


def rank0_charge1_report(x: list[str], y: list[str], z: list[str],
                         w: list[str]) -> dict:
    datum = Charge1Datum.of(
        _parse_scalar_list(x, "x"), _parse_scalar_list(y, "y"),
        _parse_scalar_list(z, "z"), _parse_scalar_list(w, "w"),
    )
    residuals = rank0.charge1_residuals(datum)
    flags = rank0.charge1_classify(datum)
    assembled = rank0.charge1_to_datum(datum)
    return {
        "r": datum.r,
        "residuals": [str(v) for v in residuals],
        "is_adhm": all(v.is_zero() for v in residuals),
        "dmu_rank": rank0.charge1_dmu_rank(datum),
        "stable": flags.stable,
        "costable": flags.costable,
        "fj_stable": flags.fj_stable,
        "assembled_datum": datum_to_json(assembled),
    }


def rank0_c2_report(samples_per_ideal: int = 50, intersection_samples: int = 20,
                    seed: int = 0) -> dict:
    return rank0.c2_fixture_checks(samples_per_ideal, intersection_samples, seed)


def fixtures_report() -> dict:
    return {"fixtures": list_fixtures()}
