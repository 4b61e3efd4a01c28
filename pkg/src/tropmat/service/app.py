"""HTTP service exposing the library as stateless JSON endpoints.

Every endpoint is a pure function of its request body.  Input problems
return 400 with {"error": {"kind": "input", ...}}; a failed verified
identity (which signals a bug or an instance outside the theory) returns
409 with kind "theorem".
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import InputError, TheoremViolation
from ..corpus import DEFAULT_GRID, CorpusSpec, corpus_presentations
from ..extension import (
    certificate_bases,
    extend,
    extensions_injective,
    meet,
    nonminimal_collision,
    present_extension_minimally,
)
from ..lab import check_valuated, open_question_search, run_pinned_rank2_probe
from ..presentation import Presentation, decompose, is_minimal, minimize
from ..serialize import (
    column_from_json,
    decomposition_to_json,
    default_labels,
    matrix_from_json,
    matrix_to_json,
    matroid_to_json,
    parse_subset_key,
    subset_key,
    valuated_from_json,
    valuated_to_json,
)
from ..trop import INF, format_scalar, parse_scalar
from ..verify import run_suite
from ..bits import elements_of, full_mask, subsets_of_size
from . import schemas

app = FastAPI(
    title="tropmat",
    description="Exact min-plus presentations of transversal valuated matroids",
    version="0.1.0",
)


@app.exception_handler(InputError)
async def _input_error(_: Request, exc: InputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": {"kind": "input", "message": str(exc)}})


@app.exception_handler(TheoremViolation)
async def _theorem_error(_: Request, exc: TheoremViolation) -> JSONResponse:
    return JSONResponse(status_code=409, content={"error": {"kind": "theorem", "message": str(exc)}})


def _labels(model: schemas.MatrixModel, matrix, star: bool = False) -> list[str]:
    if model.labels is not None:
        if len(model.labels) != matrix.n:
            raise InputError(f"{len(model.labels)} labels for {matrix.n} columns")
        return list(model.labels)
    return default_labels(matrix.n, star=star)


def _presentation(model: schemas.MatrixModel) -> Presentation:
    return Presentation(matrix_from_json(model.model_dump()))


@app.get("/health")
async def health() -> dict:
    return {"status": "ok"}


@app.post("/stiefel", response_model=schemas.StiefelResponse)
def stiefel_endpoint(req: schemas.StiefelRequest) -> schemas.StiefelResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix)
    return schemas.StiefelResponse(
        mu=schemas.ValuatedModel(**valuated_to_json(pres.mu, labels)),
        underlying=schemas.MatroidModel(**matroid_to_json(pres.mu.underlying())),
        labels=labels,
    )


@app.post("/check-pluecker", response_model=schemas.CheckPlueckerResponse)
def check_pluecker_endpoint(req: schemas.CheckPlueckerRequest) -> schemas.CheckPlueckerResponse:
    values = {mask: INF for mask in subsets_of_size(full_mask(req.n), req.d)}
    for key, text in req.values.items():
        mask = parse_subset_key(key, req.n)
        if mask not in values:
            raise InputError(f"subset {key!r} does not have size {req.d}")
        values[mask] = parse_scalar(text)
    ok, failure = check_valuated(req.n, req.d, values)
    return schemas.CheckPlueckerResponse(ok=ok, failure=failure)


@app.post("/underlying", response_model=schemas.UnderlyingResponse)
def underlying_endpoint(req: schemas.UnderlyingRequest) -> schemas.UnderlyingResponse:
    mu = valuated_from_json(req.mu.model_dump())
    labels = req.mu.labels or default_labels(mu.n)
    return schemas.UnderlyingResponse(
        underlying=schemas.MatroidModel(**matroid_to_json(mu.underlying())), labels=labels
    )


@app.post("/dapx", response_model=schemas.DapxResponse)
def dapx_endpoint(req: schemas.DapxRequest) -> schemas.DapxResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix)
    apx = pres.apex()
    return schemas.DapxResponse(
        apex=schemas.MatrixModel(**matrix_to_json(apx.matrix, labels)),
        decomposition=decomposition_to_json(apx),
        labels=labels,
    )


@app.post("/decompose", response_model=schemas.DecomposeResponse)
def decompose_endpoint(req: schemas.DecomposeRequest) -> schemas.DecomposeResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix)
    if req.apex_of is None:
        apx = pres.apex()
    else:
        apx = _presentation(req.apex_of).apex()
    dec = decompose(pres, apx)
    return schemas.DecomposeResponse(decomposition=decomposition_to_json(dec), labels=labels)


@app.post("/is-minimal", response_model=schemas.IsMinimalResponse)
def is_minimal_endpoint(req: schemas.IsMinimalRequest) -> schemas.IsMinimalResponse:
    return schemas.IsMinimalResponse(minimal=is_minimal(_presentation(req.matrix)))


@app.post("/minimize", response_model=schemas.MinimizeResponse)
def minimize_endpoint(req: schemas.MinimizeRequest) -> schemas.MinimizeResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix)
    keep = None
    if req.keep is not None:
        if req.keep not in labels:
            raise InputError(f"keep label {req.keep!r} not among column labels")
        keep = labels.index(req.keep)
    out = minimize(pres, keep=keep)
    return schemas.MinimizeResponse(
        matrix=schemas.MatrixModel(**matrix_to_json(out.matrix, labels)), labels=labels
    )


@app.post("/extend", response_model=schemas.ExtendResponse)
def extend_endpoint(req: schemas.ExtendRequest) -> schemas.ExtendResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix) + ["*"]
    x = column_from_json({"x": req.x}, pres.d)
    ext = extend(pres, x)
    return schemas.ExtendResponse(
        extension=schemas.ValuatedModel(**valuated_to_json(ext.ext, labels)), labels=labels
    )


@app.post("/collide", response_model=schemas.CollideResponse)
def collide_endpoint(req: schemas.CollideRequest) -> schemas.CollideResponse:
    pres = _presentation(req.matrix)
    row, x, y = nonminimal_collision(pres)
    return schemas.CollideResponse(
        row=row + 1,
        x=[format_scalar(a) for a in x],
        y=[format_scalar(a) for a in y],
    )


@app.post("/certificates", response_model=schemas.CertificatesResponse)
def certificates_endpoint(req: schemas.CertificatesRequest) -> schemas.CertificatesResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix) + ["*"]
    verdict = extensions_injective(pres, trials=20, seed=0)
    if verdict.verdict == "INJECTIVE":
        certs = [
            schemas.CertificateModel(
                row=c.row + 1,
                subset=[labels[e] for e in elements_of(c.subset)],
                a=format_scalar(c.a),
            )
            for c in verdict.certificates
        ]
        return schemas.CertificatesResponse(verdict="INJECTIVE", certificates=certs)
    row, x, y = verdict.collision
    return schemas.CertificatesResponse(
        verdict="COLLISION",
        witness=schemas.CollideResponse(
            row=row + 1,
            x=[format_scalar(a) for a in x],
            y=[format_scalar(a) for a in y],
        ),
    )


@app.post("/meet", response_model=schemas.MeetResponse)
def meet_endpoint(req: schemas.MeetRequest) -> schemas.MeetResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix) + ["*"]
    x = column_from_json({"x": req.x}, pres.d)
    y = column_from_json({"x": req.y}, pres.d)
    out = meet(pres, x, y)
    return schemas.MeetResponse(
        extension=schemas.ValuatedModel(**valuated_to_json(out.ext, labels)), labels=labels
    )


@app.post("/present-min", response_model=schemas.PresentMinResponse)
def present_min_endpoint(req: schemas.PresentMinRequest) -> schemas.PresentMinResponse:
    pres = _presentation(req.matrix)
    labels = _labels(req.matrix, pres.matrix, star=True)
    res = present_extension_minimally(pres.mu, pres)
    return schemas.PresentMinResponse(
        base=schemas.MatrixModel(**matrix_to_json(res.base.matrix, labels[:-1])),
        x=[format_scalar(a) for a in res.x],
        full=schemas.MatrixModel(**matrix_to_json(res.full.matrix, labels)),
        labels=labels,
    )


def _grid(values: list[str] | None):
    if values is None:
        return DEFAULT_GRID
    from fractions import Fraction

    return tuple(Fraction(v) for v in values)


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify_endpoint(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    from fractions import Fraction

    spec = CorpusSpec(
        n=req.n,
        d=req.d,
        count=req.count,
        seed=req.seed,
        inf_probability=Fraction(req.inf_probability),
        value_grid=_grid(req.value_grid),
    )
    report = run_suite(req.suite, spec, trials=req.trials)
    return schemas.VerifyResponse(report=report, ok=report["ok"])


@app.post("/lab", response_model=schemas.LabResponse)
def lab_endpoint(req: schemas.LabRequest) -> schemas.LabResponse:
    if req.pinned == "u23":
        return schemas.LabResponse(reports=[run_pinned_rank2_probe()])
    reports = open_question_search(req.n, req.d, req.trials, req.seed)
    return schemas.LabResponse(reports=reports)


@app.post("/gen", response_model=schemas.GenResponse)
def gen_endpoint(req: schemas.GenRequest) -> schemas.GenResponse:
    from fractions import Fraction

    spec = CorpusSpec(
        n=req.n,
        d=req.d,
        count=req.count,
        seed=req.seed,
        inf_probability=Fraction(req.inf_probability),
        value_grid=_grid(req.value_grid),
    )
    instances = [
        schemas.MatrixModel(**matrix_to_json(pres.matrix))
        for _, pres in corpus_presentations(spec)
    ]
    return schemas.GenResponse(instances=instances)
