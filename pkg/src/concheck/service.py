"""HTTP front end: verify circuits, run relation operations, drive suites.

Thin wrapper over the library; request/response bodies are pydantic models
and every domain failure maps to a structured 400/422 payload. Constraint
violations from `/check` are results, not errors: they come back as status
"violation" with the counter-witness.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import circuits, oracles, relations, serialize
from .errors import ConcheckError, UnsatisfiedConstraint

app = FastAPI(
    title="concheck",
    description="Exact verification of composable constraints on finite structures",
    version="0.1.0",
)


class RelationModel(BaseModel):
    src: list[str]
    dst: list[str]
    pairs: list[tuple[int, int]]

    @classmethod
    def from_relation(cls, rel) -> "RelationModel":
        return cls(**serialize.relation_to_obj(rel))

    def to_relation(self):
        return serialize.relation_from_obj(self.model_dump())


class RelOpRequest(BaseModel):
    relations: list[RelationModel] = Field(default_factory=list)
    src: list[str] | None = None
    dst: list[str] | None = None


class RelOpResponse(BaseModel):
    relations: list[RelationModel]


class CheckRequest(BaseModel):
    circuit: dict[str, Any]


class CheckResponse(BaseModel):
    status: Literal["ok", "violation"]
    encoding: str
    constraint: dict[str, Any] | None = None
    morphism: str | None = None
    witness: dict[str, Any] | None = None


class OracleRequest(BaseModel):
    cap: int | None = None
    seed: int = oracles.DEFAULT_SEED


class OracleResponse(BaseModel):
    suite: str
    seed: int
    passed: bool
    cases: int
    failures: list[Any]
    parts: dict[str, Any]
    witness: dict[str, Any] | None = None


@app.exception_handler(ConcheckError)
async def _domain_error(request, exc: ConcheckError):
    payload = {"error": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, UnsatisfiedConstraint):
        payload["witness"] = exc.witness
    return JSONResponse(status_code=400, content=payload)


@app.exception_handler(ValueError)
async def _value_error(request, exc: ValueError):
    return JSONResponse(
        status_code=400, content={"error": "ValueError", "detail": str(exc)}
    )


@app.get("/health")
def health():
    return {"status": "ok", "suites": list(oracles.SUITES)}


@app.post("/check", response_model=CheckResponse)
def check(request: CheckRequest) -> CheckResponse:
    report = circuits.check_circuit(request.circuit)
    return CheckResponse(**report)


_REL_OPS = ("compose", "meet", "converse", "generators")


@app.post("/rel/{op}", response_model=RelOpResponse)
def rel_op(op: str, request: RelOpRequest) -> RelOpResponse:
    if op not in _REL_OPS:
        raise ValueError(f"unknown relation op {op!r}; expected one of {_REL_OPS}")
    if op == "generators":
        if request.src is None or request.dst is None:
            raise ValueError("generators needs 'src' and 'dst' label lists")
        out = relations.meet_generators(request.src, request.dst)
    elif op == "converse":
        if len(request.relations) != 1:
            raise ValueError("converse takes exactly one relation")
        out = [relations.converse(request.relations[0].to_relation())]
    else:
        if len(request.relations) != 2:
            raise ValueError(f"{op} takes exactly two relations")
        first, second = (r.to_relation() for r in request.relations)
        if op == "compose":
            # pipeline order: the first listed relation is applied first
            out = [relations.compose(second, first)]
        else:
            out = [relations.meet(first, second)]
    return RelOpResponse(relations=[RelationModel.from_relation(r) for r in out])


@app.post("/oracle/{suite}", response_model=OracleResponse)
def oracle(suite: str, request: OracleRequest) -> OracleResponse:
    if suite not in oracles.SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {oracles.SUITES}")
    summary = oracles.run_suite(suite, cap=request.cap, seed=request.seed)
    return OracleResponse(**summary)
