"""
RDMPF Toolkit - Backend API Server
==================================
FastAPI server exposing the KEM and signature operations over JSON (all binary
values hex-encoded) plus background demo jobs.

Endpoints:
- GET  /api/profiles, /api/security-table
- POST /api/kem/keygen | /api/kem/encaps | /api/kem/decaps
- POST /api/dsa/keygen | /api/dsa/sign | /api/dsa/verify
- POST /api/demo - Start a demo run (job)
- GET  /api/status/{job_id}, /api/results/{job_id}
"""

import logging
import secrets
import sys
from dataclasses import asdict
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import uvicorn
from fastapi import BackgroundTasks, FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

sys.path.insert(0, str(Path(__file__).parent))

from rdmpf import __version__, codec, config, dsa, kem, security
from rdmpf.errors import RdmpfError
from rdmpf.params import PROFILES, get_profile
from rdmpf_orchestrator import RdmpfOrchestrator

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="RDMPF Toolkit API",
    description="Post-quantum KEM and signatures over the rank-deficient matrix power function",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.API_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Jobs de demo en memoria (se pierden al reiniciar el proceso)
jobs: Dict[str, Dict[str, Any]] = {}


@app.exception_handler(RdmpfError)
async def rdmpf_error_handler(request: Request, exc: RdmpfError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


# ============================================================================
# MODELS
# ============================================================================

class KemKeygenRequest(BaseModel):
    """Request para generar un par de claves KEM"""
    profile: str = Field(default_factory=lambda: config.DEFAULT_PROFILE)
    seed_hex: Optional[str] = None

    model_config = ConfigDict(json_schema_extra={"example": {"profile": "toy-997"}})


class KeyPairResponse(BaseModel):
    pk_hex: str
    sk_hex: str


class EncapsRequest(BaseModel):
    pk_hex: str
    coins_hex: Optional[str] = None


class EncapsResponse(BaseModel):
    ct_hex: str
    shared_key_hex: str


class DecapsRequest(BaseModel):
    sk_hex: str
    ct_hex: str


class DecapsResponse(BaseModel):
    shared_key_hex: str


class DsaKeygenRequest(BaseModel):
    seed_hex: Optional[str] = None
    height: Optional[int] = Field(default=None, ge=1, le=config.MAX_MERKLE_HEIGHT)


class SignRequest(BaseModel):
    sk_hex: str
    message_hex: str


class SignResponse(BaseModel):
    signature_hex: str


class VerifyRequest(BaseModel):
    """Request de verificación; sin verifier_seed_hex se usa una semilla aleatoria"""
    pk_hex: str
    message_hex: str
    signature_hex: str
    verifier_seed_hex: Optional[str] = None


class VerifyResponse(BaseModel):
    result: str  # "accept" or "reject*"
    placeholder_hex: Optional[str] = None


class DemoRequest(BaseModel):
    """Request para una demo completa KEM + DSA"""
    profile: str = "toy-997"
    runs: int = Field(default=1, ge=1, le=100)
    height: Optional[int] = Field(default=None, ge=1, le=config.MAX_MERKLE_HEIGHT)
    case_name: Optional[str] = None

    model_config = ConfigDict(json_schema_extra={"example": {"profile": "toy-997", "runs": 3}})


class DemoResponse(BaseModel):
    job_id: str
    status: str
    message: str


class StatusResponse(BaseModel):
    """Status de una demo en progreso"""
    job_id: str
    status: str  # "pending", "running", "completed", "failed"
    progress: int
    elapsed_time_seconds: Optional[int] = None
    error: Optional[str] = None


class ResultsResponse(BaseModel):
    """Resultados completos de la demo"""
    job_id: str
    case_name: str
    status: str
    timestamp: str
    execution_time_seconds: float
    kem_results: List[Dict[str, Any]]
    dsa_results: List[Dict[str, Any]]
    pipeline_metrics: Dict[str, Any]
    summary: Dict[str, str]


# ============================================================================
# HELPERS
# ============================================================================

def _unhex(value: Optional[str], field: str) -> Optional[bytes]:
    if value is None:
        return None
    try:
        return bytes.fromhex(value)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"{field} is not valid hex")


def _profile(name: str):
    try:
        return get_profile(name)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


# ============================================================================
# BACKGROUND TASK - EJECUTAR DEMO
# ============================================================================

def run_rdmpf_demo(job_id: str, profile: str, runs: int, height: Optional[int], case_name: str):
    """Runs the demo pipeline and stores the results in the job table"""
    try:
        jobs[job_id]["status"] = "running"
        jobs[job_id]["started_at"] = datetime.now()

        # Bloqueante: corre en el thread pool de BackgroundTasks
        orchestrator = RdmpfOrchestrator(verbose=False, height=height)
        results = orchestrator.process(profile, runs, case_name)

        jobs[job_id]["status"] = "completed"
        jobs[job_id]["completed_at"] = datetime.now()
        jobs[job_id]["results"] = results
        jobs[job_id]["progress"] = 100

        elapsed = (jobs[job_id]["completed_at"] - jobs[job_id]["started_at"]).total_seconds()
        jobs[job_id]["execution_time_seconds"] = elapsed

    except Exception as e:
        logger.error("Demo job %s failed: %s", job_id, e)
        jobs[job_id]["status"] = "failed"
        jobs[job_id]["error"] = str(e)
        jobs[job_id]["completed_at"] = datetime.now()


# ============================================================================
# ENDPOINTS
# ============================================================================

@app.get("/")
async def root():
    """Health check"""
    return {
        "service": "RDMPF Toolkit API",
        "version": __version__,
        "status": "operational",
        "timestamp": datetime.now().isoformat(),
    }


@app.get("/api/profiles")
async def list_profiles():
    return {
        "default": config.DEFAULT_PROFILE,
        "profiles": [
            {
                **params.model_dump(),
                "pk_bytes": codec.pk_length(params),
                "sk_bytes": codec.sk_length(params),
                "ct_bytes": codec.ct_length(params),
            }
            for params in PROFILES.values()
        ],
    }


@app.get("/api/security-table")
async def security_table():
    return {
        "rows": [
            asdict(security.security_estimate(n))
            for n in security.TABLE_DIMENSIONS
        ]
    }


# KEM ------------------------------------------------------------------------

@app.post("/api/kem/keygen", response_model=KeyPairResponse)
def kem_keygen(request: KemKeygenRequest):
    params = _profile(request.profile)
    seed = _unhex(request.seed_hex, "seed_hex") or secrets.token_bytes(kem.SEED_BYTES)
    pk, sk = kem.keygen(seed, params)
    return KeyPairResponse(pk_hex=pk.encoded.hex(), sk_hex=codec.encode_sk(sk).hex())


@app.post("/api/kem/encaps", response_model=EncapsResponse)
def kem_encaps(request: EncapsRequest):
    pk = codec.decode_pk(_unhex(request.pk_hex, "pk_hex"))
    coins = _unhex(request.coins_hex, "coins_hex")
    ct, key = kem.encaps(pk, coins) if coins is not None else kem.encaps_random(pk)
    return EncapsResponse(ct_hex=codec.encode_ct(ct).hex(), shared_key_hex=key.hex())


@app.post("/api/kem/decaps", response_model=DecapsResponse)
def kem_decaps(request: DecapsRequest):
    """Always returns a key; an invalid ciphertext yields the implicit-rejection key"""
    sk = codec.decode_sk(_unhex(request.sk_hex, "sk_hex"))
    ct = codec.decode_ct(_unhex(request.ct_hex, "ct_hex"), sk.pk.params)
    return DecapsResponse(shared_key_hex=kem.decaps(sk, ct).hex())


# DSA ------------------------------------------------------------------------

@app.post("/api/dsa/keygen", response_model=KeyPairResponse)
def dsa_keygen(request: DsaKeygenRequest):
    seed = _unhex(request.seed_hex, "seed_hex") or secrets.token_bytes(dsa.SEED_BYTES)
    pk_ds, sk_ds = dsa.keygen_ds(seed, height=request.height)
    return KeyPairResponse(pk_hex=pk_ds.encoded.hex(), sk_hex=codec.encode_ds_sk(sk_ds).hex())


@app.post("/api/dsa/sign", response_model=SignResponse)
def dsa_sign(request: SignRequest):
    sk_ds = codec.decode_ds_sk(_unhex(request.sk_hex, "sk_hex"))
    sig = dsa.sign_ds(sk_ds, _unhex(request.message_hex, "message_hex"))
    return SignResponse(signature_hex=codec.encode_sig(sig).hex())


@app.post("/api/dsa/verify", response_model=VerifyResponse)
def dsa_verify(request: VerifyRequest):
    pk_ds = codec.decode_ds_pk(_unhex(request.pk_hex, "pk_hex"))
    context = dsa.VerifierContext.local(_unhex(request.verifier_seed_hex, "verifier_seed_hex"))
    outcome = dsa.verify_ds(
        pk_ds,
        _unhex(request.message_hex, "message_hex"),
        _unhex(request.signature_hex, "signature_hex"),
        context,
    )
    return VerifyResponse(
        result=outcome.label,
        placeholder_hex=outcome.placeholder.hex() if outcome.placeholder else None,
    )


# Demo jobs ------------------------------------------------------------------

@app.post("/api/demo", response_model=DemoResponse)
async def start_demo(request: DemoRequest, background_tasks: BackgroundTasks):
    """Starts a demo run in the background; poll /api/status/{job_id}"""
    _profile(request.profile)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    case_name = request.case_name or f"Demo_{request.profile}_{timestamp}"
    job_id = f"{case_name}_{secrets.token_hex(4)}"

    jobs[job_id] = {
        "job_id": job_id,
        "case_name": case_name,
        "status": "pending",
        "progress": 0,
        "created_at": datetime.now(),
    }

    background_tasks.add_task(
        run_rdmpf_demo,
        job_id,
        request.profile,
        request.runs,
        request.height,
        case_name,
    )

    return DemoResponse(
        job_id=job_id,
        status="pending",
        message="Demo started. Use job_id to check status.",
    )


@app.get("/api/status/{job_id}", response_model=StatusResponse)
async def get_status(job_id: str):
    """Status del job para polling"""
    if job_id not in jobs:
        raise HTTPException(status_code=404, detail="Job not found")

    job = jobs[job_id]
    elapsed = None
    if "started_at" in job:
        end = job.get("completed_at") or datetime.now()
        elapsed = int((end - job["started_at"]).total_seconds())

    return StatusResponse(
        job_id=job_id,
        status=job["status"],
        progress=job["progress"],
        elapsed_time_seconds=elapsed,
        error=job.get("error"),
    )


@app.get("/api/results/{job_id}", response_model=ResultsResponse)
async def get_results(job_id: str):
    if job_id not in jobs:
        raise HTTPException(status_code=404, detail="Job not found")

    job = jobs[job_id]
    if job["status"] != "completed":
        raise HTTPException(
            status_code=400,
            detail=f"Demo not completed. Current status: {job['status']}"
        )

    results = job["results"]
    return ResultsResponse(
        job_id=job_id,
        case_name=job["case_name"],
        status=job["status"],
        timestamp=job["completed_at"].isoformat(),
        execution_time_seconds=job["execution_time_seconds"],
        kem_results=results["kem_results"],
        dsa_results=results["dsa_results"],
        pipeline_metrics=results["pipeline_metrics"],
        summary=results["summary"],
    )


@app.delete("/api/jobs/{job_id}")
async def delete_job(job_id: str):
    """Elimina un job (cleanup)"""
    if job_id not in jobs:
        raise HTTPException(status_code=404, detail="Job not found")

    del jobs[job_id]
    return {"message": "Job deleted successfully"}


@app.get("/api/jobs")
async def list_jobs():
    """Lista los jobs en memoria (debug)"""
    return {
        "total": len(jobs),
        "jobs": [
            {
                "job_id": job["job_id"],
                "case_name": job["case_name"],
                "status": job["status"],
                "created_at": job["created_at"].isoformat(),
            }
            for job in jobs.values()
        ],
    }


# ============================================================================
# SERVER
# ============================================================================

if __name__ == "__main__":
    print("=" * 80)
    print("RDMPF TOOLKIT API SERVER")
    print("=" * 80)
    print("Starting server...")
    print("API Documentation: http://localhost:8000/docs")
    print("Health Check: http://localhost:8000/")
    print("=" * 80)

    uvicorn.run(
        "api_server:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info",
    )
