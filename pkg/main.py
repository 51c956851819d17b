import logging
import time
from contextlib import asynccontextmanager
from datetime import datetime

import uvicorn
from fastapi import FastAPI, HTTPException, Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

# Configuration
from shared.config.settings import get_settings
from shared.utils.errors import InvariantBreach, PreconditionError, WeylMassError

# Routers
from routers.command_router import router as command_router
from routers.screen_router import router as screen_router

settings = get_settings()

# Logging
logging.basicConfig(
    level=getattr(logging, settings.log_level),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifecycle"""
    logger.info(f"Starting {settings.app_name} service {settings.version}...")
    yield
    logger.info(f"Stopping {settings.app_name} service...")


# Application
app = FastAPI(
    title="weylmass API",
    description="Exact Weyl algebra computations and mass screening",
    version=settings.version,
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_url="/openapi.json",
    lifespan=lifespan
)

# CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=settings.cors_methods,
    allow_headers=["*"],
)


@app.middleware("http")
async def log_requests(request: Request, call_next):
    """Log each request and attach its processing time"""
    start_time = time.time()
    response = await call_next(request)
    process_time = time.time() - start_time
    response.headers["X-Process-Time"] = str(process_time)
    logger.info(f"{request.method} {request.url.path} - {response.status_code} - {process_time:.4f}s")
    return response


def _error_response(status_code: int, message: str, error_code: str, **extra) -> JSONResponse:
    return JSONResponse(
        status_code=status_code,
        content={
            "success": False,
            "message": message,
            "error_code": error_code,
            **extra,
            "timestamp": datetime.now().isoformat()
        }
    )


# Exception handlers
@app.exception_handler(PreconditionError)
async def precondition_exception_handler(request: Request, exc: PreconditionError):
    """Bad input: 400"""
    extra = {"position": list(exc.position)} if exc.position else {}
    return _error_response(status.HTTP_400_BAD_REQUEST, exc.message, exc.code, **extra)


@app.exception_handler(InvariantBreach)
async def invariant_exception_handler(request: Request, exc: InvariantBreach):
    """Computed result contradicts the theory: 500"""
    logger.error(f"Invariant breach: {exc.message}")
    return _error_response(status.HTTP_500_INTERNAL_SERVER_ERROR, exc.message, exc.code)


@app.exception_handler(WeylMassError)
async def weylmass_exception_handler(request: Request, exc: WeylMassError):
    return _error_response(status.HTTP_400_BAD_REQUEST, exc.message, exc.code)


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    """HTTP errors"""
    return _error_response(exc.status_code, exc.detail, f"HTTP_{exc.status_code}")


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Request validation errors"""
    return _error_response(
        status.HTTP_422_UNPROCESSABLE_ENTITY,
        "Request validation failed",
        "VALIDATION_ERROR",
        details=jsonable_errors(exc),
    )


def jsonable_errors(exc: RequestValidationError):
    return [{"loc": list(error.get("loc", ())), "msg": error.get("msg", "")} for error in exc.errors()]


@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    """Anything else"""
    logger.error(f"Unhandled exception: {type(exc).__name__}: {str(exc)}")
    extra = {"details": str(exc)} if settings.debug else {}
    return _error_response(status.HTTP_500_INTERNAL_SERVER_ERROR, "Internal server error", "INTERNAL_ERROR", **extra)


@app.get("/")
async def root():
    return {
        "message": "weylmass API",
        "version": settings.version,
        "status": "running",
        "timestamp": datetime.now().isoformat()
    }


@app.get("/health")
async def health_check():
    """Health check"""
    return {
        "status": "healthy",
        "timestamp": datetime.now().isoformat(),
        "version": settings.version
    }


# Routers
app.include_router(command_router, prefix="/api", tags=["commands"])
app.include_router(screen_router, prefix="/api", tags=["screening"])

if __name__ == "__main__":
    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.reload,
        log_level=settings.log_level.lower()
    )
