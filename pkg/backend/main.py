import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from config import settings
from exceptions import AlgebraError
from api.v1 import cluster, bratteli, k0, annulus, jones

logging.basicConfig(level=settings.log_level)
logger = logging.getLogger(__name__)

# Создаем приложение FastAPI
app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    description="Кластерные алгебры, диаграммы Браттели, группы K0 и многочлены Джонса"
)

# Настройка CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["*"],
)


@app.exception_handler(AlgebraError)
async def algebra_error_handler(request: Request, exc: AlgebraError):
    """Ошибки предметной области -> 400 с кодом ошибки"""
    logger.info(f"{request.url.path}: {exc.code}: {exc.message}")
    return JSONResponse(status_code=400, content={"detail": exc.message, "code": exc.code})


# Подключение роутеров API v1
app.include_router(cluster.router, prefix="/api/v1/cluster", tags=["Кластерные алгебры"])
app.include_router(bratteli.router, prefix="/api/v1/bratteli", tags=["Диаграммы Браттели"])
app.include_router(k0.router, prefix="/api/v1/k0", tags=["Группы размерности"])
app.include_router(annulus.router, prefix="/api/v1/annulus", tags=["Алгебра A(1,1)"])
app.include_router(jones.router, prefix="/api/v1/jones", tags=["Темперли–Либ и Джонс"])


@app.get("/")
async def root():
    """Корневой endpoint"""
    return {"message": f"{settings.app_name} {settings.app_version}"}


@app.get("/health")
async def health_check():
    """Проверка состояния сервиса"""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug
    )
