from typing import List

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Настройки приложения
    app_name: str = "Cluster K0 Toolkit"
    app_version: str = "1.0.0"

    # Настройки сервера
    host: str = "0.0.0.0"
    port: int = 8000
    debug: bool = False

    # Настройки CORS
    cors_origins: List[str] = [
        "http://localhost:3000",
        "http://127.0.0.1:3000",
        "http://localhost:8000",
        "http://127.0.0.1:8000"
    ]

    # Логирование
    log_level: str = "WARNING"

    # Мутации и перечисление кластерных переменных
    enumeration_depth_limit: int = 8
    node_budget: int = 100000
    finite_type_budget: int = 10000

    # Диаграммы Браттели: "literal" (B = B') или "permuted" (B сопряжена поворотом)
    equivalence_mode: str = "literal"

    # Группы размерности
    k0_horizon: int = 64
    gicar_max_degree: int = 64
    gicar_refinement_levels: int = 12
    power_iteration_tolerance: float = 1e-12
    power_iteration_max_steps: int = 10000

    # Алгебра A(1,1)
    a11_bound: int = 12
    numeric_tolerance: float = 1e-12

    # Темперли–Либ
    tl_random_words: int = 50
    random_seed: int = 20240101

    threads: int = 1

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False


class CliSettings(Settings):
    """Настройки CLI: только явные аргументы, без окружения и .env"""

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        return (init_settings,)


settings = Settings()
