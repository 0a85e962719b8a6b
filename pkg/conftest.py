import logging

import pytest
from dotenv import load_dotenv


@pytest.fixture(autouse=True)
def load_env_vars():
    load_dotenv()


@pytest.fixture(autouse=True)
def fresh_config():
    """테스트마다 설정 싱글톤과 패키지 로거 초기화"""
    from spectral_discretize.config import reset_config

    reset_config()
    yield
    reset_config()
    root = logging.getLogger("spectral_discretize")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    root.setLevel(logging.NOTSET)
