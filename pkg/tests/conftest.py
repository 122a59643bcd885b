import os
import pathlib

import pytest


@pytest.fixture(autouse=True, scope="session")
def _run_from_repo_root():
    # instance files are referenced relative to the repository root
    root = pathlib.Path(__file__).resolve().parent.parent
    old = os.getcwd()
    os.chdir(root)
    yield
    os.chdir(old)
