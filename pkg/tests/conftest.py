import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

MASTER_HTML = (
    "<!DOCTYPE html>\n"
    '<html lang="en">\n'
    "<head>\n"
    '<meta charset="utf-8">\n'
    '<meta name="viewport" content="width=device-width, initial-scale=1">\n'
    "<title>t</title>\n"
    "</head>\n"
    "<body>\n"
    "{body}"
    "</body>\n"
    "</html>\n"
)


@pytest.fixture
def master_html():
    return MASTER_HTML.format(body="")


@pytest.fixture
def make_page():
    def _make(body: str = "") -> str:
        return MASTER_HTML.format(body=body)

    return _make


@pytest.fixture
def fixtures_dir():
    return Path(__file__).parent / "fixtures"
