import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--heavy", action="store_true", default=False,
        help="run full-scale benchmark tests (tens of minutes)")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "heavy: full-scale benchmark runs, enabled with --heavy")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heavy"):
        return
    skip = pytest.mark.skip(reason="heavy benchmark; pass --heavy to run")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)
