"""Loewner evolution, zipper, Whitney and modulus tools."""

import json

from ._loewner import *  # noqa: F401,F403
from ._loewner import LoewnerError, StepKind, _default_config, _run_suite

__version__ = "0.1.0"


def run_suite(suite, config=None):
    """Run a harness suite; returns the report as a list of dicts."""
    return json.loads(_run_suite(suite, json.dumps(config) if config is not None else ""))


def default_config(suite):
    return json.loads(_default_config(suite))


def all_passed(report):
    return all(c["passed"] or c.get("params", {}).get("asserted", True) is False for c in report)
