"""Python access to the dgc task runner and a few graded computations."""

import json

from ._core import BudgetError, TaskError, form_graded_dims, hh_graded_dims
from . import _core

__all__ = ["run", "run_text", "hh_graded_dims", "form_graded_dims", "TaskError", "BudgetError"]


def _wrap(res):
    report, invariants_ok, resolved = res
    out = json.loads(report)
    out["_invariants_ok"] = invariants_ok
    out["_resolved"] = resolved
    return out


def run(path, backend=""):
    """Run a task file and return the report as a dict."""
    return _wrap(_core.run_task_file(str(path), backend))


def run_text(text, backend=""):
    """Run a task given as TOML text."""
    return _wrap(_core.run_task_text(text, backend))
