from __future__ import annotations
import inspect
import json
import logging
import os

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from orthoplex.types.exceptions import (
    OrthoplexException,
    OrthoplexValidationError,
    OrthoplexValidationErrorBundle
)
from orthoplex.types.warnings import OrthoplexValidationWarning

log = logging.getLogger(__name__)

THREADS_ENV = "ORTHOPLEX_THREADS"


class capture():
    """
    Context manager to allow capture and aggregation of
    failures when running the checks of a property suite
    """
    def __init__(self, suite, check, dest, raise_failure=False):
        self.suite = suite
        self.check = check
        self.dest = dest
        self.raise_failure = raise_failure
        self.failure_set = (AssertionError, OrthoplexException, FloatingPointError)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_obj, exc_tb):
        if exc_obj is None:
            self.dest.passed[self.suite].append(self.check)
            return False

        if not isinstance(exc_obj, self.failure_set):
            return False

        if self.raise_failure:
            return False

        self.dest.failures[self.suite].append((self.check, exc_obj))
        return True


def to_jsonable(value):
    """
    Convert numpy scalars and arrays to their plain Python
    equivalents. Floats keep their shortest round-trip repr.
    """
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if hasattr(value, "as_dict"):
        return value.as_dict()
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)

    raise TypeError(f"Object of type {value.__class__.__name__} is not JSON serializable")


class TypeValidator():

    def __init__(self, max_value_len=200, store_passed_rules=False):
        self.max_value_len = int(max_value_len)
        self.store_passed_rules = store_passed_rules


    def __set_name__(self, inst: OrthoplexType, name: str):
        self.instattr = '_' + name


    def __get__(self, inst: OrthoplexType, dtype=None):
        return getattr(inst, self.instattr)


    def __set__(self, inst: OrthoplexType, value: dict):
        setattr(inst, self.instattr, value)
        self.validate(inst, value)


    def validate(self, inst: OrthoplexType, value: dict):
        ifuncs = inspect.getmembers(inst, inspect.ismethod)
        irules = {n: f for n, f in ifuncs if n.startswith("rule")}
        iwarns = {n: f for n, f in ifuncs if n.startswith("warn")}

        rules_passed = []
        exc_bundle = []
        warn_bundle = []

        for r, f in irules.items():
            try:
                rules_passed.append(f"[PASSED] {r} -> {f()}")
            except AssertionError as e:
                value_text = self.trim_value(value)
                exc_bundle.append(OrthoplexValidationError(inst.__class__.__qualname__, r, e, value_text))

        if self.store_passed_rules:
            inst.rules_passed = rules_passed

        if len(exc_bundle) > 0:
            raise OrthoplexValidationErrorBundle(f"{inst.__class__.__qualname__} rule failures", exc_bundle)

        for w, f in iwarns.items():
            try:
                f()
            except AssertionError as e:
                value_text = self.trim_value(value)
                warn_bundle.append(OrthoplexValidationWarning(inst.__class__.__qualname__, w, e, value_text))

        inst.warnings = warn_bundle


    def trim_value(self, value):
        value_text = json.dumps(value, default=to_jsonable)
        remainder = len(value_text) - self.max_value_len
        if remainder > 0:
            s = "s" if remainder > 1 else ""
            value_text = value_text[:self.max_value_len] + f"...[+{remainder} char{s}]"

        return value_text


def thread_count() -> int:
    """
    Number of worker threads permitted by ``ORTHOPLEX_THREADS``.
    Zero or unset means one per available cpu.
    """
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        threads = int(raw)
    except ValueError:
        log.warning(f"Ignoring invalid {THREADS_ENV}={raw!r}, running single-threaded")
        return 1

    if threads < 0:
        log.warning(f"Ignoring negative {THREADS_ENV}={raw!r}, running single-threaded")
        return 1

    return threads if threads > 0 else (os.cpu_count() or 1)


def parallel_map(func, items):
    """
    Apply ``func`` to each of ``items`` and return results in input order.
    """
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def sha256digest(filename: str) -> str:
    import hashlib

    bufsz = 64 * 1024
    sha256 = hashlib.sha256()

    with open(filename, 'rb') as fp:
        while True:
            buf = fp.read(bufsz)
            if not buf:
                break
            sha256.update(buf)

    return sha256.hexdigest()
