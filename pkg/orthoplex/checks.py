import importlib
import inspect
import logging

from collections import defaultdict

from orthoplex.types.exceptions import OrthoplexArgumentError
from orthoplex.utils import capture

log = logging.getLogger(__name__)

SUITE_BASE = "orthoplex.suites"


class SuiteResults():
    def __init__(self):
        self.passed = defaultdict(list)
        self.failures = defaultdict(list)

    @property
    def ok(self):
        return not any(self.failures.values())


def get_suites():
    mods = get_suite_modules()
    modules = {}
    for mod in mods:
        modules[mod[1].__key__] = {
            "name": mod[1].__suite_name__,
            "modpath": mod[0],
            "version": mod[1].__version__,
            "description": mod[1].__description__
        }

    return modules


def get_suite_modules(base=SUITE_BASE):
    importlib.invalidate_caches()
    base = importlib.import_module(base)
    return inspect.getmembers(base, inspect.ismodule)


def get_suite_module(key):
    modules = (m for _, m in get_suite_modules())
    for module in modules:
        if module.__key__ == key:
            return module


def describe_suites():
    modules = get_suites()

    output = "Available Suites:\n"
    for idx, (key, mod) in enumerate(modules.items(), 1):
        output += f"[{idx}]\tName: '{mod['name']}'  Version: {mod['version']}"
        output += f"  Key: {key}\n"
        output += f"{mod['description'].strip()}\n\n"

    return output


def get_checks(module):
    """ The ``check_*`` functions of a suite in source order """
    funcs = inspect.getmembers(module, inspect.isfunction)
    checks = [(name, f) for name, f in funcs if name.startswith("check_") and f.__module__ == module.__name__]
    return sorted(checks, key=lambda c: c[1].__code__.co_firstlineno)


def run_suites(keys=None, raise_failure=False) -> SuiteResults:
    """
    Runs every check of the selected suites, all suites when ``keys``
    is empty, recording each as passed or failed.
    """
    available = get_suites()
    keys = list(keys) if keys else list(available)
    unknown = [k for k in keys if k not in available]
    if unknown:
        raise OrthoplexArgumentError(f"No suite with key: {', '.join(unknown)}")

    results = SuiteResults()
    for key in keys:
        module = get_suite_module(key)
        for name, check in get_checks(module):
            log.info(f"Running {key}.{name}")
            with capture(key, name, results, raise_failure=raise_failure):
                check()

    return results
