import csv
import datetime
import logging
import sys

from rich.align import Align
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from orthoplex.lib.jsontools import dump_json_line


console = Console()
err_console = Console(stderr=True)

PASS_EMOJI = ":green_circle:"
FAIL_EMOJI = ":red_circle:"


def configure_logging(level=logging.WARNING, no_colour=False):
    """ Routes all package logging through rich on stderr """
    if no_colour:
        err_console.no_color = True
    handler = RichHandler(console=err_console, show_path=False, markup=False)
    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]", handlers=[handler], force=True)


def emit_json(obj, stream=None):
    """ One JSON object per line on stdout """
    print(dump_json_line(obj), file=stream if stream is not None else sys.stdout)


def write_csv(header, rows, stream=None):
    writer = csv.writer(stream if stream is not None else sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def sweep_csv(report):
    """
    Header ``tau, <tuple>..., argmin`` and one row per grid temperature
    """
    header = ["tau"] + [t.as_string() for t in report.tuples] + ["argmin"]
    rows = []
    for record in report.per_tau:
        losses = record["losses"]
        rows.append([repr(record["tau"])] + [repr(losses[t.as_string()]) for t in report.tuples] + [record["argmin"]])
    return header, rows


def trajectory_csv(state):
    header = ["iter", "loss", "grad_norm"]
    rows = [[i, repr(loss), repr(grad_norm)] for i, (loss, grad_norm) in enumerate(state.history)]
    return header, rows


def count_results(results):
    passed = sum(len(checks) for checks in results.passed.values())
    failed = sum(len(fails) for fails in results.failures.values())
    return passed, failed


def write_verify_results(results, use_emoji=True):
    passed, failed = count_results(results)

    fail_plural = "" if failed == 1 else "s"
    header = Align(Panel(f"[bold green]Property suites:"
    f" [bold green]{passed} passed[/bold green],"
    f" [bold red]{failed} failure{fail_plural}", style="blue"), align="center")
    console.print(header)

    table = Table(show_header=True, header_style="bold blue", expand=True)
    table.add_column("Suite", style="green", no_wrap=True)
    table.add_column("Check")
    table.add_column("Result", justify="center")
    table.add_column("Detail", style="italic")

    pass_text = PASS_EMOJI if use_emoji else "[green]PASS[/green]"
    fail_text = FAIL_EMOJI if use_emoji else "[red]FAIL[/red]"

    for suite in sorted(set(results.passed) | set(results.failures)):
        for check in results.passed.get(suite, []):
            table.add_row(suite, check, pass_text, "")
        for check, exc in results.failures.get(suite, []):
            table.add_row(suite, check, fail_text, str(exc))

    console.print(table)


def results_as_dict(results):
    passed, failed = count_results(results)
    ret = {
        "verify_results": {
            "created_at": datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            "passed": passed,
            "failures": failed
        }
    }

    if results.failures:
        ret["failures"] = {
            suite: [{"check": check, "detail": str(exc)} for check, exc in fails]
            for suite, fails in results.failures.items() if fails
        }

    return ret


def results_as_json_lines(results):
    """ One object per check followed by the summary object """
    lines = []
    for suite in sorted(set(results.passed) | set(results.failures)):
        for check in results.passed.get(suite, []):
            lines.append(dump_json_line({"suite": suite, "check": check, "passed": True}))
        for check, exc in results.failures.get(suite, []):
            lines.append(dump_json_line({"suite": suite, "check": check, "passed": False, "detail": str(exc)}))
    lines.append(dump_json_line(results_as_dict(results)))
    return lines
