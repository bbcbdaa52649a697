import nox

COV_MIN = 70

@nox.session
def lint(session):
    """ Lint to detect unused imports """
    session.install("flake8")
    session.run("flake8", "--select=E231,F401", "--per-file-ignores=__init__.py:F401", "orthoplex")


@nox.session(python=["3.8", "3.9", "3.10"])
@nox.parametrize("numpy", ["1.22.4", "1.24.4"])
def test(session, numpy):
    """ Run pytest and coverage against Python and numpy versions """
    session.install(".", f"numpy=={numpy}", "pytest", "pytest-cov")
    session.cd("tests")
    session.run("pytest", "--cov=orthoplex", f"--cov-fail-under={COV_MIN}", *session.posargs)


@nox.session
def quick(session):
    """ Run the test suite without the multi-seed experiments """
    session.install(".", "pytest")
    session.cd("tests")
    session.run("pytest", "-m", "not slow", *session.posargs)
