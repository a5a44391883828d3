import pytest

from periodica.enumeration import enumerate_gamma, write_gamma_cache


@pytest.fixture(scope="session")
def gammas():
    """Γ_0..Γ_16 from the default bit-parallel enumerator."""
    return {n: enumerate_gamma(n) for n in range(17)}


@pytest.fixture(scope="session")
def gamma_dir(tmp_path_factory, gammas):
    d = tmp_path_factory.mktemp("gamma")
    for n in range(1, 17):
        write_gamma_cache(gammas[n], d)
    return d


# PASS/FAIL lines recorded by the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
