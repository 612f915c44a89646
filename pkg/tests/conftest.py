import pytest

from tentprob.estimators import Sample, mean_difference_cd, replicate_sample

TABLE1_A = [8, 5, 6, 6, 6, 5, 8, 7, 7, 5]
TABLE1_B = [8, 7, 5, 6, 3, 8, 6, 6, 3, 8]

ACCEPTANCE_LINES = []


@pytest.fixture
def sample_a():
    return Sample(TABLE1_A, "A")


@pytest.fixture
def sample_b():
    return Sample(TABLE1_B, "B")


@pytest.fixture
def small_cd(sample_a, sample_b):
    return mean_difference_cd(sample_a, sample_b)


@pytest.fixture
def large_cd(sample_a, sample_b):
    return mean_difference_cd(replicate_sample(sample_a, 40), replicate_sample(sample_b, 40))


@pytest.fixture
def table1_files(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    a.write_text("score\n" + "\n".join(map(str, TABLE1_A)) + "\n")
    b.write_text("\n".join(map(str, TABLE1_B)) + "\n")
    return str(a), str(b)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
