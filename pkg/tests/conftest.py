import pytest

from successrules import ClassifyConfig, classify, load_case_study

from helpers import DATA


@pytest.fixture
def case_freq():
    return load_case_study()


@pytest.fixture
def case_schema(case_freq):
    return case_freq.schema


@pytest.fixture
def case_table(case_freq):
    return classify(case_freq, ClassifyConfig("share", 7.0, 70))


@pytest.fixture
def data_dir():
    return DATA
