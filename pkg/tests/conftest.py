from pathlib import Path

import pytest

from earleylog.core import parse_database, parse_program

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

TC_LEFT = """
path(A,B) :- edge(A,B).
path(A,B) :- path(A,C), edge(C,B).
answer(A) :- path(1,A).
"""

TC_TAIL = """
path(A,B) :- edge(A,B).
path(A,B) :- edge(A,C), path(C,B).
answer(A) :- path(1,A).
"""


def load(name: str):
    text = (CORPUS / name).read_text()
    return parse_program(text) if name.endswith(".dl") else parse_database(text)


@pytest.fixture
def tc_left():
    return parse_program(TC_LEFT)


@pytest.fixture
def tc_tail():
    return parse_program(TC_TAIL)


@pytest.fixture
def graph():
    return parse_database("edge(1,2).\nedge(2,3).")
