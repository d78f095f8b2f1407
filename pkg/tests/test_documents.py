from fractions import Fraction
from pathlib import Path

import pytest

from conftest import Z, mat, vec
from tropspan import MAX_PLUS, ParseError, ValidationError
from tropspan.documents import (
    input_digest,
    parse_problem,
    parse_solution,
    scalar_from_json,
    scalar_to_json,
    serialize_problem,
    serialize_solution,
)

DATA = Path(__file__).parent / "data"


def test_parse_span_problem_file():
    doc = parse_problem((DATA / "span_demo.json").read_text())
    assert doc.kind == "span"
    assert doc.entries["A"] == mat([[2, 0], [4, 1]])
    assert doc.entries["p"] == vec([5, 2])
    assert doc.entries["q"] == vec([1, 2])
    prob = doc.to_span_problem()
    assert prob.delta == 2


def test_parse_schedule_problem_file():
    doc = parse_problem((DATA / "schedule_demo.json").read_text())
    inst = doc.to_schedule_instance()
    assert inst.n == 3
    assert inst.A.entries[0][2] is Z


def test_zero_token_and_rationals():
    text = '{"kind": "span", "A": [["1/2", "-inf"], [1, 0.25]], "p": [1, "-inf"], "q": [0, "2/3"]}'
    doc = parse_problem(text)
    assert doc.entries["A"].entries[0][0] == Fraction(1, 2)
    assert doc.entries["A"].entries[0][1] is Z
    assert doc.entries["A"].entries[1][1] == Fraction(1, 4)
    assert doc.entries["q"].entries[1] == Fraction(2, 3)


def test_scalar_json_round_trip():
    for value in (0, -7, Fraction(3, 4), Z):
        encoded = scalar_to_json(value, MAX_PLUS)
        assert scalar_from_json(encoded, "x", MAX_PLUS) == value
    with pytest.raises(ParseError):
        scalar_from_json(True, "x", MAX_PLUS)
    with pytest.raises(ParseError):
        scalar_from_json("wat", "x", MAX_PLUS)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_problem("")
    with pytest.raises(ParseError):
        parse_problem("[1, 2]")
    with pytest.raises(ParseError):
        parse_problem('{"kind": "nope"}')
    # ragged rows
    with pytest.raises(ParseError) as info:
        parse_problem('{"kind": "span", "A": [[1, 2], [3]], "p": [0, 0], "q": [0, 0]}')
    assert "ragged" in str(info.value)
    # unexpected field
    with pytest.raises(ParseError):
        parse_problem('{"kind": "span", "A": [[1]], "p": [0], "q": [0], "x": 1}')
    # missing field
    with pytest.raises(ParseError):
        parse_problem('{"kind": "span", "A": [[1]], "p": [0]}')


def test_validation_errors():
    with pytest.raises(ValidationError) as info:
        parse_problem('{"kind": "span", "A": [["-inf", "-inf"], [1, 1]], '
                      '"p": [0, 0], "q": [0, 0]}')
    assert "row-regular" in str(info.value)
    with pytest.raises(ValidationError):
        parse_problem('{"kind": "span", "A": [[1, 1]], "p": ["-inf"], "q": [0, 0]}')
    with pytest.raises(ValidationError):
        parse_problem('{"kind": "span", "A": [[1, 1]], "p": [0], "q": [0, "-inf"]}')
    with pytest.raises(ValidationError):
        parse_problem('{"kind": "span", "semifield": "min-plus", "A": [[1]], '
                      '"p": [0], "q": [0]}')


def test_problem_round_trip_is_identity():
    for name in ("span_demo.json", "schedule_demo.json", "span_reduced_demo.json"):
        doc = parse_problem((DATA / name).read_text())
        text = serialize_problem(doc)
        again = parse_problem(text)
        assert again == doc
        assert serialize_problem(again) == text


def test_solution_round_trip():
    from tropspan.documents import SolutionDocument

    doc = SolutionDocument(
        kind="span-solution",
        semifield=MAX_PLUS,
        input_sha256="00" * 32,
        delta=2,
        enumeration_visited=1,
        enumeration_pruned=1,
        compact=False,
        generators=mat([[0, -1], [Z, 0]]),
        extended_lower=vec([1, -1]),
        extended_upper=vec([1, 2]),
        extended_generators=mat([[0, -1], [-2, 0]]),
    )
    text = serialize_solution(doc)
    assert parse_solution(text) == doc
    assert serialize_solution(parse_solution(text)) == text


def test_input_digest_stability():
    text = (DATA / "span_demo.json").read_text()
    assert input_digest(text) == input_digest(text)
    assert input_digest(text) != input_digest(text + " ")
