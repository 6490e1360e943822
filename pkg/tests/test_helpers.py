import pytest

from src.helpers import Deadline, expired, parse_int_list, precompile_numba_functions

def test_parse_int_list_mixes_values_and_ranges():
    assert parse_int_list("1,2,3") == [1, 2, 3]
    assert parse_int_list("0-4,10") == [0, 1, 2, 3, 4, 10]
    assert parse_int_list(" 7 ") == [7]

@pytest.mark.parametrize("text", ["", ",", "5-2", "a"])
def test_parse_int_list_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_int_list(text)

def test_deadline():
    assert not expired(None)
    unlimited = Deadline()
    assert not unlimited.expired()
    past = Deadline(1.0, start=unlimited.start - 5.0)
    assert past.expired()
    assert expired(past)

def test_precompile_runs():
    precompile_numba_functions()
