import os
import pickle
import tempfile

import pytest

from malcev import exceptions


@pytest.fixture
def temp_file():
    """NamedTemporaryFile must be set in wb mode, closed without delete, opened with open(file, "rb"),
    then manually deleted. Otherwise, file fails to be read due to permission error on Windows."""
    with tempfile.NamedTemporaryFile(mode="wb", delete=False) as f:
        yield f
        os.unlink(f.name)


@pytest.mark.parametrize(
    "exc,args",
    [
        (exceptions.MalcevException, ("MalcevException",)),
        (exceptions.FieldError, ("zero inverse",)),
        (exceptions.AlgebraMismatchError, ("field mismatch",)),
        (exceptions.NotAnIdealError, ()),
        (exceptions.NotMalcevError, ()),
        (exceptions.ConfigError, ("ConfigError",)),
        (exceptions.TableParseError, ("unknown label 'e9'", 3, 7)),
        (exceptions.TermParseError, ("expected ')'", 5)),
        (exceptions.TermShapeError, ("TermShapeError",)),
        (exceptions.EvaluationError, ("EvaluationError",)),
        (exceptions.RewriteError, ("RewriteError",)),
        (exceptions.InvariantViolation, ("InvariantViolation",)),
    ],
)
def test_exceptions_are_unpickleable(temp_file, exc, args):
    """Ensure exceptions can be unpickled"""
    err = exc(*args)
    pickle.dump(err, temp_file)
    temp_file.close()  # close to re-open for reading

    # Read the Pickled File
    with open(temp_file.name, "rb") as read_file:
        read_file.seek(0)
        data = read_file.read()
        pickled_err = pickle.loads(data)
        assert str(pickled_err) == str(err)


def test_default_messages():
    assert str(exceptions.NotAnIdealError()) == "not an ideal"
    assert str(exceptions.NotMalcevError()) == "not Malcev"


def test_positions_in_messages():
    assert str(exceptions.TableParseError("duplicate product 'e1 e2'", 4, 1)) == "4:1: duplicate product 'e1 e2'"
    assert str(exceptions.TermParseError("unexpected ')'", 3)) == "unexpected ')' (at position 3)"


def test_hierarchy():
    for exc in (exceptions.FieldError, exceptions.TableParseError, exceptions.InvariantViolation):
        assert issubclass(exc, exceptions.MalcevException)
    assert issubclass(exceptions.IdealClosureWarning, exceptions.MalcevWarning)
    assert issubclass(exceptions.MalcevWarning, Warning)
