#!/usr/bin/env python

"""test_utils
------------------------

Tests for utils functions.
"""

import os

import pytest

from sktda.exceptions import SKTdaParameterError
from sktda.utils import check_window, file_label, format_window, mkdir_p, parse_window


def test_mkdir_p(tmpdir):
    tmp_dir = str(tmpdir)
    assert os.path.isdir(tmp_dir)

    foo_bar_dir = os.path.join(tmp_dir, "foo", "bar")

    mkdir_p(foo_bar_dir)
    assert os.path.isdir(foo_bar_dir)

    # Make sure calling function twice does not raise an exception
    mkdir_p(foo_bar_dir)
    assert os.path.isdir(foo_bar_dir)


@pytest.mark.parametrize(
    "text, length, expected",
    (
        ("0:200", None, (0, 200)),
        (" 10 : 20 ", None, (10, 20)),
        (":50", None, (0, 50)),
        ("250:", 500, (250, 500)),
        ("0:600", 600, (0, 600)),
    ),
)
def test_parse_window(text, length, expected):
    assert parse_window(text, length) == expected


@pytest.mark.parametrize(
    "text, length",
    (
        ("0-200", None),
        ("a:b", None),
        ("250:", None),
        ("20:10", None),
        ("5:5", None),
        ("0:601", 600),
    ),
)
def test_parse_window_invalid(text, length):
    with pytest.raises(SKTdaParameterError):
        parse_window(text, length)


def test_check_window():
    check_window((0, 1))
    check_window((3, 10), 10)
    with pytest.raises(SKTdaParameterError, match="is empty"):
        check_window((-1, 4))
    with pytest.raises(SKTdaParameterError, match="exceeds the series length 9"):
        check_window((3, 10), 9)


def test_format_window():
    assert format_window((250, 500)) == "250:500"
    assert parse_window(format_window((7, 12))) == (7, 12)


@pytest.mark.parametrize(
    "label, expected",
    (
        ("RAW", "RAW"),
        ("LIN CO", "LIN_CO"),
        (" GP1 CO ", "GP1_CO"),
        ("a/b", "a_b"),
        ("y-1.5", "y-1.5"),
    ),
)
def test_file_label(label, expected):
    assert file_label(label) == expected
