"""Tests for vector files."""

import numpy as np
import orjson
import pytest

from spf_deconv.storage import VectorFile, VectorFileError


@pytest.fixture
def temp_file(tmp_path):
    """Create a temporary file path."""
    return tmp_path / "x.json"


def test_write_read_complex(temp_file):
    """Test basic write and read operations."""
    x = np.array([1.0 + 2.0j, -0.5, 3.0j, 1e-300])
    vf = VectorFile(temp_file)
    vf.write(x)

    assert vf.exists
    assert np.array_equal(vf.read(), x)
    vf.clear_cache()
    assert np.array_equal(vf.read(), x)


def test_document_layout(temp_file):
    """Test the on-disk JSON fields."""
    VectorFile(temp_file).write([1.0, 2.0])
    document = orjson.loads(temp_file.read_bytes())
    assert document == {"n": 2, "real": [1.0, 2.0], "imag": [0.0, 0.0]}


def test_read_bare_list(temp_file):
    """Test that a JSON list of reals is accepted."""
    temp_file.write_bytes(b"[1, 2.5, -3]")
    assert np.array_equal(VectorFile(temp_file).read(), [1.0, 2.5, -3.0])


def test_read_without_imaginary_part(temp_file):
    """Test a document without the imag field."""
    temp_file.write_bytes(b'{"n": 2, "real": [0.5, 1.5]}')
    x = VectorFile(temp_file).read()
    assert x.dtype == np.complex128
    assert np.all(x.imag == 0)


def test_cache_returns_copies(temp_file):
    """Test that callers cannot mutate the cached vector."""
    vf = VectorFile(temp_file)
    vf.write(np.ones(3))
    first = vf.read()
    first[0] = 99.0
    assert vf.read()[0] == 1.0


@pytest.mark.parametrize("content", [
    b"Not a valid vector file",
    b'{"real": [1, 2]}',
    b'{"n": 3, "real": [1, 2], "imag": [0, 0]}',
    b"[]",
    b'["a", "b"]',
    b'"just a string"',
])
def test_invalid_file(temp_file, content):
    """Test reading an invalid file."""
    temp_file.write_bytes(content)
    with pytest.raises(VectorFileError):
        VectorFile(temp_file).read()


def test_missing_file(tmp_path):
    """Test reading a file that does not exist."""
    vf = VectorFile(tmp_path / "missing.json")
    assert not vf.exists
    with pytest.raises(FileNotFoundError):
        vf.read()


def test_context_manager_clears_cache(temp_file):
    """Test the context manager protocol."""
    with VectorFile(temp_file) as vf:
        vf.write(np.arange(4.0))
        assert np.array_equal(vf.read(), np.arange(4.0))
    assert vf._data is None
