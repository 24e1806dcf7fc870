"""Flat-file vector documents.

A vector file is one JSON document::

    {"n": 4, "real": [1.0, 0.0, 0.0, 0.0], "imag": [0.0, 0.0, 0.0, 0.0]}

A bare JSON list of real numbers is accepted on read as well.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import numpy.typing as npt
import orjson

from spf_deconv.errors import DimensionError, SPFDeconvError
from spf_deconv.model.signals import ComplexVec, as_signal

logger = logging.getLogger(__name__)


class VectorFileError(SPFDeconvError):
    """Raised when a vector file is malformed."""
    pass


class VectorFile:
    """Vector document handler with an in-memory cache."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._data: Optional[ComplexVec] = None

    def write(self, x: npt.ArrayLike) -> None:
        """Write ``x`` and cache it.

        Raises:
            DimensionError: If ``x`` is not a finite 1-D signal.
            OSError: If the file cannot be written.
        """
        vec = as_signal(x)
        document = {
            "n": int(vec.size),
            "real": np.ascontiguousarray(vec.real),
            "imag": np.ascontiguousarray(vec.imag),
        }
        self.path.write_bytes(orjson.dumps(document, option=orjson.OPT_SERIALIZE_NUMPY))
        self._data = vec.copy()
        logger.debug("wrote %d-entry vector to %s", vec.size, self.path)

    def read(self) -> ComplexVec:
        """Read the vector, from the cache when available.

        Raises:
            FileNotFoundError: If the file does not exist.
            VectorFileError: On malformed JSON or an inconsistent document.
        """
        if self._data is not None:
            return self._data.copy()
        try:
            document = orjson.loads(self.path.read_bytes())
        except orjson.JSONDecodeError as exc:
            raise VectorFileError(f"{self.path} is not valid JSON: {exc}") from exc
        self._data = _decode(document, self.path)
        return self._data.copy()

    def clear_cache(self) -> None:
        self._data = None

    @property
    def exists(self) -> bool:
        return self.path.exists()

    def __enter__(self) -> VectorFile:
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self.clear_cache()


def _decode(document: Any, path: Path) -> ComplexVec:
    if isinstance(document, list):
        real, imag = document, [0.0] * len(document)
    elif isinstance(document, dict) and {"n", "real"} <= document.keys():
        real = document["real"]
        imag = document.get("imag", [0.0] * len(real))
        if not (len(real) == len(imag) == document["n"]):
            raise VectorFileError(
                f"{path}: n={document['n']} but real/imag have {len(real)}/{len(imag)} entries"
            )
    else:
        raise VectorFileError(f"{path}: expected a list or an object with n, real, imag")
    try:
        return as_signal(np.asarray(real, dtype=float) + 1j * np.asarray(imag, dtype=float))
    except (TypeError, ValueError, DimensionError) as exc:
        raise VectorFileError(f"{path}: {exc}") from exc
