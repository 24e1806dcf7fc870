"""Storage module for spf-deconv."""

from spf_deconv.storage.vectors import VectorFile, VectorFileError

__all__ = ["VectorFile", "VectorFileError"]
