"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: structural problems with input files
(:class:`DatasetFormatError`, :class:`BundleFormatError`) are usage/IO
failures, while :class:`EncodingError` marks data that is well-formed but
violates the fitted schema (unseen category, wrong vocabulary).
"""


class DatasetFormatError(ValueError):
    """CSV structure does not match the expected dataset layout."""


class EncodingError(ValueError):
    """A value cannot be encoded under the (fitted) feature schema."""


class BundleFormatError(ValueError):
    """A model bundle file is malformed or internally inconsistent."""
