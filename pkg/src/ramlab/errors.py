"""Shared error types."""


class CapExceeded(Exception):
    """A degree or prime bound was exceeded; the instance is beyond desk scale."""


class PrimitiveSearchExhausted(Exception):
    """No primitive element found within the mixing-coefficient bound."""
