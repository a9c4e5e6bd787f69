"""Bit-exact emulation and analysis toolkit for the AetherFloat formats."""

from .formats import (
    AF8,
    AF8_IDEALIZED,
    AF16,
    AF16_IDEALIZED,
    Embodiment,
    FormatSpec,
    Kind,
    Unpacked,
    Value,
    decode,
    format_constants,
    pack,
    unpack,
)

__version__ = "0.1.0"

__all__ = [
    "AF8",
    "AF8_IDEALIZED",
    "AF16",
    "AF16_IDEALIZED",
    "Embodiment",
    "FormatSpec",
    "Kind",
    "Unpacked",
    "Value",
    "decode",
    "format_constants",
    "pack",
    "unpack",
    "__version__",
]
