"""Core AetherFloat format definitions and bit-exact codec.

An AetherFloat word is a fixed-field sign/exponent/mantissa layout with two
twists relative to legacy floating point:

* the magnitude bits of negative values are stored bitwise-inverted (one's
  complement wrapper), so the N-bit word compares like a two's-complement
  signed integer;
* the exponent scales in base 4, and the mantissa is fully explicit (no
  hidden bit) with the radix point after the top 2-bit pair.

Decoded values::

    E > 0 (normal):     (-1)^S * (M / 2^(m-2)) * 4^(E - bias)
    E = 0 (subnormal):  (-1)^S * (M / 2^(m-2)) * 4^(1 - bias)

Normal codes must have a non-zero leading 2-bit mantissa pair; the rule is
suspended at E = 0, which shares the E = 1 scale so sub-normal arithmetic
needs no separate datapath.  In the preferred embodiment the top exponent
band is reserved for Inf/NaN; the idealized embodiment uses it as a finite
band and has no special values at all.

All decoding is exact: every finite AF8/AF16 value is a small integer times
a power of two, hence exactly representable in IEEE binary64.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class Embodiment(enum.Enum):
    """Whether the top exponent band encodes specials or finite values."""

    PREFERRED = "preferred"
    IDEALIZED = "idealized"


class FieldOverflowError(ValueError):
    """A sign/exponent/mantissa field value does not fit its bit width."""


@dataclass(frozen=True)
class FormatSpec:
    """Parameter bundle defining one AetherFloat family member."""

    total_bits: int
    exp_bits: int
    mant_bits: int
    bias: int
    embodiment: Embodiment = Embodiment.PREFERRED

    def __post_init__(self):
        if self.total_bits != 1 + self.exp_bits + self.mant_bits:
            raise ValueError(
                f"total_bits must be 1 + exp_bits + mant_bits, got "
                f"{self.total_bits} != 1 + {self.exp_bits} + {self.mant_bits}"
            )
        if self.mant_bits < 2:
            raise ValueError("mant_bits must be >= 2 (radix point sits after the top pair)")
        if self.exp_bits < 1:
            raise ValueError("exp_bits must be >= 1")

    @property
    def mant_divisor(self) -> int:
        """Power of two placing the radix point after the top 2 mantissa bits."""
        return 1 << (self.mant_bits - 2)

    @property
    def exp_max(self) -> int:
        """Largest raw exponent field value, 2^e - 1."""
        return (1 << self.exp_bits) - 1

    @property
    def normal_top(self) -> int:
        """Largest exponent of a finite band (exp_max - 1 when specials exist)."""
        if self.embodiment is Embodiment.PREFERRED:
            return self.exp_max - 1
        return self.exp_max

    @property
    def has_specials(self) -> bool:
        return self.embodiment is Embodiment.PREFERRED

    @property
    def code_count(self) -> int:
        return 1 << self.total_bits

    @property
    def magnitude_mask(self) -> int:
        """Mask for the N-1 magnitude (exponent+mantissa) bits."""
        return (1 << (self.total_bits - 1)) - 1


AF8 = FormatSpec(total_bits=8, exp_bits=4, mant_bits=3, bias=7)
AF8_IDEALIZED = FormatSpec(total_bits=8, exp_bits=4, mant_bits=3, bias=7,
                           embodiment=Embodiment.IDEALIZED)
AF16 = FormatSpec(total_bits=16, exp_bits=7, mant_bits=8, bias=63)
AF16_IDEALIZED = FormatSpec(total_bits=16, exp_bits=7, mant_bits=8, bias=63,
                            embodiment=Embodiment.IDEALIZED)


class Unpacked(NamedTuple):
    """Field decomposition of a stored word: sign bit, exponent, mantissa."""

    sign: int
    exp: int
    mant: int


class Kind(enum.IntEnum):
    FINITE = 0
    POS_INF = 1
    NEG_INF = 2
    NAN = 3


@dataclass(frozen=True)
class Value:
    """Decoded semantic value of a code.

    ``value`` is the exact binary64 result for finite codes (signed zero
    preserved), and inf/-inf/nan for specials.  ``canonical`` is False for
    bit patterns the encoder never produces: E > 0 with a zero leading
    mantissa pair, E = 0 mantissas that duplicate the E = 1 band, and
    non-extremity NaN payloads.
    """

    kind: Kind
    value: float
    canonical: bool


def signed_key(code: int, spec: FormatSpec) -> int:
    """Raw word reinterpreted as an N-bit two's-complement signed integer."""
    half = 1 << (spec.total_bits - 1)
    return code - (1 << spec.total_bits) if code >= half else code


def unpack(code: int, spec: FormatSpec) -> Unpacked:
    """Split a raw word into (sign, exponent, mantissa) fields.

    Mirrors the zero-latency hardware unpack: the sign bit is broadcast as
    an XOR mask over the magnitude bits, undoing the one's-complement
    wrapper of negative words in a single gate delay.
    """
    if not 0 <= code < spec.code_count:
        raise FieldOverflowError(f"code 0x{code:X} out of range for {spec.total_bits}-bit format")
    x = signed_key(code, spec)
    mask = x >> (spec.total_bits - 1)  # arithmetic shift: 0 or -1
    u = (x ^ mask) & spec.magnitude_mask
    sign = (code >> (spec.total_bits - 1)) & 1
    return Unpacked(sign, u >> spec.mant_bits, u & ((1 << spec.mant_bits) - 1))


def pack(u: Unpacked, spec: FormatSpec) -> int:
    """Assemble a raw word from fields, applying the one's-complement wrapper.

    Inverse of :func:`unpack` for every field-valid input.
    """
    if not 0 <= u.sign <= 1:
        raise FieldOverflowError(f"sign {u.sign} is not a bit")
    if not 0 <= u.exp <= spec.exp_max:
        raise FieldOverflowError(f"exponent {u.exp} exceeds {spec.exp_bits} bits")
    if not 0 <= u.mant < (1 << spec.mant_bits):
        raise FieldOverflowError(f"mantissa {u.mant} exceeds {spec.mant_bits} bits")
    mag = (u.exp << spec.mant_bits) | u.mant
    if u.sign:
        return (1 << (spec.total_bits - 1)) | (~mag & spec.magnitude_mask)
    return mag


def classify(u: Unpacked, spec: FormatSpec) -> tuple[Kind, bool]:
    """Return (kind, canonical) for a field decomposition."""
    pair = u.mant >> (spec.mant_bits - 2)
    if spec.has_specials and u.exp == spec.exp_max:
        if u.mant == 0:
            return (Kind.NEG_INF if u.sign else Kind.POS_INF), True
        # The all-ones mantissa is the canonical NaN, sitting at the integer
        # extremity of the word domain; other payloads are representable but
        # never produced.
        return Kind.NAN, u.mant == (1 << spec.mant_bits) - 1
    if u.exp == 0:
        return Kind.FINITE, pair == 0
    return Kind.FINITE, pair != 0


def decode(code: int, spec: FormatSpec) -> Value:
    """Decode a raw word to its exact semantic value."""
    u = unpack(code, spec)
    kind, canonical = classify(u, spec)
    if kind is Kind.POS_INF:
        return Value(kind, math.inf, canonical)
    if kind is Kind.NEG_INF:
        return Value(kind, -math.inf, canonical)
    if kind is Kind.NAN:
        return Value(kind, math.nan, canonical)
    eff_exp = max(u.exp, 1)  # E = 0 shares the E = 1 scale
    magnitude = math.ldexp(u.mant, 2 * (eff_exp - spec.bias) - (spec.mant_bits - 2))
    return Value(kind, -magnitude if u.sign else magnitude, canonical)


def unpack_array(codes: np.ndarray, spec: FormatSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized :func:`unpack`; returns (sign, exp, mant) int64 arrays."""
    codes = np.asarray(codes, dtype=np.int64)
    half = np.int64(1 << (spec.total_bits - 1))
    x = np.where(codes >= half, codes - (1 << spec.total_bits), codes)
    mask = x >> (spec.total_bits - 1)
    u = (x ^ mask) & spec.magnitude_mask
    sign = (codes >> (spec.total_bits - 1)) & 1
    return sign, u >> spec.mant_bits, u & ((1 << spec.mant_bits) - 1)


def pack_array(sign: np.ndarray, exp: np.ndarray, mant: np.ndarray,
               spec: FormatSpec) -> np.ndarray:
    """Vectorized :func:`pack`; fields must already be range-valid."""
    mag = (np.asarray(exp, dtype=np.int64) << spec.mant_bits) | np.asarray(mant, dtype=np.int64)
    neg = (1 << (spec.total_bits - 1)) | (~mag & spec.magnitude_mask)
    return np.where(np.asarray(sign, dtype=np.int64) == 1, neg, mag)


def decode_array(codes: np.ndarray, spec: FormatSpec) -> np.ndarray:
    """Vectorized :func:`decode` to float64 (NaN codes decode to nan)."""
    sign, exp, mant = unpack_array(codes, spec)
    eff = np.maximum(exp, 1)
    shift = 2 * (eff - spec.bias) - (spec.mant_bits - 2)
    mag = np.ldexp(mant.astype(np.float64), shift.astype(np.int64))
    out = np.where(sign == 1, -mag, mag)
    if spec.has_specials:
        special = exp == spec.exp_max
        is_inf = special & (mant == 0)
        out = np.where(is_inf & (sign == 0), np.inf, out)
        out = np.where(is_inf & (sign == 1), -np.inf, out)
        out = np.where(special & (mant != 0), np.nan, out)
    return out


@dataclass(frozen=True, eq=False)
class DecodeTable:
    """Exhaustive per-code arrays for one format, indexed by raw word.

    ``values[c]`` is the decoded float64 (nan for NaN codes), ``kinds[c]``
    the :class:`Kind`, ``canonical[c]`` the encoder-reachability flag.
    ``order_band[c]`` is the total-order band (-2 -NaN, -1 -Inf, 0 finite,
    1 +Inf, 2 +NaN) and ``order_value[c]`` the within-band sort value with
    -0/+0 sharing rank.
    """

    spec: FormatSpec
    values: np.ndarray
    kinds: np.ndarray
    canonical: np.ndarray
    order_band: np.ndarray
    order_value: np.ndarray
    canonical_codes: np.ndarray


@functools.lru_cache(maxsize=None)
def decode_table(spec: FormatSpec) -> DecodeTable:
    """Build (and cache) the exhaustive decode table for a format."""
    codes = np.arange(spec.code_count, dtype=np.int64)
    sign, exp, mant = unpack_array(codes, spec)
    values = decode_array(codes, spec)

    kinds = np.full(spec.code_count, Kind.FINITE, dtype=np.int8)
    pair = mant >> (spec.mant_bits - 2)
    canonical = np.where(exp == 0, pair == 0, pair != 0)
    if spec.has_specials:
        special = exp == spec.exp_max
        kinds[special & (mant == 0) & (sign == 0)] = Kind.POS_INF
        kinds[special & (mant == 0) & (sign == 1)] = Kind.NEG_INF
        kinds[special & (mant != 0)] = Kind.NAN
        canonical = np.where(special,
                             (mant == 0) | (mant == (1 << spec.mant_bits) - 1),
                             canonical)

    band = np.zeros(spec.code_count, dtype=np.int8)
    band[kinds == Kind.POS_INF] = 1
    band[kinds == Kind.NEG_INF] = -1
    band[(kinds == Kind.NAN) & (sign == 0)] = 2
    band[(kinds == Kind.NAN) & (sign == 1)] = -2
    order_value = np.where(kinds == Kind.FINITE, values, 0.0)
    order_value = np.where(np.isnan(order_value), 0.0, order_value)
    order_value = order_value + 0.0  # collapse -0.0 and +0.0 to one rank

    return DecodeTable(
        spec=spec,
        values=values,
        kinds=kinds,
        canonical=canonical,
        order_band=band,
        order_value=order_value,
        canonical_codes=codes[canonical],
    )


@dataclass(frozen=True)
class FormatConstants:
    """Exact binary64 range constants of a format, derived by enumeration."""

    spec: FormatSpec
    max_finite: float
    min_normal: float
    min_subnormal: float

    def ulp_at(self, value: float) -> float:
        """Grid spacing at ``value``: distance to the next canonical finite
        value away from zero (the flush quantum below the smallest one)."""
        mag = abs(value)
        grid = _positive_grid(self.spec)
        if mag >= grid[-1]:
            return float(grid[-1] - grid[-2])
        idx = int(np.searchsorted(grid, mag, side="right"))
        lo = grid[idx - 1] if idx > 0 else 0.0
        return float(grid[idx] - lo)


@functools.lru_cache(maxsize=None)
def _positive_grid(spec: FormatSpec) -> np.ndarray:
    """Sorted strictly-positive canonical finite values of a format."""
    table = decode_table(spec)
    vals = table.values[table.canonical_codes]
    finite = table.kinds[table.canonical_codes] == Kind.FINITE
    pos = vals[finite & (vals > 0)]
    return np.sort(pos)


@functools.lru_cache(maxsize=None)
def format_constants(spec: FormatSpec) -> FormatConstants:
    """Range constants from the exhaustive canonical decode table."""
    grid = _positive_grid(spec)
    table = decode_table(spec)
    _, exp, _ = unpack_array(table.canonical_codes, spec)
    vals = table.values[table.canonical_codes]
    normal = vals[(exp >= 1) & (exp <= spec.normal_top) & (vals > 0)]
    return FormatConstants(
        spec=spec,
        max_finite=float(grid[-1]),
        min_normal=float(normal.min()),
        min_subnormal=float(grid[0]),
    )


def zero_code(spec: FormatSpec, negative: bool = False) -> int:
    """The +0 code (0x0) or the all-ones -0 word."""
    return pack(Unpacked(1 if negative else 0, 0, 0), spec)


def canonical_nan_code(spec: FormatSpec, negative: bool = False) -> int:
    """Canonical NaN word (integer-domain extremity). Preferred only."""
    if not spec.has_specials:
        raise ValueError("idealized embodiment has no NaN representation")
    return pack(Unpacked(1 if negative else 0, spec.exp_max, (1 << spec.mant_bits) - 1), spec)


def inf_code(spec: FormatSpec, negative: bool = False) -> int:
    """Infinity word. Preferred only."""
    if not spec.has_specials:
        raise ValueError("idealized embodiment has no Inf representation")
    return pack(Unpacked(1 if negative else 0, spec.exp_max, 0), spec)
