"""Polar code toolkit: SCL and flip-syndrome-list decoding, code construction
optimizations, and a Monte-Carlo BLER simulation CLI."""

from .core import (
    CodeSpec,
    awgn_llr,
    construct_pw,
    crc_attach,
    crc_check,
    encode_frame,
    frame_rng,
    make_spec,
    modulate_bpsk,
    polar_transform,
)
from .scl import DecodeResult, scl_decode

__all__ = [
    "CodeSpec",
    "DecodeResult",
    "awgn_llr",
    "construct_pw",
    "crc_attach",
    "crc_check",
    "encode_frame",
    "frame_rng",
    "make_spec",
    "modulate_bpsk",
    "polar_transform",
    "scl_decode",
]

__version__ = "0.1.0"
