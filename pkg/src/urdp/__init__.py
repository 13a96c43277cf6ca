"""Random data padding (URDP) over a pluggable public-key backend."""

from .bits import EMPTY, BitString, concat, from_integer, hamming_weight, lsb, msb, to_integer
from .errors import (
    BitOverflowError,
    ExperimentError,
    FormatError,
    LengthError,
    PaddingError,
    ParameterError,
    UrdpError,
)
from .padding import EncodedMessage, EncodingParams, SelectorVector, derive_params, encode, extract, setup_blocks
from .scheme import (
    REJECT,
    Rejection,
    SchemeConfig,
    UrdpCiphertext,
    decrypt,
    deserialize,
    encrypt,
    keygen,
    serialize,
)

__version__ = "0.1.0"
