"""Frequency-sensitive duplicate detection over mset-valued records."""

from .dedup import (
    BlockScheme,
    DetectionStats,
    DuplicatePair,
    Record,
    Signature,
    SignatureIndex,
    Threshold,
    block_key,
    candidates,
    delta_pruned,
    detect_blocked,
    detect_exhaustive,
    signature,
)
from .multimetric import (
    ABS,
    ImbalanceFunction,
    capped,
    count_distance,
    discrete_distance,
    is_open,
    lifted_distance,
    open_ball,
    record_delta,
    verify_topology,
)
from .multireal import ONE, ZERO, MultiReal, mr_add, mr_cmp, mr_min, mr_mul
from .multiset import (
    BoundedSpace,
    Multiset,
    MultiPoint,
    combine,
    complement,
    count,
    describe,
    multi_points,
    relate,
)
from .stream import StreamVerdict, WindowState, stream_init, stream_process

__version__ = "0.1.0"
