"""Streaming scene separation by difference hashing, with per-scene
representative selection from detector output."""

from ._scenesplit import (
    BoundaryScore,
    ContractError,
    Error,
    FrameHash,
    IngestError,
    ParseError,
    RecognitionRecord,
    Scene,
    Segmenter,
    annotate_scenes,
    boundary_match,
    count_accuracy,
    count_accuracy_percent,
    downsample,
    generate_synthetic,
    hamming,
    hash_frame,
    hash_rows,
    parse_detections,
    segment_frames,
    segment_hashes,
    select_representative,
    serialize_detection,
    smooth_group,
    smooth_scene,
    to_gray,
    weighted_average_length,
)

__version__ = "0.1.0"
