"""Triangle features and figures from hand/face detection streams.

The library turns per-frame face/hand bounding-box detections of
sign-language videos into fixed-length sequences of 13 similarity-
invariant triangle features, plus small flat-color triangle figures.
See the module docstrings for the individual stages: detections
(parsing/selection), tracking (hand identities), sampling (keyframe
selection), features (triangle geometry), figure (rasterization),
pipeline (end-to-end batch runs), synth (synthetic corpora).
"""

from .detections import (FACE, HAND, BoundingBox, Centroid, Detection,
                         FrameDetections, ParseError, ParseStats, centroid,
                         expand_box, parse_frame, read_stream,
                         select_detections, serialize_frame)
from .features import (FEATURE_DIM, FEATURE_NAMES, GAMMA, TriangleFeatures,
                       external_angles, feature_vector, heron_area,
                       internal_angles, side_lengths, triangle_height)
from .figure import (DEFAULT_SPEC, FigureImage, FigureSpec, decode_png,
                     encode_png, render_figure)
from .manifest import (ManifestEntry, ManifestError, check_split_leakage,
                       load_manifest, resolve_path, validate_manifest)
from .pipeline import (BenchReport, RunReport, bench, process_video,
                       run_batch)
from .records import (MAGIC, FeatureFileEntry, FeatureFileError,
                      VideoFeatureRecord, load_records, metadata_dict,
                      read_feature_file, read_metadata, write_feature_file,
                      write_metadata)
from .sampling import (PADDING_FRAME, MovementSample, PositionSample,
                       SampledVideo, SamplerConfig, compute_step, is_padding,
                       movement_series, position_of, sample_video,
                       selected_hand_movements)
from .synth import (GestureTemplate, builtin_templates, eval_nearest_mean,
                    generate, make_corpus, nearest_mean_predictions)
from .tracking import (HAND1, HAND2, MISSING_DOMINANT,
                       MISSING_WITH_NO_HISTORY, FrameRejection, TrackState,
                       TrackedFrame, assign_hands, distance, resolve_dominance,
                       resolve_frame)

__version__ = "0.1.0"

__all__ = [
    "FACE", "HAND", "BoundingBox", "Centroid", "Detection", "FrameDetections",
    "ParseError", "ParseStats", "centroid", "expand_box", "parse_frame",
    "read_stream", "select_detections", "serialize_frame",
    "FEATURE_DIM", "FEATURE_NAMES", "GAMMA", "TriangleFeatures",
    "external_angles", "feature_vector", "heron_area", "internal_angles",
    "side_lengths", "triangle_height",
    "DEFAULT_SPEC", "FigureImage", "FigureSpec", "decode_png", "encode_png",
    "render_figure",
    "ManifestEntry", "ManifestError", "check_split_leakage", "load_manifest",
    "resolve_path", "validate_manifest",
    "BenchReport", "RunReport", "bench", "process_video", "run_batch",
    "MAGIC", "FeatureFileEntry", "FeatureFileError", "VideoFeatureRecord",
    "load_records", "metadata_dict", "read_feature_file", "read_metadata",
    "write_feature_file", "write_metadata",
    "PADDING_FRAME", "MovementSample", "PositionSample", "SampledVideo",
    "SamplerConfig", "compute_step", "is_padding", "movement_series",
    "position_of", "sample_video", "selected_hand_movements",
    "GestureTemplate", "builtin_templates", "eval_nearest_mean", "generate",
    "make_corpus", "nearest_mean_predictions",
    "HAND1", "HAND2", "MISSING_DOMINANT", "MISSING_WITH_NO_HISTORY",
    "FrameRejection", "TrackState", "TrackedFrame", "assign_hands",
    "distance", "resolve_dominance", "resolve_frame",
    "__version__",
]
