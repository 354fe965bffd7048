"""Student grade-band prediction from LMS activity exports.

Pipeline: strict CSV ingestion -> schema-driven encoding to a numeric
design matrix -> standardization -> seeded splitting -> a from-scratch
dense network trained with Adam on softmax cross-entropy. The estimators
follow sklearn conventions (fit/transform/predict, get_params).
"""

from .classifier import MlpClassifier
from .dataset import (
    CANONICAL_HEADER,
    DatasetSummary,
    RecordTable,
    StudentRecord,
    ValidationReport,
    parse_dataset,
    serialize_dataset,
    summarize,
    validate,
)
from .encoding import (
    DesignMatrix,
    FeatureKind,
    FeatureSchema,
    FittedSchema,
    SchemaEncoder,
    decode_label,
    default_schema,
    design_matrix_to_csv,
    encode,
    encode_features,
    encode_label,
    fit_schema,
    load_schema_file,
)
from .errors import BundleFormatError, DatasetFormatError, EncodingError
from .bundle import ModelBundle, load_bundle, read_bundle, save_bundle, write_bundle
from .network import (
    Gradients,
    MlpModel,
    backward,
    forward,
    init_mlp,
    loss_sce,
    param_count,
    predict,
    relu,
    softmax,
)
from .optim import AdamParams, AdamState, adam_init, adam_step, finite_diff_grad
from .pipeline import PipelineConfig, PipelineResult, run_training
from .rng import Xorshift64Star
from .scaling import (
    FeatureScaler,
    SplitIndices,
    load_split_manifest,
    save_split_manifest,
    split,
)
from .training import (
    Metrics,
    TrainConfig,
    TrainHistory,
    confusion_matrix,
    evaluate,
    history_from_csv,
    history_to_csv,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "AdamParams",
    "AdamState",
    "BundleFormatError",
    "CANONICAL_HEADER",
    "DatasetFormatError",
    "DatasetSummary",
    "DesignMatrix",
    "EncodingError",
    "FeatureKind",
    "FeatureSchema",
    "FeatureScaler",
    "FittedSchema",
    "Gradients",
    "Metrics",
    "MlpClassifier",
    "MlpModel",
    "ModelBundle",
    "PipelineConfig",
    "PipelineResult",
    "RecordTable",
    "SchemaEncoder",
    "SplitIndices",
    "StudentRecord",
    "TrainConfig",
    "TrainHistory",
    "ValidationReport",
    "Xorshift64Star",
    "adam_init",
    "adam_step",
    "backward",
    "confusion_matrix",
    "decode_label",
    "default_schema",
    "design_matrix_to_csv",
    "encode",
    "encode_features",
    "encode_label",
    "evaluate",
    "finite_diff_grad",
    "fit_schema",
    "forward",
    "history_from_csv",
    "history_to_csv",
    "init_mlp",
    "load_bundle",
    "load_schema_file",
    "load_split_manifest",
    "loss_sce",
    "param_count",
    "parse_dataset",
    "predict",
    "read_bundle",
    "relu",
    "run_training",
    "save_bundle",
    "save_split_manifest",
    "serialize_dataset",
    "softmax",
    "split",
    "summarize",
    "train",
    "validate",
    "write_bundle",
]
