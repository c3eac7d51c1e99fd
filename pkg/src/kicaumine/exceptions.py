"""Exception taxonomy shared across the pipeline stages."""


class KicaumineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(KicaumineError):
    """Invalid or incomplete configuration (bad values, missing files)."""


class EmptyCorpusError(KicaumineError):
    """An ingestion source yielded zero valid tweets."""


class ContractError(KicaumineError):
    """A caller violated a documented precondition."""


class TrainingError(KicaumineError):
    """Training cannot proceed (no usable documents, bad labels)."""


class DegenerateTrainingError(TrainingError):
    """Fewer than two classes ended up with training documents."""


class UnknownLabelError(KicaumineError, LookupError):
    """A label was requested that the model does not know."""


class ModelFormatError(KicaumineError):
    """A model file is malformed, truncated, or of an unsupported version."""


class SplitError(KicaumineError):
    """Split or fold parameters are incompatible with the data."""


class EvaluationError(KicaumineError):
    """Evaluation cannot proceed (empty or unusable gold data)."""
