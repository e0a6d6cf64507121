"""Exception types shared across the package."""


class MaskMetricsError(Exception):
    """Base class for all errors raised by this package."""

    #: short machine-readable code, also used by the CLI for exit-code mapping
    code = "error"


class ShapeInvalid(MaskMetricsError):
    code = "shape-invalid"


class LengthMismatch(MaskMetricsError):
    code = "length-mismatch"


class LabelInvalid(MaskMetricsError):
    code = "label-invalid"


class ShapeMismatch(MaskMetricsError):
    code = "shape-mismatch"

    def __init__(self, shape_a, shape_b):
        self.shape_a = tuple(shape_a)
        self.shape_b = tuple(shape_b)
        super().__init__(
            f"mask shapes do not match: {self.shape_a} vs {self.shape_b}"
        )


class UnknownLabel(MaskMetricsError):
    code = "unknown-label"


class MetricUndefined(MaskMetricsError):
    """A metric denominator vanished and the zero-division policy is ERROR."""

    code = "metric-undefined"

    def __init__(self, metric, denominator):
        self.metric = metric
        self.denominator = denominator
        super().__init__(
            f"{metric} is undefined: denominator {denominator} is zero"
        )


class EmptyPointSet(MaskMetricsError):
    """A distance metric was asked for against an empty foreground."""

    code = "empty-point-set"

    def __init__(self, side):
        self.side = side
        super().__init__(f"{side} mask has no foreground: distance undefined")


class SpacingMismatch(MaskMetricsError):
    code = "spacing-mismatch"


class DuplicateName(MaskMetricsError):
    code = "duplicate-name"


class UnknownMetric(MaskMetricsError):
    code = "unknown-metric"

    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown metric: {name!r}")


class NoDefinedScores(MaskMetricsError):
    code = "no-defined-scores"


class FormatUnsupported(MaskMetricsError):
    code = "format-unsupported"


class HeaderCorrupt(MaskMetricsError):
    code = "header-corrupt"


class SizeMismatch(MaskMetricsError):
    code = "size-mismatch"
