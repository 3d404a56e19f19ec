"""Exception hierarchy.

Every error carries a module-tagged ``code`` (``"<module>.<Name>"``) and an
``exit_code`` used by the command line: 1 for model/domain violations,
2 for bad input.
"""


class PricevarError(Exception):
    module = "pricevar"
    exit_code = 1

    @property
    def code(self) -> str:
        return f"{self.module}.{type(self).__name__}"

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class DomainError(PricevarError):
    """The input is well formed but violates a model assumption."""

    exit_code = 1


class InputError(PricevarError):
    """The input itself is malformed or unusable."""

    exit_code = 2


# variation_core
class SeriesTooShort(InputError):
    module = "variation_core"


class InvalidSeries(InputError):
    module = "variation_core"


# oscillation_grid
class NoTicksAtAll(InputError):
    module = "oscillation_grid"


class SingleSegment(DomainError):
    module = "oscillation_grid"


class DegenerateGrid(DomainError):
    module = "oscillation_grid"


class EpsilonOutOfRange(InputError):
    module = "oscillation_grid"


# function_counting
class TooLargeForEnumeration(InputError):
    module = "function_counting"


# shifted_model
class EmptyRange(DomainError):
    module = "shifted_model"


class OutOfRange(DomainError):
    module = "shifted_model"


class AlphaOutOfUnitInterval(DomainError):
    module = "shifted_model"


class NonPositiveOmega(DomainError):
    module = "shifted_model"


class NonPositiveSigma(DomainError):
    module = "shifted_model"


class WindowTooLarge(InputError):
    module = "shifted_model"


# heavy_tails
class SingularSystem(DomainError):
    module = "heavy_tails"


class OutsideMonotoneDomain(DomainError):
    module = "heavy_tails"


class NoSamples(InputError):
    module = "heavy_tails"


class NonPositiveBinWidth(InputError):
    module = "heavy_tails"


# cli_pipeline
class MalformedRow(InputError):
    module = "cli_pipeline"


class NonMonotoneTimestamps(InputError):
    module = "cli_pipeline"


class EmptyFile(InputError):
    module = "cli_pipeline"


class InvalidConfig(InputError):
    module = "cli_pipeline"
