"""Exception types raised by citepr."""


class CitePRError(Exception):
    """Base class for all library errors."""


class EmptyDistribution(CitePRError, ValueError):
    """A citation distribution needs at least one paper."""


class UnknownCitationCount(CitePRError, KeyError):
    """The citation count does not occur in the distribution."""

    def __str__(self):
        return Exception.__str__(self)


class DegenerateScale(CitePRError, ArithmeticError):
    """P100-type scales are undefined when the maximum rank is zero."""


class OutOfEstimableRange(CitePRError, ValueError):
    """A percentile rank or citation value lies outside the estimable range."""


class OutOfRange(CitePRError, ValueError):
    """An interpolation target lies outside the span of the anchors."""


class NoCategories(CitePRError, ValueError):
    pass


class NoPapers(CitePRError, ValueError):
    pass


class InvalidFraction(CitePRError, ValueError):
    pass


class InvalidConfig(CitePRError, ValueError):
    pass


class I3SyntaxError(InvalidConfig):
    """Malformed I3 notation; ``position`` is the 0-based character offset."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class NonDecreasingThresholds(InvalidConfig):
    pass


class UnknownUnit(CitePRError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NoMatchingPapers(CitePRError, ValueError):
    pass


class RecordError(CitePRError, ValueError):
    """A problem with a single input record; ``line`` is 1-based (header = 1)."""

    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class ParseError(RecordError):
    pass


class DuplicateId(RecordError):
    pass


class InvalidCitationCount(RecordError):
    pass


class EmptyCategories(RecordError):
    pass


class IngestError(CitePRError, ValueError):
    """Raised once after ingestion with every record error collected."""

    def __init__(self, errors):
        self.errors = list(errors)
        head = "; ".join(str(e) for e in self.errors[:5])
        more = f" (+{len(self.errors) - 5} more)" if len(self.errors) > 5 else ""
        super().__init__(f"{len(self.errors)} invalid record(s): {head}{more}")
