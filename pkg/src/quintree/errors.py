"""Exception types shared across the package."""


class QuintreeError(Exception):
    """Base class for errors raised by this package."""


class FormatError(QuintreeError, ValueError):
    """A system file or Newick string could not be read."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NewickError(FormatError):
    pass


class PreconditionError(QuintreeError, ValueError):
    """Input does not satisfy an operation's precondition.

    When the precondition is an axiom system, ``certificate`` names the
    violated instance.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InvariantViolation(QuintreeError, RuntimeError):
    """Something that must be impossible on valid input happened.

    Raised instead of ``assert`` so it survives ``python -O``; seeing one
    means a bug in this package, never a property of the input.
    """


class ConflictError(QuintreeError, ValueError):
    """Two input trees on the same leaf set disagree."""


class IncompleteCoverageError(QuintreeError, ValueError):
    """Some 5-subsets of the taxon set are not covered by any input tree."""

    def __init__(self, missing, count):
        self.missing = list(missing)
        self.count = count
        shown = ", ".join("{" + ",".join(sorted(m)) + "}" for m in self.missing)
        super().__init__(f"{count} uncovered 5-subset(s): {shown}")
