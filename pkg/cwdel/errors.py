#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#


class CwdelError(ValueError):
    """
    Base class of all errors raised by the cwdel package.
    """


class InvalidPartitionError(CwdelError):
    pass


class DecompositionError(CwdelError):
    """
    Raised when a tree or path decomposition violates one of its axioms.

    axiom is one of "vertex", "edge", "connectivity" or "skeleton", witness is the offending vertex, edge or bag.
    """

    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = witness
        if message is None:
            message = "Decomposition violates the {} axiom, witness {}".format(axiom, witness)
        super().__init__(message)


class TooLargeError(CwdelError):
    def __init__(self, what, size, cap):
        self.size = size
        self.cap = cap
        super().__init__("{} of size {} exceeds the cap of {}".format(what, size, cap))


class ExprSyntaxError(CwdelError):
    def __init__(self, message, position):
        self.position = position
        super().__init__("{} at position {}".format(message, position))


class ExprValidationError(CwdelError):
    pass


class StateSpaceError(CwdelError):
    pass


class SizeGuardError(CwdelError):
    def __init__(self, predicted, cap):
        self.predicted = predicted
        self.cap = cap
        super().__init__(
            "Predicted instance size of {} vertices exceeds the guard of {} "
            "(set CWDEL_MAX_VERTICES to override)".format(predicted, cap)
        )


class UnsatisfiedAssignmentError(CwdelError):
    pass


class FormatError(CwdelError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)


class GadgetError(CwdelError):
    pass


class WitnessError(CwdelError):
    pass
