"""Exception hierarchy shared by every module of the package."""


class HalphenError(Exception):
    """Base class for all computation errors raised by the package."""


class IncompatibleFields(HalphenError):
    pass


class NotASquare(HalphenError):
    pass


class PolySyntaxError(HalphenError, SyntaxError):
    def __init__(self, message, text="", position=0):
        self.text_input = text
        self.position = position
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class NotHomogeneous(HalphenError):
    def __init__(self, first, second):
        self.exponents = (first, second)
        super().__init__(
            f"polynomial is not homogeneous: exponents {first} and {second} "
            f"have total degrees {sum(first)} and {sum(second)}"
        )


class UnknownVariable(HalphenError):
    pass


class ZeroPolynomial(HalphenError):
    pass


class InsufficientPrecision(HalphenError):
    pass


# geometry
class DegeneratePolar(HalphenError):
    pass


class BasePoint(HalphenError):
    pass


class SingularPoint(HalphenError):
    pass


class AtInfinity(HalphenError):
    pass


class IdenticallyZero(HalphenError):
    pass


class NotACurveBranch(HalphenError):
    pass


class RootOutsideField(HalphenError):
    pass


class NotOnCurve(HalphenError):
    pass


# invariants
class BranchInsideSurface(HalphenError):
    pass


class UnstableCorrection(HalphenError):
    pass


class InconsistentSamples(HalphenError):
    pass


class DegenerateTangentMap(HalphenError):
    pass


class NonIntegerGenus(HalphenError):
    pass


# desing / sampling
class DegenerateType(HalphenError):
    pass


class NonGenericQuadric(HalphenError):
    pass


class ExhaustedResampling(HalphenError):
    pass
