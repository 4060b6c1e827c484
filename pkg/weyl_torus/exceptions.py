class WeylTorusError(Exception):
    """Base class for every failure raised by the weyl_torus library"""


class LinalgError(WeylTorusError, ValueError):
    pass


class NotRootOfUnitySpectrum(WeylTorusError):
    pass


class InvalidCartan(WeylTorusError, ValueError):
    pass


class NotARoot(WeylTorusError, ValueError):
    pass


class NotE6(WeylTorusError):
    pass


class WordSyntaxError(WeylTorusError, ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class ClassMatchFailure(WeylTorusError):
    pass


class IdentityElement(WeylTorusError):
    pass


class NotFixed(WeylTorusError, ValueError):
    pass


class NotOrthogonal(WeylTorusError, ValueError):
    pass


class NonIntegralBetti(WeylTorusError):
    pass


class DualityFailure(WeylTorusError):
    def __init__(self, label, check, witness):
        self.label = label
        self.check = check
        self.witness = witness
        super().__init__(f"class {label}: {check} failed, witness {witness}")
