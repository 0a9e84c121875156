"""Exception types shared across the package."""


class TorusAsymError(Exception):
    pass


class InvalidKnot(TorusAsymError, ValueError):
    """Raised for (p, q) pairs that do not describe a torus knot."""


class NotCoprime(InvalidKnot):
    pass


class InvalidComponent(TorusAsymError, ValueError):
    pass


class PoleProximity(TorusAsymError, ArithmeticError):
    def __init__(self, k, distance):
        self.k = k
        self.distance = distance
        super().__init__(f"z lies within {distance} of the pole i*pi*{k}/pq")


class NotSimplePole(TorusAsymError, ValueError):
    def __init__(self, k, p, q):
        self.k = k
        super().__init__(f"k={k} is divisible by p={p} or q={q}; no simple pole there")


class BaseMismatch(TorusAsymError, ValueError):
    pass


class PrecisionExhausted(TorusAsymError, RuntimeError):
    def __init__(self, demand, cap):
        self.demand = demand
        self.cap = cap
        super().__init__(
            f"quadrature needs {demand} working digits but the cap is {cap} "
            "(raise TORUSASYM_MAX_PRECISION)"
        )


class DivergenceWarning(UserWarning):
    """A truncation order past the smallest term of an asymptotic series was requested."""
