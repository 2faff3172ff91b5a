"""Exception types raised by endscope."""


class EndscopeError(Exception):
    """Base class for all endscope errors."""


class InvalidMetricError(EndscopeError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid metric: {report.summary()}")


class LipschitzError(EndscopeError):
    def __init__(self, x, y, rx, ry, d):
        self.witness = (x, y)
        super().__init__(f"rho is not 1-Lipschitz at ({x!r}, {y!r}): "
                         f"|{rx} - {ry}| > d = {d}")


class CapRequiredError(EndscopeError):
    pass


class CatalogError(EndscopeError):
    pass


class ScheduleError(EndscopeError):
    pass


class RadiusTooLargeError(EndscopeError):
    pass


class BoundExceededError(EndscopeError):
    pass


class NoSymmetryModelError(EndscopeError):
    pass
