class HullPriceError(Exception):
    pass


class ScenarioError(HullPriceError, ValueError):
    """
    Scenario document or data model is invalid.

    Carries the path of the offending field.
    """
    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class InfeasibleError(HullPriceError, RuntimeError):
    """
    No dispatch satisfies the constraints. The message names the binding one.
    """


class UnboundedDualError(HullPriceError, RuntimeError):
    pass


class ConstructionError(HullPriceError, ValueError):
    """
    A closed form construction does not apply to the scenario.
    """


class ConsistencyError(HullPriceError, AssertionError):
    """
    Internal consistency check failed, for example the gap sandwich.
    """
