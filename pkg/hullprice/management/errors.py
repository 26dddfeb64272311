import logging
from contextlib import contextmanager

from django.core.management.base import CommandError

from hullprice.exceptions import ConsistencyError, InfeasibleError, ScenarioError, UnboundedDualError

logger = logging.getLogger(__name__)

INVALID_SCENARIO = 2
INFEASIBLE = 3
INCONSISTENT = 4


@contextmanager
def command_errors():
    """
    Translate engine errors to command errors carrying the exit code.
    """
    try:
        yield
    except ScenarioError as ex:
        raise CommandError(f"Invalid scenario, {ex}", returncode=INVALID_SCENARIO)
    except (InfeasibleError, UnboundedDualError) as ex:
        raise CommandError(str(ex), returncode=INFEASIBLE)
    except ConsistencyError as ex:
        logger.error("Consistency check failed: %s", ex)
        raise CommandError(f"Consistency check failed: {ex}", returncode=INCONSISTENT)
    except (ValueError, OSError) as ex:
        raise CommandError(str(ex))
