from django.utils.translation import gettext_lazy as _
from enumfields import Enum


class Method(Enum):
    CHP = 'chp'
    MCHP = 'mchp'
    BOTH = 'both'

    class Labels:
        CHP = _('Convex hull pricing')
        MCHP = _('Modified convex hull pricing')
        BOTH = _('Both methods')


class RoundingPolicy(Enum):
    CENT = 'cent'
    EXACT = 'exact'

    class Labels:
        CENT = _('Round price to cent')
        EXACT = _('Exact')


class PlayerKind(Enum):
    PRODUCER = 'producer'
    CONSUMER = 'consumer'
    LINE = 'line'

    class Labels:
        PRODUCER = _('Producer')
        CONSUMER = _('Consumer')
        LINE = _('FTR holders')


class CurveKind(Enum):
    AFFINE = 'affine'
    QUADRATIC = 'quadratic'
    PIECEWISE = 'piecewise'

    class Labels:
        AFFINE = _('Affine')
        QUADRATIC = _('Quadratic')
        PIECEWISE = _('Piecewise affine')


class NetworkKind(Enum):
    ONE_NODE = 'one-node'
    TWO_NODE = 'two-node'

    class Labels:
        ONE_NODE = _('One node')
        TWO_NODE = _('Two nodes')


class SetKind(Enum):
    ORIGINAL = 'original'
    MODIFIED = 'modified'

    class Labels:
        ORIGINAL = _('Original sets')
        MODIFIED = _('Modified sets')


class ConstructionMethod(Enum):
    ORIGINAL = 'original'
    EXACT_FIXED_LOAD = 'exact-fixed-load'
    EXACT_ZERO_MIN = 'exact-zero-min'
    MIRROR = 'mirror'
    CAP_SWEEP = 'cap-sweep'
    SUNK = 'sunk'
    INFLATED = 'inflated'
    LIMIT = 'limit'

    class Labels:
        ORIGINAL = _('Original feasible set')
        EXACT_FIXED_LOAD = _('Exact, fixed load')
        EXACT_ZERO_MIN = _('Exact, zero minimum output')
        MIRROR = _('Mirror of the producer set')
        CAP_SWEEP = _('Cap sweep')
        SUNK = _('Sunk cost states')
        INFLATED = _('Inflated opportunity set')
        LIMIT = _('Closed limit set')


class Verdict(Enum):
    PASS = 'pass'
    FAIL = 'fail'

    class Labels:
        PASS = _('Pass')
        FAIL = _('Fail')
