from .curves import *
from .unit import *
from .consumer import *
from .network import *
from .prices import *
from .scenario import *
from .documents import *
