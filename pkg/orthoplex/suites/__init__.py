from . import codes
from . import geometry
from . import losses
from . import temperature
from . import optimizer
from . import oracles
