from .curves import *
from .sums import *
