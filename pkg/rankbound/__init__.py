from .base import *
from .settings import *
from .curves import *
from .ap import *
from .formula import *
from .zeros import *
from .harness import *
