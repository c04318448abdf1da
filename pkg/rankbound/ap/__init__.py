from .counting import *
from .primes import *
from .materializers import *
from .cache import *
from .stream import *
