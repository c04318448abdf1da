from .loader import *
from .verify import *
