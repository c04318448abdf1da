from .kernel import *
from .digamma import *
from .gamma import *
from .prime_sum import *
from .bound import *
