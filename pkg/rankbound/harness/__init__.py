from .table import *
from .fixtures import *
from .batch import *
from .report import *
