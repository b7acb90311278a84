from xswap.config import *
from xswap.utils import *
from xswap.qcore import *
from xswap.xstate import *
from xswap.swap import *
from xswap.oracle import *
from xswap.families import *
from xswap.sample import *
from xswap.verify import *
