from .algorithms import *
from .components import *
from .quantum import *
from .majorization import *
from .majorization_bounds import *
from .channel_bounds import *
from .admixture import *
from .factory import *
from .generators import *
from .bound_manager import *
from .tools import *
