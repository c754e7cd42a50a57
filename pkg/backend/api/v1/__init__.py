from . import cluster
from . import bratteli
from . import k0
from . import annulus
from . import jones
