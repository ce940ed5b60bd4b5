from .core import Grid, Lattice, ScaleGroup, direct_sum, grid_equal, same_lattice, scale_grid, tau_embed
from .enumerate import enumerate_grid_points, grid_min_product, shortest_vector
from .reduce import lll_reduce
from .witness import littlewood_witness_search, witness_schedule
