# How the arc test reads a timestamp patch.
#
# Around an event, the freshest timestamps on two rings (radius 3 and
# radius 4) are examined: the event is a candidate when each ring has a
# contiguous run of newest cells of plausible corner width -- roughly a
# quarter to a third of the ring, or the complement of one.

import numpy as np

from evcorner import DEFAULT_MASK, arc_admits, select_candidate
from evcorner.sae import LocalPatch


def patch(fill):
    vals = np.zeros((9, 9), dtype=np.int64)
    fill(vals)
    return LocalPatch(values=vals, center_x=100, center_y=90, center_t=10**6)


def show(name, p):
    inner = DEFAULT_MASK.inner_values(p.values)
    outer = DEFAULT_MASK.outer_values(p.values)
    print(f"--- {name}")
    print(f"  inner ring (16): {inner.tolist()}")
    print(f"  outer ring (20): {outer.tolist()}")
    print(f"  inner admits: {arc_admits(inner, 3, 6)}   "
          f"outer admits: {arc_admits(outer, 4, 8)}   "
          f"candidate: {select_candidate(p)}")


# a corner sweeping through stamps one quadrant with fresh times:
# a quarter of each ring is newest -> inside the admitted widths
def corner(vals):
    vals[4:, 4:] = 1_000_000

# an edge band refreshes a half-plane: the newest run covers half of
# each ring (9 of 16, 11 of 20), too wide for a corner
def edge(vals):
    vals[:, 4:] = 1_000_000

# uniform history: no newest run at all
def flat(vals):
    vals[:] = 7


show("corner wedge", patch(corner))
show("straight edge", patch(edge))
show("flat history", patch(flat))
