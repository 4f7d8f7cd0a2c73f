"""
The single crossing-sign convention used by every module.

A crossing is stored PD-style as four edge labels listed counterclockwise,
starting from an under-strand port: ports 0 and 2 carry the under strand,
ports 1 and 3 the over strand.  Corner ``k`` of a crossing is the angular
sector between port ``k`` and port ``k + 1``.

Elementary tangles::

     NW     NE          NW     NE
       \\   /             \\   /
        \\ /               \\ /
         /      (+1)        \\      (-1)
        / \\               / \\
       /   \\             /   \\
     SW     SE          SW     SE

In ``+1`` the SW-NE strand is over; in ``-1`` the NW-SE strand is over.
Every rational tangle with negative fraction is built from ``-1`` crossings,
so its diagram is of type 2: the strand leaving NW passes *over* at its
first crossing.  Type 1 means it passes *under*.

Checkerboard sign: a crossing has ``eta = +1`` when its white corners are
corners 0 and 2 (the sectors swept counterclockwise from an under port to
an over port), otherwise ``eta = -1``.  Goeritz matrices and Brunner band
labels are both read off this table.

Smoothings: the ``ZERO`` smoothing joins ports (0,1) and (2,3); the
``INFINITY`` smoothing joins ports (0,3) and (1,2).  At a ``-1`` crossing
these produce the 0 and infinity tangles respectively.
"""

OVER_PORTS = (1, 3)
UNDER_PORTS = (0, 2)

ZERO = "zero"
INFINITY = "inf"

SMOOTHING_PAIRS = {
    ZERO: ((0, 1), (2, 3)),
    INFINITY: ((0, 3), (1, 2)),
}

# Cyclic order of the tangle endpoints as seen from inside the disk.
BOUNDARY_CCW = ("NW", "SW", "SE", "NE")

TYPE1 = "Type1"
TYPE2 = "Type2"


def is_over(port):
    return port % 2 == 1


def eta(white_corners):
    """Checkerboard sign of a crossing given the indices of its white corners."""
    return 1 if white_corners[0] % 2 == 0 else -1
