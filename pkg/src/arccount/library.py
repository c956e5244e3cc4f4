"""Named planar spaces used throughout the tests and demos."""

from .spaces import Configuration, PlanarSpace

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def fano_configuration() -> Configuration:
    return Configuration(7, FANO_LINES)


def skew_lines_space() -> PlanarSpace:
    """Two skew 3-point lines; the only hyperfiguration on six points."""
    return PlanarSpace(
        6,
        [(0, 1, 2), (3, 4, 5)],
        [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 5), (0, 3, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5)],
    )


def h1() -> PlanarSpace:
    return PlanarSpace(7, [], [(0, 1, 2, 3), (0, 1, 4, 5), (0, 2, 4, 6), (1, 2, 5, 6), (1, 3, 4, 6), (2, 3, 4, 5)])


def h2() -> PlanarSpace:
    return PlanarSpace(7, [], list(h1().planes) + [(0, 3, 5, 6)])


def h3() -> PlanarSpace:
    return PlanarSpace(
        7,
        [(0, 1, 2)],
        [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 5), (0, 1, 2, 6), (0, 3, 4, 5), (1, 3, 4, 6), (2, 3, 5, 6)],
    )


def h4() -> PlanarSpace:
    return PlanarSpace(
        7,
        [(0, 1, 2), (0, 3, 4)],
        [(0, 1, 2, 3, 4), (0, 1, 2, 5), (0, 1, 2, 6), (0, 3, 4, 5), (0, 3, 4, 6), (1, 3, 5, 6), (2, 4, 5, 6)],
    )


def h5() -> PlanarSpace:
    return PlanarSpace(
        7,
        [(0, 1, 2, 3), (4, 5, 6)],
        [(0, 1, 2, 3, 4), (0, 1, 2, 3, 5), (0, 1, 2, 3, 6), (0, 4, 5, 6), (1, 4, 5, 6), (2, 4, 5, 6), (3, 4, 5, 6)],
    )


def h6() -> PlanarSpace:
    return PlanarSpace(7, FANO_LINES, [tuple(range(7))])


HYPERFIGURATIONS_7 = {"h1": h1, "h2": h2, "h3": h3, "h4": h4, "h5": h5, "h6": h6}

NAMED = {"A6": skew_lines_space, **HYPERFIGURATIONS_7}


def order_example() -> tuple[PlanarSpace, PlanarSpace, PlanarSpace]:
    """Three spaces on five points: ``g >= f`` while ``h`` is incomparable to ``f``."""
    f = PlanarSpace(5, [(0, 1, 2)], [(0, 1, 2, 3), (0, 1, 2, 4)])
    g = PlanarSpace(5, [(0, 1, 2, 3)], [(0, 1, 2, 3, 4)])
    h = PlanarSpace(5, [], [(0, 1, 2, 3, 4)])
    return f, g, h
