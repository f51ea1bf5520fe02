import pytest

from artgallery.geometry import Polygon

# 18-vertex comb: six downward prongs, closed along the top.
COMB18_VERTICES = [
    (558, 497), (513, 148), (477, 413), (439, 413), (403, 150), (384, 410),
    (339, 409), (298, 152), (267, 409), (228, 409), (192, 151), (161, 412),
    (124, 412), (80, 151), (74, 413), (52, 413), (25, 147), (11, 497),
]
COMB18_AREA = 92243.5
COMB18_GUARDS = [(83, 402), (22, 276), (227, 414), (514, 231), (320, 360), (404, 487)]

# 21-vertex polygon with deep notches on all sides.
POLY21_VERTICES = [
    (475, 512), (146, 512), (284, 486), (146, 480), (147, 366), (118, 415),
    (99, 288), (128, 295), (146, 336), (151, 226), (256, 226), (151, 191),
    (405, 190), (294, 226), (438, 223), (437, 316), (475, 230), (472, 418),
    (437, 343), (428, 474), (314, 480),
]
POLY21_AREA = 91201.5
POLY21_GUARDS = [(116, 348), (208, 209), (435, 324), (292, 495)]

L_SHAPE_VERTICES = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]


@pytest.fixture(scope="session")
def comb18():
    return Polygon(COMB18_VERTICES)


@pytest.fixture(scope="session")
def poly21():
    return Polygon(POLY21_VERTICES)


@pytest.fixture(scope="session")
def l_shape():
    return Polygon(L_SHAPE_VERTICES)


@pytest.fixture(scope="session")
def unit_square():
    return Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
