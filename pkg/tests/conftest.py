import pytest
from hypothesis import strategies as st

from drtmoments.image import GrayImage

# 2x2 image with I(0,0)=1, I(1,0)=2, I(0,1)=3, I(1,1)=4
CORPUS_PIXELS = [1, 2, 3, 4]
CORPUS_MOMENTS = dict(m00=10, m10=6, m01=7, m20=6, m02=7, m11=4, m30=6, m03=7, m12=4, m21=4)


def brute_moments(image):
    """Literal double loop over pixels, weights recomputed per term."""
    out = {}
    for i, j in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]:
        total = 0
        for y in range(image.height):
            for x in range(image.width):
                total += image[x, y] * x**i * y**j
        out[f"m{i}{j}"] = total
    return out


def brute_projections(image):
    m, n = image.width, image.height
    v, h = [0] * m, [0] * n
    d, a = [0] * (n + m - 1), [0] * (n + m - 1)
    for y in range(n):
        for x in range(m):
            p = image[x, y]
            v[x] += p
            h[y] += p
            d[x + y] += p
            a[y - x + m - 1] += p
    return {"V": v, "H": h, "D": d, "A": a}


@st.composite
def gray_images(draw, max_side=12):
    w = draw(st.integers(1, max_side))
    h = draw(st.integers(1, max_side))
    pixels = draw(st.lists(st.integers(0, 255), min_size=w * h, max_size=w * h))
    return GrayImage(w, h, pixels)


@pytest.fixture
def corpus():
    return GrayImage(2, 2, CORPUS_PIXELS)
