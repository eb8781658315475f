from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drtmoments.drt import (
    MomentConsistencyError,
    array_moment,
    assemble,
    build_power_table,
    drt_raw_moments,
    power_table,
)
from drtmoments.image import GrayImage, generate
from drtmoments.moments import MultCounter, RawMoments
from drtmoments.projections import project

from conftest import CORPUS_MOMENTS, brute_moments, gray_images


def test_power_table_small():
    assert build_power_table(3).powers[2] == (0, 1, 4, 9)
    assert build_power_table(0).powers[3] == (0,)


def test_power_table_largest_paper_size():
    table = build_power_table(4032 + 3024 - 2)
    k = 7054
    square = 0
    for _ in range(k):
        square += k
    cube = 0
    for _ in range(k):
        cube += square
    assert table.powers[3][k] == cube
    assert table.max_k == k


def test_power_table_negative():
    with pytest.raises(ValueError):
        build_power_table(-1)


def test_power_table_cached():
    assert power_table(10) is power_table(10)


def test_array_moment_examples():
    table = build_power_table(4)
    assert array_moment([4, 6], 1, 0, table) == 6
    assert array_moment([2, 5, 3], 3, -1, table) == 1


@given(st.lists(st.integers(0, 10**6), max_size=30), st.integers(-30, 30))
def test_array_moment_order_zero_is_sum(arr, offset):
    counter = MultCounter()
    assert array_moment(arr, 0, offset, counter=counter) == sum(arr)
    assert counter.count == 0


@given(
    st.lists(st.integers(0, 10**6), min_size=1, max_size=30),
    st.integers(1, 3),
    st.integers(-40, 40),
)
def test_array_moment_matches_direct_sum(arr, order, offset):
    counter = MultCounter()
    expected = sum(a * (k + offset) ** order for k, a in enumerate(arr))
    assert array_moment(arr, order, offset, counter=counter) == expected
    assert counter.count == len(arr)


def test_array_moment_validation():
    with pytest.raises(ValueError):
        array_moment([1], 4)
    with pytest.raises(ValueError, match="does not cover"):
        array_moment([1, 2, 3], 1, -5, build_power_table(3))


def test_corpus(corpus):
    assert brute_moments(corpus) == CORPUS_MOMENTS
    assert drt_raw_moments(corpus).as_dict() == CORPUS_MOMENTS


def test_corpus_intermediates(corpus):
    proj = project(corpus)
    assert array_moment(proj.diagonal, 2) == 21
    assert array_moment(proj.diagonal, 3) == 37
    assert array_moment(proj.antidiagonal, 3, -1) == 1


def test_printed_formulas_fail_on_corpus(corpus):
    with pytest.raises(MomentConsistencyError) as info:
        drt_raw_moments(corpus, as_printed=True)
    assert info.value.moment == "m12"
    # (D3 + A3)/6 - m30/3 with D3=37, A3=1, m30=6
    assert info.value.value == Fraction(37 + 1, 6) - Fraction(6, 3) == Fraction(13, 3)


def test_printed_formulas_disagree_when_divisible():
    # find images where the swapped formulas happen to divide exactly;
    # they must still give wrong values there
    wrong = 0
    for seed in range(200):
        img = generate("uniform", 3, 4, seed=seed)
        try:
            printed = drt_raw_moments(img, as_printed=True)
        except MomentConsistencyError:
            continue
        expected = brute_moments(img)
        if expected["m12"] != expected["m21"]:
            assert printed.as_dict() != expected
            wrong += 1
    assert wrong > 0


def test_zero_image():
    assert drt_raw_moments(generate("constant", 6, 4, value=0)) == RawMoments(*[0] * 10)


@pytest.mark.parametrize("width, height", [(1, 1), (5, 3), (17, 40)])
def test_delta_on_first_row(width, height):
    v = 77
    m = drt_raw_moments(generate("delta", width, height, x=1 % width, y=0, value=v)).as_dict()
    x = 1 % width
    assert m["m00"] == v
    assert m["m10"] == v * x and m["m20"] == v * x * x and m["m30"] == v * x**3
    assert all(m[name] == 0 for name in ("m01", "m11", "m02", "m21", "m12", "m03"))


@settings(max_examples=200, deadline=None)
@given(gray_images(max_side=14))
def test_equals_brute_force(image):
    assert drt_raw_moments(image).as_dict() == brute_moments(image)


@settings(max_examples=50, deadline=None)
@given(gray_images(max_side=14))
def test_transpose_symmetry(image):
    assert drt_raw_moments(image.transpose()) == drt_raw_moments(image).transposed()


@pytest.mark.parametrize("width, height", [(1, 1), (1, 9), (9, 1), (200, 200), (4032, 3024)])
def test_multiplication_count(width, height):
    counter = MultCounter()
    img = generate("constant", width, height, value=3)
    drt_raw_moments(img, counter, table=power_table(width + height - 2))
    assert counter.count == 3 * width + 3 * height + 3 * (width + height - 1)
    assert counter.assembly_count == 2
    assert counter.count <= 6 * (width + height)


def test_counter_reset_per_call(corpus):
    counter = MultCounter(count=999, assembly_count=5)
    drt_raw_moments(corpus, counter)
    assert counter.count == 21


def test_supplied_larger_table(corpus):
    assert drt_raw_moments(corpus, table=build_power_table(50)).as_dict() == CORPUS_MOMENTS


def test_inconsistent_projection_detected():
    # Projections that cannot come from any image trip the exactness check.
    proj = project(GrayImage(2, 2, [1, 2, 3, 4]))
    bad = type(proj)(proj.vertical, proj.horizontal, proj.diagonal + [0, 1, 0],
                     proj.antidiagonal, 2, 2)
    with pytest.raises(MomentConsistencyError, match="m11"):
        assemble(bad)


def test_wide_values_exact():
    img = generate("constant", 4032, 3024, value=255)
    m = drt_raw_moments(img)
    sx = [sum(x**i for x in range(4032)) for i in range(4)]
    sy = [sum(y**j for y in range(3024)) for j in range(4)]
    assert m.m30 == 255 * sx[3] * sy[0]
    assert m.m30 > 2**63
    assert m.m21 == 255 * sx[2] * sy[1]
    assert m.m12 == 255 * sx[1] * sy[2]
    assert m.m11 == 255 * sx[1] * sy[1]
