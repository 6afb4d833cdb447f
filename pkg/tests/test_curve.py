import numpy as np
from pytest import mark, raises

from metricat.curve import Curve, Partition, Polyline
from metricat.errors import DomainError


def _line(start, end, domain=(0.0, 1.0)):
    start, end = np.asarray(start, dtype=float), np.asarray(end, dtype=float)
    t_0, t_1 = domain
    return Curve(lambda t: start + (t - t_0) / (t_1 - t_0) * (end - start), domain)


def test_curve_basics():
    curve = _line([0, 0], [2, 0], (1.0, 3.0))
    assert curve.start == 1.0 and curve.end == 3.0
    assert curve.span == 2.0
    first, last = curve.endpoints
    assert np.allclose(first, [0, 0]) and np.allclose(last, [2, 0])
    assert np.allclose(curve(2.0), [1, 0])
    params, points = curve.sample(5)
    assert np.allclose(params, [1.0, 1.5, 2.0, 2.5, 3.0])
    assert len(points) == 5
    with raises(DomainError):
        curve(3.5)
    with raises(DomainError):
        Curve(lambda t: t, (1.0, 0.0))
    with raises(DomainError):
        Curve(lambda t: t, (0.0, np.inf))


def test_curve_algebra():
    curve = _line([0, 0], [4, 0], (0.0, 2.0))
    reverse = curve.reverse()
    assert reverse.domain == curve.domain
    assert np.allclose(reverse(0.0), [4, 0])
    assert np.allclose(reverse(0.5), curve(1.5))

    part = curve.restrict(0.5, 1.0)
    assert part.domain == (0.5, 1.0)
    assert np.allclose(part(1.0), [2, 0])
    with raises(DomainError):
        curve.restrict(1.0, 3.0)

    stretched = curve.reparametrize((0.0, 10.0))
    assert np.allclose(stretched(5.0), curve(1.0))
    assert np.allclose(stretched(10.0), [4, 0])

    second = _line([4, 0], [4, 3], (2.0, 3.0))
    joined = curve.concatenate(second)
    assert joined.domain == (0.0, 3.0)
    assert np.allclose(joined(1.0), [2, 0])
    assert np.allclose(joined(2.5), [4, 1.5])
    with raises(DomainError):
        second.concatenate(curve)

    constant = Curve.constant("p", (0.0, 2.0))
    assert constant(1.3) == "p"
    assert constant.reparametrize((0.0, 1.0))(0.5) == "p"


def test_polyline():
    nearest = Polyline([0.0, 1.0, 3.0], ["a", "b", "c"])
    assert nearest(0.0) == "a"
    assert nearest(0.4) == "a"
    assert nearest(0.5) == "a"
    assert nearest(0.6) == "b"
    assert nearest(2.5) == "c"
    assert nearest(3.0) == "c"

    interpolated = Polyline.from_points([np.zeros(2), np.array([2.0, 0.0])],
                                        interpolator=lambda p, q, s: (1 - s) * p + s * q)
    assert np.allclose(interpolated(0.25), [0.5, 0.0])

    single = Polyline.from_points(["x"])
    assert single.span == 0 and single(0.0) == "x"

    with raises(DomainError):
        Polyline([0.0, 0.0], ["a", "b"])
    with raises(DomainError):
        Polyline([0.0, 1.0], ["a"])


@mark.parametrize(
    "knots,error",
    [
        ((0.0, 0.5, 1.0), False),
        ((0.0,), False),
        ((0.0, 0.5, 0.5), True),
        ((1.0, 0.0), True),
        ((), True),
    ]
)
def test_partition(knots, error):
    if error:
        with raises(DomainError):
            Partition(knots)
    else:
        partition = Partition(knots)
        assert len(partition) == len(knots)


def test_partition_refine():
    partition = Partition.uniform((0.0, 1.0), 2)
    assert partition.knots == (0.0, 0.5, 1.0)
    refined = partition.refine()
    assert refined.knots == (0.0, 0.25, 0.5, 0.75, 1.0)
    assert refined == Partition.dyadic((0.0, 1.0), 2)
    assert refined.spans((0.0, 1.0))
    assert not refined.spans((0.0, 2.0))
    assert Partition.uniform((1.0, 1.0), 4).knots == (1.0,)
