import pytest

from ncjets.catalog import COMMUTATIVE_NAMES, NONCOMMUTATIVE_NAMES, builtin, names


def test_published_list():
    assert set(names()) == {
        "trivial",
        "dual_numbers",
        "trunc3",
        "trunc4",
        "product_QQ",
        "m2",
        "t2",
        "quaternions",
    }


def test_unknown_name():
    with pytest.raises(KeyError):
        builtin("m3")


@pytest.mark.parametrize("name", names())
def test_every_entry_validates(name):
    e = builtin(name)
    assert e.algebra.dim >= 1
    assert e.module("self").central
    assert e.module("free2").dim == 2 * e.algebra.dim


def test_commutativity_flags():
    for name in COMMUTATIVE_NAMES:
        assert builtin(name).algebra.is_commutative
    for name in NONCOMMUTATIVE_NAMES:
        assert not builtin(name).algebra.is_commutative


def test_center_dimensions():
    for name in NONCOMMUTATIVE_NAMES:
        assert builtin(name).algebra.center.dim == 1
    for name in COMMUTATIVE_NAMES:
        a = builtin(name).algebra
        assert a.center.dim == a.dim


def test_quaternion_sign_table():
    a = builtin("quaternions").algebra
    i, j, k = a.basis_element(1), a.basis_element(2), a.basis_element(3)
    assert (i * j).coords.tolist() == [0, 0, 0, 1]
    assert (j * i).coords.tolist() == [0, 0, 0, -1]
    assert (i * i).coords.tolist() == [-1, 0, 0, 0]
    assert (i * j * k).coords.tolist() == [-1, 0, 0, 0]
