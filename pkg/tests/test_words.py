from discgraphlab import words


def test_free_reduce():
    assert words.free_reduce((1, -1)) == ()
    assert words.free_reduce((1, 2, -2, -1)) == ()
    assert words.free_reduce((1, 2, -2, 3)) == (1, 3)


def test_cyclic_reduce_wraps():
    assert words.cyclic_reduce((1, 2, -1)) == (2,)
    assert words.cyclic_reduce((3, 1, 2, -1, -3)) == (2,)


def test_canonical_cyclic_identifies_rotations_and_inverse():
    w = (1, 2, -1, -2)
    for rot in words.rotations(w):
        assert words.canonical_cyclic(rot) == words.canonical_cyclic(w)
    assert words.canonical_cyclic(words.inverse(w)) == words.canonical_cyclic(w)


def test_substitute():
    img = {1: (), 2: (5,)}
    assert words.substitute((1, 2, -1), img) == (5,)
    assert words.substitute((2, 2), img) == (5, 5)


def test_primitive_root():
    assert words.primitive_root((1, 2, 1, 2)) == ((1, 2), 2)
    assert words.primitive_root((1, 2)) == ((1, 2), 1)


GENUS2_RELATOR = (1, 3, -1, -3, 2, 4, -2, -4)


def test_dehn_reduce_kills_relator():
    assert words.is_trivial_in_quotient(GENUS2_RELATOR, GENUS2_RELATOR)
    assert words.is_trivial_in_quotient((), GENUS2_RELATOR)
    conj = words.concat((2, 1), GENUS2_RELATOR, (-1, -2))
    assert words.is_trivial_in_quotient(conj, GENUS2_RELATOR)


def test_dehn_reduce_keeps_nontrivial():
    assert not words.is_trivial_in_quotient((1,), GENUS2_RELATOR)
    assert not words.is_trivial_in_quotient((1, 3, -1, -3), GENUS2_RELATOR)
    assert not words.is_trivial_in_quotient((1, 2), GENUS2_RELATOR)


def test_dehn_reduce_halves():
    # half the relator reduces to the inverse of the other half, same length
    half = GENUS2_RELATOR[:4]
    red = words.dehn_reduce(half, GENUS2_RELATOR)
    assert len(red) <= 4
    assert red
