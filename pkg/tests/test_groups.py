import pytest
from hypothesis import given, strategies as st

from conftest import elements, groups
from zerosum import GroupSpec
from zerosum.errors import GroupSpecError, InvalidElementError, NotInKernelError, UnsupportedGroupError
from zerosum.groups import format_element, kernel_group, kernel_iso, kernel_lift, parse_element, projection_hom, quotient_group

C33 = GroupSpec.homocyclic(3, 3)
C93 = GroupSpec.homocyclic(9, 3)
C273 = GroupSpec.homocyclic(27, 3)


def test_parse_forms():
    assert GroupSpec.parse("3^2^3") == GroupSpec((9, 9, 9)) == GroupSpec.parse("9,9,9")
    assert GroupSpec.parse("3^1^3") == C33
    assert str(C93) == "C_9^3"
    assert GroupSpec.parse(C93.spec_string()) == C93


@pytest.mark.parametrize("bad", ["", "3^x", "0", "1", "2,3", "4,2", "3^0^2", "a,b"])
def test_parse_rejects(bad):
    with pytest.raises(GroupSpecError):
        GroupSpec.parse(bad)


def test_structure():
    G = GroupSpec((2, 4, 8))
    assert (G.rank(), G.exponent(), G.order(), G.davenport_star()) == (3, 8, 64, 12)
    assert G.prime == 2 and G.is_p_group() and not G.is_elementary()
    assert GroupSpec((6,)).prime is None
    assert C33.is_elementary() and C93.is_homocyclic()


@pytest.mark.parametrize("p,r", [(2, 3), (3, 3), (5, 4), (7, 2)])
def test_davenport_star_elementary(p, r):
    assert GroupSpec.homocyclic(p, r).davenport_star() == r * (p - 1) + 1


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (3, 3)])
def test_davenport_star_rank3(p, n):
    assert GroupSpec.homocyclic(p**n, 3).davenport_star() == 3 * p**n - 2


def test_add_examples():
    assert C33.add((1, 0, 0), (2, 0, 0)) == (0, 0, 0)
    assert C33.add((1, 1, 1), (0, 0, 0)) == (1, 1, 1)
    assert C93.add((5, 5, 5), (4, 4, 4)) == (0, 0, 0)


def test_scalar_examples():
    assert C33.scalar_mul(3, (1, 1, 1)) == (0, 0, 0)
    assert C33.scalar_mul(-1, (1, 1, 0)) == (2, 2, 0)
    assert C93.scalar_mul(2, (4, 0, 1)) == (8, 0, 2)


def test_order_examples():
    assert C93.order_of((0, 0, 0)) == 1
    assert C93.order_of((1, 0, 0)) == 9
    assert C93.order_of((3, 0, 0)) == 3


def test_invalid_elements():
    with pytest.raises(InvalidElementError):
        C33.add((1, 0), (1, 0, 0))
    with pytest.raises(InvalidElementError):
        C33.validate((3, 0, 0))


def test_projection_examples():
    assert projection_hom((1, 0, 0), C93) == (1, 0, 0)
    assert projection_hom((3, 6, 0), C93) == (0, 0, 0)
    assert projection_hom((8, 4, 2), C93) == (2, 1, 2)
    with pytest.raises(UnsupportedGroupError):
        projection_hom((1, 0, 0), C33)


def test_kernel_examples():
    assert kernel_iso((3, 6, 0), C93) == (1, 2, 0)
    assert kernel_iso((0, 0, 0), C93) == (0, 0, 0)
    assert kernel_iso((6, 3, 3), C273) == (2, 1, 1)
    with pytest.raises(NotInKernelError):
        kernel_iso((1, 0, 0), C93)
    assert quotient_group(C273) == C33 and kernel_group(C273) == C93


def test_element_text():
    assert parse_element("1,0,2", C33) == (1, 0, 2)
    assert format_element((1, 0, 2)) == "1,0,2"


def test_index_roundtrip_and_order():
    G = GroupSpec((2, 6))
    els = list(G.elements())
    assert [G.index(g) for g in els] == list(range(G.order()))
    assert els == sorted(els)
    assert all(G.element(G.index(g)) == g for g in els)


@given(st.data())
def test_group_law(data):
    G = data.draw(groups())
    g, h, k = (data.draw(elements(G)) for _ in range(3))
    assert G.add(g, h) == G.add(h, g)
    assert G.add(G.add(g, h), k) == G.add(g, G.add(h, k))
    assert G.scalar_mul(G.exponent(), g) == G.zero()
    assert G.add(g, G.neg(g)) == G.zero()
    assert G.scalar_mul(G.order_of(g), g) == G.zero()


@given(st.data())
def test_translation_matches_sub(data):
    G = data.draw(groups())
    g = data.draw(elements(G))
    perm = G.translation(g)
    for x in G.elements():
        assert perm[G.index(x)] == G.index(G.sub(x, g))


@given(st.data())
def test_translate_mask(data):
    G = data.draw(groups())
    g = data.draw(elements(G))
    members = data.draw(st.lists(elements(G), max_size=8))
    moved = G.translate_mask(G.mask_of(members), g)
    assert moved == G.mask_of([G.add(x, g) for x in members])


@given(st.data())
def test_projection_is_hom(data):
    G = GroupSpec.homocyclic(data.draw(st.sampled_from([9, 27])), 3)
    Q = quotient_group(G)
    g, h = data.draw(elements(G)), data.draw(elements(G))
    assert projection_hom(G.add(g, h), G) == Q.add(projection_hom(g, G), projection_hom(h, G))


@given(st.data())
def test_kernel_iso_hom_and_inverse(data):
    G = GroupSpec.homocyclic(data.draw(st.sampled_from([9, 27])), 3)
    K = kernel_group(G)
    a, b = data.draw(elements(K)), data.draw(elements(K))
    g, h = kernel_lift(a, G), kernel_lift(b, G)
    assert projection_hom(g, G) == (0, 0, 0)
    assert kernel_iso(g, G) == a
    assert kernel_iso(G.add(g, h), G) == K.add(a, b)
