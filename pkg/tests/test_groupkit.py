import numpy as np
import pytest

from znlcs.groupkit import (GroupCatalogue, alice_generators, alice_images,
                            bob_generators, commutation_check,
                            enumerate_group, evaluate_word,
                            evaluate_word_matrix, g3_irreps,
                            groups_equal_as_sets, normal_form_enumerate,
                            normal_form_words, presentation_relators,
                            ring_relation_defect, scalar_j, shift_x,
                            verify_presentation)


def test_monomial_composition_matches_dense_product():
    n = 5
    a0, a1 = alice_generators(n)
    b0, b1 = bob_generators(n)
    pairs = [(a0, a1), (a1, a1), (a0 @ a1, b1), (b0.inverse(), a1 @ a0)]
    for x, y in pairs:
        assert np.allclose((x @ y).to_matrix(), x.to_matrix() @ y.to_matrix())
    for x in (a0, a1, b0, b1):
        assert np.allclose(x.inverse().to_matrix(),
                           x.to_matrix().conj().T)


def test_generator_matrices():
    n = 4
    z = np.exp(1j * np.pi / (2 * n))
    X = np.roll(np.eye(n), 1, axis=0)
    D0 = np.diag([-1.0] + [1.0] * (n - 1))
    a0, a1 = alice_generators(n)
    b0, b1 = bob_generators(n)
    assert np.allclose(a0.to_matrix(), X)
    assert np.allclose(b0.to_matrix(), X)
    assert np.allclose(a1.to_matrix(), z**2 * D0 @ X)
    assert np.allclose(b1.to_matrix(), z**2 * D0 @ X.conj().T)
    assert np.allclose(scalar_j(n).to_matrix(), z**4 * np.eye(n))


def test_orders_of_generators():
    for n in (2, 3, 5):
        a0, a1 = alice_generators(n)
        assert a0.order() == n
        assert a1.order() == n
        assert scalar_j(n).order() == n


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_group_order_formula(n):
    cat = enumerate_group(list(alice_generators(n)))
    assert len(cat) == n * n * 2 ** (n - 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_normal_forms_enumerate_whole_group(n):
    pairs = normal_form_enumerate(n)
    assert len(pairs) == n * n * 2 ** (n - 1)
    cat = enumerate_group(list(alice_generators(n)))
    assert {u.key() for _, u in pairs} == {u.key() for u in cat.elements}


def test_alt_normal_form_same_set_for_n3():
    std = {evaluate_word(w, alice_images(3), 3).key()
           for w in normal_form_words(3, "standard")}
    alt = {evaluate_word(w, alice_images(3), 3).key()
           for w in normal_form_words(3, "alt")}
    assert std == alt
    assert len(std) == 36


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("side", ["A", "B"])
def test_presentation_relators_hold(n, side):
    assert verify_presentation(n, side) == []


def test_presentation_relator_detects_corruption():
    # Negative control: a wrong phase on A1 must break some relator.
    images = alice_images(3)
    a1 = images["P1"]
    bad = type(a1)(n=3, shift=a1.shift,
                   phases=tuple((p + 1) % 12 for p in a1.phases))
    images["P1"] = bad
    failing = [rel for rel in presentation_relators(3, "A")
               if evaluate_word(rel, images, 3).key()
               != evaluate_word((), images, 3).key()]
    assert failing


def test_bob_group_equals_alice_group():
    for n in (2, 3, 4):
        assert groups_equal_as_sets(n)
        assert commutation_check(n)


def test_catalogue_table_and_orders():
    cat = enumerate_group(list(alice_generators(3)))
    table = cat.multiplication_table()
    size = len(cat)
    assert table.shape == (size, size)
    # Each row and column of a group's Cayley table is a permutation.
    for i in range(size):
        assert sorted(table[i]) == list(range(size))
        assert sorted(table[:, i]) == list(range(size))
    orders = cat.element_orders()
    assert max(orders) <= 12  # exponent of the 36-element group
    assert cat.center_size() >= 1


def test_catalogue_csv(tmp_path):
    cat = enumerate_group(list(alice_generators(2)))
    path = tmp_path / "table.csv"
    cat.write_multiplication_csv(str(path))
    rows = path.read_text().strip().splitlines()
    assert len(rows) == len(cat)  # one row per element
    assert all(len(r.split(",")) == len(cat) for r in rows)


def test_g3_irreps_complete():
    irreps = g3_irreps()
    assert len(irreps) == 12
    assert sum(r.degree ** 2 for r in irreps) == 36
    for r in irreps:
        assert r.relator_defect(3) < 1e-12


def test_ring_relation_selects_g1():
    for r in g3_irreps():
        defect = ring_relation_defect(r)
        if r.name == "g1":
            assert defect < 1e-12
        else:
            assert defect > 0.1


def test_evaluate_word_matrix_inverse_exponents():
    images = {k: v.to_matrix() for k, v in alice_images(3).items()}
    M = evaluate_word_matrix((("P0", 1), ("P0", -1)), images)
    assert np.allclose(M, np.eye(3))
