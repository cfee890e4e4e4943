import itertools
import math

import numpy as np
import pytest

from renyi_bounds import rectangles
from renyi_bounds.rectangles import Rectangle, legendre, marginals
from renyi_bounds.spectra import renyi, spectrum_of, uniform


def squares_mod(q):
    return {x * x % q for x in range(1, q)}


def test_ip_rectangle_small():
    np.testing.assert_array_equal(rectangles.ip_rectangle(1).entries, [[1, 1], [1, -1]])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_ip_rectangle_is_hadamard(n):
    r = rectangles.ip_rectangle(n).entries.astype(int)
    np.testing.assert_array_equal(r @ r.T, 2**n * np.eye(2**n))
    assert np.all(r[0] == 1)


def test_ip_rectangle_entries_by_definition():
    r = rectangles.ip_rectangle(3).entries
    for x, y in itertools.product(range(8), repeat=2):
        assert r[x, y] == (-1) ** bin(x & y).count("1")


@pytest.mark.parametrize("n", [0, 14])
def test_ip_rectangle_range(n):
    with pytest.raises(ValueError):
        rectangles.ip_rectangle(n)


def test_legendre_examples():
    assert legendre(1, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(2, 7) == 1
    assert legendre(0, 7) == 0


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 101])
def test_legendre_matches_squares(q):
    sq = squares_mod(q)
    for x in range(1, q):
        assert legendre(x, q) == (1 if x in sq else -1)


@pytest.mark.parametrize("q", [1, 2, 4, 9, 15, 561, 1105])
def test_legendre_rejects_non_odd_primes(q):
    with pytest.raises(ValueError):
        legendre(1, q)


def test_legendre_argument_range():
    with pytest.raises(ValueError):
        legendre(7, 7)


def test_primality_against_sieve():
    limit = 5000
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        sieve[i * i :: i] = False
    assert [n for n in range(limit) if rectangles.is_probable_prime(n)] == list(np.nonzero(sieve)[0])


def test_qchar_rectangle_q3():
    r = rectangles.qchar_rectangle(3).entries
    for x, y in itertools.product(range(3), repeat=2):
        expected = 0 if x == y else (1 if (x - y) % 3 == 1 else -1)
        assert r[x, y] == expected


def test_qchar_rectangle_q7_rows():
    r = rectangles.qchar_rectangle(7)
    assert r.support_size == 42
    for row in r.entries:
        assert np.sum(row == 1) == 3 and np.sum(row == -1) == 3


def test_qchar_rectangle_limits():
    with pytest.raises(ValueError):
        rectangles.qchar_rectangle(4099)
    with pytest.raises(ValueError):
        rectangles.qchar_rectangle(21)


@pytest.mark.parametrize("q", [7, 13])
def test_shift_property_exact(q):
    g = [legendre(x, q) for x in range(q)]
    for r, s in itertools.product(range(q), repeat=2):
        total = sum(g[(x + r) % q] * g[(x + s) % q] for x in range(q))
        assert total == (q - 1 if r == s else -1)


@pytest.mark.parametrize("q", [3, 7, 11])
def test_qchar_marginals_closed_form(q):
    pair = marginals(rectangles.qchar_rectangle(q))
    eye, ones = np.eye(q), np.ones((q, q))
    np.testing.assert_allclose(pair.phi_a, (eye + (q - 2) * ones) / (q * (q - 1)), atol=1e-12)
    np.testing.assert_allclose(pair.psi_a, (q * eye - ones) / (q * (q - 1)), atol=1e-12)
    np.testing.assert_allclose(
        pair.phi_spectrum.probs, [1 - 1 / q] + [1 / (q * (q - 1))] * (q - 1), atol=1e-12
    )
    np.testing.assert_allclose(pair.psi_spectrum.probs, [1 / (q - 1)] * (q - 1) + [0], atol=1e-12)
    assert renyi(pair.phi_spectrum, 0.5) == pytest.approx(math.log2(4 - 4 / q), abs=1e-10)


def test_full_support_marginals():
    pair = marginals(rectangles.ip_rectangle(2))
    np.testing.assert_allclose(pair.psi_a, np.eye(4) / 4, atol=1e-15)
    np.testing.assert_allclose(pair.phi_a, np.ones((4, 4)) / 4)
    np.testing.assert_allclose(pair.phi_spectrum.probs, [1, 0, 0, 0], atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_ip_function_spectrum(n):
    np.testing.assert_allclose(
        rectangles.function_spectrum(rectangles.ip_rectangle(n)).probs, uniform(2**n).probs, atol=1e-12
    )


def test_function_spectrum_small_cases():
    assert list(rectangles.function_spectrum(Rectangle([[1]]))) == [1.0]
    np.testing.assert_allclose(rectangles.function_spectrum(Rectangle(np.ones((2, 2)))).probs, [1, 0], atol=1e-12)
    with pytest.raises(ValueError, match="full-support"):
        rectangles.function_spectrum(rectangles.qchar_rectangle(3))


@pytest.mark.parametrize("seed", range(5))
def test_row_and_column_spectra_agree(seed):
    r = Rectangle(np.random.default_rng(seed).choice([-1, 1], size=(5, 8)))
    amp = r.entries.astype(float)
    sx = rectangles.function_spectrum(r)
    sy = spectrum_of(amp.T @ amp / amp.size)
    np.testing.assert_allclose(sx.probs, sy.probs[:5], atol=1e-8)
    np.testing.assert_allclose(sy.probs[5:], 0, atol=1e-8)


def test_rectangle_validation():
    with pytest.raises(ValueError, match="-1, 0"):
        Rectangle([[2]])
    with pytest.raises(ValueError, match="empty support"):
        Rectangle([[0, 0]])


def test_csv_round_trip(tmp_path):
    r = rectangles.qchar_rectangle(5)
    path = tmp_path / "q5.csv"
    rectangles.to_csv(r, path)
    back = rectangles.from_csv(path)
    np.testing.assert_array_equal(back.entries, r.entries)
    assert back.name == "q5"


@pytest.mark.parametrize(
    "content, message",
    [("1,1\n1\n", "ragged"), ("1,2\n", "entries"), ("0,0\n", "empty support"), ("", "empty"), ("a\n", "non-integer")],
)
def test_csv_errors(tmp_path, content, message):
    path = tmp_path / "r.csv"
    path.write_text(content)
    with pytest.raises(ValueError, match=message):
        rectangles.from_csv(path)


def test_csv_single_entry(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("1\n")
    assert rectangles.from_csv(path).support_size == 1
