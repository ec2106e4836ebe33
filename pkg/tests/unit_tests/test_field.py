from unittest import TestCase

import numpy as np
import pytest

from agdmm import (
    FieldDivisionByZeroError,
    NoDefaultModulusError,
    NotPrimeError,
    ReducibleModulusError,
    enumerate_field,
    field_arith,
    field_from_order,
    make_field,
    random_matrix,
    read_matrix_csv,
    write_matrix_csv,
)

SUPPORTED_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2), (3, 3)]


def test_gf4_multiplication_with_modulus_z2_z_1():
    spec = make_field(p=2, k=2, modulus=[1, 1, 1])
    assert int(field_arith(spec, 2, 2, "mul")) == 3
    assert int(field_arith(spec, 2, 3, "mul")) == 1


def test_gf4_addition_is_xor_of_codes():
    spec = make_field(p=2, k=2)
    for a in range(4):
        for b in range(4):
            assert int(field_arith(spec, a, b, "add")) == a ^ b


def test_gf9_sub_and_div_inverse_each_other():
    spec = make_field(p=3, k=2)
    for a in range(9):
        for b in range(1, 9):
            quotient = field_arith(spec, a, b, "div")
            assert int(field_arith(spec, quotient, b, "mul")) == a
            assert int(field_arith(spec, field_arith(spec, a, b, "sub"), b, "add")) == a


def test_negative_power_is_inverse():
    spec = make_field(p=5)
    for a in range(1, 5):
        assert field_arith(spec, a, -1, "pow") == field_arith(spec, a, None, "inv")


@pytest.mark.parametrize("p,k", SUPPORTED_FIELDS)
def test_field_axioms_on_random_triples(p, k):
    spec = make_field(p=p, k=k)
    rng = np.random.default_rng(seed=p * 100 + k)
    a, b, c = (spec.GF(rng.integers(low=0, high=spec.order, size=1000)) for _ in range(3))

    assert np.array_equal((a + b) + c, a + (b + c))
    assert np.array_equal((a * b) * c, a * (b * c))
    assert np.array_equal(a * b, b * a)
    assert np.array_equal(a * (b + c), a * b + a * c)
    nonzero = a[a != 0]
    assert np.all(nonzero * nonzero**-1 == 1)


def test_enumerate_field_in_code_order():
    spec = make_field(p=2, k=3)
    assert enumerate_field(spec).tolist() == list(range(8))


@pytest.mark.parametrize("p,k", SUPPORTED_FIELDS)
def test_frobenius_is_a_field_automorphism(p, k):
    spec = make_field(p=p, k=k)
    codes = np.asarray(enumerate_field(spec).view(np.ndarray))
    assert len(codes) == spec.order <= 27
    # every pair (a, b) of field elements
    a, b = spec.GF(np.repeat(codes, spec.order)), spec.GF(np.tile(codes, spec.order))

    assert np.array_equal((a + b) ** p, a**p + b**p)
    assert np.array_equal((a * b) ** p, a**p * b**p)
    assert len(set((spec.GF(codes) ** p).tolist())) == spec.order
    assert np.array_equal(spec.GF(codes) ** spec.order, spec.GF(codes))


def test_field_from_order():
    spec = field_from_order(25)
    assert (spec.p, spec.k) == (5, 2)
    assert str(spec) == "GF(25)"


class TestMakeFieldErrors(TestCase):
    def test_composite_characteristic(self):
        with self.assertRaisesRegex(NotPrimeError, r"\(4\) is not a prime number"):
            make_field(p=4)

    def test_reducible_modulus(self):
        # z^2 + 1 = (z + 1)^2 over GF(2)
        with self.assertRaises(ReducibleModulusError):
            make_field(p=2, k=2, modulus=[1, 0, 1])

    def test_non_monic_modulus(self):
        with self.assertRaises(ReducibleModulusError):
            make_field(p=3, k=2, modulus=[1, 0, 2])

    def test_missing_default_modulus(self):
        with self.assertRaises(NoDefaultModulusError):
            make_field(p=7, k=2)

    def test_field_from_non_prime_power(self):
        with self.assertRaises(NotPrimeError):
            field_from_order(6)


class TestDivisionByZero(TestCase):
    def setUp(self):
        self.spec = make_field(p=2, k=2)

    def test_div(self):
        with self.assertRaises(FieldDivisionByZeroError):
            field_arith(self.spec, 3, 0, "div")

    def test_inv(self):
        with self.assertRaises(ZeroDivisionError):
            field_arith(self.spec, 0, None, "inv")

    def test_negative_pow(self):
        with self.assertRaises(FieldDivisionByZeroError):
            field_arith(self.spec, 0, -2, "pow")

    def test_unknown_operation(self):
        with self.assertRaisesRegex(ValueError, "is not one of"):
            field_arith(self.spec, 1, 1, "xor")


def test_matrix_csv_round_trip(tmp_path):
    spec = make_field(p=5, k=2)
    matrix = random_matrix(spec, rows=3, cols=4, seed=7)
    file_path = tmp_path / "a.csv"
    write_matrix_csv(file_path=file_path, matrix=matrix, spec=spec)

    assert file_path.read_text().splitlines()[0] == "# gf 5 2 modulus=2,1,1"
    read_spec, read_matrix = read_matrix_csv(file_path)
    assert read_spec == spec
    assert np.array_equal(read_matrix, matrix)


def test_matrix_csv_rejects_codes_outside_field(tmp_path):
    file_path = tmp_path / "bad.csv"
    file_path.write_text("# gf 2 2 modulus=1,1,1\n0,1\n2,4\n")
    with pytest.raises(ValueError, match="outside of"):
        read_matrix_csv(file_path)


def test_matrix_csv_rejects_missing_header(tmp_path):
    file_path = tmp_path / "bad.csv"
    file_path.write_text("0,1\n2,3\n")
    with pytest.raises(ValueError, match="header"):
        read_matrix_csv(file_path)


def test_matrix_csv_accepts_string_paths(tmp_path):
    spec = make_field(p=3, k=2)
    matrix = spec.GF([[0, 8], [4, 1]])
    file_path = str(tmp_path / "b.csv")
    write_matrix_csv(file_path=file_path, matrix=matrix, spec=spec)
    read_spec, read_matrix = read_matrix_csv(file_path=file_path)
    assert read_spec == spec
    assert read_matrix.tolist() == [[0, 8], [4, 1]]
