"""
Tests for the quartic search engine.

Sieves are checked against brute force; searches are checked on forms
with known answers and for determinism across chunkings.
"""

from math import isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import ParameterError
from core.exact import count_box_pairs
from core.model import (
    AUXILIARY_FORM,
    LIFTED_FORM,
    ODD_BRANCH_FORM,
    SQUARE_FORM,
    THEOREM_FORM,
    QuarticForm,
    SearchOptions,
)
from core.quartic import build_sieve, combined_sieve, eval_form, search


def brute_solutions(form: QuarticForm, bound: int) -> list[tuple[int, int, int]]:
    found = []
    for x in range(1, bound + 1):
        for y in range(1, bound + 1):
            value = eval_form(form, x, y)
            if value > 0 and isqrt(value) ** 2 == value:
                found.append((x, y, isqrt(value)))
    return found


class TestEvalForm:
    """Test suite for exact form evaluation."""

    @pytest.mark.parametrize(
        "form,x,y,expected",
        [
            (THEOREM_FORM, 2, 3, -35),
            (THEOREM_FORM, 1, 1, 0),
            (LIFTED_FORM, 1, 1, 20),
            (ODD_BRANCH_FORM, 2, 1, 21),
            (SQUARE_FORM, 3, 4, 625),
        ],
    )
    def test_known_values(self, form, x, y, expected):
        assert eval_form(form, x, y) == expected

    def test_large_values_are_exact(self):
        x = 10**30 + 7
        assert eval_form(SQUARE_FORM, x, 1) == (x * x + 1) ** 2

    @given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
    def test_even_in_each_variable(self, x, y):
        assert eval_form(AUXILIARY_FORM, x, y) == eval_form(AUXILIARY_FORM, -x, y) == eval_form(AUXILIARY_FORM, x, -y)


class TestSieve:
    """Test suite for residue sieves."""

    def test_lifted_form_mod_three(self):
        sieve = build_sieve(LIFTED_FORM, 3)
        assert sieve.admissible == frozenset({(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)})

    def test_square_form_is_never_sieved(self):
        assert len(build_sieve(SQUARE_FORM, 3).admissible) == 9
        assert len(build_sieve(SQUARE_FORM, 16).admissible) == 256

    @pytest.mark.parametrize("modulus", [1, 0, -3])
    def test_rejects_small_modulus(self, modulus):
        with pytest.raises(ParameterError):
            build_sieve(THEOREM_FORM, modulus)

    @pytest.mark.parametrize("form", [THEOREM_FORM, LIFTED_FORM, AUXILIARY_FORM, ODD_BRANCH_FORM])
    @pytest.mark.parametrize("modulus", [3, 4, 5, 8, 16])
    def test_matches_brute_force(self, form, modulus):
        squares = {r * r % modulus for r in range(modulus)}
        expected = {
            (rx, ry)
            for rx in range(modulus)
            for ry in range(modulus)
            if eval_form(form, rx, ry) % modulus in squares
        }
        assert build_sieve(form, modulus).admissible == expected

    @pytest.mark.parametrize("form", [THEOREM_FORM, LIFTED_FORM, ODD_BRANCH_FORM])
    def test_never_rejects_a_square(self, form):
        sieves = [build_sieve(form, modulus) for modulus in (3, 4, 5, 7, 8, 9, 16)]
        for x in range(-30, 31):
            for y in range(-30, 31):
                value = eval_form(form, x, y)
                if value >= 0 and isqrt(value) ** 2 == value:
                    assert all(sieve.admits(x, y) for sieve in sieves)

    def test_combined_table(self):
        period, table = combined_sieve(LIFTED_FORM, (3, 4))
        sieves = [build_sieve(LIFTED_FORM, 3), build_sieve(LIFTED_FORM, 4)]

        assert period == 12
        assert len(table) == 144
        for rx in range(12):
            for ry in range(12):
                assert bool(table[rx * 12 + ry]) == all(s.admits(rx, ry) for s in sieves)

    def test_no_moduli_admits_everything(self):
        assert combined_sieve(THEOREM_FORM, ()) == (1, b"\x01")


class TestSearch:
    """Test suite for the exhaustive search."""

    def test_theorem_form_to_one_hundred(self):
        cert = search(THEOREM_FORM, 100)

        assert cert.solutions_found == []
        assert cert.pairs_scanned + cert.pairs_sieved_out == count_box_pairs(100, coprime_only=True)
        assert cert.digest == cert.compute_digest()

    def test_lifted_form_to_one_hundred(self):
        assert search(LIFTED_FORM, 100).solutions_found == []

    def test_square_form_records_every_coprime_pair(self):
        cert = search(SQUARE_FORM, 10)

        assert len(cert.solutions_found) == 63
        assert cert.pairs_sieved_out == 0
        keys = [s.key() for s in cert.solutions_found]
        assert keys == sorted(keys)

    def test_trivial_solutions_when_included(self):
        cert = search(THEOREM_FORM, 10, SearchOptions(exclude_trivial=False))

        assert [s.key() for s in cert.solutions_found] == [(1, 1, 0), (1, 2, 0)]
        assert all(s.trivial for s in cert.solutions_found)
        assert cert.nontrivial_solutions() == []

    def test_noncoprime_pairs(self):
        cert = search(SQUARE_FORM, 4, SearchOptions(coprime_only=False))

        assert len(cert.solutions_found) == 16
        assert not next(s for s in cert.solutions_found if s.key() == (2, 2, 8)).primitive

    def test_odd_rows_only(self):
        cert = search(SQUARE_FORM, 6, SearchOptions(odd_x_only=True))

        assert {s.x for s in cert.solutions_found} == {1, 3, 5}
        assert cert.pairs_scanned == count_box_pairs(6, coprime_only=True, odd_x_only=True)

    @pytest.mark.parametrize("form", [ODD_BRANCH_FORM, AUXILIARY_FORM, QuarticForm(coef_a=1, coef_b=0, coef_c=1)])
    def test_sieves_lose_nothing(self, form):
        bound = 60
        unsieved = search(form, bound, SearchOptions(sieve_moduli=(), coprime_only=False))
        sieved = search(form, bound, SearchOptions(sieve_moduli=(3, 4, 5, 16), coprime_only=False))

        assert sieved.solutions_found == unsieved.solutions_found
        assert [s.key() for s in sieved.solutions_found] == brute_solutions(form, bound)
        assert sieved.pairs_sieved_out >= unsieved.pairs_sieved_out
        assert sieved.pairs_scanned + sieved.pairs_sieved_out == unsieved.pairs_scanned + unsieved.pairs_sieved_out

    @pytest.mark.parametrize("chunk_size", [1, 7, 500])
    def test_chunking_is_invisible(self, chunk_size):
        reference = search(LIFTED_FORM, 40, SearchOptions(sieve_moduli=(3, 16)))
        cert = search(LIFTED_FORM, 40, SearchOptions(sieve_moduli=(3, 16), chunk_size=chunk_size))

        assert cert.model_copy(update={"elapsed_ms": 0}) == reference.model_copy(update={"elapsed_ms": 0})

    @pytest.mark.parametrize("bound", [0, -1])
    def test_rejects_empty_box(self, bound):
        with pytest.raises(ParameterError):
            search(THEOREM_FORM, bound)

    @pytest.mark.slow
    @pytest.mark.integration
    def test_parallel_matches_serial(self):
        serial = search(THEOREM_FORM, 600)
        parallel = search(THEOREM_FORM, 600, SearchOptions(workers=4, chunk_size=16))

        assert parallel.digest == serial.digest
        assert parallel.solutions_found == []

    @pytest.mark.slow
    @pytest.mark.parametrize("form", [THEOREM_FORM, LIFTED_FORM, ODD_BRANCH_FORM, AUXILIARY_FORM, SQUARE_FORM])
    def test_sieves_lose_nothing_at_scale(self, form):
        plain = search(form, 500, SearchOptions(sieve_moduli=()))
        sieved = search(form, 500, SearchOptions(sieve_moduli=(3, 4, 5, 7, 16)))

        assert sieved.solutions_found == plain.solutions_found
        assert sieved.pairs_scanned + sieved.pairs_sieved_out == plain.pairs_scanned + plain.pairs_sieved_out
        assert plain.pairs_sieved_out == 0

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "form,expected",
        [(ODD_BRANCH_FORM, []), (AUXILIARY_FORM, [(1, 1, 4)])],
    )
    def test_odd_branch_and_auxiliary_forms_to_two_thousand(self, form, expected):
        cert = search(form, 2000)

        assert [s.key() for s in cert.nontrivial_solutions()] == expected
