"""Security estimator and the micro-scale brute-force oracle"""

import time

import pytest
from pydantic import ValidationError

from rdmpf import kem
from rdmpf.algebra import rdmpf
from rdmpf.errors import ParameterError, SearchSpaceError
from rdmpf.params import Params
from rdmpf.security import (
    MAX_SEARCH_SPACE,
    brute_force_recover,
    check_equivalence,
    format_security_table,
    search_space_size,
    security_estimate,
)

TABLE = {3: (17, 544), 5: (57, 1824), 7: (121, 3872), 10: (262, 8384), 15: (617, 19744), 20: (1122, 35904)}


class TestEstimator:
    @pytest.mark.parametrize("n", sorted(TABLE))
    def test_matches_published_table(self, n):
        est = security_estimate(n)
        assert (est.unknowns, est.bits_classical) == TABLE[n]
        assert est.bits_quantum == est.bits_classical // 2
        assert est.bits_per_entry == 32

    def test_every_listed_dimension_is_level_5(self):
        assert all(security_estimate(n).nist_level == 5 for n in TABLE)

    def test_small_budget_uses_quantum_brackets(self):
        # 6 unknowns x 8 bits = 48 classical bits
        assert security_estimate(2, bits_per_entry=8).nist_level == 0
        assert security_estimate(4, bits_per_entry=10).nist_level == 1

    def test_dimension_below_two(self):
        with pytest.raises(ParameterError):
            security_estimate(1)

    def test_table_rows(self):
        lines = format_security_table().splitlines()
        assert len(lines) == 7
        assert lines[1] == "3\t17\t32\t544\t5\t272"
        assert lines[-1] == "20\t1122\t32\t35904\t5\t17952"


class TestBruteForce:
    def test_micro_recovery_is_functionally_equivalent(self, micro):
        pk, _ = kem.keygen_random(micro)
        start = time.perf_counter()
        report = brute_force_recover(pk, micro)
        assert time.perf_counter() - start < 60
        assert report.found
        assert report.search_space == search_space_size(micro) == 4

        U, V = report.rounds[0]
        assert rdmpf(U, pk.W, V, micro) == pk.TB[0]
        assert check_equivalence(pk, report, trials=10) == 10

    def test_guard_refuses_large_profiles(self, l5):
        pk, _ = kem.keygen_random(l5)
        assert search_space_size(l5) > MAX_SEARCH_SPACE
        with pytest.raises(SearchSpaceError):
            brute_force_recover(pk)

    def test_profile_mismatch(self, micro, toy_keys):
        pk, _ = toy_keys
        with pytest.raises(ParameterError):
            brute_force_recover(pk, micro)

    def test_zero_coefficient_bound_is_invalid(self, micro):
        fields = micro.model_dump()
        fields["exp_max"] = 0
        with pytest.raises(ValidationError):
            Params(**fields)
