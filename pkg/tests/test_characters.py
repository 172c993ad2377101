import json
import math
import threading

import pytest

from hurwitz import characters, oracle
from hurwitz.characters import CharTable, char_table, character, dim
from hurwitz.errors import DomainError, SizeLimitError
from hurwitz.partitions import class_data, enumerate_partitions, transpose


def count_standard_tableaux(shape):
    """Backtracking SYT count, independent of the hook-length formula."""
    d = sum(shape)

    def rec(rows):
        if sum(rows) == d:
            return 1
        total = 0
        for i in range(len(shape)):
            if rows[i] < shape[i] and (i == 0 or rows[i - 1] > rows[i]):
                rows[i] += 1
                total += rec(rows)
                rows[i] -= 1
        return total

    return rec([0] * len(shape))


class TestValues:
    def test_trivial_and_sign_rows(self):
        for d in range(1, 8):
            for mu in enumerate_partitions(d):
                assert character((d,), mu) == 1
                assert character((1,) * d, mu) == (-1) ** (d - len(mu))

    def test_standard_rep_values(self):
        assert character((2, 1), (3,)) == -1
        assert character((2, 1), (1, 1, 1)) == 2

    def test_size_mismatch(self):
        with pytest.raises(DomainError):
            character((2, 1), (2,))

    @pytest.mark.parametrize("lam,expected", [((4,), 1), ((2, 1), 2), ((3, 2), 5)])
    def test_dim_examples(self, lam, expected):
        assert dim(lam) == expected
        assert count_standard_tableaux(lam) == expected

    @pytest.mark.parametrize("d", range(1, 9))
    def test_dim_is_identity_character(self, d):
        for lam in enumerate_partitions(d):
            assert dim(lam) == character(lam, (1,) * d)
            assert dim(lam) == count_standard_tableaux(lam)


class TestTable:
    def test_degree_one_and_two(self):
        assert char_table(1).entries == ((1,),)
        t = char_table(2)
        # columns follow the canonical reverse-lex class order ((2), (1,1))
        assert t.partitions == ((2,), (1, 1))
        assert t.value((2,), (2,)) == 1 and t.value((2,), (1, 1)) == 1
        assert t.value((1, 1), (2,)) == -1 and t.value((1, 1), (1, 1)) == 1

    def test_burnside_identity(self):
        t = char_table(5)
        assert sum(dim(lam) ** 2 for lam in t.partitions) == 120

    @pytest.mark.parametrize("d", range(1, 11))
    def test_column_orthogonality(self, d):
        t = char_table(d)
        parts = t.partitions
        for i, mu in enumerate(parts):
            z = class_data(mu).stabilizer
            for j, nu in enumerate(parts):
                s = sum(t.entries[k][i] * t.entries[k][j] for k in range(len(parts)))
                assert s == (z if i == j else 0)

    @pytest.mark.parametrize("d", range(1, 11))
    def test_transpose_rule(self, d):
        t = char_table(d)
        for lam in t.partitions:
            for mu in t.partitions:
                assert t.value(transpose(lam), mu) == \
                    (-1) ** (d - len(mu)) * t.value(lam, mu)

    @pytest.mark.parametrize("d", range(1, 13))
    def test_dimension_sum(self, d):
        assert sum(dim(lam) ** 2 for lam in enumerate_partitions(d)) == math.factorial(d)

    @pytest.mark.parametrize("d", range(1, 6))
    def test_against_permutation_module_bruteforce(self, d):
        brute = oracle.bruteforce_character_table(d)
        t = char_table(d)
        for lam in t.partitions:
            for mu in t.partitions:
                assert brute[lam][mu] == t.value(lam, mu)

    def test_ceiling(self):
        with pytest.raises(SizeLimitError):
            char_table(19)
        with pytest.raises(SizeLimitError):
            char_table(7, ceiling=6)

    def test_csv_rows(self):
        rows = char_table(3).csv_rows()
        assert rows[0] == ["lambda\\mu", "3", "2+1", "1+1+1"]
        assert rows[2] == ["2+1", "-1", "0", "2"]


class TestDiskCache:
    def test_roundtrip_and_corruption(self, tmp_path, monkeypatch):
        monkeypatch.setenv(characters.CACHE_DIR_ENV, str(tmp_path))
        monkeypatch.setattr(characters, "_tables", {})
        table = char_table(4)
        path = tmp_path / "character-table-d4.json"
        assert path.is_file()
        blob = json.loads(path.read_text())
        assert blob["format"] == characters._TABLE_FORMAT
        assert blob["degree"] == 4

        # a fresh memo must reload from disk
        monkeypatch.setattr(characters, "_tables", {})
        assert char_table(4).entries == table.entries

        # corrupted or mismatched headers are ignored, then rewritten
        path.write_text(json.dumps({"format": "other"}))
        monkeypatch.setattr(characters, "_tables", {})
        rebuilt = char_table(4)
        assert rebuilt.entries == table.entries
        assert json.loads(path.read_text())["format"] == characters._TABLE_FORMAT

    def test_garbage_file(self, tmp_path, monkeypatch):
        monkeypatch.setenv(characters.CACHE_DIR_ENV, str(tmp_path))
        monkeypatch.setattr(characters, "_tables", {})
        (tmp_path / "character-table-d3.json").write_text("{not json")
        assert char_table(3).value((2, 1), (3,)) == -1


class TestConcurrency:
    def test_single_published_table(self, monkeypatch):
        monkeypatch.setattr(characters, "_tables", {})
        results: list[CharTable] = []

        def fetch():
            results.append(char_table(6))

        threads = [threading.Thread(target=fetch) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r is results[0] for r in results)
