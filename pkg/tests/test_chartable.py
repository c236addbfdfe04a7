import copy
import json
from fractions import Fraction

import numpy as np
import pytest

from blockheight.chartable import (
    CharacterTable,
    character_table,
    degree_multiset,
    dixon_schneider,
    export_table,
    import_table,
    restrict,
)
from blockheight.cyclotomic import Cyclotomic
from blockheight.errors import FormatError, InvariantViolation, NoSuitablePrime
from blockheight.gf import dixon_primes
from blockheight.groups import builtin
from blockheight.permgroup import class_fusion

SMALL = ["S3", "S4", "A4", "A5", "D8", "Q8", "SL(2,3)", "C6", "M10", "PGL(2,9)", "PGammaL(2,8)", "2.A6.2_2"]


def column_of(table, order, size):
    return next(j for j in range(table.num_classes)
                if table.element_orders[j] == order and table.class_sizes[j] == size)


def test_s4_table():
    t = character_table(builtin("S4"))
    assert t.degrees == [1, 1, 2, 3, 3]
    transposition = column_of(t, 2, 6)
    assert sorted(int(row[transposition]) for row in t.irreducibles) == [-1, -1, 0, 1, 1]


def test_a5_has_golden_ratio_values():
    t = character_table(builtin("A5"))
    assert degree_multiset(t) == {1: 1, 3: 2, 4: 1, 5: 1}
    golden = (1 + 5**0.5) / 2
    fives = [j for j in range(t.num_classes) if t.element_orders[j] == 5]
    vals = sorted(round(complex(t.irreducibles[i][fives[0]]).real, 9)
                  for i in range(len(t)) if t.degrees[i] == 3)
    assert vals == [round(1 - golden, 9), round(golden, 9)]


def test_m12_degrees():
    t = character_table(builtin("M12"))
    assert degree_multiset(t) == {1: 1, 11: 2, 16: 2, 45: 1, 54: 1, 55: 3, 66: 1,
                                  99: 1, 120: 1, 144: 1, 176: 1}


@pytest.mark.parametrize("name", SMALL)
def test_orthogonality_and_trivial_first(name):
    t = character_table(builtin(name))
    assert all(v == 1 for v in t.irreducibles[0])
    assert sum(d * d for d in t.degrees) == t.order
    for i in range(0, len(t), 3):
        for k in range(len(t)):
            assert t.inner_product(t.irreducibles[i], t.irreducibles[k]) == Fraction(i == k)


@pytest.mark.parametrize("name", ["S4", "A5", "SL(2,3)", "M10", "2.A6.2_2"])
def test_two_smallest_primes_give_identical_tables(name):
    g = builtin(name)
    q1, q2 = dixon_primes(g.exponent, g.order, count=2)
    assert dixon_schneider(g, q1) == dixon_schneider(g, q2)


def test_inadmissible_prime():
    with pytest.raises(NoSuitablePrime):
        dixon_schneider(builtin("S4"), 7)  # 12 does not divide 6


@pytest.mark.parametrize("name", ["S4", "A5", "Q8", "PGL(2,9)"])
def test_export_import_round_trip(tmp_path, name):
    t = character_table(builtin(name))
    path = tmp_path / "t.json"
    export_table(t, path)
    back = import_table(path)
    assert back == t
    assert back.dumps() == t.dumps()


def test_sparse_power_maps_are_completed(tmp_path):
    t = character_table(builtin("S4"))
    data = t.to_json()
    for c in data["classes"]:
        # prime power maps only, as in the usual table-library convention
        c["powermaps"] = {k: v for k, v in c["powermaps"].items() if k in ("2", "3", "5", "7", "11")}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(data))
    assert import_table(path) == t


def test_perturbed_table_is_rejected(tmp_path):
    t = character_table(builtin("A5"))
    data = copy.deepcopy(t.to_json())
    data["irreducibles"][1][1] = [[2, 0]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(InvariantViolation):
        import_table(path)


def test_swapped_values_break_galois_compatibility():
    t = character_table(builtin("A5"))
    rows = [list(r) for r in t.irreducibles]
    fives = [j for j in range(t.num_classes) if t.element_orders[j] == 5]
    i = t.degrees.index(3)
    rows[i][fives[0]] = rows[i][fives[1]] = rows[i][fives[0]]
    bad = CharacterTable(t.name, t.order, t.exponent, t.class_sizes, t.element_orders, t.power_maps, rows)
    with pytest.raises(InvariantViolation):
        bad.validate()


def test_underivable_power_map(tmp_path):
    data = character_table(builtin("S4")).to_json()
    for c in data["classes"]:
        c["powermaps"] = {k: v for k, v in c["powermaps"].items() if k in ("2", "3")}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(data))
    with pytest.raises(FormatError):
        import_table(path)


def test_malformed_table_file(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"order": 2, "exponent": 2}')
    with pytest.raises(FormatError):
        import_table(path)


def test_restriction_s4_to_a4():
    s4, a4 = builtin("S4"), builtin("A4")
    t, sub = character_table(s4), character_table(a4)
    fusion = class_fusion(a4, s4)
    decomps = [restrict(row, fusion, sub) for row in t.irreducibles]
    # the degree-2 character splits into the two non-trivial linear characters of A4
    two = decomps[t.degrees.index(2)]
    assert sorted(sub.degrees[k] for k in two) == [1, 1]
    assert all(sum(m * sub.degrees[k] for k, m in d.items()) == t.degrees[i] for i, d in enumerate(decomps))


def test_table_is_cached_per_group():
    g = builtin("S4")
    assert character_table(g) is character_table(g)


def test_power_maps_shape():
    t = character_table(builtin("M10"))
    assert np.asarray(t.power_maps).shape == (t.exponent, t.num_classes)
    assert all(t.power_maps[t.element_orders[j] % t.exponent, j] == 0 for j in range(t.num_classes))


def test_values_are_in_power_basis():
    t = character_table(builtin("SL(2,3)"))
    assert all(isinstance(v, Cyclotomic) and v.e == t.exponent for row in t.irreducibles for v in row)
