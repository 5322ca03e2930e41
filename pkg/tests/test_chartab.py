from fractions import Fraction
from math import gcd

import pytest

from heckeq.arith import Cyclotomic
from heckeq.chartab import (
    CharacterTable,
    apply_labels,
    central_idempotent,
    char_on_coset_average,
    choose_prime,
    dixon_compute,
    emit_table,
    fixed_dim,
    galois_orbits,
    ingest_table,
)
from heckeq.cli import _data_path
from heckeq.errors import ClassAlignmentError, InputError, InvalidCharacterError, InvalidTableError
from heckeq.groupalg import GroupAlgebraElement, averaging_idempotent, is_idempotent
from heckeq.permgrp import cyclic_group, dihedral_group, direct_product, generate, symmetric_group

S4_TABLE = _data_path("s4.table").read_text()


def test_ingest_s4_contains_standard_row(s4):
    t = s4.table
    want = {"()": 3, "(1 2)": 1, "(1 2)(3 4)": -1, "(1 2 3)": 0, "(1 2 3 4)": -1}
    rows = [
        r for r in range(len(t))
        if all(t.value(r, s4.el(g)) == Cyclotomic.rational(v) for g, v in want.items())
    ]
    assert len(rows) == 1


def test_ingest_trivial_group():
    G = generate([], degree=2)
    t = ingest_table("degree: 2\nexponent: 1\nclasses:\n  () 1\nchar: 1\n", G)
    assert len(t) == 1 and t.degrees == (1,)


def test_sign_flip_rejected_with_row_pair():
    bad = S4_TABLE.replace("char: 3, 1, -1, 0, -1", "char: 3, -1, -1, 0, -1")
    with pytest.raises(InvalidTableError, match="rows"):
        ingest_table(bad, symmetric_group(4))


def test_class_alignment_errors():
    G = symmetric_group(4)
    with pytest.raises(ClassAlignmentError):
        ingest_table(S4_TABLE.replace("(1 2) 6", "(1 2) 5"), G)
    with pytest.raises(ClassAlignmentError):
        ingest_table(S4_TABLE.replace("(1 2 3 4) 6", "(1 2) 6"), G)
    with pytest.raises(ClassAlignmentError):
        ingest_table(S4_TABLE, cyclic_group(4))


def test_ingest_accepts_any_class_order():
    lines = S4_TABLE.splitlines()
    i = lines.index("classes:")
    # swap two class lines and the matching columns
    lines[i + 2], lines[i + 3] = lines[i + 3], lines[i + 2]
    out = []
    for line in lines:
        if line.startswith("char:"):
            v = [x.strip() for x in line[5:].split(",")]
            v[1], v[2] = v[2], v[1]
            line = "char: " + ", ".join(v)
        out.append(line)
    G = symmetric_group(4)
    assert ingest_table("\n".join(out), G).rows == ingest_table(S4_TABLE, G).rows


def test_emit_roundtrip(g80):
    again = ingest_table(emit_table(g80.table), g80.G)
    assert again.rows == g80.table.rows


def test_dixon_s4_matches_ingested(s4):
    computed = dixon_compute(s4.G)
    assert computed.row_permutation_to(s4.table) is not None


def test_dixon_cyclic_five():
    G = cyclic_group(5)
    t = dixon_compute(G)
    g = G.generators[0]
    values = {tuple(t.value(r, g ** k) for k in range(5)) for r in range(5)}
    zeta = Cyclotomic.root(5)
    expected = {tuple(zeta ** (j * k) for k in range(5)) for j in range(5)}
    assert set(values) == set(expected)


def test_dixon_order_80_degree_five_rows(g80):
    t = dixon_compute(g80.G)
    assert t.row_permutation_to(g80.table) is not None
    s_j, s12, s13 = g80.el("(1 6)(2 7)"), g80.el("(1 6)(3 8)"), g80.el("(1 6)(2 7)(3 8)(4 9)")
    patterns = set()
    for r in range(len(t)):
        if t.degrees[r] == 5:
            assert t.value(r, g80.el("(1 2 3 4 5)(6 7 8 9 10)")).is_zero()
            patterns.add(tuple(t.value(r, x).to_rational() for x in (s_j, s12, s13)))
    assert patterns == {(1, 1, -3), (-3, 1, 1), (1, -3, 1)}
    assert sorted(t.degrees) == [1, 1, 1, 1, 1, 5, 5, 5]


def test_dixon_prime_choice():
    assert choose_prime(12, 24) == 13
    assert choose_prime(10, 80) == 31


@pytest.mark.parametrize(
    "G",
    [dihedral_group(5), direct_product(cyclic_group(3), cyclic_group(3)), symmetric_group(3), dihedral_group(4)],
)
def test_dixon_tables_are_valid(G):
    t = dixon_compute(G)
    assert sum(d * d for d in t.degrees) == G.order
    assert t.column_orthogonality_holds()


def test_galois_orbits_s4(s4):
    assert [rc.field_degree for rc in s4.rcs] == [1] * 5


def test_galois_orbits_cyclic_five():
    rcs = galois_orbits(dixon_compute(cyclic_group(5)))
    assert sorted(rc.field_degree for rc in rcs) == [1, 4]
    psi = next(rc for rc in rcs if rc.field_degree == 4)
    assert psi.trace_values == (4, -1, -1, -1, -1)


def test_galois_orbits_order_80(g80):
    labels = {rc.label: rc.field_degree for rc in g80.rcs}
    assert labels == {"chi0": 1, "psi": 4, "W1": 1, "W2": 1, "W3": 1}


def test_orbit_traces_independent_of_representative(g80):
    psi = g80.rc("psi")
    t = g80.table
    units = [a for a in range(1, t.exponent + 1) if gcd(a, t.exponent) == 1]
    # summing over all Galois automorphisms hits each orbit member equally often
    per_member = len(units) // psi.field_degree
    for r in psi.orbit:
        traces = []
        for c in range(len(t.classes)):
            total = Cyclotomic.rational(0)
            for a in units:
                total = total + t.rows[r][t.power_class(c, a)]
            traces.append(total.to_rational() / per_member)
        assert tuple(traces) == psi.trace_values


def test_labels_and_schur():
    G = symmetric_group(3)
    rcs = galois_orbits(dixon_compute(G))
    out = apply_labels(rcs, {"sgn": [(G.identity, 1), (_transposition(G), -1)]}, {"sgn": 2})
    sgn = next(rc for rc in out if rc.label == "sgn")
    assert sgn.schur_index == 2 and sgn.schur_source == "user"
    with pytest.raises(InputError):
        apply_labels(rcs, {"x": [(G.identity, 7)]})
    with pytest.raises(InputError):
        apply_labels(rcs, {}, {"nope": 1})


def _transposition(G):
    return next(g for g in G if g.order == 2)


def test_fixed_dim_examples(s4):
    H = s4.sub("klein")
    assert fixed_dim(s4.rc("chi0").representative, H) == 1
    assert fixed_dim(s4.rc("W").representative, H) == 1
    assert fixed_dim(s4.rc("W").representative, s4.G) == 0


def test_fixed_dim_rejects_misaligned_character():
    G = symmetric_group(3)
    t = dixon_compute(G)

    def fake(g):
        return Cyclotomic.rational(1) if g.is_identity() else Cyclotomic.rational(0)

    with pytest.raises(InvalidCharacterError):
        fixed_dim(fake, G)
    assert fixed_dim(t.character(0), G) == 1


def test_coset_average_examples(s4, g80):
    W = s4.rc("W")
    H3 = [s4.el(x) for x in ("(1 3)(2 4)", "(1 4)(2 3)", "(1 3 2 4)", "(1 4 2 3)")]
    assert char_on_coset_average(W, H3, 4) == Cyclotomic.rational(-1)
    hd = s4.hecke("klein")
    assert char_on_coset_average(W, hd.dc.cosets[1], 4) == Cyclotomic.rational(0)
    hd80 = g80.hecke("p5")
    assert char_on_coset_average(g80.rc("W1"), hd80.dc.cosets[3], 5) == Cyclotomic.rational(-3)


def test_central_idempotent_examples(s4):
    G = s4.G
    assert central_idempotent(s4.rc("chi0")) == averaging_idempotent(G, G)
    e = central_idempotent(s4.rc("W"))
    # W vanishes on the eight 3-cycles
    assert is_idempotent(e) and len(e.support()) == 16
    for g in G:
        assert e.coefficient(g) == Fraction(3, 24) * s4.rc("W")(g.inverse())
        assert e.commutes_with(GroupAlgebraElement.delta(G, g))


def test_central_idempotent_cyclic_five():
    G = cyclic_group(5)
    psi = next(rc for rc in galois_orbits(dixon_compute(G)) if rc.field_degree == 4)
    e = central_idempotent(psi)
    assert is_idempotent(e)
    assert sorted(e.coeffs.values()) == [Fraction(-1, 5)] * 4 + [Fraction(4, 5)]


def test_wrong_table_gives_non_idempotent():
    G = symmetric_group(3)
    t = dixon_compute(G)
    rows = [list(r) for r in t.rows]
    bad = CharacterTable(G, rows, validate=False)
    rcs = galois_orbits(bad)
    # doubling a trace breaks idempotency
    import dataclasses

    broken = dataclasses.replace(rcs[0], trace_values=tuple(2 * v for v in rcs[0].trace_values))
    with pytest.raises(InvalidCharacterError):
        central_idempotent(broken)


@pytest.mark.parametrize("name", ["s4", "g80"])
def test_partition_of_unity(name, request):
    ex = request.getfixturevalue(name)
    total = sum((central_idempotent(rc) for rc in ex.rcs), GroupAlgebraElement.zero(ex.G))
    assert total == GroupAlgebraElement.one(ex.G)


@pytest.mark.parametrize("name", ["s4", "g80"])
def test_column_orthogonality(name, request):
    assert request.getfixturevalue(name).table.column_orthogonality_holds()


def test_permutation_character_multiplicities(s4, g80, frozen):
    from heckeq.hecke import permutation_character

    cases = [(s4, "klein", frozen["klein_coset_character"]), (s4, "s3", frozen["s3_coset_character"]), (g80, "p5", None), (g80, "z23", None)]
    for ex, name, oracle in cases:
        H = ex.sub(name)
        reps = ex.table.representatives
        pi = [permutation_character(ex.G, H, g) for g in reps]
        if oracle is not None:
            assert pi == oracle
        for c, g in enumerate(reps):
            total = Cyclotomic.rational(0)
            for r in range(len(ex.table)):
                total = total + ex.table.rows[r][c] * fixed_dim(ex.table.character(r), H)
            assert total == Cyclotomic.rational(pi[c])


def test_klein_coset_character_in_standard_class_order(s4, frozen):
    from heckeq.hecke import permutation_character

    H = s4.sub("klein")
    order = ["()", "(1 2)", "(1 2)(3 4)", "(1 2 3)", "(1 2 3 4)"]
    assert [permutation_character(s4.G, H, s4.el(x)) for x in order] == [6, 2, 2, 0, 0]
