"""Curve catalog, reduction at primes, generation targets, verification."""

import json
from importlib import resources

import pytest

from cmreduce import (
    BadReductionError,
    CatalogError,
    CMCurveRecord,
    CMType,
    DomainError,
    ResourceLimitError,
    catalog_load,
    generate,
    generation_predicate,
    reduce_curve,
    sweep,
    verify,
)
from cmreduce.ff_arith import kronecker
from cmreduce.splitting import CyclicCMField


def test_shipped_catalog_labels(catalog):
    assert catalog.curve_labels() == ["wamelen-c1", "wamelen-c2", "weng-g3", "cyclo-5"]
    assert catalog.field_labels() == ["quartic-5-65-845", "sextic-5-2", "cyclotomic-5"]


def test_shipped_catalog_round_trips_byte_identical(catalog):
    raw = (resources.files("cmreduce") / "catalog.json").read_bytes()
    assert catalog.dump().encode() == raw


def test_shipped_field_data(catalog):
    quartic = catalog.field("quartic-5-65-845")
    assert quartic.conductor == 65
    assert quartic.discriminant == 21125
    sextic = catalog.field("sextic-5-2")
    assert sextic.conductor == 28
    assert sextic.unit_subgroup == frozenset({1, 13})
    assert sextic.discriminant == -(2 ** 6) * 7 ** 4
    assert len(sextic.defining_polys) == 2


def test_shipped_curve_data(catalog):
    weng = catalog.record("weng-g3")
    assert weng.genus == 3
    assert weng.f_coeffs == (0, 7, 0, 14, 0, 7, 0, 1)
    assert weng.field.label == "sextic-5-2"
    assert weng.cm_type.exponents == frozenset({0, 1, 2})
    c1 = catalog.record("wamelen-c1")
    assert c1.genus == 2
    assert c1.cm_type.exponents == frozenset({0, 1})
    assert "van Wamelen" in c1.provenance


def test_cyclotomic_records_synthesized_on_demand(catalog):
    rec = catalog.record("cyclo-7")
    assert rec.genus == 3
    assert rec.f_coeffs == (-1, 0, 0, 0, 0, 0, 0, 1)
    assert rec.field.conductor == 7
    assert rec.field.discriminant == -(7 ** 5)
    assert rec.field.two_g == 6
    assert rec.cm_type.exponents == frozenset({0, 1, 2})
    # synthesis is cached: same object back
    assert catalog.record("cyclo-7") is rec
    assert catalog.field("cyclotomic-7") is rec.field


def test_cyclotomic_synthesis_rejects_bad_moduli(catalog):
    with pytest.raises(CatalogError):
        catalog.record("cyclo-4")  # even
    with pytest.raises(CatalogError):
        catalog.record("cyclo-9")  # prime power, not prime
    with pytest.raises(CatalogError):
        catalog.record("no-such-curve")
    with pytest.raises(CatalogError):
        catalog.field("no-such-field")


def test_catalog_load_rejects_malformed(tmp_path, catalog):
    good = json.loads(catalog.dump())

    def load_variant(mutate):
        data = json.loads(catalog.dump())
        mutate(data)
        path = tmp_path / "cat.json"
        path.write_text(json.dumps(data))
        return catalog_load(path)

    with pytest.raises(CatalogError):
        load_variant(lambda d: d.update(version=2))
    with pytest.raises(CatalogError):
        load_variant(lambda d: d["curves"].append(dict(d["curves"][0])))  # dup label
    with pytest.raises(CatalogError):
        load_variant(lambda d: d["curves"][0].pop("f_coeffs"))
    with pytest.raises(CatalogError):
        load_variant(lambda d: d["fields"][0].update(two_g=3))
    with pytest.raises(CatalogError):
        load_variant(lambda d: d["curves"][0].update(field_label="missing"))
    # the unmutated dump still loads
    path = tmp_path / "ok.json"
    path.write_text(json.dumps(good))
    assert catalog_load(path).curve_labels() == catalog.curve_labels()


def test_record_validation(catalog):
    sextic = catalog.field("sextic-5-2")
    quartic = catalog.field("quartic-5-65-845")
    with pytest.raises(CatalogError):
        CMCurveRecord("x", 2, (1, 1, 0, 0, 0, 1), sextic, "t")  # field degree 6
    with pytest.raises(CatalogError):
        CMCurveRecord("x", 2, (1, 1, 1), quartic, "t")  # degree 2 fits no genus-2 model
    with pytest.raises(CatalogError):
        CMCurveRecord("x", 1, (1, 0, 2, 0, 1), quartic, "t")  # (x^2+1)^2 over Q
    with pytest.raises(CatalogError):
        CMCurveRecord("x", 2, (1, 1, 0, 0, 0, 0), quartic, "t")  # zero leading coeff
    with pytest.raises(CatalogError):
        CMCurveRecord(
            "x", 2, (1, 1, 0, 0, 0, 1), quartic, "t",
            cm_type=CMType.from_exponents(3, {0, 1, 2}),
        )


def test_reduce_curve(catalog):
    weng = catalog.record("weng-g3")
    c = reduce_curve(weng, 13)
    assert c.coeffs == (0, 7, 0, 1, 0, 7, 0, 1)
    assert c.genus == 3
    with pytest.raises(BadReductionError):
        reduce_curve(weng, 7)
    with pytest.raises(BadReductionError):
        reduce_curve(weng, 2)
    with pytest.raises(DomainError):
        reduce_curve(weng, 15)
    # leading coefficient -1331 vanishes at 11: the model degenerates
    with pytest.raises(BadReductionError):
        reduce_curve(catalog.record("wamelen-c1"), 11)


def test_generation_predicate_quartic_inert(catalog):
    c1 = catalog.record("wamelen-c1")
    check = generation_predicate(c1, "ssing-non-sspec")
    p = (1 << 128) + 51
    assert check(p)
    assert kronecker(21125, p) == -1
    assert not check((1 << 128) + 49)  # composite
    assert not check(131)  # splits completely, Kronecker symbol +1
    assert not check(4)


def test_generation_predicate_residue_targets(catalog):
    rec = catalog.record("cyclo-5")
    ssp = generation_predicate(rec, "superspecial")
    assert ssp(19) and ssp(29)
    assert not ssp(11)  # split
    assert not ssp(7)  # inert
    ordinary = generation_predicate(rec, "ordinary")
    assert ordinary(11) and ordinary(31)
    assert not ordinary(19)


def test_generation_predicate_accepts_spelling_variants(catalog):
    c1 = catalog.record("wamelen-c1")
    p = (1 << 128) + 51
    for name in ("ssing-non-sspec", "ssing non sspec", "Supersingular-Non-Superspecial"):
        assert generation_predicate(c1, name)(p)


def test_generation_targets_rejected_per_genus(catalog):
    with pytest.raises(DomainError):
        generation_predicate(catalog.record("wamelen-c1"), "supersingular")
    with pytest.raises(DomainError):
        generation_predicate(catalog.record("weng-g3"), "ssing-non-sspec")
    with pytest.raises(DomainError):
        generation_predicate(catalog.record("cyclo-5"), "half-ordinary")


def test_generate_small_superspecial(catalog):
    res = generate(catalog.record("cyclo-5"), "superspecial", 12)
    assert res.p == 6329
    assert res.p % 5 == 4
    assert res.prediction.profile.a_number == 2
    assert res.verified_profile is not None
    assert (res.verified_profile.p_rank, res.verified_profile.a_number) == (0, 2)
    # deterministic per seed
    assert generate(catalog.record("cyclo-5"), "superspecial", 12).p == res.p
    assert generate(catalog.record("cyclo-5"), "superspecial", 12, seed=1).p != res.p


def test_generate_weng_superspecial(catalog):
    res = generate(catalog.record("weng-g3"), "superspecial", 8)
    assert res.p == 307
    assert res.verified_profile.a_number == 3
    assert res.target_type == "superspecial"


def test_generate_ordinary(catalog):
    res = generate(catalog.record("cyclo-5"), "ordinary", 10)
    assert res.p % 5 == 1
    assert res.verified_profile.p_rank == 2
    assert res.curve.p == res.p


def test_generate_large_prime_skips_verification(catalog):
    res = generate(catalog.record("wamelen-c1"), "ssing-non-sspec", 24)
    assert res.verified_profile is None  # past the verification cap
    assert res.prediction.profile.type_name == "supersingular non-superspecial"


def test_verify_worked_primes(catalog):
    weng = catalog.record("weng-g3")
    r = verify(weng, 13)
    assert r.match is True
    assert r.splitting.num_primes == 6
    assert r.prediction.certainty == "exact"
    assert r.profile.slopes == (0, 0, 0, 1, 1, 1)
    assert r.notes == ()

    r = verify(weng, 43)
    assert r.match is True
    assert r.profile.type_name == "superspecial"

    r = verify(weng, 17)
    assert r.match is True
    assert any("partial" in n for n in r.notes)

    r = verify(weng, 11)
    assert r.match is True
    assert any("outlier" in n for n in r.notes)


def test_verify_skips_prediction_without_splitting(catalog):
    # good reduction at a ramified prime: profile computed, no prediction
    quartic = catalog.field("quartic-5-65-845")
    rec = CMCurveRecord("synthetic", 2, (1, 1, 0, 0, 0, 1), quartic, "test fixture")
    r = verify(rec, 5)
    assert r.match is None
    assert r.prediction is None
    assert any("ramified" in n for n in r.notes)
    assert r.profile is not None


def test_verify_refuses_large_p(catalog):
    with pytest.raises(ResourceLimitError):
        verify(catalog.record("weng-g3"), (1 << 20) + 7)


def test_sweep_weng(catalog):
    s = sweep(catalog.record("weng-g3"), 50)
    assert s.bad_primes == (2, 7)
    assert len(s.reports) == 13
    assert s.mismatches == []
    assert s.verified == 13
    assert [r.p for r in s.reports] == sorted(r.p for r in s.reports)
    by_p = {r.p: r for r in s.reports}
    assert (by_p[3].profile.p_rank, by_p[3].profile.a_number) == (0, 1)
    assert (by_p[5].profile.p_rank, by_p[5].profile.a_number) == (0, 2)


def test_sweep_respects_cap(catalog):
    with pytest.raises(ResourceLimitError):
        sweep(catalog.record("cyclo-5"), 1 << 21)
