import numpy as np
import pytest

from designspace.errors import DegenerateInputError
from designspace.mca import (
    benzecri_correct,
    export_contributions_csv,
    export_scree_csv,
    indicator_matrix,
    mca,
    retain_dimensions,
    top_contributions,
)

from helpers import make_dataset, random_dataset
from oracles import mca_inertia_oracle


def test_indicator_single_record():
    d = make_dataset(["A", "B"], [("x", "u")])
    assert indicator_matrix(d).tolist() == [[1, 1]]


def test_indicator_two_records():
    d = make_dataset(["A", "B"], [("x", "u"), ("y", "u")])
    assert indicator_matrix(d).tolist() == [[1, 0, 1], [0, 1, 1]]


def test_indicator_row_and_column_sums():
    rng = np.random.default_rng(53)
    for _ in range(30):
        d = random_dataset(rng, n_max=15, m_max=6)
        z = indicator_matrix(d)
        assert (z.sum(axis=1) == d.n_dimensions).all()
        freqs = [
            count
            for dim in d.dimensions
            for count in _frequencies(d, dim.name)
        ]
        assert z.sum(axis=0).tolist() == freqs


def _frequencies(dataset, name):
    j = dataset.index_of(name)
    domain = dataset.domain_of(name)
    counts = {v: 0 for v in domain}
    for rec in dataset.records:
        counts[rec.values[j]] += 1
    return [counts[v] for v in domain]


def test_single_category_dataset_errors():
    d = make_dataset(["A", "B"], [("x", "u"), ("x", "u")])
    with pytest.raises(DegenerateInputError):
        mca(d)


def test_correlated_binary_fixture(correlated):
    result = mca(correlated)
    assert result.inertias == pytest.approx((1.0, 0.0), abs=1e-8)
    assert sum(result.inertias) == pytest.approx(1.0, abs=1e-9)
    oracle = mca_inertia_oracle(correlated)
    assert list(result.inertias) == pytest.approx(oracle, abs=1e-8)
    # single surviving axis takes all corrected variance
    assert len(result.corrected) == 1
    assert result.corrected[0][1] == pytest.approx(100.0, abs=1e-9)
    ranked, baseline = top_contributions(result, 1, 4)
    assert baseline == 25.0
    assert [pct for _, _, pct in ranked] == pytest.approx([25.0] * 4, abs=1e-8)


def test_total_inertia_identity():
    rng = np.random.default_rng(59)
    for _ in range(60):
        d = random_dataset(rng, n_max=30, m_max=9)
        try:
            result = mca(d)
        except DegenerateInputError:
            continue
        j, q = result.n_categories, result.n_variables
        assert sum(result.inertias) == pytest.approx((j - q) / q, abs=1e-9)
        assert len(result.inertias) == j - q
        assert all(a >= b for a, b in zip(result.inertias, result.inertias[1:]))


def test_contributions_sum_to_one():
    rng = np.random.default_rng(61)
    for _ in range(40):
        d = random_dataset(rng, n_max=20, m_max=6)
        try:
            result = mca(d)
        except DegenerateInputError:
            continue
        sums = result.contributions.sum(axis=0)
        assert sums == pytest.approx(np.ones(result.n_axes), abs=1e-9)


def test_axis_variance_identities():
    rng = np.random.default_rng(67)
    d = random_dataset(rng, n_max=15, m_max=5, n_min=4)
    result = mca(d)
    lams = np.array(result.inertias[: result.n_axes])
    # mass-weighted squared category coordinates recover each inertia
    per_axis = (result.category_masses[:, None] * result.category_coords**2).sum(axis=0)
    assert per_axis == pytest.approx(lams, abs=1e-9)
    # and so do mean squared record coordinates
    rec_axis = (result.record_coords**2).mean(axis=0)
    assert rec_axis == pytest.approx(lams, abs=1e-9)


def test_inertias_match_eigen_oracle():
    rng = np.random.default_rng(71)
    checked = 0
    while checked < 25:
        d = random_dataset(rng, n_max=12, m_max=3, pool_max=3)
        try:
            result = mca(d)
        except DegenerateInputError:
            continue
        if result.n_categories > 6:
            continue
        oracle = mca_inertia_oracle(d)
        assert list(result.inertias) == pytest.approx(oracle, abs=1e-8)
        checked += 1


def test_record_permutation_invariance():
    # with a repeated eigenvalue the per-axis basis is arbitrary, so only
    # simple-spectrum draws give well-defined per-axis contributions
    rng = np.random.default_rng(73)
    checked = 0
    while checked < 10:
        d = random_dataset(rng, n_max=12, m_max=5, n_min=5)
        try:
            a = mca(d)
        except DegenerateInputError:
            continue
        pos = a.inertias[: a.n_axes]
        if a.n_axes < 2 or any(
            x - y < 1e-6 for x, y in zip(pos, pos[1:])
        ):
            continue
        perm = rng.permutation(d.n_records)
        shuffled = make_dataset(
            list(d.names),
            [d.records[i].values for i in perm],
            ids=[d.records[i].id for i in perm],
        )
        b = mca(shuffled)
        assert a.inertias == pytest.approx(b.inertias, abs=1e-9)
        # domain inference may reorder categories; compare by label
        mass_a = dict(zip(a.category_labels, a.category_masses))
        mass_b = dict(zip(b.category_labels, b.category_masses))
        assert mass_a.keys() == mass_b.keys()
        for key in mass_a:
            assert mass_a[key] == pytest.approx(mass_b[key], abs=1e-9)
        contrib_a = dict(zip(a.category_labels, a.contributions))
        contrib_b = dict(zip(b.category_labels, b.contributions))
        for key in contrib_a:
            assert contrib_a[key] == pytest.approx(contrib_b[key], abs=1e-7)
        # coordinates may flip sign per axis
        coord_a = dict(zip(a.category_labels, a.category_coords))
        coord_b = dict(zip(b.category_labels, b.category_coords))
        for key in coord_a:
            assert np.abs(coord_a[key]) == pytest.approx(
                np.abs(coord_b[key]), abs=1e-7
            )
        checked += 1


def test_benzecri_examples():
    # an inertia of exactly 1/Q adjusts to zero and is excluded
    assert benzecri_correct([0.5], 2) == []
    out = benzecri_correct([1.0], 2)
    assert out == [(pytest.approx(1.0), pytest.approx(100.0))]
    out = benzecri_correct([1.0, 0.0], 2)
    assert len(out) == 1
    assert out[0][1] == pytest.approx(100.0)


def test_benzecri_percentages_sum_to_100():
    rng = np.random.default_rng(79)
    for _ in range(40):
        d = random_dataset(rng, n_max=20, m_max=6)
        if d.n_dimensions < 2:
            continue
        try:
            result = mca(d)
        except DegenerateInputError:
            continue
        if result.corrected:
            total = sum(pct for _, pct in result.corrected)
            assert total == pytest.approx(100.0, abs=1e-9)


def test_benzecri_validation():
    with pytest.raises(ValueError):
        benzecri_correct([0.5], 1)
    with pytest.raises(ValueError):
        benzecri_correct([0.2, 0.5], 2)  # ascending
    with pytest.raises(ValueError):
        benzecri_correct([1.5], 2)  # out of range


def test_retain_dimensions():
    assert retain_dimensions([40, 30, 20, 10], 7) == (4, [1, 2, 3, 4])
    assert retain_dimensions([100], 7) == (1, [1])
    assert retain_dimensions([60, 33, 7], 7) == (2, [1, 2])  # strict >
    assert retain_dimensions([5, 4], 7) == (0, [])
    with pytest.raises(ValueError):
        retain_dimensions([80, 30], 7)


def test_top_contributions_uniform_and_bounds(correlated):
    result = mca(correlated)
    ranked, baseline = top_contributions(result, 1, 1)
    assert len(ranked) == 1
    assert ranked[0][2] == pytest.approx(25.0, abs=1e-8)
    assert baseline == pytest.approx(100.0 / 4)
    with pytest.raises(ValueError):
        top_contributions(result, 0, 1)
    with pytest.raises(ValueError):
        top_contributions(result, 2, 1)  # only one positive axis
    with pytest.raises(ValueError):
        top_contributions(result, 1, 99)


def test_contribution_ties_keep_column_order(correlated):
    result = mca(correlated)
    ranked, _ = top_contributions(result, 1, 4)
    assert [(var, cat) for var, cat, _ in ranked] == [
        ("A", "x"),
        ("A", "y"),
        ("B", "u"),
        ("B", "v"),
    ]


def test_csv_exports(correlated):
    result = mca(correlated)
    scree = export_scree_csv(result).splitlines()
    assert scree[0] == "axis,corrected_percentage"
    assert scree[1] == "1,100"
    contrib = export_contributions_csv(result).splitlines()
    assert contrib[0] == "axis,variable,category,contribution_percent,baseline_percent"
    assert len(contrib) == 1 + 4  # one surviving axis, four categories
    assert contrib[1].endswith(",25")
