from fractions import Fraction

import pytest

from obstructor import arrangements, groups, plmaps, spheres

N8_SEED = (-3, 3, -1, 1, 1, -2, 2, -1)


def n8_setup():
    spec = groups.GroupSpec(groups.QUATERNION, 8, rotation=-1)
    sphere = spheres.build_join_sphere(8)
    seed = arrangements.partition_subspace((1, 1, 2, 1, 1, 2), 8)
    arr = arrangements.orbit_arrangement(seed, spec)
    m = plmaps.build_equivariant_map(N8_SEED, spec, sphere)
    cells = spheres.maximal_cell_simplices(8)
    return spec, sphere, arr, m, cells


def test_build_equivariant_map_validation():
    spec = groups.GroupSpec(groups.QUATERNION, 4, rotation=1)
    sphere = spheres.build_join_sphere(4)
    with pytest.raises(ValueError):
        plmaps.build_equivariant_map((1, -1, 0), spec, sphere)
    with pytest.raises(ValueError):
        plmaps.build_equivariant_map((1, 1, 1, 1), spec, sphere)


def test_vertex_images_are_equivariant():
    spec, sphere, arr, m, cells = n8_setup()
    for v in sphere.vertices:
        g = spheres.vertex_decomposition(v)
        for h in groups.all_elements(spec):
            hv = groups.multiply(spec, h, g)
            assert m.vertex_image(hv) == tuple(
                groups.apply_to_vector(spec, h, m.vertex_image(v)))


def test_fan_seed_and_probe_direction_live_in_w():
    for n in (4, 7, 10):
        s = plmaps.fan_seed(n)
        assert sum(s) == 0
        assert s[0] == Fraction(n - 1, n)
        d = plmaps.default_probe_direction(n)
        assert sum(d) == 0
        assert any(d)


def test_simplex_contains_point():
    pts = [(0, 0), (1, 0), (0, 1)]
    assert plmaps.simplex_contains_point(pts, (Fraction(1, 4), Fraction(1, 4)))
    assert plmaps.simplex_contains_point(pts, (0, 0))  # closed simplex
    assert not plmaps.simplex_contains_point(pts, (1, 1))


def test_records_on_top_cell_n8():
    spec, sphere, arr, m, cells = n8_setup()
    records = plmaps.enumerate_records(m, sphere, arr, cells)
    assert len(records) == 7
    for rec in records:
        assert rec.kind == "interior"
        assert rec.transversal
        assert not rec.broken
        assert sum(rec.barycentric) == 1
        assert all(l >= 0 for l in rec.barycentric)
        # the point really is the barycentric combination of the vertex images
        p, q = rec.simplex
        images = m.simplex_image(sphere.sigma(p, q))
        combo = tuple(sum(l * img[c] for l, img in zip(rec.barycentric, images))
                      for c in range(8))
        assert combo == rec.point
        for i in rec.stratum:
            assert arr.maximal[i].contains_point(rec.point)


def test_record_points_exhaust_strata():
    # no maximal element is hit by a record without appearing in its stratum
    spec, sphere, arr, m, cells = n8_setup()
    for rec in plmaps.enumerate_records(m, sphere, arr, cells):
        for i in range(arr.size):
            assert (i in rec.stratum) == \
                arr.maximal[i].contains_point(rec.point)


def test_general_position_passes_n8():
    spec, sphere, arr, m, cells = n8_setup()
    report = plmaps.general_position_check(m, sphere, arr, cells)
    assert report.passed
    assert report.failures() == []


def test_general_position_rejects_degenerate_seed():
    spec = groups.GroupSpec(groups.QUATERNION, 8, rotation=-1)
    sphere = spheres.build_join_sphere(8)
    seed = arrangements.partition_subspace((1, 1, 2, 1, 1, 2), 8)
    arr = arrangements.orbit_arrangement(seed, spec)
    bad = plmaps.build_equivariant_map((1, -1, 1, -1, 1, -1, 1, -1), spec,
                                       sphere)
    report = plmaps.general_position_check(
        bad, sphere, arr, spheres.maximal_cell_simplices(8))
    assert not report.passed
    assert report.failures()


def test_intersection_sign_is_unit_and_orientation_sensitive():
    spec, sphere, arr, m, cells = n8_setup()
    records = plmaps.enumerate_records(m, sphere, arr, cells)
    rec = records[0]
    idx = rec.stratum[0]
    vertices = sphere.sigma(*rec.simplex)
    s = plmaps.intersection_sign(m, vertices, arr.maximal[idx])
    assert s in (1, -1)
    flipped = plmaps.intersection_sign(
        m, vertices, arr.maximal[idx].with_reversed_orientation())
    assert flipped == -s


def test_shrink_simplex_points_fixes_center():
    pts = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)),
           (Fraction(0), Fraction(2))]
    lam = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    center = tuple(sum(l * p[c] for l, p in zip(lam, pts)) for c in range(2))
    shrunk = plmaps.shrink_simplex_points(pts, lam, Fraction(1, 4))
    recentered = tuple(sum(l * p[c] for l, p in zip(lam, shrunk))
                       for c in range(2))
    assert recentered == center
    for p in shrunk:
        assert plmaps.simplex_contains_point(pts, p)


def test_w_coordinates_invert_on_w():
    wb = plmaps.standard_w_basis(6)
    v = plmaps.default_probe_direction(6)
    coords = plmaps.w_coordinates(v, wb)
    back = [sum(c * b[i] for c, b in zip(coords, wb)) for i in range(6)]
    assert back == list(v)
