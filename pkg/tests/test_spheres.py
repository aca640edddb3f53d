import pytest

from obstructor import groups, linalg, spheres


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_chain_ranks(n):
    sphere = spheres.build_join_sphere(n)
    c0, c1, c2, c3 = sphere.chain_ranks()
    assert (c0, c1, c2, c3) == (4 * n, 4 * n * n + 4 * n, 8 * n * n, 4 * n * n)
    assert len(sphere.vertices) == c0
    assert len(sphere.all_simplices3()) == c3


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_free_action_on_vertices(n):
    spec = groups.GroupSpec(groups.QUATERNION, n)
    sphere = spheres.build_join_sphere(n)
    labels = {spheres.vertex_label(v) for v in sphere.vertices}
    assert len(labels) == 4 * n  # one vertex per group element, no repeats
    for v in sphere.vertices:
        g = spheres.vertex_decomposition(v)
        for h in groups.all_elements(spec):
            if h == groups.identity_element(spec):
                continue
            assert groups.multiply(spec, h, g) != g


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_simplicial_boundary_squares_to_zero(n):
    sphere = spheres.build_join_sphere(n)
    for p, q in sphere.all_simplices3():
        c = spheres.chain([(sphere.sigma(p, q), 1)])
        bb = spheres.boundary_chain(spheres.boundary_chain(c))
        assert all(v == 0 for v in bb.values())


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_economic_boundary_squares_to_zero(n):
    ec = spheres.economic_complex(n)
    for degree in (3, 2):
        d_high = ec.integer_boundary_matrix(degree)
        d_low = ec.integer_boundary_matrix(degree - 1)
        prod = [[sum(d_low[i][k] * d_high[k][j] for k in range(len(d_high)))
                 for j in range(len(d_high[0]))] for i in range(len(d_low))]
        assert all(all(x == 0 for x in row) for row in prod)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_chain_map_boundary_compatible(n):
    sphere = spheres.build_join_sphere(n)
    signs = spheres.solve_top_cell_signs(sphere)
    assert all(abs(s) == 1 for s in signs)
    total = spheres.chain([])
    for i, s in enumerate(signs):
        total = spheres.chain_add(
            total, spheres.chain([(sphere.sigma(i, 0), 1)]), s)
    diff = spheres.chain_add(spheres.boundary_chain(total),
                             spheres.top_cell_boundary_image(sphere), -1)
    assert not diff


@pytest.mark.parametrize("n", [2, 3, 4])
def test_economic_top_homology_is_one_dimensional(n):
    ec = spheres.economic_complex(n)
    d3 = ec.integer_boundary_matrix(3)
    kernel = linalg.integer_kernel_basis(d3)
    assert len(kernel) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_low_cell_images_respect_boundaries(n):
    sphere = spheres.build_join_sphere(n)
    ec = spheres.economic_complex(n)
    s = sphere.spec
    images = spheres.chain_map_images(sphere)
    for cell in ("b", "bp", "c", "cp"):
        lhs = spheres.boundary_chain(images[cell])
        rhs = spheres.chain([])
        for g, coeff, lower in ec.boundary(cell):
            rhs = spheres.chain_add(
                rhs, spheres.act_on_chain(s, g, images[lower]), coeff)
        assert spheres.chain_add(lhs, rhs, -1) == {}
