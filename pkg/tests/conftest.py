import pytest

from conewalk.io import builtin_example, builtin_names, parse_complex

MANIFOLD_FIXTURES = ("two-tet", "octahedron", "self-cube", "two-cube", "self-dodecahedron")


@pytest.fixture(scope="session")
def fixtures():
    return {name: parse_complex(builtin_example(name)) for name in builtin_names()}


@pytest.fixture(params=["cython", "python"])
def kernel_name(request):
    from conewalk import oracle

    if request.param == "cython" and oracle._search_ext is None:
        pytest.skip("compiled kernel not built")
    return request.param
