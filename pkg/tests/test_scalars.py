import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalars import EXACT, FloatBackend, ParamRing, exact_sqrt, format_rational, get_backend, to_rational
from scalars import linalg
from strategies import as_text, gaussian_rationals, nonzero_rationals, rationals
from utils.errors import RealityViolation, ScalarError


class TestRationals:
    def test_parse_text_and_numbers(self):
        assert to_rational("3/4") == to_rational(0.75)
        assert to_rational(2) == to_rational("2")
        assert format_rational(to_rational("-6/4")) == "-3/2"
        assert format_rational(to_rational(5)) == "5"

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            to_rational("abc")
        with pytest.raises(ValueError):
            to_rational(True)
        with pytest.raises(ValueError):
            to_rational(float("nan"))

    def test_exact_sqrt(self):
        assert exact_sqrt("9/4") == to_rational("3/2")
        assert exact_sqrt(0) == to_rational(0)
        assert exact_sqrt(2) is None

    def test_sqrt_of_negative(self):
        with pytest.raises(ScalarError, match="negative radicand"):
            exact_sqrt(-1)


class TestBackends:
    def test_gaussian_arithmetic(self, exact):
        i = exact.imag
        z = exact.coerce(1) + exact.coerce(2) * i
        assert exact.equal(z * exact.conjugate(z), exact.coerce(5))
        assert exact.describe(z) == "1+2i"
        assert exact.is_real(z * exact.conjugate(z))
        assert not exact.is_real(z)

    def test_division_by_zero(self, exact, float_backend):
        with pytest.raises(ScalarError, match="non-invertible"):
            exact.div(exact.one, exact.zero)
        with pytest.raises(ScalarError):
            float_backend.div(1, 0)

    def test_float_tolerance(self):
        backend = FloatBackend(atol=1e-6)
        assert backend.is_zero(1e-7)
        assert not backend.is_zero(1e-5)

    def test_get_backend(self):
        assert get_backend("exact") is EXACT
        assert get_backend("float", 1e-8).atol == 1e-8
        with pytest.raises(ValueError):
            get_backend("quad")

    @given(rationals, rationals, nonzero_rationals)
    def test_float_agrees_with_exact(self, a, b, c):
        exact = EXACT
        floating = FloatBackend()
        value = exact.div(exact.coerce(as_text(a)) * exact.coerce(as_text(b)) + exact.imag, exact.coerce(as_text(c)))
        approx = floating.div(floating.coerce(as_text(a)) * floating.coerce(as_text(b)) + 1j,
                              floating.coerce(as_text(c)))
        reference = exact.to_complex(value)
        assert abs(approx - reference) <= 1e-12 * max(1.0, abs(reference))


def _gaussian(backend, pair):
    re, im = pair
    return backend.coerce(as_text(re)) + backend.imag * backend.coerce(as_text(im))


@pytest.mark.parametrize("backend", [EXACT, FloatBackend()], ids=["exact", "float"])
@settings(max_examples=1000, deadline=None)
@given(gaussian_rationals(), gaussian_rationals(), gaussian_rationals())
def test_ring_axioms(backend, first, second, third):
    a, b, c = (_gaussian(backend, pair) for pair in (first, second, third))
    conj = backend.conjugate
    assert backend.equal((a * b) * c, a * (b * c))
    assert backend.equal((a + b) + c, a + (b + c))
    assert backend.equal(a * (b + c), a * b + a * c)
    assert backend.equal(a * b, b * a)
    assert backend.equal(a + backend.zero, a)
    assert backend.equal(a * backend.one, a)
    assert backend.equal(conj(a * b), conj(a) * conj(b))
    assert backend.equal(conj(a + b), conj(a) + conj(b))
    assert backend.equal(conj(conj(a)), a)
    assert backend.is_real(a * conj(a))
    parts = backend.coerce(backend.real_part(a)) + backend.imag * backend.coerce(backend.imag_part(a))
    assert backend.equal(parts, a)


class TestParamRing:
    @pytest.fixture
    def params(self):
        return ParamRing(("a", "at", "r"), conjugate_pairs=(("a", "at"),))

    def test_conjugate_swaps_partners(self, params, exact):
        a, at, r = params.symbol("a"), params.symbol("at"), params.symbol("r")
        p = a * r + params.backend.imag * at
        expected = at * r - params.backend.imag * a
        assert params.conjugate(p) == expected
        assert params.conjugate(params.conjugate(p)) == p
        assert params.is_real_symbol("r")
        assert params.partner("a") == "at"

    def test_evaluate_completes_partner(self, params, exact):
        p = params.symbol("a") * params.symbol("at")
        value = params.evaluate(p, {"a": exact.coerce(1) + exact.imag})
        assert exact.equal(value, exact.coerce(2))

    def test_evaluate_checks_reality(self, params, exact):
        with pytest.raises(RealityViolation):
            params.evaluate(params.symbol("r"), {"r": exact.imag})
        with pytest.raises(RealityViolation):
            params.evaluate(params.symbol("a"), {"a": 1, "at": 2})

    def test_unbound_indeterminate(self, params):
        with pytest.raises(ScalarError, match="unbound"):
            params.evaluate(params.symbol("r"), {"a": 1})
        with pytest.raises(ScalarError):
            params.backend.to_complex(params.symbol("r"))

    def test_real_and_imaginary_parts_of_constants(self, params, exact):
        backend = params.backend
        value = backend.coerce(2) + backend.imag * backend.coerce(3)
        assert backend.real_part(value) == exact.real_part(exact.coerce(2))
        assert backend.imag_part(value) == exact.real_part(exact.coerce(3))
        with pytest.raises(ScalarError, match="unbound"):
            backend.imag_part(params.symbol("a"))

    def test_invalid_pairs(self):
        with pytest.raises(ValueError):
            ParamRing(("a", "b", "c"), conjugate_pairs=(("a", "b"), ("b", "c")))
        with pytest.raises(ValueError):
            ParamRing(("a", "a"))

    @settings(max_examples=100)
    @given(st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
           st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
           rationals, rationals)
    def test_evaluate_is_a_homomorphism(self, first, second, a_value, r_value):
        params = ParamRing(("a", "at", "r"), conjugate_pairs=(("a", "at"),))
        a, at, r = (params.symbol(name) for name in ("a", "at", "r"))
        monomials = (params.backend.one, a, at * r, r * r)
        p = sum((m * c for m, c in zip(monomials, first)), params.backend.zero)
        q = sum((m * c for m, c in zip(monomials, second)), params.backend.zero)
        assignment = {"a": as_text(a_value), "r": as_text(r_value)}
        exact = EXACT
        assert exact.equal(params.evaluate(p * q, assignment),
                           params.evaluate(p, assignment) * params.evaluate(q, assignment))
        assert exact.equal(params.evaluate(p + q, assignment),
                           params.evaluate(p, assignment) + params.evaluate(q, assignment))


class TestLinalg:
    def test_inverse(self, exact):
        matrix = linalg.from_rows(exact, [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        product = linalg.matmul(matrix, linalg.inverse(exact, matrix))
        assert linalg.equal(exact, product, linalg.identity(exact))

    def test_singular_matrix(self, exact):
        matrix = linalg.from_rows(exact, [[1, 2], [2, 4]])
        with pytest.raises(ScalarError):
            linalg.inverse(exact, matrix)
        assert linalg.rank(exact, matrix) == 1

    def test_det(self, exact):
        matrix = linalg.from_rows(exact, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert exact.equal(linalg.det(exact, matrix), exact.one)
