"""测试用的 hypothesis 策略"""
from fractions import Fraction

from hypothesis import strategies as st

from exterior import KForm, basis_monomials
from models import UnitaryElement
from scalars import linalg

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def as_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def cayley_block(backend, h):
    """H = [[h₁, h₃ − ih₂], [h₃ + ih₂, h₄]] 的 Cayley 变换 (I − iH)(I + iH)⁻¹ ∈ U(2)"""
    i = backend.imag
    h1, h2, h3, h4 = (backend.coerce(v) for v in h)
    skew = linalg.scale(linalg.from_rows(backend, [[h1, h3 - i * h2], [h3 + i * h2, h4]]), i)
    eye = linalg.identity(backend, 2)
    return linalg.matmul(eye - skew, linalg.inverse(backend, eye + skew))


def theta_form(model, coeffs, omega=0):
    total = model.omega.scale(omega)
    for value, theta in zip(coeffs, model.thetas):
        total = total + theta.scale(value)
    return total


@st.composite
def gaussian_rationals(draw):
    return draw(rationals), draw(rationals)


@st.composite
def forms(draw, backend, degree):
    coeffs = draw(st.lists(rationals, min_size=len(basis_monomials(degree)),
                           max_size=len(basis_monomials(degree))))
    return KForm(degree, tuple(backend.coerce(as_text(q)) for q in coeffs), backend)


@st.composite
def theta_forms(draw, model, with_omega=False):
    """θ 坐标取小有理数的实 2-形式"""
    coeffs = [as_text(draw(rationals)) for _ in range(5)]
    omega = as_text(draw(rationals)) if with_omega else 0
    return theta_form(model, coeffs, omega)


@st.composite
def hermitian_elements(draw, backend):
    return UnitaryElement.from_block("hermitian", backend,
                                     cayley_block(backend, [as_text(draw(rationals)) for _ in range(4)]))


@st.composite
def para_elements(draw, backend):
    a, b, c, d = draw(st.lists(small_ints, min_size=4, max_size=4).filter(lambda e: e[0] * e[3] != e[1] * e[2]))
    return UnitaryElement.from_block("para", backend, [[a, b], [c, d]])


def structure_elements(model):
    if model.is_hermitian:
        return hermitian_elements(model.backend)
    return para_elements(model.backend)


@st.composite
def brackets(draw, backend):
    """随机括号表：每个 (i<j, k) 以一定概率取小整数"""
    table = {}
    for i in range(4):
        for j in range(i + 1, 4):
            row = {}
            for k in range(4):
                if draw(st.booleans()):
                    row[k] = backend.coerce(draw(st.integers(min_value=-2, max_value=2)))
            if row:
                table[(i, j)] = row
    return table
