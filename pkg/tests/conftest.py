import itertools
import random

import pytest

from leibalg.algebra import LeibnizAlgebra, validate
from leibalg.fields import Field

F3 = Field.prime(3)
F5 = Field.prime(5)
FQ = Field.rationals()

SUITE_SEED = 424243
SUITE_SIZE = 220


def paper_g1(field=FQ):
    return LeibnizAlgebra.from_structure(
        field, 2, {(0, 0): (0, 1), (1, 0): (0, 1)}, basis_names=("e1", "e2"))


def paper_g2(field=FQ):
    return LeibnizAlgebra.from_structure(
        field, 3,
        {(0, 0): (0, 0, 1), (1, 0): (0, 0, 1), (2, 0): (0, 0, 1)},
        basis_names=("a1", "a2", "a3"))


def nilpotent_n2(field=FQ):
    """dim 2, [e1,e1] = e2: its canonical extension has nonzero theta image."""
    return LeibnizAlgebra.from_structure(field, 2, {(0, 0): (0, 1)})


def lie_r2(field=FQ):
    """The nonabelian 2-dim Lie algebra, [x,y] = x = -[y,x]."""
    minus_one = field.of(-1)
    return LeibnizAlgebra.from_structure(
        field, 2, {(0, 1): (field.one, field.zero),
                   (1, 0): (minus_one, field.zero)})


def random_leibniz_algebra(rng, field=F3, max_dim=3):
    """Rejection-sample a sparse structure tensor until the Leibniz identity
    holds.  Dimension is biased away from 1 (dim-1 algebras are all abelian)."""
    dims = tuple(d for d in (1, 2, 2, 3, 3) if d <= max_dim)
    while True:
        dim = rng.choice(dims)
        table = {}
        for _ in range(rng.randrange(0, 2 * dim + 1)):
            i, j = rng.randrange(dim), rng.randrange(dim)
            vec = [0] * dim
            vec[rng.randrange(dim)] = rng.randrange(1, field.p)
            table[(i, j)] = tuple(vec)
        alg = LeibnizAlgebra.from_structure(field, dim, table)
        if validate(alg).ok:
            return alg


def algebra_suite(seed=SUITE_SEED, count=SUITE_SIZE, field=F3, max_dim=3):
    rng = random.Random(seed)
    return [random_leibniz_algebra(rng, field, max_dim) for _ in range(count)]


@pytest.fixture(scope="session")
def suite():
    """The shared random suite: >= 200 validated algebras over F_3, dim <= 3."""
    return algebra_suite()


@pytest.fixture
def rng():
    return random.Random(99173)


ACCEPTANCE_LINES = []


def record_acceptance(number, label, ok, note=""):
    line = f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'}"
    if note:
        line += f"  [{note}]"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def all_vectors(field, n):
    """Every vector of F_p^n (finite fields only, small n)."""
    return [tuple(v) for v in itertools.product(range(field.p), repeat=n)]


def brute_force_members(subspace):
    """All elements of a subspace over F_p by enumerating coefficient tuples."""
    f = subspace.field
    out = set()
    for coeffs in itertools.product(range(f.p), repeat=subspace.dim):
        vec = [0] * subspace.ambient_dim
        for c, b in zip(coeffs, subspace.basis):
            for t in range(subspace.ambient_dim):
                vec[t] = (vec[t] + c * b[t]) % f.p
        out.add(tuple(vec))
    return out


def random_vector(rng, field, n):
    if field.is_finite:
        return tuple(rng.randrange(field.p) for _ in range(n))
    return tuple(field.of(rng.randint(-4, 4)) for _ in range(n))
