import pytest
from hypothesis import strategies as st

from branchmin.entities.lts import Lts
from branchmin.tools.generators import gen_appendix_a, gen_splitting_example

LABELS = ["tau", "a", "b"]


def make_lts(n: int, edges, initial: int = 0, internal=("tau", "i")) -> Lts:
    """Builds an Lts from (source, label name, target) triples."""
    labels = sorted({label for _, label, _ in edges})
    index = {label: i for i, label in enumerate(labels)}
    return Lts.normalized(
        n,
        initial,
        [(s, index[label], t) for s, label, t in edges],
        labels,
        internal,
    )


@st.composite
def small_lts(draw, max_n: int = 8, max_m: int = 20) -> Lts:
    """Arbitrary small systems over tau, a and b."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    edges = draw(
        st.lists(
            st.tuples(
                st.integers(0, n - 1),
                st.sampled_from(LABELS),
                st.integers(0, n - 1),
            ),
            max_size=max_m,
        )
    )
    initial = draw(st.integers(0, n - 1))
    return make_lts(n, edges, initial)


@pytest.fixture
def splitting_example() -> Lts:
    return gen_splitting_example()


@pytest.fixture
def appendix_a_3() -> Lts:
    return gen_appendix_a(3)


@pytest.fixture
def sample_aut() -> bytes:
    return (
        b"des (0,4,3)\n"
        b'(0,"a",1)\n'
        b"(1,tau,2)\n"
        b'(2,"b c",0)\n'
        b"(2,i,2)\n"
    )
