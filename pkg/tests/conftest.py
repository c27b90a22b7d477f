import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weakadj.base import BaseKind, get_base
from weakadj.corpus import corpus_objects

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("artifact", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("artifact")

KINDS = list(BaseKind)


def objects_of(kind):
    return st.sampled_from(corpus_objects(kind, "small"))


@st.composite
def kind_and_objects(draw, n=1):
    kind = draw(st.sampled_from(KINDS))
    pool = corpus_objects(kind, "small")
    return (get_base(kind),) + tuple(draw(st.sampled_from(pool)) for _ in range(n))


@pytest.fixture(params=KINDS, ids=[k.value for k in KINDS])
def base(request):
    return get_base(request.param)
