import numpy as np

from lhsimplex.exact_core import det_int
from lhsimplex.intarray import _cofactor_adjugate, batch_adjugate, batch_det, homogeneous


def test_batch_det_matches_exact():
    rng = np.random.default_rng(7)
    for k in range(1, 6):
        m = rng.integers(-9, 10, size=(40, k, k))
        d = batch_det(m)
        assert [int(x) for x in d] == [det_int(a.tolist()) for a in m]


def test_batch_det_widens_on_overflow():
    m = np.array([np.eye(6, dtype=object) * (10**5)])
    assert int(batch_det(m)[0]) == 10**30


def test_adjugate_identity_and_fallback():
    rng = np.random.default_rng(3)
    h = rng.integers(-5, 6, size=(60, 4, 4))
    h[:3] = 0
    h[3, 1] = h[3, 0]  # singular
    adj = batch_adjugate(h)
    assert (adj == _cofactor_adjugate(h)).all()
    d = batch_det(h)
    for i in range(len(h)):
        assert (h[i] @ adj[i] == d[i] * np.eye(4, dtype=np.int64)).all()


def test_homogeneous():
    p = np.array([[1, 2], [3, 4]])
    assert homogeneous(p).tolist() == [[1, 2, 1], [3, 4, 1]]
