import os
import subprocess
import sys

import numpy as np
import pytest

from kfib import _kernels
from kfib.shelllike import caratheodory_grid


@pytest.fixture(scope="module")
def dom_args():
    _, c2, _ = caratheodory_grid(16)
    mus = np.linspace(-3, 5, 9)
    fek = np.linspace(0.5, 1.5, 9)
    return (c2, c2[::-1].copy(), 0.07 + 0.01j, 0.11 - 0.03j, 0.9, 0.8, mus, fek)


def test_domination_backends_agree(dom_args):
    ref_r, ref_w = _kernels.domination_numpy(*dom_args)
    loop_r, loop_w = _kernels._domination_loop(*dom_args)
    live_r, live_w = _kernels.domination(*dom_args)
    np.testing.assert_allclose(loop_r, ref_r, rtol=1e-14)
    np.testing.assert_allclose(live_r, ref_r, rtol=1e-14)
    # locations may differ on exact ties; each must attain the maximum
    for r, w in ((ref_r, ref_w), (loop_r, loop_w), (live_r, live_w)):
        np.testing.assert_allclose(_ratios_at(dom_args, w), r, rtol=1e-14)


def _ratios_at(args, where):
    c2, d2, K, F, b2, b3, mus, fek = args
    out = []
    for k, (i, j, m) in enumerate(where):
        a2sq = K * (c2[i] + d2[j])
        a3 = a2sq + F * (c2[i] - d2[j])
        if k == 0:
            out.append(np.sqrt(abs(a2sq)) / b2)
        elif k == 1:
            out.append(abs(a3) / b3)
        else:
            out.append(abs(a3 - mus[m] * a2sq) / fek[m])
    return np.array(out)


@pytest.mark.parametrize("radius", [0.3, 0.95])
def test_real_part_backends_agree(radius):
    args = (-0.6180339887498949, 0.3819660112501051, radius, 512)
    a = _kernels.min_real_part_numpy(*args)
    b = _kernels._min_real_part_loop(*args)
    c = _kernels.min_real_part(*args)
    assert a[0] == pytest.approx(b[0], rel=1e-13) == pytest.approx(c[0], rel=1e-13)
    assert a[1] == pytest.approx(b[1]) == pytest.approx(c[1])


def test_env_flag_selects_numpy():
    env = dict(os.environ, KFIB_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from kfib import _kernels; print(_kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "numpy"
