"""
Health check script to verify the numerical core
Run this to confirm the spectral routines and constructions reproduce known values
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from fractions import Fraction

import numpy as np

from src.core.bounds import b_tilde
from src.core.construct import extremal_flat, extremal_spike
from src.core.criteria import ccnr_test, ppt_test
from src.core.symmetric import esf
from src.linalg.bipartite import maximally_entangled, realign
from src.linalg.matcore import singular_values
from src.utils.config import config


def _check(label: str, ok: bool, detail: str) -> bool:
    print(f"   {'✅' if ok else '❌'} {label}: {detail}")
    return ok


def check_core() -> bool:
    """Run health checks on the numerical core"""
    print("🔍 Running numerical health checks...\n")
    results = []

    print("1️⃣ Checking configuration...")
    try:
        config.validate()
        results.append(_check("config", True, f"spectral method {config.SPECTRAL_METHOD}"))
    except ValueError as e:
        results.append(_check("config", False, str(e)))
        return False

    print("\n2️⃣ Checking criteria on the Bell state...")
    bell = maximally_entangled(2)
    ccnr = ccnr_test(bell)
    ppt = ppt_test(bell)
    results.append(_check("CCNR statistic", abs(ccnr.statistic - 2.0) < 1e-12,
                          f"{ccnr.statistic:.12g} (expected 2)"))
    results.append(_check("PPT statistic", abs(ppt.statistic + 0.5) < 1e-12,
                          f"{ppt.statistic:.12g} (expected -0.5)"))

    print("\n3️⃣ Checking extremal constructions...")
    spike, _ = extremal_spike(2, 2)
    s = singular_values(realign(spike))
    expected = np.array([0.5] + [1.0 / 6.0] * 3)
    results.append(_check("spike (2, 2) spectrum", np.allclose(s, expected, atol=1e-12),
                          np.array2string(s, precision=12)))
    value = esf(s, 2)
    results.append(_check("f_2 at spike (2, 2)", abs(value - float(Fraction(1, 3))) < 1e-12,
                          f"{value:.12g} (expected 1/3)"))

    flat = extremal_flat(2, 8)
    s = singular_values(realign(flat))
    results.append(_check("flat (2, 8) spectrum", np.allclose(s, 0.25, atol=1e-12),
                          np.array2string(s, precision=12)))

    print("\n4️⃣ Checking closed forms...")
    bound = b_tilde(2, 2, 2)
    results.append(_check("B~_2(2, 2)", abs(bound.value - 1.0 / 3.0) < 1e-12,
                          f"{bound.value:.12g} ({bound.regime.value})"))
    gap = b_tilde(3, 26, 2)
    results.append(_check("B~_2(3, 26)", gap.value is None, gap.regime.value))

    ok = all(results)
    print("\n" + "=" * 50)
    print("✅ All health checks passed!" if ok else "❌ Some health checks failed")
    print("=" * 50)
    return ok


if __name__ == "__main__":
    success = check_core()
    sys.exit(0 if success else 1)
