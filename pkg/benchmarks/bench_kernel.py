"""Compare the compiled and pure-Python term-combination kernels.

The backend is chosen at import time, so each measurement runs in a fresh
interpreter with ``LAMBDA_FORGE_PURE`` set or cleared.  Workloads cover the
three kernel entry points through their real call sites: universal
polynomial tables (term products and scaled accumulation) and form-ring
verification (structure-constant products).

Usage: ``python benchmarks/bench_kernel.py``
"""

import json
import os
import subprocess
import sys

WORKLOADS = {
    "pnm table (nm <= 8)": """
from lambdaforge import symfun
symfun._MEM_CACHE.clear()
for n in range(1, 9):
    for m in range(1, 9):
        if n * m <= 8:
            symfun.compute_Pnm(n, m)
""",
    "product polynomial, degree 6": """
from lambdaforge import symfun
symfun._MEM_CACHE.clear()
symfun.compute_Pn(6)
""",
    "form-ring laws on torus6": """
from lambdaforge.axioms import verify_axioms
from lambdaforge.contexts import gamma_context
assert verify_axioms(gamma_context('torus6'), 'lambda', samples=10, seed=0).all_pass
""",
    "cycle-ring laws on torus4": """
from lambdaforge.axioms import verify_axioms
from lambdaforge.contexts import diffk_context
assert verify_axioms(diffk_context('torus4'), 'lambda', samples=8, seed=0,
                     mult_order=3, composition_cap=6).all_pass
""",
}

TEMPLATE = """
import time
t0 = time.perf_counter()
{body}
import lambdaforge._kernel as k
print(__import__('json').dumps({{"time": time.perf_counter() - t0, "backend": k.BACKEND}}))
"""


def run(body: str, pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["LAMBDA_FORGE_PURE"] = "1"
    else:
        env.pop("LAMBDA_FORGE_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", TEMPLATE.format(body=body)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    rows = []
    for name, body in WORKLOADS.items():
        native = run(body, pure=False)
        pure = run(body, pure=True)
        rows.append((name, pure["time"], native["time"], native["backend"]))
    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  {'pure':>8}  {'native':>8}  speedup")
    for name, t_pure, t_native, backend in rows:
        speed = t_pure / t_native if t_native else float("inf")
        note = "" if backend == "native" else "  (extension not built; both pure)"
        print(f"{name.ljust(width)}  {t_pure:8.3f}  {t_native:8.3f}  {speed:6.2f}x{note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
