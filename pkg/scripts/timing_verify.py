"""Wall-clock of `qsp verify` at increasing depth, one report per depth."""
import sys
import time

from qsp.cli import cmd_verify, parse_config

top = int(sys.argv[1]) if len(sys.argv) > 1 else 5
for depth in range(1, top + 1):
    t0 = time.perf_counter()
    report = cmd_verify(parse_config(["verify", "--depth", str(depth)]))
    print(f"depth {depth}: {'ok' if report.ok else 'FAILED'} in {time.perf_counter() - t0:.2f}s")
    for r in report.results:
        print(f"    {r.status:<10} {r.name:<34} {r.seconds:6.2f}s")
