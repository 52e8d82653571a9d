"""The 7-machine, 8-job example: makespan depends on which machine is fixed first.

Run:  python demos/01_small_example.py
"""
from flowshoplab import TABLE2, bottleneck, decompose_makespan, render_gantt, row_totals, schedule_fiducial, sweep_fiducial

print("row totals y_mu :", row_totals(TABLE2).astype(int).tolist())
print("bottleneck      : M%d" % bottleneck(TABLE2))

sweep = sweep_fiducial(TABLE2)
for nu, t in enumerate(sweep, start=1):
    print(f"fiducial M{nu}: makespan {t:g}")

# The bottleneck (M3) is not the best place to start; the centre (M4) is the worst.
# Each makespan splits into a forward block and a backward block sharing the fiducial row.
for nu in (1, 3, 4):
    d = decompose_makespan(TABLE2, nu)
    print(f"M{nu}: upper {d.upper:g} + lower {d.lower:g} - fiducial row {d.fiducial_sum:g} = {d.total:g}")

print()
print(render_gantt(schedule_fiducial(TABLE2, 4), TABLE2, "text"))
