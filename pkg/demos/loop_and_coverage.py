"""Walk a small fleet around the road loop and watch cell coverage flip.

Vehicles drive the boundary of a rectangle at constant speed. On the larger
loop the cell radius does not reach the far ends, so a vehicle drops out of
coverage on every lap. Positions are closed form, so we can sample them at
any instant without stepping a simulation.
"""

from offloadsim.scenario import (
    build_scenario,
    in_coverage,
    partial_coverage,
    position_at,
    total_coverage,
)

small = total_coverage()
large = partial_coverage()
print(f"small loop: {small.loop_length_x:.0f} x {small.loop_width_y:.0f} m, "
      f"perimeter {small.perimeter:.0f} m, coverage everywhere")
print(f"large loop: {large.loop_length_x:.0f} x {large.loop_width_y:.0f} m, "
      f"perimeter {large.perimeter:.0f} m, cell radius {large.coverage_radius:.0f} m")
print()

fleet = build_scenario(large, n_vehicles=4, speed=100.0 / 3.6, capacity=71120.0, seed=7)
for v in fleet:
    direction = "clockwise" if v.direction == 1 else "counterclockwise"
    print(f"vehicle {v.id}: starts at arc length {v.loop_offset_at_t0:7.1f} m, {direction}")
print()

# sample one lap of vehicle 0 and report every coverage transition
v = fleet[0]
lap = large.perimeter / v.speed
print(f"vehicle 0 laps the loop in {lap:.0f} s at {v.speed * 3.6:.0f} km/h")
was_covered = None
t = 0.0
while t <= lap:
    x, y = position_at(v, t, large)
    covered = in_coverage((x, y), large)
    if covered != was_covered:
        state = "enters coverage" if covered else "leaves coverage"
        print(f"  t = {t:6.1f} s  position ({x:7.1f}, {y:4.1f})  {state}")
        was_covered = covered
    t += 0.5

share = sum(
    in_coverage(position_at(v, 0.1 * k, large), large) for k in range(int(lap * 10))
) / int(lap * 10)
print(f"\nfraction of the lap spent in coverage: {share:.1%}")
