"""Walkthrough: fingerprint minutiae as fuzzy numbers, end to end.

Run with  python3 demos/minutiae_walkthrough.py
"""

from fuzzyvault import (
    Minutia,
    circular_distance,
    minutia_to_fuzzy,
    minutiae_vault_demo,
    orientation_set,
)

# Ridge orientations are quantized to a 16-step grid, 22.5 degrees apart.
grid = orientation_set()
print(f"orientation grid ({len(grid)} steps): {grid[:4]} ... {grid[-2:]}")

# A minutia carries a kind, a pixel position, and an orientation interval
# (lower, center, upper).  The interval becomes a triangular fuzzy number;
# arcs that straddle 0 degrees are unwrapped onto the real line first.
samples = [
    Minutia("ridge_ending", (120, 88), (202.5, 225.0, 247.5)),
    Minutia("bifurcation", (64, 200), (292.5, 315.0, 337.5)),
    Minutia("ridge_ending", (30, 44), (337.5, 0.0, 22.5)),  # wraps
]
for m in samples:
    f = minutia_to_fuzzy(m)
    print(f"  {m.kind:13s} at {m.position}: triangular{f.params}")

# Angular comparisons always take the shorter arc.
print(f"\ncircular distance 350 vs 10 degrees: {circular_distance(350, 10)}")

# A dozen spread-out minutiae are plenty to lock a key.  Each maps to a
# field element built from its orientation step and a coarse position hash.
minutiae = [
    Minutia(kind, (40 * i + 8, 24 * i + 8),
            (step - 22.5, step, step + 22.5))
    for i, (kind, step) in enumerate(
        (("ridge_ending", s) if i % 2 else ("bifurcation", s))
        for i, s in enumerate(grid[:12])
    )
]

key = b"\x13\x37\xca\xfe"
print(f"\nlocking {key.hex()} on {len(minutiae)} minutiae ...")

# Re-measuring a finger never reproduces the exact same values, so the
# unlock probes are jittered copies of the enrollment cores.  Matching
# tolerates offsets up to delta; past that the vault stays shut.
for jitter in (0.0, 0.1, 1.0):
    res = minutiae_vault_demo(minutiae, key, delta=0.25, jitter=jitter, seed=3)
    got = res.unlock.key.hex() if res.unlock.key else "null"
    print(f"  jitter {jitter:>4}: matched "
          f"{res.unlock.diagnostics.matched:2d}/12 -> {got}")
