"""Walkthrough: lock a short key into a vault, then try to get it back.

Run with  python3 demos/lock_and_unlock.py
"""

from fuzzyvault import (
    FamilyTemplate,
    LockParams,
    Vault,
    build_locking_set,
    fuzzy_lock,
    fuzzy_unlock,
    partition_field,
)

# A field of prime order.  Every element of F_q belongs to exactly one
# subset, and each subset fuzzifies its elements with its own membership
# family.  Here: lower half triangular, upper half gaussian.
q = 65537
tri = FamilyTemplate("triangular", (1.0, 1.0))
gau = FamilyTemplate("gaussian", (0.5, 0.5))
field = partition_field(q, [q // 2, q - q // 2], [tri, gau])

# The locking set: twelve "real" elements carrying the key under the
# triangular family, plus a decoy group fuzzified with the gaussian family.
# Only subset 0 feeds the polynomial; the decoys exist to confuse an
# attacker who cannot tell the families apart.
genuine = tuple(range(100, 112))
decoys = tuple(range(40000, 40006))
locking = build_locking_set(field, [(genuine, tri), (decoys, gau)])

key = b"vault demo key"
params = LockParams(t=18, k_subset=0, t_mfk=12, r=120, k=8, seed=42)
vault, transcript = fuzzy_lock(key, locking, field, params)

print(f"locked {len(key)} bytes into {vault.r} vault points "
      f"(12 genuine, {vault.r - 12} chaff)")
print(f"polynomial degree {vault.n}, field order {vault.q}")

# The vault hides which points are genuine: every point is just a pair of
# fuzzy numbers.  The transcript (which a real deployment would discard)
# remembers them, so we can peek for the sake of the demo.
print(f"genuine x-cores: {sorted(transcript.genuine_cores)[:4]} ...")

# Unlocking with the very same set succeeds.
result = fuzzy_unlock(vault, locking, 0, 0.25, len(key))
print(f"\nunlock with matching set -> {result.key!r}")
print(f"  points matched: {result.diagnostics.matched}, "
      f"subsets tried: {result.diagnostics.subsets_tried}")

# Unlocking with the right elements under the WRONG family fails: the
# parameter distance between different families is infinite, so none of
# the genuine points match the probes.
wrong_family = build_locking_set(field, [(genuine, gau), (decoys, tri)])
result = fuzzy_unlock(vault, wrong_family, 0, 0.25, len(key))
print(f"unlock with wrong family   -> {result.key!r} "
      f"(matched {result.diagnostics.matched})")

# Vault files are deterministic JSON: same inputs and seed, same bytes.
again, _ = fuzzy_lock(key, locking, field, params)
print(f"\nbyte-identical re-lock: {again.to_json() == vault.to_json()}")
vault.save("/tmp/demo-vault.json")
print(f"round-trips through disk: "
      f"{Vault.load('/tmp/demo-vault.json').to_json() == vault.to_json()}")
