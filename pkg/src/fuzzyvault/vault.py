"""The fuzzy-fuzzy vault protocol: locking, chaff generation, fuzzy matching
and the combinatorial unlock search.

A vault hides a key-carrying polynomial among two kinds of chaff:

* type (i): off-polynomial points (random y-core, any family),
* type (ii): on-polynomial points fuzzified with a family other than the
  locking subset's.

Genuine points are exactly those carrying the locking family AND lying on
the polynomial; neither property alone identifies them.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .field_poly import (
    CRC_VARIANT,
    FieldParams,
    Polynomial,
    decode_key,
    encode_key,
    lagrange_interpolate,
)
from .fuzzy_number import FuzzyNumber, distance
from .multi_fuzzy_set import LOCKING, UNLOCKING, FamilyTemplate, MultiFuzzySet

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator; fixed so vaults reproduce per seed."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n


def scramble(points: list, rng: "SplitMix64 | int") -> list:
    """Fisher-Yates permutation driven by a splitmix64 stream."""
    if isinstance(rng, int):
        rng = SplitMix64(rng)
    out = list(points)
    for i in range(len(out) - 1, 0, -1):
        j = rng.randbelow(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


@dataclass(frozen=True)
class VaultPoint:
    x: FuzzyNumber
    y: FuzzyNumber

    def __post_init__(self):
        if self.x.family != self.y.family:
            raise ValueError("vault point coordinates must share a family")

    @property
    def x_core(self) -> int:
        return round(self.x.defuzzify())

    @property
    def y_core(self) -> int:
        return round(self.y.defuzzify())

    def to_dict(self) -> dict:
        return {"x": self.x.to_dict(), "y": self.y.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "VaultPoint":
        return cls(FuzzyNumber.from_dict(d["x"]), FuzzyNumber.from_dict(d["y"]))


@dataclass(frozen=True)
class LockParams:
    t: int              # total genuine elements across the locking set
    k_subset: int       # index of the locking subset within the locking set
    t_mfk: int          # size of the locking subset
    r: int              # total vault points
    k: int              # coefficient count; polynomial degree n = k - 1
    rho: float = 0.2    # fraction of chaff that is on-polynomial wrong-family
    delta: float = 0.25         # matching tolerance, in core units
    delta_tilde: float = 0.0    # reserved coefficient tolerance, unused
    seed: int = 0
    m_b: int = 1        # family count the unlocker must supply

    @property
    def n(self) -> int:
        return self.k - 1

    def validate(self, q: int) -> None:
        if not (0 < self.t_mfk <= self.t <= self.r <= q):
            raise ValueError(
                f"need 0 < t_mfk <= t <= r <= q, got "
                f"t_mfk={self.t_mfk}, t={self.t}, r={self.r}, q={q}"
            )
        if self.t_mfk < self.k:
            raise ValueError(
                f"locking subset too small to unlock: t_mfk={self.t_mfk} < k={self.k}"
            )
        if not (0.0 <= self.rho <= 1.0):
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if self.delta <= 0:
            raise ValueError("matching tolerance delta must be positive")


@dataclass(frozen=True)
class Vault:
    points: tuple
    q: int
    n: int
    r: int
    crc_variant: str = CRC_VARIANT

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        if len(points) != self.r:
            raise ValueError(f"vault holds {len(points)} points, expected r={self.r}")
        cores = [p.x_core for p in points]
        if len(set(cores)) != len(cores):
            raise ValueError("vault x-cores must be pairwise distinct")

    def to_dict(self) -> dict:
        return {
            "format_version": 1,
            "q": self.q,
            "n": self.n,
            "r": self.r,
            "crc_variant": self.crc_variant,
            "points": [p.to_dict() for p in self.points],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Vault":
        if d.get("format_version") != 1:
            raise ValueError(f"unsupported vault format: {d.get('format_version')!r}")
        return cls(
            tuple(VaultPoint.from_dict(p) for p in d["points"]),
            int(d["q"]),
            int(d["n"]),
            int(d["r"]),
            d.get("crc_variant", CRC_VARIANT),
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "Vault":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class LockTranscript:
    """Secret locking record, for tests and diagnostics only; never serialized
    into the vault file."""

    polynomial: Polynomial
    genuine_indices: tuple     # positions of genuine points after scrambling
    genuine_cores: tuple
    locking_family: FamilyTemplate
    t_mfk: int
    m_a: int


@dataclass
class UnlockDiagnostics:
    matched: int = 0
    subsets_tried: int = 0
    effort: int = 0


@dataclass(frozen=True)
class UnlockResult:
    key: bytes | None
    diagnostics: UnlockDiagnostics


def generate_chaff(
    p: Polynomial,
    field_mfs: MultiFuzzySet,
    used_x_cores: set,
    count: int,
    rho: float,
    locking_template: FamilyTemplate,
    rng: SplitMix64,
) -> list[VaultPoint]:
    """Chaff points with fresh, pairwise distinct x-cores.

    floor(rho * count) points are type (ii): on the polynomial but with a
    family other than the locking one.  The rest are type (i): off the
    polynomial, any family.
    """
    q = field_mfs.q
    if count < 0 or count > q - len(used_x_cores):
        raise ValueError(
            f"cannot place {count} chaff points among {q - len(used_x_cores)} "
            f"free field elements"
        )
    templates = field_mfs.templates()
    decoys = [t for t in templates if t.family != locking_template.family]
    n_on_poly = int(rho * count)
    if n_on_poly > 0 and not decoys:
        raise ValueError("on-polynomial chaff needs at least one non-locking family")

    used = set(used_x_cores)
    points = []

    def fresh_core() -> int:
        while True:
            u = rng.randbelow(q)
            if u not in used:
                used.add(u)
                return u

    for _ in range(n_on_poly):
        u = fresh_core()
        template = decoys[rng.randbelow(len(decoys))]
        points.append(VaultPoint(template.instantiate(float(u)),
                                 template.instantiate(float(p.eval(u)))))
    for _ in range(count - n_on_poly):
        u = fresh_core()
        v = rng.randbelow(q - 1)
        if v >= p.eval(u):
            v += 1  # uniform over F_q minus the on-polynomial value
        template = templates[rng.randbelow(len(templates))]
        points.append(VaultPoint(template.instantiate(float(u)),
                                 template.instantiate(float(v))))
    return points


def lock_polynomial(
    p: Polynomial,
    locking_set: MultiFuzzySet,
    field_mfs: MultiFuzzySet,
    params: LockParams,
) -> tuple[Vault, LockTranscript]:
    """Lock an already-encoded polynomial (the key-free core of fuzzy_lock)."""
    q = field_mfs.q
    params.validate(q)
    if locking_set.kind != LOCKING:
        raise ValueError(f"expected a locking set, got kind={locking_set.kind!r}")
    if locking_set.q != q:
        raise ValueError("locking set and field partition disagree on q")
    if locking_set.total_elements != params.t:
        raise ValueError(
            f"locking set holds {locking_set.total_elements} elements, "
            f"params.t = {params.t}"
        )
    if not (0 <= params.k_subset < locking_set.subset_count):
        raise ValueError(f"locking subset index {params.k_subset} out of range")
    subset = locking_set.subsets[params.k_subset]
    if len(subset) != params.t_mfk:
        raise ValueError(
            f"locking subset holds {len(subset)} elements, params.t_mfk = {params.t_mfk}"
        )
    if len(p.coefficients) != params.k:
        raise ValueError("polynomial length disagrees with params.k")

    rng = SplitMix64(params.seed)
    template = subset.template
    genuine = []
    for a in sorted(subset.elements):
        genuine.append(VaultPoint(template.instantiate(float(a)),
                                  template.instantiate(float(p.eval(a)))))
    used = {pt.x_core for pt in genuine}
    chaff = generate_chaff(
        p, field_mfs, used, params.r - params.t_mfk, params.rho, template, rng
    )
    tagged = [(pt, i < len(genuine)) for i, pt in enumerate(genuine + chaff)]
    tagged = scramble(tagged, rng)
    points = tuple(pt for pt, _ in tagged)
    genuine_indices = tuple(i for i, (_, g) in enumerate(tagged) if g)
    vault = Vault(points, q, params.n, params.r)
    transcript = LockTranscript(
        p,
        genuine_indices,
        tuple(sorted(subset.elements)),
        template,
        params.t_mfk,
        locking_set.subset_count,
    )
    return vault, transcript


def fuzzy_lock(
    key: bytes,
    locking_set: MultiFuzzySet,
    field_mfs: MultiFuzzySet,
    params: LockParams,
) -> tuple[Vault, LockTranscript]:
    """Lock a secret key: encode (with CRC-16), project the locking subset
    onto the polynomial, add chaff, scramble."""
    field = FieldParams(field_mfs.q)
    p = encode_key(key, field, params.k)
    return lock_polynomial(p, locking_set, field_mfs, params)


def match_points(
    vault: Vault,
    probes: list[FuzzyNumber],
    delta: float,
) -> list[tuple[int, int]]:
    """Nearest-neighbor fuzzy matching of probe abscissae against the vault.

    One-to-one: each vault point is claimed at most once, probes processed
    in ascending core order, ties broken toward the smaller x-core.  A probe
    matches only within distance delta (family mismatch is infinitely far).
    """
    families = {p.family for p in probes}
    if len(families) > 1:
        raise ValueError("probes must share a single membership family")
    claimed = set()
    matched = []
    for probe in sorted(probes, key=lambda f: f.defuzzify()):
        best = None
        best_dist = None
        for idx, pt in enumerate(vault.points):
            if idx in claimed:
                continue
            d = distance(pt.x, probe)
            if d > delta:
                continue
            if best is None or d < best_dist or (
                d == best_dist and pt.x_core < vault.points[best].x_core
            ):
                best, best_dist = idx, d
        if best is not None:
            claimed.add(best)
            pt = vault.points[best]
            matched.append((pt.x_core, pt.y_core))
    return matched


def search_key(
    matched: list[tuple[int, int]],
    q: int,
    k: int,
    key_len: int,
    effort_cap: int = 100_000,
    diagnostics: UnlockDiagnostics | None = None,
) -> UnlockResult:
    """Search k-subsets of matched points in lexicographic order, accepting
    the first candidate polynomial whose decoded key passes the CRC check."""
    if effort_cap <= 0:
        raise ValueError("effort cap must be positive")
    if diagnostics is None:
        diagnostics = UnlockDiagnostics(matched=len(matched))
    if len(matched) < k:
        return UnlockResult(None, diagnostics)
    field = FieldParams(q)
    for combo in itertools.combinations(matched, k):
        if diagnostics.subsets_tried >= effort_cap:
            break
        diagnostics.subsets_tried += 1
        diagnostics.effort += k
        candidate = lagrange_interpolate(list(combo), field)
        material = decode_key(candidate, field, key_len)
        if material is not None:
            return UnlockResult(material.key_bytes, diagnostics)
    return UnlockResult(None, diagnostics)


def fuzzy_unlock(
    vault: Vault,
    unlocking_set: MultiFuzzySet,
    k_subset: int,
    delta: float,
    key_len: int,
    effort_cap: int = 100_000,
) -> UnlockResult:
    """Attempt to recover the key from the vault with an unlocking set.

    Fuzzifies the chosen unlocking subset, matches against the vault, then
    runs the k-subset search over the matches.
    """
    if effort_cap <= 0:
        raise ValueError("effort cap must be positive")
    if unlocking_set.kind not in (UNLOCKING, LOCKING):
        raise ValueError(f"expected an unlocking set, got kind={unlocking_set.kind!r}")
    probes = unlocking_set.select_subset(k_subset)
    matched = match_points(vault, probes, delta)
    diagnostics = UnlockDiagnostics(matched=len(matched))
    return search_key(matched, vault.q, vault.n + 1, key_len, effort_cap, diagnostics)
