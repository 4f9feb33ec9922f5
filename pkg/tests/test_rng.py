"""Random stream correctness: reference vectors, distributions, stability."""

import math

from gridhack.rng import Rng, derive_seed, text_salt

MASK = (1 << 64) - 1


def _ref_splitmix64(state):
    # independent transcription of the published splitmix64 step
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, (z ^ (z >> 31)) & MASK


class _RefXoshiro:
    # independent transcription of xoshiro256** (Blackman/Vigna)
    def __init__(self, seed):
        s = seed & MASK
        self.state = []
        for _ in range(4):
            s, v = _ref_splitmix64(s)
            self.state.append(v)

    @staticmethod
    def _rotl(x, k):
        return ((x << k) | (x >> (64 - k))) & MASK

    def next(self):
        s0, s1, s2, s3 = self.state
        result = (self._rotl((s1 * 5) & MASK, 7) * 9) & MASK
        t = (s1 << 17) & MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = self._rotl(s3, 45)
        self.state = [s0, s1, s2, s3]
        return result


def test_u64_matches_reference_generator():
    for seed in (0, 1, 42, 2**63, 0xDEADBEEF):
        ref = _RefXoshiro(seed)
        rng = Rng(seed)
        for _ in range(200):
            assert rng.u64() == ref.next()


def test_streams_are_reproducible_and_seed_sensitive():
    a = [Rng(7).u64() for _ in range(8)]
    b = [Rng(7).u64() for _ in range(8)]
    c = [Rng(8).u64() for _ in range(8)]
    assert a == b
    assert a != c


def test_text_salt_frozen_values():
    # FNV-1a reference values; frozen so serialized seeds stay stable
    assert text_salt("") == 0xCBF29CE484222325
    assert text_salt("a") == 0xAF63DC4C8601EC8C
    assert text_salt("compile:oracle") == text_salt("compile:oracle")
    assert text_salt("episode:x") != text_salt("compile:x")


def test_derive_seed_decorrelates():
    seen = {derive_seed(5, text_salt(f"salt{i}")) for i in range(100)}
    assert len(seen) == 100
    assert derive_seed(5, 1) != derive_seed(6, 1)


def test_random_unit_interval():
    rng = Rng(3)
    vals = [rng.random() for _ in range(10000)]
    assert all(0.0 <= v < 1.0 for v in vals)
    mean = sum(vals) / len(vals)
    assert abs(mean - 0.5) < 0.02


def test_randrange_and_randint_bounds():
    rng = Rng(11)
    for _ in range(2000):
        assert 0 <= rng.randrange(7) < 7
        assert 3 <= rng.randint(3, 9) <= 9
    assert rng.randint(4, 4) == 4


def test_randrange_uniformity():
    rng = Rng(13)
    counts = [0] * 10
    n = 100000
    for _ in range(n):
        counts[rng.randrange(10)] += 1
    expect = n / 10
    sigma = math.sqrt(n * 0.1 * 0.9)
    for c in counts:
        assert abs(c - expect) < 4 * sigma


def test_chance_extremes_and_frequency():
    rng = Rng(17)
    assert not any(rng.chance(0) for _ in range(1000))
    assert all(rng.chance(100) for _ in range(1000))
    hits = sum(rng.chance(30) for _ in range(20000))
    assert abs(hits / 20000 - 0.30) < 0.02


def test_shuffle_preserves_multiset():
    rng = Rng(19)
    for _ in range(200):
        items = [1, 1, 2, 3, 5, 8, 13]
        shuffled = items[:]
        rng.shuffle(shuffled)
        assert sorted(shuffled) == sorted(items)


def test_roll_support_and_mean():
    rng = Rng(23)
    totals = [rng.roll(2, 6) for _ in range(50000)]
    assert min(totals) == 2 and max(totals) == 12
    assert set(totals) == set(range(2, 13))
    mean = sum(totals) / len(totals)
    assert abs(mean - 7.0) < 0.05


def test_fork_is_independent():
    parent = Rng(29)
    child = parent.fork()
    a = [child.u64() for _ in range(4)]
    b = [parent.u64() for _ in range(4)]
    assert a != b
    # forking twice from the same parent state gives distinct children
    p1, p2 = Rng(31), Rng(31)
    c1 = p1.fork()
    p2.u64()
    c2 = p2.fork()
    assert [c1.u64() for _ in range(4)] != [c2.u64() for _ in range(4)]
