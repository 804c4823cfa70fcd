import numpy as np
import pytest

from farsiocr.dataset import (
    ALPHABET,
    CODE_BITS,
    Dataset,
    DatasetParseError,
    LabelRangeError,
    N_CLASSES,
    Sample,
    decode_output,
    encode_label,
    label_for,
    load,
    parse_record,
    save,
    split,
    as_patterns,
)
from farsiocr.skeleton import Glyph


def brute_force_decode(outputs: np.ndarray) -> int:
    """Exhaustive nearest-code scan, the oracle for decode_output."""
    best, best_d = 0, float("inf")
    for index in range(N_CLASSES):
        code = np.array([(index >> (4 - b)) & 1 for b in range(5)], dtype=float)
        d = float(((code - outputs) ** 2).sum())
        if d < best_d:
            best, best_d = index, d
    return best


def make_glyph(rng=None, tag=0):
    bits = np.zeros((30, 30), dtype=np.uint8)
    if rng is None:
        bits[0, tag % 30] = 1
        bits[5, (tag * 7) % 30] = 1
    else:
        bits = (rng.random((30, 30)) < 0.2).astype(np.uint8)
        bits[0, int(rng.integers(0, 30))] = 1
    return Glyph(bits)


def make_dataset(n, seed=0):
    rng = np.random.default_rng(seed)
    return Dataset(
        [Sample(int(rng.integers(0, N_CLASSES)), make_glyph(rng), writer=f"w{i % 3}", source="synthetic")
         for i in range(n)]
    )


class TestAlphabet:
    def test_has_32_letters(self):
        assert N_CLASSES == 32
        assert len({d for d, _ in ALPHABET}) == 32  # all displays distinct

    def test_alef_first(self):
        assert ALPHABET[0][1] == "alef"

    def test_label_for_range(self):
        assert label_for(31).display == ALPHABET[31][0]
        with pytest.raises(LabelRangeError):
            label_for(32)
        with pytest.raises(LabelRangeError):
            label_for(-1)


class TestCoding:
    def test_zero(self):
        assert encode_label(0).tolist() == [0, 0, 0, 0, 0]

    def test_thirty_one(self):
        assert encode_label(31).tolist() == [1, 1, 1, 1, 1]

    def test_five(self):
        assert encode_label(5).tolist() == [0, 0, 1, 0, 1]

    def test_injective(self):
        codes = {tuple(encode_label(i)) for i in range(N_CLASSES)}
        assert len(codes) == N_CLASSES

    def test_decode_own_code(self):
        for index in range(N_CLASSES):
            assert decode_output(encode_label(index)).index == index

    def test_decode_tie_breaks_low(self):
        assert decode_output(np.full(5, 0.5)).index == 0

    def test_decode_example_vector(self):
        outputs = np.array([0.9, 0.1, 0.1, 0.2, 0.85])
        assert brute_force_decode(outputs) == 17
        assert decode_output(outputs).index == 17  # code 10001

    def test_decode_matches_brute_force(self):
        rng = np.random.default_rng(14)
        for _ in range(200):
            outputs = rng.random(5)
            assert decode_output(outputs).index == brute_force_decode(outputs)

    def test_decode_wrong_length(self):
        with pytest.raises(ValueError):
            decode_output(np.zeros(4))

    def test_noise_robustness(self):
        rng = np.random.default_rng(15)
        for index in range(N_CLASSES):
            code = encode_label(index)
            for _ in range(50):
                noise = rng.uniform(-0.25, 0.25, size=CODE_BITS)
                noise[np.abs(noise) >= 0.25] = 0.24
                assert decode_output(code + noise).index == index


class TestPersistence:
    def test_empty_round_trip(self, tmp_path):
        path = tmp_path / "empty.fds"
        save(Dataset([]), path)
        assert len(load(path)) == 0

    def test_round_trip_identity(self, tmp_path):
        ds = make_dataset(40, seed=1)
        path = tmp_path / "ds.fds"
        save(ds, path)
        back = load(path)
        assert len(back) == len(ds)
        for a, b in zip(ds, back):
            assert a.label_index == b.label_index
            assert a.writer == b.writer
            assert a.source == b.source
            assert np.array_equal(a.glyph.bits, b.glyph.bits)

    def test_label_out_of_range(self):
        bits = "1" + "0" * 899
        with pytest.raises(LabelRangeError):
            parse_record(f"40|w|scan|{bits}", 3)

    def test_malformed_field_count(self):
        with pytest.raises(DatasetParseError, match="line 7"):
            parse_record("1|w|scan", 7)

    def test_bad_glyph_chars(self):
        bits = "2" + "0" * 899
        with pytest.raises(DatasetParseError, match="line 2"):
            parse_record(f"1|w|scan|{bits}", 2)

    def test_short_glyph(self):
        with pytest.raises(DatasetParseError):
            parse_record("1|w|scan|0101", 1)

    def test_load_reports_line_numbers(self, tmp_path):
        ds = make_dataset(2, seed=2)
        path = tmp_path / "bad.fds"
        save(ds, path)
        with open(path, "a", encoding="utf-8") as f:
            f.write("not a record\n")
        with pytest.raises(DatasetParseError, match="line 3"):
            load(path)


class TestSplit:
    def test_250_samples_split_125_125(self):
        ds = make_dataset(250, seed=3)
        train, test = split(ds, 0.5, seed=0)
        assert len(train) == 125 and len(test) == 125

    def test_deterministic(self):
        ds = make_dataset(30, seed=4)
        a_train, a_test = split(ds, 0.4, seed=9)
        b_train, b_test = split(ds, 0.4, seed=9)
        assert [s.label_index for s in a_train] == [s.label_index for s in b_train]
        assert [np.array_equal(x.glyph.bits, y.glyph.bits) for x, y in zip(a_test, b_test)]

    def test_round_half_up(self):
        ds = make_dataset(3, seed=5)
        train, test = split(ds, 0.5, seed=1)
        assert len(train) == 2 and len(test) == 1

    def test_partition(self):
        ds = make_dataset(17, seed=6)
        train, test = split(ds, 0.3, seed=2)
        assert len(train) + len(test) == len(ds)
        seen = {id(s) for s in train} | {id(s) for s in test}
        assert seen == {id(s) for s in ds}

    def test_fraction_validated(self):
        ds = make_dataset(4, seed=7)
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ValueError):
                split(ds, bad, seed=0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            split(Dataset([]), 0.5, seed=0)


class TestSampleType:
    def test_rejects_empty_glyph(self):
        with pytest.raises(ValueError):
            Sample(0, Glyph(np.zeros((30, 30), dtype=np.uint8)))

    def test_rejects_bad_source(self):
        with pytest.raises(ValueError):
            Sample(0, make_glyph(tag=1), source="camera")

    def test_rejects_delimiter_in_writer(self):
        with pytest.raises(ValueError):
            Sample(0, make_glyph(tag=1), writer="a|b")

    def test_label_property(self):
        s = Sample(14, make_glyph(tag=2))
        assert s.label.display == ALPHABET[14][0]


class TestAsPatterns:
    def test_shapes(self):
        ds = make_dataset(6, seed=8)
        pats = as_patterns(ds)
        assert all(x.shape == (900,) and d.shape == (5,) for x, d in pats)
        pooled = as_patterns(ds, pooled=True)
        assert all(x.shape == (100,) for x, _ in pooled)

    def test_targets_are_codes(self):
        ds = make_dataset(6, seed=9)
        for s, (_, d) in zip(ds, as_patterns(ds)):
            assert np.array_equal(d, encode_label(s.label_index))
