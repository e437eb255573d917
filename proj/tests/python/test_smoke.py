import itertools
import os

import pytest

import grandkit

FIXTURES = os.environ.get("GRANDKIT_FIXTURE_DIR", os.path.join(os.path.dirname(__file__), "..", "fixtures"))


def test_query_counts():
    assert grandkit.count_queries(128, 64) == 158745
    assert grandkit.count_queries(128, 64, 6) == 116320
    assert grandkit.count_queries(128, 96) == 3696096
    assert grandkit.count_queries(128, 128) == 53376275
    assert grandkit.count_queries(128, 8256) == 2**128


def test_partitions():
    assert grandkit.partitions_of(10, 3, 128) == [[7, 2, 1], [6, 3, 1], [5, 4, 1], [5, 3, 2]]
    assert grandkit.pattern_stream(3, 3) == [[], [1], [2], [3], [2, 1]]
    assert grandkit.lambda_max(10, 2, []) == 4


def test_hamming_codebook():
    code = grandkit.hamming_7_4()
    assert (code.n, code.k) == (7, 4)
    words = {tuple(code.encode(list(u))) for u in itertools.product([0, 1], repeat=4)}
    assert len(words) == 16
    assert all(code.is_codeword(list(w)) for w in words)
    with open(os.path.join(FIXTURES, "hamming74_G.hex")) as f:
        from_file = grandkit.LinearCode.from_generator_hex(f.read())
    assert from_file.k == 4
    with pytest.raises(ValueError):
        code.encode([1, 0])
    with pytest.raises(grandkit.ParseError):
        grandkit.LinearCode.from_generator_hex("1 4\nzz\n")


def test_decoders():
    code = grandkit.hamming_7_4()
    llrs = [4.0] * 7
    out = grandkit.orbgrand_decode(llrs, code, lw_max=28)
    assert out["found"] and out["queries"] == 1
    llrs[4] = -0.2
    out = grandkit.orbgrand_decode(llrs, code, lw_max=28)
    assert out["solution_lw"] == 1 and out["queries"] == 2
    assert out == grandkit.orbgrand_decode(llrs, code, lw_max=28, check="direct")
    out = grandkit.grandab_decode([0, 0, 1, 0, 0, 0, 0], code, ab=1)
    assert out["found"] and out["queries"] == 4
    assert grandkit.orbgrand_decode(llrs, code, lw_max=0)["abandoned"]


def test_channel_and_cycles():
    assert grandkit.noise_variance(10.0) == pytest.approx(0.1)
    assert grandkit.quantize([0.3, -1000.0], prescale=1.0) == [0.25, -1.875]
    code = grandkit.ca_polar()
    a = grandkit.make_frame(code, 3.0, seed=5, index=2)
    b = grandkit.make_frame(code, 3.0, seed=5, index=2)
    assert a == b and len(a["llrs"]) == 128
    assert code.is_codeword(a["codeword"])
    assert grandkit.worst_case_cycles(lw_max=1) == 9
    assert grandkit.worst_case_cycles() == 4227
    assert grandkit.worst_case_cycles(overhead=8) == 4226
    assert grandkit.steps_for_lw(10) == 2


def test_run_fer():
    code = grandkit.random_linear(16, 8, seed=1)
    rows = grandkit.run_fer(code, [100.0], lw_max=20, max_frames=2000)
    assert rows[0]["frames"] == 2000 and rows[0]["frame_errors"] == 0
    assert rows[0]["avg_queries"] == 1.0
    one = grandkit.run_fer(code, [2.0, 4.0], lw_max=40, p_max=None, max_frames=500, min_errors=20, seed=3)
    many = grandkit.run_fer(code, [2.0, 4.0], lw_max=40, p_max=None, max_frames=500, min_errors=20, seed=3, workers=3)
    for r1, r2 in zip(one, many):
        r1.pop("elapsed_s")
        r2.pop("elapsed_s")
    assert one == many
