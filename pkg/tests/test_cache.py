from __future__ import annotations

import json

import pytest

from greenadams import adams, cache
from greenadams.greenring import GreenContext


@pytest.fixture
def built(tmp_path):
    ctx = GreenContext(2, 3)
    cache.build(ctx, 4)
    adams.adams_lambda(ctx, 5, ctx.V(3))
    path = tmp_path / "c8.json"
    cache.save(ctx, path)
    return ctx, path


def test_round_trip(built):
    ctx, path = built
    fresh = GreenContext(2, 3)
    res = cache.load(fresh, path, fraction=1.0)
    assert res.ok and res.checked == res.total
    assert cache.dump(fresh) == cache.dump(ctx)


def test_tensor_section_is_full_square(built):
    _, path = built
    doc = json.loads(path.read_text())
    assert len(doc["tensor_table"]) == 64
    assert doc["tensor_table"]["2,5"] == doc["tensor_table"]["5,2"]
    assert doc["tensor_table"]["3,3"] == [1, 0, 0, 2, 0, 0, 0, 0]


def test_file_is_deterministic(built, tmp_path):
    ctx, path = built
    other = tmp_path / "again.json"
    cache.save(ctx, other)
    assert other.read_bytes() == path.read_bytes()


def _tamper(path, section, key, delta=1):
    doc = json.loads(path.read_text())
    doc[section][key][0] += delta
    path.write_text(json.dumps(doc))


def test_corrupted_entry_is_rejected(built):
    _, path = built
    _tamper(path, "lambda_table", "5,2")
    res = cache.validate(GreenContext(2, 3), path)
    assert not res.ok
    assert len(res.mismatches) == 1
    assert res.mismatches[0].startswith("lambda_table[5,2]")
    with pytest.raises(cache.CacheMismatch):
        cache.load(GreenContext(2, 3), path, fraction=1.0)


def test_mirrored_tensor_entries_must_agree(built):
    _, path = built
    _tamper(path, "tensor_table", "2,5")
    with pytest.raises(cache.CacheError, match="disagree"):
        cache.read(GreenContext(2, 3), path)


def test_partial_validation_samples(built):
    _, path = built
    res = cache.validate(GreenContext(2, 3), path, fraction=0.1, seed=3)
    assert res.ok
    assert 0 < res.checked < res.total


def test_wrong_context(built):
    _, path = built
    with pytest.raises(cache.CacheError, match="p=2, q=8"):
        cache.load(GreenContext(3, 2), path)


@pytest.mark.parametrize(
    "text",
    ["not json", "[]", '{"version": 99, "p": 2, "q": 8}',
     '{"version": 1, "p": 2, "q": 8, "lambda_table": {"1": [1,0,0,0,0,0,0,0]}}',
     '{"version": 1, "p": 2, "q": 8, "lambda_table": {"1,1": [1,0]}}',
     '{"version": 1, "p": 2, "q": 8, "s_table": []}'],
)
def test_malformed_files(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(cache.CacheError):
        cache.load(GreenContext(2, 3), path)


def test_missing_file(tmp_path):
    with pytest.raises(cache.CacheError):
        cache.load(GreenContext(2, 3), tmp_path / "absent.json")


def test_out_of_range_entry_is_not_recomputable(built):
    _, path = built
    doc = json.loads(path.read_text())
    doc["lambda_table"]["9,1"] = [0] * 8
    path.write_text(json.dumps(doc))
    res = cache.validate(GreenContext(2, 3), path)
    assert any("not recomputable" in m for m in res.mismatches)


def test_build_skips_out_of_cap_powers(tmp_path):
    ctx = GreenContext(2, 3, dim_cap=100)
    cache.build(ctx, 8)
    doc = cache.dump(ctx)
    assert "2,8" in doc["s_table"]
    assert "8,8" not in doc["s_table"]
