import json

import pytest

from cmlinv.audit import ArtifactCache, compute_hash
from cmlinv.errors import CacheCorrupted


def test_put_and_get(tmp_path):
    """Records survive a reload from disk"""
    path = str(tmp_path / "artifacts.jsonl")
    cache = ArtifactCache(path)
    cache.put("class_polynomial", {"D": 4}, [1, -1728])
    cache.put("fundamental_unit", {"d": 13}, [3, 1, 2])
    assert cache.get("class_polynomial", {"D": 4}) == [1, -1728]

    fresh = ArtifactCache(path)
    assert fresh.get("fundamental_unit", {"d": 13}) == [3, 1, 2]
    assert fresh.get("fundamental_unit", {"d": 5}) is None
    assert fresh.verify() == 2
    assert fresh.stats() == {"class_polynomial": 1, "fundamental_unit": 1}


def test_put_is_idempotent(tmp_path):
    """A key already present is not appended twice"""
    path = tmp_path / "artifacts.jsonl"
    cache = ArtifactCache(str(path))
    cache.put("ideal_generator", {"d": -39, "a": 2, "b": 1}, [5, -1, 2, 4])
    cache.put("ideal_generator", {"d": -39, "a": 2, "b": 1}, [5, -1, 2, 4])
    assert len(path.read_text().splitlines()) == 1


def test_get_or_compute(tmp_path):
    """The producer runs only on a miss"""
    cache = ArtifactCache(str(tmp_path / "artifacts.jsonl"))
    calls = []

    def produce():
        calls.append(1)
        return [1, 3491750, -5151296875, 12771880859375]

    a = cache.get_or_compute("class_polynomial", {"D": 23}, produce)
    b = cache.get_or_compute("class_polynomial", {"D": 23}, produce)
    assert a == b
    assert len(calls) == 1


def test_checksum_mismatch(tmp_path):
    """An edited value no longer matches its checksum"""
    path = tmp_path / "artifacts.jsonl"
    cache = ArtifactCache(str(path))
    cache.put("class_polynomial", {"D": 4}, [1, -1728])
    rec = json.loads(path.read_text())
    rec["value"] = [1, -1727]
    path.write_text(json.dumps(rec) + "\n")
    with pytest.raises(CacheCorrupted) as exc:
        ArtifactCache(str(path)).verify()
    assert exc.value.details["line"] == 1
    with pytest.raises(CacheCorrupted):
        ArtifactCache(str(path)).get("class_polynomial", {"D": 4})


def test_unparseable_record(tmp_path):
    """Garbage lines are reported with their line number"""
    path = tmp_path / "artifacts.jsonl"
    path.write_text("{not json\n")
    with pytest.raises(CacheCorrupted) as exc:
        ArtifactCache(str(path)).stats()
    assert exc.value.details["line"] == 1


def test_hash_is_key_order_independent():
    """Canonical JSON makes the checksum independent of dict order"""
    assert compute_hash({"a": 1, "b": 2}) == compute_hash({"b": 2, "a": 1})
    assert compute_hash({"a": 1}) != compute_hash({"a": 2})
