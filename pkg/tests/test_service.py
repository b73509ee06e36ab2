import hashlib
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from helpers import corpus_of, words
from smellex.bootstrap import BootstrapConfig, BootstrapEngine
from smellex.service import create_app

PATTERN_A = "[<adj>] <smell_noun> _of_ __DET* [<noun>]"


def _world():
    harvesting = corpus_of(
        "h",
        {
            "h0": [
                words("the faint aroma of tar filled the room", "DET ADJ NOUN ADP NOUN VERB DET NOUN"),
                words("he walked to the market", "PRON VERB ADP DET NOUN"),
                words("a sweet aroma of brine lingered", "DET ADJ NOUN ADP NOUN VERB"),
                words("the sour aroma of peat rose", "DET ADJ NOUN ADP NOUN VERB"),
            ]
        },
    )
    validation = corpus_of(
        "v",
        {
            "v0": [
                words("the %s aroma of tar rose" % adj, "DET ADJ NOUN ADP NOUN VERB")
                for adj in "a1 a2 a3 a4 a5 a6 a7 a8 a9 a10 a11 a12".split()
            ]
        },
    )
    return harvesting, validation


@pytest.fixture
def state_dir(tmp_path):
    harvesting, validation = _world()
    engine = BootstrapEngine.create(
        tmp_path / "state", BootstrapConfig(seed=2), harvesting, validation
    )
    engine.start_cycle()
    return tmp_path / "state"


@pytest.fixture
def client(state_dir):
    engine = BootstrapEngine.load(state_dir)
    return TestClient(create_app(engine))


def _post_pattern(client, source=PATTERN_A, kind="extraction", rid=None):
    payload = {"source": source, "kind": kind}
    if rid:
        payload["request_id"] = rid
    return client.post("/api/patterns", json=payload)


def _state_hash(state_dir):
    digest = hashlib.sha256()
    for path in sorted(Path(state_dir).iterdir()):
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    return digest.hexdigest()


def test_cycle_endpoint_reports_draft(client):
    data = client.get("/api/cycle").json()
    assert data["cycle"] == 0
    assert data["phase"] == "review"
    assert data["draft"]["new_unseen_extracts"] == 3
    assert data["history"] == []


def test_extracts_paging_and_sift(client):
    full = client.get("/api/extracts", params={"page_size": 2}).json()
    assert full["total"] == 3
    assert len(full["extracts"]) == 2
    second = client.get("/api/extracts", params={"page_size": 2, "page": 1}).json()
    assert len(second["extracts"]) == 1
    sifted = client.get("/api/extracts", params={"sift": True}).json()
    assert sifted["total"] == 3  # every extract carries the seed keyword here


def test_pattern_post_and_read_your_writes(client):
    created = _post_pattern(client)
    assert created.status_code == 200
    body = created.json()
    pid = body["pattern_id"]
    assert len(body["extracts"]) == 10  # sample capped at config size
    assert body["decision"] == "awaiting-judgments"

    extract = body["extracts"][0]
    res = client.post(
        "/api/judgments",
        json={
            "pattern_id": pid,
            "doc_id": extract["doc_id"],
            "sent_index": extract["sent_index"],
            "label": "tp",
            "judge": "ann1",
            "request_id": "r1",
        },
    )
    assert res.status_code == 200
    assert res.json()["tallies"] == {"tp": 1, "fp": 0, "unknown": 0}

    cands = client.get("/api/candidates").json()
    assert cands[0]["tallies"]["tp"] == 1
    judged = [e for e in cands[0]["extracts"] if e["judgment"] == "tp"]
    assert len(judged) == 1


def test_pattern_parse_error_is_400_with_column(client):
    res = _post_pattern(client, source="[<adj>")
    assert res.status_code == 400
    detail = res.json()["detail"]
    assert detail["column"] == 1
    assert "unbalanced" in detail["message"]


def test_judgment_unknown_pattern_404(client):
    res = client.post(
        "/api/judgments",
        json={
            "pattern_id": "ghost",
            "doc_id": "v0",
            "sent_index": 0,
            "label": "tp",
            "judge": "ann1",
        },
    )
    assert res.status_code == 404


def test_judgment_outside_sample_400(client):
    pid = _post_pattern(client).json()["pattern_id"]
    res = client.post(
        "/api/judgments",
        json={
            "pattern_id": pid,
            "doc_id": "nowhere",
            "sent_index": 3,
            "label": "tp",
            "judge": "ann1",
        },
    )
    assert res.status_code == 400


def test_advance_blocks_on_unjudged_candidate(client):
    pid = _post_pattern(client).json()["pattern_id"]
    res = client.post("/api/cycle/advance", json={})
    assert res.status_code == 409
    assert res.json()["detail"]["blocking"] == [pid]


def test_full_loop_precision_and_advance(client):
    body = _post_pattern(client).json()
    pid = body["pattern_id"]
    labels = ["tp"] * 8 + ["fp"] * 2
    for extract, label in zip(body["extracts"], labels):
        res = client.post(
            "/api/judgments",
            json={
                "pattern_id": pid,
                "doc_id": extract["doc_id"],
                "sent_index": extract["sent_index"],
                "label": label,
                "judge": "ann1",
            },
        )
        assert res.status_code == 200
    cand = client.get("/api/candidates").json()[0]
    assert cand["precision"] == pytest.approx(0.8)
    assert cand["decision"] == "accept-eligible"

    res = client.post("/api/cycle/advance", json={})
    assert res.status_code == 200
    data = res.json()
    assert data["finalized"]["new_extraction_patterns"] == 1
    assert data["cycle"] == 1
    assert data["phase"] == "review"  # auto-chained into the next cycle

    metrics = client.get("/api/metrics").json()
    assert metrics["identification_patterns"] == 1
    growth = metrics["lexicon_growth"]
    assert growth[0]["lexicon_entries"] == 1
    assert growth[-1]["lexicon_entries"] > 1


def test_idempotent_judgment_retry(client):
    body = _post_pattern(client).json()
    pid = body["pattern_id"]
    extract = body["extracts"][0]
    payload = {
        "pattern_id": pid,
        "doc_id": extract["doc_id"],
        "sent_index": extract["sent_index"],
        "label": "tp",
        "judge": "ann1",
        "request_id": "dup-1",
    }
    first = client.post("/api/judgments", json=payload).json()
    second = client.post("/api/judgments", json=payload).json()
    assert first == second
    assert client.get("/api/candidates").json()[0]["tallies"]["tp"] == 1


def test_idempotent_pattern_retry(client):
    first = _post_pattern(client, rid="pat-1").json()
    second = _post_pattern(client, rid="pat-1").json()
    assert first["pattern_id"] == second["pattern_id"]
    assert len(client.get("/api/candidates").json()) == 1


def test_gets_never_mutate_state(state_dir):
    engine = BootstrapEngine.load(state_dir)
    client = TestClient(create_app(engine))
    _post_pattern(client)
    before = _state_hash(state_dir)
    client.get("/api/cycle")
    client.get("/api/extracts", params={"sift": True})
    client.get("/api/candidates")
    client.get("/api/metrics")
    assert _state_hash(state_dir) == before


def test_extracts_carry_span_labels(client):
    extract = client.get("/api/extracts").json()["extracts"][0]
    assert extract["span_labels"] == ["feature"]
    assert len(extract["spans"]) == 1


def test_candidate_sample_span_labels(client):
    body = _post_pattern(client).json()
    assert body["capture_classes"] == {"0": "adj", "1": "noun"}
    extract = body["extracts"][0]
    assert extract["span_labels"][0] == "match"
    assert set(extract["span_labels"][1:]) <= {"adj", "noun", "verb", "capture"}
    assert len(extract["span_labels"]) == len(extract["spans"])


def test_preview_endpoint_parses_and_matches(client):
    res = client.post("/api/patterns/preview", json={"source": PATTERN_A})
    assert res.status_code == 200
    data = res.json()
    assert data["match_count"] == 3  # every current extract is a template match
    first = data["matches"][0]
    assert first["span_labels"][0] == "match"

    res = client.post("/api/patterns/preview", json={"source": "[<adj>"})
    assert res.status_code == 400
    assert res.json()["detail"]["column"] == 1

    res = client.post("/api/patterns/preview", json={"source": "_zanzibar_"})
    assert res.status_code == 200
    assert res.json()["match_count"] == 0


def test_preview_does_not_mutate_state(state_dir):
    engine = BootstrapEngine.load(state_dir)
    client = TestClient(create_app(engine))
    before = _state_hash(state_dir)
    client.post("/api/patterns/preview", json={"source": PATTERN_A})
    assert _state_hash(state_dir) == before
    assert client.get("/api/candidates").json() == []


def test_advance_without_active_cycle_409(state_dir):
    engine = BootstrapEngine.load(state_dir)
    client = TestClient(create_app(engine))
    client.post("/api/cycle/advance", json={"auto_start": False})
    res = client.post("/api/cycle/advance", json={"auto_start": False})
    assert res.status_code == 409
