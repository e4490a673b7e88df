import random

import pytest
from fastapi.testclient import TestClient

from occupation.service import SessionStore, create_app
from occupation.formats import game_to_document
from occupation.classic import embed_nim


@pytest.fixture
def client():
    with TestClient(create_app(SessionStore())) as c:
        yield c


def create(client, **body):
    response = client.post("/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestCreateSession:
    def test_nim_reports_winnable_start(self, client):
        view = create(client, variant="nim", piles=[3, 5])
        assert view["truth_start"] == 1
        assert view["status"] == "in_progress"
        assert view["to_move"] == "human"
        assert view["state"] == {"piles": [3, 5]}

    def test_nim_reports_unwinnable_start(self, client):
        view = create(client, variant="nim", piles=[1, 1])
        assert view["truth_start"] == 0

    def test_engine_first_gadget_opens_with_witness_pile(self, client):
        view = create(client, variant="gadget", weights=[1, 2], target=3, first="engine")
        assert view["truth_start"] == 1
        first = view["history"][0]
        assert first["by"] == "engine"
        move = first["move"]
        assert move["family"] == "O1"
        # 2n * t_j for a pile in the only witness {1, 2}.
        assert move["l_take"] == 4 * [1, 2][move["pile"] - 1]
        assert view["to_move"] == "human"

    def test_invalid_parameters(self, client):
        assert client.post("/sessions", json={"variant": "nim"}).status_code == 400
        assert client.post("/sessions", json={"variant": "nim", "piles": [-1]}).status_code == 400
        assert client.post("/sessions", json={"variant": "zap", "piles": [1]}).status_code == 400
        assert (
            client.post("/sessions", json={"variant": "gadget", "weights": [0], "target": 1}).status_code
            == 400
        )

    def test_cap_exceeded(self, client):
        assert (
            client.post("/sessions", json={"variant": "nim", "piles": [60, 60]}).status_code == 400
        )

    def test_explicit_session(self, client):
        doc = game_to_document(embed_nim([2]))
        view = create(client, variant="explicit", game=doc)
        assert view["state"]["position"] == ["p1_0", "p1_1"]
        assert len(view["legal_moves"]) == 3


class TestGetState:
    def test_fresh_nim_2_lists_two_moves(self, client):
        view = create(client, variant="nim", piles=[2])
        got = client.get(f"/sessions/{view['id']}").json()
        assert got["legal_moves"] == [{"pile": 1, "take": 1}, {"pile": 1, "take": 2}]

    def test_finished_session_has_no_moves(self, client):
        view = create(client, variant="nim", piles=[3])
        done = client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 3}).json()
        assert done["status"] == "human_won"
        got = client.get(f"/sessions/{view['id']}").json()
        assert got["legal_moves"] == []
        assert got["status"] == "human_won"

    def test_unknown_session(self, client):
        assert client.get("/sessions/nope").status_code == 404


class TestSubmitMove:
    def test_mirror_nim_plays_out_to_loss(self, client):
        view = create(client, variant="nim", piles=[1, 1])
        response = client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 1})
        body = response.json()
        assert body["engine_reply"] == {"pile": 2, "take": 1}
        assert body["state"] == {"piles": [0, 0]}
        assert body["status"] == "human_lost"

    def test_taking_everything_wins(self, client):
        view = create(client, variant="nim", piles=[3])
        body = client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 3}).json()
        assert body["status"] == "human_won"
        assert body["engine_reply"] is None

    def test_gadget_o2_rejected_at_level_counters(self, client):
        view = create(client, variant="gadget", weights=[1, 2], target=3)
        response = client.post(f"/sessions/{view['id']}/moves", json={"family": "O2"})
        assert response.status_code == 422
        assert response.json()["detail"]["clause"] == "successor-not-in-S"

    def test_overdraw_is_not_a_subset(self, client):
        view = create(client, variant="nim", piles=[2])
        response = client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 5})
        assert response.status_code == 422
        assert response.json()["detail"]["clause"] == "not-a-subset"

    def test_three_in_subtraction_not_in_family(self, client):
        view = create(client, variant="subtraction", piles=[4])
        response = client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 3})
        assert response.status_code == 422
        assert response.json()["detail"]["clause"] == "not-in-O"

    def test_rejected_move_leaves_state_unchanged(self, client):
        view = create(client, variant="nim", piles=[2])
        client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 5})
        got = client.get(f"/sessions/{view['id']}").json()
        assert got["state"] == {"piles": [2]}
        assert got["history"] == []

    def test_submit_after_finish_conflicts(self, client):
        view = create(client, variant="nim", piles=[3])
        client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 3})
        response = client.post(f"/sessions/{view['id']}/moves", json={"pile": 1, "take": 1})
        assert response.status_code == 409

    def test_malformed_body(self, client):
        view = create(client, variant="nim", piles=[3])
        response = client.post(
            f"/sessions/{view['id']}/moves",
            content=b"[1,2]",
            headers={"content-type": "application/json"},
        )
        assert response.status_code == 400

    def test_unknown_session(self, client):
        assert client.post("/sessions/nope/moves", json={"pile": 1, "take": 1}).status_code == 404


class TestDeleteSession:
    def test_delete(self, client):
        view = create(client, variant="nim", piles=[1])
        assert client.delete(f"/sessions/{view['id']}").status_code == 200
        assert client.get(f"/sessions/{view['id']}").status_code == 404

    def test_double_delete(self, client):
        view = create(client, variant="nim", piles=[1])
        client.delete(f"/sessions/{view['id']}")
        assert client.delete(f"/sessions/{view['id']}").status_code == 404


class TestEngineOptimality:
    def play_random_human(self, client, seed, piles):
        rng = random.Random(seed)
        view = create(client, variant="nim", piles=piles)
        while view["status"] == "in_progress":
            move = rng.choice(view["legal_moves"])
            view = client.post(f"/sessions/{view['id']}/moves", json=move).json()
        return view

    @pytest.mark.parametrize("seed", range(12))
    def test_engine_never_loses_from_winning_position(self, client, seed):
        # truth([1,2,3]) = 0: the human moves first from a lost position.
        final = self.play_random_human(client, seed, [1, 2, 3])
        assert final["status"] == "human_lost"

    def test_engine_converts_winning_start(self, client):
        # truth([2]) = 1 and the engine moves first: it takes the whole pile.
        view = create(client, variant="nim", piles=[2], first="engine")
        assert view["status"] == "human_lost"
        assert view["history"][0]["move"] == {"pile": 1, "take": 2}


class TestExpiry:
    def test_idle_sessions_expire(self):
        store = SessionStore(ttl_seconds=0.0)
        session = store.create("nim", piles=[1])
        import time

        time.sleep(0.01)
        with TestClient(create_app(store)) as client:
            assert client.get(f"/sessions/{session.id}").status_code == 404
