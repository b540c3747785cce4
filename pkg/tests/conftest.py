import socket
import threading
import time

import pytest

from trymove.classifier.frames import build_dataset
from trymove.classifier.network import Hyper, build_default_model, train

# The default training recipe is expensive (~30 s), so it runs once per
# session and is shared by the classifier gate, pipeline and acceptance
# tests. Seeds follow the documented recipe: train set 11, held-out 99.
TRAIN_SEED = 11
HELDOUT_SEED = 99
TRAIN_PER_CLASS = 200
HELDOUT_PER_CLASS = 50


@pytest.fixture(scope="session")
def default_recipe_model():
    dataset = build_dataset(TRAIN_PER_CLASS, TRAIN_SEED)
    model = build_default_model(seed=0)
    model, losses = train(model, dataset, Hyper(epochs=10, seed=0))
    return model, losses


@pytest.fixture(scope="session")
def heldout_frames():
    return build_dataset(HELDOUT_PER_CLASS, HELDOUT_SEED)


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="session")
def live_server():
    """Real uvicorn server on an ephemeral port (needed for SSE streaming)."""
    import uvicorn

    from trymove.service import create_app

    port = _free_port()
    config = uvicorn.Config(
        create_app(), host="127.0.0.1", port=port, log_level="error"
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("service did not start")
        time.sleep(0.02)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)
