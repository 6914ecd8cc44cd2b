from __future__ import annotations

import http.server
import json
import subprocess
import sys
import threading

import numpy as np
import pytest

from mistforge.code_model import Language, parse
from mistforge.errors import InputError, ProtocolError, TransportError
from mistforge.model_interface import (
    ClassifierVerdict,
    TrainConfig,
    classify_remote,
    cross_entropy_loss_and_grad,
    fine_tune_reference,
    train_reference,
)
from mistforge.style_profile import OriginLabel


class TestVerdict:
    def test_threshold_at_half(self):
        assert ClassifierVerdict(0.5, 0.5).predicted is OriginLabel.LLM
        assert ClassifierVerdict(0.49, 0.51).predicted is OriginLabel.LLM
        assert ClassifierVerdict(0.51, 0.49).predicted is OriginLabel.HUMAN

    def test_prob_for(self):
        verdict = ClassifierVerdict(0.3, 0.7)
        assert verdict.prob_for(OriginLabel.LLM) == 0.7
        assert verdict.prob_for(OriginLabel.HUMAN) == 0.3


class TestGradient:
    def test_matches_central_finite_differences(self):
        rng = np.random.default_rng(3)
        features = rng.normal(size=(12, 6))
        labels = (rng.random(12) > 0.5).astype(float)
        weights = rng.normal(size=7) * 0.5
        l2 = 1e-3
        _, grad = cross_entropy_loss_and_grad(weights, features, labels, l2)
        eps = 1e-6
        for j in range(len(weights)):
            up = weights.copy()
            up[j] += eps
            down = weights.copy()
            down[j] -= eps
            loss_up, _ = cross_entropy_loss_and_grad(up, features, labels, l2)
            loss_down, _ = cross_entropy_loss_and_grad(down, features, labels, l2)
            fd = (loss_up - loss_down) / (2 * eps)
            assert abs(fd - grad[j]) < 1e-5


def _separable_corpus():
    llm_sources = [f"def helper_fn(a):\n    return a + {k}\n" for k in range(8)]
    human_sources = [f"def g(b):\n    return b * {k}\n" for k in range(8)]
    corpus = []
    for src in llm_sources:
        corpus.append((parse(src, Language.PYTHON), OriginLabel.LLM))
    for src in human_sources:
        corpus.append((parse(src, Language.PYTHON), OriginLabel.HUMAN))
    return corpus


class TestTraining:
    def test_separable_corpus_reaches_full_accuracy(self):
        model, report = train_reference(_separable_corpus())
        assert report.accuracy == 1.0

    def test_zero_epochs_gives_uniform_outputs(self):
        config = TrainConfig(epochs=0)
        model, _ = train_reference(_separable_corpus(), config)
        verdict = model.classify(Language.PYTHON, "def f():\n    pass\n")
        assert verdict.prob_llm == pytest.approx(0.5)
        assert verdict.prob_human == pytest.approx(0.5)

    def test_single_label_corpus_rejected(self):
        corpus = [(parse("x = 1\n", Language.PYTHON), OriginLabel.LLM)]
        with pytest.raises(InputError):
            train_reference(corpus)

    def test_deterministic_across_runs(self):
        model_a, _ = train_reference(_separable_corpus())
        model_b, _ = train_reference(_separable_corpus())
        assert (model_a.weights == model_b.weights).all()

    def test_query_meter_counts_classify_calls(self):
        model, _ = train_reference(_separable_corpus())
        base = model.query_count
        model.classify(Language.PYTHON, "x = 1\n")
        model.classify(Language.PYTHON, "y = 2\n")
        assert model.query_count == base + 2


class TestFineTune:
    def test_empty_augmented_set_leaves_model_unchanged(self):
        model, _ = train_reference(_separable_corpus())
        tuned = fine_tune_reference(model, [])
        assert (tuned.weights == model.weights).all()

    def test_fine_tune_on_originals_keeps_accuracy(self):
        corpus = _separable_corpus()
        model, report = train_reference(corpus)
        tuned = fine_tune_reference(model, corpus, epochs=1)
        from mistforge.model_interface import accuracy_on

        assert accuracy_on(tuned, corpus) >= report.accuracy - 0.02

    def test_inference_is_pure_across_processes(self, tmp_path):
        model, _ = train_reference(_separable_corpus())
        path = tmp_path / "ref.json"
        model.save(path)
        probe = "def helper_fn(a):\n    return a + 3\n"
        local = model.classify(Language.PYTHON, probe).prob_llm
        script = (
            "import sys, json\n"
            "from mistforge.model_interface import ReferenceClassifier\n"
            "from mistforge.code_model import Language\n"
            f"model = ReferenceClassifier.load({str(path)!r})\n"
            f"print(repr(model.classify(Language.PYTHON, {probe!r}).prob_llm))\n"
        )
        out = subprocess.run([sys.executable, "-c", script],
                             capture_output=True, text=True, check=True)
        assert float(out.stdout.strip()) == local


class _MockHandler(http.server.BaseHTTPRequestHandler):
    response: dict = {"prob_human": 0.3, "prob_llm": 0.7}
    status = 200
    seen: list = []

    def do_POST(self):
        length = int(self.headers["Content-Length"])
        type(self).seen.append(json.loads(self.rfile.read(length)))
        body = json.dumps(type(self).response).encode()
        self.send_response(type(self).status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def mock_service():
    server = http.server.HTTPServer(("127.0.0.1", 0), _MockHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    _MockHandler.seen = []
    _MockHandler.status = 200
    _MockHandler.response = {"prob_human": 0.3, "prob_llm": 0.7}
    yield f"http://127.0.0.1:{server.server_port}/classify"
    server.shutdown()


class TestRemote:
    def test_round_trip(self, mock_service):
        verdict = classify_remote(mock_service, Language.JAVA, "int x = 1;")
        assert verdict.predicted is OriginLabel.LLM
        assert verdict.prob_llm == 0.7
        assert _MockHandler.seen == [{"language": "java", "code": "int x = 1;"}]

    def test_probabilities_must_sum_to_one(self, mock_service):
        _MockHandler.response = {"prob_human": 0.3, "prob_llm": 0.5}
        with pytest.raises(ProtocolError):
            classify_remote(mock_service, Language.JAVA, "int x = 1;")

    def test_missing_fields_is_protocol_error(self, mock_service):
        _MockHandler.response = {"p": 1.0}
        with pytest.raises(ProtocolError):
            classify_remote(mock_service, Language.PYTHON, "x = 1")

    def test_unreachable_endpoint_is_transport_error(self):
        with pytest.raises(TransportError):
            classify_remote("http://127.0.0.1:9", Language.PYTHON, "x = 1",
                            retries=2, backoff=0.0, timeout=0.5)

    def test_server_errors_retry_then_fail(self, mock_service):
        _MockHandler.status = 503
        with pytest.raises(TransportError):
            classify_remote(mock_service, Language.PYTHON, "x = 1",
                            retries=2, backoff=0.0)
        assert len(_MockHandler.seen) == 2
