"""Black-box target-model contract and the builtin reference classifier.

A target model exposes ``classify(language, source) -> ClassifierVerdict``
behind a 0.5 decision threshold and counts every call on a thread-safe
query meter. Implementations here:

* ReferenceClassifier — a deterministic logistic model over interpretable
  features (hashed identifier bag, structure-form counts, length). It is
  deliberately sensitive to identifier renames and structure flips, which
  is what makes it a meaningful desk-scale attack target, and it is
  trained/fine-tuned by plain minibatch gradient descent on cross-entropy.
* RemoteModel — the JSON-over-HTTP wire contract (POST /classify) with a
  bounded retry policy, so external detectors can be attacked unmodified.
"""

from __future__ import annotations

import json
import threading
import time
import zlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Protocol

import numpy as np
import requests

from .code_model import CodeSnippet, Language, parse
from .errors import InputError, ProtocolError, TransportError
from .rule_types import Rule
from .style_profile import OriginLabel
from .transform_rules import count_structures

N_BUCKETS = 64
N_FEATURES = N_BUCKETS + 2 * len(Rule) + 1


@dataclass(frozen=True)
class ClassifierVerdict:
    prob_human: float
    prob_llm: float

    @property
    def predicted(self) -> OriginLabel:
        return OriginLabel.LLM if self.prob_llm >= 0.5 else OriginLabel.HUMAN

    def prob_for(self, label: OriginLabel) -> float:
        return self.prob_llm if label is OriginLabel.LLM else self.prob_human


class TargetModel(Protocol):
    @property
    def query_count(self) -> int: ...

    def classify(self, language: Language, source: str) -> ClassifierVerdict: ...


class QueryMeter:
    """Thread-safe monotone counter."""

    def __init__(self) -> None:
        self._count = 0
        self._lock = threading.Lock()

    def increment(self) -> int:
        with self._lock:
            self._count += 1
            return self._count

    @property
    def count(self) -> int:
        with self._lock:
            return self._count


def extract_features(language: Language, source: str) -> np.ndarray:
    """Hashed identifier-occurrence bag + per-rule structure-form ratios
    + bounded length. Unparseable input degrades to the length feature."""
    vec = np.zeros(N_FEATURES, dtype=np.float64)
    snippet = parse(source, language)
    if snippet.parse_ok:
        total_occurrences = sum(len(e.spans) for e in snippet.identifiers.entries)
        if total_occurrences:
            for entry in snippet.identifiers.entries:
                bucket = zlib.crc32(entry.name.encode("utf-8")) % N_BUCKETS
                vec[bucket] += len(entry.spans) / total_occurrences
        counts = count_structures(snippet)
        for i, rule in enumerate(Rule):
            n_b, n_a = counts[rule]
            denom = 1 + n_b + n_a
            vec[N_BUCKETS + 2 * i] = n_b / denom
            vec[N_BUCKETS + 2 * i + 1] = n_a / denom
    size = len(source)
    vec[-1] = size / (size + 500.0)
    return vec


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.5
    epochs: int = 60
    batch_size: int = 8
    l2: float = 1e-4
    seed: int = 7


@dataclass(frozen=True)
class TrainReport:
    accuracy: float
    loss: float
    n_samples: int


def cross_entropy_loss_and_grad(
    weights: np.ndarray, features: np.ndarray, labels: np.ndarray, l2: float = 0.0
) -> tuple[float, np.ndarray]:
    """Mean binary cross-entropy of a logistic model and its gradient.

    `weights` is the extended vector (coefficients + trailing bias);
    `features` is (n, d) *without* the bias column."""
    xb = np.hstack([features, np.ones((features.shape[0], 1))])
    logits = xb @ weights
    probs = 1.0 / (1.0 + np.exp(-logits))
    eps = 1e-12
    ce = -(labels * np.log(probs + eps) + (1 - labels) * np.log(1 - probs + eps))
    loss = float(np.mean(ce)) + l2 * float(np.dot(weights, weights))
    grad = xb.T @ (probs - labels) / features.shape[0] + 2.0 * l2 * weights
    return loss, grad


class ReferenceClassifier:
    """Logistic origin classifier over interpretable snippet features."""

    def __init__(self, weights: np.ndarray | None = None,
                 mu: np.ndarray | None = None,
                 sigma: np.ndarray | None = None,
                 config: TrainConfig | None = None):
        self.weights = weights if weights is not None \
            else np.zeros(N_FEATURES + 1, dtype=np.float64)
        self.mu = mu if mu is not None else np.zeros(N_FEATURES)
        self.sigma = sigma if sigma is not None else np.ones(N_FEATURES)
        self.config = config or TrainConfig()
        self._meter = QueryMeter()

    @property
    def query_count(self) -> int:
        return self._meter.count

    def _standardize(self, feats: np.ndarray) -> np.ndarray:
        return (feats - self.mu) / self.sigma

    def prob_llm(self, language: Language, source: str) -> float:
        z = self._standardize(extract_features(language, source))
        logit = float(np.dot(self.weights[:-1], z)) + float(self.weights[-1])
        return float(1.0 / (1.0 + np.exp(-logit)))

    def classify(self, language: Language, source: str) -> ClassifierVerdict:
        self._meter.increment()
        p = self.prob_llm(language, source)
        return ClassifierVerdict(prob_human=1.0 - p, prob_llm=p)

    def clone(self) -> "ReferenceClassifier":
        return ReferenceClassifier(weights=self.weights.copy(),
                                   mu=self.mu.copy(), sigma=self.sigma.copy(),
                                   config=self.config)

    # --- persistence -------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "version": 1,
            "n_buckets": N_BUCKETS,
            "weights": self.weights.tolist(),
            "mu": self.mu.tolist(),
            "sigma": self.sigma.tolist(),
            "config": {
                "learning_rate": self.config.learning_rate,
                "epochs": self.config.epochs,
                "batch_size": self.config.batch_size,
                "l2": self.config.l2,
                "seed": self.config.seed,
            },
        })

    @classmethod
    def from_json(cls, text: str) -> "ReferenceClassifier":
        try:
            doc = json.loads(text)
            cfg = TrainConfig(**doc["config"])
            return cls(weights=np.asarray(doc["weights"], dtype=np.float64),
                       mu=np.asarray(doc["mu"], dtype=np.float64),
                       sigma=np.asarray(doc["sigma"], dtype=np.float64),
                       config=cfg)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed classifier file: {exc}") from exc

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "ReferenceClassifier":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _features_and_labels(
    corpus: list[tuple[CodeSnippet, OriginLabel]]
) -> tuple[np.ndarray, np.ndarray]:
    feats = np.stack([extract_features(s.language, s.source) for s, _ in corpus])
    labels = np.asarray([float(o.y_truth) for _, o in corpus])
    return feats, labels


def _sgd(weights: np.ndarray, z: np.ndarray, labels: np.ndarray,
         cfg: TrainConfig, epochs: int, rng: np.random.Generator) -> np.ndarray:
    n = z.shape[0]
    weights = weights.copy()
    for _ in range(epochs):
        order = rng.permutation(n)
        for lo in range(0, n, cfg.batch_size):
            batch = order[lo : lo + cfg.batch_size]
            _, grad = cross_entropy_loss_and_grad(weights, z[batch],
                                                  labels[batch], cfg.l2)
            weights -= cfg.learning_rate * grad
    return weights


def train_reference(corpus: list[tuple[CodeSnippet, OriginLabel]],
                    config: TrainConfig | None = None
                    ) -> tuple[ReferenceClassifier, TrainReport]:
    """Fit the logistic reference classifier with minibatch gradient
    descent on cross-entropy; reports training accuracy."""
    cfg = config or TrainConfig()
    labels_present = {o for _, o in corpus}
    if len(labels_present) < 2:
        raise InputError("training corpus must contain both origin labels")
    feats, labels = _features_and_labels(corpus)
    mu = feats.mean(axis=0)
    sigma = feats.std(axis=0)
    sigma[sigma < 1e-9] = 1.0
    z = (feats - mu) / sigma
    rng = np.random.default_rng(cfg.seed)
    weights = np.zeros(N_FEATURES + 1, dtype=np.float64)
    weights = _sgd(weights, z, labels, cfg, cfg.epochs, rng)
    model = ReferenceClassifier(weights=weights, mu=mu, sigma=sigma, config=cfg)
    report = _evaluate(model, z, labels)
    return model, report


FINE_TUNE_LR_SCALE = 3.0


def fine_tune_reference(model: ReferenceClassifier,
                        augmented: list[tuple[CodeSnippet, OriginLabel]],
                        epochs: int = 1,
                        learning_rate: float | None = None
                        ) -> ReferenceClassifier:
    """Continue training on an augmented set (default one epoch), reusing
    the model's feature standardization. The default step size is scaled
    up from the training rate: a single epoch over a small augmented set
    sees a few dozen minibatches, not thousands."""
    if not augmented:
        return model.clone()
    feats, labels = _features_and_labels(augmented)
    z = (feats - model.mu) / model.sigma
    if learning_rate is None:
        learning_rate = model.config.learning_rate * FINE_TUNE_LR_SCALE
    cfg = replace(model.config, learning_rate=learning_rate)
    rng = np.random.default_rng(cfg.seed)
    weights = _sgd(model.weights, z, labels, cfg, epochs, rng)
    return ReferenceClassifier(weights=weights, mu=model.mu.copy(),
                               sigma=model.sigma.copy(), config=model.config)


def _evaluate(model: ReferenceClassifier, z: np.ndarray,
              labels: np.ndarray) -> TrainReport:
    logits = z @ model.weights[:-1] + model.weights[-1]
    probs = 1.0 / (1.0 + np.exp(-logits))
    acc = float(np.mean((probs >= 0.5) == (labels == 1.0)))
    eps = 1e-12
    loss = float(np.mean(-(labels * np.log(probs + eps)
                           + (1 - labels) * np.log(1 - probs + eps))))
    return TrainReport(accuracy=acc, loss=loss, n_samples=len(labels))


def accuracy_on(model: TargetModel,
                samples: list[tuple[CodeSnippet, OriginLabel]]) -> float:
    if not samples:
        raise InputError("cannot score an empty sample set")
    hits = sum(
        1 for snippet, origin in samples
        if model.classify(snippet.language, snippet.source).predicted is origin
    )
    return hits / len(samples)


# ---------------------------------------------------------------------------
# Wire protocol
# ---------------------------------------------------------------------------

@dataclass
class RemoteModel:
    """POST {language, code} -> {prob_human, prob_llm} with retries."""

    endpoint: str
    timeout: float = 10.0
    retries: int = 3
    backoff: float = 0.5
    _meter: QueryMeter = field(default_factory=QueryMeter, repr=False)

    @property
    def query_count(self) -> int:
        return self._meter.count

    def classify(self, language: Language, source: str) -> ClassifierVerdict:
        self._meter.increment()
        return classify_remote(self.endpoint, language, source,
                               timeout=self.timeout, retries=self.retries,
                               backoff=self.backoff)


def classify_remote(endpoint: str, language: Language, source: str,
                    timeout: float = 10.0, retries: int = 3,
                    backoff: float = 0.5) -> ClassifierVerdict:
    payload = {"language": language.value, "code": source}
    last_error: Exception | None = None
    for attempt in range(retries):
        try:
            resp = requests.post(endpoint, json=payload, timeout=timeout)
            if resp.status_code >= 500:
                last_error = TransportError(
                    f"{endpoint} answered {resp.status_code}")
                time.sleep(backoff * (2 ** attempt))
                continue
            if resp.status_code != 200:
                raise ProtocolError(
                    f"{endpoint} answered {resp.status_code}: {resp.text[:200]}")
            return _parse_verdict(resp.json())
        except (requests.ConnectionError, requests.Timeout) as exc:
            last_error = TransportError(f"{endpoint} unreachable: {exc}")
            time.sleep(backoff * (2 ** attempt))
        except ValueError as exc:
            raise ProtocolError(f"{endpoint} returned non-JSON body") from exc
    raise last_error if last_error else TransportError(f"{endpoint} unreachable")


def _parse_verdict(doc: object) -> ClassifierVerdict:
    if not isinstance(doc, dict) or "prob_human" not in doc or "prob_llm" not in doc:
        raise ProtocolError(f"missing probability fields in {doc!r}")
    try:
        ph = float(doc["prob_human"])
        pl = float(doc["prob_llm"])
    except (TypeError, ValueError) as exc:
        raise ProtocolError(f"non-numeric probabilities in {doc!r}") from exc
    if not (0.0 <= ph <= 1.0 and 0.0 <= pl <= 1.0):
        raise ProtocolError(f"probabilities out of range: {ph}, {pl}")
    if abs(ph + pl - 1.0) > 1e-6:
        raise ProtocolError(f"probabilities do not sum to 1: {ph} + {pl}")
    return ClassifierVerdict(prob_human=ph, prob_llm=pl)
