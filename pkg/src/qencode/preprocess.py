"""Classical front-ends: bag-of-words counts, ordinal and one-hot categories."""
from __future__ import annotations

import string
import unicodedata
from typing import Hashable, Sequence

import numpy as np

from .errors import DomainError


def _is_punct(ch: str) -> bool:
    return ch in string.punctuation or unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Whitespace split, strip leading/trailing punctuation, lowercase."""
    tokens = []
    for raw in text.split():
        start, end = 0, len(raw)
        while start < end and _is_punct(raw[start]):
            start += 1
        while end > start and _is_punct(raw[end - 1]):
            end -= 1
        if start < end:
            tokens.append(raw[start:end].lower())
    return tokens


def bag_of_words(documents: Sequence[str]) -> tuple[list[str], list[np.ndarray]]:
    """Vocabulary in first-appearance order and one count vector per document."""
    tokenized = [tokenize(doc) for doc in documents]
    vocab: dict[str, int] = {}
    for toks in tokenized:
        for t in toks:
            vocab.setdefault(t, len(vocab))
    counts = []
    for toks in tokenized:
        c = np.zeros(len(vocab), dtype=np.int64)
        for t in toks:
            c[vocab[t]] += 1
        counts.append(c)
    return list(vocab), counts


def _position(label: Hashable, categories: Sequence) -> int:
    try:
        return list(categories).index(label)
    except ValueError:
        raise DomainError(f"label {label!r} not among categories {list(categories)}") from None


def ordinal_encode(labels: Sequence, categories: Sequence) -> list[int]:
    return [_position(lab, categories) for lab in labels]


def one_hot(label, categories: Sequence) -> np.ndarray:
    v = np.zeros(len(categories), dtype=np.int64)
    v[_position(label, categories)] = 1
    return v
