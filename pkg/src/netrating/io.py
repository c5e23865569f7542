"""Reading and writing networks, evaluations and strategies; network generators.

File formats
------------
network
    One edge per line, two whitespace-separated labels. A line with a single
    label declares a customer without adding an edge. ``#`` starts a comment.
evaluations
    Two-column CSV ``label,value`` where value is a decimal (``0.25``), a
    fraction (``1/4``) or ``*`` for no opinion. The file fixes the customer
    set and its order.
strategy
    Same CSV shape as evaluations, without ``*``. Customers not listed get 0.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path

import numpy as np

from netrating.exceptions import ParseError
from netrating.model import NO_OPINION, CustomersNetwork, EvaluationProfile, RatedInstance
from netrating.strategy import Strategy

__all__ = [
    "parse_rational",
    "format_rational",
    "parse_evaluations",
    "parse_edges",
    "parse_strategy",
    "load_instance",
    "load_strategy",
    "format_edges",
    "format_evaluations",
    "format_strategy",
    "save_instance",
    "save_strategy",
    "generate",
    "GENERATORS",
]


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``"3"``, ``"0.25"``, ``"1/4"`` or ``"2.5e-1"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def format_rational(x: Fraction) -> str:
    """Always ``p/q``, also for integers (``0/1``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _csv_rows(text: str, path):
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = next(csv.reader([stripped]))
        if len(row) != 2:
            raise ParseError(f"expected 'label,value', got {line!r}", path, lineno)
        label, value = row[0].strip(), row[1].strip()
        if lineno == 1 and label.lower() == "label" and value.lower() == "value":
            continue
        if not label:
            raise ParseError("empty label", path, lineno)
        yield lineno, label, value


def parse_evaluations(text: str, path=None) -> tuple[list[str], EvaluationProfile]:
    """Labels in file order and the evaluation profile."""
    labels, values, seen = [], [], set()
    for lineno, label, raw in _csv_rows(text, path):
        if label in seen:
            raise ParseError(f"duplicate customer {label!r}", path, lineno)
        if raw == "*":
            value = NO_OPINION
        else:
            try:
                value = parse_rational(raw)
            except ValueError as exc:
                raise ParseError(str(exc), path, lineno) from None
            if not 0 <= value <= 1:
                raise ParseError(f"evaluation {raw} is outside [0, 1]", path, lineno)
        seen.add(label)
        labels.append(label)
        values.append(value)
    if not labels:
        raise ParseError("no customers in evaluation file", path)
    return labels, EvaluationProfile(tuple(values))


def parse_edges(text: str, labels, path=None) -> CustomersNetwork:
    """Network over ``labels``; every label in the file must be one of them."""
    index = {label: i for i, label in enumerate(labels)}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) > 2:
            raise ParseError(f"expected one or two labels, got {len(tokens)}", path, lineno)
        for t in tokens:
            if t not in index:
                raise ParseError(f"unknown customer {t!r}", path, lineno)
        if len(tokens) == 2:
            edges.append((index[tokens[0]], index[tokens[1]]))
    return CustomersNetwork.from_edges(len(labels), edges)


def parse_strategy(text: str, labels, path=None) -> Strategy:
    index = {label: i for i, label in enumerate(labels)}
    amounts = {}
    for lineno, label, raw in _csv_rows(text, path):
        if label not in index:
            raise ParseError(f"unknown customer {label!r}", path, lineno)
        if index[label] in amounts:
            raise ParseError(f"duplicate customer {label!r}", path, lineno)
        try:
            amount = parse_rational(raw)
        except ValueError as exc:
            raise ParseError(str(exc), path, lineno) from None
        if not 0 <= amount <= 1:
            raise ParseError(f"bribe {raw} is outside [0, 1]", path, lineno)
        amounts[index[label]] = amount
    return Strategy.from_mapping(len(labels), amounts)


def load_instance(network_path, eval_path) -> RatedInstance:
    """Validated instance from a network file and an evaluation file.

    Raises
    ------
    ParseError
        On malformed lines (with line number) or unknown labels.
    InvalidInstanceError
        If the voter set is empty or some customer sees no voter.
    """
    eval_path, network_path = Path(eval_path), Path(network_path)
    labels, profile = parse_evaluations(eval_path.read_text(), str(eval_path))
    net = parse_edges(network_path.read_text(), labels, str(network_path))
    return RatedInstance(net, profile, labels=tuple(labels))


def load_strategy(path, instance: RatedInstance) -> Strategy:
    path = Path(path)
    labels = instance.labels or tuple(str(c) for c in range(instance.n))
    return parse_strategy(path.read_text(), labels, str(path))


def _labels(obj, n):
    labels = getattr(obj, "labels", None)
    return list(labels) if labels is not None else [str(c) for c in range(n)]


def format_edges(net: CustomersNetwork, labels=None) -> str:
    labels = labels or [str(c) for c in range(net.n)]
    out = io.StringIO()
    linked = set()
    for a, b in net.edges():
        out.write(f"{labels[a]} {labels[b]}\n")
        linked.update((a, b))
    for c in range(net.n):
        if c not in linked:
            out.write(f"{labels[c]}\n")
    return out.getvalue()


def format_evaluations(profile: EvaluationProfile, labels) -> str:
    return "".join(
        f"{label},{'*' if v is NO_OPINION else format_rational(v)}\n" for label, v in zip(labels, profile.values)
    )


def format_strategy(sigma: Strategy, labels) -> str:
    return "".join(f"{label},{format_rational(b)}\n" for label, b in zip(labels, sigma.bribes) if b != 0)


def save_instance(instance: RatedInstance, network_path, eval_path):
    labels = _labels(instance, instance.n)
    Path(network_path).write_text(format_edges(instance.network, labels))
    Path(eval_path).write_text(format_evaluations(instance.profile, labels))


def save_strategy(sigma: Strategy, path, labels):
    Path(path).write_text(format_strategy(sigma, labels))


def star(k: int) -> CustomersNetwork:
    """Star with ``k`` arms: centre 0 and leaves ``1..k``."""
    return CustomersNetwork.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def path(n: int) -> CustomersNetwork:
    return CustomersNetwork.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> CustomersNetwork:
    return CustomersNetwork.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> CustomersNetwork:
    return CustomersNetwork.complete(n)


def gnp(n: int, p, seed: int) -> CustomersNetwork:
    """Erdos-Renyi graph: each pair linked independently with probability ``p``.

    Uses ``numpy.random.default_rng(seed)`` and draws the pairs ``(i, j)``,
    ``i < j``, in lexicographic order.
    """
    p = float(p)
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability {p} is outside [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    draws = rng.random(len(pairs))
    return CustomersNetwork.from_edges(n, [pr for pr, u in zip(pairs, draws) if u < p])


GENERATORS = {"star": star, "path": path, "cycle": cycle, "complete": complete, "gnp": gnp}


def generate(kind: str, size: int, p=None, seed=None) -> CustomersNetwork:
    """Generate a network by name; ``star`` takes the number of arms, the others the node count."""
    if kind not in GENERATORS:
        raise ValueError(f"unknown network kind {kind!r}; choose from {sorted(GENERATORS)}")
    if size < 1 and not (kind == "star" and size == 0):
        raise ValueError("size must be at least 1")
    if kind == "gnp":
        if p is None or seed is None:
            raise ValueError("gnp needs an edge probability and a seed")
        return gnp(size, p, seed)
    return GENERATORS[kind](size)
