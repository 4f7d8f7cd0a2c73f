"""Deterministic enumeration of connected alternating type-2 tangle expressions."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import conventions as cv
from . import diagram as dg
from . import tangle as tg

DESK_LIMIT = 10


@dataclass(frozen=True)
class CorpusSpec:
    max_crossings: int
    leaves: bool = True
    sums: bool = True
    products: bool = True
    tau: bool = False
    seed: int | None = None
    allow_large: bool = False


def _compositions(total, first_zero):
    """Negative continued-fraction terms with |sum| = total, canonical ending."""

    def rec(remaining, prefix):
        if remaining == 0:
            if prefix and (len(prefix) == 1 or prefix[-1] <= -2):
                yield tuple(prefix)
            return
        for a in range(1, remaining + 1):
            yield from rec(remaining - a, prefix + [-a])

    if first_zero:
        for tail in rec(total, []):
            yield (0,) + tail
    else:
        yield from rec(total, [])


def rational_leaves(c):
    """Negative rational tangles drawn with exactly ``c`` crossings, one per fraction."""
    out = {}
    for first_zero in (False, True):
        for terms in _compositions(c, first_zero):
            if first_zero and len(terms) < 2:
                continue
            f = tg.eval_fraction(terms)
            expr = tg.Integer(terms[0]) if len(terms) == 1 else tg.ContinuedFraction(terms)
            out.setdefault((f.num, f.den), expr)
    return [out[k] for k in sorted(out)]


def _accept(expr):
    try:
        d = dg.synthesize(expr)
        return dg.classify_type(d) == cv.TYPE2
    except dg.DiagramError:
        return False


def corpus(cfg):
    """Stream of expressions, ordered by crossing count then by text (or seeded shuffle)."""
    if cfg.max_crossings > DESK_LIMIT and not cfg.allow_large:
        raise ValueError(f"max_crossings above {DESK_LIMIT} needs allow_large")
    by_count = {c: [] for c in range(1, cfg.max_crossings + 1)}
    seen_fractions = set()
    seen_text = set()

    def add(c, expr):
        text = tg.to_text(expr)
        if text in seen_text:
            return
        f = tg.fraction_of(expr)
        if f is not tg.NotRational:
            if (f.num, f.den) in seen_fractions:
                return
        if not _accept(expr):
            return
        if f is not tg.NotRational:
            seen_fractions.add((f.num, f.den))
        seen_text.add(text)
        by_count[c].append(expr)

    for c in range(1, cfg.max_crossings + 1):
        if cfg.leaves:
            for leaf in rational_leaves(c):
                add(c, leaf)
        for a in range(1, c):
            b = c - a
            for x in list(by_count[a]):
                for y in list(by_count[b]):
                    if cfg.sums:
                        add(c, tg.Sum(x, y))
                    if cfg.products:
                        add(c, tg.Product(x, y))
        if cfg.tau and c > 4:
            # tau(x) is type 1; a quarter turn brings it back to type 2
            for x in list(by_count[c - 4]):
                add(c, tg.RotateCW(tg.Encircle(x)))
    rng = random.Random(cfg.seed) if cfg.seed is not None else None
    for c in range(1, cfg.max_crossings + 1):
        items = sorted(by_count[c], key=tg.to_text)
        if rng is not None:
            rng.shuffle(items)
        yield from items


def default_corpus(max_crossings=6):
    return list(corpus(CorpusSpec(max_crossings)))
