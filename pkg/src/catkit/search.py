"""A small backtracking solver with functional propagation.

Most enumerations in this package (natural families, ends, functors,
enriched functors, models) have the same shape: a set of variables whose
values are mostly *forced* by a few free choices via equations of the form
``out = fn(in_1, ..., in_k)``. Registering those equations as propagators
keeps the search tree down to the genuinely free variables.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Any, Callable, Hashable, Iterable, Iterator

from .errors import ResourceError, LIMITS

Values = Callable[[dict], Iterable[Any]]

# A propagator returning SKIP imposes nothing for that input combination.
SKIP = object()


class Problem:
    def __init__(self):
        self.order: list[Hashable] = []
        self._values: dict[Hashable, Values] = {}
        self._valid: dict[Hashable, Callable[[Any, dict], bool] | None] = {}
        self._props: list[tuple[tuple, Hashable | None, Callable]] = []
        self._watch: dict[Hashable, list[int]] = defaultdict(list)

    def var(self, key: Hashable, values, valid: Callable[[Any, dict], bool] | None = None):
        """Declare a variable.

        `values` is either a sequence or a callable taking the current
        assignment and returning candidates (for dependent domains).
        `valid` checks forced values; by default forced values are checked
        for membership in `values`.
        """
        if key in self._values:
            raise ValueError(f"duplicate variable {key!r}")
        self.order.append(key)
        if callable(values):
            self._values[key] = values
        else:
            seq = list(values)
            self._values[key] = lambda _a, seq=seq: seq
            if valid is None:
                members = set(seq)
                valid = lambda v, _a, members=members: v in members
        self._valid[key] = valid

    def has_var(self, key) -> bool:
        return key in self._values

    def propagate(self, inputs: Iterable[Hashable], output: Hashable, fn: Callable):
        """Once every input is assigned, `output` must equal fn(*inputs)."""
        self._add(tuple(inputs), output, fn)

    def require(self, inputs: Iterable[Hashable], pred: Callable[..., bool]):
        """Once every input is assigned, pred(*inputs) must hold."""
        self._add(tuple(inputs), None, pred)

    def _add(self, inputs, output, fn):
        idx = len(self._props)
        self._props.append((inputs, output, fn))
        if not inputs:
            self._watch[None].append(idx)
        for v in set(inputs):
            self._watch[v].append(idx)

    # -- solving ---------------------------------------------------------

    def _assign(self, key, value, asg: dict, trail: list) -> bool:
        queue = [(key, value)]
        while queue:
            k, v = queue.pop()
            if k in asg:
                if asg[k] != v:
                    return False
                continue
            valid = self._valid.get(k)
            if valid is not None and not valid(v, asg):
                return False
            asg[k] = v
            trail.append(k)
            for idx in self._watch.get(k, ()):
                inputs, out, f = self._props[idx]
                if not all(i in asg for i in inputs):
                    continue
                r = f(*(asg[i] for i in inputs))
                if r is SKIP:
                    continue
                if out is None:
                    if not r:
                        return False
                elif out in asg:
                    if asg[out] != r:
                        return False
                else:
                    if out not in self._values:
                        raise KeyError(f"propagator targets undeclared variable {out!r}")
                    queue.append((out, r))
        return True

    def solutions(self, limit: int | None = None) -> Iterator[dict]:
        asg: dict = {}
        trail: list = []
        for idx in self._watch.get(None, ()):
            inputs, out, f = self._props[idx]
            r = f()
            if r is SKIP:
                continue
            if out is None:
                if not r:
                    return
            elif not self._assign(out, r, asg, trail):
                return
        order = self.order
        budget = [LIMITS.max_candidates]
        found = [0]

        def rec(pos: int):
            while pos < len(order) and order[pos] in asg:
                pos += 1
            if pos == len(order):
                yield dict(asg)
                return
            key = order[pos]
            for val in list(self._values[key](asg)):
                budget[0] -= 1
                if budget[0] < 0:
                    raise ResourceError(f"search exceeded {LIMITS.max_candidates} candidates")
                mark = len(trail)
                if self._assign(key, val, asg, trail):
                    yield from rec(pos + 1)
                for k in trail[mark:]:
                    del asg[k]
                del trail[mark:]

        for sol in rec(0):
            yield sol
            found[0] += 1
            if limit is not None and found[0] >= limit:
                return

    def first(self):
        for s in self.solutions(limit=1):
            return s
        return None
