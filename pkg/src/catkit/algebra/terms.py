"""Terms, signatures and equational presentations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import ParseError, PreconditionError


@dataclass(frozen=True)
class Var:
    index: int  # x_{index+1}

    def __str__(self):
        return f"x{self.index + 1}"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(map(str, self.args))})"


Term = Var | App


def size(t: Term) -> int:
    return 1 if isinstance(t, Var) else 1 + sum(size(a) for a in t.args)


def depth(t: Term) -> int:
    return 0 if isinstance(t, Var) else 1 + max((depth(a) for a in t.args), default=0)


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def substitute(t: Term, sub) -> Term:
    if isinstance(t, Var):
        return sub[t.index]
    return App(t.op, tuple(substitute(a, sub) for a in t.args))


def term_key(t: Term, op_order: dict[str, int]) -> tuple:
    """Total order used for canonical representatives: smaller terms first,
    variables before operations."""

    def struct(u):
        if isinstance(u, Var):
            return (0, u.index)
        return (1, op_order[u.op], tuple(struct(a) for a in u.args))

    return (size(t), struct(t))


@dataclass(frozen=True)
class Signature:
    ops: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.ops]
        if len(set(names)) != len(names):
            raise PreconditionError(f"duplicate operation symbols in {names}")
        if any(a < 0 for _, a in self.ops):
            raise PreconditionError("negative arity")

    @cached_property
    def arity(self) -> dict[str, int]:
        return dict(self.ops)

    @cached_property
    def order(self) -> dict[str, int]:
        return {n: i for i, (n, _) in enumerate(self.ops)}

    def check_term(self, t: Term, n_vars: int) -> None:
        if isinstance(t, Var):
            if not 0 <= t.index < n_vars:
                raise PreconditionError(f"variable {t} outside context of {n_vars}")
            return
        if t.op not in self.arity:
            raise PreconditionError(f"unknown operation {t.op!r}")
        if len(t.args) != self.arity[t.op]:
            raise PreconditionError(f"{t.op} expects {self.arity[t.op]} arguments, got {len(t.args)}")
        for a in t.args:
            self.check_term(a, n_vars)


@dataclass(frozen=True)
class Equation:
    n_vars: int
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    signature: Signature
    equations: tuple[Equation, ...] = ()
    name: str = ""

    def __post_init__(self):
        for e in self.equations:
            self.signature.check_term(e.lhs, e.n_vars)
            self.signature.check_term(e.rhs, e.n_vars)


# -- nested-array syntax: an int is a variable, [op, arg, ...] an application


def term_from_json(obj) -> Term:
    if isinstance(obj, bool):
        raise ParseError(f"not a term: {obj!r}")
    if isinstance(obj, int):
        if obj < 0:
            raise ParseError(f"negative variable index {obj}")
        return Var(obj)
    if isinstance(obj, str):
        return App(obj)
    if isinstance(obj, list) and obj and isinstance(obj[0], str):
        return App(obj[0], tuple(term_from_json(a) for a in obj[1:]))
    raise ParseError(f"not a term: {obj!r}")


def term_to_json(t: Term):
    if isinstance(t, Var):
        return t.index
    return [t.op, *(term_to_json(a) for a in t.args)]


def presentation_from_json(data: dict) -> Presentation:
    try:
        ops = tuple((o["name"], int(o["arity"])) for o in data.get("ops", []))
        eqs = tuple(Equation(int(e["vars"]), term_from_json(e["lhs"]), term_from_json(e["rhs"]))
                    for e in data.get("eqs", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed presentation: {exc}") from exc
    try:
        return Presentation(Signature(ops), eqs, name=data.get("name", ""))
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def presentation_to_json(p: Presentation) -> dict:
    return {
        "kind": "presentation",
        "name": p.name,
        "ops": [{"name": n, "arity": a} for n, a in p.signature.ops],
        "eqs": [{"vars": e.n_vars, "lhs": term_to_json(e.lhs), "rhs": term_to_json(e.rhs)} for e in p.equations],
    }
