"""Built-in presentations used by the tests, the CLI and the docs."""

from .terms import App, Equation, Presentation, Signature, Var

x, y, z = Var(0), Var(1), Var(2)


def empty_presentation() -> Presentation:
    return Presentation(Signature(()), (), name="empty")


def pointed_presentation() -> Presentation:
    return Presentation(Signature((("e", 0),)), (), name="pointed")


def semilattice_presentation() -> Presentation:
    def j(a, b):
        return App("join", (a, b))

    eqs = (
        Equation(3, j(j(x, y), z), j(x, j(y, z))),
        Equation(2, j(x, y), j(y, x)),
        Equation(1, j(x, x), x),
    )
    return Presentation(Signature((("join", 2),)), eqs, name="semilattice")


def monoid_presentation() -> Presentation:
    def m(a, b):
        return App("mul", (a, b))

    e = App("e")
    eqs = (
        Equation(3, m(m(x, y), z), m(x, m(y, z))),
        Equation(1, m(e, x), x),
        Equation(1, m(x, e), x),
    )
    return Presentation(Signature((("e", 0), ("mul", 2))), eqs, name="monoid")


PRESENTATIONS = {
    "empty": empty_presentation,
    "pointed": pointed_presentation,
    "semilattice": semilattice_presentation,
    "monoid": monoid_presentation,
}
