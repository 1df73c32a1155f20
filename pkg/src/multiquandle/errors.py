"""Exception hierarchy shared by every module of the package."""


class MultiquandleError(ValueError):
    """Base class for all errors raised by this package."""


# groups

class NotAssociative(MultiquandleError):
    def __init__(self, triple):
        self.witness = tuple(triple)
        a, b, c = self.witness
        super().__init__(f"table is not associative at (a, b, c) = ({a}, {b}, {c})")


class NoIdentity(MultiquandleError):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class NoInverse(MultiquandleError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class SizeLimitExceeded(MultiquandleError):
    pass


# multirack

class AxiomViolation(MultiquandleError):
    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"axiom verification failed; first violation: {first}")


class EmptyLabelSet(MultiquandleError):
    pass


class ShapeMismatch(MultiquandleError):
    pass


class SearchLimitExceeded(MultiquandleError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"search exceeded its node budget of {budget}")


# constructions

class NotAutomorphism(MultiquandleError):
    def __init__(self, label, pair):
        self.label = label
        self.witness = tuple(pair)
        super().__init__(f"map {label!r} is not an automorphism; fails at {self.witness}")


class NotCommuting(MultiquandleError):
    def __init__(self, labels, element):
        self.labels = tuple(labels)
        self.element = element
        super().__init__(f"maps {self.labels} do not commute at element {element}")


class NotInvertible(MultiquandleError):
    def __init__(self, unit, modulus):
        self.unit = unit
        self.modulus = modulus
        super().__init__(f"{unit} is not a unit modulo {modulus}")


class SNotInCenter(MultiquandleError):
    def __init__(self, s):
        self.s = s
        super().__init__(f"element {s} is not in the center of the subgroup")


class WellDefinednessFailure(MultiquandleError):
    """The induced coset operation depends on the chosen representatives.

    ``witness`` is ``(s, u, v, g, h)``: the products ``u*g`` and ``v*h`` lie
    in the cosets of ``u`` and ``v`` but ``(u*g) |>_s (v*h)`` and
    ``u |>_s v`` land in different cosets.
    """

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"coset operation is not well defined; witness (s, u, v, g, h) = {self.witness}")


# knots

class MalformedPD(MultiquandleError):
    pass


class ArcCountMismatch(MultiquandleError):
    def __init__(self, label, occurrences, detail=""):
        self.label = label
        self.occurrences = occurrences
        msg = f"arc label {label} occurs {occurrences} time(s)"
        if detail:
            msg += f" {detail}"
        super().__init__(msg)


class LabelNotFound(MultiquandleError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"operation label {label!r} not present in target")
