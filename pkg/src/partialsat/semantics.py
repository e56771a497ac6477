"""Three-valued evaluation, residuals, total-assignment satisfaction, and
brute-force validity/equivalence oracles.

eval3 treats unbound atoms as unknown (U); residual substitutes bound atoms
and propagates constants through the connectives, nothing more (no
simplification of e.g. A | A, which would silently change validation
outcomes).
"""
from __future__ import annotations

import enum
from itertools import product

from .assignment import Assignment
from .errors import ResourceLimitError
from .formula import (
    And,
    Atom,
    AtomRef,
    Const,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    TRUE,
    atoms,
)
from . import limits


class TruthValue3(enum.Enum):
    T = "T"
    F = "F"
    U = "U"

    def __str__(self) -> str:
        return self.value


_T, _F, _U = TruthValue3.T, TruthValue3.F, TruthValue3.U


def _not3(a: TruthValue3) -> TruthValue3:
    if a is _T:
        return _F
    if a is _F:
        return _T
    return _U


def _and3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    if a is _F or b is _F:
        return _F
    if a is _T and b is _T:
        return _T
    return _U


def _or3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    if a is _T or b is _T:
        return _T
    if a is _F and b is _F:
        return _F
    return _U


def _implies3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    if a is _F:
        return _T
    if b is _T:
        return _T
    if a is _T:
        return b
    return _U


def _iff3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    if a is _U or b is _U:
        return _U
    return _T if a is b else _F


def eval3(f: Formula, mu: Assignment) -> TruthValue3:
    """Three-valued value of f under the partial assignment mu."""
    if isinstance(f, Const):
        return _T if f.value else _F
    if isinstance(f, AtomRef):
        v = mu.value(f.atom)
        if v is None:
            return _U
        return _T if v else _F
    if isinstance(f, Not):
        return _not3(eval3(f.arg, mu))
    if isinstance(f, And):
        return _and3(eval3(f.left, mu), eval3(f.right, mu))
    if isinstance(f, Or):
        return _or3(eval3(f.left, mu), eval3(f.right, mu))
    if isinstance(f, Implies):
        return _implies3(eval3(f.left, mu), eval3(f.right, mu))
    if isinstance(f, Iff):
        return _iff3(eval3(f.left, mu), eval3(f.right, mu))
    raise TypeError(f"not a formula: {f!r}")


def _negate_folded(f: Formula) -> Formula:
    if f == TRUE:
        return FALSE
    if f == FALSE:
        return TRUE
    return Not(f)


def residual(f: Formula, mu: Assignment) -> Formula:
    """The residual f|mu: bound atoms replaced by constants, which are then
    propagated through the connectives exhaustively bottom-up.

    The result contains no bound atom, and contains a constant only when it
    is itself `true` or `false`.
    """
    if isinstance(f, Const):
        return f
    if isinstance(f, AtomRef):
        v = mu.value(f.atom)
        if v is None:
            return f
        return TRUE if v else FALSE
    if isinstance(f, Not):
        return _negate_folded(residual(f.arg, mu))
    if isinstance(f, And):
        left, right = residual(f.left, mu), residual(f.right, mu)
        if left == FALSE or right == FALSE:
            return FALSE
        if left == TRUE:
            return right
        if right == TRUE:
            return left
        return And(left, right)
    if isinstance(f, Or):
        left, right = residual(f.left, mu), residual(f.right, mu)
        if left == TRUE or right == TRUE:
            return TRUE
        if left == FALSE:
            return right
        if right == FALSE:
            return left
        return Or(left, right)
    if isinstance(f, Implies):
        left, right = residual(f.left, mu), residual(f.right, mu)
        if left == FALSE:
            return TRUE
        if right == TRUE:
            return TRUE
        if left == TRUE:
            return right
        if right == FALSE:
            return _negate_folded(left)
        return Implies(left, right)
    if isinstance(f, Iff):
        left, right = residual(f.left, mu), residual(f.right, mu)
        if left == TRUE:
            return right
        if left == FALSE:
            return _negate_folded(right)
        if right == TRUE:
            return left
        if right == FALSE:
            return _negate_folded(left)
        return Iff(left, right)
    raise TypeError(f"not a formula: {f!r}")


def _eval_bool(f: Formula, binding: dict[Atom, bool]) -> bool:
    if isinstance(f, Const):
        return f.value
    if isinstance(f, AtomRef):
        return binding[f.atom]
    if isinstance(f, Not):
        return not _eval_bool(f.arg, binding)
    if isinstance(f, And):
        return _eval_bool(f.left, binding) and _eval_bool(f.right, binding)
    if isinstance(f, Or):
        return _eval_bool(f.left, binding) or _eval_bool(f.right, binding)
    if isinstance(f, Implies):
        return (not _eval_bool(f.left, binding)) or _eval_bool(f.right, binding)
    if isinstance(f, Iff):
        return _eval_bool(f.left, binding) == _eval_bool(f.right, binding)
    raise TypeError(f"not a formula: {f!r}")


def sat_total(f: Formula, eta: Assignment) -> bool:
    """Classical satisfaction by a total assignment over atoms(f)."""
    needed = atoms(f)
    if not eta.is_total_for(needed):
        missing = ", ".join(sorted(a.name for a in needed if a not in eta))
        raise ValueError(f"assignment is not total for the formula: missing {missing}")
    return _eval_bool(f, {a: eta.value(a) for a in needed})


def _check_cap(n: int, atom_cap: int | None) -> None:
    cap = limits.max_atoms(atom_cap)
    if n > cap:
        raise ResourceLimitError(
            f"brute-force sweep over {n} atoms exceeds the cap of {cap}"
        )


def _sweep(avs: list[Atom]):
    """All total bindings over avs as dicts, lexicographic, true first."""
    for values in product((True, False), repeat=len(avs)):
        yield dict(zip(avs, values))


def brute_valid(f: Formula, atom_cap: int | None = None) -> bool:
    """True iff every total assignment over atoms(f) satisfies f."""
    avs = sorted(atoms(f))
    _check_cap(len(avs), atom_cap)
    return all(_eval_bool(f, binding) for binding in _sweep(avs))


def brute_satisfiable(f: Formula, atom_cap: int | None = None) -> bool:
    """True iff some total assignment over atoms(f) satisfies f."""
    avs = sorted(atoms(f))
    _check_cap(len(avs), atom_cap)
    return any(_eval_bool(f, binding) for binding in _sweep(avs))


def first_falsifying(f: Formula, atom_cap: int | None = None) -> Assignment | None:
    """The lexicographically first total assignment falsifying f, or None."""
    avs = sorted(atoms(f))
    _check_cap(len(avs), atom_cap)
    for binding in _sweep(avs):
        if not _eval_bool(f, binding):
            return Assignment(binding)
    return None


def first_satisfying(f: Formula, atom_cap: int | None = None) -> Assignment | None:
    """The lexicographically first total assignment satisfying f, or None."""
    avs = sorted(atoms(f))
    _check_cap(len(avs), atom_cap)
    for binding in _sweep(avs):
        if _eval_bool(f, binding):
            return Assignment(binding)
    return None


def brute_equivalent(f: Formula, g: Formula, atom_cap: int | None = None) -> bool:
    """True iff f and g agree on every total assignment over their atoms."""
    avs = sorted(atoms(f) | atoms(g))
    _check_cap(len(avs), atom_cap)
    return all(
        _eval_bool(f, binding) == _eval_bool(g, binding) for binding in _sweep(avs)
    )
