"""F_p helpers: primality, multiplicative orders, |GL| and coefficient reduction."""

from __future__ import annotations

from math import prod
from typing import Dict, Iterable, Mapping, Sequence

import sympy
from sympy import isprime, mod_inverse
from sympy.ntheory import n_order

from oracle.errors import CoefficientPole, NotPrime, ZeroParameter


def check_prime(p: int) -> int:
    p = int(p)
    if not isprime(p):
        raise NotPrime(f"{p!r} is not prime")
    return p


def multiplicative_order(q: int, p: int) -> int:
    """Least r >= 1 with q^r = 1 in F_p."""
    p = check_prime(p)
    q = int(q) % p
    if q == 0:
        raise ZeroParameter(f"q = 0 in F_{p} has no multiplicative order")
    return int(n_order(q, p))


def count_gl(alpha: Sequence[int], p: int) -> int:
    """|G_alpha| = prod_i prod_{j < alpha_i} (p^alpha_i - p^j)."""
    return prod(p ** n - p ** j for n in alpha for j in range(n))


def parse_assignment(items: Iterable[str]) -> Dict[str, int]:
    """`q=2` style parameter settings."""
    out: Dict[str, int] = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ValueError(f"Parameter setting must look like name=value, got {item!r}")
        try:
            out[name] = int(value.strip())
        except ValueError:
            raise ValueError(f"Parameter {name!r} needs an integer value, got {value.strip()!r}") from None
    return out


def reduce_assignment(assignment: Mapping[str, int], params: Sequence[str], p: int) -> Dict[str, int]:
    """Every declared parameter assigned, reduced mod p and nonzero."""
    missing = [name for name in params if name not in assignment]
    if missing:
        raise ZeroParameter(f"No value given for parameter(s) {', '.join(missing)}")
    unknown = sorted(set(assignment) - set(params))
    if unknown:
        raise ZeroParameter(f"Value given for undeclared parameter(s) {', '.join(unknown)}")
    out = {}
    for name in params:
        value = int(assignment[name]) % p
        if value == 0:
            raise ZeroParameter(f"Parameter {name} must be nonzero in F_{p}, got {assignment[name]}")
        out[name] = value
    return out


def coefficient_mod_p(coefficient: sympy.Expr, assignment: Mapping[str, int], p: int) -> int:
    """A rational-function coefficient evaluated at the assignment, as an element of F_p."""
    numerator, denominator = sympy.fraction(sympy.together(coefficient))
    values = {sympy.Symbol(name): value for name, value in assignment.items()}
    num_q = sympy.Rational(numerator.subs(values))
    den_q = sympy.Rational(denominator.subs(values))
    top = int(num_q.p) * int(den_q.q)
    bottom = int(num_q.q) * int(den_q.p)
    if bottom % p == 0:
        raise CoefficientPole(f"Coefficient {coefficient} has a pole at {dict(assignment)} mod {p}")
    return top * mod_inverse(bottom, p) % p
