"""Dirichlet characters mod q with exact root-of-unity bookkeeping.

Characters are enumerated through the CRT decomposition of (Z/q)* using the
smallest primitive root of each odd prime-power component (and <-1, 5> for
2^e, e >= 3).  A character is labeled by the lexicographic rank of its
exponent vector on that generator set, so label 0 is always the principal
character and the ordering is reproducible run to run.

Values are carried both as complex doubles and as exact exponents k with
chi(n) = exp(2*pi*i*k/D), D the exponent of the group.  Parity, conductor,
primitivity and realness are decided on the exact exponents; only Gauss sums
and root numbers are floating point.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError

TWO_PI = 2.0 * math.pi


def _cis_exact(m: int, d: int) -> complex:
    """exp(2*pi*i*m/d), exact at quarter turns so real characters are exactly +-1."""
    num = 4 * m
    if num % d == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(num // d) % 4]
    return cmath.exp(1j * TWO_PI * m / d)


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _prime_factors(n: int) -> list[int]:
    return [p for p, _ in _factorize(n)]


def _smallest_primitive_root(p: int, e: int) -> int:
    """Smallest primitive root mod p^e for odd prime p."""
    phi_p = p - 1
    qs = _prime_factors(phi_p)
    g = 0
    for cand in range(2, p):
        if all(pow(cand, phi_p // f, p) != 1 for f in qs):
            g = cand
            break
    if e == 1:
        return g
    # g generates mod p^e unless g^(p-1) == 1 mod p^2, in which case g+p does
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _crt_lift(v: int, pk: int, q: int) -> int:
    """x with x = v mod pk, x = 1 mod q/pk."""
    m = q // pk
    if m == 1:
        return v % q
    inv = pow(m, -1, pk)
    return (v * m * inv + pk * pow(pk, -1, m)) % q


def _unit_group(q: int) -> list[tuple[int, int]]:
    """(generator mod q, order) pairs for the CRT components of (Z/q)*."""
    comps: list[tuple[int, int]] = []
    for p, e in _factorize(q):
        pk = p**e
        if p == 2:
            if e == 2:
                comps.append((_crt_lift(3, 4, q), 2))
            elif e >= 3:
                comps.append((_crt_lift(pk - 1, pk, q), 2))
                comps.append((_crt_lift(5, pk, q), pk // 4))
            # e == 1: trivial component
        else:
            g = _smallest_primitive_root(p, e)
            comps.append((_crt_lift(g, pk, q), pk // p * (p - 1)))
    return comps


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod q: complex values plus exact exponents of order `order`.

    values[n] = chi(n mod q); exponents[n] is k with chi(n) = exp(2*pi*i*k/order),
    or None when gcd(n, q) > 1.
    """

    modulus: int
    label: int
    values: tuple[complex, ...]
    exponents: tuple[Optional[int], ...]
    order: int

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    def exponent(self, n: int) -> Optional[int]:
        return self.exponents[n % self.modulus]

    def __repr__(self) -> str:  # keep reprs short in failure output
        return f"chi({self.modulus}.{self.label})"


@dataclass(frozen=True)
class CharacterClassification:
    parity: int  # 0 if chi(-1) = 1, 1 if chi(-1) = -1
    conductor: int
    is_primitive: bool
    is_real: bool
    is_principal: bool


@dataclass(frozen=True)
class RootNumberData:
    gauss_sum: complex
    epsilon: complex
    primitive: bool  # False flags that |epsilon| = 1 is not guaranteed


def enumerate_characters(q: int) -> tuple[DirichletCharacter, ...]:
    """All phi(q) characters mod q, principal first, exponent-lexicographic."""
    if q < 1:
        raise DomainError(f"modulus must be >= 1, got {q}")
    if q == 1:
        # everything is 0 mod 1; the unique character is identically 1
        return (DirichletCharacter(1, 0, (1.0 + 0.0j,), (0,), 1),)

    comps = _unit_group(q)
    orders = [d for _, d in comps]
    # discrete logs: exponent tuple -> residue, built by direct enumeration
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(d) for d in orders)):
        n = 1
        for (g, _), e in zip(comps, exps):
            n = n * pow(g, e, q) % q
        dlog[n] = exps

    big_d = 1
    for d in orders:
        big_d = big_d * d // math.gcd(big_d, d)
    weights = [big_d // d for d in orders]

    chars = []
    for label, ks in enumerate(itertools.product(*(range(d) for d in orders))):
        exp_row: list[Optional[int]] = [None] * q
        val_row: list[complex] = [0.0 + 0.0j] * q
        for n, es in dlog.items():
            m = 0
            for k, w, e in zip(ks, weights, es):
                m += k * w * e
            m %= big_d
            exp_row[n] = m
            val_row[n] = _cis_exact(m, big_d)
        chars.append(
            DirichletCharacter(q, label, tuple(val_row), tuple(exp_row), big_d)
        )
    return tuple(chars)


def classify(chi: DirichletCharacter) -> CharacterClassification:
    """Parity, conductor, primitivity, realness, decided exactly."""
    q = chi.modulus
    if q == 1:
        return CharacterClassification(0, 1, True, True, True)
    d_ord = chi.order
    units = [n for n in range(q) if chi.exponents[n] is not None]

    parity = 0 if chi.exponents[q - 1] == 0 else 1
    is_real = all(2 * chi.exponents[n] % d_ord == 0 for n in units)
    is_principal = all(chi.exponents[n] == 0 for n in units)

    conductor = q
    for d in _divisors(q):
        # chi is induced from modulus d iff chi(n) = 1 whenever n = 1 mod d, gcd(n, q) = 1
        if all(chi.exponents[n] == 0 for n in units if n % d == 1 % d):
            conductor = d
            break
    return CharacterClassification(parity, conductor, conductor == q, is_real, is_principal)


def _divisors(q: int) -> list[int]:
    out = [1]
    for p, e in _factorize(q):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def primitivize(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) inducing chi."""
    cls = classify(chi)
    f = cls.conductor
    if f == chi.modulus:
        return chi
    q = chi.modulus
    target: dict[int, int] = {}
    for n in range(f):
        if f == 1 or math.gcd(n, f) == 1:
            # lift n mod f to a residue coprime to q
            m = n
            while q > 1 and math.gcd(m, q) != 1:
                m += f
            target[n] = chi.exponents[m % q]  # exact exponent, order chi.order
    for cand in enumerate_characters(f):
        scale_ok = True
        for n, e in target.items():
            ce = cand.exponents[n]
            if ce is None or ce * chi.order != e * cand.order:
                scale_ok = False
                break
        if scale_ok:
            return cand
    raise AssertionError("no primitive character matched; conductor computation is wrong")


def gauss_sum(chi: DirichletCharacter) -> complex:
    """sum_{k=1}^{q} chi(k) exp(2*pi*i*k/q)."""
    q = chi.modulus
    return sum(chi.values[k % q] * cmath.exp(1j * TWO_PI * k / q) for k in range(1, q + 1))


def root_number(chi: DirichletCharacter) -> RootNumberData:
    """epsilon = tau(chi) / (i^kappa sqrt(q)); unit modulus only for primitive chi."""
    cls = classify(chi)
    tau = gauss_sum(chi)
    eps = tau / (1j**cls.parity * math.sqrt(chi.modulus))
    return RootNumberData(tau, eps, cls.is_primitive)


def gauss_sum_collisions(q: int, tol: float = 1e-9) -> list[tuple[int, int]]:
    """Label pairs of distinct characters mod q whose Gauss sums coincide.

    The construction of distinct functional equations leans on these being
    distinct; measured here, not assumed (tau = 0 pairs do occur for induced
    characters).
    """
    chars = enumerate_characters(q)
    taus = [gauss_sum(c) for c in chars]
    out = []
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            if abs(taus[i] - taus[j]) <= tol:
                out.append((chars[i].label, chars[j].label))
    return out


@dataclass(frozen=True)
class CatalogEntry:
    q: int
    character: DirichletCharacter
    classification: CharacterClassification
    root: RootNumberData  # of the inducing primitive character
    gauss_sum_direct: complex


def catalog_self_dual(q_max: int, parity: int) -> list[CatalogEntry]:
    """Real non-principal characters of the given parity whose L-function has
    root number 1 (within 1e-9) and whose direct Gauss sum does not vanish.

    For non-primitive entries epsilon is computed from the inducing primitive
    character; the direct epsilon of an induced character is smaller by
    sqrt(conductor/q) and would wrongly reject them.
    """
    if parity not in (0, 1):
        raise DomainError(f"parity must be 0 or 1, got {parity}")
    if q_max < 1:
        raise DomainError(f"q_max must be >= 1, got {q_max}")
    out = []
    for q in range(3, q_max + 1):
        for chi in enumerate_characters(q):
            cls = classify(chi)
            if cls.is_principal or not cls.is_real or cls.parity != parity:
                continue
            tau_direct = gauss_sum(chi)
            if abs(tau_direct) <= 1e-9:
                continue
            root = root_number(primitivize(chi)) if not cls.is_primitive else root_number(chi)
            if abs(root.epsilon - 1.0) <= 1e-9:
                out.append(CatalogEntry(q, chi, cls, root, tau_direct))
    out.sort(key=lambda e: (e.q, e.character.label))
    return out


def catalog_json_records(entries: list[CatalogEntry]) -> list[dict]:
    return [
        {
            "q": e.q,
            "label": e.character.label,
            "parity": e.classification.parity,
            "conductor": e.classification.conductor,
            "primitive": e.classification.is_primitive,
            "epsilon_re": e.root.epsilon.real,
            "epsilon_im": e.root.epsilon.imag,
        }
        for e in entries
    ]


def catalog_table(entries: list[CatalogEntry]) -> str:
    """Aligned text rendering of a catalog."""
    header = f"{'q':>4} {'label':>5} {'parity':>6} {'cond':>5} {'prim':>5} {'eps_re':>18} {'eps_im':>18}"
    lines = [header]
    for e in entries:
        lines.append(
            f"{e.q:>4} {e.character.label:>5} {e.classification.parity:>6} "
            f"{e.classification.conductor:>5} {str(e.classification.is_primitive):>5} "
            f"{e.root.epsilon.real:>18.12g} {e.root.epsilon.imag:>18.12g}"
        )
    return "\n".join(lines)


def first_complex_character(q: int, parity: Optional[int] = None) -> Optional[DirichletCharacter]:
    """First (canonical order) primitive non-real character mod q, optionally
    of fixed parity; None when the unit group admits none."""
    for chi in enumerate_characters(q):
        cls = classify(chi)
        if cls.is_real or not cls.is_primitive:
            continue
        if parity is not None and cls.parity != parity:
            continue
        return chi
    return None


def conjugate_character(chi: DirichletCharacter) -> DirichletCharacter:
    """The character with values conj(chi(n)), matched by exact exponents."""
    for cand in enumerate_characters(chi.modulus):
        if cand.order != chi.order:
            continue
        if all(
            (ec is None) == (e is None) and (e is None or ec == (-e) % chi.order)
            for ec, e in zip(cand.exponents, chi.exponents)
        ):
            return cand
    raise DomainError(f"no conjugate found for character {chi.modulus}.{chi.label}")
