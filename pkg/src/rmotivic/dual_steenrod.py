"""The dual Steenrod algebra over F2[t, r] as a normal-form monomial algebra.

Monomials are t^a r^b * prod xi_i^{e_i} * prod T_k with every T-exponent 0 or
1; the square of a T-generator rewrites through

    T_k^2 = t*xi_{k+1} + r*T_{k+1} + r*T_0*xi_{k+1}.

Elements are F2-sums, stored as frozensets of monomials.  The module also
carries the coproduct, the right unit (t |-> t + r*T_0), and the standalone
rewriter for the equivariant presentation with its extra generator.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Tuple

from .coeff import BiDegree, MotivicCoeff

DEFAULT_INDEX_CAP = 6


class Monomial(NamedTuple):
    a: int  # t-exponent
    b: int  # r-exponent
    xi: Tuple[int, ...]  # xi[i] = exponent of xi_{i+1}
    tau: int  # bitmask, bit k set iff T_k present


Element = FrozenSet[Monomial]
Tensor = FrozenSet[Tuple[Monomial, Monomial]]

ONE = Monomial(0, 0, (), 0)


def mon(a: int = 0, b: int = 0, xi: Tuple[int, ...] = (), tau: int = 0) -> Monomial:
    while xi and xi[-1] == 0:
        xi = xi[:-1]
    return Monomial(a, b, xi, tau)


def xi_gen(i: int, e: int = 1) -> Monomial:
    if i < 1:
        raise ValueError("xi indices start at 1")
    return mon(xi=(0,) * (i - 1) + (e,))


def tau_gen(k: int) -> Monomial:
    return mon(tau=1 << k)


def tau_c(n: int = 1) -> Monomial:
    return mon(a=n)


def rho_c(n: int = 1) -> Monomial:
    return mon(b=n)


def elem(*monomials: Monomial) -> Element:
    acc: set = set()
    for m in monomials:
        acc.symmetric_difference_update({m})
    return frozenset(acc)


ZERO: Element = frozenset()


def add(*elements: Element) -> Element:
    acc: set = set()
    for e in elements:
        acc.symmetric_difference_update(e)
    return frozenset(acc)


def is_unit_monomial(m: Monomial) -> bool:
    return not m.xi and m.tau == 0


def is_reduced(m: Monomial) -> bool:
    """Coefficient-free and not the unit: a slot-ready basis monomial."""
    return m.a == 0 and m.b == 0 and not is_unit_monomial(m)


def strip_coeff(m: Monomial) -> Monomial:
    return Monomial(0, 0, m.xi, m.tau)


def monomial_bidegree(m: Monomial) -> BiDegree:
    p = -m.b
    q = -m.a - m.b
    for i, e in enumerate(m.xi, start=1):
        p += e * (2 ** (i + 1) - 2)
        q += e * (2 ** i - 1)
    k = 0
    t = m.tau
    while t:
        if t & 1:
            p += 2 ** (k + 1) - 1
            q += 2 ** k - 1
        t >>= 1
        k += 1
    return BiDegree(p, q)


def element_bidegree(x: Element) -> BiDegree:
    degs = {monomial_bidegree(m) for m in x}
    if len(degs) != 1:
        raise ValueError("inhomogeneous element")
    return next(iter(degs))


def _merge(m1: Monomial, m2: Monomial) -> Monomial:
    """Product of monomials with disjoint T-masks."""
    n = max(len(m1.xi), len(m2.xi))
    xi = tuple((m1.xi[i] if i < len(m1.xi) else 0) + (m2.xi[i] if i < len(m2.xi) else 0) for i in range(n))
    return mon(m1.a + m2.a, m1.b + m2.b, xi, m1.tau | m2.tau)


def _tau_square_terms(k: int) -> Tuple[Monomial, Monomial, Monomial]:
    return (
        mon(a=1, xi=(0,) * k + (1,)),  # t * xi_{k+1}
        mon(b=1, tau=1 << (k + 1)),  # r * T_{k+1}
        mon(b=1, xi=(0,) * k + (1,), tau=1),  # r * T_0 * xi_{k+1}
    )


_MUL_MEMO: Dict[Tuple[Monomial, Monomial, str], Element] = {}


def mul_mon(m1: Monomial, m2: Monomial, strategy: str = "lowest") -> Element:
    """Normal-form product of two monomials, rewriting T-squares exhaustively."""
    if m1 > m2:
        m1, m2 = m2, m1
    key = (m1, m2, strategy)
    hit = _MUL_MEMO.get(key)
    if hit is not None:
        return hit
    overlap = m1.tau & m2.tau
    if overlap == 0:
        result = elem(_merge(m1, m2))
    else:
        if strategy == "lowest":
            k = (overlap & -overlap).bit_length() - 1
        elif strategy == "highest":
            k = overlap.bit_length() - 1
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        s1 = m1._replace(tau=m1.tau & ~(1 << k))
        s2 = m2._replace(tau=m2.tau & ~(1 << k))
        acc: set = set()
        for rel in _tau_square_terms(k):
            for p in mul_mon(s1, s2, strategy):
                acc.symmetric_difference_update(mul_mon(p, rel, strategy))
        result = frozenset(acc)
    _MUL_MEMO[key] = result
    return result


def mul(x: Element, y: Element, strategy: str = "lowest") -> Element:
    acc: set = set()
    for m1 in x:
        for m2 in y:
            acc.symmetric_difference_update(mul_mon(m1, m2, strategy))
    return frozenset(acc)


def normalize(word: Iterable, strategy: str = "lowest") -> Element:
    """Normal form of a formal product of generators/coefficients.

    Accepts Monomial factors or the tokens "t", "r", ("xi", i[, e]), ("tau", k).
    """
    result = elem(ONE)
    for atom in word:
        result = mul(result, elem(_atom(atom)), strategy)
    return result


def _atom(atom) -> Monomial:
    if isinstance(atom, Monomial):
        return atom
    if atom == "t":
        return tau_c()
    if atom == "r":
        return rho_c()
    if isinstance(atom, tuple) and atom[0] == "xi":
        return xi_gen(atom[1], atom[2] if len(atom) > 2 else 1)
    if isinstance(atom, tuple) and atom[0] == "tau":
        return tau_gen(atom[1])
    raise ValueError(f"unknown atom {atom!r}")


# ---------- right unit ----------

_ETA_MEMO: Dict[Tuple[int, int], Element] = {}


def right_unit_coeff(a: int, b: int) -> Element:
    """Right unit on t^a r^b: multiplicative extension of t |-> t + r*T_0."""
    key = (a, b)
    hit = _ETA_MEMO.get(key)
    if hit is not None:
        return hit
    if a == 0:
        result = elem(mon(b=b))
    else:
        prev = right_unit_coeff(a - 1, b)
        result = mul(prev, elem(tau_c(), mon(b=1, tau=1)))
    _ETA_MEMO[key] = result
    return result


def right_unit(c: MotivicCoeff) -> Element:
    acc: set = set()
    for a, b in c.terms:
        acc.symmetric_difference_update(right_unit_coeff(a, b))
    return frozenset(acc)


def counit(x: Element) -> MotivicCoeff:
    return MotivicCoeff((m.a, m.b) for m in x if is_unit_monomial(m))


def reduced_right_unit_coeff(a: int, b: int) -> Element:
    """right_unit(t^a r^b) minus its unit-monomial part."""
    return frozenset(m for m in right_unit_coeff(a, b) if not is_unit_monomial(m))


# ---------- coproduct ----------

# Tensors over the coefficient ring: all coefficients normalized into the left
# slot; a coefficient c crossing the tensor sign from the right multiplies the
# left slot by right_unit(c).


def _push_pair(left: Element, rm: Monomial) -> Tensor:
    if rm.a == 0 and rm.b == 0:
        return frozenset((lm, rm) for lm in left)
    stripped = strip_coeff(rm)
    moved = mul(left, right_unit_coeff(rm.a, rm.b))
    return frozenset((lm, stripped) for lm in moved)


def tensor_mul(t1: Tensor, t2: Tensor) -> Tensor:
    acc: set = set()
    for l1, r1 in t1:
        for l2, r2 in t2:
            left = mul_mon(l1, l2)
            for rm in mul_mon(r1, r2):
                acc.symmetric_difference_update(_push_pair(left, rm))
    return frozenset(acc)


def _coproduct_xi(i: int) -> Tensor:
    terms = [(xi_gen(i), ONE), (ONE, xi_gen(i))]
    for j in range(1, i):
        terms.append((xi_gen(i - j, 2 ** j), xi_gen(j)))
    return frozenset(terms)


def _coproduct_tau(k: int) -> Tensor:
    terms = [(tau_gen(k), ONE), (ONE, tau_gen(k))]
    for j in range(1, k + 1):
        terms.append((xi_gen(j, 2 ** (k - j)), tau_gen(k - j)))
    return frozenset(terms)


_DELTA_MEMO: Dict[Monomial, Tensor] = {}


def coproduct_mon(m: Monomial) -> Tensor:
    hit = _DELTA_MEMO.get(m)
    if hit is not None:
        return hit
    if is_unit_monomial(m):
        result: Tensor = frozenset({(m, ONE)})
    else:
        # peel one generator
        if m.tau:
            k = m.tau.bit_length() - 1
            rest = m._replace(tau=m.tau & ~(1 << k))
            factor = _coproduct_tau(k)
        else:
            i = len(m.xi)
            rest = mon(m.a, m.b, m.xi[:-1] + (m.xi[-1] - 1,), m.tau)
            factor = _coproduct_xi(i)
        result = tensor_mul(coproduct_mon(rest), factor)
    _DELTA_MEMO[m] = result
    return result


def coproduct(x: Element) -> Tensor:
    acc: set = set()
    for m in x:
        acc.symmetric_difference_update(coproduct_mon(m))
    return frozenset(acc)


def reduced_coproduct_mon(m: Monomial) -> Tensor:
    """Coproduct minus the primitive part m(x)1 + 1(x)m; m must be reduced."""
    if not is_reduced(m):
        raise ValueError(f"need a reduced monomial, got {m!r}")
    return coproduct_mon(m) ^ frozenset({(m, ONE), (ONE, m)})


# ---------- iterated coproduct (for the chain-level operations) ----------

TensorN = FrozenSet[Tuple[Monomial, ...]]

_DELTA_N_MEMO: Dict[Tuple[Monomial, int], TensorN] = {}


def _push_tuple(parts: Tuple[Monomial, ...]) -> TensorN:
    """Move coefficients left until only parts[0] carries any, via the right unit."""
    out: set = set()
    stack = [tuple(parts)]
    while stack:
        cur = stack.pop()
        for i in range(1, len(cur)):
            m = cur[i]
            if m.a or m.b:
                stripped = strip_coeff(m)
                for g in right_unit_coeff(m.a, m.b):
                    for h in mul_mon(cur[i - 1], g):
                        stack.append(cur[: i - 1] + (h, stripped) + cur[i + 1 :])
                break
        else:
            out.symmetric_difference_update({cur})
    return frozenset(out)


def iterated_coproduct(m: Monomial, n: int) -> TensorN:
    """n-fold coproduct with all coefficients on the first component."""
    if n < 1:
        raise ValueError("need n >= 1")
    key = (m, n)
    hit = _DELTA_N_MEMO.get(key)
    if hit is not None:
        return hit
    if n == 1:
        result: TensorN = frozenset({(m,)})
    else:
        acc: set = set()
        for parts in iterated_coproduct(m, n - 1):
            for l, r in coproduct_mon(parts[-1]):
                acc.symmetric_difference_update(_push_tuple(parts[:-1] + (l, r)))
        result = frozenset(acc)
    _DELTA_N_MEMO[key] = result
    return result


# ---------- bases ----------


def _reduced_monomials_upto(budget: int, cap: int) -> List[Monomial]:
    """All coefficient-free monomials with (p - q)-weight at most budget.

    Every generator contributes at least 1 to p - q, so this is finite.
    """
    out = [ONE]
    stage = [ONE]
    gens = [(xi_gen(i), 2 ** i - 1) for i in range(1, cap + 1)]
    gens += [(tau_gen(k), 2 ** k) for k in range(cap + 1)]
    for g, w in gens:
        nxt = []
        for m in stage:
            d = monomial_bidegree(m)
            used = d.p - d.q
            cur = m
            while used + w <= budget:
                if g.tau and (cur.tau & g.tau):
                    break
                cur = _merge(cur, g)
                used += w
                nxt.append(cur)
        stage = stage + nxt
        out = stage
    return out


_SLOT_BASIS_MEMO: Dict[Tuple[int, int], Dict[BiDegree, List[Monomial]]] = {}


def slot_basis_table(max_pq: int, cap: int = DEFAULT_INDEX_CAP) -> Dict[BiDegree, List[Monomial]]:
    """Coefficient-free monomials grouped by bidegree, for p - q <= max_pq."""
    key = (max_pq, cap)
    hit = _SLOT_BASIS_MEMO.get(key)
    if hit is not None:
        return hit
    table: Dict[BiDegree, List[Monomial]] = {}
    for m in _reduced_monomials_upto(max_pq, cap):
        table.setdefault(monomial_bidegree(m), []).append(m)
    for v in table.values():
        v.sort()
    _SLOT_BASIS_MEMO[key] = table
    return table


def _rounded_table(budget: int, cap: int) -> Dict[BiDegree, List[Monomial]]:
    # round the budget up so repeated queries share one memoized table
    return slot_basis_table(((budget + 15) // 16) * 16, cap)


def slot_basis(d: BiDegree, cap: int = DEFAULT_INDEX_CAP) -> List[Monomial]:
    """Coefficient-free non-unit monomials of bidegree d (the slot alphabet)."""
    if d.p - d.q < 0:
        return []
    table = _rounded_table(d.p - d.q, cap)
    return [m for m in table.get(d, []) if not is_unit_monomial(m)]


def basis(d: BiDegree, reduced: bool = False, cap: int = DEFAULT_INDEX_CAP) -> List[Monomial]:
    """All normal-form monomials of bidegree d.

    With reduced=True, restricts to the coefficient-free non-unit monomials
    (the module basis of the unit coideal).
    """
    if reduced:
        return slot_basis(d, cap)
    budget = d.p - d.q
    if budget < 0:
        return []
    out = []
    for md, monomials in _rounded_table(budget, cap).items():
        b = md.p - d.p
        a = md.q - d.q - b
        if a >= 0 and b >= 0:
            out.extend(mon(a, b, m.xi, m.tau) for m in monomials)
    out.sort()
    return out


# ---------- rendering ----------


def render_monomial(m: Monomial) -> str:
    parts = []
    if m.b == 1:
        parts.append("r")
    elif m.b > 1:
        parts.append(f"r^{m.b}")
    if m.a == 1:
        parts.append("t")
    elif m.a > 1:
        parts.append(f"t^{m.a}")
    for i, e in enumerate(m.xi, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    k = 0
    t = m.tau
    while t:
        if t & 1:
            parts.append(f"T{k}")
        t >>= 1
        k += 1
    return " ".join(parts) if parts else "1"


def render(x: Element) -> str:
    if not x:
        return "0"
    return " + ".join(render_monomial(m) for m in sorted(x))


# ---------- the equivariant presentation ----------


class EqMonomial(NamedTuple):
    a: int  # t-exponent
    b: int  # r-exponent
    al: int  # exponent of the extra generator (right unit of t)
    xi: Tuple[int, ...]
    tau: int


EQ_ONE = EqMonomial(0, 0, 0, (), 0)


def eq_mon(a=0, b=0, al=0, xi=(), tau=0) -> EqMonomial:
    while xi and xi[-1] == 0:
        xi = xi[:-1]
    return EqMonomial(a, b, al, xi, tau)


def _eq_rewrites(m: EqMonomial):
    """One rewrite step, or None if m is normal.

    Relations: T_0 * r = alpha + t and T_k^2 = T_{k+1} r + xi_{k+1} alpha.
    """
    if (m.tau & 1) and m.b >= 1:
        base = m._replace(b=m.b - 1, tau=m.tau & ~1)
        return [base._replace(al=m.al + 1), base._replace(a=m.a + 1)]
    return None


def eq_mul_mon(m1: EqMonomial, m2: EqMonomial) -> FrozenSet[EqMonomial]:
    overlap = m1.tau & m2.tau
    if overlap == 0:
        n = max(len(m1.xi), len(m2.xi))
        xi = tuple(
            (m1.xi[i] if i < len(m1.xi) else 0) + (m2.xi[i] if i < len(m2.xi) else 0)
            for i in range(n)
        )
        merged = eq_mon(m1.a + m2.a, m1.b + m2.b, m1.al + m2.al, xi, m1.tau | m2.tau)
        return _eq_normal_mon(merged)
    k = (overlap & -overlap).bit_length() - 1
    s1 = m1._replace(tau=m1.tau & ~(1 << k))
    s2 = m2._replace(tau=m2.tau & ~(1 << k))
    rel = [eq_mon(b=1, tau=1 << (k + 1)), eq_mon(al=1, xi=(0,) * k + (1,))]
    acc: set = set()
    for r in rel:
        for p in eq_mul_mon(s1, s2):
            acc.symmetric_difference_update(eq_mul_mon(p, r))
    return frozenset(acc)


def _eq_normal_mon(m: EqMonomial) -> FrozenSet[EqMonomial]:
    step = _eq_rewrites(m)
    if step is None:
        return frozenset({m})
    acc: set = set()
    for n in step:
        acc.symmetric_difference_update(_eq_normal_mon(n))
    return frozenset(acc)


def equivariant_normalize(word: Iterable) -> FrozenSet[EqMonomial]:
    """Normal form of a word in t, r, alpha, xi_i, T_k over the positive part.

    Divisible-torsion (cone) coefficients are out of scope and rejected.
    """
    result: FrozenSet[EqMonomial] = frozenset({EQ_ONE})
    for atom in word:
        m = _eq_atom(atom)
        acc: set = set()
        for x in result:
            acc.symmetric_difference_update(eq_mul_mon(x, m))
        result = frozenset(acc)
    return result


def _eq_atom(atom) -> EqMonomial:
    if isinstance(atom, EqMonomial):
        return atom
    if atom == "t":
        return eq_mon(a=1)
    if atom == "r":
        return eq_mon(b=1)
    if atom == "alpha":
        return eq_mon(al=1)
    if isinstance(atom, tuple) and atom[0] == "xi":
        return eq_mon(xi=(0,) * (atom[1] - 1) + (atom[2] if len(atom) > 2 else 1,))
    if isinstance(atom, tuple) and atom[0] == "tau":
        return eq_mon(tau=1 << atom[1])
    raise ValueError(f"cone or unknown atom {atom!r} rejected")


def clear_caches() -> None:
    _MUL_MEMO.clear()
    _ETA_MEMO.clear()
    _DELTA_MEMO.clear()
    _DELTA_N_MEMO.clear()
    _SLOT_BASIS_MEMO.clear()
