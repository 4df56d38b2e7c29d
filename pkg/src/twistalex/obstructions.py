"""Theorem-level consequences: divisibility at infinity, root fields, local
polynomials, the alpha term, and specialization dimension bounds.

For a curve transversal to the line at infinity the link at infinity is the
generalized Hopf link, so Delta_1 of the curve complement divides an explicit
product built from the representation at infinity.  The roots of Delta_1 for
unitary representations land in a computable cyclotomic extension.  Local
polynomials at singular points come from the local link groups with the
component weights pushed in by t -> t^n substitution.  The alpha term is the
per-component correction factor in the global torsion equation, and the
dimension bound relates (t - a)-multiplicities of the Delta's to homology
dimensions of the rank-1 specialization at t = a.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import CycloNumber, FieldContext, ScalarMatrix, lcm, totient
from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    RationalFunction,
    gcd_many,
    laurent_gcd,
    multiplicity,
)
from .presentations import (
    Augmentation,
    a_odd_augmentation,
    a_odd_reduced_presentation,
    braid_cusp_presentation,
    hopf_augmentation,
    hopf_presentation,
    rank_one_representation,
    torus_germ_augmentation,
    torus_germ_presentation,
)
from .homology import (
    AlexanderResult,
    InternalInvariantError,
    TwistedChainComplex,
    build_complex,
    homology,
    specialize_homology,
)

__all__ = [
    "CurveComponent",
    "Singularity",
    "CurveData",
    "infinity_bound",
    "DivisibilityReport",
    "check_divides",
    "RootFieldReport",
    "root_field",
    "extension_degree_formula",
    "LocalPolynomial",
    "local_polynomial",
    "cusp_printed_formula",
    "alpha_term",
    "DimensionBoundReport",
    "dimension_bound_check",
    "cyclotomic_factors",
]


class CurveComponent:
    """One irreducible component: its degree, meridian weight, and (when an
    analysis needs them) the meridian's representation matrix and the
    component's Euler characteristic."""

    __slots__ = ("degree", "weight", "meridian", "euler")

    def __init__(self, degree: int, weight: int, meridian: ScalarMatrix | None = None, euler: int | None = None):
        if degree < 1:
            raise ValueError("component degree must be positive")
        if weight < 1:
            raise ValueError("meridian weights must be positive")
        self.degree = degree
        self.weight = weight
        self.meridian = meridian
        self.euler = euler


class Singularity:
    """A singular point: its type tag, the indices of the components through
    it, and type parameters (n for A_{2n-1}, (p, q) for torus, k for an
    ordinary k-fold point)."""

    __slots__ = ("kind", "components", "params")

    KINDS = ("node", "ordinary", "a_odd", "torus", "cusp")

    def __init__(self, kind: str, components, params=()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown singularity kind {kind!r}")
        self.kind = kind
        self.components = tuple(int(c) for c in components)
        self.params = tuple(int(p) for p in params)


class CurveData:
    """A reduced plane curve of degree d = sum of component degrees."""

    __slots__ = ("components", "singularities")

    def __init__(self, components, singularities=()):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("a curve needs at least one component")
        self.singularities = tuple(singularities)
        for s in self.singularities:
            for q in s.components:
                if not 0 <= q < len(self.components):
                    raise ValueError("singularity references a missing component")

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.components)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def weight_gcd(self) -> int:
        g = 0
        for c in self.components:
            g = math.gcd(g, c.weight)
        return g

    @property
    def total_weight(self) -> int:
        """eps(x_0) = sum over components of degree * weight."""
        return sum(c.degree * c.weight for c in self.components)

    def line_weights(self) -> list[int]:
        """Weights of the d lines of the arrangement at infinity, expanded in
        component order: component l contributes degree(l) lines of weight
        n_l."""
        out: list[int] = []
        for c in self.components:
            out.extend([c.weight] * c.degree)
        return out

    def singular_count(self, q: int) -> int:
        return sum(1 for s in self.singularities if q in s.components)


def infinity_bound(curve: CurveData, rho_at_infinity) -> LaurentPoly:
    """The divisor bound at infinity:

        gcd(det(rho(x0) t^E - Id), det(rho(x1) t^(w1) - Id), ...,
            det(rho(x_{d-1}) t^(w_{d-1}) - Id)) * det(rho(x0) t^E - Id)^(d-2)

    with E = sum of degree * weight and w_i the line weights in component
    order (the d-th line's meridian is eliminated in the presentation, so
    only x_1 .. x_{d-1} appear alongside the central x_0).  The matrices must
    form a valid Hopf representation: x_0's image commutes with every other.
    """
    mats = list(rho_at_infinity)
    d = curve.degree
    if len(mats) != d:
        raise ValueError(f"need matrices for x0..x{d-1} ({d} of them)")
    ctx = mats[0].context
    for m in mats:
        if m.rows != m.cols or m.rows != mats[0].rows:
            raise ValueError("representation matrices must be square of equal size")
        if m.det().is_zero():
            raise ValueError("representation matrices must be invertible")
        if not mats[0].commutes_with(m):
            raise ValueError("rho(x0) must commute with every rho(x_i)")
    r = mats[0].rows
    eye = LaurentMatrix.identity(ctx, r)
    e0 = curve.total_weight
    weights = curve.line_weights()

    det0 = (LaurentMatrix.from_scalar_matrix(mats[0], e0) - eye).determinant()
    dets = [det0]
    for i in range(1, d):
        dets.append(
            (LaurentMatrix.from_scalar_matrix(mats[i], weights[i - 1]) - eye).determinant()
        )
    bound = gcd_many(dets) * det0 ** (d - 2)
    return bound.normalize()


class DivisibilityReport:
    """Verdict of an exact divisibility test, with the quotient on success or
    the residual factor of the candidate on failure."""

    __slots__ = ("candidate", "bound", "divides", "quotient", "witness")

    def __init__(self, candidate, bound, divides, quotient, witness):
        self.candidate = candidate
        self.bound = bound
        self.divides = divides
        self.quotient = quotient
        self.witness = witness

    def __repr__(self):
        if self.divides:
            return f"DivisibilityReport(divides, quotient={self.quotient})"
        return f"DivisibilityReport(fails, witness={self.witness})"


def check_divides(delta: LaurentPoly, bound: LaurentPoly) -> DivisibilityReport:
    """Does delta divide bound in F[t, t^-1]?

    On failure the witness is the factor of delta (with multiplicity) that
    remains after peeling every common factor off both sides, i.e. the part
    of delta whose multiplicity exceeds the bound's.
    """
    if bound.is_zero():
        raise ValueError("zero bound")
    if delta.is_zero():
        return DivisibilityReport(delta, bound, False, None, delta)
    if delta.divides(bound):
        quotient = (bound.exact_div(delta)).normalize()
        return DivisibilityReport(delta, bound, True, quotient, None)
    w = delta.normalize()
    b = bound
    while True:
        g = laurent_gcd(w, b)
        if g.is_unit():
            break
        w = w.exact_div(g).normalize()
        b = b.exact_div(g)
    return DivisibilityReport(delta, bound, False, None, w)


class RootFieldReport:
    """Where the roots of Delta_1 live for a curve of degree d transversal at
    infinity: the splitting field S of prod(t^d - lambda_i) over Q, with the
    lambda_i the eigenvalues of rho(x0)^-1.

    exact is True when every eigenvalue is a root of unity (finite-order
    matrix); then eigenvalues, their multiplicative orders, the conductor of
    S (lcm of the exact orders of all d-th roots of the lambda_i together
    with the orders themselves), the conductor of K = Q(lambda_1..lambda_r),
    and the true degree [S:K] = phi(S) / phi(K) are filled in.
    formula_degree is the displayed totient formula
    phi(lcm(d, k_1..k_r)) / phi(lcm(k_1..k_r)) evaluated on the eigenvalue
    orders; it equals the true degree when gcd(d, k_i) constraints permit and
    understates it otherwise, so both are reported.
    """

    __slots__ = (
        "exact",
        "d",
        "eigenvalues",
        "eigenvalue_orders",
        "conductor",
        "base_conductor",
        "degree",
        "formula_degree",
    )

    def __init__(self, exact, d, eigenvalues, eigenvalue_orders, conductor, base_conductor, degree, formula_degree):
        self.exact = exact
        self.d = d
        self.eigenvalues = tuple(eigenvalues)
        self.eigenvalue_orders = tuple(eigenvalue_orders)
        self.conductor = conductor
        self.base_conductor = base_conductor
        self.degree = degree
        self.formula_degree = formula_degree

    def __repr__(self):
        if not self.exact:
            return f"RootFieldReport(symbolic, d={self.d}, formula_degree={self.formula_degree})"
        return (
            f"RootFieldReport(d={self.d}, orders={self.eigenvalue_orders}, "
            f"conductor={self.conductor}, degree={self.degree}, formula_degree={self.formula_degree})"
        )


def _matrix_multiplicative_order(m: ScalarMatrix, bound: int = 4096) -> int | None:
    acc = m
    eye = ScalarMatrix.identity(m.context, m.rows)
    for k in range(1, bound + 1):
        if acc == eye:
            return k
        acc = acc * m
    return None


def _charpoly_roots_of_unity(m: ScalarMatrix, order: int):
    """Eigenvalues of a finite-order matrix: roots of det(t Id - m) among the
    order-th roots of unity, with multiplicity, in the field Q(zeta_N) with N
    = lcm(ambient conductor, order)."""
    n = lcm([m.context.conductor, order])
    big = FieldContext(n)
    work = m.embed(big) if m.context.conductor != n else m
    # char(t) = det(t Id - m) as a Laurent polynomial in t.
    eye = LaurentMatrix.identity(big, work.rows)
    tm = eye * LaurentPoly.t_power(big, 1) - LaurentMatrix.from_scalar_matrix(work, 0)
    char = tm.determinant()
    eigenvalues = []
    for j in range(n):
        z = big.zeta(j)
        while char.evaluate(z).is_zero():
            char = char.exact_div(LaurentPoly(big, [-z, big.one]))
            eigenvalues.append(z)
    if len(eigenvalues) != m.rows:
        raise ValueError("eigenvalues not expressible as roots of unity in the ambient field")
    return eigenvalues, big


def extension_degree_formula(d: int, algebraic_orders, transcendental_count: int = 0):
    """The displayed degree formula for [S:K]:

        d^m * phi(lcm(d, k_1, ..., k_r)) / phi(lcm(k_1, ..., k_r))

    with m independent transcendental eigenvalues and k_i the orders of the
    algebraic (root-of-unity) eigenvalues.  With no algebraic eigenvalues the
    empty lcm is 1 and the value is d^m * phi(d); with no transcendentals it
    is the pure totient quotient.
    """
    ks = [int(k) for k in algebraic_orders]
    base = lcm(ks) if ks else 1
    value = Fraction(d**transcendental_count) * Fraction(totient(lcm([d, base])), totient(base))
    if value.denominator != 1:
        return value
    return int(value)


def root_field(rho_x0: ScalarMatrix, d: int, order_bound: int = 4096) -> RootFieldReport:
    """Splitting-field data for the roots of Delta_1 (curve of degree d
    transversal at infinity, unitary-type representation).

    Exact path: rho(x0) must have finite multiplicative order; the
    eigenvalues lambda_i of rho(x0)^-1 are then roots of unity read off the
    characteristic polynomial, every d-th root of each lambda_i is a root of
    unity of computable exact order, and S is the cyclotomic field generated
    by all of them together with K.  Without finite order the report is
    symbolic only (degree formula unavailable without the orders).
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    inv = rho_x0.inverse()
    order = _matrix_multiplicative_order(inv, order_bound)
    if order is None:
        return RootFieldReport(False, d, (), (), None, None, None, None)
    eigenvalues, big = _charpoly_roots_of_unity(inv, order)
    orders = [ev.multiplicative_order() for ev in eigenvalues]
    # Exact orders of all d-th roots of each eigenvalue: lambda = zeta_N^(d b)
    # in the cyclic group of order N = d * o; the roots are zeta_N^(b + j o)
    # and the root orders are N / gcd(N, b + j o).
    root_orders: list[int] = []
    for ev, o in zip(eigenvalues, orders):
        n_total = d * o
        # Find b with ev = zeta_{o}^b, gcd(b, o) = 1 (b = 0 for ev = 1).
        target = FieldContext(lcm([big.conductor, o]))
        evt = ev.embed(target) if big.conductor != target.conductor else ev
        b = None
        for j in range(o):
            if target.zeta(j * (target.conductor // o)) == evt:
                b = j
                break
        if b is None:
            raise InternalInvariantError("eigenvalue lost its own order")
        for j in range(d):
            e = b + j * o
            root_orders.append(n_total // math.gcd(n_total, e))
    conductor = lcm(root_orders + orders) if root_orders else 1
    base_conductor = lcm(orders) if orders else 1
    degree = totient(conductor) // totient(base_conductor)
    formula = extension_degree_formula(d, orders)
    return RootFieldReport(True, d, eigenvalues, orders, conductor, base_conductor, degree, formula)


class LocalPolynomial:
    """Twisted Alexander data of the link of one singularity type."""

    __slots__ = ("kind", "params", "weights", "delta0", "delta1", "ratio", "printed_formula", "printed_matches")

    def __init__(self, kind, params, weights, delta0, delta1, ratio, printed_formula=None, printed_matches=None):
        self.kind = kind
        self.params = params
        self.weights = weights
        self.delta0 = delta0
        self.delta1 = delta1
        self.ratio = ratio
        self.printed_formula = printed_formula
        self.printed_matches = printed_matches

    def __repr__(self):
        return f"LocalPolynomial({self.kind}{self.params}, weights={self.weights}, delta1={self.delta1})"


def cusp_printed_formula(sx: CycloNumber, sy: CycloNumber, nx: int, ny: int) -> RationalFunction:
    """The displayed cusp ratio det(rho(x)t^nx - rho(y)rho(x)t^(nx+ny) - I) /
    det(I - rho(x)t^nx) for rank-1 rho; recorded for comparison against the
    engine, never substituted for it."""
    ctx = sx.context
    num = LaurentPoly(ctx, [sx], nx) - LaurentPoly(ctx, [sy * sx], nx + ny) - LaurentPoly.one(ctx)
    den = LaurentPoly.one(ctx) - LaurentPoly(ctx, [sx], nx)
    return RationalFunction(num, den)


def local_polynomial(context: FieldContext, kind: str, weights, scalars=None, params=()) -> LocalPolynomial:
    """Delta data of the local link group of a singularity, for rank-1
    representations, with component weights applied directly as eps.

    Supported kinds (weights are per branch through the point):
      node          two transversal smooth branches: Hopf(2)
      ordinary k    k pairwise-transversal branches: Hopf(k), params=(k,)
      a_odd n       two branches with n-th order contact, params=(n,); the
                    reduced presentation carries the computation (same H0 and
                    H1 as the full one)
      torus (p, q)  one branch, germ generators, params=(p, q); eps scales by
                    the abelianization exponents (q n, p n)
      cusp          torus (2, 3) in braid meridian generators; the printed
                    closed-form ratio is evaluated alongside and compared

    scalars: rank-1 representation values, one per presentation generator
    except where the builder determines them (Hopf x0 = product of all branch
    meridian values; a_odd b = product).  Omitted scalars default to 1.
    """
    params = tuple(int(p) for p in params)
    weights = [int(w) for w in weights]

    def scalar(v):
        if isinstance(v, CycloNumber):
            return v
        return context.from_rational(v)

    if kind == "node":
        kind, params = "ordinary", (2,)
    if kind == "ordinary":
        (k,) = params
        if len(weights) != k:
            raise ValueError(f"ordinary {k}-point needs {k} branch weights")
        branch = [scalar(s) for s in (scalars if scalars is not None else [1] * k)]
        if len(branch) != k:
            raise ValueError(f"ordinary {k}-point needs {k} branch scalars")
        pres = hopf_presentation(k)
        eps = hopf_augmentation(weights)
        x0 = context.one
        for s in branch:
            x0 = x0 * s
        rho = rank_one_representation(context, pres, [x0] + branch[: k - 1])
    elif kind == "a_odd":
        (n,) = params
        if len(weights) != 2:
            raise ValueError("an A_{2n-1} point lies on two branches")
        branch = [scalar(s) for s in (scalars if scalars is not None else [1, 1])]
        pres = a_odd_reduced_presentation(n)
        eps = a_odd_augmentation(n, weights[0], weights[1])
        values = [branch[0] if i % 2 == 0 else branch[1] for i in range(2 * n)]
        values.append(branch[1] * branch[0])
        rho = rank_one_representation(context, pres, values)
    elif kind == "torus":
        p, q = params
        if len(weights) != 1:
            raise ValueError("a torus germ has a single branch")
        pres = torus_germ_presentation(p, q)
        eps = torus_germ_augmentation(p, q, weights[0])
        vals = [scalar(s) for s in (scalars if scalars is not None else [1, 1])]
        rho = rank_one_representation(context, pres, vals)
    elif kind == "cusp":
        if len(weights) != 1:
            raise ValueError("a cusp has a single branch")
        n = weights[0]
        pres = braid_cusp_presentation()
        eps = Augmentation([n, n])
        # Both generators are meridians of the one branch, hence conjugate:
        # a rank-1 representation must give them the same value.
        vals = [scalar(s) for s in (scalars if scalars is not None else [1])]
        if len(vals) == 1:
            vals = [vals[0], vals[0]]
        rho = rank_one_representation(context, pres, vals)
    else:
        raise ValueError(f"unsupported singularity kind {kind!r}")

    cx = build_complex(pres, eps, rho)
    res = homology(cx)
    delta0 = res.delta(0)
    delta1 = res.delta(1)
    ratio = res.ratio() if not delta0.is_zero() else None
    printed = None
    matches = None
    if kind == "cusp":
        printed = cusp_printed_formula(rho.matrices[0][0, 0], rho.matrices[1][0, 0], n, n)
        matches = ratio is not None and printed.unit_equal(ratio)
    return LocalPolynomial(kind, params, tuple(weights), delta0, delta1, ratio, printed, matches)


def alpha_term(curve: CurveData) -> RationalFunction:
    """The correction factor

        alpha = prod over components q of det(Id - rho(nu_q) t^eps(nu_q))
                raised to (s_q - chi(C_q))

    with s_q the number of singular points on C_q and chi its Euler
    characteristic; negative exponents stay in the denominator.  Every
    component must carry its meridian matrix and Euler characteristic.
    """
    ctx = None
    for q, comp in enumerate(curve.components):
        if comp.meridian is None or comp.euler is None:
            raise ValueError(f"component {q} is missing meridian matrix or Euler characteristic")
        ctx = comp.meridian.context if ctx is None else ctx
    num = LaurentPoly.one(ctx)
    den = LaurentPoly.one(ctx)
    for q, comp in enumerate(curve.components):
        r = comp.meridian.rows
        eye = LaurentMatrix.identity(ctx, r)
        det = (eye - LaurentMatrix.from_scalar_matrix(comp.meridian, comp.weight)).determinant()
        e = curve.singular_count(q) - comp.euler
        if e > 0:
            num = num * det**e
        elif e < 0:
            den = den * det**(-e)
    return RationalFunction(num, den)


class DimensionBoundReport:
    """Specialization dimensions at t = a against the (t - a)-multiplicities
    of the Delta's: dim H_i(a) >= N(a, i) + N(a, i-1)."""

    __slots__ = ("value", "dims", "multiplicities", "bounds", "ok")

    def __init__(self, value, dims, multiplicities, bounds, ok):
        self.value = value
        self.dims = dims
        self.multiplicities = multiplicities
        self.bounds = bounds
        self.ok = ok

    def __repr__(self):
        return f"DimensionBoundReport(dims={self.dims}, bounds={self.bounds}, ok={self.ok})"


def dimension_bound_check(result: AlexanderResult, complex_: TwistedChainComplex, value) -> DimensionBoundReport:
    """Check dim H_i(t=a) >= N(a,i) + N(a,i-1) for i = 0, 1, 2, where N(a,q)
    is the multiplicity of (t - a) in the torsion order of H_q.

    Needs H_0 and H_1 torsion (H_2's torsion part is trivially zero since it
    is a submodule of a free module).  A violated bound is fatal.
    """
    if result.h0.free_rank or result.h1.free_rank:
        raise ValueError("dimension bound needs torsion H_0 and H_1")
    if not isinstance(value, CycloNumber):
        value = complex_.context.from_rational(value)
    if value.is_zero():
        raise ValueError("specialization value must be nonzero")

    n_ctx = lcm([complex_.context.conductor, value.context.conductor])
    big = FieldContext(n_ctx)

    def mult_at(shape) -> int:
        order = shape.torsion_order()
        if big.conductor != order.context.conductor:
            order = order.embed(big)
        v = value if value.context.conductor == big.conductor else value.embed(big)
        return multiplicity(order, v)

    n0 = mult_at(result.h0)
    n1 = mult_at(result.h1)
    n2 = 0
    dims = specialize_homology(complex_, value)
    bounds = (n0, n1 + n0, n2 + n1)
    ok = all(dims[i] >= bounds[i] for i in range(3))
    report = DimensionBoundReport(value, dims, (n0, n1, n2), bounds, ok)
    if not ok:
        raise InternalInvariantError(f"dimension bound violated: {report!r}")
    return report


def cyclotomic_factors(poly: LaurentPoly, candidate_orders):
    """Strip every root-of-unity linear factor (t - zeta) with the order of
    zeta among the candidates; returns ([(order, power, multiplicity)...],
    quotient).  The factorization is complete exactly when the quotient is a
    unit.  All arithmetic happens in Q(zeta_N) for N = lcm(candidates,
    ambient conductor)."""
    orders = sorted(set(int(m) for m in candidate_orders))
    if not orders or poly.is_zero():
        return [], poly
    n = lcm(orders + [poly.context.conductor])
    big = FieldContext(n)
    work = poly.embed(big) if poly.context.conductor != n else poly
    found = []
    for m in orders:
        step = n // m
        for j in range(m):
            if m > 1 and math.gcd(j, m) != 1:
                continue
            z = big.zeta(j * step)
            count = 0
            while not work.is_unit() and work.evaluate(z).is_zero():
                work = work.exact_div(LaurentPoly(big, [-z, big.one]))
                count += 1
            if count:
                found.append((m, j, count))
    return found, work.normalize()
