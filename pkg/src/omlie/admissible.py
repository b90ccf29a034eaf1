"""Decide whether an omega-Lie algebra carries a compatible left-symmetric product.

The unknowns are the n left-multiplication matrices of the would-be product,
flattened to n^3 coordinates.  The decision pipeline is

  1. linear stage: consequences of the module identity substituted into the
     matrix Jacobi identity (one matrix equation per basis triple), plus, in
     full mode, the compatibility equations forcing the product's commutator
     to reproduce the given bracket;
  2. propagation loop: the module-identity residuals on the current affine
     solution space are degree <= 2 polynomials in its free parameters; all
     degree <= 1 members of their span (optionally enlarged by single-variable
     multiples) are intersected back until a fixed point;
  3. endgame for the strictly quadratic leftovers: a budgeted search for a
     rational point (pin a parameter, re-propagate, recurse) settles the
     satisfiable cases constructively; whatever it cannot settle goes to a
     degree-capped Buchberger run, where a basis containing 1 certifies
     infeasibility over the algebraic closure and any other basis certifies
     that solutions exist there.

Every step is deterministic, so certificates are byte-for-byte reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (
    OmegaLieAlgebra,
    OmegaLsaAlgebra,
    StructureTensor,
    check_omega_lie,
    check_omega_lsa,
)
from .errors import AxiomCheckError
from .fields import QQ, rational_roots, Poly
from .linalg import AffineSpace, Matrix, intersect, solve_affine
from .multipoly import MPoly, ORDERS, buchberger, contains_one

FULL = "full"
MODULE_ONLY = "module_only"

# Ceiling on the parameter count for the variable-multiple enlargement of the
# consequence search; beyond it only plain residual combinations are used.
PRODUCTS_DIM_LIMIT = 24

ADMISSIBLE = "ADMISSIBLE"
INADMISSIBLE = "INADMISSIBLE"
UNKNOWN = "UNKNOWN"


def _normalize_mode(mode: str) -> str:
    mode = mode.replace("-", "_")
    if mode not in (FULL, MODULE_ONLY):
        raise ValueError(f"unknown decider mode {mode!r}")
    return mode


def _var(n: int, i: int, r: int, c: int) -> int:
    """Flat index of entry (r, c) of the i-th unknown matrix."""
    return (i * n + r) * n + c


def compatibility_constraints(L: OmegaLieAlgebra):
    """Linear system M_i e_j - M_j e_i = [e_i, e_j] for all pairs i < j."""
    n = L.dim
    field = L.field
    zero, one = field.zero, field.one
    N = n * n * n
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [zero] * N
                row[_var(n, i, k, j)] = one
                row[_var(n, j, k, i)] = -one
                rows.append(row)
                rhs.append(L.bracket.entry(i, j, k))
    return Matrix(field, rows, ncols=N), tuple(rhs)


def jacobi_consequence_constraints(L: OmegaLieAlgebra):
    """Per basis triple: the matrix equation l_w = s * id.

    Substituting the module identity into the Jacobi identity of the unknown
    operators turns each triple (i, j, k) into a linear constraint with
    w = w(i,j) e_k + w(j,k) e_i + w(k,i) e_j and
    s = w([e_i,e_j], e_k) + w([e_j,e_k], e_i) + w([e_k,e_i], e_j).
    """
    n = L.dim
    field = L.field
    zero = field.zero
    N = n * n * n
    units = [
        tuple(field.one if m == t else zero for m in range(n)) for t in range(n)
    ]
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                w = [zero] * n
                w[k] = w[k] + L.omega.entry(i, j)
                w[i] = w[i] + L.omega.entry(j, k)
                w[j] = w[j] + L.omega.entry(k, i)
                s = (
                    L.omega.apply(L.bracket.pair(i, j), units[k])
                    + L.omega.apply(L.bracket.pair(j, k), units[i])
                    + L.omega.apply(L.bracket.pair(k, i), units[j])
                )
                if not any(w) and not s:
                    continue
                for r in range(n):
                    for c in range(n):
                        row = [zero] * N
                        for m, wm in enumerate(w):
                            if wm:
                                row[_var(n, m, r, c)] = wm
                        rows.append(row)
                        rhs.append(s if r == c else zero)
    return Matrix(field, rows, ncols=N), tuple(rhs)


def _symbolic_operators(L: OmegaLieAlgebra, space: AffineSpace):
    """The unknown matrices as affine polynomials in the space's parameters."""
    n = L.dim
    field = L.field
    d = space.dim
    const_mono = (0,) * d
    unit_monos = []
    for t in range(d):
        m = [0] * d
        m[t] = 1
        unit_monos.append(tuple(m))
    mats = []
    for i in range(n):
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                v = _var(n, i, r, c)
                terms = {}
                o = space.origin[v]
                if o:
                    terms[const_mono] = o
                for t in range(d):
                    b = space.basis[t][v]
                    if b:
                        terms[unit_monos[t]] = b
                row.append(MPoly(field, d, terms))
            rows.append(row)
        mats.append(rows)
    return mats


def _mpoly_matmul(a, b, field, d):
    n = len(a)
    zero = MPoly.zero(field, d)
    out = []
    for r in range(n):
        arow = a[r]
        row = []
        for c in range(n):
            acc = zero
            for k in range(n):
                x = arow[k]
                y = b[k][c]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def module_identity_residuals(L: OmegaLieAlgebra, space: AffineSpace) -> list[MPoly]:
    """Residuals of l_[ei,ej] - [l_i, l_j] - w(i,j) id on the space.

    Returned polynomials have degree <= 2 in the space's free parameters;
    identically-zero entries are dropped.  Ordering is pairs (i < j) then
    entries row-major, so the system is deterministic.
    """
    n = L.dim
    field = L.field
    d = space.dim
    mats = _symbolic_operators(L, space)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            br = L.bracket.pair(i, j)
            comm = _mpoly_matmul(mats[i], mats[j], field, d)
            rev = _mpoly_matmul(mats[j], mats[i], field, d)
            wij = L.omega.entry(i, j)
            for r in range(n):
                for c in range(n):
                    p = comm[r][c] - rev[r][c]
                    acc = -p
                    for m, v in enumerate(br):
                        if v:
                            acc = acc + mats[m][r][c].scale(v)
                    if r == c and wij:
                        acc = acc - MPoly.const(field, d, wij)
                    if acc:
                        out.append(acc)
    return out


def _harvest_linear(residuals, d, field, with_products):
    """All degree <= 1 rows in the span of the residuals (plus, optionally,
    their single-variable multiples), as linear equations on the parameters."""
    polys = list(residuals)
    if with_products:
        for p in residuals:
            for t in range(d):
                polys.append(p.shift_by_var(t))
    key = ORDERS["degrevlex"]
    high = sorted(
        {m for p in polys for m in p.terms if sum(m) >= 2}, key=key, reverse=True
    )
    col_of = {m: idx for idx, m in enumerate(high)}
    nhigh = len(high)
    ncols = nhigh + d + 1
    zero = field.zero
    rows = []
    for p in polys:
        row = [zero] * ncols
        for m, c in p.terms.items():
            deg = sum(m)
            if deg >= 2:
                row[col_of[m]] = c
            elif deg == 1:
                row[nhigh + m.index(1)] = c
            else:
                row[ncols - 1] = c
        rows.append(row)
    from .linalg import rref

    R, rk, pivots = rref(Matrix(field, rows, ncols=ncols))
    eq_rows, eq_rhs = [], []
    for r in range(rk):
        if pivots[r] < nhigh:
            continue
        data = R.rows[r]
        eq_rows.append(list(data[nhigh : nhigh + d]))
        eq_rhs.append(-data[ncols - 1])
    return eq_rows, eq_rhs


@dataclass
class PropagationResult:
    space: AffineSpace
    residuals: list
    trace: list


def _consequence_fixed_point(L, space, trace=None):
    """Iterate residual computation and linear-consequence intersection.

    Returns (space, residuals) where residuals is empty when the space became
    infeasible or satisfies the identities outright; otherwise it holds the
    strictly quadratic leftovers at the fixed point.
    """
    field = L.field
    iteration = 0
    residuals: list[MPoly] = []
    while space.feasible:
        residuals = module_identity_residuals(L, space)
        if not residuals:
            break
        rows, rhs = _harvest_linear(residuals, space.dim, field, False)
        used_products = False
        if not rows and 0 < space.dim <= PRODUCTS_DIM_LIMIT:
            rows, rhs = _harvest_linear(residuals, space.dim, field, True)
            used_products = True
        if not rows:
            break
        space = space.restrict(rows, rhs)
        iteration += 1
        if trace is not None:
            trace.append(
                {
                    "stage": "linear_consequences",
                    "iteration": iteration,
                    "new_forms": len(rows),
                    "used_products": used_products,
                    "dim": space.dim,
                }
            )
        residuals = []
    return space, residuals


def propagate(L: OmegaLieAlgebra, mode: str = FULL) -> PropagationResult:
    """Run the linear stages and the consequence loop to a fixed point.

    Returns the final affine space over the n^3 matrix coordinates, the
    residual polynomials that remain (empty when the space either collapsed,
    became infeasible, or satisfies the identities outright) and the stage
    trace with solution-space dimensions.
    """
    mode = _normalize_mode(mode)
    n = L.dim
    field = L.field
    trace: list[dict] = []
    a, b = jacobi_consequence_constraints(L)
    space = solve_affine(a, b) if a.nrows else AffineSpace.full(field, n * n * n)
    trace.append({"stage": "jacobi_consequences", "dim": space.dim})
    if mode == FULL and space.feasible:
        space = intersect(space, compatibility_constraints(L))
        trace.append({"stage": "commutator_compatibility", "dim": space.dim})
    space, residuals = _consequence_fixed_point(L, space, trace)
    final = {"stage": "fixed_point", "dim": space.dim, "quadratic_residuals": len(residuals)}
    if space.is_point:
        final["operators"] = operator_summaries(L, space.origin)
    trace.append(final)
    return PropagationResult(space, residuals, trace)


def product_tensor_at(L: OmegaLieAlgebra, point) -> StructureTensor:
    """Read the product tensor off a point of the solution space."""
    n = L.dim
    return StructureTensor(
        L.field,
        [
            [[point[_var(n, i, k, j)] for k in range(n)] for j in range(n)]
            for i in range(n)
        ],
    )


def operator_matrices(L: OmegaLieAlgebra, point) -> list[Matrix]:
    n = L.dim
    return [
        Matrix(L.field, [[point[_var(n, i, r, c)] for c in range(n)] for r in range(n)])
        for i in range(n)
    ]


def operator_summaries(L: OmegaLieAlgebra, point) -> dict:
    """Human-readable pinned operator values, keyed by basis name."""
    out = {}
    for name, M in zip(L.basis_names, operator_matrices(L, point)):
        s = M.scalar_identity_multiple()
        if s is not None:
            if not s:
                out[name] = "0"
            elif s == L.field.one:
                out[name] = "id"
            else:
                out[name] = f"({L.field.format(s)})*id"
        else:
            out[name] = [[L.field.format(v) for v in row] for row in M.rows]
    return out


def verify_witness(L: OmegaLieAlgebra, product: StructureTensor) -> bool:
    """True iff the product satisfies the left-symmetric identity with L's
    omega and its commutator reproduces L's bracket exactly."""
    if product.dim != L.dim:
        return False
    candidate = OmegaLsaAlgebra(L.field, L.basis_names, product, L.omega)
    if not check_omega_lsa(candidate).ok:
        return False
    return product.antisymmetrized() == L.bracket


_DEFAULT_CANDIDATES = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
)


def _univariate_to_poly(p: MPoly, var: int) -> Poly:
    coeffs = {}
    for m, c in p.terms.items():
        coeffs[m[var]] = c
    top = max(coeffs)
    return Poly([coeffs.get(k, Fraction(0)) for k in range(top + 1)])


def _branch_candidates(residuals, field):
    """Pick the parameter to pin next and the values to try.

    A residual that became univariate pins its variable to the exact rational
    roots; otherwise the first parameter is tried over a small default list.
    """
    if field is QQ:
        for p in residuals:
            sv = p.support_vars()
            if len(sv) == 1:
                var = next(iter(sv))
                roots = rational_roots(_univariate_to_poly(p, var))
                return var, sorted(roots, key=lambda r: (abs(r), r < 0))
    return 0, list(_DEFAULT_CANDIDATES)


def _find_rational_point(L, prop: PropagationResult, budget: int = 400):
    """Best-effort rational solution of the leftover quadratic system.

    Depth-first search: pin one free parameter to a candidate value, rerun the
    linear-consequence propagation on the restricted space and recurse.  Each
    pin strictly shrinks the space, and infeasible branches are cut by the
    propagation itself, so the search is small in practice.
    """
    field = L.field
    state = [budget]

    def search(space, residuals):
        if not space.feasible:
            return None
        if not residuals:
            return space.origin
        if state[0] <= 0:
            return None
        state[0] -= 1
        var, cands = _branch_candidates(residuals, field)
        unit = [field.zero] * space.dim
        unit[var] = field.one
        for val in cands:
            sub = space.restrict([list(unit)], [field.coerce(val)])
            sub, res = _consequence_fixed_point(L, sub)
            out = search(sub, res)
            if out is not None:
                return out
        return None

    return search(prop.space, prop.residuals)


@dataclass
class AdmissibilityReport:
    """Decision outcome with a reproducible certificate trace."""

    verdict: str
    witness: StructureTensor | None
    certificate: list
    settings: dict
    annotations: list
    propagation: PropagationResult = dc_field(repr=False, compare=False, default=None)

    def stage_dims(self) -> list[int]:
        return [st["dim"] for st in self.certificate if "dim" in st]


def decide_admissible(
    L: OmegaLieAlgebra,
    degree_cap: int = 6,
    mode: str = FULL,
    witness_search_budget: int = 400,
) -> AdmissibilityReport:
    """Decide existence of a compatible product, with certificate.

    INADMISSIBLE certificates end in an infeasible linear stage or a Groebner
    basis containing 1; ADMISSIBLE reports carry a verified witness whenever a
    rational point was found.  UNKNOWN is returned only when the degree cap
    was hit.  ``witness_search_budget`` bounds the guided point search that
    runs before the Groebner gate (0 disables it).
    """
    mode = _normalize_mode(mode)
    precheck = check_omega_lie(L)
    if not precheck.ok:
        raise AxiomCheckError(
            "input is not an omega-Lie algebra: " + precheck.describe(L.basis_names),
            precheck,
        )
    prop = propagate(L, mode)
    settings = {"mode": mode, "degree_cap": degree_cap}
    annotations: list[str] = []
    cert = list(prop.trace)

    def report(verdict, witness, reason):
        cert.append({"stage": "conclusion", "verdict": verdict, "reason": reason})
        return AdmissibilityReport(verdict, witness, cert, settings, annotations, prop)

    if not prop.space.feasible:
        return report(INADMISSIBLE, None, "linear stage infeasible")
    if not prop.residuals:
        if mode == MODULE_ONLY:
            annotations.append(
                "module-only mode decides the operator identities; no product witness is implied"
            )
            return report(ADMISSIBLE, None, "operator system solvable")
        witness = product_tensor_at(L, prop.space.origin)
        if not verify_witness(L, witness):
            raise AssertionError("internal error: origin witness failed re-verification")
        return report(ADMISSIBLE, witness, "witness read off the solution-space origin")
    point = _find_rational_point(L, prop, budget=witness_search_budget)
    cert.append({"stage": "witness_search", "found": point is not None})
    if point is not None:
        if mode == MODULE_ONLY:
            annotations.append(
                "module-only mode decides the operator identities; no product witness is implied"
            )
            return report(ADMISSIBLE, None, "rational solution of the operator system found")
        witness = product_tensor_at(L, point)
        if not verify_witness(L, witness):
            raise AssertionError("internal error: extracted witness failed re-verification")
        return report(ADMISSIBLE, witness, "rational witness found by guided search")
    gens = prop.residuals
    gres = buchberger(gens, "degrevlex", degree_cap=degree_cap)
    stage = {
        "stage": "groebner",
        "order": "degrevlex",
        "generators": len(gens),
        "spairs": gres.spairs_processed,
        "max_degree": gres.max_degree,
        "cap_exceeded": gres.cap_exceeded,
    }
    if not gres.cap_exceeded:
        stage["basis_size"] = len(gres.basis)
        stage["contains_one"] = contains_one(gres)
    cert.append(stage)
    if gres.cap_exceeded:
        return report(UNKNOWN, None, f"degree cap {degree_cap} exceeded")
    if contains_one(gres):
        return report(INADMISSIBLE, None, "1 lies in the residual ideal")
    if mode == MODULE_ONLY:
        annotations.append(
            "module-only mode decides the operator identities; no product witness is implied"
        )
    else:
        annotations.append(
            "solutions exist over the algebraic closure; no rational witness found"
        )
    return report(ADMISSIBLE, None, "residual system solvable over the closure")
