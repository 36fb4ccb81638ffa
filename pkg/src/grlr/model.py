"""Structure-constant model of a graded Lie-Rinehart algebra (L, A).

An instance bundles a grading group, a field, graded bases for the Lie
algebra L and the commutative algebra A, and four bilinear rules:

* ``bracket``  [.,.] : L x L -> L
* ``product``  .     : A x A -> A
* ``action``   .     : A x L -> L   (A-module structure on L)
* ``anchor``   rho   : L x A -> A   (rho(v) acting as a derivation of A)

Verifiers check the axioms exhaustively on basis triples and report the
first counterexample of each law.  They work on absolute positions, so
even instances whose tables break the grading law can be loaded and
then failed by ``verify_grading`` with a precise witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .errors import ToolkitError
from .fields import Field, Scalar
from .groups import Grade, GroupSpec, format_grade
from .linear import (
    BilinearRule,
    GradedBasis,
    GradedSubspace,
    Sparse,
    linear_combination,
    map_kernel,
    nullspace,
    sparse_add,
    sparse_is_zero,
    sparse_scale,
    sparse_sub,
)


class AlgebraInstance:
    def __init__(
        self,
        name: str,
        field: Field,
        group: GroupSpec,
        L: GradedBasis,
        A: GradedBasis,
        bracket: BilinearRule,
        product: BilinearRule,
        action: BilinearRule,
        anchor: BilinearRule,
    ):
        self.name = name
        self.field = field
        self.group = group
        self.L = L
        self.A = A
        self.bracket = bracket
        self.product = product
        self.action = action
        self.anchor = anchor
        for rule, (lt, rt, ot) in (
            (bracket, (L, L, L)),
            (product, (A, A, A)),
            (action, (A, L, L)),
            (anchor, (L, A, A)),
        ):
            if rule.left != lt or rule.right != rt or rule.out != ot:
                raise ValueError(f"rule {rule.name!r} has wrong domain or codomain")

    def full_L(self) -> GradedSubspace:
        return GradedSubspace.full(self.field, self.L)

    def full_A(self) -> GradedSubspace:
        return GradedSubspace.full(self.field, self.A)

    def describe_L(self, v: Sparse) -> str:
        return self.L.describe_sparse(v, self.field)

    def describe_A(self, v: Sparse) -> str:
        return self.A.describe_sparse(v, self.field)


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out: dict = {"check": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _law_check(
    name: str,
    tuples: Iterable[tuple],
    discrepancy: Callable[..., Sparse],
    describe: Callable[..., dict],
) -> CheckResult:
    """Scan tuples in order; report the first nonzero discrepancy."""
    for args in tuples:
        diff = discrepancy(*args)
        if not sparse_is_zero(diff):
            return CheckResult(name, False, describe(*args, diff))
    return CheckResult(name, True)


def _names(basis: GradedBasis, positions: Iterable[int]) -> list[str]:
    return [basis.name_of(p) for p in positions]


# ---------------------------------------------------------------------------
# the five verifier families


def verify_lie(inst: AlgebraInstance) -> VerificationReport:
    """[v,v] = 0, antisymmetry and the Jacobi identity on basis tuples."""
    f, br = inst.field, inst.bracket
    n = inst.L.dim

    def alt(i):
        return br.on_basis(i, i)

    def anti(i, j):
        return sparse_add(f, br.on_basis(i, j), br.on_basis(j, i))

    def jacobi(i, j, k):
        total: Sparse = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = br.on_basis(a, b)
            total = sparse_add(f, total, br.apply_sparse(inner, {c: f.one}))
        return total

    checks = [
        _law_check(
            "lie.alternating",
            ((i,) for i in range(n)),
            alt,
            lambda i, d: {"args": _names(inst.L, [i]), "value": inst.describe_L(d)},
        ),
        _law_check(
            "lie.antisymmetry",
            ((i, j) for i in range(n) for j in range(n)),
            anti,
            lambda i, j, d: {"args": _names(inst.L, [i, j]), "value": inst.describe_L(d)},
        ),
        _law_check(
            "lie.jacobi",
            ((i, j, k) for i in range(n) for j in range(n) for k in range(n)),
            jacobi,
            lambda i, j, k, d: {"args": _names(inst.L, [i, j, k]), "value": inst.describe_L(d)},
        ),
    ]
    return VerificationReport(checks)


def verify_assoc_comm(inst: AlgebraInstance) -> VerificationReport:
    """Commutativity and associativity of the product of A."""
    f, pr = inst.field, inst.product
    n = inst.A.dim

    def comm(i, j):
        return sparse_sub(f, pr.on_basis(i, j), pr.on_basis(j, i))

    def assoc(i, j, k):
        lhs = pr.apply_sparse(pr.on_basis(i, j), {k: f.one})
        rhs = pr.apply_sparse({i: f.one}, pr.on_basis(j, k))
        return sparse_sub(f, lhs, rhs)

    checks = [
        _law_check(
            "assoc.commutativity",
            ((i, j) for i in range(n) for j in range(n)),
            comm,
            lambda i, j, d: {"args": _names(inst.A, [i, j]), "value": inst.describe_A(d)},
        ),
        _law_check(
            "assoc.associativity",
            ((i, j, k) for i in range(n) for j in range(n) for k in range(n)),
            assoc,
            lambda i, j, k, d: {"args": _names(inst.A, [i, j, k]), "value": inst.describe_A(d)},
        ),
    ]
    return VerificationReport(checks)


def verify_module(inst: AlgebraInstance) -> VerificationReport:
    """(ab).v = a.(b.v) for the action of A on L."""
    f, pr, ac = inst.field, inst.product, inst.action
    nA, nL = inst.A.dim, inst.L.dim

    def law(i, j, k):
        lhs = ac.apply_sparse(pr.on_basis(i, j), {k: f.one})
        rhs = ac.apply_sparse({i: f.one}, ac.on_basis(j, k))
        return sparse_sub(f, lhs, rhs)

    check = _law_check(
        "module.associative_action",
        ((i, j, k) for i in range(nA) for j in range(nA) for k in range(nL)),
        law,
        lambda i, j, k, d: {
            "args": _names(inst.A, [i, j]) + _names(inst.L, [k]),
            "value": inst.describe_L(d),
        },
    )
    return VerificationReport([check])


def verify_anchor(inst: AlgebraInstance) -> VerificationReport:
    """The four anchor laws.

    (i)   rho(v)(ab) = rho(v)(a)b + a rho(v)(b)      (derivation)
    (ii)  rho([v,w]) = rho(v)rho(w) - rho(w)rho(v)   (Lie homomorphism)
    (iii) rho(a.v)(b) = a rho(v)(b)                  (A-linearity)
    (iv)  [v, a.w] = a.[v,w] + rho(v)(a).w           (compatibility)
    """
    f = inst.field
    br, pr, ac, rho = inst.bracket, inst.product, inst.action, inst.anchor
    nA, nL = inst.A.dim, inst.L.dim

    def derivation(v, a, b):
        lhs = rho.apply_sparse({v: f.one}, pr.on_basis(a, b))
        rhs = sparse_add(
            f,
            pr.apply_sparse(rho.on_basis(v, a), {b: f.one}),
            pr.apply_sparse({a: f.one}, rho.on_basis(v, b)),
        )
        return sparse_sub(f, lhs, rhs)

    def homomorphism(v, w, a):
        lhs = rho.apply_sparse(br.on_basis(v, w), {a: f.one})
        rhs = sparse_sub(
            f,
            rho.apply_sparse({v: f.one}, rho.on_basis(w, a)),
            rho.apply_sparse({w: f.one}, rho.on_basis(v, a)),
        )
        return sparse_sub(f, lhs, rhs)

    def linearity(a, v, b):
        lhs = rho.apply_sparse(ac.on_basis(a, v), {b: f.one})
        rhs = pr.apply_sparse({a: f.one}, rho.on_basis(v, b))
        return sparse_sub(f, lhs, rhs)

    def compatibility(v, a, w):
        lhs = br.apply_sparse({v: f.one}, ac.on_basis(a, w))
        rhs = sparse_add(
            f,
            ac.apply_sparse({a: f.one}, br.on_basis(v, w)),
            ac.apply_sparse(rho.on_basis(v, a), {w: f.one}),
        )
        return sparse_sub(f, lhs, rhs)

    checks = [
        _law_check(
            "anchor.derivation",
            ((v, a, b) for v in range(nL) for a in range(nA) for b in range(nA)),
            derivation,
            lambda v, a, b, d: {
                "args": _names(inst.L, [v]) + _names(inst.A, [a, b]),
                "value": inst.describe_A(d),
            },
        ),
        _law_check(
            "anchor.homomorphism",
            ((v, w, a) for v in range(nL) for w in range(nL) for a in range(nA)),
            homomorphism,
            lambda v, w, a, d: {
                "args": _names(inst.L, [v, w]) + _names(inst.A, [a]),
                "value": inst.describe_A(d),
            },
        ),
        _law_check(
            "anchor.linearity",
            ((a, v, b) for a in range(nA) for v in range(nL) for b in range(nA)),
            linearity,
            lambda a, v, b, d: {
                "args": [inst.A.name_of(a), inst.L.name_of(v), inst.A.name_of(b)],
                "value": inst.describe_A(d),
            },
        ),
        _law_check(
            "anchor.compatibility",
            ((v, a, w) for v in range(nL) for a in range(nA) for w in range(nL)),
            compatibility,
            lambda v, a, w, d: {
                "args": [inst.L.name_of(v), inst.A.name_of(a), inst.L.name_of(w)],
                "value": inst.describe_L(d),
            },
        ),
    ]
    return VerificationReport(checks)


def verify_grading(inst: AlgebraInstance) -> VerificationReport:
    """Every table entry lands in the block at the product grade."""
    checks = []
    for rule in (inst.bracket, inst.product, inst.action, inst.anchor):
        bad = rule.grading_violations()
        if bad:
            w = dict(bad[0])
            w["expected_grade"] = format_grade(w["expected_grade"])
            w["got_grade"] = format_grade(w["got_grade"])
            w["violations"] = len(bad)
            checks.append(CheckResult(f"grading.{rule.name}", False, w))
        else:
            checks.append(CheckResult(f"grading.{rule.name}", True))
    return VerificationReport(checks)


def verify_all(inst: AlgebraInstance) -> VerificationReport:
    report = VerificationReport()
    for fn in (verify_grading, verify_lie, verify_assoc_comm, verify_module, verify_anchor):
        report = report.merge(fn(inst))
    return report


# ---------------------------------------------------------------------------
# canonical invariant subspaces


def center(inst: AlgebraInstance) -> GradedSubspace:
    """Z(L) = {v : [v, L] = 0 and rho(v) = 0}."""

    def images(pos: int) -> list[Sparse]:
        row = [inst.bracket.on_basis(pos, j) for j in range(inst.L.dim)]
        row += [inst.anchor.on_basis(pos, j) for j in range(inst.A.dim)]
        return row

    return map_kernel(inst.field, inst.L, images)


def ann_L_of_A(inst: AlgebraInstance) -> GradedSubspace:
    """Ann_L(A) = {v in L : A.v = 0}."""

    def images(pos: int) -> list[Sparse]:
        return [inst.action.on_basis(a, pos) for a in range(inst.A.dim)]

    return map_kernel(inst.field, inst.L, images)


def ann_A(inst: AlgebraInstance) -> GradedSubspace:
    """Ann(A) = {a in A : aA = 0}."""

    def images(pos: int) -> list[Sparse]:
        return [inst.product.on_basis(pos, b) for b in range(inst.A.dim)]

    return map_kernel(inst.field, inst.A, images)


def ker_anchor(inst: AlgebraInstance) -> GradedSubspace:
    """Ker rho = {v in L : rho(v)(A) = 0}."""

    def images(pos: int) -> list[Sparse]:
        return [inst.anchor.on_basis(pos, a) for a in range(inst.A.dim)]

    return map_kernel(inst.field, inst.L, images)


# ---------------------------------------------------------------------------
# graded ideal predicates


def is_graded_ideal_L(inst: AlgebraInstance, I: GradedSubspace) -> tuple[bool, dict | None]:
    """Graded ideal test: [L, I] <= I, A.I <= I and rho(I)(A)L <= I.

    Returns (verdict, witness); the witness names the first violating
    product.
    """
    if I.ambient != inst.L:
        raise ValueError("subspace is not inside L")
    f = inst.field
    full_L_vecs = [{p: f.one} for p in range(inst.L.dim)]
    full_A_vecs = [{p: f.one} for p in range(inst.A.dim)]
    ideal_vecs = I.sparse_vectors()

    for u in full_L_vecs:
        for w in ideal_vecs:
            img = inst.bracket.apply_sparse(u, w)
            if not I.contains_sparse(img):
                return False, {
                    "law": "[L, I] <= I",
                    "args": [inst.describe_L(u), inst.describe_L(w)],
                    "value": inst.describe_L(img),
                }
    for a in full_A_vecs:
        for w in ideal_vecs:
            img = inst.action.apply_sparse(a, w)
            if not I.contains_sparse(img):
                return False, {
                    "law": "A.I <= I",
                    "args": [inst.describe_A(a), inst.describe_L(w)],
                    "value": inst.describe_L(img),
                }
    for w in ideal_vecs:
        for a in full_A_vecs:
            da = inst.anchor.apply_sparse(w, a)
            for u in full_L_vecs:
                img = inst.action.apply_sparse(da, u)
                if not I.contains_sparse(img):
                    return False, {
                        "law": "rho(I)(A)L <= I",
                        "args": [inst.describe_L(w), inst.describe_A(a), inst.describe_L(u)],
                        "value": inst.describe_L(img),
                    }
    return True, None


def is_graded_ideal_A(inst: AlgebraInstance, J: GradedSubspace) -> tuple[bool, dict | None]:
    """Graded ideal of the commutative algebra: A.J <= J."""
    if J.ambient != inst.A:
        raise ValueError("subspace is not inside A")
    f = inst.field
    for a in range(inst.A.dim):
        for w in J.sparse_vectors():
            img = inst.product.apply_sparse({a: f.one}, w)
            if not J.contains_sparse(img):
                return False, {
                    "law": "A.J <= J",
                    "args": [inst.A.name_of(a), inst.describe_A(w)],
                    "value": inst.describe_A(img),
                }
    return True, None


# ---------------------------------------------------------------------------
# derivations of A


def compute_derivations(
    field: Field, group: GroupSpec, A: GradedBasis, product: BilinearRule
) -> list[tuple[Grade, list[tuple[tuple[Scalar, ...], ...]]]]:
    """Homogeneous derivation spaces of a graded commutative algebra.

    For each candidate shift d (a difference of basis grades; any other
    shift only carries the zero derivation) solve the Leibniz system
    D(bc) = D(b)c + bD(c) over the unknown images D(basis_j), which are
    constrained to live in the block at grade(basis_j)*d.  Returns a
    sorted list of (shift, basis matrices); each matrix M is dense with
    M[j] the image of basis vector j in absolute A-coordinates.
    """
    dimA = A.dim
    shifts = sorted(
        {group.mul(group.inv(A.grade_of(i)), A.grade_of(j)) for i in range(dimA) for j in range(dimA)}
    )
    results: list[tuple[Grade, list[tuple[tuple[Scalar, ...], ...]]]] = []
    for d in shifts:
        # unknown layout: one slot per (source basis j, target position)
        slots: list[tuple[int, int]] = []
        for j in range(dimA):
            target = group.mul(A.grade_of(j), d)
            slots.extend((j, pos) for pos in A.positions_at(target))
        if not slots:
            continue
        slot_index = {s: k for k, s in enumerate(slots)}

        def image_row(j: int, out_pos: int) -> list[Scalar]:
            """Coefficient row of D(b_j)[out_pos] as a functional in the unknowns."""
            row = [field.zero] * len(slots)
            key = (j, out_pos)
            if key in slot_index:
                row[slot_index[key]] = field.one
            return row

        equations: list[list[Scalar]] = []
        for i in range(dimA):
            for j in range(dimA):
                prod_ij = product.on_basis(i, j)
                # D(b_i b_j) - D(b_i) b_j - b_i D(b_j) = 0, one equation per coordinate
                for c in range(dimA):
                    row = [field.zero] * len(slots)
                    for k, coef in prod_ij.items():
                        for idx, val in enumerate(image_row(k, c)):
                            row[idx] = field.add(row[idx], field.mul(coef, val))
                    # subtract D(b_i) b_j: sum over target positions t of x[i,t] * (b_t b_j)[c]
                    for (src, t), idx in slot_index.items():
                        if src == i:
                            coeff = product.on_basis(t, j).get(c, field.zero)
                            row[idx] = field.sub(row[idx], coeff)
                        if src == j:
                            coeff = product.on_basis(i, t).get(c, field.zero)
                            row[idx] = field.sub(row[idx], coeff)
                    if any(not field.is_zero(x) for x in row):
                        equations.append(row)
        basis_vectors = nullspace(field, equations, len(slots))
        matrices = []
        for vec in basis_vectors:
            mat = [[field.zero] * dimA for _ in range(dimA)]
            for (j, pos), idx in slot_index.items():
                mat[j][pos] = vec[idx]
            matrices.append(tuple(tuple(r) for r in mat))
        if matrices:
            results.append((d, matrices))
    return results


# ---------------------------------------------------------------------------
# restriction to a subpair


def restrict_instance(
    inst: AlgebraInstance, L_sub: GradedSubspace, A_sub: GradedSubspace, name: str
) -> AlgebraInstance:
    """The induced instance on a subpair (I, B).

    Both subspaces must be closed under all four rules (with outputs
    landing back inside); otherwise a ToolkitError reports the escaping
    product.  Basis names are regenerated deterministically from the
    grade blocks.
    """
    f = inst.field

    def make_basis(sub: GradedSubspace, prefix: str) -> tuple[GradedBasis, list[Sparse]]:
        entries = []
        vectors = []
        k = 0
        for g in sub.grades():
            for row in sub.blocks[g]:
                entries.append((f"{prefix}{k}", g))
                vectors.append(sub.ambient.block_vector(g, row, f))
                k += 1
        return GradedBasis(entries), vectors

    newL, vecL = make_basis(L_sub, "l")
    newA, vecA = make_basis(A_sub, "a")

    def dense_of(basis: GradedBasis, v: Sparse) -> list[Scalar]:
        out = [f.zero] * basis.dim
        for pos, x in v.items():
            out[pos] = x
        return out

    def express(sub_vecs: list[Sparse], ambient: GradedBasis, img: Sparse, what: str) -> Sparse:
        if sparse_is_zero(img):
            return {}
        rows = [dense_of(ambient, v) for v in sub_vecs]
        coords = linear_combination(f, rows, dense_of(ambient, img))
        if coords is None:
            raise ToolkitError(f"restriction is not closed: {what} escapes the subspace")
        return {i: c for i, c in enumerate(coords) if not f.is_zero(c)}

    domains = {
        "bracket": (newL, newL, newL),
        "product": (newA, newA, newA),
        "action": (newA, newL, newL),
        "anchor": (newL, newA, newA),
    }

    def build_rule(rule: BilinearRule, left_vecs, right_vecs, out_vecs, rname) -> BilinearRule:
        table = {}
        for i, u in enumerate(left_vecs):
            for j, v in enumerate(right_vecs):
                img = rule.apply_sparse(u, v)
                left_b, _, _ = domains[rname]
                what = f"{rname}({left_b.name_of(i)}, ...)"
                coords = express(out_vecs, rule.out, img, what)
                if coords:
                    table[(i, j)] = coords
        return BilinearRule(rname, f, inst.group, *domains[rname], table)

    bracket = build_rule(inst.bracket, vecL, vecL, vecL, "bracket")
    product = build_rule(inst.product, vecA, vecA, vecA, "product")
    action = build_rule(inst.action, vecA, vecL, vecL, "action")
    anchor = build_rule(inst.anchor, vecL, vecA, vecA, "anchor")
    return AlgebraInstance(name, f, inst.group, newL, newA, bracket, product, action, anchor)
