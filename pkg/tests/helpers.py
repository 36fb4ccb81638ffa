"""Shared test utilities: cached catalog builds, coherent single-constant
mutations, and brute-force re-statements of predicates used as oracles."""
from __future__ import annotations

import random

from grlr import AlgebraInstance, GradedBasis, GradedSubspace, GroupSpec, RATIONALS, build
from grlr.fields import Field, parse_field_label
from grlr.linear import BilinearRule, Sparse, rule_from_names

_cache: dict[tuple[str, str | None], AlgebraInstance] = {}


def cached(name: str, field_label: str | None = None, purpose: str = "display") -> AlgebraInstance:
    key = (name, field_label or purpose)
    if key not in _cache:
        fld = parse_field_label(field_label) if field_label else None
        _cache[key] = build(name, fld, purpose)
    return _cache[key]


def _rule_slots(inst: AlgebraInstance, rule: BilinearRule) -> list[tuple[int, int, int]]:
    # (i, j, out_pos) with out_pos in the grade block the pair must land in
    slots = []
    for i in range(rule.left.dim):
        for j in range(rule.right.dim):
            target = inst.group.mul(rule.left.grade_of(i), rule.right.grade_of(j))
            for k in rule.out.positions_at(target):
                slots.append((i, j, k))
    return slots


def mutate_instance(inst: AlgebraInstance, seed: int) -> tuple[AlgebraInstance, str]:
    """Change one structure constant, staying inside the legal grade block.

    The bracket mirror entry is kept antisymmetric and the product mirror
    symmetric, so the grading and orientation bookkeeping stay valid and
    only a genuine algebra law can fail.
    """
    rng = random.Random(seed)
    f = inst.field
    rules = [inst.bracket, inst.product, inst.action, inst.anchor]
    weighted = [(r, s) for r in rules for s in _rule_slots(inst, r)]
    rule, (i, j, k) = weighted[rng.randrange(len(weighted))]
    if f.kind == "prime":
        delta = f.from_int(rng.randrange(1, f.p))
    else:
        delta = f.from_int(rng.choice([-2, -1, 1, 2, 3]))

    table = {key: dict(img) for key, img in rule.table.items()}

    def bump(key: tuple[int, int], amount) -> None:
        img = table.setdefault(key, {})
        new = f.add(img.get(k, f.zero), amount)
        if f.is_zero(new):
            img.pop(k, None)
        else:
            img[k] = new
        if not img:
            table.pop(key, None)

    bump((i, j), delta)
    if i != j:
        if rule.name == "bracket":
            bump((j, i), f.neg(delta))
        elif rule.name == "product":
            bump((j, i), delta)

    new_rule = BilinearRule(rule.name, f, inst.group, rule.left, rule.right, rule.out, table)
    parts = {r.name: r for r in rules}
    parts[rule.name] = new_rule
    mutated = AlgebraInstance(
        f"{inst.name}~mut{seed}", f, inst.group, inst.L, inst.A,
        parts["bracket"], parts["product"], parts["action"], parts["anchor"],
    )
    where = f"{rule.name}({rule.left.name_of(i)}, {rule.right.name_of(j)}) += {f.format(delta)}*{rule.out.name_of(k)}"
    return mutated, where


def ideal_oracle_L(inst: AlgebraInstance, I: GradedSubspace) -> bool:
    """Graded-ideal predicate restated vector by vector."""
    vectors = I.sparse_vectors()
    for v in vectors:
        for x in range(inst.L.dim):
            if not I.contains_sparse(inst.bracket.apply_sparse({x: inst.field.one}, v)):
                return False
        for a in range(inst.A.dim):
            if not I.contains_sparse(inst.action.apply_sparse({a: inst.field.one}, v)):
                return False
        for a in range(inst.A.dim):
            da = inst.anchor.apply_sparse(v, {a: inst.field.one})
            for x in range(inst.L.dim):
                if not I.contains_sparse(inst.action.apply_sparse(da, {x: inst.field.one})):
                    return False
    return True


def ideal_oracle_A(inst: AlgebraInstance, J: GradedSubspace) -> bool:
    for v in J.sparse_vectors():
        for a in range(inst.A.dim):
            if not J.contains_sparse(inst.product.apply_sparse({a: inst.field.one}, v)):
                return False
    return True


def random_sparse(rng: random.Random, field: Field, dim: int) -> Sparse:
    v: Sparse = {}
    for pos in range(dim):
        if rng.random() < 0.5:
            c = field.from_int(rng.randint(-3, 3))
            if not field.is_zero(c):
                v[pos] = c
    return v


def abelian_pair_instance() -> AlgebraInstance:
    """Two 1-dim components at opposite grades, zero bracket and anchor."""
    f = RATIONALS
    G = GroupSpec(1)
    L = GradedBasis([("v", (1,)), ("w", (-1,))])
    A = GradedBasis([("one", (0,))])
    bracket = rule_from_names("bracket", f, G, L, L, L, {})
    product = rule_from_names("product", f, G, A, A, A, {("one", "one"): {"one": f.one}})
    action = rule_from_names(
        "action", f, G, A, L, L,
        {("one", "v"): {"v": f.one}, ("one", "w"): {"w": f.one}},
    )
    anchor = rule_from_names("anchor", f, G, L, A, A, {})
    return AlgebraInstance("abelian_pair", f, G, L, A, bracket, product, action, anchor)
