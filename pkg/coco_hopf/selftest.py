"""Invariant battery run by ``coco-hopf selftest``.

Every check returns a JSON-ready dict with a ``passed`` flag plus the
quantities it compared. Output depends only on the settings.
"""

import logging
import random
from typing import Callable, Dict, List, Tuple

from .algebra.cleft import (
    Cocycle,
    MeasuringAction,
    analyze_cleft,
    build_crossed_product,
    canonical_map_check,
    is_trivial_extension,
)
from .algebra.hopf import grouplike_group, grouplikes, trivial_algebra, verify_axioms
from .algebra.morphism import hopf_kernel, identity, kernel_pair
from .algebra.subquot import HopfSubalgebra, abelianization, center, derived_subalgebra, huq_commutator
from .config import Settings
from .core.errors import HopfError
from .core.field import Field
from .galois.class_e import compose_sections, divide_section, iso_section, pullback_section
from .galois.exact_seq import (
    check_exactness,
    corrupt_map,
    extension_sequence,
    five_term_group,
    five_term_naturality,
)
from .galois.extensions import (
    extension_report,
    h2_direct,
    h2_group,
    is_normal_extension,
    pi1,
    pi1_from_elements,
    pi1_from_groupoid,
)
from .groups.algebras import group_algebra, group_algebra_map, linearize_section
from .groups.free import free_counit_section_check
from .groups.homology import abelian_invariants, bar_complex, schur_multiplier_oracle
from .groups.zoo import EXTENSION_NAMES, GROUP_NAMES, named_extension, named_group, naturality_example

logger = logging.getLogger(__name__)

Check = Callable[[Settings], Dict[str, object]]

QQ = Field.rationals()

_ZOO_ALGEBRA_GROUPS = ("C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8")
_SCHUR_EXPECTED = {
    "trivial": [], "C2": [], "T2": [], "C3": [], "C4": [], "C6": [],
    "V4": [2], "S3": [], "D4": [2], "Q8": [],
}


def _map(name: str, field: Field = QQ):
    ext = named_extension(name)
    return ext, group_algebra_map(ext.phi, field, name=name)


def check_axioms(settings: Settings) -> Dict[str, object]:
    results = {}
    for field in (QQ, Field.prime(2)):
        results[f"k/{field.name}"] = verify_axioms(trivial_algebra(field)).passed
        for g in _ZOO_ALGEBRA_GROUPS:
            A = group_algebra(named_group(g), field)
            results[A.name] = verify_axioms(A).passed
    return {"passed": all(results.values()), "algebras": results}


def check_commutators(settings: Settings) -> Dict[str, object]:
    dims = {}
    agree = True
    for g in ("S3", "Q8", "D4", "V4"):
        group = named_group(g)
        A = group_algebra(group, QQ)
        derived = derived_subalgebra(A).dim
        h1 = abelianization(A).algebra.dim
        agree = agree and derived == len(group.commutator_subgroup())
        agree = agree and h1 == group.order // len(group.commutator_subgroup())
        dims[g] = {"commutator": derived, "H1": h1}
    expected = dims["S3"] == {"commutator": 3, "H1": 2} and dims["Q8"] == {"commutator": 2, "H1": 4}
    return {"passed": agree and expected, "dims": dims}


def check_normality(settings: Settings) -> Dict[str, object]:
    verdicts = {}
    equivalence = True
    for name in EXTENSION_NAMES:
        _, f = _map(name)
        kernel = hopf_kernel(f)
        central = kernel.subspace.is_subspace_of(center(f.dom).subspace)
        trivial_commutator = huq_commutator(kernel, HopfSubalgebra.full(f.dom)).dim == 1
        equivalence = equivalence and central == trivial_commutator
        verdicts[name] = is_normal_extension(f)
    q8_kernel = hopf_kernel(_map("Q8->V4")[1]).dim
    passed = equivalence and q8_kernel == 2 and verdicts["Q8->V4"] and not verdicts["S3->C2"]
    return {"passed": passed, "normal": verdicts, "kernel_dim(Q8->V4)": q8_kernel}


def check_cleft_roundtrip(settings: Settings) -> Dict[str, object]:
    rng = random.Random(settings.random_seed)
    outcomes = {}
    for name in EXTENSION_NAMES:
        ext, f = _map(name)
        sections = list(ext.set_sections(normalized=True))
        chosen = {ext.canonical_section(), rng.choice(sections)}
        ok = True
        for section in sorted(chosen):
            data = analyze_cleft(f, linearize_section(ext.phi, section, QQ))
            rebuilt = build_crossed_product(data.action, data.cocycle)
            ok = ok and rebuilt.algebra == data.crossed.algebra and data.psi.is_bijective
            ok = ok and data.psi_inverse.compose(data.crossed.kernel_inclusion()).columns == data.kernel.inclusion().columns
            ok = ok and data.psi_inverse.compose(data.crossed.i_H).columns == data.i.columns
            ok = ok and data.crossed.pi_H.compose(data.psi).columns == f.columns
            ok = ok and canonical_map_check(data)
            is_trivial_extension(data)
        outcomes[name] = ok
    return {"passed": all(outcomes.values()), "extensions": outcomes}


def check_crossed_products(settings: Settings) -> Dict[str, object]:
    H = group_algebra(named_group("C2"), QQ)
    B = group_algebra(named_group("T2"), QQ)
    act = MeasuringAction.trivial(H, B)
    g, t = H.index("g"), B.index("t")
    twisted = build_crossed_product(act, Cocycle.from_overrides(H, B, [(g, g, {t: 1})])).algebra
    split = build_crossed_product(act, Cocycle.trivial(H, B)).algebra
    twisted_invariants = abelian_invariants(grouplike_group(twisted))
    split_invariants = abelian_invariants(grouplike_group(split))
    passed = (
        len(grouplikes(twisted)) == 4
        and twisted_invariants == [4]
        and split_invariants == [2, 2]
    )
    return {"passed": passed, "twisted": twisted_invariants, "trivial": split_invariants}


def check_schur_oracle(settings: Settings) -> Dict[str, object]:
    factors = {}
    boundaries = True
    for g in GROUP_NAMES:
        group = named_group(g)
        factors[g] = schur_multiplier_oracle(group, settings.max_group_order, settings.normalized_bar)
        boundaries = boundaries and bar_complex(group, settings.normalized_bar).boundaries_compose_to_zero()
    return {"passed": boundaries and factors == _SCHUR_EXPECTED, "invariant_factors": factors}


def check_pi1(settings: Settings) -> Dict[str, object]:
    results = {}
    passed = True
    for name in ("Q8->V4", "D4->V4"):
        _, f = _map(name)
        sub = pi1(f)
        by_elements = pi1_from_elements(f)
        by_groupoid = pi1_from_groupoid(f)
        invariants = abelian_invariants(grouplike_group(sub.algebra()))
        passed = passed and sub.dim == 2 and invariants == [2]
        passed = passed and by_elements.subspace == sub.subspace and by_groupoid.dim == sub.dim
        results[name] = {"dim": sub.dim, "grouplike_group": invariants}
    return {"passed": passed, "pi1": results}


def check_h2_backends(settings: Settings) -> Dict[str, object]:
    dims = {}
    passed = True
    for name in ("Q8->V4", "D4->V4", "C4->C2", "C6->C3", "C6->C2"):
        ext, f = _map(name)
        direct = h2_direct(f)
        oracle = h2_group(ext.Q, QQ, settings.max_group_order, settings.normalized_bar)
        dims[name] = [direct.dim, oracle.dim]
        passed = passed and direct.dim == oracle.dim
        passed = passed and abelian_invariants(grouplike_group(direct)) == abelian_invariants(grouplike_group(oracle))
    return {"passed": passed, "dims": dims}


def check_five_term(settings: Settings) -> Dict[str, object]:
    exact = {}
    for name in EXTENSION_NAMES:
        seq = five_term_group(named_extension(name), QQ, settings.max_group_order, settings.normalized_bar)
        exact[name] = check_exactness(seq).is_exact
    _, f = _map("Q8->V4")
    seq = extension_sequence(f)
    unit = next(i for i, x in enumerate(f.dom.unit) if x)
    kernel_vec = next(i for i in range(f.dom.dim) if f.columns[i] == f.cod.unit_sparse and i != unit)
    moved = next(i for i in range(f.dom.dim) if f.columns[i] != f.cod.unit_sparse)
    negative = check_exactness(seq.replace_map(2, corrupt_map(f, kernel_vec, moved)))
    control = negative.failed_nodes == [2]
    return {
        "passed": all(exact.values()) and control,
        "exact": exact,
        "negative_control_failed_nodes": negative.failed_nodes,
    }


def check_class_e(settings: Settings) -> Dict[str, object]:
    rng = random.Random(settings.random_seed)
    pullbacks = [("C4->C2", "S3->C2"), ("V4->C2", "C4->C2"), ("C6->C2", "V4->C2"), ("S3->C2", "D4->C2")]
    composites = [("Q8->V4", "V4->C2"), ("D4->V4", "V4->C2")]
    kinds = ("iso", "pullback", "compose", "divide")
    counts = {kind: 0 for kind in kinds}
    failures: List[str] = []
    for _ in range(20):
        kind = rng.choice(kinds)
        try:
            if kind == "iso":
                _, f = _map(rng.choice(EXTENSION_NAMES))
                iso_section(identity(f.dom))
            elif kind == "pullback":
                a, b = rng.choice(pullbacks)
                ext, f = _map(a)
                _, g = _map(b)
                section = rng.choice(list(ext.set_sections()))
                pullback_section(f, linearize_section(ext.phi, section, QQ), g)
            else:
                a, b = rng.choice(composites)
                ext_f, f = _map(a)
                ext_g, g = _map(b)
                s = linearize_section(ext_f.phi, rng.choice(list(ext_f.set_sections())), QQ)
                t = linearize_section(ext_g.phi, rng.choice(list(ext_g.set_sections())), QQ)
                _, st = compose_sections(f, s, g, t)
                if kind == "divide":
                    divide_section(f, g, st)
        except HopfError as exc:
            failures.append(f"{kind}: {exc.message}")
        counts[kind] += 1
    return {"passed": not failures, "instances": counts, "failures": failures}


def check_free_section(settings: Settings) -> Dict[str, object]:
    verdicts = {g: free_counit_section_check(named_group(g), settings.free_word_length) for g in ("C3", "V4", "S3")}
    return {"passed": all(verdicts.values()), "groups": verdicts}


def check_naturality(settings: Settings) -> Dict[str, object]:
    top, bottom, alpha, beta = naturality_example()
    report = five_term_naturality(top, bottom, alpha, beta, QQ, settings.max_group_order)
    return {"passed": report.commutes, "squares": report.squares}


def check_extension_reports(settings: Settings) -> Dict[str, object]:
    reports = {name: extension_report(_map(name)[1]) for name in EXTENSION_NAMES}
    passed = all(r.in_E and (not r.is_trivial_galois or r.is_normal) for r in reports.values())
    passed = passed and reports["V4->C2"].is_trivial_galois and not reports["Q8->V4"].is_trivial_galois
    return {
        "passed": passed,
        "trivial_galois": {name: r.is_trivial_galois for name, r in reports.items()},
    }


def check_kernel_pairs(settings: Settings) -> Dict[str, object]:
    dims = {}
    passed = True
    for name in ("C4->C2", "S3->C2", "V4->C2"):
        _, f = _map(name)
        pair = kernel_pair(f)
        expected = f.dom.dim * hopf_kernel(f).dim
        dims[name] = pair.dim
        passed = passed and pair.dim == expected
    return {"passed": passed, "dims": dims}


CHECKS: Dict[str, Check] = {
    "axioms": check_axioms,
    "class_e": check_class_e,
    "cleft_roundtrip": check_cleft_roundtrip,
    "commutators": check_commutators,
    "crossed_products": check_crossed_products,
    "extension_reports": check_extension_reports,
    "five_term": check_five_term,
    "free_section": check_free_section,
    "h2_backends": check_h2_backends,
    "kernel_pairs": check_kernel_pairs,
    "naturality": check_naturality,
    "normality": check_normality,
    "pi1": check_pi1,
    "schur_oracle": check_schur_oracle,
}


def run_selftest(settings: Settings, only: Tuple[str, ...] = ()) -> Dict[str, Dict[str, object]]:
    """Run the battery (or the named checks); errors count as failures."""
    results: Dict[str, Dict[str, object]] = {}
    for name in sorted(CHECKS):
        if only and name not in only:
            continue
        try:
            results[name] = CHECKS[name](settings)
        except HopfError as exc:
            results[name] = {"passed": False, **exc.to_dict()}
        logger.info("selftest %s: %s", name, "pass" if results[name]["passed"] else "FAIL")
    return results
