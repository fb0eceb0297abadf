"""Sturm boxes, the scaled theta operator, and orchestrated congruence
verifiers for the mod-11 theorems and the mod-7 / mod-49 / mod-23 evidence
checks.

Every verdict is data-driven: verifiers compare exact coefficient blocks
class-by-class and list violations; a pass means zero violations on the
stated finite box. Promotion from the box to all T is a cited analytic
step, recorded in the report's caveat, never silently claimed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from . import engine, lattices, qexp
from .forms import parse_key

WEIGHT = 12  # rank-24 theta series weight; also the mod-11 lift weight 11+1

PROMOTION_CAVEAT = (
    "pass is exact on the stated finite box; extension to all T relies on two "
    "published results: the mod-p lift of a level-p theta series with "
    "determinant p^2 to a level-one form of weight p+1 (Boecherer-Nagaoka), "
    "and the Sturm-type diagonal box bound (4/3)^n k/16 for Siegel modular "
    "forms (Richter and Westerholt-Raum)."
)
EVIDENCE_CAVEAT = (
    "evidence, not proof: these congruences are observations; the box check "
    "is exact but no promotion theorem is invoked."
)

CHAINS = {
    "i": ("alpha", "kappa", "psi", "S1"),
    "ii": ("delta", "iota", "chi", "S2"),
    "iii": ("epsilon", "omega", "S3"),
}


def sturm_diag_bound(k: int, n: int) -> int:
    """floor((4/3)^n * k / 16), computed in exact rationals."""
    if k < 1 or n < 1:
        raise ValueError("weight and degree must be >= 1")
    return floor(Fraction(4, 3) ** n * Fraction(k, 16))


def theta_operator_scaled(f: qexp.QExpansion) -> qexp.QExpansion:
    """Coefficient at T becomes a(T) * det(2T).

    det(2T) = 2^n det(T), so for any modulus coprime to 2 the mod-p kernel
    verdicts agree with the det(T)-scaled operator while staying integral.
    """
    return f.map_values(
        lambda key, v: v * parse_key(key).det2t(), label=f.label + ":theta-op"
    )


def coxeter_congruent(l1: str, l2: str, p: int) -> bool:
    return (lattices.coxeter_number(l1) - lattices.coxeter_number(l2)) % p == 0


@dataclass
class CongruenceReport:
    claim_id: str
    prime: int
    weight: int
    degree: int
    bound: int
    checked: int = 0
    violations: list = field(default_factory=list)
    caveat: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def overall(self) -> str:
        return "pass" if not self.violations else "fail"

    def to_json(self) -> str:
        return json.dumps(
            {
                "claim_id": self.claim_id,
                "prime": self.prime,
                "weight": self.weight,
                "degree": self.degree,
                "bound": self.bound,
                "checked": self.checked,
                "violations": self.violations,
                "overall": self.overall,
                "caveat": self.caveat,
                "extras": self.extras,
            },
            indent=1, sort_keys=True,
        )

    def to_text(self) -> str:
        lines = [
            f"claim {self.claim_id}: {self.overall.upper()}  "
            f"(mod {self.prime}, weight {self.weight}, degree <= {self.degree}, "
            f"box t_ii <= {self.bound}, {self.checked} checks)",
        ]
        for v in self.violations[:50]:
            lines.append(f"  VIOLATION {v}")
        if len(self.violations) > 50:
            lines.append(f"  ... {len(self.violations) - 50} more")
        for k in sorted(self.extras):
            lines.append(f"  {k}: {self.extras[k]}")
        lines.append(f"  caveat: {self.caveat}")
        return "\n".join(lines)


def _pairwise_check(report, blocks, labels, degree, p):
    """All unordered pairs, both orders implied; appends violations."""
    for a_i in range(len(labels)):
        for b_i in range(a_i + 1, len(labels)):
            la, lb = labels[a_i], labels[b_i]
            bad = qexp.qexp_congruent(blocks[la], blocks[lb], p)
            keys = set(blocks[la].coeffs) | set(blocks[lb].coeffs)
            report.checked += len(keys)
            for key in bad:
                report.violations.append(
                    {
                        "degree": degree,
                        "pair": [la, lb],
                        "key": key,
                        "values": [
                            blocks[la].coefficient(key),
                            blocks[lb].coefficient(key),
                        ],
                    }
                )


def verify_theorem_3_1(part: str, *, cache_dir=None, ledger=None, workers=1,
                       budget=engine.DEFAULT_NODE_BUDGET,
                       progress=None) -> CongruenceReport:
    """Mod-11 congruence of the listed theta blocks on degrees 1..3 boxes.

    Chains: (i) alpha=kappa=psi=S1, (ii) delta=iota=chi=S2,
    (iii) epsilon=omega=S3; every unordered pair is compared directly, so
    chain transitivity is checked explicitly rather than assumed.
    """
    if part not in CHAINS:
        raise ValueError(f"part must be one of {sorted(CHAINS)}")
    p = 11
    labels = CHAINS[part]
    bound = sturm_diag_bound(WEIGHT, 3)
    report = CongruenceReport(
        claim_id=f"thm3.1.{part}", prime=p, weight=WEIGHT, degree=3,
        bound=bound, caveat=PROMOTION_CAVEAT,
    )
    screen = {}
    niemeier = [l for l in labels if l in lattices.COXETER_NUMBERS]
    for i in range(len(niemeier)):
        for j in range(i + 1, len(niemeier)):
            a, b = niemeier[i], niemeier[j]
            screen[f"{a}~{b}"] = coxeter_congruent(a, b, p)
    report.extras["coxeter_screen_mod11"] = screen
    if not all(screen.values()):
        report.violations.append(
            {"stage": "coxeter-screen", "detail": screen}
        )
        return report
    stores = {}
    for label in labels:
        lat = lattices.build_lattice(label)
        stores[label] = engine.ShellStore(lat, cache_dir=cache_dir)
    per_degree_classes = {}
    for degree in (1, 2, 3):
        blocks = {}
        for label in labels:
            lat = lattices.build_lattice(label)
            blocks[label] = engine.theta_block(
                lat, degree, bound, store=stores[label], cache_dir=cache_dir,
                ledger=ledger, workers=workers, budget=budget,
                progress=progress,
            )
        per_degree_classes[degree] = len(next(iter(blocks.values())).coeffs)
        _pairwise_check(report, blocks, labels, degree, p)
    report.extras["classes_per_degree"] = per_degree_classes
    return report


def verify_theorem_4_1(*, budget=engine.DEFAULT_NODE_BUDGET, cache_dir=None,
                       ledger=None, workers=1, progress=None) -> CongruenceReport:
    """Degree-4 mod-11 congruence of theta(omega) vs theta(S3) on the box
    t_ii <= 2, with the shortcut facts asserted independently and the scaled
    theta-operator kernel checked on the same box."""
    p = 11
    bound = sturm_diag_bound(WEIGHT, 4)
    report = CongruenceReport(
        claim_id="thm4.1", prime=p, weight=WEIGHT, degree=4, bound=bound,
        caveat=PROMOTION_CAVEAT,
    )
    omega = lattices.build_lattice("omega")
    s3 = lattices.build_lattice("S3")
    blk_omega = engine.theta_block(
        omega, 4, bound, cache_dir=cache_dir, ledger=ledger, workers=workers,
        budget=budget, progress=progress,
    )
    blk_s3 = engine.theta_block(
        s3, 4, bound, cache_dir=cache_dir, ledger=ledger, workers=workers,
        budget=budget, progress=progress,
    )
    bad = qexp.qexp_congruent(blk_omega, blk_s3, p)
    report.checked += len(blk_omega.coeffs)
    for key in bad:
        report.violations.append(
            {
                "stage": "omega-vs-S3",
                "key": key,
                "values": [blk_omega.coefficient(key), blk_s3.coefficient(key)],
            }
        )
    # independent assertions mirroring the published shortcut facts
    d121_classes = 0
    for key, a_om in blk_omega.coeffs.items():
        t = parse_key(key)
        a_s3 = blk_s3.coefficient(key)
        d = t.det2t()
        report.checked += 1
        if any(x == 1 for x in t.diag) and a_om != 0:
            report.violations.append(
                {"stage": "no-roots-shortcut", "key": key, "value": a_om}
            )
        if 0 < d < 121 and a_s3 != 0:
            report.violations.append(
                {"stage": "small-discriminant-shortcut", "key": key, "value": a_s3}
            )
        if d == 121:
            d121_classes += 1
            if a_s3 != 24:
                report.violations.append(
                    {"stage": "d121-aut-count", "key": key, "value": a_s3}
                )
    report.extras["d121_classes"] = d121_classes
    kernel = theta_operator_scaled(blk_omega)
    kernel_bad = [k for k, v in kernel.coeffs.items() if v % p]
    report.checked += len(kernel.coeffs)
    for key in kernel_bad:
        report.violations.append(
            {"stage": "theta-operator-kernel", "key": key,
             "value": kernel.coefficient(key)}
        )
    aut = engine.aut_order(s3, cache_dir=cache_dir)
    report.extras["aut_S3"] = aut
    if aut != 24:
        report.violations.append({"stage": "aut-S3", "value": aut})
    report.extras["label_note"] = (
        "the published closing display of this congruence names a fourth "
        "quaternary form; only S1, S2, S3 exist and the comparison is "
        "against S3 (typo recorded, not silently corrected)"
    )
    report.extras["theta_operator_scaling"] = (
        "operator scaled by det(2T) = 2^n det(T); mod-p kernel verdicts for "
        "odd p agree with the det(T) scaling"
    )
    return report


def verify_observations(parts=("mod7", "mod49", "mod23"), *, cache_dir=None,
                        ledger=None, workers=1,
                        budget=engine.DEFAULT_NODE_BUDGET,
                        progress=None) -> CongruenceReport:
    """Evidence-grade checks on computed boxes (explicitly not proofs):
    theta(omega) = 1 mod 7 (degrees 1..4), scaled-theta-operator kernel
    mod 49 at degree 4, and the degree-2 mod-23 kernel. The degree-5 mod-49
    companion claim is out of scope at desk scale and is only recorded."""
    parts = tuple(parts)
    bound = 2
    degree = 4 if "mod7" in parts or "mod49" in parts else 2
    primes = {"mod7": 7, "mod49": 49, "mod23": 23}
    claim_ids = {"mod7": "obs-mod7", "mod49": "obs-mod49",
                 "mod23": "intro-mod23"}
    used = [primes[p] for p in parts]
    report = CongruenceReport(
        claim_id=claim_ids[parts[0]] if len(parts) == 1
        else "obs-" + "+".join(parts),
        prime=used[0] if len(used) == 1 else 0,
        weight=WEIGHT, degree=degree, bound=bound, caveat=EVIDENCE_CAVEAT,
    )
    report.extras["primes"] = {p: primes[p] for p in parts}
    omega = lattices.build_lattice("omega")
    store = engine.ShellStore(omega, cache_dir=cache_dir)
    blocks = {}

    def block(n, b):
        if (n, b) not in blocks:
            blocks[(n, b)] = engine.theta_block(
                omega, n, b, store=store, cache_dir=cache_dir, ledger=ledger,
                workers=workers, budget=budget, progress=progress,
            )
        return blocks[(n, b)]

    if "mod7" in parts:
        for n in (1, 2, 3, 4):
            blk = block(n, bound)
            for key, val in blk.coeffs.items():
                report.checked += 1
                t = parse_key(key)
                want_one = all(x == 0 for x in t.diag)
                if want_one:
                    if val != 1:
                        report.violations.append(
                            {"stage": "mod7-unit", "degree": n, "key": key,
                             "value": val}
                        )
                elif val % 7:
                    report.violations.append(
                        {"stage": "mod7", "degree": n, "key": key, "value": val}
                    )
        report.extras["mod7"] = "theta(omega) = 1 mod 7 on degrees 1..4, box 2"
    if "mod49" in parts:
        kernel = theta_operator_scaled(block(4, bound))
        for key, val in kernel.coeffs.items():
            report.checked += 1
            if val % 49:
                report.violations.append(
                    {"stage": "mod49-theta-kernel", "key": key, "value": val}
                )
        report.extras["mod49"] = (
            "det(2T) * a(T) = 0 mod 49 on the degree-4 box; the degree-5 "
            "companion is out of scope (not desk-scale)"
        )
    if "mod23" in parts:
        kernel = theta_operator_scaled(block(2, bound))
        for key, val in kernel.coeffs.items():
            report.checked += 1
            if val % 23:
                report.violations.append(
                    {"stage": "mod23-theta-kernel", "key": key, "value": val}
                )
        report.extras["mod23"] = (
            "det(2T) * a(T) = 0 mod 23 at degree 2 on box 2 (the classical "
            "kernel observation that began this line of study)"
        )
    if "mod49" in parts or "mod23" in parts:
        report.extras["theta_operator_scaling"] = (
            "operator scaled by det(2T) = 2^n det(T); mod-p kernel verdicts "
            "for odd p agree with the det(T) scaling"
        )
    return report
