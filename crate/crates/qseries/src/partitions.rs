//! Colored partitions: counting by generating function and by exhaustive
//! enumeration, and the partition identities the order-68 fractions yield.
//!
//! A spec lists residue classes mod m with color multiplicities. The ±
//! shorthand expands a class ±s into the residues {s, m-s}; when s = m-s
//! the two coincide and the class keeps one residue with its colors
//! doubled, which is what the product forms behind the identities demand
//! (one copy of the factor per sign of the exponent).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::case_by_id;
use crate::products::ProductSpec;
use crate::report::{CheckStatus, IdentityReport, Mismatch, PartitionReport};
use crate::series::{LatticeSeries, Monomial};

/// Parts ≡ `residue` (mod m), each carrying one of `colors` colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClass {
    pub residue: u64,
    pub colors: u32,
}

/// A colored-partition counting problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredPartitionSpec {
    pub modulus: u64,
    pub classes: Vec<ColorClass>,
}

/// Exhaustive enumeration refuses beyond this bound.
pub const ENUMERATION_BUDGET: u64 = 60;

impl ColoredPartitionSpec {
    pub fn new(modulus: u64, classes: Vec<ColorClass>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidSpec("modulus must be positive".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for c in &classes {
            if c.residue == 0 || c.residue > modulus {
                return Err(Error::InvalidSpec(format!(
                    "residue {} outside 1..={modulus}",
                    c.residue
                )));
            }
            if c.colors == 0 {
                return Err(Error::InvalidSpec("color count must be at least 1".into()));
            }
            if !seen.insert(c.residue) {
                return Err(Error::InvalidSpec(format!("residue {} appears twice", c.residue)));
            }
        }
        Ok(ColoredPartitionSpec { modulus, classes })
    }

    /// Expand ± classes: (±s, r) becomes {s, m-s} each with r colors; a
    /// self-paired residue (s = m-s) keeps one class with 2r colors.
    pub fn from_pm(modulus: u64, pm_classes: &[(u64, u32)]) -> Result<Self> {
        let mut classes = Vec::new();
        for &(s, colors) in pm_classes {
            if s == 0 || s >= modulus {
                return Err(Error::InvalidSpec(format!(
                    "± residue {s} outside 1..{modulus}"
                )));
            }
            let mirror = modulus - s;
            if s == mirror {
                classes.push(ColorClass { residue: s, colors: 2 * colors });
            } else {
                classes.push(ColorClass { residue: s.min(mirror), colors });
                classes.push(ColorClass { residue: s.max(mirror), colors });
            }
        }
        classes.sort_by_key(|c| c.residue);
        Self::new(modulus, classes)
    }

    /// Generating function ∏ 1/(q^s; q^m)^colors as a product spec.
    pub fn gf_spec(&self) -> ProductSpec {
        let mut spec = ProductSpec::empty(1);
        for c in &self.classes {
            spec.push(c.residue as i64, self.modulus as i64, -(c.colors as i32));
        }
        spec
    }

    /// Counting sequence 0..=n_max via the generating function.
    pub fn count_gf(&self, n_max: u64) -> Result<Vec<BigInt>> {
        let s = self.gf_spec().expand(n_max as i64)?;
        (0..=n_max as i64).map(|e| s.coefficient(e)).collect()
    }

    /// The distinct colored part kinds with value <= n, ascending by value.
    fn colored_parts_up_to(&self, n: u64) -> Vec<(u64, u32)> {
        let mut parts = Vec::new();
        for c in &self.classes {
            let mut v = c.residue;
            while v <= n {
                for color in 0..c.colors {
                    parts.push((v, color));
                }
                v += self.modulus;
            }
        }
        parts.sort();
        parts
    }

    /// Counting sequence by explicit enumeration of colored-part multisets;
    /// the independent oracle for [`Self::count_gf`].
    pub fn count_enumerate(&self, n_max: u64) -> Result<Vec<BigInt>> {
        if n_max > ENUMERATION_BUDGET {
            return Err(Error::EnumerationBudget { requested: n_max, budget: ENUMERATION_BUDGET });
        }
        let parts = self.colored_parts_up_to(n_max);
        let mut counts = vec![BigInt::zero(); n_max as usize + 1];
        // each choice vector (copies of every colored part kind) is one
        // colored partition, counted at its total
        fn multisets(parts: &[(u64, u32)], idx: usize, used: u64, n_max: u64, counts: &mut [BigInt]) {
            if idx == parts.len() {
                counts[used as usize] += 1u32;
                return;
            }
            let value = parts[idx].0;
            let mut total = 0u64;
            while used + total <= n_max {
                multisets(parts, idx + 1, used + total, n_max, counts);
                total += value;
            }
        }
        multisets(&parts, 0, 0, n_max, &mut counts);
        Ok(counts)
    }

    /// Materialize every colored partition of n as a list of (value, color)
    /// parts in weakly decreasing order. Small n only.
    pub fn partitions_of(&self, n: u64) -> Result<Vec<Vec<(u64, u32)>>> {
        if n > ENUMERATION_BUDGET {
            return Err(Error::EnumerationBudget { requested: n, budget: ENUMERATION_BUDGET });
        }
        let parts = self.colored_parts_up_to(n);
        let mut out = Vec::new();
        let mut current: Vec<(u64, u32)> = Vec::new();
        fn rec(
            parts: &[(u64, u32)],
            idx: usize,
            remaining: u64,
            current: &mut Vec<(u64, u32)>,
            out: &mut Vec<Vec<(u64, u32)>>,
        ) {
            if idx == parts.len() {
                if remaining == 0 {
                    let mut p = current.clone();
                    // values descending, colors ascending within a value
                    p.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                    out.push(p);
                }
                return;
            }
            let (value, color) = parts[idx];
            let max_copies = remaining / value;
            for copies in 0..=max_copies {
                for _ in 0..copies {
                    current.push((value, color));
                }
                rec(parts, idx + 1, remaining - copies * value, current, out);
                for _ in 0..copies {
                    current.pop();
                }
            }
        }
        rec(&parts, 0, n, &mut current, &mut out);
        out.sort();
        Ok(out)
    }
}

/// One signed, shifted counting sequence inside an identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityTerm {
    pub sign: i8,
    pub shift: u64,
    pub spec: ColoredPartitionSpec,
}

/// Claim: Σ sign_k · count_k(n - shift_k) = 0 for every n >= threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionIdentity {
    pub label: String,
    pub threshold: u64,
    pub terms: Vec<IdentityTerm>,
}

/// The difference identity carried by the last order-68 fraction.
pub fn identity_d() -> PartitionIdentity {
    let d1 = ColoredPartitionSpec::from_pm(68, &[(1, 2), (16, 1), (18, 1), (34, 2)]).expect("valid");
    let d2 = ColoredPartitionSpec::from_pm(68, &[(16, 1), (18, 1), (33, 2), (34, 2)]).expect("valid");
    let d3 = ColoredPartitionSpec::from_pm(68, &[(1, 2), (17, 2), (33, 2)]).expect("valid");
    PartitionIdentity {
        label: "4.1".into(),
        threshold: 16,
        terms: vec![
            IdentityTerm { sign: 1, shift: 0, spec: d1 },
            IdentityTerm { sign: -1, shift: 16, spec: d2 },
            IdentityTerm { sign: -1, shift: 0, spec: d3 },
        ],
    }
}

/// The companion sum identity.
pub fn identity_k() -> PartitionIdentity {
    let k1 = ColoredPartitionSpec::from_pm(68, &[(1, 2), (17, 2), (32, 1), (34, 1)]).expect("valid");
    let k2 = ColoredPartitionSpec::from_pm(68, &[(17, 2), (32, 1), (33, 2), (34, 1)]).expect("valid");
    let k3 = ColoredPartitionSpec::from_pm(68, &[(1, 2), (16, 1), (18, 1), (33, 2)]).expect("valid");
    PartitionIdentity {
        label: "4.2".into(),
        threshold: 16,
        terms: vec![
            IdentityTerm { sign: 1, shift: 0, spec: k1 },
            IdentityTerm { sign: 1, shift: 16, spec: k2 },
            IdentityTerm { sign: -1, shift: 0, spec: k3 },
        ],
    }
}

pub fn identity_by_label(label: &str) -> Result<PartitionIdentity> {
    match label {
        "4.1" => Ok(identity_d()),
        "4.2" => Ok(identity_k()),
        other => Err(Error::InvalidSpec(format!("unknown partition identity {other:?}"))),
    }
}

/// Evaluate the signed sum for 0 <= n <= n_max via generating functions.
/// Nonzero sums at n >= threshold are violations; below the threshold they
/// are reported without failing the claim.
pub fn verify_partition_identity(identity: &PartitionIdentity, n_max: u64) -> Result<PartitionReport> {
    let sequences: Vec<Vec<BigInt>> = identity
        .terms
        .iter()
        .map(|t| t.spec.count_gf(n_max))
        .collect::<Result<_>>()?;
    let mut violations = Vec::new();
    let mut below = Vec::new();
    for n in 0..=n_max {
        let mut acc = BigInt::zero();
        for (term, seq) in identity.terms.iter().zip(&sequences) {
            if n >= term.shift {
                let v = &seq[(n - term.shift) as usize];
                if term.sign > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        if !acc.is_zero() {
            if n >= identity.threshold {
                violations.push((n, acc.to_string()));
            } else {
                below.push((n, acc.to_string()));
            }
        }
    }
    Ok(PartitionReport {
        identity: identity.label.clone(),
        n_max,
        threshold: identity.threshold,
        status: if violations.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail },
        violations,
        below_threshold_nonzero: below,
    })
}

// --- the series identities behind the two partition theorems ---

/// Append the ± pair (q^s, q^{m-s}; q^m)^power, self-paired s doubled.
fn push_pm(spec: &mut ProductSpec, s: i64, power: i32) {
    if s == 34 {
        spec.push(34, 68, 2 * power);
    } else {
        spec.push(s, 68, power);
        spec.push(68 - s, 68, power);
    }
}

fn pm_quotient(num: &[(i64, i32)], den: &[(i64, i32)]) -> ProductSpec {
    let mut spec = ProductSpec::empty(1);
    for &(s, p) in num {
        push_pm(&mut spec, s, p);
    }
    for &(s, p) in den {
        push_pm(&mut spec, s, -p);
    }
    spec
}

fn check(label: &str, lhs: &LatticeSeries, rhs: &LatticeSeries, order: i64) -> IdentityReport {
    let mismatch = lhs.first_mismatch(rhs).expect("same lattice");
    IdentityReport {
        case: label.to_string(),
        denom: 1,
        order,
        status: if mismatch.is_none() { CheckStatus::Pass } else { CheckStatus::Fail },
        first_mismatch: mismatch.map(|(e, l, r)| Mismatch {
            exp_num: e,
            lhs: l.to_string(),
            rhs: r.to_string(),
        }),
        expression: None,
    }
}

/// Verify the product-form chain connecting the sum/difference identities
/// of the eighth order-68 fraction to the colored-partition generating
/// functions, every rearrangement step checked by multiplying back.
pub fn verify_series_chain(order: i64) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    let pad = order + 40;

    // difference route: 1/Y8 - Y8 against its three product terms
    let y8 = crate::cf::NamedCf::new("Y8".parse()?);
    let y8_series = y8.product_series(pad)?;
    let y8_recip = y8_series.reciprocal()?.truncate_to(order);
    let y8_series = y8_series.truncate_to(order);

    let t1 = pm_quotient(&[(33, 1)], &[(1, 1)])
        .expand(pad)?
        .mul_monomial(Monomial::q(-8, 1))?
        .truncate_to(order);
    let t2 = pm_quotient(&[(1, 1)], &[(33, 1)])
        .expand(pad)?
        .mul_monomial(Monomial::q(8, 1))?
        .truncate_to(order);
    // third term printed over base q^{34}: (q^16,q^18;q^34)(q^34;q^34)^6 /
    // (q,q^33;q^34)(q^17;q^17)^2(q^68;q^68)^4, all shifted by q^{-8}
    let mut t3_spec = ProductSpec::empty(1);
    t3_spec.push(16, 34, 1);
    t3_spec.push(18, 34, 1);
    t3_spec.push(34, 34, 6);
    t3_spec.push(1, 34, -1);
    t3_spec.push(33, 34, -1);
    t3_spec.push(17, 17, -2);
    t3_spec.push(68, 68, -4);
    let t3 = t3_spec.expand(pad)?.mul_monomial(Monomial::q(-8, 1))?.truncate_to(order);

    reports.push(check("difference-term-1-is-reciprocal", &t1, &y8_recip, order));
    reports.push(check("difference-term-2-is-fraction", &t2, &y8_series, order));
    let rhs_p = case_by_id("T2.2-p")?.rhs.eval(1, order)?;
    reports.push(check("difference-term-3-is-theta-form", &t3, &rhs_p, order));
    let zero = LatticeSeries::zero(1, order);
    let residual = t1.sub(&t2)?.sub(&t3)?;
    reports.push(check("difference-product-identity", &residual, &zero, order));

    // base-68 form: every term times q^8
    let u1 = pm_quotient(&[(33, 1)], &[(1, 1)]).expand(order)?;
    let u2 = pm_quotient(&[(1, 1)], &[(33, 1)])
        .expand(order)?
        .mul_monomial(Monomial::q(16, 1))?
        .truncate_to(order);
    let u3 = pm_quotient(&[(16, 1), (18, 1), (34, 2)], &[(1, 1), (33, 1), (17, 2)]).expand(order)?;
    for (label, u, t) in [
        ("base-68-term-1", &u1, &t1),
        ("base-68-term-2", &u2, &t2),
        ("base-68-term-3", &u3, &t3),
    ] {
        let shifted = t.mul_monomial(Monomial::q(8, 1))?.truncate_to(order - 8);
        reports.push(check(label, &u.truncate_to(order - 8), &shifted, order - 8));
    }

    // quotient form: divide by (1±,16±,18±,33±)(34±)²; checked by
    // multiplying back
    let divisor = pm_quotient(&[(1, 1), (16, 1), (18, 1), (33, 1), (34, 2)], &[]);
    let v1 = pm_quotient(&[], &[(16, 1), (18, 1), (1, 2), (34, 2)]).expand(order)?;
    let v2 = pm_quotient(&[], &[(16, 1), (18, 1), (33, 2), (34, 2)])
        .expand(order)?
        .mul_monomial(Monomial::q(16, 1))?
        .truncate_to(order);
    let v3 = pm_quotient(&[], &[(1, 2), (17, 2), (33, 2)]).expand(order)?;
    let div_series = divisor.expand(order)?;
    for (label, v, u) in [
        ("quotient-term-1-multiply-back", &v1, &u1),
        ("quotient-term-2-multiply-back", &v2, &u2),
        ("quotient-term-3-multiply-back", &v3, &u3),
    ] {
        let back = v.mul(&div_series)?.truncate_to(order - 16);
        reports.push(check(label, &back, &u.truncate_to(order - 16), order - 16));
    }
    let residual = v1.sub(&v2)?.sub(&v3)?;
    reports.push(check("difference-quotient-identity", &residual, &zero.truncate_to(residual.order_num()), residual.order_num()));

    // the quotient terms are exactly the generating functions
    let d = identity_d();
    let gf1 = d.terms[0].spec.gf_spec().expand(order)?;
    let gf2 = d.terms[1].spec.gf_spec().expand(order)?.mul_monomial(Monomial::q(16, 1))?.truncate_to(order);
    let gf3 = d.terms[2].spec.gf_spec().expand(order)?;
    reports.push(check("difference-gf-term-1", &v1, &gf1, order));
    reports.push(check("difference-gf-term-2", &v2, &gf2, order));
    reports.push(check("difference-gf-term-3", &v3, &gf3, order));

    // sum route: 1/Y8 + Y8 and the companion quotient identity
    let w1 = pm_quotient(&[], &[(32, 1), (34, 1), (1, 2), (17, 2)]).expand(order)?;
    let w2 = pm_quotient(&[], &[(32, 1), (34, 1), (17, 2), (33, 2)])
        .expand(order)?
        .mul_monomial(Monomial::q(16, 1))?
        .truncate_to(order);
    let w3 = pm_quotient(&[], &[(16, 1), (18, 1), (1, 2), (33, 2)]).expand(order)?;
    let residual = w1.add(&w2)?.sub(&w3)?;
    reports.push(check("sum-quotient-identity", &residual, &zero.truncate_to(residual.order_num()), residual.order_num()));

    let divisor_sum = pm_quotient(&[(32, 1), (34, 1), (33, 1), (1, 1), (17, 2)], &[]).expand(order)?;
    let rhs_o = case_by_id("T2.2-o")?.rhs.eval(1, order)?;
    for (label, w, target) in [
        ("sum-term-1-multiply-back", &w1, &y8_recip),
        ("sum-term-2-multiply-back", &w2, &y8_series),
        ("sum-term-3-multiply-back", &w3, &rhs_o),
    ] {
        let back = w.mul(&divisor_sum)?.truncate_to(order - 16);
        let scaled = target.mul_monomial(Monomial::q(8, 1))?.truncate_to(order - 16);
        reports.push(check(label, &back, &scaled, order - 16));
    }

    // the sum-route quotient terms are the companion generating functions
    let k = identity_k();
    let kgf1 = k.terms[0].spec.gf_spec().expand(order)?;
    let kgf2 = k.terms[1].spec.gf_spec().expand(order)?.mul_monomial(Monomial::q(16, 1))?.truncate_to(order);
    let kgf3 = k.terms[2].spec.gf_spec().expand(order)?;
    reports.push(check("sum-gf-term-1", &w1, &kgf1, order));
    reports.push(check("sum-gf-term-2", &w2, &kgf2, order));
    reports.push(check("sum-gf-term-3", &w3, &kgf3, order));

    Ok(reports)
}

/// A 2-color spec over every positive integer (modulus 1).
pub fn two_color_all_parts() -> ColoredPartitionSpec {
    ColoredPartitionSpec::new(1, vec![ColorClass { residue: 1, colors: 2 }]).expect("valid")
}
