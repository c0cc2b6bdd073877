//! The w-dissection of shifted eta quotients and the vanishing-coefficient
//! scanner.
//!
//! The dissection splits
//!   (q^x, q^x, q^{y+z}, q^{x-y-z}; q^x)_∞ / (q^z, q^{x-z}, q^y, q^{x-y}; q^x)_∞
//! into w terms, the j-th shifted by q^{jy}, with every product exponent on
//! the right-hand side a multiple of w and gcd(y, w) = 1. Scaling both
//! sides by the half-period multiplier turns the left side into a starred
//! fraction quotient (or its reciprocal), and the exponent classes of the
//! terms prove the vanishing progressions: the only term on the claimed
//! class carries an exponent-zero factor and is identically zero.
//!
//! Scans always run twice: the structured per-term route and a raw
//! expansion of the quotient, which is the oracle.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cf::{CfFamily, CfId, NamedCf};
use crate::error::{Error, Result};
use crate::products::ProductSpec;
use crate::report::{
    CheckStatus, DissectReport, DissectionTermReport, Mismatch, ScanReport, TableRowReport,
};
use crate::series::LatticeSeries;

/// Parameters (x, y, z, w) of the dissection formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionSpec {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub w: u64,
}

impl DissectionSpec {
    pub fn new(x: u64, y: u64, z: u64, w: u64) -> Result<Self> {
        let spec = DissectionSpec { x, y, z, w };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let DissectionSpec { x, y, z, w } = *self;
        if x == 0 || y == 0 || z == 0 || w == 0 {
            return Err(Error::InvalidSpec("dissection parameters must be positive".into()));
        }
        if y >= x || z >= x {
            return Err(Error::InvalidSpec(
                "dissection needs y < x and z < x so the left side's denominators stay off zero"
                    .into(),
            ));
        }
        if y.gcd(&w) != 1 {
            return Err(Error::InvalidSpec(format!("gcd(y, w) = gcd({y}, {w}) must be 1")));
        }
        // every right-hand exponent must be a multiple of w, checked by sweep
        for j in 0..w {
            for e in self.term_exponents(j) {
                if e.rem_euclid(w as i64) != 0 {
                    return Err(Error::InvalidSpec(format!(
                        "right-hand exponent {e} (term {j}) is not a multiple of w = {w}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn term_exponents(&self, j: u64) -> [i64; 7] {
        let (x, y, z, w, j) = (
            self.x as i64,
            self.y as i64,
            self.z as i64,
            self.w as i64,
            j as i64,
        );
        [
            w * x,
            w * y + z + j * x,
            (w - j) * x - w * y - z,
            j * x + z,
            (w - j) * x - z,
            w * y,
            (x - y) * w,
        ]
    }

    /// Left-hand quotient on the integer lattice.
    pub fn lhs_spec(&self) -> ProductSpec {
        let (x, y, z) = (self.x as i64, self.y as i64, self.z as i64);
        ProductSpec::quotient(1, &[x, x, y + z, x - y - z], &[z, x - z, y, x - y], x)
    }

    /// Product part of the j-th right-hand term (the q^{jy} shift is
    /// reported separately).
    pub fn term_spec(&self, j: u64) -> (u64, ProductSpec) {
        let e = self.term_exponents(j);
        let wx = e[0];
        let spec = ProductSpec::quotient(1, &[wx, wx, e[1], e[2]], &[e[3], e[4], e[5], e[6]], wx);
        (j * self.y, spec)
    }

    /// Expand the left side and all w right-hand terms (shift applied).
    pub fn dissect(&self, order: i64) -> Result<DissectionOutcome> {
        let lhs = self.lhs_spec().expand(order)?;
        let mut terms = Vec::with_capacity(self.w as usize);
        let mut zero_terms = Vec::new();
        for j in 0..self.w {
            let (shift, spec) = self.term_spec(j);
            let t = spec
                .expand(order - shift as i64)?
                .mul_monomial(crate::series::Monomial::q(shift as i64, 1))?;
            if t.is_zero_window() {
                zero_terms.push(j as usize);
            }
            terms.push(t);
        }
        Ok(DissectionOutcome { spec: *self, lhs, terms, zero_terms })
    }
}

/// Expanded dissection: left side and every right-hand term.
#[derive(Debug, Clone)]
pub struct DissectionOutcome {
    pub spec: DissectionSpec,
    pub lhs: LatticeSeries,
    pub terms: Vec<LatticeSeries>,
    pub zero_terms: Vec<usize>,
}

impl DissectionOutcome {
    pub fn sum_of_terms(&self) -> Result<LatticeSeries> {
        let mut acc = LatticeSeries::zero(1, self.lhs.order_num());
        for t in &self.terms {
            acc = acc.add(t)?;
        }
        Ok(acc)
    }

    pub fn report(&self) -> Result<DissectReport> {
        let sum = self.sum_of_terms()?;
        let mismatch = self.lhs.first_mismatch(&sum)?;
        Ok(DissectReport {
            x: self.spec.x,
            y: self.spec.y,
            z: self.spec.z,
            w: self.spec.w,
            order: self.lhs.order_num().min(sum.order_num()),
            term_count: self.terms.len(),
            zero_terms: self.zero_terms.clone(),
            status: if mismatch.is_none() { CheckStatus::Pass } else { CheckStatus::Fail },
            first_mismatch: mismatch.map(|(e, l, r)| Mismatch {
                exp_num: e,
                lhs: l.to_string(),
                rhs: r.to_string(),
            }),
        })
    }
}

/// Verify left = sum of terms through `order`.
pub fn verify_dissection(spec: &DissectionSpec, order: i64) -> Result<DissectReport> {
    spec.dissect(order)?.report()
}

/// A vanishing-coefficient claim about a prefactor-free product quotient:
/// the coefficient of q^{m·n + r} is zero for every n with m·n + r within
/// the scan bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VanishingClaim {
    pub label: String,
    pub series: ProductSpec,
    pub modulus: u64,
    pub residue: u64,
    pub bound: i64,
}

impl VanishingClaim {
    pub fn new(
        label: impl Into<String>,
        series: ProductSpec,
        modulus: u64,
        residue: u64,
        bound: i64,
    ) -> Result<Self> {
        if series.denom != 1 {
            return Err(Error::InvalidSpec("vanishing claims live on the integer lattice".into()));
        }
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidSpec(format!(
                "progression {modulus}·n + {residue} is not reduced"
            )));
        }
        if bound < (modulus + residue) as i64 {
            return Err(Error::InvalidSpec(format!(
                "scan bound {bound} covers less than one full period of {modulus}·n + {residue}; a vacuous scan must not pass"
            )));
        }
        Ok(VanishingClaim { label: label.into(), series, modulus, residue, bound })
    }
}

fn scan_progression(series: &LatticeSeries, modulus: u64, residue: u64) -> Vec<(u64, String)> {
    let m = modulus as i64;
    let r = residue as i64;
    let mut out = Vec::new();
    let mut e = r;
    while e <= series.order_num() {
        let c = series.coefficient(e).expect("within window");
        if !num_traits::Zero::is_zero(&c) {
            out.push(((e - r) as u64 / modulus, c.to_string()));
        }
        e += m;
    }
    out
}

/// Raw-expansion scan of a claim.
pub fn scan_vanishing(claim: &VanishingClaim) -> Result<ScanReport> {
    let series = claim.series.expand(claim.bound)?;
    let violations = scan_progression(&series, claim.modulus, claim.residue);
    let checked = ((claim.bound - claim.residue as i64) / claim.modulus as i64 + 1).max(0) as u64;
    Ok(ScanReport {
        label: claim.label.clone(),
        modulus: claim.modulus,
        residue: claim.residue,
        bound: claim.bound,
        checked,
        status: if violations.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail },
        violations,
    })
}

/// The starred quotient R_y reachable by the dissection after scaling by
/// the half-period multiplier: for the order-34 family
/// (q^{17-y}, q^{17+y}; q^34)/(q^y, q^{34-y}; q^34), and the analogue with
/// 34/68 for the other family.
pub fn starred_quotient_for(family: CfFamily, y: u64) -> ProductSpec {
    let (half, full) = match family {
        CfFamily::X => (17i64, 34i64),
        CfFamily::Y => (34, 68),
    };
    let y = y as i64;
    ProductSpec::quotient(1, &[half - y, half + y], &[y, full - y], full)
}

fn dissection_params_for(family: CfFamily) -> (u64, u64, u64) {
    match family {
        CfFamily::X => (34, 17, 17),
        CfFamily::Y => (68, 34, 34),
    }
}

/// Half-period multiplier that turns the dissection's left side into R_y.
fn multiplier_for(family: CfFamily) -> ProductSpec {
    let (x, z, _) = dissection_params_for(family);
    let mut spec = ProductSpec::empty(1);
    spec.push(z as i64, x as i64, 2);
    spec.push(x as i64, x as i64, -2);
    spec
}

/// Per-term dissection route for a vanishing claim on R_y: expands every
/// scaled term, records its exponent class mod w, scans the claimed
/// progression inside each term, and checks the terms sum back to the raw
/// series.
pub fn per_term_vanishing(
    family: CfFamily,
    y: u64,
    residue: u64,
    bound: i64,
) -> Result<(Vec<DissectionTermReport>, bool)> {
    let (x, z, w) = dissection_params_for(family);
    let spec = DissectionSpec::new(x, y, z, w)?;
    let multiplier = multiplier_for(family);
    let raw = starred_quotient_for(family, y).expand(bound)?;

    let mut reports = Vec::with_capacity(w as usize);
    let mut sum = LatticeSeries::zero(1, bound);
    for j in 0..w {
        let (shift, term) = spec.term_spec(j);
        let scaled = term
            .times(&multiplier)?
            .expand(bound - shift as i64)?
            .mul_monomial(crate::series::Monomial::q(shift as i64, 1))?;
        let is_zero_term = scaled.is_zero_window();
        // every exponent of the scaled term is ≡ j·y (mod w)
        let residue_class = (j * y) % w;
        let mut violations = Vec::new();
        if !is_zero_term {
            let m = w as i64;
            let r = residue as i64;
            let start = {
                // smallest exponent ≥ floor congruent to r mod m
                let f = scaled.floor_num();
                f + (r - f).rem_euclid(m)
            };
            let mut e = start;
            while e <= scaled.order_num() {
                let c = scaled.coefficient(e).expect("within window");
                if !num_traits::Zero::is_zero(&c) {
                    violations.push((e, c.to_string()));
                }
                e += m;
            }
        }
        reports.push(DissectionTermReport {
            shift,
            residue_class,
            is_zero_term,
            violations,
        });
        sum = sum.add(&scaled)?;
    }
    let agrees = raw.eq_window(&sum)?;
    Ok((reports, agrees))
}

/// One row of the remark tables: a starred fraction, the claimed
/// progression, and the dissection parameters of both orientations.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub label: String,
    pub id: CfId,
    pub modulus: u64,
    pub residue: u64,
    /// y putting the displayed (starred) product at the dissection's left side.
    pub y_displayed: u64,
    /// y doing the same for the reciprocal orientation.
    pub y_reciprocal: u64,
}

fn row(id: CfId, reciprocal_label: bool, residue: u64) -> TableRow {
    let i = u64::from(id.index);
    let (modulus, y_displayed, y_reciprocal) = match id.family {
        CfFamily::X => (17, 8 + i, 9 - i),
        CfFamily::Y => (34, 17 + 2 * i, 17 - 2 * i),
    };
    TableRow {
        label: if reciprocal_label { format!("1/{id}*") } else { format!("{id}*") },
        id,
        modulus,
        residue,
        y_displayed,
        y_reciprocal,
    }
}

/// The two standalone vanishing theorems.
pub fn theorem_claims() -> Vec<TableRow> {
    vec![
        row(CfId::new(CfFamily::X, 1).expect("valid"), false, 6),
        row(CfId::new(CfFamily::Y, 7).expect("valid"), true, 28),
    ]
}

/// The remark-table rows for one family.
pub fn table_rows(family: CfFamily) -> Vec<TableRow> {
    let id = |i: u8| CfId::new(family, i).expect("valid");
    match family {
        CfFamily::X => vec![
            row(id(2), true, 6),
            row(id(3), false, 2),
            row(id(4), true, 2),
            row(id(5), false, 11),
            row(id(6), true, 11),
            row(id(7), false, 16),
            row(id(8), true, 16),
        ],
        CfFamily::Y => vec![
            row(id(1), false, 14),
            row(id(1), true, 16),
            row(id(2), false, 7),
            row(id(2), true, 11),
            row(id(3), false, 30),
            row(id(3), true, 2),
            row(id(4), false, 15),
            row(id(4), true, 23),
            row(id(5), false, 30),
            row(id(5), true, 6),
            row(id(6), false, 7),
            row(id(6), true, 19),
            row(id(7), false, 14),
            row(id(8), false, 17),
            row(id(8), true, 33),
        ],
    }
}

/// Scan one row in both orientations, resolve empirically which one the
/// claim attaches to, and re-prove the vanishing orientation term by term
/// through the dissection when its y is odd.
pub fn verify_row(row: &TableRow, bound: i64) -> Result<TableRowReport> {
    let displayed_spec = NamedCf::new(row.id).starred_quotient();
    let displayed = VanishingClaim::new(
        row.label.clone(),
        displayed_spec.clone(),
        row.modulus,
        row.residue,
        bound,
    )?;
    let displayed_scan = scan_vanishing(&displayed)?;
    let reciprocal = VanishingClaim::new(
        format!("{} (reciprocal orientation)", row.label),
        displayed_spec.invert(),
        row.modulus,
        row.residue,
        bound,
    )?;
    let reciprocal_scan = scan_vanishing(&reciprocal)?;

    let orientation = match (displayed_scan.vanishes(), reciprocal_scan.vanishes()) {
        (true, true) => "both",
        (true, false) => "displayed",
        (false, true) => "reciprocal",
        (false, false) => "neither",
    };

    // dissection route for the orientation that vanishes
    let y = if displayed_scan.vanishes() {
        Some(row.y_displayed)
    } else if reciprocal_scan.vanishes() {
        Some(row.y_reciprocal)
    } else {
        None
    };
    let (dissection_terms, dissection_agrees) = match y {
        Some(y) if y % 2 == 1 => {
            let (terms, agrees) = per_term_vanishing(row.id.family, y, row.residue, bound)?;
            (Some(terms), Some(agrees))
        }
        _ => (None, None),
    };

    let per_term_clean = dissection_terms
        .as_ref()
        .map(|ts| ts.iter().all(|t| t.violations.is_empty()))
        .unwrap_or(true);
    let status = if orientation == "neither" || dissection_agrees == Some(false) || !per_term_clean
    {
        if orientation == "neither" {
            CheckStatus::RefutedAsPrinted
        } else {
            CheckStatus::Fail
        }
    } else {
        CheckStatus::Pass
    };

    Ok(TableRowReport {
        label: row.label.clone(),
        modulus: row.modulus,
        residue: row.residue,
        displayed_vanishes: displayed_scan.vanishes(),
        reciprocal_vanishes: reciprocal_scan.vanishes(),
        orientation: orientation.to_string(),
        displayed_first_violation: displayed_scan.violations.first().cloned(),
        reciprocal_first_violation: reciprocal_scan.violations.first().cloned(),
        dissection_terms,
        dissection_agrees,
        status,
    })
}

/// Scan every row of a family's table.
pub fn verify_table(family: CfFamily, bound: i64) -> Result<Vec<TableRowReport>> {
    table_rows(family).iter().map(|r| verify_row(r, bound)).collect()
}
