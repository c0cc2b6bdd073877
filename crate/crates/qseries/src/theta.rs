//! Ramanujan theta functions f(a,b) with signed-monomial arguments.
//!
//! Two independent construction routes are kept side by side:
//!
//! - [`theta_sum`]: the bilateral series Σ a^{n(n+1)/2} b^{n(n-1)/2},
//!   O(√order) terms — the default;
//! - [`theta_product`]: the triple-product form
//!   (-a; ab)_∞ (-b; ab)_∞ (ab; ab)_∞ — the cross-check oracle.
//!
//! The two-variable splitting identities (the head/tail split of f(a,b)
//! and the φ/ψ pairing products) are provided as checked constructors:
//! they build every component series and report whether the identity holds
//! on the exact window.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::products::{expand_signed, SignedFactor};
use crate::series::{LatticeSeries, Monomial};

/// Arguments of f(a,b); the truncation surrogate of |ab| < 1 is
/// exponent(a) + exponent(b) > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ThetaSpec {
    pub a: Monomial,
    pub b: Monomial,
}

impl ThetaSpec {
    pub fn new(a: Monomial, b: Monomial) -> Result<Self> {
        if a.denom != b.denom {
            return Err(Error::LatticeMismatch { left: a.denom, right: b.denom });
        }
        if a.num + b.num <= 0 {
            return Err(Error::InvalidSpec(format!(
                "theta arguments need exponent(a)+exponent(b) > 0, got {}+{}",
                a.num, b.num
            )));
        }
        Ok(ThetaSpec { a, b })
    }

    pub fn denom(&self) -> u32 {
        self.a.denom
    }
}

impl std::fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f({},{})", self.a, self.b)
    }
}

fn triangular(n: i64) -> i64 {
    n * (n + 1) / 2
}

fn triangular_is_odd(n: i64) -> bool {
    matches!(n.rem_euclid(4), 1 | 2)
}

/// f(a,b) = Σ_{n∈Z} a^{n(n+1)/2} b^{n(n-1)/2}, exact through `order`.
pub fn theta_sum(spec: &ThetaSpec, order: i64) -> Result<LatticeSeries> {
    let (ea, eb) = (spec.a.num, spec.b.num);
    let s = ea + eb;
    let delta = (ea - eb).abs();
    if order < -delta {
        return Ok(LatticeSeries::zero(spec.denom(), order));
    }
    // every n with term exponent <= order satisfies |n| <= bound
    let bound = {
        let reach = order.max(0) + delta;
        let disc = ((delta * delta + 8 * s * reach) as f64).sqrt() as i64 + 2;
        (delta + disc) / (2 * s) + 2
    };
    let mut terms: Vec<(i64, i64)> = Vec::new();
    for n in -bound..=bound {
        let e = ea * triangular(n) + eb * triangular(n - 1);
        if e > order {
            continue;
        }
        let mut sign = 1i64;
        if spec.a.sign < 0 && triangular_is_odd(n) {
            sign = -sign;
        }
        if spec.b.sign < 0 && triangular_is_odd(n - 1) {
            sign = -sign;
        }
        terms.push((e, sign));
    }
    let floor = match terms.iter().map(|&(e, _)| e).min() {
        Some(f) => f,
        None => return Ok(LatticeSeries::zero(spec.denom(), order)),
    };
    let len = usize::try_from(order - floor + 1).unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); len];
    for (e, sign) in terms {
        coeffs[(e - floor) as usize] += sign;
    }
    LatticeSeries::from_coeffs(spec.denom(), floor, order, coeffs)
}

/// Factor lines of (λ; μ)_∞ = ∏ (1 - λ·μ^n) for signed monomials λ, μ.
/// A negative μ alternates the sign per factor, which splits the line into
/// two lines of double step.
fn pochhammer_lines(lambda: Monomial, step: Monomial, out: &mut Vec<SignedFactor>) {
    if step.sign > 0 {
        out.push(SignedFactor {
            sign: lambda.sign,
            base_num: lambda.num,
            step_num: step.num,
            power: 1,
        });
    } else {
        out.push(SignedFactor {
            sign: lambda.sign,
            base_num: lambda.num,
            step_num: 2 * step.num,
            power: 1,
        });
        out.push(SignedFactor {
            sign: -lambda.sign,
            base_num: lambda.num + step.num,
            step_num: 2 * step.num,
            power: 1,
        });
    }
}

/// f(a,b) = (-a; ab)_∞ (-b; ab)_∞ (ab; ab)_∞, exact through `order`.
pub fn theta_product(spec: &ThetaSpec, order: i64) -> Result<LatticeSeries> {
    let ab = spec.a.mul(spec.b)?;
    let mut factors = Vec::with_capacity(6);
    pochhammer_lines(spec.a.negate(), ab, &mut factors);
    pochhammer_lines(spec.b.negate(), ab, &mut factors);
    pochhammer_lines(ab, ab, &mut factors);
    expand_signed(spec.denom(), &factors, order)
}

/// φ(x) = f(x, x).
pub fn phi(x: Monomial, order: i64) -> Result<LatticeSeries> {
    theta_sum(&ThetaSpec::new(x, x)?, order)
}

/// ψ(x) = f(x, x³).
pub fn psi(x: Monomial, order: i64) -> Result<LatticeSeries> {
    theta_sum(&ThetaSpec::new(x, x.pow(3))?, order)
}

/// f(-x) = f(-x, -x²), the one-variable Euler product (x; x)_∞.
pub fn euler(x: Monomial, order: i64) -> Result<LatticeSeries> {
    theta_sum(&ThetaSpec::new(x.negate(), x.pow(2).negate())?, order)
}

/// χ(q^{k/d}) = (-q^{k/d}; q^{2k/d})_∞.
pub fn chi(denom: u32, exp_num: i64, order: i64) -> Result<LatticeSeries> {
    if exp_num <= 0 {
        return Err(Error::InvalidSpec("chi needs a positive exponent".into()));
    }
    expand_signed(
        denom,
        &[SignedFactor { sign: -1, base_num: exp_num, step_num: 2 * exp_num, power: 1 }],
        order,
    )
}

/// The split f(a,b) = f(a³b, ab³) + a·f(b/a, a⁵b³) with every component
/// materialized.
#[derive(Debug, Clone)]
pub struct ThetaSplit {
    /// f(a,b)
    pub whole: LatticeSeries,
    /// f(a³b, ab³)
    pub head: LatticeSeries,
    /// f(b/a, a⁵b³)
    pub tail: LatticeSeries,
    /// the monomial a scaling the tail
    pub scale: Monomial,
}

impl ThetaSplit {
    /// First exponent where whole ≠ head + a·tail, if any.
    pub fn first_mismatch(&self) -> Result<Option<(i64, BigInt, BigInt)>> {
        let rhs = self.head.add(&self.tail.mul_monomial(self.scale)?)?;
        self.whole.first_mismatch(&rhs)
    }
}

/// Build the two-variable split of f(a,b); the component theta arguments
/// must themselves satisfy the positivity precondition.
pub fn theta_split(a: Monomial, b: Monomial, order: i64) -> Result<ThetaSplit> {
    let whole = ThetaSpec::new(a, b)?;
    let head = ThetaSpec::new(a.pow(3).mul(b)?, a.mul(b.pow(3))?)?;
    let tail = ThetaSpec::new(b.div(a)?, a.pow(5).mul(b.pow(3))?)?;
    Ok(ThetaSplit {
        whole: theta_sum(&whole, order)?,
        head: theta_sum(&head, order)?,
        tail: theta_sum(&tail, order)?,
        scale: a,
    })
}

/// One verified product identity: lhs and rhs series plus their first
/// mismatch (None = identity holds on the window).
#[derive(Debug, Clone)]
pub struct CheckedIdentity {
    pub lhs: LatticeSeries,
    pub rhs: LatticeSeries,
    pub mismatch: Option<(i64, BigInt, BigInt)>,
}

impl CheckedIdentity {
    fn build(lhs: LatticeSeries, rhs: LatticeSeries) -> Result<Self> {
        let mismatch = lhs.first_mismatch(&rhs)?;
        Ok(CheckedIdentity { lhs, rhs, mismatch })
    }

    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// The three classical product pairings for f(a,b), each constructed from
/// scratch and compared on the window:
///
/// - ψ-pairing: f(a, ab²)·f(b, a²b) = f(a,b)·ψ(ab)
/// - φ-pairing: f(a,b)·f(-a,-b) = f(-a²,-b²)·φ(-ab)
/// - square:    f(a,b)² = f(a²,b²)·φ(ab) + 2a·f(b/a, a³b)·ψ(a²b²)
#[derive(Debug, Clone)]
pub struct ThetaPairings {
    pub psi_pairing: CheckedIdentity,
    pub phi_pairing: CheckedIdentity,
    pub square: CheckedIdentity,
}

impl ThetaPairings {
    pub fn all_hold(&self) -> bool {
        self.psi_pairing.holds() && self.phi_pairing.holds() && self.square.holds()
    }
}

pub fn theta_pairings(a: Monomial, b: Monomial, order: i64) -> Result<ThetaPairings> {
    let ab = a.mul(b)?;

    let psi_lhs = theta_sum(&ThetaSpec::new(a, a.mul(b.pow(2))?)?, order)?
        .mul(&theta_sum(&ThetaSpec::new(b, a.pow(2).mul(b)?)?, order)?)?;
    let psi_rhs = theta_sum(&ThetaSpec::new(a, b)?, order)?.mul(&psi(ab, order)?)?;

    let phi_lhs = theta_sum(&ThetaSpec::new(a, b)?, order)?
        .mul(&theta_sum(&ThetaSpec::new(a.negate(), b.negate())?, order)?)?;
    let phi_rhs = theta_sum(&ThetaSpec::new(a.pow(2).negate(), b.pow(2).negate())?, order)?
        .mul(&phi(ab.negate(), order)?)?;

    let f_ab = theta_sum(&ThetaSpec::new(a, b)?, order)?;
    let sq_lhs = f_ab.mul(&f_ab)?;
    let sq_first = theta_sum(&ThetaSpec::new(a.pow(2), b.pow(2))?, order)?.mul(&phi(ab, order)?)?;
    let sq_second = theta_sum(&ThetaSpec::new(b.div(a)?, a.pow(3).mul(b)?)?, order)?
        .mul(&psi(ab.pow(2), order)?)?
        .scale_i64(2)
        .mul_monomial(a)?;
    let sq_rhs = sq_first.add(&sq_second)?;

    Ok(ThetaPairings {
        psi_pairing: CheckedIdentity::build(psi_lhs, psi_rhs)?,
        phi_pairing: CheckedIdentity::build(phi_lhs, phi_rhs)?,
        square: CheckedIdentity::build(sq_lhs, sq_rhs)?,
    })
}
