//! The sixteen named q-continued fractions and their convergents.
//!
//! The general fraction has top row 1 - ab and, at level k >= 1, partial
//! numerator (a - b·Q^{2k-1})(b - a·Q^{2k-1}) over partial denominator
//! (1 - ab)(Q^{2k} + 1), where a = q^α, b = q^β and Q = q^γ is the working
//! base. A finite convergent is evaluated bottom-up as one
//! numerator/denominator pair of series with a single reciprocal at the top.
//!
//! The X family lives on the quarter lattice (γ = 17/2), the Y family on
//! the integer lattice (γ = 17). Each named fraction also carries its
//! closed product form; [`certify`] finds the smallest depth whose
//! convergent matches the product form through a requested order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::products::ProductSpec;
use crate::report::{CfCertificate, CheckStatus, Mismatch};
use crate::series::{LatticeSeries, Monomial};
use crate::theta::{theta_sum, ThetaSpec};

/// Parameters instantiating the general continued fraction: a = q^{α/d},
/// b = q^{β/d}, with the base substitution q -> q^{γ/d}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfSpec {
    pub alpha_num: i64,
    pub beta_num: i64,
    pub gamma_num: i64,
    pub denom: u32,
}

impl CfSpec {
    pub fn new(alpha_num: i64, beta_num: i64, gamma_num: i64, denom: u32) -> Result<Self> {
        if alpha_num + beta_num <= 0 {
            return Err(Error::InvalidSpec(format!(
                "continued fraction needs α+β > 0, got {alpha_num}+{beta_num}"
            )));
        }
        if gamma_num <= 0 {
            return Err(Error::InvalidSpec("base exponent γ must be positive".into()));
        }
        Ok(CfSpec { alpha_num, beta_num, gamma_num, denom })
    }

    fn level_numerator(&self, k: i64, order: i64) -> Result<LatticeSeries> {
        // (a - b Q^{2k-1})(b - a Q^{2k-1})
        let d = self.denom;
        let qpow = self.gamma_num * (2 * k - 1);
        let t1 = Monomial::q(self.alpha_num, d)
            .to_series(order)
            .sub(&Monomial::q(self.beta_num + qpow, d).to_series(order))?;
        let t2 = Monomial::q(self.beta_num, d)
            .to_series(order)
            .sub(&Monomial::q(self.alpha_num + qpow, d).to_series(order))?;
        t1.mul(&t2)
    }

    fn level_denominator(&self, k: i64, order: i64) -> Result<LatticeSeries> {
        // (1 - ab)(Q^{2k} + 1)
        let d = self.denom;
        let one_minus_ab = LatticeSeries::one_minus(d, 1, self.alpha_num + self.beta_num, order);
        let q2k = LatticeSeries::one(d, order)
            .add(&Monomial::q(self.gamma_num * 2 * k, d).to_series(order))?;
        one_minus_ab.mul(&q2k)
    }

    /// Finite convergent of the general fraction, exact through `order`.
    ///
    /// Depth 0 keeps only the top row 1/(1 - ab); depth D keeps D partial
    /// quotient levels below it.
    pub fn convergent(&self, depth: u32, order: i64) -> Result<LatticeSeries> {
        let d = self.denom;
        let one_minus_ab = LatticeSeries::one_minus(d, 1, self.alpha_num + self.beta_num, order);
        // bottom-up continuant pair: value_k = p/q
        let mut p = if depth == 0 {
            one_minus_ab.clone()
        } else {
            self.level_denominator(i64::from(depth), order)?
        };
        let mut q = LatticeSeries::one(d, order);
        for k in (0..depth).rev() {
            let b_k = if k == 0 { one_minus_ab.clone() } else { self.level_denominator(i64::from(k), order)? };
            let a_next = self.level_numerator(i64::from(k) + 1, order)?;
            let new_p = b_k.mul(&p)?.add(&a_next.mul(&q)?)?;
            q = p;
            p = new_p;
        }
        match p.leading() {
            Some(lead) if num_traits::One::is_one(lead.magnitude()) && p.floor_num() == 0 => {}
            _ => {
                return Err(Error::InvalidSpec(
                    "convergent denominator lost its unit leading term; depth and spec are inconsistent"
                        .into(),
                ))
            }
        }
        q.mul(&p.reciprocal()?)
    }
}

/// X or Y family of named fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CfFamily {
    X,
    Y,
}

impl fmt::Display for CfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfFamily::X => write!(f, "X"),
            CfFamily::Y => write!(f, "Y"),
        }
    }
}

/// Identifier X1..X8, Y1..Y8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CfId {
    pub family: CfFamily,
    pub index: u8,
}

impl CfId {
    pub fn new(family: CfFamily, index: u8) -> Result<Self> {
        if !(1..=8).contains(&index) {
            return Err(Error::InvalidSpec(format!("fraction index {index} outside 1..8")));
        }
        Ok(CfId { family, index })
    }

    pub fn all() -> Vec<CfId> {
        let mut v = Vec::with_capacity(16);
        for family in [CfFamily::X, CfFamily::Y] {
            for index in 1..=8 {
                v.push(CfId { family, index });
            }
        }
        v
    }
}

impl fmt::Display for CfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

impl FromStr for CfId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let family = match s.chars().next() {
            Some('X') | Some('x') => CfFamily::X,
            Some('Y') | Some('y') => CfFamily::Y,
            _ => return Err(Error::InvalidSpec(format!("unknown fraction id {s:?}"))),
        };
        let index: u8 = s[1..]
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("unknown fraction id {s:?}")))?;
        CfId::new(family, index)
    }
}

impl Serialize for CfId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CfId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// A named fraction: its product form, prefactor, reduction factor and
/// general-fraction parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedCf {
    pub id: CfId,
    /// Numerator exponents of the product form (base `modulus`).
    pub product_num: ProductSpec,
    /// Denominator kept as its own spec so both orientations stay available.
    pub product_den: ProductSpec,
    /// q^{(2i-1)/4} for X_i, q^i for Y_i.
    pub prefactor: Monomial,
    /// Exponent s of the reduction factor (1 - q^s) connecting the general
    /// fraction to the lowest-terms product.
    pub shift_exp: i64,
    pub cf: CfSpec,
}

impl NamedCf {
    pub fn new(id: CfId) -> Self {
        let i = i64::from(id.index);
        match id.family {
            CfFamily::X => {
                // lattice d = 4; modulus 34 i.e. 136 units
                let (n1, n2) = (4 * (9 - i), 4 * (25 + i));
                let (d1, d2) = (4 * (8 + i), 4 * (26 - i));
                NamedCf {
                    id,
                    product_num: ProductSpec::quotient(4, &[n1, n2], &[], 136),
                    product_den: ProductSpec::quotient(4, &[d1, d2], &[], 136),
                    prefactor: Monomial::q(2 * i - 1, 4),
                    shift_exp: 4 * (9 - i),
                    cf: CfSpec::new(2 * i - 1, 35 - 2 * i, 34, 4).expect("valid by construction"),
                }
            }
            CfFamily::Y => {
                let (n1, n2) = (17 - 2 * i, 51 + 2 * i);
                let (d1, d2) = (17 + 2 * i, 51 - 2 * i);
                NamedCf {
                    id,
                    product_num: ProductSpec::quotient(1, &[n1, n2], &[], 68),
                    product_den: ProductSpec::quotient(1, &[d1, d2], &[], 68),
                    prefactor: Monomial::q(i, 1),
                    shift_exp: 17 - 2 * i,
                    cf: CfSpec::new(i, 17 - i, 17, 1).expect("valid by construction"),
                }
            }
        }
    }

    pub fn denom(&self) -> u32 {
        self.cf.denom
    }

    /// The prefactor-free product quotient ("starred" series), integer
    /// exponents; d = 1 regardless of family.
    pub fn starred_quotient(&self) -> ProductSpec {
        let scale = i64::from(self.denom());
        let num: Vec<i64> = self.product_num.factors.iter().map(|f| f.base_num / scale).collect();
        let den: Vec<i64> = self.product_den.factors.iter().map(|f| f.base_num / scale).collect();
        let step = self.product_num.factors[0].step_num / scale;
        ProductSpec::quotient(1, &num, &den, step)
    }

    /// Starred series X_i*(q) or Y_i*(q) through `order` (d = 1).
    pub fn starred_series(&self, order: i64) -> Result<LatticeSeries> {
        self.starred_quotient().expand(order)
    }

    /// Closed product form with the prefactor, on the family lattice.
    pub fn product_series(&self, order: i64) -> Result<LatticeSeries> {
        let quotient = self
            .product_num
            .times(&self.product_den.invert())?
            .expand(order - self.prefactor.num)?;
        quotient.mul_monomial(self.prefactor)
    }

    /// Same value through the theta quotient f(-q^{n1},-q^{n2})/f(-q^{d1},-q^{d2}).
    pub fn theta_series(&self, order: i64) -> Result<LatticeSeries> {
        let d = self.denom();
        let num = &self.product_num.factors;
        let den = &self.product_den.factors;
        let f_num = theta_sum(
            &ThetaSpec::new(
                Monomial::neg_q(num[0].base_num, d),
                Monomial::neg_q(num[1].base_num, d),
            )?,
            order - self.prefactor.num,
        )?;
        let f_den = theta_sum(
            &ThetaSpec::new(
                Monomial::neg_q(den[0].base_num, d),
                Monomial::neg_q(den[1].base_num, d),
            )?,
            order - self.prefactor.num,
        )?;
        f_num.mul(&f_den.reciprocal()?)?.mul_monomial(self.prefactor)
    }

    /// Convergent of the displayed continued fraction: prefactor times
    /// reduction factor times the general-fraction convergent.
    pub fn convergent_series(&self, depth: u32, order: i64) -> Result<LatticeSeries> {
        let body_order = order - self.prefactor.num;
        let conv = self.cf.convergent(depth, body_order)?;
        let shift = LatticeSeries::one_minus(self.denom(), 1, self.shift_exp, body_order);
        shift.mul(&conv)?.mul_monomial(self.prefactor)
    }

    /// Largest exponent (lattice units) through which the depth-`depth`
    /// convergent agrees with the product form, capped at `order`.
    pub fn agreement_order(&self, depth: u32, order: i64) -> Result<i64> {
        let product = self.product_series(order)?;
        let convergent = self.convergent_series(depth, order)?;
        Ok(match product.first_mismatch(&convergent)? {
            None => product.order_num().min(convergent.order_num()),
            Some((e, _, _)) => e - 1,
        })
    }
}

/// Find the smallest depth (<= max_depth) whose convergent matches the
/// product form through `order` lattice units.
pub fn certify(id: CfId, order: i64, max_depth: u32) -> CfCertificate {
    let named = NamedCf::new(id);
    let product = match named.product_series(order) {
        Ok(s) => s,
        Err(e) => return CfCertificate::error(id, order, e.to_string()),
    };
    let mut last_mismatch: Option<Mismatch> = None;
    for depth in 0..=max_depth {
        match named.convergent_series(depth, order) {
            Ok(conv) => match product.first_mismatch(&conv) {
                Ok(None) => {
                    return CfCertificate {
                        id: id.to_string(),
                        denom: named.denom(),
                        order,
                        depth: Some(depth),
                        status: CheckStatus::Pass,
                        first_mismatch: None,
                        note: None,
                    }
                }
                Ok(Some((e, lhs, rhs))) => {
                    last_mismatch = Some(Mismatch {
                        exp_num: e,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
                Err(e) => return CfCertificate::error(id, order, e.to_string()),
            },
            Err(e) => return CfCertificate::error(id, order, e.to_string()),
        }
    }
    CfCertificate {
        id: id.to_string(),
        denom: named.denom(),
        order,
        depth: None,
        status: CheckStatus::Fail,
        first_mismatch: last_mismatch,
        note: Some(format!("no agreement within depth {max_depth}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    #[test]
    fn depth_zero_is_geometric() {
        // 1/(1-ab) = 1 + q^{α+β} + q^{2(α+β)} + ...
        let spec = CfSpec::new(1, 16, 17, 1).unwrap();
        let s = spec.convergent(0, 60).unwrap();
        for e in 0..=60 {
            let want = if e % 17 == 0 { BigInt::one() } else { BigInt::zero() };
            assert_eq!(s.coefficient(e).unwrap(), want, "exponent {e}");
        }
    }

    #[test]
    fn x1_agreement_grows_linearly_with_depth() {
        let named = NamedCf::new("X1".parse().unwrap());
        // one base step (γ = 34 quarter-units) of extra agreement per level
        for (depth, expect) in [(0u32, 34i64), (1, 68), (2, 102), (3, 136)] {
            let got = named.agreement_order(depth, 200).unwrap();
            assert_eq!(got, expect, "depth {depth}");
        }
    }

    #[test]
    fn stabilization_is_monotone_for_all_ids() {
        for id in CfId::all() {
            let named = NamedCf::new(id);
            let cap = 40 * i64::from(named.denom());
            let mut last = -1;
            for depth in 0..4 {
                let a = named.agreement_order(depth, cap).unwrap();
                assert!(a >= last, "{id} depth {depth}: {a} < {last}");
                last = a;
            }
            assert!(last >= cap.min(35), "{id} never stabilized: {last}");
        }
    }

    #[test]
    fn leading_term_is_the_prefactor() {
        for id in CfId::all() {
            let named = NamedCf::new(id);
            let order = 12 * i64::from(named.denom());
            let p = named.product_series(order).unwrap();
            assert_eq!(p.floor_num(), named.prefactor.num, "{id}");
            assert_eq!(p.leading().unwrap(), &BigInt::one(), "{id}");
            let c = named.convergent_series(2, order).unwrap();
            assert_eq!(c.floor_num(), named.prefactor.num, "{id}");
        }
    }

    #[test]
    fn parameters_match_the_derivation_table() {
        // X_i: a = q^{(2i-1)/4}, b = q^{(35-2i)/4}, base q^{17/2};
        // Y_i: a = q^i, b = q^{17-i}, base q^17.
        for i in 1u8..=8 {
            let x = NamedCf::new(CfId::new(CfFamily::X, i).unwrap());
            assert_eq!(
                (x.cf.alpha_num, x.cf.beta_num, x.cf.gamma_num, x.cf.denom),
                (2 * i64::from(i) - 1, 35 - 2 * i64::from(i), 34, 4)
            );
            assert_eq!(x.shift_exp, 4 * (9 - i64::from(i)));
            let y = NamedCf::new(CfId::new(CfFamily::Y, i).unwrap());
            assert_eq!(
                (y.cf.alpha_num, y.cf.beta_num, y.cf.gamma_num, y.cf.denom),
                (i64::from(i), 17 - i64::from(i), 17, 1)
            );
            assert_eq!(y.shift_exp, 17 - 2 * i64::from(i));
        }
    }

    #[test]
    fn x1_starred_prefix() {
        let named = NamedCf::new("X1".parse().unwrap());
        let s = named.starred_series(10).unwrap();
        // 1 - q^8 + q^9 + ...
        assert_eq!(s.coefficient(0).unwrap(), BigInt::one());
        assert_eq!(s.coefficient(6).unwrap(), BigInt::zero());
        assert_eq!(s.coefficient(8).unwrap(), BigInt::from(-1));
        assert_eq!(s.coefficient(9).unwrap(), BigInt::one());
    }

    #[test]
    fn y8_starred_prefix() {
        let named = NamedCf::new("Y8".parse().unwrap());
        let s = named.starred_series(39).unwrap();
        let mut expect = vec![0i64; 40];
        expect[0] = 1;
        expect[1] = -1;
        expect[33] = 1;
        expect[34] = -1;
        expect[35] = 1;
        expect[36] = -1;
        for (e, want) in expect.iter().enumerate() {
            assert_eq!(s.coefficient(e as i64).unwrap(), BigInt::from(*want), "exponent {e}");
        }
    }

    #[test]
    fn theta_route_equals_product_route() {
        for id in ["X1", "Y8", "X5", "Y3"] {
            let named = NamedCf::new(id.parse().unwrap());
            let order = 40 * i64::from(named.denom());
            let a = named.product_series(order).unwrap();
            let b = named.theta_series(order).unwrap();
            assert!(a.eq_window(&b).unwrap(), "{id}");
        }
    }

    #[test]
    fn y8_certificate_at_order_120() {
        let cert = certify("Y8".parse().unwrap(), 120, 20);
        assert_eq!(cert.status, CheckStatus::Pass);
        assert!(cert.depth.unwrap() <= 8, "depth {:?}", cert.depth);
    }

    #[test]
    fn corrupted_spec_fails_early() {
        // β off by one: convergents drift from the X1 product form well
        // inside the window (the first corrupted level partly cancels the
        // corrupted top row, so the drift surfaces at unit 101, not 36)
        let named = NamedCf::new("X1".parse().unwrap());
        let mut bad = named.clone();
        bad.cf = CfSpec::new(1, 34, 34, 4).unwrap();
        let product = named.product_series(160).unwrap();
        for depth in 4..8 {
            let conv = bad.convergent_series(depth, 160).unwrap();
            let (e, _, _) = product.first_mismatch(&conv).unwrap().expect("must mismatch");
            assert_eq!(e, 101, "depth {depth}");
        }
    }

    #[test]
    fn id_round_trip() {
        for id in CfId::all() {
            let s = id.to_string();
            let back: CfId = s.parse().unwrap();
            assert_eq!(back, id);
        }
        assert!("Z3".parse::<CfId>().is_err());
        assert!("X9".parse::<CfId>().is_err());
    }
}
