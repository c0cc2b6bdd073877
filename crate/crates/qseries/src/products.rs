//! q-Pochhammer products: formal products ∏ (q^{a/d}; q^{m/d})_∞^{±r}.
//!
//! Expansion applies one binomial factor at a time, so a whole eta-quotient
//! costs O(window · factors) big-integer operations. Factors with negative
//! exponents (they occur in the dissection right-hand sides) go through the
//! general Laurent multiply/reciprocal path instead.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::LatticeSeries;

/// One block (q^{base/d}; q^{step/d})_∞^{power} of a product spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFactor {
    /// Exponent numerator a of the first factor 1 - q^{a/d}. May be <= 0.
    pub base_num: i64,
    /// Modulus numerator m > 0.
    pub step_num: i64,
    /// Signed multiplicity; negative powers mean reciprocals.
    pub power: i32,
}

/// A formal product of q-Pochhammer blocks on a fixed lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub denom: u32,
    pub factors: Vec<ProductFactor>,
}

impl ProductSpec {
    pub fn new(denom: u32, factors: Vec<ProductFactor>) -> Self {
        ProductSpec { denom, factors }
    }

    pub fn empty(denom: u32) -> Self {
        ProductSpec { denom, factors: Vec::new() }
    }

    /// (q^{n1}, q^{n2}, ...; q^{step})_∞ / (q^{d1}, q^{d2}, ...; q^{step})_∞.
    pub fn quotient(denom: u32, num: &[i64], den: &[i64], step: i64) -> Self {
        let mut factors = Vec::with_capacity(num.len() + den.len());
        for &a in num {
            factors.push(ProductFactor { base_num: a, step_num: step, power: 1 });
        }
        for &a in den {
            factors.push(ProductFactor { base_num: a, step_num: step, power: -1 });
        }
        ProductSpec { denom, factors }
    }

    pub fn push(&mut self, base_num: i64, step_num: i64, power: i32) -> &mut Self {
        self.factors.push(ProductFactor { base_num, step_num, power });
        self
    }

    /// The spec of the reciprocal product (all powers negated).
    pub fn invert(&self) -> Self {
        ProductSpec {
            denom: self.denom,
            factors: self
                .factors
                .iter()
                .map(|f| ProductFactor { power: -f.power, ..*f })
                .collect(),
        }
    }

    /// Concatenate two specs on the same lattice.
    pub fn times(&self, other: &ProductSpec) -> Result<Self> {
        if self.denom != other.denom {
            return Err(Error::LatticeMismatch { left: self.denom, right: other.denom });
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(ProductSpec { denom: self.denom, factors })
    }

    fn validate(&self) -> Result<()> {
        for f in &self.factors {
            if f.step_num <= 0 {
                return Err(Error::InvalidSpec(format!(
                    "pochhammer modulus must be positive, got {}",
                    f.step_num
                )));
            }
        }
        Ok(())
    }

    /// Expand to a series exact through `order` (lattice units).
    pub fn expand(&self, order: i64) -> Result<LatticeSeries> {
        self.validate()?;
        let signed: Vec<SignedFactor> = self
            .factors
            .iter()
            .map(|f| SignedFactor { sign: 1, base_num: f.base_num, step_num: f.step_num, power: f.power })
            .collect();
        expand_signed(self.denom, &signed, order)
    }
}

/// Expand a product spec; the free-function spelling of [`ProductSpec::expand`].
pub fn pochhammer(spec: &ProductSpec, order: i64) -> Result<LatticeSeries> {
    spec.expand(order)
}

/// Internal generalization with a sign on the base monomial:
/// (sign·q^{base/d}; q^{step/d})_∞^{power}, i.e. factors (1 - sign·q^{(base+n·step)/d}).
/// The triple-product route and χ(q) need sign = -1.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SignedFactor {
    pub sign: i8,
    pub base_num: i64,
    pub step_num: i64,
    pub power: i32,
}

pub(crate) fn expand_signed(denom: u32, factors: &[SignedFactor], order: i64) -> Result<LatticeSeries> {
    // A factor line that reaches exponent 0 with sign +1 contributes (1 - 1) = 0.
    for f in factors {
        if f.power != 0 && f.base_num <= 0 && f.base_num.rem_euclid(f.step_num) == 0 {
            if f.sign == 1 {
                return Ok(LatticeSeries::zero(denom, order));
            }
            // (1 + q^0) = 2: a non-unit constant; reciprocals would leave Z.
            if f.power < 0 {
                return Err(Error::InvalidSpec(
                    "reciprocal of a constant-2 pochhammer factor is not integral".into(),
                ));
            }
        }
    }

    // Every negative-exponent instance is rewritten through
    //   (1 - s·q^e) = -s·q^e · (1 - s·q^{-e}),   e < 0,
    // so the whole product is (±1)·q^shift times a floor-0 power series.
    // `shift` can only be pushed down by positive powers of negative
    // instances, so order - shift_min bounds the relative window we need.
    let mut shift_min: i64 = 0;
    for f in factors {
        if f.power > 0 && f.base_num < 0 {
            let mut e = f.base_num;
            while e < 0 {
                shift_min += e * i64::from(f.power);
                e += f.step_num;
            }
        }
    }
    let span = order - shift_min;
    if span < 0 {
        return Ok(LatticeSeries::zero(denom, order));
    }

    let mut acc = vec![BigInt::zero(); span as usize + 1];
    acc[0] = BigInt::from(1);
    let mut shift: i64 = 0;
    let mut negate = false;

    for f in factors {
        if f.power == 0 {
            continue;
        }
        let mut e = f.base_num;
        while e <= span {
            if e == 0 {
                // sign -1 survives the screen above: a constant factor 2^power
                let two = BigInt::from(1) << f.power.unsigned_abs();
                for c in acc.iter_mut() {
                    *c *= &two;
                }
            } else if e < 0 {
                shift += e * i64::from(f.power);
                if f.sign == 1 && f.power % 2 != 0 {
                    negate = !negate;
                }
                apply_binomial(&mut acc, f.sign, (-e) as usize, f.power);
            } else {
                apply_binomial(&mut acc, f.sign, e as usize, f.power);
            }
            e += f.step_num;
        }
    }

    let mut series = LatticeSeries::from_coeffs(denom, shift, shift + span, acc)?;
    if negate {
        series = series.neg();
    }
    Ok(series.truncate_to(order))
}

/// In-place multiply (power>0) or divide (power<0) by (1 - sign·q^e), e > 0.
fn apply_binomial(acc: &mut [BigInt], sign: i8, e: usize, power: i32) {
    let n = acc.len();
    if e >= n {
        return; // factor invisible inside the window
    }
    for _ in 0..power.unsigned_abs() {
        if power > 0 {
            // acc *= (1 - s q^e): downward so each source is still the old value
            for i in (e..n).rev() {
                if !acc[i - e].is_zero() {
                    let t = &acc[i - e] * sign;
                    acc[i] -= t;
                }
            }
        } else {
            // acc /= (1 - s q^e): upward prefix recurrence
            for i in e..n {
                if !acc[i - e].is_zero() {
                    let t = &acc[i - e] * sign;
                    acc[i] += t;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Oracle route: expand ∏(1 - q^{a+nm}) factor by factor with plain
    /// series multiplication, no in-place tricks.
    fn poch_by_direct_mul(a: i64, m: i64, order: i64) -> LatticeSeries {
        let mut s = LatticeSeries::one(1, order);
        let mut e = a;
        while e <= order {
            s = s.mul(&LatticeSeries::one_minus(1, 1, e, order)).unwrap();
            e += m;
        }
        s.truncate_to(order)
    }

    #[test]
    fn euler_product_matches_pentagonal_prefix() {
        let spec = ProductSpec::quotient(1, &[1], &[], 1);
        let s = spec.expand(12).unwrap();
        let oracle = poch_by_direct_mul(1, 1, 12);
        assert_eq!(s, oracle);
        // 1 - q - q^2 + q^5 + q^7 - q^12
        let expect: Vec<i64> = vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1];
        for (e, want) in expect.iter().enumerate() {
            assert_eq!(s.coefficient(e as i64).unwrap(), BigInt::from(*want), "exponent {e}");
        }
    }

    #[test]
    fn zero_exponent_factor_kills_product() {
        let spec = ProductSpec::quotient(1, &[0, 3], &[], 5);
        let s = spec.expand(40).unwrap();
        assert!(s.is_zero_window());
        // also when the line only reaches 0 later: (q^{-10}; q^5) hits q^0
        let spec2 = ProductSpec::quotient(1, &[-10], &[], 5);
        assert!(spec2.expand(40).unwrap().is_zero_window());
    }

    #[test]
    fn negative_exponent_factor_keeps_laurent_floor() {
        // (q^{-34}; q^{578}) through q^600: (1 - q^{-34})(1 - q^{544})
        let spec = ProductSpec::quotient(1, &[-34], &[], 578);
        let s = spec.expand(600).unwrap();
        assert_eq!(s.floor_num(), -34);
        assert_eq!(s.coefficient(-34).unwrap(), BigInt::from(-1));
        assert_eq!(s.coefficient(0).unwrap(), BigInt::one());
        assert_eq!(s.coefficient(510).unwrap(), BigInt::one());
        assert_eq!(s.coefficient(544).unwrap(), BigInt::from(-1));
        assert_eq!(s.terms().count(), 4);
    }

    #[test]
    fn reciprocal_power_counts_partitions() {
        // 1/(q;q)_∞: partition numbers; p(30) = 5604
        let spec = ProductSpec::quotient(1, &[], &[1], 1);
        let s = spec.expand(30).unwrap();
        assert_eq!(s.coefficient(30).unwrap(), BigInt::from(5604));
        // and it is the reciprocal of the direct product
        let forward = poch_by_direct_mul(1, 1, 30);
        assert!(forward.mul(&s).unwrap().eq_window(&LatticeSeries::one(1, 30)).unwrap());
    }

    #[test]
    fn shift_simplifications_hold() {
        // (q^{m+k}; q^m)_∞ · (1 - q^k) = (q^k; q^m)_∞ for the sixteen shifts
        // used to put the continued fractions in lowest terms.
        for (m, ks) in [(34i64, (1..=8).collect::<Vec<i64>>()), (68, (1..=15).step_by(2).map(|k| k as i64).collect())] {
            for k in ks {
                let lhs = ProductSpec::quotient(1, &[m + k], &[], m)
                    .expand(300)
                    .unwrap()
                    .mul(&LatticeSeries::one_minus(1, 1, k, 300))
                    .unwrap();
                let rhs = ProductSpec::quotient(1, &[k], &[], m).expand(300).unwrap();
                assert!(lhs.eq_window(&rhs).unwrap(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn signed_factor_expands_chi_like_product() {
        // (-q; q^2)_∞ = 1 + q + q^3 + q^4 + q^5 + q^6 + q^7 + ... through q^7
        let s = expand_signed(
            1,
            &[SignedFactor { sign: -1, base_num: 1, step_num: 2, power: 1 }],
            7,
        )
        .unwrap();
        let expect = [1i64, 1, 0, 1, 1, 1, 1, 1];
        for (e, want) in expect.iter().enumerate() {
            assert_eq!(s.coefficient(e as i64).unwrap(), BigInt::from(*want), "exponent {e}");
        }
    }

    #[test]
    fn spec_json_mirrors_the_field_list() {
        let spec = ProductSpec::quotient(4, &[32, 104], &[36, 100], 136);
        let j = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            j,
            r#"{"denom":4,"factors":[{"base_num":32,"step_num":136,"power":1},{"base_num":104,"step_num":136,"power":1},{"base_num":36,"step_num":136,"power":-1},{"base_num":100,"step_num":136,"power":-1}]}"#
        );
        let back: ProductSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn quotient_against_direct_route() {
        // (q^8, q^26; q^34) / (q^9, q^25; q^34) by the fast path equals the
        // fully general mul/reciprocal route.
        let spec = ProductSpec::quotient(1, &[8, 26], &[9, 25], 34);
        let fast = spec.expand(200).unwrap();
        let num = poch_by_direct_mul(8, 34, 200).mul(&poch_by_direct_mul(26, 34, 200)).unwrap();
        let den = poch_by_direct_mul(9, 34, 200).mul(&poch_by_direct_mul(25, 34, 200)).unwrap();
        let slow = num.mul(&den.reciprocal().unwrap()).unwrap().truncate_to(200);
        assert_eq!(fast, slow);
        // spot values: 1 - q^8 + q^9 ...
        assert_eq!(fast.coefficient(8).unwrap(), BigInt::from(-1));
        assert_eq!(fast.coefficient(9).unwrap(), BigInt::one());
        assert_eq!(fast.coefficient(6).unwrap(), BigInt::zero());
    }
}
