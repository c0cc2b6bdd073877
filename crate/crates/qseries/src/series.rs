//! Truncated Laurent series over arbitrary-precision integers on the
//! exponent lattice (1/d)·Z.
//!
//! A [`LatticeSeries`] stores exact coefficients for every exponent e/d with
//! `floor <= e <= order` (e in lattice units). Everything below `floor` is
//! exactly zero; everything above `order` is unknown. Arithmetic propagates
//! `order` pessimistically, so a coefficient is never silently fabricated
//! beyond the window an operation can actually guarantee.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A signed monomial c·q^{num/denom} with c = ±1.
///
/// These are the only theta-function arguments the workbench needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    /// +1 or -1.
    pub sign: i8,
    /// Exponent numerator, in lattice units.
    pub num: i64,
    /// Lattice denominator d.
    pub denom: u32,
}

impl Monomial {
    pub fn new(sign: i8, num: i64, denom: u32) -> Self {
        assert!(sign == 1 || sign == -1, "monomial sign must be ±1");
        assert!(denom >= 1);
        Monomial { sign, num, denom }
    }

    /// +q^{num/denom}
    pub fn q(num: i64, denom: u32) -> Self {
        Self::new(1, num, denom)
    }

    /// -q^{num/denom}
    pub fn neg_q(num: i64, denom: u32) -> Self {
        Self::new(-1, num, denom)
    }

    pub fn negate(self) -> Self {
        Monomial { sign: -self.sign, ..self }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Result<Monomial> {
        if self.denom != other.denom {
            return Err(Error::LatticeMismatch { left: self.denom, right: other.denom });
        }
        Ok(Monomial::new(self.sign * other.sign, self.num + other.num, self.denom))
    }

    /// self / other (exponents subtract, signs multiply).
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Monomial) -> Result<Monomial> {
        if self.denom != other.denom {
            return Err(Error::LatticeMismatch { left: self.denom, right: other.denom });
        }
        Ok(Monomial::new(self.sign * other.sign, self.num - other.num, self.denom))
    }

    pub fn pow(self, k: u32) -> Monomial {
        let sign = if self.sign == -1 && k % 2 == 1 { -1 } else { 1 };
        Monomial::new(sign, self.num * i64::from(k), self.denom)
    }

    /// The monomial as a series exact through `order`.
    pub fn to_series(self, order: i64) -> LatticeSeries {
        let c = BigInt::from(self.sign);
        LatticeSeries::monomial(self.denom, c, self.num, order)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", fmt_power(self.num, self.denom))
    }
}

/// Render q^{num/denom} with the fraction reduced; q^0 becomes "1".
pub(crate) fn fmt_power(num: i64, denom: u32) -> String {
    if num == 0 {
        return "1".to_string();
    }
    let d = i64::from(denom);
    let g = num.abs().gcd(&d);
    let (n, m) = (num / g, d / g);
    if m == 1 {
        if n == 1 {
            "q".to_string()
        } else {
            format!("q^{n}")
        }
    } else {
        format!("q^({n}/{m})")
    }
}

/// Truncated Laurent series over Z on the lattice (1/denom)·Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSeries {
    denom: u32,
    /// Lowest exponent with a (possibly) nonzero coefficient, lattice units.
    floor: i64,
    /// Exact through this exponent (lattice units); unknown beyond.
    order: i64,
    /// coeffs[i] is the coefficient of q^{(floor+i)/denom}; len == order-floor+1.
    coeffs: Vec<BigInt>,
}

impl LatticeSeries {
    /// The zero series, known exactly through `order`.
    pub fn zero(denom: u32, order: i64) -> Self {
        assert!(denom >= 1);
        LatticeSeries { denom, floor: order + 1, order, coeffs: Vec::new() }
    }

    /// The constant series `c`, exact through `order`.
    pub fn constant(denom: u32, c: BigInt, order: i64) -> Self {
        Self::monomial(denom, c, 0, order)
    }

    /// The constant series 1.
    pub fn one(denom: u32, order: i64) -> Self {
        Self::constant(denom, BigInt::one(), order)
    }

    /// c·q^{exp/denom}, exact through `order`.
    pub fn monomial(denom: u32, c: BigInt, exp: i64, order: i64) -> Self {
        assert!(denom >= 1);
        if c.is_zero() || exp > order {
            return Self::zero(denom, order);
        }
        let len = usize::try_from(order - exp + 1).expect("window fits in memory");
        let mut coeffs = vec![BigInt::zero(); len];
        coeffs[0] = c;
        LatticeSeries { denom, floor: exp, order, coeffs }
    }

    /// 1 - sign·q^{exp/denom}, exact through `order` (a plain polynomial).
    pub fn one_minus(denom: u32, sign: i8, exp: i64, order: i64) -> Self {
        let one = Self::one(denom, order);
        let m = Self::monomial(denom, BigInt::from(sign), exp, order);
        one.sub(&m).expect("same lattice")
    }

    /// Build from an explicit dense window.
    pub fn from_coeffs(denom: u32, floor: i64, order: i64, coeffs: Vec<BigInt>) -> Result<Self> {
        if denom < 1 {
            return Err(Error::InvalidSpec("lattice denominator must be >= 1".into()));
        }
        if order < floor - 1 {
            return Err(Error::InvalidSpec(format!(
                "order {order} below floor-1 ({})",
                floor - 1
            )));
        }
        let expect = usize::try_from(order - floor + 1).unwrap_or(usize::MAX);
        if coeffs.len() != expect {
            return Err(Error::InvalidSpec(format!(
                "coefficient window has {} entries, expected {expect}",
                coeffs.len()
            )));
        }
        let mut s = LatticeSeries { denom, floor, order, coeffs };
        s.normalize();
        Ok(s)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) if k > 0 => {
                self.coeffs.drain(..k);
                self.floor += k as i64;
            }
            Some(_) => {}
            None => {
                self.coeffs.clear();
                self.floor = self.order + 1;
            }
        }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Lowest exponent (lattice units). For a zero window this is order+1.
    pub fn floor_num(&self) -> i64 {
        self.floor
    }

    /// Largest exponent (lattice units) with an exactly known coefficient.
    pub fn order_num(&self) -> i64 {
        self.order
    }

    /// True when every known coefficient is zero.
    pub fn is_zero_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, if the window is nonzero.
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Exact coefficient of q^{exp/denom}. Exponents below the floor are
    /// genuinely zero; exponents beyond the order are an error, never a
    /// default zero.
    pub fn coefficient(&self, exp: i64) -> Result<BigInt> {
        if exp > self.order {
            return Err(Error::CoefficientBeyondOrder {
                requested: exp,
                order: self.order,
                denom: self.denom,
            });
        }
        if exp < self.floor {
            return Ok(BigInt::zero());
        }
        Ok(self.coeffs[(exp - self.floor) as usize].clone())
    }

    /// Known terms as (exponent, coefficient) pairs, zeros skipped.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        let floor = self.floor;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (floor + i as i64, c))
    }

    fn check_lattice(&self, other: &Self) -> Result<()> {
        if self.denom != other.denom {
            return Err(Error::LatticeMismatch { left: self.denom, right: other.denom });
        }
        Ok(())
    }

    /// Coefficient-wise sum; the result is exact through min(orders).
    #[allow(clippy::should_implement_trait)] // checked arithmetic carries lattice errors
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_lattice(other)?;
        let order = self.order.min(other.order);
        let floor = self.floor.min(other.floor).min(order + 1);
        let len = usize::try_from(order - floor + 1).unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); len];
        for src in [self, other] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let e = src.floor + i as i64;
                if e > order {
                    break;
                }
                coeffs[(e - floor) as usize] += c;
            }
        }
        Self::from_coeffs(self.denom, floor, order, coeffs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LatticeSeries {
            denom: self.denom,
            floor: self.floor,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Scale every coefficient by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.denom, self.order);
        }
        LatticeSeries {
            denom: self.denom,
            floor: self.floor,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Cauchy product. Exact through min(a.order + b.floor, b.order + a.floor):
    /// the unknown tail of one factor first pollutes the product at its own
    /// order plus the other factor's floor.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_lattice(other)?;
        let order = (self.order + other.floor).min(other.order + self.floor);
        if self.is_zero_window() || other.is_zero_window() {
            return Ok(Self::zero(self.denom, order));
        }
        let floor = self.floor + other.floor;
        if order < floor {
            return Ok(Self::zero(self.denom, order));
        }
        let len = (order - floor + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.floor + i as i64;
            let jmax = (order - ea - other.floor).min(other.coeffs.len() as i64 - 1);
            for j in 0..=jmax {
                let b = &other.coeffs[j as usize];
                if b.is_zero() {
                    continue;
                }
                coeffs[(ea + other.floor + j - floor) as usize] += a * b;
            }
        }
        Self::from_coeffs(self.denom, floor, order, coeffs)
    }

    /// Multiply by ±q^{e/d} exactly (shifts the whole window; no truncation).
    pub fn mul_monomial(&self, m: Monomial) -> Result<Self> {
        if m.denom != self.denom {
            return Err(Error::LatticeMismatch { left: self.denom, right: m.denom });
        }
        let mut s = if m.sign < 0 { self.neg() } else { self.clone() };
        s.floor += m.num;
        s.order += m.num;
        Ok(s)
    }

    /// Multiplicative inverse. Requires a ±1 leading coefficient so the
    /// result stays over the integers; the reciprocal of c·q^f·(1 + t) has
    /// floor -f and is exact through order - 2·floor.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero_window() {
            return Err(Error::ZeroReciprocal);
        }
        let lead = &self.coeffs[0];
        if !(lead.magnitude().is_one()) {
            return Err(Error::NonUnitLeading { leading: lead.to_string() });
        }
        let rel = (self.order - self.floor) as usize;
        let mut inv = vec![BigInt::zero(); rel + 1];
        inv[0] = lead.clone(); // 1/±1 = ±1
        for n in 1..=rel {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                acc += a * &inv[n - k];
            }
            // lead is ±1, so division is a sign flip
            inv[n] = -acc * lead;
        }
        Self::from_coeffs(self.denom, -self.floor, self.order - 2 * self.floor, inv)
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, n: u32) -> Result<Self> {
        if n == 0 {
            // exact window of x^0 matches what repeated multiplication yields
            return Ok(Self::one(self.denom, self.order - self.floor));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.expect("n > 0"))
    }

    /// q -> q^k (and optionally q -> -q first). Exponents scale by k; the
    /// gaps between scaled exponents are exactly zero, so the order extends
    /// to k·order + k - 1. Negation multiplies the coefficient at integer
    /// exponent e by (-1)^e and requires every exponent to be an integer.
    pub fn substitute(&self, k: i64, negate: bool) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidSpec(format!("substitution power {k} must be >= 1")));
        }
        let d = i64::from(self.denom);
        if negate {
            let fractional = self
                .terms()
                .any(|(e, _)| e.rem_euclid(d) != 0);
            if fractional {
                return Err(Error::FractionalNegate { denom: self.denom });
            }
        }
        let order = k * self.order + (k - 1);
        if self.is_zero_window() {
            return Ok(Self::zero(self.denom, order));
        }
        let floor = k * self.floor;
        let len = (order - floor + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.floor + i as i64;
            let idx = (k * e - floor) as usize;
            if negate && (e / d).rem_euclid(2) == 1 {
                coeffs[idx] = -c;
            } else {
                coeffs[idx] = c.clone();
            }
        }
        Self::from_coeffs(self.denom, floor, order, coeffs)
    }

    /// Re-express on a finer lattice (new_denom a multiple of denom).
    pub fn rescale_lattice(&self, new_denom: u32) -> Result<Self> {
        if !new_denom.is_multiple_of(self.denom) {
            return Err(Error::LatticeMismatch { left: self.denom, right: new_denom });
        }
        let k = i64::from(new_denom / self.denom);
        if k == 1 {
            return Ok(self.clone());
        }
        let mut s = self.substitute(k, false)?;
        s.denom = new_denom;
        Ok(s)
    }

    /// Drop exactness above `order` (used to emit canonical windows).
    pub fn truncate_to(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut s = self.clone();
        s.order = order;
        let keep = (order - s.floor + 1).max(0) as usize;
        s.coeffs.truncate(keep);
        s.normalize();
        s
    }

    /// First exponent (from min floor through min order) where the two
    /// series differ, with both coefficients.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<(i64, BigInt, BigInt)>> {
        self.check_lattice(other)?;
        let order = self.order.min(other.order);
        let floor = self.floor.min(other.floor);
        for e in floor..=order {
            let a = self.coefficient(e)?;
            let b = other.coefficient(e)?;
            if a != b {
                return Ok(Some((e, a, b)));
            }
        }
        Ok(None)
    }

    /// Exact equality on the common window.
    pub fn eq_window(&self, other: &Self) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }
}

impl fmt::Display for LatticeSeries {
    /// A short human-readable prefix of the series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_window() {
            return write!(f, "0 + O({})", fmt_power(self.order + 1, self.denom));
        }
        let total = self.terms().count();
        for (shown, (e, c)) in self.terms().take(12).enumerate() {
            let mag = c.magnitude();
            let neg = c.is_negative();
            if shown == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let p = fmt_power(e, self.denom);
            if mag.is_one() && e != 0 {
                write!(f, "{p}")?;
            } else if e == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}·{p}")?;
            }
        }
        if total > 12 {
            write!(f, " + ...")?;
        }
        write!(f, " + O({})", fmt_power(self.order + 1, self.denom))
    }
}

/// Canonical JSON form: coefficients as decimal strings because they exceed
/// native integer widths.
#[derive(Serialize, Deserialize)]
struct SeriesJson {
    denom: u32,
    floor: i64,
    order: i64,
    coeffs: Vec<String>,
}

impl Serialize for LatticeSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            denom: self.denom,
            floor: self.floor,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticeSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        LatticeSeries::from_coeffs(raw.denom, raw.floor, raw.order, coeffs)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(denom: u32, floor: i64, order: i64, cs: &[i64]) -> LatticeSeries {
        LatticeSeries::from_coeffs(denom, floor, order, cs.iter().map(|&c| BigInt::from(c)).collect())
            .unwrap()
    }

    #[test]
    fn add_cancels_constants() {
        // (1 + q) + (-1 + q^2) = q + q^2
        let a = poly(1, 0, 4, &[1, 1, 0, 0, 0]);
        let b = poly(1, 0, 4, &[-1, 0, 1, 0, 0]);
        let s = a.add(&b).unwrap();
        assert_eq!(s, poly(1, 1, 4, &[1, 1, 0, 0]));
        assert_eq!(s.floor_num(), 1);
    }

    #[test]
    fn add_zero_is_identity() {
        let a = poly(1, 0, 6, &[1, -1, 0, 0, 0, 1, 1]);
        let z = LatticeSeries::zero(1, 6);
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn add_theta_prefixes() {
        // (1 + 2q + 2q^4) + (1 + q + q^3) = 2 + 3q + q^3 + 2q^4 through q^4
        let phi = poly(1, 0, 4, &[1, 2, 0, 0, 2]);
        let psi = poly(1, 0, 4, &[1, 1, 0, 1, 0]);
        assert_eq!(phi.add(&psi).unwrap(), poly(1, 0, 4, &[2, 3, 0, 1, 2]));
    }

    #[test]
    fn mul_telescopes() {
        let n = 20;
        let a = poly(1, 0, n, &{
            let mut v = vec![0i64; (n + 1) as usize];
            v[0] = 1;
            v[1] = -1;
            v
        });
        let geo = LatticeSeries::from_coeffs(1, 0, n, vec![BigInt::one(); (n + 1) as usize]).unwrap();
        let prod = a.mul(&geo).unwrap();
        assert!(prod.eq_window(&LatticeSeries::one(1, n)).unwrap());
    }

    #[test]
    fn mul_on_quarter_lattice() {
        // q^{1/4} · q^{1/4} = q^{1/2} on d=4
        let m = LatticeSeries::monomial(4, BigInt::one(), 1, 40);
        let p = m.mul(&m).unwrap();
        assert_eq!(p.floor_num(), 2);
        assert_eq!(p.coefficient(2).unwrap(), BigInt::one());
    }

    #[test]
    fn mul_two_binomials() {
        // (1-q^8)(1-q^9) = 1 - q^8 - q^9 + q^17
        let a = LatticeSeries::one_minus(1, 1, 8, 17);
        let b = LatticeSeries::one_minus(1, 1, 9, 17);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, poly(1, 0, 17, &[1, 0, 0, 0, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn mul_order_tracking() {
        // order = min(a.order + b.floor, b.order + a.floor) = min(5-1, 7+2)
        let a = poly(1, 2, 5, &[1, 1, 0, 1]);
        let b = poly(1, -1, 7, &[1, 0, 1, 0, 0, 0, 0, 1, 1]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.order_num(), 4);
        assert_eq!(p.floor_num(), 1);
    }

    #[test]
    fn reciprocal_geometric() {
        let s = LatticeSeries::one_minus(1, 1, 1, 5);
        let r = s.reciprocal().unwrap();
        assert_eq!(r, poly(1, 0, 5, &[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn reciprocal_of_shifted_unit() {
        // 1 / (q^{1/4}(1+q)) = q^{-1/4}(1 - q + q^2 - ...)
        let s = LatticeSeries::from_coeffs(
            4,
            1,
            13,
            vec![
                BigInt::one(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::one(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
            ],
        )
        .unwrap();
        let r = s.reciprocal().unwrap();
        assert_eq!(r.floor_num(), -1);
        assert_eq!(r.coefficient(-1).unwrap(), BigInt::one());
        assert_eq!(r.coefficient(3).unwrap(), BigInt::from(-1));
        assert_eq!(r.coefficient(7).unwrap(), BigInt::one());
        let back = s.mul(&r).unwrap();
        assert!(back.eq_window(&LatticeSeries::one(4, back.order_num())).unwrap());
    }

    #[test]
    fn reciprocal_rejects_zero_and_nonunit() {
        assert_eq!(LatticeSeries::zero(1, 5).reciprocal(), Err(Error::ZeroReciprocal));
        let two = LatticeSeries::constant(1, BigInt::from(2), 5);
        assert!(matches!(two.reciprocal(), Err(Error::NonUnitLeading { .. })));
    }

    #[test]
    fn substitute_scales_exponents() {
        let s = poly(1, 0, 3, &[1, 1, 0, 1]);
        let t = s.substitute(2, false).unwrap();
        assert_eq!(t, poly(1, 0, 7, &[1, 0, 1, 0, 0, 0, 1, 0]));
    }

    #[test]
    fn substitute_negates_odd_exponents() {
        let s = poly(1, 0, 3, &[1, 1, 0, 1]);
        let t = s.substitute(1, true).unwrap();
        assert_eq!(t, poly(1, 0, 3, &[1, -1, 0, -1]));
    }

    #[test]
    fn negate_rejects_fractional_exponents() {
        let s = LatticeSeries::monomial(4, BigInt::one(), 1, 8);
        assert_eq!(s.substitute(1, true), Err(Error::FractionalNegate { denom: 4 }));
        // exponents that are integer multiples of d are fine even when d > 1
        let t = LatticeSeries::monomial(4, BigInt::one(), 8, 16);
        assert!(t.substitute(1, true).is_ok());
    }

    #[test]
    fn coefficient_respects_window() {
        let s = poly(1, 2, 6, &[3, 0, 0, 0, -1]);
        assert_eq!(s.coefficient(0).unwrap(), BigInt::zero()); // below floor
        assert_eq!(s.coefficient(2).unwrap(), BigInt::from(3));
        assert!(matches!(s.coefficient(7), Err(Error::CoefficientBeyondOrder { .. })));
    }

    #[test]
    fn json_round_trip_and_shape() {
        let s = poly(4, -2, 3, &[-1, 0, 7, 1, 0, 2]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"denom":4,"floor":-2,"order":3,"coeffs":["-1","0","7","1","0","2"]}"#);
        let t: LatticeSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn rescale_onto_finer_lattice() {
        // 1 - q + q^3 on d=1 becomes the same series in quarter units
        let s = poly(1, 0, 3, &[1, -1, 0, 1]);
        let t = s.rescale_lattice(4).unwrap();
        assert_eq!(t.denom(), 4);
        assert_eq!(t.coefficient(4).unwrap(), BigInt::from(-1));
        assert_eq!(t.coefficient(12).unwrap(), BigInt::one());
        assert_eq!(t.coefficient(5).unwrap(), BigInt::zero());
        assert!(t.order_num() >= 12);
        // d=4 cannot be re-expressed on d=1
        assert!(t.rescale_lattice(1).is_err());
    }

    #[test]
    fn lattice_mismatch_is_rejected() {
        let a = LatticeSeries::one(1, 5);
        let b = LatticeSeries::one(4, 5);
        assert!(matches!(a.add(&b), Err(Error::LatticeMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::LatticeMismatch { .. })));
    }
}
