//! Exact rational scalars, vectors and matrices.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere. Scalars are [`num::BigRational`],
//! which keeps values in lowest terms with a positive denominator, so
//! equality and hashing see a canonical form.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Dense rational vector.
pub type RatVector = Vec<Rat>;

/// Dense rational matrix, stored as rows.
pub type RatMatrix = Vec<RatVector>;

/// `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p / q` as a rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a comma-separated list of rationals.
pub fn parse_vector(s: &str) -> Option<RatVector> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

pub fn vector_to_string(v: &[Rat]) -> String {
    v.iter().map(rat_to_string).collect::<Vec<_>>().join(",")
}

pub fn zero_vec(n: usize) -> RatVector {
    vec![Rat::zero(); n]
}

/// Standard basis vector `e_i` in dimension `n`.
pub fn unit_vec(n: usize, i: usize) -> RatVector {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rat]) -> RatVector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(s: &Rat, a: &[Rat]) -> RatVector {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Matrix-vector product (rows of `m` against `x`).
pub fn mat_vec(m: &[RatVector], x: &[Rat]) -> RatVector {
    m.iter().map(|row| dot(row, x)).collect()
}

/// Rescales `(coeffs, rhs)` so all entries are coprime integers. The scale
/// factor is positive, so inequality direction is preserved. An all-zero row
/// is returned unchanged.
pub fn primitive_row(coeffs: &[Rat], rhs: &Rat) -> (RatVector, Rat) {
    use num::Integer;
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for r in coeffs.iter().chain(std::iter::once(rhs)) {
        if !r.is_zero() {
            denom_lcm = denom_lcm.lcm(r.denom());
            numer_gcd = numer_gcd.gcd(r.numer());
        }
    }
    if numer_gcd.is_zero() {
        return (coeffs.to_vec(), rhs.clone());
    }
    let scale = Rat::new(denom_lcm, numer_gcd).abs();
    (
        coeffs.iter().map(|c| c * &scale).collect(),
        rhs * &scale,
    )
}

/// Primitive integer representative of a direction vector, sign preserved.
pub fn primitive_vec(v: &[Rat]) -> RatVector {
    let (p, _) = primitive_row(v, &Rat::zero());
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "0", "12", "-1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert_eq!(rat_to_string(&ratio(6, 4)), "3/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn primitive_row_scales_to_coprime_integers() {
        let (c, r) = primitive_row(&[ratio(1, 2), ratio(3, 2)], &ratio(-5, 4));
        assert_eq!(c, vec![rat(2), rat(6)]);
        assert_eq!(r, ratio(-5, 1));
        let (c, r) = primitive_row(&[rat(4), rat(-8)], &rat(12));
        assert_eq!(c, vec![rat(1), rat(-2)]);
        assert_eq!(r, rat(3));
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(
            parse_vector("1,1/2, -3").unwrap(),
            vec![rat(1), ratio(1, 2), rat(-3)]
        );
        assert_eq!(parse_vector("").unwrap(), Vec::<Rat>::new());
    }
}
