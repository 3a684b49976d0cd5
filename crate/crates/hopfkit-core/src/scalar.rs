//! Exact scalars over the rationals Q or a prime field GF(p).
//!
//! Every operation is exact; there is no floating point anywhere in the
//! engine. Rationals are kept in lowest terms with positive denominator,
//! GF(p) residues in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base field descriptor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "GF")]
    GF { p: u64 },
}

impl Field {
    pub fn validate(&self) -> Result<()> {
        match self {
            Field::Q => Ok(()),
            Field::GF { p } => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::Input(format!("GF modulus {p} is not prime")))
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::GF { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::GF { p } => Scalar::Fp { r: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::GF { p } => Scalar::Fp { r: 1, p: *p },
        }
    }

    pub fn int(&self, v: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::GF { p } => {
                let p = *p;
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Fp { r, p }
            }
        }
    }

    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Q => Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Field::GF { .. } => {
                let d = self.int(den);
                self.int(num).mul(&d.inv())
            }
        }
    }

    /// Parse the canonical string form: `"a/b"` or `"a"` over Q, a decimal
    /// residue over GF(p).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Q => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::Input(format!("bad rational numerator {num:?}")))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| Error::Input(format!("bad rational denominator {den:?}")))?;
                if d.is_zero() {
                    return Err(Error::Input(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::GF { p } => {
                let r: i64 = s
                    .parse()
                    .map_err(|_| Error::Input(format!("bad GF({p}) residue {s:?}")))?;
                Ok(Scalar::Fp {
                    r: r.rem_euclid(*p as i64) as u64,
                    p: *p,
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::GF { p } => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. Arithmetic between scalars of different fields is
/// a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { r: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::GF { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { r, .. } => *r == 1,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Fp {
                    r: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { r, p } => Scalar::Fp {
                r: if *r == 0 { 0 } else { p - r },
                p: *p,
            },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Fp {
                    r: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero; pivots are certified nonzero
    /// before inversion everywhere in the engine.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { r, p } => {
                assert!(*r != 0, "inverse of zero");
                Scalar::Fp {
                    r: pow_mod(*r, *p - 2, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }

    /// Canonical serialization: `"a/b"` with `b > 0`, `gcd(|a|, b) = 1` over
    /// Q; the decimal residue over GF(p).
    pub fn canonical_string(&self) -> String {
        match self {
            Scalar::Q(q) => format!("{}/{}", q.numer(), q.denom()),
            Scalar::Fp { r, .. } => format!("{r}"),
        }
    }

    /// Exact rational value as an i64 pair when small enough (test helper).
    pub fn as_q(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            _ => None,
        }
    }

    pub fn positive(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_positive(),
            Scalar::Fp { r, .. } => *r != 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// -- dense vector helpers ---------------------------------------------------

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// dst -= c * src, skipping zero entries of src.
pub fn vec_sub_scaled(dst: &mut [Scalar], src: &[Scalar], c: &Scalar) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.sub(&s.mul(c));
        }
    }
}

/// dst += c * src, skipping zero entries of src.
pub fn vec_add_scaled(dst: &mut [Scalar], src: &[Scalar], c: &Scalar) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.add(&s.mul(c));
        }
    }
}

pub fn vec_scale(v: &mut [Scalar], c: &Scalar) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = x.mul(c);
        }
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a
        .first()
        .map(Scalar::field)
        .unwrap_or_else(|| b.first().map(Scalar::field).unwrap_or(Field::Q));
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
        match field {
            Field::Q => field.ratio(rng.gen_range(-20..=20), rng.gen_range(1..=12)),
            Field::GF { p } => field.int(rng.gen_range(0..p as i64)),
        }
    }

    fn field_axioms(field: Field) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_scalar(field, &mut rng);
            let b = random_scalar(field, &mut rng);
            let c = random_scalar(field, &mut rng);
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&field.zero()), a);
            assert_eq!(a.mul(&field.one()), a);
            assert_eq!(a.sub(&a), field.zero());
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv()), field.one());
            }
        }
    }

    #[test]
    fn rational_field_axioms() {
        field_axioms(Field::Q);
    }

    #[test]
    fn prime_field_axioms() {
        field_axioms(Field::GF { p: 5 });
        field_axioms(Field::GF { p: 7 });
    }

    #[test]
    fn canonical_strings_round_trip() {
        let f = Field::Q;
        for (num, den, expect) in [(1, 2, "1/2"), (-4, 6, "-2/3"), (0, 5, "0/1"), (7, 1, "7/1")] {
            let s = f.ratio(num, den);
            assert_eq!(s.canonical_string(), expect);
            assert_eq!(f.parse(&s.canonical_string()).unwrap(), s);
        }
        // integer shorthand accepted on parse
        assert_eq!(f.parse("3").unwrap(), f.int(3));
        let g = Field::GF { p: 5 };
        assert_eq!(g.parse("7").unwrap(), g.int(2));
        assert_eq!(g.int(-1).canonical_string(), "4");
    }

    #[test]
    fn gf_modulus_must_be_prime() {
        assert!(Field::GF { p: 6 }.validate().is_err());
        assert!(Field::GF { p: 13 }.validate().is_ok());
    }
}
