//! Exact coefficient fields: the rationals, the Gaussian rationals `Q(i)` and
//! prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Largest modulus accepted for `F_p`; residues are multiplied in `u128`.
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    GaussianRational,
    PrimeField(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, Error> {
        if !(2..MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Whether the field contains a square root of -1.
    pub fn has_imaginary_unit(&self) -> bool {
        match self {
            Field::Rational => false,
            Field::GaussianRational => true,
            Field::PrimeField(p) => *p == 2 || p % 4 == 1,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::GaussianRational => {
                FieldElement::GaussianRational(BigRational::from_integer(n.into()), BigRational::zero())
            }
            Field::PrimeField(p) => FieldElement::PrimeField {
                residue: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, Error> {
        FieldElement::Rational(q.clone()).coerce(self)
    }

    /// The distinguished square root of -1, if the field has one. In `F_p`
    /// this is the smaller of the two roots.
    pub fn imaginary_unit(&self) -> Option<FieldElement> {
        match self {
            Field::Rational => None,
            Field::GaussianRational => Some(FieldElement::GaussianRational(BigRational::zero(), BigRational::one())),
            Field::PrimeField(p) => sqrt_minus_one(*p).map(|residue| FieldElement::PrimeField { residue, p: *p }),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::GaussianRational => write!(f, "QQi"),
            Field::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field, Error> {
        let s = s.trim();
        match s {
            "QQ" | "Q" => Ok(Field::Rational),
            "QQi" | "QQ(i)" | "Q(i)" => Ok(Field::GaussianRational),
            _ => {
                let digits = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix("GF:"))
                    .ok_or_else(|| Error::Field(format!("unknown field `{s}` (expected QQ, QQi or Fp:<p>)")))?;
                let p = digits
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Field(format!("bad modulus in `{s}`")))?;
                Field::prime(p)
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn sqrt_minus_one(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    if p % 4 != 1 {
        return None;
    }
    // c^((p-1)/4) squares to -1 whenever c is a non-residue.
    (2..p).find_map(|c| {
        if pow_mod(c, (p - 1) / 2, p) == p - 1 {
            let r = pow_mod(c, (p - 1) / 4, p);
            Some(r.min(p - r))
        } else {
            None
        }
    })
}

/// An exact scalar. Rational values are kept in lowest terms with a positive
/// denominator (guaranteed by `num_rational`); prime-field residues lie in
/// `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    GaussianRational(BigRational, BigRational),
    PrimeField { residue: u64, p: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::GaussianRational(..) => Field::GaussianRational,
            FieldElement::PrimeField { p, .. } => Field::PrimeField(*p),
        }
    }

    pub fn rational(num: i64, den: i64) -> FieldElement {
        FieldElement::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> FieldElement {
        FieldElement::GaussianRational(re, im)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::GaussianRational(a, b) => a.is_zero() && b.is_zero(),
            FieldElement::PrimeField { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::GaussianRational(a, b) => a.is_one() && b.is_zero(),
            FieldElement::PrimeField { residue, .. } => *residue == 1,
        }
    }

    /// Maps `self` into `target`. `Q -> Q(i)` and `Q -> F_p` always succeed
    /// (unless a denominator vanishes mod p); `Q(i) -> F_p` needs a square root
    /// of -1 mod p.
    pub fn coerce(&self, target: &Field) -> Result<FieldElement, Error> {
        match (self, target) {
            (FieldElement::Rational(q), Field::Rational) => Ok(FieldElement::Rational(q.clone())),
            (FieldElement::Rational(q), Field::GaussianRational) => {
                Ok(FieldElement::GaussianRational(q.clone(), BigRational::zero()))
            }
            (FieldElement::GaussianRational(a, b), Field::GaussianRational) => {
                Ok(FieldElement::GaussianRational(a.clone(), b.clone()))
            }
            (FieldElement::GaussianRational(a, b), Field::Rational) if b.is_zero() => {
                Ok(FieldElement::Rational(a.clone()))
            }
            (FieldElement::Rational(q), Field::PrimeField(p)) => rational_mod(q, *p),
            (FieldElement::GaussianRational(a, b), Field::PrimeField(p)) => {
                let re = rational_mod(a, *p)?;
                if b.is_zero() {
                    return Ok(re);
                }
                let i = target
                    .imaginary_unit()
                    .ok_or_else(|| Error::Field(format!("-1 is not a square in F_{p}")))?;
                Ok(re.add(&rational_mod(b, *p)?.mul(&i)))
            }
            (FieldElement::PrimeField { p, .. }, Field::PrimeField(q)) if p == q => Ok(self.clone()),
            _ => Err(Error::Field(format!("cannot map {} into {}", self.field(), target))),
        }
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::GaussianRational(a, b) => FieldElement::GaussianRational(-a, -b),
            FieldElement::PrimeField { residue, p } => FieldElement::PrimeField {
                residue: if *residue == 0 { 0 } else { p - residue },
                p: *p,
            },
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::GaussianRational(a, b), FieldElement::GaussianRational(c, d)) => {
                FieldElement::GaussianRational(a + c, b + d)
            }
            (FieldElement::PrimeField { residue: a, p }, FieldElement::PrimeField { residue: b, p: q }) if p == q => {
                FieldElement::PrimeField {
                    residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => {
                let (a, b) = unify(self, other);
                a.add(&b)
            }
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::GaussianRational(a, b), FieldElement::GaussianRational(c, d)) => {
                if b.is_zero() && d.is_zero() {
                    return FieldElement::GaussianRational(a * c, BigRational::zero());
                }
                FieldElement::GaussianRational(a * c - b * d, a * d + b * c)
            }
            (FieldElement::PrimeField { residue: a, p }, FieldElement::PrimeField { residue: b, p: q }) if p == q => {
                FieldElement::PrimeField {
                    residue: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => {
                let (a, b) = unify(self, other);
                a.mul(&b)
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::GaussianRational(a, b) => {
                let norm = a * a + b * b;
                FieldElement::GaussianRational(a / &norm, -(b / &norm))
            }
            FieldElement::PrimeField { residue, p } => FieldElement::PrimeField {
                residue: pow_mod(*residue, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &FieldElement) -> Option<FieldElement> {
        other.inv().map(|inv| self.mul(&inv))
    }

    pub fn pow(&self, mut exp: u32) -> FieldElement {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Complex conjugate in `Q(i)`; the identity elsewhere.
    pub fn conj(&self) -> FieldElement {
        match self {
            FieldElement::GaussianRational(a, b) => FieldElement::GaussianRational(a.clone(), -b),
            other => other.clone(),
        }
    }

    /// True when the printed form needs a leading minus sign and no brackets,
    /// i.e. the element is a "negative" real number.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::GaussianRational(a, b) => {
                (a.is_negative() && b.is_zero()) || (a.is_zero() && b.is_negative())
            }
            FieldElement::PrimeField { residue, p } => *residue > p / 2,
        }
    }
}

fn rational_mod(q: &BigRational, p: u64) -> Result<FieldElement, Error> {
    let modulus = BigInt::from(p);
    let reduce = |n: &BigInt| -> u64 {
        let r = ((n % &modulus) + &modulus) % &modulus;
        r.try_into().expect("residue fits in u64")
    };
    let num = reduce(q.numer());
    let den = reduce(q.denom());
    if den == 0 {
        return Err(Error::Field(format!("denominator of {q} vanishes in F_{p}")));
    }
    let num = FieldElement::PrimeField { residue: num, p };
    let den = FieldElement::PrimeField { residue: den, p };
    Ok(num.mul(&den.inv().expect("nonzero")))
}

fn unify(a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
    let target = match (a.field(), b.field()) {
        (Field::PrimeField(p), Field::PrimeField(q)) => {
            panic!("mixing coefficients of F_{p} and F_{q}")
        }
        (f @ Field::PrimeField(_), _) | (_, f @ Field::PrimeField(_)) => f,
        (Field::GaussianRational, _) | (_, Field::GaussianRational) => Field::GaussianRational,
        _ => Field::Rational,
    };
    let lift = |x: &FieldElement| {
        x.coerce(&target)
            .unwrap_or_else(|e| panic!("incompatible coefficients: {e}"))
    };
    (lift(a), lift(b))
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => fmt_rational(q, f),
            FieldElement::GaussianRational(a, b) => {
                if b.is_zero() {
                    return fmt_rational(a, f);
                }
                let imag = |f: &mut fmt::Formatter<'_>, b: &BigRational| -> fmt::Result {
                    if b.is_one() {
                        write!(f, "i")
                    } else if (-b).is_one() {
                        write!(f, "-i")
                    } else {
                        fmt_rational(b, f)?;
                        write!(f, "*i")
                    }
                };
                if a.is_zero() {
                    return imag(f, b);
                }
                write!(f, "(")?;
                fmt_rational(a, f)?;
                if !b.is_negative() {
                    write!(f, "+")?;
                }
                imag(f, b)?;
                write!(f, ")")
            }
            FieldElement::PrimeField { residue, p } => {
                if *residue > p / 2 {
                    write!(f, "-{}", p - residue)
                } else {
                    write!(f, "{residue}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_is_normalized() {
        let x = FieldElement::rational(6, -4);
        match x {
            FieldElement::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(-3));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Field::GaussianRational.imaginary_unit().unwrap();
        assert_eq!(i.mul(&i), Field::GaussianRational.from_i64(-1));
        let f13 = Field::prime(13).unwrap();
        let i13 = f13.imaginary_unit().unwrap();
        assert_eq!(i13.mul(&i13), f13.from_i64(-1));
        assert!(Field::prime(7).unwrap().imaginary_unit().is_none());
        assert!(Field::Rational.imaginary_unit().is_none());
    }

    #[test]
    fn parse_fields() {
        assert_eq!("QQ".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("QQi".parse::<Field>().unwrap(), Field::GaussianRational);
        assert_eq!("Fp:13".parse::<Field>().unwrap(), Field::PrimeField(13));
        assert!("Fp:15".parse::<Field>().is_err());
        assert!("RR".parse::<Field>().is_err());
    }

    #[test]
    fn display() {
        let g = FieldElement::gaussian(q(1, 2), q(-3, 1));
        assert_eq!(g.to_string(), "(1/2-3*i)");
        assert_eq!(FieldElement::gaussian(q(0, 1), q(-1, 1)).to_string(), "-i");
        assert_eq!(Field::prime(7).unwrap().from_i64(-1).to_string(), "-1");
    }

    #[test]
    fn gaussian_into_prime_field() {
        let f = Field::prime(5).unwrap();
        let i = FieldElement::gaussian(q(0, 1), q(1, 1)).coerce(&f).unwrap();
        assert_eq!(i.mul(&i), f.from_i64(-1));
        assert!(FieldElement::gaussian(q(0, 1), q(1, 1))
            .coerce(&Field::prime(7).unwrap())
            .is_err());
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn rational_inverse(a in arb_rational()) {
            prop_assume!(!a.is_zero());
            let x = FieldElement::Rational(a);
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }

        #[test]
        fn gaussian_inverse(a in arb_rational(), b in arb_rational()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let x = FieldElement::gaussian(a, b);
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }

        #[test]
        fn prime_inverse(r in 1u64..101) {
            let x = FieldElement::PrimeField { residue: r, p: 101 };
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }

        #[test]
        fn gaussian_norm(a in arb_rational(), b in arb_rational()) {
            let z = FieldElement::gaussian(a.clone(), b.clone());
            let prod = z.mul(&z.conj());
            prop_assert_eq!(prod, FieldElement::gaussian(&a * &a + &b * &b, BigRational::zero()));
        }
    }
}
