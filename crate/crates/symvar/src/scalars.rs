//! Exact scalar arithmetic: rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p"; used by the JSON vector encoding.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let mut parts = s.splitn(2, '/');
    let num = parts.next().ok_or_else(|| format!("empty rational: {s:?}"))?;
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Element of Q(i), stored as re + im*i with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gauss { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        Gauss { re, im: Rat::zero() }
    }

    pub fn from_i64(n: i64) -> Self {
        Gauss::from_rat(rat(n))
    }

    pub fn zero() -> Self {
        Gauss::from_i64(0)
    }

    pub fn one() -> Self {
        Gauss::from_i64(1)
    }

    pub fn i() -> Self {
        Gauss { re: Rat::zero(), im: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gauss { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", gauss_str(self))
    }
}

pub fn gauss_str(g: &Gauss) -> String {
    if g.im.is_zero() {
        rat_str(&g.re)
    } else if g.re.is_zero() {
        format!("{}i", rat_str(&g.im))
    } else if g.im.is_negative() {
        format!("{}{}i", rat_str(&g.re), rat_str(&g.im))
    } else {
        format!("{}+{}i", rat_str(&g.re), rat_str(&g.im))
    }
}

/// Parses "a", "a/b", "ci", "a+ci", "a-c/di" style strings.
pub fn parse_gauss(s: &str) -> Result<Gauss, String> {
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err("empty Gaussian rational".into());
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last +/- that is not leading and not inside a fraction
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if bytes[k] == b'+' || bytes[k] == b'-' {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re = parse_rat(&body[..k])?;
                let imtxt = &body[k..];
                let im = if imtxt == "+" {
                    Rat::one()
                } else if imtxt == "-" {
                    -Rat::one()
                } else {
                    parse_rat(imtxt)?
                };
                Ok(Gauss { re, im })
            }
            None => {
                let im = if body.is_empty() {
                    Rat::one()
                } else if body == "-" {
                    -Rat::one()
                } else {
                    parse_rat(body)?
                };
                Ok(Gauss { re: Rat::zero(), im })
            }
        }
    } else {
        Ok(Gauss::from_rat(parse_rat(&s)?))
    }
}

macro_rules! gauss_binop {
    ($trait:ident, $fn:ident, $body:expr) => {
        impl $trait for &Gauss {
            type Output = Gauss;
            fn $fn(self, rhs: &Gauss) -> Gauss {
                let f: fn(&Gauss, &Gauss) -> Gauss = $body;
                f(self, rhs)
            }
        }
        impl $trait for Gauss {
            type Output = Gauss;
            fn $fn(self, rhs: Gauss) -> Gauss {
                $trait::$fn(&self, &rhs)
            }
        }
        impl $trait<&Gauss> for Gauss {
            type Output = Gauss;
            fn $fn(self, rhs: &Gauss) -> Gauss {
                $trait::$fn(&self, rhs)
            }
        }
    };
}

gauss_binop!(Add, add, |a, b| Gauss { re: &a.re + &b.re, im: &a.im + &b.im });
gauss_binop!(Sub, sub, |a, b| Gauss { re: &a.re - &b.re, im: &a.im - &b.im });
gauss_binop!(Mul, mul, |a, b| Gauss {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
gauss_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("division by zero in Q(i)");
    a * &inv
});

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        -&self
    }
}

/// Total order on Q(i) by (re, im); used only for canonical map keys.
impl PartialOrd for Gauss {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gauss {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-7/2", "0", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
    }

    #[test]
    fn gauss_arithmetic() {
        let a = parse_gauss("1+2i").unwrap();
        let b = parse_gauss("3-i").unwrap();
        let p = &a * &b;
        assert_eq!(gauss_str(&p), "5+5i");
        let q = &p / &b;
        assert_eq!(q, a);
        assert_eq!(&Gauss::i() * &Gauss::i(), Gauss::from_i64(-1));
    }

    #[test]
    fn gauss_parse_forms() {
        assert_eq!(parse_gauss("i").unwrap(), Gauss::i());
        assert_eq!(parse_gauss("-i").unwrap(), -Gauss::i());
        assert_eq!(parse_gauss("1/2i").unwrap(), Gauss::new(rat(0), ratio(1, 2)));
        assert_eq!(parse_gauss("-3/2+5i").unwrap(), Gauss::new(ratio(-3, 2), rat(5)));
    }
}
