//! Multiplicative invariants of a root system: Weyl orbit sums and the
//! triangular reduction expressing an invariant element as a polynomial in
//! the fundamental orbit sums.

use crate::linalg::{dot, vadd, QVec};
use crate::roots::RootSystem;
use crate::scalars::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("element is not Weyl-invariant (moved by simple reflection {0})")]
    NotInvariant(usize),
    #[error("weight {0:?} lies outside the weight lattice")]
    WeightOutsideLattice(Vec<String>),
    #[error("triangular reduction failed to terminate")]
    NonTerminating,
    #[error(transparent)]
    Root(#[from] crate::roots::RootError),
}

/// Finitely supported exact-rational map from lattice points, written
/// additively: sum of c_w * e^w.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalSum(pub BTreeMap<QVec, Rat>);

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum(BTreeMap::new())
    }

    pub fn monomial(w: QVec, c: Rat) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(w, c);
        }
        FormalSum(m)
    }

    pub fn constant(c: Rat, dim: usize) -> Self {
        FormalSum::monomial(vec![Rat::zero(); dim], c)
    }

    pub fn add_term(&mut self, w: QVec, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(w.clone()).or_insert_with(Rat::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> FormalSum {
        if c.is_zero() {
            return FormalSum::zero();
        }
        FormalSum(self.0.iter().map(|(w, x)| (w.clone(), c * x)).collect())
    }

    pub fn mul(&self, other: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (w1, c1) in &self.0 {
            for (w2, c2) in &other.0 {
                out.add_term(vadd(w1, w2), &(c1 * c2));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Orbit sum m_w = sum over the Weyl orbit of w of e^v.
pub fn orbit_sum(rs: &RootSystem, w: &[Rat]) -> FormalSum {
    let mut out = FormalSum::zero();
    for v in rs.weyl_orbit(w) {
        out.add_term(v, &Rat::from_integer(1.into()));
    }
    out
}

/// Image of a formal sum under a simple reflection.
fn reflect_sum(rs: &RootSystem, f: &FormalSum, i: usize) -> FormalSum {
    let mut out = FormalSum::zero();
    for (w, c) in &f.0 {
        out.add_term(RootSystem::reflect(w, &rs.simples[i]), c);
    }
    out
}

pub fn is_invariant(rs: &RootSystem, f: &FormalSum) -> bool {
    (0..rs.rank()).all(|i| &reflect_sum(rs, f, i) == f)
}

/// Polynomial in the fundamental orbit sums a_1..a_n, keyed by exponent
/// vectors.
pub type OrbitPolynomial = BTreeMap<Vec<u32>, Rat>;

/// Expands a polynomial in the fundamental orbit sums into a formal sum.
pub fn expand(rs: &RootSystem, poly: &OrbitPolynomial) -> Result<FormalSum, InvariantError> {
    let fw = rs.fundamental_weights()?;
    let fund: Vec<FormalSum> = fw.iter().map(|w| orbit_sum(rs, w)).collect();
    let mut out = FormalSum::zero();
    for (exps, c) in poly {
        let mut term = FormalSum::constant(Rat::from_integer(1.into()), rs.dim);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&fund[i]);
            }
        }
        out = out.add(&term.scale(c));
    }
    Ok(out)
}

/// Expresses a Weyl-invariant formal sum as the unique polynomial in the
/// fundamental orbit sums, by triangular reduction on highest weights.
pub fn express_in_fundamental_orbit_sums(
    rs: &RootSystem,
    f: &FormalSum,
) -> Result<OrbitPolynomial, InvariantError> {
    for i in 0..rs.rank() {
        if &reflect_sum(rs, f, i) != f {
            return Err(InvariantError::NotInvariant(i));
        }
    }
    for w in f.0.keys() {
        for i in 0..rs.rank() {
            if !dot(&rs.slot_coroot(i), w).denom().is_one() {
                return Err(InvariantError::WeightOutsideLattice(
                    w.iter().map(crate::scalars::rat_str).collect(),
                ));
            }
        }
    }
    let fw = rs.fundamental_weights()?;
    let mut delta = vec![Rat::zero(); rs.dim];
    for w in &fw {
        delta = vadd(&delta, w);
    }
    let fund: Vec<FormalSum> = fw.iter().map(|w| orbit_sum(rs, w)).collect();
    let mut rest = f.clone();
    let mut poly = OrbitPolynomial::new();
    let cap = 64 + f.0.len() * f.0.len() * 16;
    for _ in 0..cap {
        if rest.is_zero() {
            return Ok(poly);
        }
        // highest weight: maximal height against a strictly dominant vector
        let (w, c) = rest
            .0
            .iter()
            .max_by(|(w1, _), (w2, _)| dot(&delta, w1).cmp(&dot(&delta, w2)).then(w1.cmp(w2)))
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("nonempty");
        let exps: Vec<u32> = (0..rs.rank())
            .map(|i| {
                let e = dot(&rs.slot_coroot(i), &w);
                if e.is_negative() || !e.denom().is_one() {
                    u32::MAX
                } else {
                    e.numer().try_into().unwrap_or(u32::MAX)
                }
            })
            .collect();
        if exps.contains(&u32::MAX) {
            // the maximal weight of an invariant element must be dominant
            return Err(InvariantError::NotInvariant(0));
        }
        let mut term = FormalSum::constant(Rat::from_integer(1.into()), rs.dim);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&fund[i]);
            }
        }
        rest = rest.add(&term.scale(&-c.clone()));
        let entry = poly.entry(exps).or_insert_with(Rat::zero);
        *entry = &*entry + &c;
    }
    Err(InvariantError::NonTerminating)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn rank1_square_identity() {
        // A1: m_w^2 = m_{2w} + 2, so m_{2w} = a1^2 - 2
        let rs = RootSystem::build("A1").unwrap();
        let fw = rs.fundamental_weights().unwrap();
        let two_w: QVec = fw[0].iter().map(|x| x * rat(2)).collect();
        let f = orbit_sum(&rs, &two_w);
        let poly = express_in_fundamental_orbit_sums(&rs, &f).unwrap();
        let mut expected = OrbitPolynomial::new();
        expected.insert(vec![2], rat(1));
        expected.insert(vec![0], rat(-2));
        assert_eq!(poly, expected);
        assert_eq!(expand(&rs, &poly).unwrap(), f);
    }

    #[test]
    fn monomial_round_trip() {
        let rs = RootSystem::build("A2").unwrap();
        let fw = rs.fundamental_weights().unwrap();
        let f = orbit_sum(&rs, &fw[0]);
        let poly = express_in_fundamental_orbit_sums(&rs, &f).unwrap();
        assert_eq!(poly.len(), 1);
        assert_eq!(poly.get(&vec![1, 0]), Some(&rat(1)));
    }

    #[test]
    fn a2_product_round_trip() {
        let rs = RootSystem::build("A2").unwrap();
        let fw = rs.fundamental_weights().unwrap();
        let f = orbit_sum(&rs, &fw[0]).mul(&orbit_sum(&rs, &fw[1]));
        assert!(is_invariant(&rs, &f));
        let poly = express_in_fundamental_orbit_sums(&rs, &f).unwrap();
        assert_eq!(expand(&rs, &poly).unwrap(), f);
    }

    #[test]
    fn rejects_non_invariant() {
        let rs = RootSystem::build("A2").unwrap();
        let fw = rs.fundamental_weights().unwrap();
        let f = FormalSum::monomial(fw[0].clone(), rat(1));
        assert!(matches!(
            express_in_fundamental_orbit_sums(&rs, &f),
            Err(InvariantError::NotInvariant(_))
        ));
    }

    #[test]
    fn rejects_weight_outside_lattice() {
        let rs = RootSystem::build("A1").unwrap();
        let fw = rs.fundamental_weights().unwrap();
        let half: QVec = fw[0].iter().map(|x| x / rat(2)).collect();
        let f = orbit_sum(&rs, &half);
        assert!(matches!(
            express_in_fundamental_orbit_sums(&rs, &f),
            Err(InvariantError::WeightOutsideLattice(_))
        ));
    }
}
