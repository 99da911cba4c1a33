//! Integer-lattice, cone and affine-monoid arithmetic.
//!
//! Monoid membership is decided by exact bounded enumeration, duals by a
//! Hilbert-basis computation over the dual cone, pointedness by exact linear
//! programming (Gordan's alternative via Fourier-Motzkin). Everything is
//! immutable and pure.

use crate::linalg::{
    self, dot, fm_feasible, is_zero_vec, primitive_ray, rank, vneg, vscale,
    vsub, zero_vec, QVec,
};
use crate::scalars::{parse_rat, rat, rat_str, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Default cap on the coefficient sum explored during membership search.
pub const DEFAULT_BUDGET: u64 = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ambient rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("membership search undecided at coefficient-sum budget {budget}")]
    UndecidedAtBudget { budget: u64 },
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankOverflow { rank: usize, bound: usize },
    #[error("monoid does not span a full-dimensional cone (span rank {span} < ambient {ambient})")]
    NotFullDimensional { span: usize, ambient: usize },
    #[error("empty ray intersection with the target lattice")]
    EmptyRayIntersection,
    #[error("malformed monoid data: {0}")]
    Malformed(String),
}

/// Finitely generated submonoid of a rational lattice. `denominator` is the
/// finest denominator of the ambient lattice, so the ambient lattice is
/// (1/denominator) Z^rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMonoid {
    rank: usize,
    denominator: BigInt,
    generators: Vec<QVec>,
}

impl AffineMonoid {
    pub fn new(rank: usize, generators: Vec<QVec>) -> Result<Self, LatticeError> {
        for g in &generators {
            if g.len() != rank {
                return Err(LatticeError::RankMismatch { expected: rank, got: g.len() });
            }
        }
        let mut gens: Vec<QVec> = Vec::new();
        for g in generators {
            if !is_zero_vec(&g) && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let denominator = linalg::common_denominator(&gens);
        Ok(AffineMonoid { rank, denominator, generators: gens })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    /// True iff x is a nonnegative integer combination of the generators.
    pub fn membership(&self, x: &[Rat]) -> Result<bool, LatticeError> {
        self.membership_with_budget(x, DEFAULT_BUDGET)
    }

    pub fn membership_with_budget(&self, x: &[Rat], budget: u64) -> Result<bool, LatticeError> {
        if x.len() != self.rank {
            return Err(LatticeError::RankMismatch { expected: self.rank, got: x.len() });
        }
        if is_zero_vec(x) {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        if let Some(phi) = self.positive_functional() {
            let px = dot(&phi, x);
            if px.is_negative() {
                return Ok(false);
            }
            let min_pg = self
                .generators
                .iter()
                .map(|g| dot(&phi, g))
                .min()
                .expect("nonempty generators");
            // every coefficient sum is bounded by px / min_pg
            let bound = (&px / &min_pg).ceil().to_integer();
            if bound > BigInt::from(budget) {
                return Err(LatticeError::UndecidedAtBudget { budget });
            }
            Ok(search_pointed(&self.generators, &phi, x, &px))
        } else {
            // not pointed: budget-capped depth-first search
            let mut seen = HashSet::new();
            let mut truncated = false;
            let found =
                search_budget(&self.generators, x, budget, &mut seen, &mut truncated);
            if found {
                Ok(true)
            } else if truncated {
                Err(LatticeError::UndecidedAtBudget { budget })
            } else {
                Ok(false)
            }
        }
    }

    /// Functional strictly positive on all generators, when one exists.
    fn positive_functional(&self) -> Option<QVec> {
        if self.generators.is_empty() {
            return Some(zero_vec(self.rank));
        }
        let rows: Vec<(QVec, Rat)> =
            self.generators.iter().map(|g| (g.clone(), rat(1))).collect();
        fm_feasible(&rows)
    }

    /// Pointedness of the monoid: no nonzero x with x and -x both members.
    pub fn is_pointed(&self) -> bool {
        self.positive_functional().is_some()
    }

    /// The dual monoid {y : <y, g> in N for every generator g}, as the
    /// Hilbert basis of the dual cone intersected with the dual lattice
    /// denominator * Z^rank.
    pub fn dual_monoid(&self, rank_bound: usize) -> Result<AffineMonoid, LatticeError> {
        if self.rank > rank_bound {
            return Err(LatticeError::RankOverflow { rank: self.rank, bound: rank_bound });
        }
        let span = rank(&self.generators);
        if span < self.rank {
            return Err(LatticeError::NotFullDimensional { span, ambient: self.rank });
        }
        let dual_scale = Rat::from_integer(self.denominator.clone());
        let rays = dual_cone_rays(&self.generators, self.rank);
        if rays.is_empty() {
            // dual cone is {0}
            return AffineMonoid::new(self.rank, vec![]);
        }
        // primitive ray representatives inside the dual lattice d*Z^r
        let prim: Vec<QVec> = rays
            .iter()
            .map(|r| {
                let p = primitive_ray(r);
                let v: QVec = p.iter().map(|x| Rat::from_integer(x.clone())).collect();
                // smallest positive multiple landing in d*Z^r
                let mut mult = Rat::one();
                for x in &v {
                    let scaled = x / &dual_scale;
                    mult = lcm_rat(&mult, scaled.denom());
                }
                vscale(&mult, &v)
            })
            .collect();
        let hb = hilbert_basis(&self.generators, &prim, &dual_scale)?;
        AffineMonoid::new(self.rank, hb)
    }

    /// Saturation membership: x in cone(generators) and in the ambient
    /// lattice (1/d) Z^r. Used as the independent oracle for dual-dual tests.
    pub fn saturation_membership(&self, x: &[Rat]) -> Result<bool, LatticeError> {
        if x.len() != self.rank {
            return Err(LatticeError::RankMismatch { expected: self.rank, got: x.len() });
        }
        for c in x {
            if !(c * Rat::from_integer(self.denominator.clone())).denom().is_one() {
                return Ok(false);
            }
        }
        Ok(in_cone(&self.generators, x))
    }
}

fn lcm_rat(acc: &Rat, denom: &BigInt) -> Rat {
    let a = acc.numer().clone();
    Rat::new(a.lcm(denom), acc.denom().clone())
}

/// Exact rational cone membership via linear programming: is x a nonnegative
/// rational combination of gens?
pub fn in_cone(gens: &[QVec], x: &[Rat]) -> bool {
    if is_zero_vec(x) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    // Feasibility of { c >= 0, G^T c = x } via FM on c-space.
    let k = gens.len();
    let mut rows: Vec<(QVec, Rat)> = Vec::new();
    for i in 0..k {
        let mut e = zero_vec(k);
        e[i] = rat(1);
        rows.push((e, rat(0)));
    }
    for coord in 0..x.len() {
        let a: QVec = gens.iter().map(|g| g[coord].clone()).collect();
        rows.push((a.clone(), x[coord].clone()));
        rows.push((vneg(&a), -x[coord].clone()));
    }
    fm_feasible(&rows).is_some()
}

fn search_pointed(gens: &[QVec], phi: &[Rat], x: &[Rat], px: &Rat) -> bool {
    fn rec(gens: &[QVec], pg: &[Rat], idx: usize, x: &QVec, px: &Rat) -> bool {
        if is_zero_vec(x) {
            return true;
        }
        if px.is_negative() || idx == gens.len() {
            return false;
        }
        if idx + 1 == gens.len() {
            // last generator: coefficient is forced if it exists
            let q = px / &pg[idx];
            return q.denom().is_one()
                && !q.is_negative()
                && *x == vscale(&q, &gens[idx]);
        }
        let max_c = (px / &pg[idx]).floor().to_integer();
        let mut c = BigInt::zero();
        let mut rem = x.clone();
        let mut prem = px.clone();
        while c <= max_c {
            if rec(gens, pg, idx + 1, &rem, &prem) {
                return true;
            }
            rem = vsub(&rem, &gens[idx]);
            prem = &prem - &pg[idx];
            c += 1;
        }
        false
    }
    let pg: Vec<Rat> = gens.iter().map(|g| dot(phi, g)).collect();
    rec(gens, &pg, 0, &x.to_vec(), px)
}

fn search_budget(
    gens: &[QVec],
    x: &[Rat],
    budget: u64,
    seen: &mut HashSet<Vec<Rat>>,
    truncated: &mut bool,
) -> bool {
    if is_zero_vec(x) {
        return true;
    }
    if budget == 0 {
        *truncated = true;
        return false;
    }
    if !seen.insert(x.to_vec()) {
        return false;
    }
    for g in gens {
        let rem = vsub(x, g);
        if search_budget(gens, &rem, budget - 1, seen, truncated) {
            return true;
        }
    }
    false
}

/// Extreme rays of the dual cone {y : <y, g> >= 0 for all g}, for a
/// full-dimensional pointed-or-not primal cone, by the subset method.
fn dual_cone_rays(gens: &[QVec], dim: usize) -> Vec<QVec> {
    if dim == 0 {
        return vec![];
    }
    if dim == 1 {
        let mut rays = Vec::new();
        for dir in [rat(1), rat(-1)] {
            let y = vec![dir.clone()];
            if gens.iter().all(|g| !dot(&y, g).is_negative()) {
                rays.push(y);
            }
        }
        return dedup_rays(rays);
    }
    let n = gens.len();
    let mut rays: Vec<QVec> = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
    while let Some((start, subset)) = stack.pop() {
        if subset.len() == dim - 1 {
            let a: Vec<QVec> = subset.iter().map(|&i| gens[i].clone()).collect();
            let ns = linalg::nullspace(&a);
            if ns.len() != 1 {
                continue;
            }
            for cand in [ns[0].clone(), vneg(&ns[0])] {
                if gens.iter().all(|g| !dot(&cand, g).is_negative()) {
                    rays.push(cand);
                }
            }
            continue;
        }
        for i in start..n {
            let mut s = subset.clone();
            s.push(i);
            stack.push((i + 1, s));
        }
    }
    dedup_rays(rays)
}

fn dedup_rays(rays: Vec<QVec>) -> Vec<QVec> {
    let mut out: Vec<QVec> = Vec::new();
    let mut keys: HashSet<Vec<BigInt>> = HashSet::new();
    for r in rays {
        if is_zero_vec(&r) {
            continue;
        }
        let key = primitive_ray(&r);
        if keys.insert(key.clone()) {
            out.push(key.iter().map(|x| Rat::from_integer(x.clone())).collect());
        }
    }
    out
}

/// Hilbert basis of the dual cone with respect to the lattice scale*Z^r.
/// `prim` are primitive ray representatives inside that lattice. Candidates
/// are collected from the fundamental parallelepipeds of all independent ray
/// subsets (this covers every triangulation), then reduced to the minimal
/// elements.
fn hilbert_basis(
    primal_gens: &[QVec],
    prim: &[QVec],
    scale: &Rat,
) -> Result<Vec<QVec>, LatticeError> {
    let dim = prim[0].len();
    let in_dual = |y: &QVec| primal_gens.iter().all(|g| !dot(y, g).is_negative());

    let mut candidates: HashSet<Vec<BigInt>> = HashSet::new();
    // enumerate independent subsets of size = dim
    let idxs: Vec<usize> = (0..prim.len()).collect();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    subsets_of(&idxs, dim, &mut subsets);
    for subset in &subsets {
        let rays: Vec<QVec> = subset.iter().map(|&i| prim[i].clone()).collect();
        if rank(&rays) != dim {
            continue;
        }
        // lattice points of { sum t_i r_i : t in [0,1]^dim } in scale*Z^dim
        let mut lo = vec![Rat::zero(); dim];
        let mut hi = vec![Rat::zero(); dim];
        for r in &rays {
            for j in 0..dim {
                if r[j].is_negative() {
                    lo[j] = &lo[j] + &r[j];
                } else {
                    hi[j] = &hi[j] + &r[j];
                }
            }
        }
        let ray_mat: Vec<QVec> =
            (0..dim).map(|i| rays.iter().map(|r| r[i].clone()).collect()).collect();
        let inv = linalg::mat_inverse(&ray_mat)
            .ok_or_else(|| LatticeError::Malformed("singular ray matrix".into()))?;
        let mut point = vec![BigInt::zero(); dim];
        enumerate_box(&lo, &hi, scale, 0, &mut point, &mut |p: &Vec<BigInt>| {
            let v: QVec = p.iter().map(|x| Rat::from_integer(x.clone()) * scale).collect();
            let t = linalg::mat_vec(&inv, &v);
            let ok = t.iter().all(|c| !c.is_negative() && *c <= Rat::one());
            if ok && !is_zero_vec(&v) {
                candidates.insert(p.clone());
            }
        });
    }
    let cand_vecs: Vec<QVec> = candidates
        .iter()
        .map(|p| p.iter().map(|x| Rat::from_integer(x.clone()) * scale).collect())
        .collect();
    // minimality: y is reducible iff y - u lies in the dual cone and the
    // lattice for some other nonzero candidate u
    let lattice_ok = |y: &QVec| y.iter().all(|c| (c / scale).denom().is_one());
    let mut basis: Vec<QVec> = Vec::new();
    'outer: for y in &cand_vecs {
        for u in &cand_vecs {
            if u == y {
                continue;
            }
            let d = vsub(y, u);
            if is_zero_vec(&d) {
                continue;
            }
            if lattice_ok(&d) && in_dual(&d) {
                continue 'outer;
            }
        }
        basis.push(y.clone());
    }
    basis.sort();
    Ok(basis)
}

fn subsets_of(idxs: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(idxs: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..idxs.len() {
            cur.push(idxs[i]);
            rec(idxs, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(idxs, k, 0, &mut Vec::new(), out);
}

fn enumerate_box(
    lo: &[Rat],
    hi: &[Rat],
    scale: &Rat,
    coord: usize,
    point: &mut Vec<BigInt>,
    f: &mut impl FnMut(&Vec<BigInt>),
) {
    if coord == lo.len() {
        f(point);
        return;
    }
    // integer multiples m of `scale` with lo <= m*scale <= hi
    let lo_m = (&lo[coord] / scale).ceil().to_integer();
    let hi_m = (&hi[coord] / scale).floor().to_integer();
    let mut m = lo_m;
    while m <= hi_m {
        point[coord] = m.clone();
        enumerate_box(lo, hi, scale, coord + 1, point, f);
        m += 1;
    }
}

/// Hilbert basis of {y in Z^dim : <y, n> >= 0 for every normal n}. The
/// normals must span, so that the cone is pointed.
pub fn cone_lattice_hilbert(normals: &[QVec], dim: usize) -> Result<Vec<QVec>, LatticeError> {
    let span = rank(&normals.to_vec());
    if span < dim {
        return Err(LatticeError::NotFullDimensional { span, ambient: dim });
    }
    let rays = dual_cone_rays(normals, dim);
    if rays.is_empty() {
        return Ok(vec![]);
    }
    let one = Rat::one();
    let prim: Vec<QVec> = rays
        .iter()
        .map(|r| {
            primitive_ray(r).iter().map(|x| Rat::from_integer(x.clone())).collect()
        })
        .collect();
    hilbert_basis(normals, &prim, &one)
}

/// Dominance order step: true iff lhs <= rhs, i.e. lhs - rhs is a
/// nonpositive-integer combination of the steps.
pub fn dominance_leq(
    lhs: &[Rat],
    rhs: &[Rat],
    steps: &[QVec],
) -> Result<bool, LatticeError> {
    if lhs.len() != rhs.len() {
        return Err(LatticeError::RankMismatch { expected: lhs.len(), got: rhs.len() });
    }
    let m = AffineMonoid::new(lhs.len(), steps.to_vec())?;
    m.membership(&vsub(rhs, lhs))
}

// ---- JSON encoding -------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct MonoidJson {
    pub rank: usize,
    pub denominator: String,
    pub generators: Vec<Vec<String>>,
}

pub fn vector_to_json(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

pub fn vector_from_json(v: &[String]) -> Result<QVec, LatticeError> {
    v.iter()
        .map(|s| parse_rat(s).map_err(LatticeError::Malformed))
        .collect()
}

impl AffineMonoid {
    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            rank: self.rank,
            denominator: self.denominator.to_string(),
            generators: self.generators.iter().map(|g| vector_to_json(g)).collect(),
        }
    }

    pub fn from_json(j: &MonoidJson) -> Result<Self, LatticeError> {
        let gens = j
            .generators
            .iter()
            .map(|g| vector_from_json(g))
            .collect::<Result<Vec<_>, _>>()?;
        AffineMonoid::new(j.rank, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn qv(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn monoid(gens: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(gens[0].len(), gens.iter().map(|g| qv(g)).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let m = monoid(&[&[1, -1], &[0, -1]]);
        assert!(m.membership(&qv(&[1, -1])).unwrap());
        assert!(!m.membership(&qv(&[1, 0])).unwrap());
        assert!(m.membership(&qv(&[2, -3])).unwrap());
        assert!(m.membership(&qv(&[0, 0])).unwrap());
    }

    #[test]
    fn membership_brute_force_agreement() {
        let m = monoid(&[&[2, 1], &[1, 2], &[1, 1]]);
        for a in -4i64..=6 {
            for b in -4i64..=6 {
                let mut expected = false;
                for c1 in 0i64..=4 {
                    for c2 in 0i64..=4 {
                        for c3 in 0i64..=6 {
                            if 2 * c1 + c2 + c3 == a && c1 + 2 * c2 + c3 == b {
                                expected = true;
                            }
                        }
                    }
                }
                assert_eq!(m.membership(&qv(&[a, b])).unwrap(), expected, "({a},{b})");
            }
        }
    }

    #[test]
    fn pointedness() {
        assert!(monoid(&[&[1, 0], &[0, 1]]).is_pointed());
        assert!(!monoid(&[&[1, 0], &[-1, 0]]).is_pointed());
        assert!(monoid(&[&[-2]]).is_pointed());
    }

    #[test]
    fn dual_rank1() {
        // N * {-2} in an integer ambient lattice: dual generated by -1
        let m = monoid(&[&[-2]]);
        let d = m.dual_monoid(8).unwrap();
        assert_eq!(d.generators(), &[qv(&[-1])]);
    }

    #[test]
    fn dual_orthant_self() {
        let m = monoid(&[&[1, 0], &[0, 1]]);
        let d = m.dual_monoid(8).unwrap();
        let mut gens = d.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![qv(&[0, 1]), qv(&[1, 0])]);
    }

    #[test]
    fn dual_needs_interior_point() {
        // cone spanned by (1,0) and (1,2): dual cone spanned by (0,1),(2,-1);
        // Hilbert basis over Z^2 adds the interior point (1,0).
        let m = monoid(&[&[1, 0], &[1, 2]]);
        let d = m.dual_monoid(8).unwrap();
        let mut gens = d.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![qv(&[0, 1]), qv(&[1, 0]), qv(&[2, -1])]);
    }

    #[test]
    fn dual_dual_is_saturation() {
        let m = monoid(&[&[2, 0], &[0, 3], &[1, 1]]);
        let dd = m.dual_monoid(8).unwrap().dual_monoid(8).unwrap();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let x = qv(&[a, b]);
                assert_eq!(
                    dd.membership(&x).unwrap(),
                    m.saturation_membership(&x).unwrap(),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn dominance_examples() {
        // steps = {2}: lambda <= mu iff mu - lambda in N*2
        assert!(dominance_leq(&qv(&[-3]), &qv(&[-1]), &[qv(&[2])]).unwrap());
        assert!(!dominance_leq(&qv(&[-1]), &qv(&[-3]), &[qv(&[2])]).unwrap());
        assert!(dominance_leq(&qv(&[-1]), &qv(&[-1]), &[qv(&[2])]).unwrap());
        assert!(!dominance_leq(&qv(&[-2]), &qv(&[-1]), &[qv(&[2])]).unwrap());
    }

    #[test]
    fn budget_is_loud() {
        let m = monoid(&[&[1]]);
        let err = m.membership_with_budget(&qv(&[1000]), 64).unwrap_err();
        assert_eq!(err, LatticeError::UndecidedAtBudget { budget: 64 });
    }
}
