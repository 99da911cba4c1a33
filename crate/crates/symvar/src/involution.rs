//! Involutions on character lattices in maximally split position, and the
//! restricted-root pipeline: imaginary roots, restricted system, slot types,
//! the pairing permutation, restricted fundamental weights and the derived
//! lattices.

use crate::lattice::{AffineMonoid, LatticeError};
use crate::linalg::{
    self, dot, express_in_span, is_zero_vec, mat_identity, mat_inverse, mat_mul, mat_vec,
    vadd, vneg, vscale, vsub, zero_vec, QMat, QVec,
};
use crate::roots::{
    identify_cartan_type, weyl_order_by_orbit, RootError, RootSystem, WeylElement,
};
use crate::scalars::{rat, ratio, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

const ORBIT_CAP: usize = 2_000_000;

#[derive(Debug, thiserror::Error)]
pub enum InvolutionError {
    #[error("theta is not an involution (square differs from the identity)")]
    NotInvolutive,
    #[error("theta does not preserve the root set; witness root {0:?}")]
    RootsNotPreserved(Vec<String>),
    #[error("theta does not preserve the invariant form")]
    FormNotPreserved,
    #[error("positivity convention violated: positive non-imaginary root {0:?} has positive image")]
    PositivityViolated(Vec<String>),
    #[error("unexpected pairing value {0} between a simple root and its image")]
    UnexpectedType(String),
    #[error("pairing permutation is not well defined at simple index {0}")]
    SigmaUndefined(usize),
    #[error("restricted weights are not independent")]
    DependentWeights,
    #[error("unknown Satake flip for base type {0}")]
    UnknownFlip(String),
    #[error("black node index {0} out of range")]
    BadBlackNode(usize),
    #[error("diagram involution does not preserve the black nodes")]
    FlipMovesBlackNodes,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn fmt_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(crate::scalars::rat_str).collect()
}

/// An order-2 lattice automorphism of the base system, validated to be in
/// maximally split position.
#[derive(Debug, Clone)]
pub struct InvolutionDatum {
    pub base: RootSystem,
    pub theta: QMat,
    pub imaginary: Vec<QVec>,
    pub quasisplit: bool,
    pub split: bool,
}

impl InvolutionDatum {
    pub fn apply(&self, v: &[Rat]) -> QVec {
        mat_vec(&self.theta, v)
    }
}

/// Checks all involution-datum invariants; returns the datum or a structured
/// violation.
pub fn validate_involution(
    base: &RootSystem,
    theta: &QMat,
) -> Result<InvolutionDatum, InvolutionError> {
    let dim = base.dim;
    if theta.len() != dim || theta.iter().any(|r| r.len() != dim) {
        return Err(InvolutionError::NotInvolutive);
    }
    if !linalg::mat_is_identity(&mat_mul(theta, theta)) {
        return Err(InvolutionError::NotInvolutive);
    }
    // the invariant form must be theta-invariant, so that characters and
    // cocharacters transform by the same matrix
    let gram = mat_mul(&linalg::mat_transpose(theta), theta);
    if !linalg::mat_is_identity(&gram) {
        return Err(InvolutionError::FormNotPreserved);
    }
    let root_set: HashSet<QVec> = base.roots.iter().cloned().collect();
    let mut imaginary = Vec::new();
    for r in &base.roots {
        let img = mat_vec(theta, r);
        if !root_set.contains(&img) {
            return Err(InvolutionError::RootsNotPreserved(fmt_vec(r)));
        }
        if img == *r {
            imaginary.push(r.clone());
        }
    }
    for r in base.positive_roots() {
        let img = mat_vec(theta, &r);
        if img != r && base.is_positive_root(&img) {
            return Err(InvolutionError::PositivityViolated(fmt_vec(&r)));
        }
    }
    imaginary.sort();
    let quasisplit = imaginary.is_empty();
    let minus_id: QMat = mat_identity(dim)
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect();
    let split = *theta == minus_id;
    Ok(InvolutionDatum {
        base: base.clone(),
        theta: theta.clone(),
        imaginary,
        quasisplit,
        split,
    })
}

/// Imaginary roots together with the quasisplit flag.
pub fn imaginary_roots(d: &InvolutionDatum) -> (Vec<QVec>, bool) {
    (d.imaginary.clone(), d.quasisplit)
}

/// One simple slot of the restricted system.
#[derive(Debug, Clone)]
pub struct Slot {
    /// representative simple index in the base system
    pub rep: usize,
    /// sigma(rep)
    pub partner: usize,
    /// case of the representative: 1, 2 or 3
    pub kind: u8,
    /// restricted root (alpha - theta alpha)/2
    pub root: QVec,
    /// whether 2*root is also restricted
    pub divisible: bool,
    /// restricted fundamental weight
    pub varpi: QVec,
    /// dual-basis coroot of the varpi family
    pub varpi_dual: QVec,
    /// geometric coroot of the longest root in the slot
    pub closure_step: QVec,
}

#[derive(Debug, Clone)]
pub struct RestrictedData {
    pub datum: InvolutionDatum,
    pub phi_theta: Vec<QVec>,
    pub restricted: Option<RootSystem>,
    pub restricted_label: String,
    pub slots: Vec<Slot>,
    /// order-2 permutation on the non-imaginary simple indices
    pub sigma: BTreeMap<usize, usize>,
    /// case of each non-imaginary simple index
    pub types: BTreeMap<usize, u8>,
    pub little_weyl_order: u128,
    pub little_weyl_method: &'static str,
    /// longest element of the little Weyl group on the ambient space
    pub w0_theta: QMat,
}

/// Full restricted-root data for a validated involution.
pub fn restricted_system(d: &InvolutionDatum) -> Result<RestrictedData, InvolutionError> {
    let base = &d.base;
    let dim = base.dim;
    let imaginary_set: HashSet<QVec> = d.imaginary.iter().cloned().collect();
    let nonim: Vec<usize> = (0..base.rank())
        .filter(|&i| !imaginary_set.contains(&base.simples[i]))
        .collect();
    let imaginary_simples: Vec<usize> = (0..base.rank())
        .filter(|&i| imaginary_set.contains(&base.simples[i]))
        .collect();

    // types
    let mut types = BTreeMap::new();
    for &i in &nonim {
        let a = &base.simples[i];
        let img = d.apply(a);
        let t = rat(2) * dot(a, &img) / dot(a, a);
        let kind = if img == vneg(a) {
            1u8
        } else if t.is_zero() {
            2
        } else if t.is_one() {
            3
        } else {
            return Err(InvolutionError::UnexpectedType(crate::scalars::rat_str(&t)));
        };
        types.insert(i, kind);
    }

    // sigma: -theta(alpha_i) = alpha_{sigma(i)} + nonnegative imaginary part
    let mut sigma = BTreeMap::new();
    for &i in &nonim {
        let v = vneg(&d.apply(&base.simples[i]));
        let coeffs =
            express_in_span(&v, &base.simples).ok_or(InvolutionError::SigmaUndefined(i))?;
        let mut partner = None;
        for &j in &nonim {
            let c = &coeffs[j];
            if c.is_zero() {
                continue;
            }
            if !c.is_one() || partner.is_some() {
                return Err(InvolutionError::SigmaUndefined(i));
            }
            partner = Some(j);
        }
        let j = partner.ok_or(InvolutionError::SigmaUndefined(i))?;
        for &k in &imaginary_simples {
            if coeffs[k].is_negative() {
                return Err(InvolutionError::SigmaUndefined(i));
            }
        }
        sigma.insert(i, j);
    }
    for (&i, &j) in &sigma {
        if sigma.get(&j) != Some(&i) {
            return Err(InvolutionError::SigmaUndefined(i));
        }
    }

    // restricted roots
    let half = ratio(1, 2);
    let mut phi_theta: Vec<QVec> = Vec::new();
    {
        let mut seen = HashSet::new();
        for r in &base.roots {
            if imaginary_set.contains(r) {
                continue;
            }
            let bar = vscale(&half, &vsub(r, &d.apply(r)));
            if seen.insert(bar.clone()) {
                phi_theta.push(bar);
            }
        }
    }
    phi_theta.sort();

    // simple slots with deduplication in ascending rep order
    let fw = base.fundamental_weights()?;
    let phi_set: HashSet<QVec> = phi_theta.iter().cloned().collect();
    let mut slots: Vec<Slot> = Vec::new();
    for &i in &nonim {
        let bar = vscale(&half, &vsub(&base.simples[i], &d.apply(&base.simples[i])));
        if slots.iter().any(|s| s.root == bar) {
            continue;
        }
        let j = sigma[&i];
        let kind = types[&i];
        // case (1) fixed: 2*omega; fixed by sigma otherwise: omega; paired:
        // omega_i + omega_{sigma(i)}. The lattice equality with the image of
        // (1 - theta) is checked downstream.
        let varpi = if i == j {
            if kind == 1 {
                vscale(&rat(2), &fw[i])
            } else {
                fw[i].clone()
            }
        } else {
            vadd(&fw[i], &fw[j])
        };
        if d.apply(&varpi) != vneg(&varpi) {
            return Err(InvolutionError::UnexpectedType(format!(
                "restricted weight at slot {i} is not anti-fixed"
            )));
        }
        let divisible = phi_set.contains(&vscale(&rat(2), &bar));
        let closure_step = if divisible {
            RootSystem::coroot(&vscale(&rat(2), &bar))
        } else {
            RootSystem::coroot(&bar)
        };
        slots.push(Slot {
            rep: i,
            partner: j,
            kind,
            root: bar,
            divisible,
            varpi,
            varpi_dual: zero_vec(dim),
            closure_step,
        });
    }

    // dual basis of the varpi family
    if !slots.is_empty() {
        let varpis: Vec<QVec> = slots.iter().map(|s| s.varpi.clone()).collect();
        let duals =
            linalg::dual_basis_in_span(&varpis).ok_or(InvolutionError::DependentWeights)?;
        for (s, dvec) in slots.iter_mut().zip(duals) {
            s.varpi_dual = dvec;
        }
        // each dual vector must point along its restricted root
        for s in &slots {
            let c = dot(&s.varpi_dual, &s.root);
            if !c.is_positive() {
                return Err(InvolutionError::DependentWeights);
            }
            let expect = vscale(&(c / dot(&s.root, &s.root)), &s.root);
            if expect != s.varpi_dual {
                return Err(InvolutionError::DependentWeights);
            }
        }
    }

    let slot_roots: Vec<QVec> = slots.iter().map(|s| s.root.clone()).collect();
    let (restricted, restricted_label, little, method, w0_theta) = if phi_theta.is_empty() {
        (None, "-".to_string(), 1u128, "empty", mat_identity(dim))
    } else {
        // identify validates the axioms of the restricted set
        let label = identify_cartan_type(&phi_theta, Some(&slot_roots))?;
        let rs =
            RootSystem::from_roots_unchecked(&label, dim, phi_theta.clone(), slot_roots.clone());
        let (order, method) = weyl_order_by_orbit(&rs, ORBIT_CAP)?;
        let w0 = rs.longest_element()?.matrix;
        (Some(rs), label, order, method, w0)
    };

    Ok(RestrictedData {
        datum: d.clone(),
        phi_theta,
        restricted,
        restricted_label,
        slots,
        sigma,
        types,
        little_weyl_order: little,
        little_weyl_method: method,
        w0_theta,
    })
}

impl RestrictedData {
    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn varpis(&self) -> Vec<QVec> {
        self.slots.iter().map(|s| s.varpi.clone()).collect()
    }

    pub fn varpi_duals(&self) -> Vec<QVec> {
        self.slots.iter().map(|s| s.varpi_dual.clone()).collect()
    }

    pub fn simple_restricted(&self) -> Vec<QVec> {
        self.slots.iter().map(|s| s.root.clone()).collect()
    }

    /// w0 of the little Weyl group applied to an ambient vector.
    pub fn w0_apply(&self, v: &[Rat]) -> QVec {
        mat_vec(&self.w0_theta, v)
    }

    /// Coordinates of a weight-side vector over the varpi basis.
    pub fn to_varpi_coords(&self, v: &[Rat]) -> QVec {
        self.slots.iter().map(|s| dot(&s.varpi_dual, v)).collect()
    }

    /// Coordinates of a cocharacter-side vector over the dual basis.
    pub fn to_covarpi_coords(&self, v: &[Rat]) -> QVec {
        self.slots.iter().map(|s| dot(&s.varpi, v)).collect()
    }

    pub fn from_varpi_coords(&self, c: &[Rat]) -> QVec {
        let mut v = zero_vec(self.datum.base.dim);
        for (s, x) in self.slots.iter().zip(c) {
            v = vadd(&v, &vscale(x, &s.varpi));
        }
        v
    }

    pub fn from_covarpi_coords(&self, c: &[Rat]) -> QVec {
        let mut v = zero_vec(self.datum.base.dim);
        for (s, x) in self.slots.iter().zip(c) {
            v = vadd(&v, &vscale(x, &s.varpi_dual));
        }
        v
    }

    /// The sigma statement: theta(alpha_i) + alpha_{sigma(i)} lies in the
    /// nonpositive span of the imaginary simple roots (zero allowed).
    pub fn sigma_consistency(&self) -> bool {
        let base = &self.datum.base;
        let imaginary_set: HashSet<QVec> = self.datum.imaginary.iter().cloned().collect();
        for (&i, &j) in &self.sigma {
            let v = vadd(&self.datum.apply(&base.simples[i]), &base.simples[j]);
            if is_zero_vec(&v) {
                continue;
            }
            let Some(coeffs) = express_in_span(&v, &base.simples) else {
                return false;
            };
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !imaginary_set.contains(&base.simples[k]) || c.is_positive() {
                    return false;
                }
            }
        }
        true
    }

    /// Z-span of the varpi family equals the image of (1 - theta) on the
    /// weight lattice of the base (simply-connected convention).
    pub fn varpi_lattice_is_one_minus_theta_image(&self) -> Result<bool, InvolutionError> {
        let fw = self.datum.base.fundamental_weights()?;
        let image: Vec<QVec> = fw.iter().map(|w| vsub(w, &self.datum.apply(w))).collect();
        Ok(linalg::lattice_equal(&self.varpis(), &image))
    }
}

/// Derived lattices and semigroups of the restricted system.
#[derive(Debug, Clone)]
pub struct RestrictedLattices {
    /// generators of the restricted weight lattice (the varpis, ambient)
    pub p_theta: Vec<QVec>,
    /// generators of the restricted root lattice (ambient)
    pub r_theta: Vec<QVec>,
    /// basis of the cocharacter lattice dual to p_theta (ambient)
    pub cochar_p: Vec<QVec>,
    /// basis of the cocharacter lattice dual to r_theta (ambient)
    pub cochar_r: Vec<QVec>,
    /// dominant restricted weights in varpi coordinates (free on the units)
    pub p_plus: AffineMonoid,
    /// antidominant part of cochar_p, in cochar_p basis coordinates
    pub cochar_p_antidominant: AffineMonoid,
    /// antidominant part of cochar_r, in cochar_r basis coordinates
    pub cochar_r_antidominant: AffineMonoid,
}

pub fn lattices(rd: &RestrictedData) -> Result<RestrictedLattices, InvolutionError> {
    let l = rd.rank();
    let p_theta = rd.varpis();
    let mut r_theta: Vec<QVec> = rd.phi_theta.clone();
    r_theta.sort();
    let cochar_p = rd.varpi_duals();
    // lattice basis for r_theta, then its dual within the span
    let cochar_r = if l == 0 {
        vec![]
    } else {
        let basis = lattice_basis(&r_theta);
        linalg::dual_basis_in_span(&basis).ok_or(InvolutionError::DependentWeights)?
    };
    let unit = mat_identity(l);
    let p_plus = AffineMonoid::new(l, unit)?;
    // antidominant part of the lattice spanned by `basis`, in basis coords:
    // Hilbert basis of {m in Z^l : <sum m_k b_k, root_j> <= 0 for all slots}
    let anti = |basis: &Vec<QVec>| -> Result<AffineMonoid, InvolutionError> {
        if l == 0 {
            return Ok(AffineMonoid::new(0, vec![])?);
        }
        let normals: Vec<QVec> = rd
            .slots
            .iter()
            .map(|s| basis.iter().map(|b| -dot(b, &s.root)).collect())
            .collect();
        let gens = crate::lattice::cone_lattice_hilbert(&normals, l)?;
        Ok(AffineMonoid::new(l, gens)?)
    };
    let cochar_p_antidominant = anti(&cochar_p)?;
    let cochar_r_antidominant = anti(&cochar_r)?;
    Ok(RestrictedLattices {
        p_theta,
        r_theta,
        cochar_p,
        cochar_r,
        p_plus,
        cochar_p_antidominant,
        cochar_r_antidominant,
    })
}

/// A rational basis of the Z-span of the given vectors.
pub fn lattice_basis(gens: &[QVec]) -> Vec<QVec> {
    let d = linalg::common_denominator(gens);
    let rows: Vec<Vec<num_bigint::BigInt>> =
        gens.iter().map(|g| linalg::scale_to_int(g, &d)).collect();
    let h = linalg::hnf_rows(rows);
    let dr = Rat::from_integer(d);
    h.into_iter()
        .map(|row| row.into_iter().map(|x| Rat::from_integer(x) / &dr).collect())
        .collect()
}

/// (-theta(lambda))+ for a dominant cocharacter; when the datum is
/// quasisplit this equals -theta(lambda) on the nose.
pub fn minus_theta_plus(lambda: &[Rat], d: &InvolutionDatum) -> (QVec, WeylElement) {
    let v = vneg(&d.apply(lambda));
    let out = d.base.dominant_representative(&v);
    if d.quasisplit {
        debug_assert_eq!(out.0, v);
    }
    out
}

/// (theta(lambda))+ for a dominant cocharacter.
pub fn theta_plus(lambda: &[Rat], d: &InvolutionDatum) -> (QVec, WeylElement) {
    let v = d.apply(lambda);
    d.base.dominant_representative(&v)
}

/// Root partition of the parabolic attached to a cocharacter.
pub struct ParabolicRoots {
    pub p_roots: Vec<QVec>,
    pub levi_roots: Vec<QVec>,
    pub unipotent_roots: Vec<QVec>,
}

pub fn split_parabolic_roots(lambda: &[Rat], base: &RootSystem) -> ParabolicRoots {
    let mut p_roots = Vec::new();
    let mut levi = Vec::new();
    let mut unipotent = Vec::new();
    for r in &base.roots {
        let v = dot(r, lambda);
        if !v.is_negative() {
            p_roots.push(r.clone());
        }
        if v.is_zero() {
            levi.push(r.clone());
        } else if v.is_positive() {
            unipotent.push(r.clone());
        }
    }
    ParabolicRoots { p_roots, levi_roots: levi, unipotent_roots: unipotent }
}

// ---- constructors ---------------------------------------------------------

/// Split involution: -1 on the whole lattice.
pub fn theta_zero(base: &RootSystem) -> Result<InvolutionDatum, InvolutionError> {
    let m: QMat = mat_identity(base.dim)
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect();
    validate_involution(base, &m)
}

/// Inner involution of the type-A system with signature (p, q), written in
/// the maximally split basis: the coordinate permutation swapping i with
/// n+1-i on the first p and last p slots.
pub fn theta_pq(n: usize, p: usize, q: usize) -> Result<InvolutionDatum, InvolutionError> {
    if p + q != n || p > q || n < 2 {
        return Err(InvolutionError::UnexpectedType(format!("bad signature ({p},{q})")));
    }
    let base = RootSystem::build(&format!("A{}", n - 1))?;
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let j = if i < p || i >= q { n - 1 - i } else { i };
        m[j][i] = Rat::one();
    }
    validate_involution(&base, &m)
}

/// Outer involution of the even type-A system with symplectic fixed points:
/// adjacent coordinates are paired and negated.
pub fn theta_one(m_half: usize) -> Result<InvolutionDatum, InvolutionError> {
    let n = 2 * m_half;
    if n < 2 {
        return Err(InvolutionError::UnexpectedType("rank too small".into()));
    }
    let base = RootSystem::build(&format!("A{}", n - 1))?;
    let mut m = vec![vec![Rat::zero(); n]; n];
    for k in 0..m_half {
        m[2 * k + 1][2 * k] = -Rat::one();
        m[2 * k][2 * k + 1] = -Rat::one();
    }
    validate_involution(&base, &m)
}

/// Swap involution on a product of two copies, with the sign convention that
/// makes the antidiagonal split: (x, y) -> (-y, -x).
pub fn theta_diagonal(factor: &RootSystem) -> Result<InvolutionDatum, InvolutionError> {
    let base = RootSystem::product(&[factor.clone(), factor.clone()]);
    let d = factor.dim;
    let mut m = vec![vec![Rat::zero(); 2 * d]; 2 * d];
    for i in 0..d {
        m[i][d + i] = -Rat::one();
        m[d + i][i] = -Rat::one();
    }
    validate_involution(&base, &m)
}

/// Sign-flip involution on an orthogonal-type lattice: -1 on the first p
/// coordinates, +1 on the rest.
pub fn theta_signs(base: &RootSystem, p: usize) -> Result<InvolutionDatum, InvolutionError> {
    let mut m = mat_identity(base.dim);
    for (i, row) in m.iter_mut().enumerate() {
        if i < p {
            row[i] = -Rat::one();
        }
    }
    validate_involution(base, &m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramInvolution {
    Identity,
    Flip,
}

/// Index map of the nontrivial diagram automorphism, per base type.
pub fn flip_index_map(base: &RootSystem) -> Result<Vec<usize>, InvolutionError> {
    let k = base.rank();
    let letter: String = base.label.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    match letter.as_str() {
        "A" => Ok((0..k).map(|i| k - 1 - i).collect()),
        "D" => {
            let mut m: Vec<usize> = (0..k).collect();
            m.swap(k - 1, k - 2);
            Ok(m)
        }
        "E" if k == 6 => Ok(vec![5, 1, 4, 3, 2, 0]),
        _ => Err(InvolutionError::UnknownFlip(base.label.clone())),
    }
}

/// Lattice map induced by a diagram automorphism: permutes the simple roots
/// and fixes the orthogonal complement of their span.
pub fn diagram_map(base: &RootSystem, tau: DiagramInvolution) -> Result<QMat, InvolutionError> {
    let dim = base.dim;
    if tau == DiagramInvolution::Identity {
        return Ok(mat_identity(dim));
    }
    let index_map = flip_index_map(base)?;
    let complement = linalg::nullspace(&base.simples.clone());
    let mut basis: Vec<QVec> = base.simples.clone();
    basis.extend(complement.iter().cloned());
    let mut images: Vec<QVec> = index_map.iter().map(|&j| base.simples[j].clone()).collect();
    images.extend(complement.iter().cloned());
    // T * basis_k = images_k, column-stacked
    let b_cols: QMat =
        (0..dim).map(|i| basis.iter().map(|v| v[i].clone()).collect()).collect();
    let i_cols: QMat =
        (0..dim).map(|i| images.iter().map(|v| v[i].clone()).collect()).collect();
    let binv = mat_inverse(&b_cols).ok_or(InvolutionError::DependentWeights)?;
    Ok(mat_mul(&i_cols, &binv))
}

/// Builds the candidate involution -w_{0,I} tau from a painted diagram and
/// validates it. The construction is rejected, never repaired.
pub fn satake_build(
    base: &RootSystem,
    black: &[usize],
    tau: DiagramInvolution,
) -> Result<InvolutionDatum, InvolutionError> {
    for &b in black {
        if b >= base.rank() {
            return Err(InvolutionError::BadBlackNode(b));
        }
    }
    if tau == DiagramInvolution::Flip {
        let map = flip_index_map(base)?;
        let set: HashSet<usize> = black.iter().copied().collect();
        if !black.iter().all(|&b| set.contains(&map[b])) {
            return Err(InvolutionError::FlipMovesBlackNodes);
        }
    }
    let tau_mat = diagram_map(base, tau)?;
    let w0i = if black.is_empty() {
        mat_identity(base.dim)
    } else {
        let black_simples: Vec<QVec> =
            black.iter().map(|&b| base.simples[b].clone()).collect();
        let sub_roots: Vec<QVec> = base
            .roots
            .iter()
            .filter(|r| express_in_span(r, &black_simples).is_some())
            .cloned()
            .collect();
        let sub = RootSystem::from_roots("parabolic", base.dim, sub_roots, black_simples)?;
        sub.longest_element()?.matrix
    };
    let theta: QMat = mat_mul(&w0i, &tau_mat)
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect();
    validate_involution(base, &theta)
}

// ---- JSON descriptor ------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvolutionSpec {
    pub base_type: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub black_nodes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram_involution: Option<DiagramInvolution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_count: Option<usize>,
}

pub fn build_from_spec(spec: &InvolutionSpec) -> Result<InvolutionDatum, InvolutionError> {
    match spec.kind.as_str() {
        "transpose_inverse" => {
            let base = RootSystem::build(&spec.base_type)?;
            theta_zero(&base)
        }
        "pq" => {
            let base = RootSystem::build(&spec.base_type)?;
            let n = base.rank() + 1;
            let p = spec.p.ok_or_else(|| InvolutionError::UnexpectedType("missing p".into()))?;
            let q = spec.q.ok_or_else(|| InvolutionError::UnexpectedType("missing q".into()))?;
            theta_pq(n, p, q)
        }
        "symplectic" => {
            let base = RootSystem::build(&spec.base_type)?;
            let n = base.rank() + 1;
            if n % 2 != 0 {
                return Err(InvolutionError::UnexpectedType("odd rank for symplectic".into()));
            }
            theta_one(n / 2)
        }
        "diagonal" => {
            let factor = RootSystem::build(&spec.base_type)?;
            theta_diagonal(&factor)
        }
        "signs" => {
            let base = RootSystem::build(&spec.base_type)?;
            let p = spec
                .sign_count
                .or(spec.p)
                .ok_or_else(|| InvolutionError::UnexpectedType("missing sign count".into()))?;
            theta_signs(&base, p)
        }
        "satake" => {
            let base = RootSystem::build(&spec.base_type)?;
            let black = spec.black_nodes.clone().unwrap_or_default();
            let tau = spec.diagram_involution.unwrap_or(DiagramInvolution::Identity);
            satake_build(&base, &black, tau)
        }
        "matrix" => {
            let base = RootSystem::build(&spec.base_type)?;
            let rows = spec
                .matrix
                .as_ref()
                .ok_or_else(|| InvolutionError::UnexpectedType("missing matrix".into()))?;
            let m: QMat = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| crate::scalars::parse_rat(s))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(InvolutionError::UnexpectedType)?;
            validate_involution(&base, &m)
        }
        other => Err(InvolutionError::UnexpectedType(format!("unknown kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn restrict(d: &InvolutionDatum) -> RestrictedData {
        restricted_system(d).unwrap()
    }

    #[test]
    fn split_sl_n() {
        let base = RootSystem::build("A3").unwrap();
        let d = theta_zero(&base).unwrap();
        assert!(d.quasisplit);
        assert!(d.split);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "A3");
        assert!(rd.types.values().all(|&t| t == 1));
        assert!(rd.sigma.iter().all(|(i, j)| i == j));
        let fw = base.fundamental_weights().unwrap();
        for (s, w) in rd.slots.iter().zip(&fw) {
            assert_eq!(s.varpi, vscale(&rat(2), w));
        }
        assert!(rd.varpi_lattice_is_one_minus_theta_image().unwrap());
        assert!(rd.sigma_consistency());
    }

    #[test]
    fn sl4_signature_1_3() {
        let d = theta_pq(4, 1, 3).unwrap();
        assert_eq!(d.imaginary.len(), 2);
        assert!(!d.quasisplit);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "BC1");
        assert_eq!(rd.rank(), 1);
        assert!(rd.sigma_consistency());
        assert_eq!(rd.little_weyl_order, 2);
    }

    #[test]
    fn sl4_signature_2_2() {
        let d = theta_pq(4, 2, 2).unwrap();
        assert!(d.quasisplit);
        assert!(!d.split);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "C2");
        assert_eq!(rd.little_weyl_order, 8);
        assert!(rd.varpi_lattice_is_one_minus_theta_image().unwrap());
    }

    #[test]
    fn sl5_signature_2_3() {
        let d = theta_pq(5, 2, 3).unwrap();
        assert!(d.quasisplit, "q = p + 1 is quasisplit");
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "BC2");
        assert_eq!(rd.little_weyl_order, 8);
    }

    #[test]
    fn sl6_symplectic() {
        let d = theta_one(3).unwrap();
        assert!(!d.quasisplit);
        assert_eq!(d.imaginary.len(), 6);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "A2");
        assert!(rd.varpi_lattice_is_one_minus_theta_image().unwrap());
    }

    #[test]
    fn su21_type3_pair() {
        let d = theta_pq(3, 1, 2).unwrap();
        assert!(d.quasisplit);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "BC1");
        assert_eq!(rd.types.len(), 2);
        assert!(rd.types.values().all(|&t| t == 3));
        assert_eq!(rd.sigma.get(&0), Some(&1));
        assert!(rd.varpi_lattice_is_one_minus_theta_image().unwrap());
    }

    #[test]
    fn diagonal_case() {
        let factor = RootSystem::build("A2").unwrap();
        let d = theta_diagonal(&factor).unwrap();
        assert!(d.quasisplit);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "A2");
        assert_eq!(rd.little_weyl_order, 6);
        assert_eq!(rd.rank(), 2);
        assert!(rd.types.values().all(|&t| t == 2));
        assert!(rd.varpi_lattice_is_one_minus_theta_image().unwrap());
    }

    #[test]
    fn identity_theta_is_degenerate_but_valid() {
        let base = RootSystem::build("A2").unwrap();
        let d = validate_involution(&base, &mat_identity(3)).unwrap();
        assert_eq!(d.imaginary.len(), 6);
        let rd = restrict(&d);
        assert_eq!(rd.rank(), 0);
        assert_eq!(rd.restricted_label, "-");
        assert_eq!(rd.little_weyl_order, 1);
    }

    #[test]
    fn plain_swap_fails_positivity() {
        let factor = RootSystem::build("A1").unwrap();
        let base = RootSystem::product(&[factor.clone(), factor.clone()]);
        let mut m = vec![vec![Rat::zero(); 4]; 4];
        for i in 0..2 {
            m[i][2 + i] = Rat::one();
            m[2 + i][i] = Rat::one();
        }
        assert!(matches!(
            validate_involution(&base, &m),
            Err(InvolutionError::PositivityViolated(_))
        ));
    }

    #[test]
    fn satake_split_is_minus_id() {
        let base = RootSystem::build("A3").unwrap();
        let d = satake_build(&base, &[], DiagramInvolution::Identity).unwrap();
        assert!(d.split);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "A3");
    }

    #[test]
    fn satake_e6_flip_is_quasisplit_f4() {
        let base = RootSystem::build("E6").unwrap();
        let d = satake_build(&base, &[], DiagramInvolution::Flip).unwrap();
        assert!(d.quasisplit);
        assert!(!d.split);
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "F4");
        assert_eq!(rd.little_weyl_order, 1152);
    }

    #[test]
    fn satake_matches_symplectic_pairing() {
        let base = RootSystem::build("A3").unwrap();
        let d = satake_build(&base, &[0, 2], DiagramInvolution::Identity).unwrap();
        let rd = restrict(&d);
        assert_eq!(rd.restricted_label, "A1");
    }

    #[test]
    fn minus_theta_plus_quasisplit() {
        let base = RootSystem::build("A2").unwrap();
        let d = theta_zero(&base).unwrap();
        let fw = base.fundamental_weights().unwrap();
        let (img, _) = minus_theta_plus(&fw[0], &d);
        assert_eq!(img, fw[0]);
    }

    #[test]
    fn parabolic_partition() {
        let base = RootSystem::build("A2").unwrap();
        let fw = base.fundamental_weights().unwrap();
        let co = RootSystem::coroot(&fw[0]);
        let parts = split_parabolic_roots(&co, &base);
        assert_eq!(parts.unipotent_roots.len(), 2);
        assert_eq!(parts.levi_roots.len(), 2);
        let zero = zero_vec(3);
        let all = split_parabolic_roots(&zero, &base);
        assert_eq!(all.levi_roots.len(), 6);
        assert!(all.unipotent_roots.is_empty());
    }

    #[test]
    fn lattices_sl2_split() {
        let base = RootSystem::build("A1").unwrap();
        let d = theta_zero(&base).unwrap();
        let rd = restrict(&d);
        let lat = lattices(&rd).unwrap();
        let alpha = base.simples[0].clone();
        assert!(linalg::lattice_equal(&lat.p_theta, &[alpha.clone()]));
        assert!(linalg::lattice_equal(&lat.r_theta, &[alpha.clone()]));
        let half_coroot = vscale(&ratio(1, 2), &RootSystem::coroot(&alpha));
        assert!(linalg::lattice_equal(&lat.cochar_p, &[half_coroot.clone()]));
        assert!(linalg::lattice_equal(&lat.cochar_r, &[half_coroot]));
        assert_eq!(lat.cochar_p_antidominant.generators(), &[vec![rat(-1)]]);
    }
}
