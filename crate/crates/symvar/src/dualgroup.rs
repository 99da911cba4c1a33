//! Dual groups of symmetric varieties: reduced restricted systems, the
//! spherical-root normalization, and the based root datum of the dual group.

use crate::involution::{InvolutionError, RestrictedData};
use crate::linalg::{self, dot, vscale, QVec};
use crate::roots::{identify_cartan_type, weyl_order_of_label, RootError, RootSystem};
use crate::scalars::{rat, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DualGroupError {
    #[error("spherical root ray misses the root lattice")]
    EmptyRayIntersection,
    #[error("normalized roots do not form a root system: {0}")]
    BadNormalization(String),
    #[error("dual Weyl order {got} differs from the little Weyl order {expected}")]
    WeylOrderMismatch { got: u128, expected: u128 },
    #[error("coroots of the normalized system leave the cocharacter lattice")]
    CorootsOutsideLattice,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
}

/// Reduced version of a restricted root set: the roots whose half is not a
/// root.
pub fn reduced_restricted(phi_theta: &[QVec]) -> Vec<QVec> {
    let half = crate::scalars::ratio(1, 2);
    phi_theta
        .iter()
        .filter(|r| {
            let h = vscale(&half, r);
            !phi_theta.contains(&h)
        })
        .cloned()
        .collect()
}

/// Reduced restricted simple roots, in slot order.
pub fn reduced_simples(rd: &RestrictedData) -> Vec<QVec> {
    rd.slots.iter().map(|s| s.root.clone()).collect()
}

/// Normalization of spherical roots: each generator is replaced by the
/// primitive point of its ray inside the root lattice of the base system.
/// Returns the normalized generators together with the applied factors.
pub fn normalize_spherical_roots(
    generators: &[QVec],
    base: &RootSystem,
) -> Result<(Vec<QVec>, Vec<Rat>), DualGroupError> {
    let root_lattice: Vec<QVec> = base.simples.clone();
    let mut out = Vec::new();
    let mut factors = Vec::new();
    for g in generators {
        let coeffs = linalg::express_in_span(g, &root_lattice)
            .ok_or(DualGroupError::EmptyRayIntersection)?;
        // smallest t > 0 with t*g in the lattice: t = lcm of denominators
        // divided by the gcd of the scaled numerators
        let mut lcm = num_bigint::BigInt::one();
        for c in &coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<num_bigint::BigInt> = coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut gcd = num_bigint::BigInt::from(0);
        for s in &scaled {
            gcd = gcd.gcd(s);
        }
        if gcd.is_zero() {
            return Err(DualGroupError::EmptyRayIntersection);
        }
        let t = Rat::new(lcm, gcd);
        let t = if t.is_negative() { -t } else { t };
        factors.push(t.clone());
        out.push(vscale(&t, g));
    }
    Ok((out, factors))
}

/// Quadruple (character lattice, simple roots, cocharacter lattice, simple
/// coroots) presented by explicit bases and vectors in the ambient space.
#[derive(Debug, Clone)]
pub struct BasedRootDatum {
    pub char_lattice: Vec<QVec>,
    pub simple_roots: Vec<QVec>,
    pub cochar_lattice: Vec<QVec>,
    pub simple_coroots: Vec<QVec>,
}

impl BasedRootDatum {
    /// Langlands dual: swap the two sides.
    pub fn dual(&self) -> BasedRootDatum {
        BasedRootDatum {
            char_lattice: self.cochar_lattice.clone(),
            simple_roots: self.simple_coroots.clone(),
            cochar_lattice: self.char_lattice.clone(),
            simple_coroots: self.simple_roots.clone(),
        }
    }

    /// Cartan pairing <coroot_i, root_j>.
    pub fn cartan_matrix(&self) -> Vec<QVec> {
        self.simple_coroots
            .iter()
            .map(|c| self.simple_roots.iter().map(|r| dot(c, r)).collect())
            .collect()
    }
}

/// Computed dual-group data for a symmetric pair.
#[derive(Debug, Clone)]
pub struct DualGroupData {
    /// restricted type (possibly non-reduced)
    pub delta_theta_type: String,
    /// type of the reduced restricted system
    pub delta_theta_red_type: String,
    /// type of the normalized spherical system
    pub delta_variety_type: String,
    /// algebra name of the dual group (sl/so/sp/e/f/g with rank subscripts)
    pub dual_algebra: String,
    /// normalization factors applied per slot
    pub normalization_factors: Vec<Rat>,
    pub datum: BasedRootDatum,
}

/// Algebra name of the dual group of a system with the given type.
pub fn dual_algebra_name(variety_type: &str) -> Result<String, RootError> {
    if variety_type.contains('x') {
        let parts = variety_type
            .split('x')
            .map(dual_algebra_name)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(parts.join("+"));
    }
    let letters: String =
        variety_type.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let rank: usize = variety_type[letters.len()..]
        .parse()
        .map_err(|_| RootError::UnknownLabel(variety_type.to_string()))?;
    Ok(match letters.as_str() {
        "A" => format!("sl{}", rank + 1),
        "B" => format!("sp{}", 2 * rank),
        "C" => format!("so{}", 2 * rank + 1),
        "D" => format!("so{}", 2 * rank),
        "E" => format!("e{rank}"),
        "F" => "f4".to_string(),
        "G" => "g2".to_string(),
        _ => return Err(RootError::UnknownLabel(variety_type.to_string())),
    })
}

/// The based root datum of the dual group of the symmetric variety: the
/// character lattice of its maximal torus is the cocharacter lattice dual to
/// the restricted weight lattice, and its simple roots are the coroots of
/// the normalized spherical roots.
pub fn dual_group_datum(rd: &RestrictedData) -> Result<DualGroupData, DualGroupError> {
    let delta_theta_type = rd.restricted_label.clone();
    let simples = reduced_simples(rd);
    let reduced = reduced_restricted(&rd.phi_theta);
    // the reduction of BC_k keeps the short roots, which is B_k by
    // convention; identification alone cannot orient a rank-2 chain
    let delta_theta_red_type = if reduced.is_empty() {
        "-".to_string()
    } else {
        let computed = identify_cartan_type(&reduced, Some(&simples))?;
        reduced_label_of(&delta_theta_type, &computed)?
    };
    let (normalized, factors) = normalize_spherical_roots(&simples, &rd.datum.base)?;
    let delta_variety_type = if normalized.is_empty() {
        "-".to_string()
    } else {
        let closure = reflection_closure(&normalized)
            .map_err(|e| DualGroupError::BadNormalization(e.to_string()))?;
        identify_cartan_type(&closure, Some(&normalized))?
    };
    let dual_algebra = if normalized.is_empty() {
        "-".to_string()
    } else {
        dual_algebra_name(&delta_variety_type)?
    };
    // Weyl group of the output must be the little Weyl group
    if !normalized.is_empty() {
        let got = weyl_order_of_label(&delta_variety_type)?;
        if got != rd.little_weyl_order {
            return Err(DualGroupError::WeylOrderMismatch {
                got,
                expected: rd.little_weyl_order,
            });
        }
    }
    // the dominant chamber of the dual group is cut out by the same rays
    for (n, s) in normalized.iter().zip(&simples) {
        let c = dot(n, s);
        if !c.is_positive() {
            return Err(DualGroupError::BadNormalization(
                "normalized root flips its ray".into(),
            ));
        }
    }
    let coroots: Vec<QVec> = normalized.iter().map(|g| RootSystem::coroot(g)).collect();
    let cochar = rd.varpi_duals();
    for c in &coroots {
        if !linalg::in_lattice(c, &cochar) {
            return Err(DualGroupError::CorootsOutsideLattice);
        }
    }
    let datum = BasedRootDatum {
        char_lattice: cochar,
        simple_roots: coroots,
        cochar_lattice: rd.varpis(),
        simple_coroots: normalized,
    };
    Ok(DualGroupData {
        delta_theta_type,
        delta_theta_red_type,
        delta_variety_type,
        dual_algebra,
        normalization_factors: factors,
        datum,
    })
}

/// Label of the reduced system: non-reduced components reduce to type B of
/// the same rank (A1 at rank one); reduced components keep their label. The
/// label computed from the reduced root set must agree up to the rank-2
/// chain orientation.
fn reduced_label_of(restricted: &str, computed: &str) -> Result<String, DualGroupError> {
    let expected: Vec<String> = restricted
        .split('x')
        .map(|part| {
            if let Some(rank) = part.strip_prefix("BC") {
                if rank == "1" {
                    "A1".to_string()
                } else {
                    format!("B{rank}")
                }
            } else {
                part.to_string()
            }
        })
        .collect();
    let expected = expected.join("x");
    let synonym = |a: &str, b: &str| {
        a == b || (a == "B2" && b == "C2") || (a == "C2" && b == "B2")
    };
    let ok = expected
        .split('x')
        .zip(computed.split('x'))
        .all(|(e, c)| synonym(e, c))
        && expected.split('x').count() == computed.split('x').count();
    if !ok {
        return Err(DualGroupError::BadNormalization(format!(
            "reduced label {computed} incompatible with restricted type {restricted}"
        )));
    }
    Ok(expected)
}

/// Root set generated by a simple system: the orbit of the simples and
/// their negatives under the group generated by the simple reflections.
pub fn reflection_closure(simples: &[QVec]) -> Result<Vec<QVec>, RootError> {
    use std::collections::{HashSet, VecDeque};
    let mut set: HashSet<QVec> = HashSet::new();
    let mut queue: VecDeque<QVec> = VecDeque::new();
    for s in simples {
        for v in [s.clone(), linalg::vneg(s)] {
            if set.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    let cap = 1 << 16;
    while let Some(b) = queue.pop_front() {
        for a in simples {
            let n2 = dot(a, a);
            let c = rat(2) * dot(a, &b) / n2;
            if !c.denom().is_one() {
                return Err(RootError::NotRootSystem(
                    "non-integral Cartan number in closure".into(),
                ));
            }
            let refl = RootSystem::reflect(&b, a);
            if set.insert(refl.clone()) {
                queue.push_back(refl);
            }
        }
        if set.len() > cap {
            return Err(RootError::NotRootSystem("reflection closure does not stop".into()));
        }
    }
    let mut out: Vec<QVec> = set.into_iter().collect();
    out.sort();
    Ok(out)
}

/// One row of the classification table; the catalogue fixture the computed
/// values are diffed against.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Table2Row {
    pub label: String,
    pub g_type: String,
    pub g_dual_type: String,
    pub real_form: String,
    pub fixed_subalgebra_type: String,
    pub delta_theta_type: String,
    pub delta_theta_red_type: String,
    pub delta_variety_type: String,
    pub dual_variety_algebra_type: String,
    pub notes: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::{restricted_system, theta_pq, theta_signs, theta_zero};

    #[test]
    fn reduced_bc_is_b() {
        let rs = RootSystem::build("BC2").unwrap();
        let red = reduced_restricted(&rs.roots);
        assert_eq!(identify_cartan_type(&red, None).unwrap(), "B2");
        let c = RootSystem::build("C3").unwrap();
        assert_eq!(reduced_restricted(&c.roots).len(), c.roots.len());
    }

    #[test]
    fn split_a_type_stays_put() {
        let base = RootSystem::build("A3").unwrap();
        let rd = restricted_system(&theta_zero(&base).unwrap()).unwrap();
        let dual = dual_group_datum(&rd).unwrap();
        assert_eq!(dual.delta_theta_type, "A3");
        assert_eq!(dual.delta_theta_red_type, "A3");
        assert_eq!(dual.delta_variety_type, "A3");
        assert_eq!(dual.dual_algebra, "sl4");
        assert!(dual.normalization_factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn signature_rows_get_symplectic_duals() {
        // restricted BC_p, reduced B_p, variety B_p when p < q
        let rd = restricted_system(&theta_pq(5, 2, 3).unwrap()).unwrap();
        let dual = dual_group_datum(&rd).unwrap();
        assert_eq!(dual.delta_theta_type, "BC2");
        assert_eq!(dual.delta_theta_red_type, "B2");
        assert_eq!(dual.delta_variety_type, "B2");
        assert_eq!(dual.dual_algebra, "sp4");
    }

    #[test]
    fn equal_signature_normalization_swaps_c_to_b() {
        // p = q: restricted C_n, but the short roots double in the root
        // lattice, so the variety system is B_n
        let rd = restricted_system(&theta_pq(4, 2, 2).unwrap()).unwrap();
        let dual = dual_group_datum(&rd).unwrap();
        assert_eq!(dual.delta_theta_type, "C2");
        assert_eq!(dual.delta_theta_red_type, "C2");
        assert_eq!(dual.delta_variety_type, "B2");
        assert_eq!(dual.dual_algebra, "sp4");
        assert!(!dual.normalization_factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn orthogonal_signature_normalization_swaps_b_to_c() {
        let base = RootSystem::build("D4").unwrap();
        let rd = restricted_system(&theta_signs(&base, 2).unwrap()).unwrap();
        let dual = dual_group_datum(&rd).unwrap();
        assert_eq!(dual.delta_theta_type, "B2");
        assert_eq!(dual.delta_theta_red_type, "B2");
        assert_eq!(dual.delta_variety_type, "C2");
        assert_eq!(dual.dual_algebra, "so5");
    }

    #[test]
    fn langlands_double_dual() {
        let rd = restricted_system(&theta_pq(4, 2, 2).unwrap()).unwrap();
        let dual = dual_group_datum(&rd).unwrap();
        let dd = dual.datum.dual();
        assert_eq!(dd.simple_roots, dual.datum.simple_coroots);
        assert_eq!(dd.simple_coroots, dual.datum.simple_roots);
    }

    #[test]
    fn b_type_split_dual_is_symplectic() {
        let base = RootSystem::build("B3").unwrap();
        let rd = restricted_system(&theta_zero(&base).unwrap()).unwrap();
        let dual = dual_group_datum(&rd).unwrap();
        assert_eq!(dual.delta_variety_type, "B3");
        assert_eq!(dual.dual_algebra, "sp6");
    }
}
