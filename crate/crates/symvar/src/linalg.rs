//! Exact rational linear algebra and integer lattice routines.

use crate::scalars::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type QVec = Vec<Rat>;
pub type QMat = Vec<Vec<Rat>>;

pub fn zero_vec(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(c: &Rat, a: &[Rat]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_identity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_vec(m: &QMat, v: &[Rat]) -> QVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let p = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| (0..k).fold(Rat::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mat_transpose(a: &QMat) -> QMat {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_eq(a: &QMat, b: &QMat) -> bool {
    a == b
}

pub fn mat_is_identity(a: &QMat) -> bool {
    a == &mat_identity(a.len())
}

/// Gauss-Jordan inverse; None when singular.
pub fn mat_inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: Vec<QVec> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row echelon reduction in place; returns pivot columns.
fn row_reduce(m: &mut Vec<QVec>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[QVec]) -> usize {
    let mut m = a.to_vec();
    row_reduce(&mut m).len()
}

/// One solution of A x = b, or None if inconsistent. Free variables are zero.
pub fn solve(a: &QMat, b: &[Rat]) -> Option<QVec> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    // inconsistency: pivot in the rhs column
    if pivots.iter().any(|&c| c == cols) {
        return None;
    }
    let mut x = zero_vec(cols);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right nullspace of A.
pub fn nullspace(a: &QMat) -> Vec<QVec> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let pivots = row_reduce(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = zero_vec(cols);
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Expresses x as a combination of the given (not necessarily independent)
/// vectors; returns the coefficient vector if x lies in their span.
pub fn express_in_span(x: &[Rat], gens: &[QVec]) -> Option<QVec> {
    if gens.is_empty() {
        return if is_zero_vec(x) { Some(vec![]) } else { None };
    }
    // columns are generators
    let a: QMat = (0..x.len()).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    solve(&a, x)
}

pub fn common_denominator(vs: &[QVec]) -> BigInt {
    let mut d = BigInt::one();
    for v in vs {
        for x in v {
            d = d.lcm(x.denom());
        }
    }
    d
}

pub fn scale_to_int(v: &[Rat], d: &BigInt) -> Vec<BigInt> {
    v.iter()
        .map(|x| {
            let scaled = x * Rat::from_integer(d.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect()
}

/// Canonical Hermite normal form of the row lattice. Zero rows dropped,
/// pivots positive, entries above pivots reduced to [0, pivot).
pub fn hnf_rows(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in row..m.len() {
                if !m[i][col].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if m[i][col].abs() < m[b][col].abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            m.swap(row, b);
            if m[row][col].is_negative() {
                for x in m[row].iter_mut() {
                    *x = -&*x;
                }
            }
            let mut done = true;
            let pivot = m[row][col].clone();
            for i in row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&pivot);
                    for j in 0..cols {
                        let t = &m[row][j] * &q;
                        m[i][j] = &m[i][j] - &t;
                    }
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !m[row][col].is_zero() {
            // reduce entries above the pivot
            let pivot = m[row][col].clone();
            for i in 0..row {
                let q = m[i][col].div_floor(&pivot);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &m[row][j] * &q;
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
            row += 1;
        }
    }
    m.truncate(row);
    m
}

/// Equality of the lattices (Z-spans) generated by two families.
pub fn lattice_equal(a: &[QVec], b: &[QVec]) -> bool {
    let d = {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        common_denominator(&all)
    };
    let ha = hnf_rows(a.iter().map(|g| scale_to_int(g, &d)).collect());
    let hb = hnf_rows(b.iter().map(|g| scale_to_int(g, &d)).collect());
    ha == hb
}

/// Membership of x in the Z-span of gens.
pub fn in_lattice(x: &[Rat], gens: &[QVec]) -> bool {
    let mut all = gens.to_vec();
    all.push(x.to_vec());
    let d = common_denominator(&all);
    let h = hnf_rows(gens.iter().map(|g| scale_to_int(g, &d)).collect());
    let haug = hnf_rows(all.iter().map(|g| scale_to_int(g, &d)).collect());
    h == haug
}

/// Dual basis within the span of an independent family, with respect to the
/// ambient dot product: returns d_1..d_k in span(basis) with <d_i, b_j> = δ.
pub fn dual_basis_in_span(basis: &[QVec]) -> Option<Vec<QVec>> {
    let k = basis.len();
    let gram: QMat = (0..k)
        .map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect())
        .collect();
    let inv = mat_inverse(&gram)?;
    Some(
        (0..k)
            .map(|i| {
                let mut v = zero_vec(basis[0].len());
                for j in 0..k {
                    v = vadd(&v, &vscale(&inv[i][j], &basis[j]));
                }
                v
            })
            .collect(),
    )
}

/// Fourier-Motzkin feasibility for systems <a, x> >= b on Q^dim. Returns a
/// feasible point when one exists. Intended for small desk-scale systems.
pub fn fm_feasible_dim(dim: usize, rows: &[(QVec, Rat)]) -> Option<QVec> {
    const ROW_CAP: usize = 200_000;
    if dim == 0 {
        return if rows.iter().all(|(_, b)| !b.is_positive()) { Some(vec![]) } else { None };
    }
    if rows.is_empty() {
        return Some(zero_vec(dim));
    }
    let k = dim - 1;
    let mut lowers: Vec<(QVec, Rat)> = Vec::new(); // x_k >= expr
    let mut uppers: Vec<(QVec, Rat)> = Vec::new(); // x_k <= expr
    let mut rest: Vec<(QVec, Rat)> = Vec::new();
    for (a, b) in rows {
        let c = &a[k];
        if c.is_zero() {
            rest.push((a[..k].to_vec(), b.clone()));
        } else {
            // <a', x'> + c x_k >= b  =>  x_k >=/<= (b - <a',x'>)/c
            let inv = c.recip();
            let coeffs: QVec = a[..k].iter().map(|t| -(t * &inv)).collect();
            let cons = b * &inv;
            if c.is_positive() {
                lowers.push((coeffs, cons));
            } else {
                uppers.push((coeffs, cons));
            }
        }
    }
    // each lower must be <= each upper
    for (lc, lb) in &lowers {
        for (uc, ub) in &uppers {
            let a: QVec = uc.iter().zip(lc).map(|(u, l)| u - l).collect();
            let b = lb - ub;
            rest.push((a, b));
            if rest.len() > ROW_CAP {
                return None;
            }
        }
    }
    let sub = fm_feasible_dim(k, &rest)?;
    let eval = |row: &(QVec, Rat)| -> Rat { dot(&row.0, &sub) + &row.1 };
    let lo = lowers.iter().map(eval).max();
    let hi = uppers.iter().map(eval).min();
    let xk = match (lo, hi) {
        (None, None) => Rat::zero(),
        (Some(l), None) => l + Rat::one(),
        (None, Some(h)) => h - Rat::one(),
        (Some(l), Some(h)) => {
            if l > h {
                return None;
            }
            (&l + &h) / rat2()
        }
    };
    let mut point = sub;
    point.push(xk);
    Some(point)
}

/// Feasibility with the dimension read from the first row.
pub fn fm_feasible(rows: &[(QVec, Rat)]) -> Option<QVec> {
    let dim = rows.first().map(|(a, _)| a.len()).unwrap_or(0);
    fm_feasible_dim(dim, rows)
}

fn rat2() -> Rat {
    Rat::from_integer(BigInt::from(2))
}

/// Primitive integer vector on the ray through v (v nonzero rational).
pub fn primitive_ray(v: &[Rat]) -> Vec<BigInt> {
    let d = common_denominator(&[v.to_vec()]);
    let ints = scale_to_int(v, &d);
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, ratio};

    fn qv(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn inverse_and_solve() {
        let a = vec![qv(&[2, 1]), qv(&[1, 1])];
        let inv = mat_inverse(&a).unwrap();
        assert!(mat_is_identity(&mat_mul(&a, &inv)));
        let x = solve(&a, &qv(&[3, 2])).unwrap();
        assert_eq!(x, qv(&[1, 1]));
        assert!(solve(&vec![qv(&[1, 1]), qv(&[1, 1])], &qv(&[0, 1])).is_none());
    }

    #[test]
    fn nullspace_dim() {
        let a = vec![qv(&[1, 2, 3])];
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&a[0], v).is_zero());
        }
    }

    #[test]
    fn hnf_lattice_equality() {
        let a = vec![qv(&[2, 0]), qv(&[0, 2]), qv(&[1, 1])];
        let b = vec![qv(&[1, 1]), qv(&[1, -1])];
        assert!(lattice_equal(&a, &b));
        assert!(in_lattice(&qv(&[3, 1]), &a));
        assert!(!in_lattice(&qv(&[1, 0]), &a));
        let half = vec![vec![ratio(1, 2), ratio(1, 2)], qv(&[0, 1])];
        assert!(!lattice_equal(&a, &half));
        assert!(in_lattice(&qv(&[1, 0]), &half));
    }

    #[test]
    fn fm_basic() {
        // x >= 1, -x >= -3  => feasible
        let rows = vec![(qv(&[1]), rat(1)), (qv(&[-1]), rat(-3))];
        let p = fm_feasible(&rows).unwrap();
        assert!(p[0] >= rat(1) && p[0] <= rat(3));
        // x >= 1, -x >= 0 => infeasible
        let rows = vec![(qv(&[1]), rat(1)), (qv(&[-1]), rat(0))];
        assert!(fm_feasible(&rows).is_none());
    }

    #[test]
    fn dual_basis() {
        let basis = vec![qv(&[1, 0, 0]), qv(&[1, 1, 0])];
        let dual = dual_basis_in_span(&basis).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { rat(1) } else { rat(0) };
                assert_eq!(dot(&dual[i], &basis[j]), expect);
            }
        }
    }
}
