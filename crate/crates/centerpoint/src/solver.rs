//! The finite point set attached to the center of a group algebra.
//!
//! Each irreducible representation contributes one point whose coordinates
//! are the scalars by which the class sums act.  The points are recovered as
//! the joint spectrum of the commuting class-multiplication matrices over a
//! prime field chosen so that the algebra splits completely, then lifted
//! exactly to `Q` or `Q(zeta_m)` through root-of-unity multiplicities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classalg::ClassAlgebra;
use crate::group::{ClassPartition, GroupTable};
use crate::idempotent;
use crate::linalg::{self, FpField, Mat};
use crate::modp;
use crate::scalar::{
    rational_reconstruct, CycElem, FieldContext, Rat, Scalar,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("failed to split the center into one-dimensional joint eigenspaces: {0}")]
    SplitFailure(String),
    #[error("exact lift of modular points failed: {0}")]
    LiftFailure(String),
}

/// The point set, one coordinate vector per irreducible representation.
///
/// Coordinates follow the conjugacy-class order; the identity-class
/// coordinate is stored explicitly and equals 1.  Points are sorted
/// lexicographically by a canonical coordinate comparison, which fixes the
/// output order deterministically (the bijection between points and classes
/// carries no extra meaning).
#[derive(Clone, Debug, PartialEq)]
pub struct PointTable {
    field: FieldContext,
    points: Vec<Vec<Scalar>>,
}

impl PointTable {
    pub fn new(field: FieldContext, mut points: Vec<Vec<Scalar>>) -> Self {
        sort_points(&mut points);
        PointTable { field, points }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Scalar] {
        &self.points[i]
    }

    /// Raw residues for a prime-field table.
    pub fn residues(&self) -> Option<Vec<Vec<u64>>> {
        self.points
            .iter()
            .map(|pt| {
                pt.iter()
                    .map(|s| match s {
                        Scalar::PrimeField { residue, .. } => Some(*residue),
                        _ => None,
                    })
                    .collect()
            })
            .collect()
    }
}

fn sort_points(points: &mut [Vec<Scalar>]) {
    points.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            match x.canonical_cmp(y) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });
}

/// Smallest prime `p > 4|G|^2` with `p = 1 (mod exponent)`.
///
/// Such a prime keeps the characteristic away from `|G|`, puts every
/// eigenvalue of the class-multiplication matrices inside `F_p`, and leaves
/// enough headroom for rational reconstruction of all lifted values.
pub fn choose_solving_prime(group: &GroupTable) -> u64 {
    let order = group.order() as u64;
    let m = group.exponent();
    let bound = 4 * order * order;
    let mut candidate = bound + 1;
    let rem = candidate % m;
    if rem != 1 % m {
        candidate += (1 + m - rem) % m;
    }
    loop {
        if modp::is_prime(candidate) && order % candidate != 0 {
            return candidate;
        }
        candidate += m;
    }
}

/// Root-of-unity image used consistently by lifting and projection: the
/// smallest primitive root of `p` raised to `(p-1)/m`.
pub fn zeta_image_mod_p(p: u64, m: u64) -> u64 {
    assert_eq!((p - 1) % m, 0, "no order-{m} root exists mod {p}");
    let g = modp::smallest_primitive_root(p);
    modp::powmod(g, (p - 1) / m, p)
}

const MAX_SPLIT_ATTEMPTS: usize = 64;

/// Joint eigenspace decomposition of the commuting class-multiplication
/// matrices over `F_p`.
///
/// A seeded random combination of the matrices is formed, its eigenvalues
/// are found by root-scanning the characteristic polynomial over `F_p`, and
/// eigenspaces of dimension above one are split recursively with fresh
/// combinations.  Every one-dimensional joint eigenspace yields one point.
pub fn solve_points_mod_p(
    algebra: &ClassAlgebra,
    p: u64,
    seed: u64,
) -> Result<PointTable, SolveError> {
    let k = algebra.num_classes();
    let f = FpField(p);
    let mats: Vec<Mat<u64>> = (0..k)
        .map(|l| {
            let m = algebra.mult_matrix(l);
            Mat::from_fn(k, k, |i, j| m.at(i, j) % p)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut leaves: Vec<Vec<u64>> = Vec::new();
    split_subspace(&f, &mats, ambient, &mut rng, &mut leaves)?;
    if leaves.len() != k {
        return Err(SolveError::SplitFailure(format!(
            "found {} joint eigenvectors, expected {}",
            leaves.len(),
            k
        )));
    }
    let mut points = Vec::with_capacity(k);
    for v in &leaves {
        let pivot = v
            .iter()
            .position(|&x| x != 0)
            .ok_or_else(|| SolveError::SplitFailure("zero eigenvector".into()))?;
        let pivot_inv = modp::invmod(v[pivot], p);
        let mut coords = Vec::with_capacity(k);
        for mat in &mats {
            let image = linalg::mat_vec(&f, mat, v);
            let a = modp::mulmod(image[pivot], pivot_inv, p);
            // the joint eigenvector property must hold exactly
            for (iw, iv) in image.iter().zip(v) {
                if *iw != modp::mulmod(a, *iv, p) {
                    return Err(SolveError::SplitFailure(
                        "leaf vector is not a joint eigenvector".into(),
                    ));
                }
            }
            coords.push(Scalar::PrimeField { residue: a, modulus: p });
        }
        points.push(coords);
    }
    let table = PointTable::new(FieldContext::PrimeField { modulus: p }, points);
    for w in table.points().windows(2) {
        if w[0] == w[1] {
            return Err(SolveError::SplitFailure("points are not pairwise distinct".into()));
        }
    }
    Ok(table)
}

fn split_subspace(
    f: &FpField,
    mats: &[Mat<u64>],
    basis: Vec<Vec<u64>>,
    rng: &mut ChaCha8Rng,
    leaves: &mut Vec<Vec<u64>>,
) -> Result<(), SolveError> {
    let p = f.0;
    let dim = basis.len();
    if dim == 0 {
        return Ok(());
    }
    if dim == 1 {
        leaves.push(basis.into_iter().next().unwrap());
        return Ok(());
    }
    for _attempt in 0..MAX_SPLIT_ATTEMPTS {
        let r: Vec<u64> = (0..mats.len()).map(|_| rng.random_range(0..p)).collect();
        let combo = random_combination(f, mats, &r);
        let restricted = match restrict_to_subspace(f, &combo, &basis) {
            Some(c) => c,
            None => {
                return Err(SolveError::SplitFailure(
                    "subspace is not invariant under the center".into(),
                ))
            }
        };
        let poly = charpoly(f, &restricted);
        let roots = scan_roots(p, &poly);
        if roots.is_empty() || (roots.len() == 1 && dim > 1 && {
            // a single eigenvalue: only useful if the eigenspace is proper
            let kern = eigenspace(f, &restricted, roots[0]);
            kern.len() == dim
        }) {
            continue; // this combination does not separate anything
        }
        let mut consumed = 0usize;
        let mut sub_bases = Vec::new();
        for mu in roots {
            let kern = eigenspace(f, &restricted, mu);
            consumed += kern.len();
            let sub: Vec<Vec<u64>> = kern
                .iter()
                .map(|coords| {
                    let mut v = vec![0u64; basis[0].len()];
                    for (j, c) in coords.iter().enumerate() {
                        if *c != 0 {
                            for (vi, bi) in v.iter_mut().zip(&basis[j]) {
                                *vi = modp::addmod(*vi, modp::mulmod(*c, *bi, p), p);
                            }
                        }
                    }
                    v
                })
                .collect();
            sub_bases.push(sub);
        }
        if consumed != dim {
            // defective restriction: the algebra does not split over this
            // prime, which violates the precondition
            return Err(SolveError::SplitFailure(format!(
                "eigenspaces span {consumed} of {dim} dimensions; non-semisimple reduction"
            )));
        }
        for sub in sub_bases {
            split_subspace(f, mats, sub, rng, leaves)?;
        }
        return Ok(());
    }
    Err(SolveError::SplitFailure(format!(
        "no separating combination found after {MAX_SPLIT_ATTEMPTS} attempts"
    )))
}

fn random_combination(f: &FpField, mats: &[Mat<u64>], r: &[u64]) -> Mat<u64> {
    let n = mats[0].rows;
    let p = f.0;
    Mat::from_fn(n, n, |i, j| {
        let mut acc = 0u64;
        for (mat, &coef) in mats.iter().zip(r) {
            acc = modp::addmod(acc, modp::mulmod(coef, *mat.at(i, j), p), p);
        }
        acc
    })
}

/// Matrix of the action on the span of `basis`, or `None` if the span is not
/// invariant.
fn restrict_to_subspace(f: &FpField, m: &Mat<u64>, basis: &[Vec<u64>]) -> Option<Mat<u64>> {
    let dim = basis.len();
    let mut cols = Vec::with_capacity(dim);
    for b in basis {
        let image = linalg::mat_vec(f, m, b);
        let coords = linalg::coordinates_in_basis(f, basis, &image)?;
        cols.push(coords);
    }
    Some(Mat::from_fn(dim, dim, |i, j| cols[j][i]))
}

/// Characteristic polynomial `det(xI - M)`, ascending coefficients, monic:
/// similarity reduction to upper Hessenberg form followed by the standard
/// leading-minor recurrence.  Needs no divisions beyond nonzero pivots, so it
/// works over every prime field regardless of size.
fn charpoly(f: &FpField, m: &Mat<u64>) -> Vec<u64> {
    let n = m.rows;
    let p = f.0;
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&r| *h.at(r, c) != 0) else {
            continue;
        };
        if piv != c + 1 {
            // similarity swap of rows and columns piv <-> c+1
            for j in 0..n {
                let (a, b) = (*h.at(piv, j), *h.at(c + 1, j));
                h.set(piv, j, b);
                h.set(c + 1, j, a);
            }
            for i in 0..n {
                let (a, b) = (*h.at(i, piv), *h.at(i, c + 1));
                h.set(i, piv, b);
                h.set(i, c + 1, a);
            }
        }
        let inv = modp::invmod(*h.at(c + 1, c), p);
        for r in c + 2..n {
            if *h.at(r, c) == 0 {
                continue;
            }
            let factor = modp::mulmod(*h.at(r, c), inv, p);
            // row r -= factor * row c+1, then column c+1 += factor * column r
            for j in 0..n {
                let v = modp::submod(*h.at(r, j), modp::mulmod(factor, *h.at(c + 1, j), p), p);
                h.set(r, j, v);
            }
            for i in 0..n {
                let v = modp::addmod(*h.at(i, c + 1), modp::mulmod(factor, *h.at(i, r), p), p);
                h.set(i, c + 1, v);
            }
        }
    }
    // p_k(x) = (x - h[k-1][k-1]) p_(k-1)(x)
    //          - sum_i h[i][k-1] (prod_(j=i+1..k-1) h[j][j-1]) p_i(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1u64]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; prev.len() + 1];
        let diag = *h.at(k - 1, k - 1);
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = modp::addmod(pk[d + 1], c, p);
            pk[d] = modp::submod(pk[d], modp::mulmod(diag, c, p), p);
        }
        let mut run = 1u64;
        for i in (0..k.saturating_sub(1)).rev() {
            run = modp::mulmod(run, *h.at(i + 1, i), p);
            if run == 0 {
                break;
            }
            let coef = modp::mulmod(*h.at(i, k - 1), run, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                pk[d] = modp::submod(pk[d], modp::mulmod(coef, c, p), p);
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// All roots in `F_p` by exhaustive scan, early-exiting once the degree is
/// reached.
fn scan_roots(p: u64, poly: &[u64]) -> Vec<u64> {
    let deg = poly.len().saturating_sub(1);
    let mut roots = Vec::new();
    for x in 0..p {
        // Horner evaluation
        let mut acc = 0u64;
        for &c in poly.iter().rev() {
            acc = modp::addmod(modp::mulmod(acc, x, p), c, p);
        }
        if acc == 0 {
            roots.push(x);
            if roots.len() == deg {
                break;
            }
        }
    }
    roots
}

fn eigenspace(f: &FpField, m: &Mat<u64>, mu: u64) -> Vec<Vec<u64>> {
    let n = m.rows;
    let shifted = Mat::from_fn(n, n, |i, j| {
        let diag = if i == j { mu } else { 0 };
        modp::submod(*m.at(i, j), diag, f.0)
    });
    linalg::kernel_basis(f, &shifted)
}

/// Exact characteristic-zero lift of a modular point table.
///
/// For each point the dimension is recovered from the modular idempotent
/// matrix, each character value is reassembled from root-of-unity
/// multiplicities `n_j = (1/o) sum_k chi(g^k) theta^(-jk)` computed in `F_p`,
/// and the point coordinate returns as `|class| * chi / dim` over
/// `Q(zeta_exponent)`; the table simplifies to `Q` when every coordinate is
/// rational.  Rational coordinates are cross-checked against independent
/// rational reconstruction of the modular values.
pub fn lift_points(
    mod_table: &PointTable,
    group: &GroupTable,
    partition: &ClassPartition,
    _algebra: &ClassAlgebra,
) -> Result<PointTable, SolveError> {
    let p = match mod_table.field() {
        FieldContext::PrimeField { modulus } => *modulus,
        other => {
            return Err(SolveError::LiftFailure(format!(
                "expected a prime-field table, got {other}"
            )))
        }
    };
    let raw = mod_table
        .residues()
        .ok_or_else(|| SolveError::LiftFailure("mixed scalar kinds in table".into()))?;
    let order = group.order();
    let m = group.exponent();
    let k = partition.num_classes();
    let dims = idempotent::dims_mod_p(&raw, order, p)
        .map_err(|e| SolveError::LiftFailure(format!("dimension recovery: {e}")))?;
    let theta_m = zeta_image_mod_p(p, m);

    let mut lifted: Vec<Vec<Scalar>> = Vec::with_capacity(raw.len());
    for (point, &dim) in raw.iter().zip(&dims) {
        let dim_u = dim as u64;
        // modular character row chi(c) = a_c * dim / |c|
        let chi_p: Vec<u64> = (0..k)
            .map(|c| {
                let size_inv = modp::invmod(partition.size(c) as u64 % p, p);
                modp::mulmod(modp::mulmod(point[c], dim_u % p, p), size_inv, p)
            })
            .collect();
        let mut coords = Vec::with_capacity(k);
        for c in 0..k {
            let o = partition.class_order(c);
            let theta_o = modp::powmod(theta_m, m / o, p);
            let theta_o_inv = modp::invmod(theta_o, p);
            let o_inv = modp::invmod(o % p, p);
            // multiplicity of the eigenvalue zeta_o^j on this class
            let mut mults = Vec::with_capacity(o as usize);
            let mut total = 0u64;
            for j in 0..o {
                let mut acc = 0u64;
                for t in 0..o {
                    let cls = partition.power_class(c, t);
                    let tw = modp::powmod(theta_o_inv, (j * t) % o, p);
                    acc = modp::addmod(acc, modp::mulmod(chi_p[cls], tw, p), p);
                }
                let n_j = modp::mulmod(acc, o_inv, p);
                if n_j > dim_u {
                    return Err(SolveError::LiftFailure(format!(
                        "multiplicity {n_j} outside 0..={dim} on class {c}"
                    )));
                }
                total += n_j;
                mults.push(n_j);
            }
            if total != dim_u {
                return Err(SolveError::LiftFailure(format!(
                    "multiplicities sum to {total}, expected {dim} on class {c}"
                )));
            }
            // chi(c) = sum_j n_j zeta_m^(j m / o), exactly
            let mut chi = CycElem::zero(m as u32);
            for (j, &n_j) in mults.iter().enumerate() {
                if n_j != 0 {
                    let term = CycElem::zeta_pow(m as u32, (j as u64 * (m / o)) % m);
                    let scaled = term.mul(&CycElem::from_rat(
                        m as u32,
                        Rat::from_integer(n_j.into()),
                    ));
                    chi = chi.add(&scaled);
                }
            }
            let scale = Rat::new((partition.size(c) as i64).into(), (dim as i64).into());
            let coord = chi.mul(&CycElem::from_rat(m as u32, scale));
            if let Some(q) = coord.as_rational() {
                // independent route: reconstruct the modular residue directly
                let reconstructed = rational_reconstruct(point[c], p, order as u64)
                    .map_err(|e| SolveError::LiftFailure(e.to_string()))?;
                if reconstructed != Some(q.clone()) {
                    return Err(SolveError::LiftFailure(format!(
                        "rational coordinate {q} disagrees with reconstruction {reconstructed:?}"
                    )));
                }
            }
            coords.push(Scalar::Cyclotomic(coord));
        }
        lifted.push(coords);
    }

    let all_rational = lifted
        .iter()
        .all(|pt| pt.iter().all(|s| s.as_rational().is_some()));
    if all_rational {
        let points = lifted
            .into_iter()
            .map(|pt| {
                pt.into_iter()
                    .map(|s| Scalar::Rational(s.as_rational().expect("checked rational")))
                    .collect()
            })
            .collect();
        Ok(PointTable::new(FieldContext::Rational, points))
    } else {
        Ok(PointTable::new(FieldContext::Cyclotomic { conductor: m as u32 }, lifted))
    }
}

/// Project a characteristic-zero table back to `F_p`, mapping the cyclotomic
/// generator to the same root-of-unity image the lift used.
pub fn project_points(
    table: &PointTable,
    group: &GroupTable,
    p: u64,
) -> Result<PointTable, SolveError> {
    let theta = zeta_image_mod_p(p, group.exponent());
    let points = table
        .points()
        .iter()
        .map(|pt| {
            pt.iter()
                .map(|s| {
                    s.eval_mod_p(p, theta)
                        .map(|residue| Scalar::PrimeField { residue, modulus: p })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| SolveError::LiftFailure(e.to_string()))?;
    Ok(PointTable::new(FieldContext::PrimeField { modulus: p }, points))
}

/// Verification report for a point table; failures are reported, not thrown.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub count_ok: bool,
    pub identity_coordinate_ok: bool,
    pub pairwise_distinct: bool,
    /// `(point, class l, class m)` triples where the defining relation fails.
    pub homomorphism_failures: Vec<(usize, usize, usize)>,
}

impl PointReport {
    pub fn pass(&self) -> bool {
        self.count_ok
            && self.identity_coordinate_ok
            && self.pairwise_distinct
            && self.homomorphism_failures.is_empty()
    }
}

/// Check that every point satisfies every defining relation of the center,
/// that points are pairwise distinct, and that the count matches the number
/// of conjugacy classes.
pub fn verify_points(points: &PointTable, algebra: &ClassAlgebra) -> PointReport {
    let k = algebra.num_classes();
    let ctx = points.field().clone();
    let count_ok = points.num_points() == k;
    let identity_coordinate_ok =
        points.points().iter().all(|pt| pt.first().map(Scalar::is_one).unwrap_or(false));
    let mut distinct = true;
    for i in 0..points.num_points() {
        for j in i + 1..points.num_points() {
            if points.point(i) == points.point(j) {
                distinct = false;
            }
        }
    }
    let mut failures = Vec::new();
    for (idx, pt) in points.points().iter().enumerate() {
        if pt.len() != k {
            failures.push((idx, 0, 0));
            continue;
        }
        for l in 0..k {
            for mcls in l..k {
                let lhs = pt[l].mul(&pt[mcls]);
                let mut rhs = ctx.zero();
                for n in 0..k {
                    let c = algebra.c(l, mcls, n);
                    if c != 0 {
                        rhs = rhs.add(&ctx.from_i64(c as i64).mul(&pt[n]));
                    }
                }
                if lhs != rhs {
                    failures.push((idx, l, mcls));
                }
            }
        }
    }
    PointReport {
        count_ok,
        identity_coordinate_ok,
        pairwise_distinct: distinct,
        homomorphism_failures: failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classalg::structure_constants;
    use crate::group::{builtin_group, conjugacy_classes, BuiltinGroup};
    use num_bigint::BigInt;

    fn pipeline(spec: BuiltinGroup) -> (GroupTable, ClassPartition, ClassAlgebra) {
        let g = builtin_group(&spec).unwrap();
        let p = conjugacy_classes(&g);
        let a = structure_constants(&g, &p);
        (g, p, a)
    }

    fn rational_points(table: &PointTable) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = table
            .points()
            .iter()
            .map(|pt| {
                pt.iter()
                    .map(|s| {
                        let r = s.as_rational().expect("rational coordinate");
                        assert!(r.is_integer());
                        let v: BigInt = r.to_integer();
                        i64::try_from(v).unwrap()
                    })
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn prime_choice_examples() {
        let s3 = builtin_group(&BuiltinGroup::Symmetric(3)).unwrap();
        assert_eq!(choose_solving_prime(&s3), 151);
        let trivial = builtin_group(&BuiltinGroup::Cyclic(1)).unwrap();
        assert_eq!(choose_solving_prime(&trivial), 5);
        let c4 = builtin_group(&BuiltinGroup::Cyclic(4)).unwrap();
        assert_eq!(choose_solving_prime(&c4), 73);
    }

    #[test]
    fn s3_points_mod_151() {
        let (g, _, alg) = pipeline(BuiltinGroup::Symmetric(3));
        let p = choose_solving_prime(&g);
        let table = solve_points_mod_p(&alg, p, 1).unwrap();
        let mut got = table.residues().unwrap();
        got.sort();
        let mut want = vec![vec![1, 3, 2], vec![1, 151 - 3, 2], vec![1, 0, 151 - 1]];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn trivial_group_single_point() {
        let (_, _, alg) = pipeline(BuiltinGroup::Cyclic(1));
        let table = solve_points_mod_p(&alg, 5, 0).unwrap();
        assert_eq!(table.residues().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn c3_points_are_cube_roots() {
        let (g, _, alg) = pipeline(BuiltinGroup::Cyclic(3));
        let p = choose_solving_prime(&g);
        assert_eq!((p - 1) % 3, 0);
        let table = solve_points_mod_p(&alg, p, 3).unwrap();
        let mut got = table.residues().unwrap();
        got.sort();
        let mut want: Vec<Vec<u64>> = (0..p)
            .filter(|&w| modp::powmod(w, 3, p) == 1)
            .map(|w| vec![1, w, modp::mulmod(w, w, p)])
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn lift_s3_to_paper_points() {
        let (g, part, alg) = pipeline(BuiltinGroup::Symmetric(3));
        let p = choose_solving_prime(&g);
        let table = solve_points_mod_p(&alg, p, 0).unwrap();
        let lifted = lift_points(&table, &g, &part, &alg).unwrap();
        assert_eq!(lifted.field(), &FieldContext::Rational);
        assert_eq!(
            rational_points(&lifted),
            vec![vec![1, -3, 2], vec![1, 0, -1], vec![1, 3, 2]]
        );
    }

    #[test]
    fn lift_q8_to_paper_points() {
        let (g, part, alg) = pipeline(BuiltinGroup::Quaternion8);
        let p = choose_solving_prime(&g);
        let table = solve_points_mod_p(&alg, p, 0).unwrap();
        let lifted = lift_points(&table, &g, &part, &alg).unwrap();
        let mut want = vec![
            vec![1, -1, 0, 0, 0],
            vec![1, 1, 2, 2, 2],
            vec![1, 1, 2, -2, -2],
            vec![1, 1, -2, 2, -2],
            vec![1, 1, -2, -2, 2],
        ];
        want.sort();
        assert_eq!(rational_points(&lifted), want);
    }

    #[test]
    fn lift_s4_to_paper_points() {
        let (g, part, alg) = pipeline(BuiltinGroup::Symmetric(4));
        let p = choose_solving_prime(&g);
        let table = solve_points_mod_p(&alg, p, 0).unwrap();
        let lifted = lift_points(&table, &g, &part, &alg).unwrap();
        let mut want = vec![
            vec![1, 6, 8, 6, 3],
            vec![1, -6, 8, -6, 3],
            vec![1, 0, -4, 0, 3],
            vec![1, -2, 0, 2, -1],
            vec![1, 2, 0, -2, -1],
        ];
        want.sort();
        assert_eq!(rational_points(&lifted), want);
    }

    #[test]
    fn verification_catches_tampering() {
        let (g, part, alg) = pipeline(BuiltinGroup::Symmetric(3));
        let p = choose_solving_prime(&g);
        let table = solve_points_mod_p(&alg, p, 0).unwrap();
        let lifted = lift_points(&table, &g, &part, &alg).unwrap();
        assert!(verify_points(&lifted, &alg).pass());

        // alter (1, 3, 2) to (1, 3, 3): the relation α² = 3 + 3β now fails
        let mut tampered = lifted.points().to_vec();
        for pt in &mut tampered {
            if pt[1] == Scalar::Rational(Rat::from_integer(3.into())) {
                pt[2] = Scalar::Rational(Rat::from_integer(3.into()));
            }
        }
        let bad = PointTable::new(FieldContext::Rational, tampered);
        let report = verify_points(&bad, &alg);
        assert!(!report.pass());
        assert!(!report.homomorphism_failures.is_empty());

        // duplicating a point breaks distinctness
        let mut dup = lifted.points().to_vec();
        dup[0] = dup[1].clone();
        let bad = PointTable::new(FieldContext::Rational, dup);
        assert!(!verify_points(&bad, &alg).pairwise_distinct);
    }

    #[test]
    fn seed_independence() {
        for spec in [
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Quaternion8,
            BuiltinGroup::Dihedral(6),
            BuiltinGroup::Alternating(4),
        ] {
            let (g, part, alg) = pipeline(spec);
            let p = choose_solving_prime(&g);
            let reference = lift_points(
                &solve_points_mod_p(&alg, p, 0).unwrap(),
                &g,
                &part,
                &alg,
            )
            .unwrap();
            for seed in 1..10 {
                let table = solve_points_mod_p(&alg, p, seed).unwrap();
                let lifted = lift_points(&table, &g, &part, &alg).unwrap();
                assert_eq!(lifted, reference);
            }
        }
    }

    #[test]
    fn lift_project_roundtrip() {
        for spec in [
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Cyclic(5),
            BuiltinGroup::Alternating(4),
            BuiltinGroup::Quaternion8,
        ] {
            let (g, part, alg) = pipeline(spec);
            let p = choose_solving_prime(&g);
            let table = solve_points_mod_p(&alg, p, 0).unwrap();
            let lifted = lift_points(&table, &g, &part, &alg).unwrap();
            let projected = project_points(&lifted, &g, p).unwrap();
            assert_eq!(projected, table);
        }
    }

    #[test]
    fn point_count_equals_class_count() {
        for spec in [
            BuiltinGroup::Symmetric(5),
            BuiltinGroup::Alternating(5),
            BuiltinGroup::Dihedral(4),
            BuiltinGroup::Cyclic(12),
        ] {
            let (g, part, alg) = pipeline(spec);
            let p = choose_solving_prime(&g);
            let table = solve_points_mod_p(&alg, p, 0).unwrap();
            assert_eq!(table.num_points(), part.num_classes());
            let lifted = lift_points(&table, &g, &part, &alg).unwrap();
            assert_eq!(lifted.num_points(), part.num_classes());
            assert!(verify_points(&lifted, &alg).pass());
        }
    }

    /// Brute-force oracle: enumerate every vector over a small split field
    /// satisfying all relations and compare with the solver.
    #[test]
    fn exhaustive_small_field_oracle() {
        let cases = [
            (BuiltinGroup::Symmetric(3), 7u64),
            (BuiltinGroup::Cyclic(4), 5),
            (BuiltinGroup::Cyclic(6), 7),
            (BuiltinGroup::Quaternion8, 5),
            (BuiltinGroup::Dihedral(4), 5),
            (BuiltinGroup::Alternating(4), 7),
            (BuiltinGroup::Dihedral(6), 7),
        ];
        for (spec, q) in cases {
            let (g, part, alg) = pipeline(spec.clone());
            assert!(g.order() <= 12 || matches!(spec, BuiltinGroup::Cyclic(4)));
            assert_eq!((q - 1) % g.exponent(), 0);
            assert_ne!(g.order() as u64 % q, 0);
            let k = part.num_classes();
            // enumerate all vectors with identity coordinate 1
            let mut expected: Vec<Vec<u64>> = Vec::new();
            let mut vector = vec![0u64; k];
            vector[0] = 1;
            enumerate(&mut vector, 1, q, &alg, &mut expected);
            expected.sort();
            let table = solve_points_mod_p(&alg, q, 11).unwrap();
            let mut got = table.residues().unwrap();
            got.sort();
            assert_eq!(got, expected, "oracle mismatch for {}", g.name());
        }
    }

    fn enumerate(
        vector: &mut Vec<u64>,
        pos: usize,
        q: u64,
        alg: &ClassAlgebra,
        out: &mut Vec<Vec<u64>>,
    ) {
        let k = vector.len();
        if pos == k {
            for l in 0..k {
                for m in l..k {
                    let lhs = modp::mulmod(vector[l], vector[m], q);
                    let mut rhs = 0u64;
                    for n in 0..k {
                        rhs = modp::addmod(
                            rhs,
                            modp::mulmod(alg.c(l, m, n) % q, vector[n], q),
                            q,
                        );
                    }
                    if lhs != rhs {
                        return;
                    }
                }
            }
            out.push(vector.clone());
            return;
        }
        for v in 0..q {
            vector[pos] = v;
            enumerate(vector, pos + 1, q, alg, out);
        }
    }
}
