//! Arithmetic in the full group algebra and its idempotent components.
//!
//! A component `beta K(G)` of a primitive central idempotent carries the
//! whole story of one irreducible representation: its canonical echelon
//! basis, the rank criterion for right multiplication (rank at most
//! `sqrt(dim beta K(G))` certifies a splitting field), and the extraction of
//! explicit representation matrices from a low-rank witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{ClassPartition, GroupTable};
use crate::idempotent::CentralIdempotent;
use crate::linalg::{self, Mat, ScalarField};
use crate::scalar::{euler_phi, FieldContext, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularError {
    #[error("scalar contexts do not match")]
    ContextMismatch,
    #[error("element does not lie in the idempotent component")]
    NotInComponent,
    #[error("component dimension {0} is not a perfect square")]
    NotAPerfectSquare(usize),
    #[error("witness has right-multiplication rank {got}, expected {want}")]
    RankMismatch { got: usize, want: usize },
    #[error("subspace is not invariant under the representation")]
    NotInvariant,
    #[error("field characteristic divides the group order")]
    BadCharacteristic,
}

impl From<ScalarError> for RegularError {
    fn from(_: ScalarError) -> Self {
        RegularError::ContextMismatch
    }
}

/// An element of the group algebra: one coefficient per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub coeffs: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn zero(ctx: &FieldContext, order: usize) -> Self {
        AlgebraElement { coeffs: vec![ctx.zero(); order] }
    }

    pub fn basis_element(ctx: &FieldContext, order: usize, g: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); order];
        coeffs[g] = ctx.one();
        AlgebraElement { coeffs }
    }

    /// Expand class-sum coefficients to the group-element basis.
    pub fn from_class_coeffs(coeffs: &[Scalar], partition: &ClassPartition) -> Self {
        let order: usize = partition.sizes().iter().sum();
        let coeffs = (0..order).map(|g| coeffs[partition.class_of(g)].clone()).collect();
        AlgebraElement { coeffs }
    }

    pub fn context(&self) -> FieldContext {
        self.coeffs[0].context()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        AlgebraElement { coeffs: self.coeffs.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn promote(&self, ctx: &FieldContext) -> Result<AlgebraElement, RegularError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.promote(ctx))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraElement { coeffs })
    }
}

/// Convolution product through the multiplication table.
pub fn algebra_multiply(
    group: &GroupTable,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement, RegularError> {
    if a.context() != b.context() {
        return Err(RegularError::ContextMismatch);
    }
    let ctx = a.context();
    let mut out = vec![ctx.zero(); group.order()];
    for (g, ag) in a.coeffs.iter().enumerate() {
        if ag.is_zero() {
            continue;
        }
        for (h, bh) in b.coeffs.iter().enumerate() {
            if !bh.is_zero() {
                let t = group.mul(g, h);
                out[t] = out[t].add(&ag.mul(bh));
            }
        }
    }
    Ok(AlgebraElement { coeffs: out })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Matrix of `x -> a*x` (left) or `x -> x*a` (right) on the element basis.
pub fn mult_matrix(group: &GroupTable, a: &AlgebraElement, side: Side) -> Mat<Scalar> {
    let n = group.order();
    let ctx = a.context();
    let mut m = Mat::filled(n, n, ctx.zero());
    for (g, ag) in a.coeffs.iter().enumerate() {
        if ag.is_zero() {
            continue;
        }
        for h in 0..n {
            let target = match side {
                Side::Left => group.mul(g, h),
                Side::Right => group.mul(h, g),
            };
            let v = m.at(target, h).add(ag);
            m.set(target, h, v);
        }
    }
    m
}

/// An idempotent component `beta K(G)` with its canonical echelon basis and
/// the precomputed right-multiplication tensor on that basis.
#[derive(Clone, Debug)]
pub struct ComponentAlgebra {
    pub beta: AlgebraElement,
    pub basis: Vec<AlgebraElement>,
    /// `right_tensor[j]` is the matrix of right multiplication by basis
    /// vector `j` in basis coordinates.
    right_tensor: Vec<Mat<Scalar>>,
    ctx: FieldContext,
}

impl ComponentAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    /// Coordinates of an element in the component basis.
    pub fn coordinates(&self, alpha: &AlgebraElement) -> Option<Vec<Scalar>> {
        let f = ScalarField(self.ctx.clone());
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.coeffs.clone()).collect();
        linalg::coordinates_in_basis(&f, &rows, &alpha.coeffs)
    }

    pub fn element_from_coordinates(&self, coords: &[Scalar]) -> AlgebraElement {
        assert_eq!(coords.len(), self.basis.len());
        let order = self.beta.coeffs.len();
        let mut acc = AlgebraElement::zero(&self.ctx, order);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Matrix of right multiplication by the element with the given basis
    /// coordinates, in basis coordinates.
    pub fn right_mult_matrix(&self, coords: &[Scalar]) -> Mat<Scalar> {
        let f = ScalarField(self.ctx.clone());
        let k = self.dim();
        let mut acc = Mat::filled(k, k, self.ctx.zero());
        for (c, t) in coords.iter().zip(&self.right_tensor) {
            if !c.is_zero() {
                acc = linalg::mat_add(&f, &acc, &linalg::mat_scale(&f, t, c));
            }
        }
        acc
    }
}

/// Canonical echelon basis of `beta K(G)` (the column space of left
/// multiplication by `beta`), with the right-multiplication tensor.
pub fn component_basis(group: &GroupTable, beta: &AlgebraElement) -> ComponentAlgebra {
    let ctx = beta.context();
    let f = ScalarField(ctx.clone());
    let columns: Vec<Vec<Scalar>> = (0..group.order())
        .map(|h| {
            // beta * e_h
            let mut col = vec![ctx.zero(); group.order()];
            for (g, bg) in beta.coeffs.iter().enumerate() {
                if !bg.is_zero() {
                    let t = group.mul(g, h);
                    col[t] = col[t].add(bg);
                }
            }
            col
        })
        .collect();
    let basis_rows = linalg::row_space_basis(&f, &columns);
    let basis: Vec<AlgebraElement> =
        basis_rows.into_iter().map(|coeffs| AlgebraElement { coeffs }).collect();
    let k = basis.len();
    let mut right_tensor = Vec::with_capacity(k);
    for bj in &basis {
        // column i of the tensor for bj: coordinates of basis[i] * bj
        let mut cols = Vec::with_capacity(k);
        for bi in &basis {
            let prod = algebra_multiply(group, bi, bj).expect("uniform context");
            let rows: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coeffs.clone()).collect();
            let coords = linalg::coordinates_in_basis(&f, &rows, &prod.coeffs)
                .expect("a left ideal is closed under right multiplication");
            cols.push(coords);
        }
        right_tensor.push(Mat::from_fn(k, k, |r, c| cols[c][r].clone()));
    }
    ComponentAlgebra { beta: beta.clone(), basis, right_tensor, ctx }
}

/// Exact rank of right multiplication by `alpha` on the component.
///
/// `alpha` must satisfy `beta * alpha = alpha`.
pub fn right_mult_rank(
    group: &GroupTable,
    comp: &ComponentAlgebra,
    alpha: &AlgebraElement,
) -> Result<usize, RegularError> {
    let stabilized = algebra_multiply(group, &comp.beta, alpha)?;
    if &stabilized != alpha {
        return Err(RegularError::NotInComponent);
    }
    let coords = comp.coordinates(alpha).ok_or(RegularError::NotInComponent)?;
    let f = ScalarField(comp.ctx.clone());
    Ok(linalg::rank(&f, &comp.right_mult_matrix(&coords)))
}

fn isqrt_exact(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    for cand in r.saturating_sub(1)..=r + 1 {
        if cand * cand == n {
            return Some(cand);
        }
    }
    None
}

/// Coordinate sample set for the witness search: small integers over the
/// rationals, zero and signed root-of-unity powers over a cyclotomic field.
fn witness_sample_set(ctx: &FieldContext) -> Vec<Scalar> {
    match ctx {
        FieldContext::Rational => {
            (-2..=2).map(|v| ctx.from_i64(v)).collect()
        }
        FieldContext::Cyclotomic { conductor } => {
            let mut set = vec![ctx.zero()];
            let span = (*conductor).max(1);
            for j in 0..span.min(euler_phi(span) + 2) as u64 {
                let z = ctx.root_of_unity(span as u64, j).expect("conductor root");
                if !set.contains(&z) {
                    set.push(z.clone());
                }
                let neg = z.neg();
                if !set.contains(&neg) {
                    set.push(neg);
                }
            }
            set
        }
        FieldContext::PrimeField { modulus } => {
            (0..(*modulus).min(5)).map(|v| ctx.from_i64(v as i64)).collect()
        }
    }
}

/// Search for a nonzero component element whose right multiplication has
/// rank at most `sqrt(dim)`: structured candidates first (single basis
/// vectors, signed pairs), then seeded random coordinate vectors from a
/// small sample set, up to `budget` candidates in total.  `None` after
/// budget exhaustion is inconclusive, not a proof of non-splitting.
pub fn find_splitting_witness(
    group: &GroupTable,
    comp: &ComponentAlgebra,
    seed: u64,
    budget: usize,
) -> Result<Option<AlgebraElement>, RegularError> {
    let k = comp.dim();
    let n = isqrt_exact(k).ok_or(RegularError::NotAPerfectSquare(k))?;
    let f = ScalarField(comp.ctx.clone());
    let mut tried = 0usize;
    let mut check = |coords: &[Scalar]| -> Option<AlgebraElement> {
        let m = comp.right_mult_matrix(coords);
        if linalg::rank(&f, &m) <= n && coords.iter().any(|c| !c.is_zero()) {
            Some(comp.element_from_coordinates(coords))
        } else {
            None
        }
    };
    // structured candidates: single basis vectors, then signed pairs
    let one = comp.ctx.one();
    let minus_one = one.neg();
    let zero = comp.ctx.zero();
    let mut structured: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..k {
        let mut c = vec![zero.clone(); k];
        c[i] = one.clone();
        structured.push(c);
    }
    for i in 0..k {
        for j in i + 1..k {
            for sign in [&one, &minus_one] {
                let mut c = vec![zero.clone(); k];
                c[i] = one.clone();
                c[j] = sign.clone();
                structured.push(c);
            }
        }
    }
    for coords in &structured {
        if tried == budget {
            return Ok(None);
        }
        tried += 1;
        if let Some(w) = check(coords) {
            return Ok(Some(w));
        }
    }
    // seeded random candidates from the sample set
    let sample = witness_sample_set(&comp.ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while tried < budget {
        tried += 1;
        let coords: Vec<Scalar> =
            (0..k).map(|_| sample[rng.random_range(0..sample.len())].clone()).collect();
        if coords.iter().all(Scalar::is_zero) {
            continue;
        }
        if let Some(w) = check(&coords) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Explicit matrices of a representation, one per group element.
#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub dim: usize,
    pub mats: Vec<Mat<Scalar>>,
    pub ctx: FieldContext,
}

impl RepMatrices {
    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn trace(&self, g: usize) -> Scalar {
        let f = ScalarField(self.ctx.clone());
        linalg::trace(&f, &self.mats[g])
    }
}

/// The permutation representation attached to the stored permutation images.
pub fn permutation_rep(group: &GroupTable, ctx: &FieldContext) -> Option<RepMatrices> {
    let perms = group.perms()?;
    let degree = perms[0].degree();
    let mats = perms
        .iter()
        .map(|p| {
            Mat::from_fn(degree, degree, |i, j| {
                if p.image(j) == i {
                    ctx.one()
                } else {
                    ctx.zero()
                }
            })
        })
        .collect();
    Some(RepMatrices { dim: degree, mats, ctx: ctx.clone() })
}

/// The standard representation of a symmetric group on the basis
/// `e_i - e_d`, `i = 1..d-1`, built from the stored permutations.
pub fn standard_rep_from_perms(group: &GroupTable, ctx: &FieldContext) -> Option<RepMatrices> {
    let perms = group.perms()?;
    let d = perms[0].degree();
    if d < 2 {
        return None;
    }
    let n = d - 1;
    let mats = perms
        .iter()
        .map(|p| {
            let mut m = Mat::filled(n, n, ctx.zero());
            for j in 0..n {
                // sigma(e_j - e_(d-1)) = (e_sigma(j) - e_(d-1)) - (e_sigma(d-1) - e_(d-1))
                let a = p.image(j);
                let b = p.image(d - 1);
                if a != d - 1 {
                    let v = m.at(a, j).add(&ctx.one());
                    m.set(a, j, v);
                }
                if b != d - 1 {
                    let v = m.at(b, j).sub(&ctx.one());
                    m.set(b, j, v);
                }
            }
            m
        })
        .collect();
    Some(RepMatrices { dim: n, mats, ctx: ctx.clone() })
}

/// Matrices of left multiplication by every group element on the component
/// basis: the component viewed as a representation.
pub fn component_left_rep(group: &GroupTable, comp: &ComponentAlgebra) -> RepMatrices {
    let f = ScalarField(comp.ctx.clone());
    let rows: Vec<Vec<Scalar>> = comp.basis.iter().map(|b| b.coeffs.clone()).collect();
    let k = comp.dim();
    let mats = (0..group.order())
        .map(|g| {
            let mut cols = Vec::with_capacity(k);
            for b in &comp.basis {
                let shifted = left_translate(group, g, b, &comp.ctx);
                let coords = linalg::coordinates_in_basis(&f, &rows, &shifted.coeffs)
                    .expect("left ideal is closed under left translation");
                cols.push(coords);
            }
            Mat::from_fn(k, k, |r, c| cols[c][r].clone())
        })
        .collect();
    RepMatrices { dim: k, mats, ctx: comp.ctx.clone() }
}

fn left_translate(
    group: &GroupTable,
    g: usize,
    a: &AlgebraElement,
    ctx: &FieldContext,
) -> AlgebraElement {
    let mut out = vec![ctx.zero(); group.order()];
    for (h, ah) in a.coeffs.iter().enumerate() {
        if !ah.is_zero() {
            out[group.mul(g, h)] = ah.clone();
        }
    }
    AlgebraElement { coeffs: out }
}

/// Extract explicit irreducible matrices from a rank-`sqrt(dim)` witness:
/// the representation space is `beta K(G) * witness`, acted on by left
/// translation.  The homomorphism property is verified before returning.
pub fn extract_irrep(
    group: &GroupTable,
    comp: &ComponentAlgebra,
    witness: &AlgebraElement,
) -> Result<RepMatrices, RegularError> {
    let k = comp.dim();
    let n = isqrt_exact(k).ok_or(RegularError::NotAPerfectSquare(k))?;
    let rank = right_mult_rank(group, comp, witness)?;
    if rank != n {
        return Err(RegularError::RankMismatch { got: rank, want: n });
    }
    let f = ScalarField(comp.ctx.clone());
    let images: Vec<Vec<Scalar>> = comp
        .basis
        .iter()
        .map(|b| algebra_multiply(group, b, witness).expect("uniform context").coeffs)
        .collect();
    let w_basis_rows = linalg::row_space_basis(&f, &images);
    debug_assert_eq!(w_basis_rows.len(), n);
    let mats: Vec<Mat<Scalar>> = (0..group.order())
        .map(|g| {
            let mut cols = Vec::with_capacity(n);
            for w in &w_basis_rows {
                let shifted = left_translate(
                    group,
                    g,
                    &AlgebraElement { coeffs: w.clone() },
                    &comp.ctx,
                );
                let coords = linalg::coordinates_in_basis(&f, &w_basis_rows, &shifted.coeffs)
                    .ok_or(RegularError::NotInComponent)?;
                cols.push(coords);
            }
            Ok(Mat::from_fn(n, n, |r, c| cols[c][r].clone()))
        })
        .collect::<Result<_, RegularError>>()?;
    let rep = RepMatrices { dim: n, mats, ctx: comp.ctx.clone() };
    verify_homomorphism(group, &rep)?;
    Ok(rep)
}

/// `rho(g) rho(h) = rho(gh)` and `rho(1) = I`, exhaustive for small groups
/// and on a seeded sample of pairs for larger ones.
fn verify_homomorphism(group: &GroupTable, rep: &RepMatrices) -> Result<(), RegularError> {
    let f = ScalarField(rep.ctx.clone());
    if !linalg::is_identity(&f, &rep.mats[0]) {
        return Err(RegularError::RankMismatch { got: 0, want: rep.dim });
    }
    let n = group.order();
    let check = |g: usize, h: usize| -> bool {
        let prod = linalg::mat_mul(&f, &rep.mats[g], &rep.mats[h]);
        prod == rep.mats[group.mul(g, h)]
    };
    if n <= 60 {
        for g in 0..n {
            for h in 0..n {
                if !check(g, h) {
                    return Err(RegularError::NotInvariant);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..4000 {
            let g = rng.random_range(0..n);
            let h = rng.random_range(0..n);
            if !check(g, h) {
                return Err(RegularError::NotInvariant);
            }
        }
    }
    Ok(())
}

/// `rho~(alpha) = sum_g a_g rho(g)`.
pub fn apply_tilde_rho(
    alpha: &AlgebraElement,
    rep: &RepMatrices,
) -> Result<Mat<Scalar>, RegularError> {
    if alpha.context() != rep.ctx {
        return Err(RegularError::ContextMismatch);
    }
    if alpha.coeffs.len() != rep.mats.len() {
        return Err(RegularError::ContextMismatch);
    }
    let f = ScalarField(rep.ctx.clone());
    let mut acc = Mat::filled(rep.dim, rep.dim, rep.ctx.zero());
    for (g, a) in alpha.coeffs.iter().enumerate() {
        if !a.is_zero() {
            acc = linalg::mat_add(&f, &acc, &linalg::mat_scale(&f, &rep.mats[g], a));
        }
    }
    Ok(acc)
}

/// Basis of an invariant complement via the averaged projector
/// `f(v) = (1/|G|) sum_g g p(g^-1 v)`: the kernel of `f` complements the
/// invariant subspace.
pub fn maschke_complement(
    group: &GroupTable,
    rep: &RepMatrices,
    subspace: &[Vec<Scalar>],
) -> Result<Vec<Vec<Scalar>>, RegularError> {
    let ctx = &rep.ctx;
    let n = rep.dim;
    let order = group.order();
    if ctx.characteristic() != 0 && order as u64 % ctx.characteristic() == 0 {
        return Err(RegularError::BadCharacteristic);
    }
    let f = ScalarField(ctx.clone());
    let sub_basis = linalg::row_space_basis(&f, subspace);
    let k = sub_basis.len();
    // invariance of the subspace under every group element
    for mat in &rep.mats {
        for v in &sub_basis {
            let image = linalg::mat_vec(&f, mat, v);
            if linalg::coordinates_in_basis(&f, &sub_basis, &image).is_none() {
                return Err(RegularError::NotInvariant);
            }
        }
    }
    // projector onto the subspace along a coordinate complement
    let mut full_rows = sub_basis.clone();
    for i in 0..n {
        if full_rows.len() == n {
            break;
        }
        let mut e = vec![ctx.zero(); n];
        e[i] = ctx.one();
        let mut candidate = full_rows.clone();
        candidate.push(e.clone());
        if linalg::row_space_basis(&f, &candidate).len() > full_rows.len() {
            full_rows.push(e);
        }
    }
    let c_t = Mat::from_fn(n, n, |i, j| full_rows[j][i].clone());
    let c_t_inv = linalg::invert(&f, &c_t).expect("completed basis is invertible");
    let diag = Mat::from_fn(n, n, |i, j| {
        if i == j && i < k {
            ctx.one()
        } else {
            ctx.zero()
        }
    });
    let projector = linalg::mat_mul(&f, &linalg::mat_mul(&f, &c_t, &diag), &c_t_inv);
    // average over the group
    let mut avg = Mat::filled(n, n, ctx.zero());
    for g in 0..order {
        let term = linalg::mat_mul(
            &f,
            &linalg::mat_mul(&f, &rep.mats[g], &projector),
            &rep.mats[group.inv(g)],
        );
        avg = linalg::mat_add(&f, &avg, &term);
    }
    let scale = ctx.from_i64(order as i64).inv().expect("|G| is invertible");
    let avg = linalg::mat_scale(&f, &avg, &scale);
    let complement = linalg::row_space_basis(&f, &linalg::kernel_basis(&f, &avg));
    // verified complementary: dimensions add up and the union has full rank
    if k + complement.len() != n {
        return Err(RegularError::NotInvariant);
    }
    let mut union = sub_basis.clone();
    union.extend(complement.iter().cloned());
    if linalg::row_space_basis(&f, &union).len() != n {
        return Err(RegularError::NotInvariant);
    }
    // verified invariant under every group element
    for mat in &rep.mats {
        for v in &complement {
            let image = linalg::mat_vec(&f, mat, v);
            if linalg::coordinates_in_basis(&f, &complement, &image).is_none() {
                return Err(RegularError::NotInvariant);
            }
        }
    }
    Ok(complement)
}

/// Dimension of `{X : X rho(g) = rho(g) X for all g}` by exact linear
/// solving.
pub fn commutant_dimension(rep: &RepMatrices) -> usize {
    let n = rep.dim;
    let ctx = &rep.ctx;
    let f = ScalarField(ctx.clone());
    let unknowns = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for m in &rep.mats {
        for i in 0..n {
            for j in 0..n {
                // sum_k X[i][k] M[k][j] - M[i][k] X[k][j] = 0
                let mut row = vec![ctx.zero(); unknowns];
                for k in 0..n {
                    let idx_ik = i * n + k;
                    row[idx_ik] = row[idx_ik].add(m.at(k, j));
                    let idx_kj = k * n + j;
                    row[idx_kj] = row[idx_kj].sub(m.at(i, k));
                }
                rows.push(row);
            }
        }
    }
    let mat = Mat::from_rows(rows);
    unknowns - linalg::rank(&f, &mat)
}
