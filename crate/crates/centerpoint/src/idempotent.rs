//! Primitive central idempotents, irreducible dimensions, and characters.
//!
//! The matrix `A` whose rows are the points (identity coordinate first) is
//! inverted exactly; the rows of `B = (A^-1)^t` are the class-sum
//! coefficients of the primitive central idempotents.  Dimensions come from
//! the identity coefficient `dim^2 / |G|`, and the character table from the
//! dictionary `chi(c) = a_c * dim / |c|`.

use num_traits::Signed;
use thiserror::Error;

use crate::classalg::ClassAlgebra;
use crate::group::ClassPartition;
use crate::linalg::{self, FpField, Mat, ScalarField};
use crate::scalar::{
    perfect_square_root, rational_reconstruct, FieldContext, Int, Rat, Scalar,
};
use crate::solver::PointTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdempotentError {
    #[error("point matrix is singular")]
    SingularMatrix,
    #[error("identity coefficient does not yield a perfect-square dimension: {0}")]
    NotAPerfectSquare(String),
    #[error("character value is not an algebraic integer: {0}")]
    NonIntegralCharacter(String),
}

/// A primitive central idempotent `beta = sum coeffs[c] * class_sum(c)`
/// together with the point it corresponds to and the dimension of its
/// irreducible representation.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralIdempotent {
    pub coeffs: Vec<Scalar>,
    pub point: Vec<Scalar>,
    pub dim: usize,
}

/// Dimension from the identity-class coefficient of an idempotent:
/// `|G| * coeffs[0]` must be the square of a positive integer.
pub fn dimension_of(coeffs: &[Scalar], group_order: usize) -> Result<usize, IdempotentError> {
    let c0 = coeffs
        .first()
        .ok_or_else(|| IdempotentError::NotAPerfectSquare("empty coefficients".into()))?;
    let as_rat = |r: &Rat| -> Result<usize, IdempotentError> {
        let scaled = r * Rat::from_integer(Int::from(group_order as i64));
        if !scaled.is_integer() || !scaled.is_positive() {
            return Err(IdempotentError::NotAPerfectSquare(format!(
                "|G| * {r} = {scaled} is not a positive integer"
            )));
        }
        let root = perfect_square_root(&scaled.to_integer()).ok_or_else(|| {
            IdempotentError::NotAPerfectSquare(format!("|G| * {r} = {scaled}"))
        })?;
        Ok(usize::try_from(root).expect("dimension fits usize"))
    };
    match c0 {
        Scalar::Rational(r) => as_rat(r),
        Scalar::Cyclotomic(c) => {
            let r = c.as_rational().ok_or_else(|| {
                IdempotentError::NotAPerfectSquare(format!("irrational identity coefficient {c0}"))
            })?;
            as_rat(&r)
        }
        Scalar::PrimeField { residue, modulus } => {
            let r = rational_reconstruct(*residue, *modulus, group_order as u64)
                .map_err(|e| IdempotentError::NotAPerfectSquare(e.to_string()))?
                .ok_or_else(|| {
                    IdempotentError::NotAPerfectSquare(format!(
                        "residue {residue} has no small rational preimage"
                    ))
                })?;
            as_rat(&r)
        }
    }
}

/// Dimensions recovered from a modular point table: invert `A` over `F_p`,
/// reconstruct each identity coefficient as a small rational, and take the
/// integer square root of `|G|` times it.
pub fn dims_mod_p(
    points: &[Vec<u64>],
    group_order: usize,
    p: u64,
) -> Result<Vec<usize>, IdempotentError> {
    let f = FpField(p);
    let a = Mat::from_rows(points.to_vec());
    let inv = linalg::invert(&f, &a).ok_or(IdempotentError::SingularMatrix)?;
    (0..points.len())
        .map(|v| {
            dimension_of(
                &[Scalar::PrimeField { residue: *inv.at(0, v), modulus: p }],
                group_order,
            )
        })
        .collect()
}

/// Invert the point matrix into the full set of primitive central
/// idempotents with their dimensions.
pub fn idempotents_from_points(
    points: &PointTable,
    algebra: &ClassAlgebra,
    group_order: usize,
) -> Result<Vec<CentralIdempotent>, IdempotentError> {
    let k = algebra.num_classes();
    assert_eq!(points.num_points(), k, "point table must be complete");
    let f = ScalarField(points.field().clone());
    let a = Mat::from_rows(points.points().to_vec());
    let a_inv = linalg::invert(&f, &a).ok_or(IdempotentError::SingularMatrix)?;
    let b = a_inv.transpose();
    (0..k)
        .map(|v| {
            let coeffs = b.row(v).to_vec();
            let dim = dimension_of(&coeffs, group_order)?;
            Ok(CentralIdempotent { coeffs, point: points.point(v).to_vec(), dim })
        })
        .collect()
}

/// Character table: rows indexed like the idempotents, columns by class.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub field: FieldContext,
    pub rows: Vec<Vec<Scalar>>,
    pub dims: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub inverse_class: Vec<usize>,
}

/// `chi(c) = a_c * dim / |c|`, exactly; in characteristic zero every value
/// must land in the ring of integers of the splitting field.
pub fn character_table(
    points: &PointTable,
    dims: &[usize],
    partition: &ClassPartition,
) -> Result<CharacterTable, IdempotentError> {
    let k = partition.num_classes();
    let ctx = points.field().clone();
    let mut rows = Vec::with_capacity(points.num_points());
    for (pt, &dim) in points.points().iter().zip(dims) {
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let scale = Rat::new(Int::from(dim as i64), Int::from(partition.size(c) as i64));
            let scale = ctx
                .from_rat(&scale)
                .map_err(|e| IdempotentError::NonIntegralCharacter(e.to_string()))?;
            let value = pt[c].mul(&scale);
            if ctx.characteristic() == 0 && !is_algebraic_integer(&value) {
                return Err(IdempotentError::NonIntegralCharacter(format!(
                    "chi = {value} on class {c}"
                )));
            }
            row.push(value);
        }
        rows.push(row);
    }
    Ok(CharacterTable {
        field: ctx,
        rows,
        dims: dims.to_vec(),
        class_sizes: partition.sizes().to_vec(),
        inverse_class: (0..k).map(|c| partition.inverse_class(c)).collect(),
    })
}

fn is_algebraic_integer(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_integer(),
        // the power basis of Q(zeta_m) spans the ring of integers over Z
        Scalar::Cyclotomic(c) => c.coeffs().iter().all(Rat::is_integer),
        Scalar::PrimeField { .. } => true,
    }
}

impl CharacterTable {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Exact row orthogonality:
    /// `(1/|G|) sum_c |c| chi_V(c*) chi_W(c) = delta_VW` with `c*` the
    /// inverse class.
    pub fn row_orthogonality_holds(&self) -> bool {
        let ctx = &self.field;
        let order: usize = self.class_sizes.iter().sum();
        let order_s = ctx.from_i64(order as i64);
        for v in 0..self.rows.len() {
            for w in 0..self.rows.len() {
                let mut acc = ctx.zero();
                for c in 0..self.class_sizes.len() {
                    let size = ctx.from_i64(self.class_sizes[c] as i64);
                    let term = self.rows[v][self.inverse_class[c]].mul(&self.rows[w][c]);
                    acc = acc.add(&size.mul(&term));
                }
                let want = if v == w { order_s.clone() } else { ctx.zero() };
                if acc != want {
                    return false;
                }
            }
        }
        true
    }
}

/// Report of the exact algebraic checks on a full idempotent system.
#[derive(Clone, Debug)]
pub struct IdempotentSystemReport {
    /// Idempotents are central by construction: they are class-sum
    /// combinations, hence constant on conjugacy classes.
    pub central_by_construction: bool,
    pub idempotency_failures: Vec<usize>,
    pub orthogonality_failures: Vec<(usize, usize)>,
    pub sum_is_unit: bool,
    pub dims_square_sum_ok: bool,
}

impl IdempotentSystemReport {
    pub fn pass(&self) -> bool {
        self.central_by_construction
            && self.idempotency_failures.is_empty()
            && self.orthogonality_failures.is_empty()
            && self.sum_is_unit
            && self.dims_square_sum_ok
    }
}

/// Check `beta^2 = beta`, pairwise products zero, partition of unity, and
/// `sum dim^2 = |G|`, all exactly in the class algebra.
pub fn verify_idempotent_system(
    idempotents: &[CentralIdempotent],
    algebra: &ClassAlgebra,
    group_order: usize,
) -> IdempotentSystemReport {
    let k = algebra.num_classes();
    let ctx = idempotents
        .first()
        .map(|b| b.coeffs[0].context())
        .unwrap_or(FieldContext::Rational);
    let mut idempotency_failures = Vec::new();
    for (i, beta) in idempotents.iter().enumerate() {
        let sq = algebra.multiply(&beta.coeffs, &beta.coeffs, &ctx);
        if sq != beta.coeffs {
            idempotency_failures.push(i);
        }
    }
    let mut orthogonality_failures = Vec::new();
    for i in 0..idempotents.len() {
        for j in i + 1..idempotents.len() {
            let prod = algebra.multiply(&idempotents[i].coeffs, &idempotents[j].coeffs, &ctx);
            if prod.iter().any(|s| !s.is_zero()) {
                orthogonality_failures.push((i, j));
            }
        }
    }
    let mut total = vec![ctx.zero(); k];
    for beta in idempotents {
        for (t, c) in total.iter_mut().zip(&beta.coeffs) {
            *t = t.add(c);
        }
    }
    let mut unit = vec![ctx.zero(); k];
    if k > 0 {
        unit[0] = ctx.one();
    }
    let sum_is_unit = total == unit;
    let dims_square_sum_ok =
        idempotents.iter().map(|b| b.dim * b.dim).sum::<usize>() == group_order;
    IdempotentSystemReport {
        central_by_construction: true,
        idempotency_failures,
        orthogonality_failures,
        sum_is_unit,
        dims_square_sum_ok,
    }
}

/// An affine-linear central element vanishing at the point of representation
/// `v` and nowhere else: coefficients over the class-sum basis, the constant
/// in position 0.
///
/// Single-coordinate hyperplanes `x_c - a_c` are preferred for readability;
/// over the rationals the candidate with the largest smallest distance to
/// the other points wins, later classes breaking ties.  A seeded random
/// linear form is the fallback; separating forms are generic, so the search
/// terminates.
pub fn separating_element(points: &PointTable, v: usize) -> Vec<Scalar> {
    let k = points.point(v).len();
    let ctx = points.field().clone();
    let target = points.point(v);

    let mut best: Option<(Rat, usize)> = None;
    let mut first_hit: Option<usize> = None;
    for c in 1..k {
        let evals: Vec<Scalar> = (0..points.num_points())
            .filter(|&w| w != v)
            .map(|w| points.point(w)[c].sub(&target[c]))
            .collect();
        if evals.iter().any(Scalar::is_zero) {
            continue;
        }
        if first_hit.is_none() {
            first_hit = Some(c);
        }
        let margins: Option<Vec<Rat>> =
            evals.iter().map(|e| e.as_rational().map(|r| r.abs())).collect();
        if let Some(mut m) = margins {
            m.sort();
            let margin = m.remove(0);
            let better = match &best {
                None => true,
                Some((cur, _)) => margin >= *cur,
            };
            if better {
                best = Some((margin, c));
            }
        }
    }
    let chosen = best.map(|(_, c)| c).or(first_hit);
    if let Some(c) = chosen {
        let mut coeffs = vec![ctx.zero(); k];
        coeffs[0] = target[c].neg();
        coeffs[c] = ctx.one();
        return coeffs;
    }

    // fallback: seeded random affine-linear forms
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5e9a_0001);
    loop {
        let mut coeffs = vec![ctx.zero(); k];
        let mut constant = ctx.zero();
        for c in 1..k {
            let r = ctx.from_i64(rng.random_range(-3..=3));
            constant = constant.add(&r.mul(&target[c]));
            coeffs[c] = r;
        }
        coeffs[0] = constant.neg();
        let separates = (0..points.num_points()).filter(|&w| w != v).all(|w| {
            !ClassAlgebra::evaluate_at_point(&coeffs, points.point(w), &ctx).is_zero()
        });
        if separates {
            return coeffs;
        }
    }
}
