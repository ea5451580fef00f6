//! The center of the group algebra on the class-sum basis.
//!
//! Products of class sums have nonnegative integer structure constants that
//! do not depend on the coefficient field; they are stored once as `u64` and
//! specialized into any [`FieldContext`] on demand.

use crate::group::{ClassPartition, GroupTable};
use crate::linalg::Mat;
use crate::scalar::{FieldContext, Scalar};

/// Structure constants of the class-sum basis.
///
/// `c(l, m, n)` is the coefficient of the class sum `n` in the product of the
/// class sums `l * m`, i.e. the number of factorizations of a fixed element
/// of class `n` as a product of an element of `l` and an element of `m`.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    num_classes: usize,
    sizes: Vec<usize>,
    constants: Vec<u64>,
}

impl ClassAlgebra {
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    #[inline]
    pub fn c(&self, l: usize, m: usize, n: usize) -> u64 {
        self.constants[(l * self.num_classes + m) * self.num_classes + n]
    }

    /// Integer matrix of left multiplication by class sum `l` on the
    /// class-sum basis; entry `(n, m)` is `c(l, m, n)`.
    pub fn mult_matrix(&self, l: usize) -> Mat<u64> {
        Mat::from_fn(self.num_classes, self.num_classes, |n, m| self.c(l, m, n))
    }

    /// Product of two center elements given by class-sum coefficient vectors.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar], ctx: &FieldContext) -> Vec<Scalar> {
        let k = self.num_classes;
        assert_eq!(a.len(), k);
        assert_eq!(b.len(), k);
        let mut out = vec![ctx.zero(); k];
        for l in 0..k {
            if a[l].is_zero() {
                continue;
            }
            for m in 0..k {
                if b[m].is_zero() {
                    continue;
                }
                let ab = a[l].mul(&b[m]);
                for n in 0..k {
                    let coeff = self.c(l, m, n);
                    if coeff != 0 {
                        out[n] = out[n].add(&ab.mul(&ctx.from_i64(coeff as i64)));
                    }
                }
            }
        }
        out
    }

    /// Evaluate a center element at a point of the associated variety: the
    /// dot product of class coefficients with point coordinates (the identity
    /// coordinate of every point is 1).
    pub fn evaluate_at_point(coeffs: &[Scalar], point: &[Scalar], ctx: &FieldContext) -> Scalar {
        assert_eq!(coeffs.len(), point.len());
        let mut acc = ctx.zero();
        for (c, a) in coeffs.iter().zip(point) {
            if !c.is_zero() {
                acc = acc.add(&c.mul(a));
            }
        }
        acc
    }

    /// Human-readable relation list in class-sum names, one line per
    /// unordered pair, e.g. `α² = 3 + 3β`.
    pub fn relation_strings(&self, names: &[String]) -> Vec<String> {
        let k = self.num_classes;
        let mut out = Vec::new();
        for l in 1..k {
            for m in l..k {
                let lhs = if l == m {
                    format!("{}²", names[l])
                } else {
                    format!("{}{}", names[l], names[m])
                };
                let mut terms = Vec::new();
                for n in 0..k {
                    let c = self.c(l, m, n);
                    if c == 0 {
                        continue;
                    }
                    let name = if n == 0 { "" } else { &names[n][..] };
                    let term = match (c, name.is_empty()) {
                        (1, false) => name.to_string(),
                        (_, false) => format!("{c}{name}"),
                        (_, true) => format!("{c}"),
                    };
                    terms.push(term);
                }
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                out.push(format!("{lhs} = {rhs}"));
            }
        }
        out
    }

    /// Default class-sum names: `1` for the identity class, then Greek
    /// letters, then `a6, a7, ...`.
    pub fn class_names(num_classes: usize) -> Vec<String> {
        const GREEK: [&str; 12] =
            ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "μ", "ν"];
        (0..num_classes)
            .map(|c| {
                if c == 0 {
                    "1".to_string()
                } else if c - 1 < GREEK.len() {
                    GREEK[c - 1].to_string()
                } else {
                    format!("a{c}")
                }
            })
            .collect()
    }
}

/// Count factorizations over one pass of each class pair: for classes `l, m`
/// every product `x*y` with `x` in `l`, `y` in `m` lands in some class `n`,
/// and is counted when it hits the fixed representative of `n`.
pub fn structure_constants(group: &GroupTable, partition: &ClassPartition) -> ClassAlgebra {
    let k = partition.num_classes();
    let mut constants = vec![0u64; k * k * k];
    let rep_of_class: Vec<usize> = (0..k).map(|c| partition.representative(c)).collect();
    for l in 0..k {
        for m in 0..k {
            for &x in partition.class(l) {
                for &y in partition.class(m) {
                    let z = group.mul(x as usize, y as usize);
                    let n = partition.class_of(z);
                    if z == rep_of_class[n] {
                        constants[(l * k + m) * k + n] += 1;
                    }
                }
            }
        }
    }
    ClassAlgebra { num_classes: k, sizes: partition.sizes().to_vec(), constants }
}

/// An element of the group algebra is central iff its coefficients are
/// constant on conjugacy classes.
pub fn center_membership_check(
    _group: &GroupTable,
    partition: &ClassPartition,
    element: &[Scalar],
) -> bool {
    partition
        .classes()
        .iter()
        .all(|cl| cl.iter().all(|&g| element[g as usize] == element[cl[0] as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, conjugacy_classes, BuiltinGroup};
    use crate::scalar::Rat;
    use num_bigint::BigInt;

    fn setup(spec: BuiltinGroup) -> (GroupTable, ClassPartition, ClassAlgebra) {
        let g = builtin_group(&spec).unwrap();
        let p = conjugacy_classes(&g);
        let a = structure_constants(&g, &p);
        (g, p, a)
    }

    #[test]
    fn s3_relations_match_known_products() {
        let (_, _, alg) = setup(BuiltinGroup::Symmetric(3));
        // class order: identity, transpositions (α), 3-cycles (β)
        // α² = 3·1 + 3β
        assert_eq!(alg.c(1, 1, 0), 3);
        assert_eq!(alg.c(1, 1, 1), 0);
        assert_eq!(alg.c(1, 1, 2), 3);
        // αβ = 2α
        assert_eq!(alg.c(1, 2, 0), 0);
        assert_eq!(alg.c(1, 2, 1), 2);
        assert_eq!(alg.c(1, 2, 2), 0);
        // β² = 2·1 + β
        assert_eq!(alg.c(2, 2, 0), 2);
        assert_eq!(alg.c(2, 2, 2), 1);
        let rel = alg.relation_strings(&ClassAlgebra::class_names(3));
        assert_eq!(rel, vec!["α² = 3 + 3β", "αβ = 2α", "β² = 2 + β"]);
    }

    #[test]
    fn q8_squared_imaginary_class() {
        let (_, _, alg) = setup(BuiltinGroup::Quaternion8);
        // classes: 1, {-1} (α), {±i} (β), {±j} (γ), {±k} (δ); β² = 2 + 2α
        assert_eq!(alg.c(2, 2, 0), 2);
        assert_eq!(alg.c(2, 2, 1), 2);
        assert_eq!(alg.c(2, 2, 2), 0);
    }

    #[test]
    fn identity_class_is_the_unit() {
        for spec in [BuiltinGroup::Symmetric(4), BuiltinGroup::Quaternion8] {
            let (_, _, alg) = setup(spec);
            let k = alg.num_classes();
            for m in 0..k {
                for n in 0..k {
                    assert_eq!(alg.c(0, m, n), u64::from(m == n));
                }
            }
        }
    }

    #[test]
    fn commutativity_and_counting() {
        for spec in [
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Dihedral(6),
            BuiltinGroup::Quaternion8,
            BuiltinGroup::Alternating(4),
        ] {
            let (_, p, alg) = setup(spec);
            let k = alg.num_classes();
            for l in 0..k {
                for m in 0..k {
                    // symmetric constants: the center is commutative
                    for n in 0..k {
                        assert_eq!(alg.c(l, m, n), alg.c(m, l, n));
                    }
                    // counting: sum over target classes weighted by size
                    let total: u64 =
                        (0..k).map(|n| alg.c(l, m, n) * p.size(n) as u64).sum();
                    assert_eq!(total, (p.size(l) * p.size(m)) as u64);
                }
            }
        }
    }

    #[test]
    fn mult_matrices_commute_and_associate() {
        let (_, _, alg) = setup(BuiltinGroup::Symmetric(4));
        let k = alg.num_classes();
        for l in 0..k {
            for m in 0..k {
                // associativity of the structure constants
                for t in 0..k {
                    for n in 0..k {
                        let lhs: u64 = (0..k).map(|s| alg.c(l, m, s) * alg.c(s, t, n)).sum();
                        let rhs: u64 = (0..k).map(|s| alg.c(m, t, s) * alg.c(l, s, n)).sum();
                        assert_eq!(lhs, rhs);
                    }
                }
                let ml = alg.mult_matrix(l);
                let mm = alg.mult_matrix(m);
                let prod_lm = mat_mul_u64(&ml, &mm);
                let prod_ml = mat_mul_u64(&mm, &ml);
                assert_eq!(prod_lm, prod_ml);
            }
        }
    }

    fn mat_mul_u64(a: &Mat<u64>, b: &Mat<u64>) -> Vec<u64> {
        let n = a.rows;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                for t in 0..n {
                    out[i * n + j] += a.at(i, t) * b.at(t, j);
                }
            }
        }
        out
    }

    /// Independent oracle: multiply class sums as plain vectors over the
    /// group-element basis using only the multiplication table.
    #[test]
    fn brute_force_group_algebra_oracle() {
        for spec in [
            BuiltinGroup::Symmetric(3),
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Quaternion8,
            BuiltinGroup::Dihedral(5),
            BuiltinGroup::Cyclic(12),
        ] {
            let (g, p, alg) = setup(spec);
            assert!(g.order() <= 24);
            let k = p.num_classes();
            for l in 0..k {
                for m in 0..k {
                    let mut conv = vec![0u64; g.order()];
                    for &x in p.class(l) {
                        for &y in p.class(m) {
                            conv[g.mul(x as usize, y as usize)] += 1;
                        }
                    }
                    for n in 0..k {
                        let rep = p.representative(n);
                        assert_eq!(conv[rep], alg.c(l, m, n));
                        // and the convolution really is constant on classes
                        for &z in p.class(n) {
                            assert_eq!(conv[z as usize], conv[rep]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn center_membership() {
        let g = builtin_group(&BuiltinGroup::Symmetric(3)).unwrap();
        let p = conjugacy_classes(&g);
        let ctx = FieldContext::Rational;
        // a class sum is central
        let mut alpha = vec![ctx.zero(); g.order()];
        for &x in p.class(1) {
            alpha[x as usize] = ctx.one();
        }
        assert!(center_membership_check(&g, &p, &alpha));
        // a single transposition is not
        let mut e_t = vec![ctx.zero(); g.order()];
        e_t[p.representative(1)] = ctx.one();
        assert!(!center_membership_check(&g, &p, &e_t));
        // the all-ones vector is central in any group
        let s4 = builtin_group(&BuiltinGroup::Symmetric(4)).unwrap();
        let p4 = conjugacy_classes(&s4);
        let ones = vec![ctx.one(); s4.order()];
        assert!(center_membership_check(&s4, &p4, &ones));
    }

    #[test]
    fn multiply_center_elements_over_scalars() {
        let (_, _, alg) = setup(BuiltinGroup::Symmetric(3));
        let ctx = FieldContext::Rational;
        let one = |v: i64| Scalar::Rational(Rat::from_integer(BigInt::from(v)));
        // α * α = 3 + 3β
        let alpha = vec![one(0), one(1), one(0)];
        let sq = alg.multiply(&alpha, &alpha, &ctx);
        assert_eq!(sq, vec![one(3), one(0), one(3)]);
    }
}
