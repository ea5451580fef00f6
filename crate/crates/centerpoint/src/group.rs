//! Finite groups as explicit multiplication tables with conjugacy-class data.
//!
//! Elements are opaque indices into a dense `|G| x |G|` table; the identity is
//! always index 0.  Builtin families come with a documented canonical element
//! order (see [`builtin_group`]), and groups generated from permutations are
//! ordered by breadth-first discovery with a lexicographic tie-break on the
//! permutation images, so every construction is deterministic.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generated group exceeds the closure limit of {0}")]
    ClosureExceedsLimit(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unsupported parameter for builtin family: {0}")]
    UnsupportedParameter(String),
}

/// Largest multiplication table a builtin family will materialize.
pub const MAX_BUILTIN_ORDER: usize = 1024;

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn new(images: Vec<u16>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if (img as usize) >= n || seen[img as usize] {
                return Err(GroupError::InvalidPermutation(format!("images {images:?}")));
            }
            seen[img as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.0.len(), other.0.len());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Perm(images)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// Disjoint cycles of length >= 2, each rotated to start at its minimum,
    /// sorted by that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, weakly decreasing.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn moved_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &img)| *i != img as usize).count()
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Cycle notation with 1-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body =
                    c.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" ");
                format!("({body})")
            })
            .collect()
    }
}

/// Complete multiplication table of a finite group.
///
/// `mul[g][h]` holds the index of `g * h`; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    exponent: u64,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
    name: String,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn perms(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1u64;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn power(&self, g: usize, k: u64) -> usize {
        let mut acc = 0usize;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    fn from_elements(
        perms: Vec<Perm>,
        labels: Option<Vec<String>>,
        name: String,
    ) -> Result<GroupTable, GroupError> {
        let order = perms.len();
        let index: HashMap<&Perm, u32> =
            perms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let mut mul = vec![0u32; order * order];
        for (g, pg) in perms.iter().enumerate() {
            for (h, ph) in perms.iter().enumerate() {
                let prod = pg.compose(ph);
                let idx = *index.get(&prod).ok_or_else(|| {
                    GroupError::InvalidPermutation("element set is not closed".into())
                })?;
                mul[g * order + h] = idx;
            }
        }
        let labels =
            labels.unwrap_or_else(|| perms.iter().map(Perm::cycle_string).collect());
        Ok(GroupTable::from_raw(order, mul, labels, Some(perms), name))
    }

    fn from_raw(
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        perms: Option<Vec<Perm>>,
        name: String,
    ) -> GroupTable {
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let found = (0..order)
                .find(|&h| mul[g * order + h] == 0)
                .expect("every element has an inverse");
            inv[g] = found as u32;
        }
        let mut table = GroupTable { order, mul, inv, exponent: 1, labels, perms, name };
        let mut exponent = 1u64;
        for g in 0..order {
            exponent = exponent.lcm(&table.element_order(g));
        }
        table.exponent = exponent;
        table
    }

    /// Structural sanity check used by tests: identity at 0, inverse table,
    /// Latin-square rows and columns, full associativity.
    pub fn validate(&self) -> bool {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return false;
            }
            if self.mul(g, self.inv(g)) != 0 || self.mul(self.inv(g), g) != 0 {
                return false;
            }
            let row: BTreeSet<usize> = (0..n).map(|h| self.mul(g, h)).collect();
            let col: BTreeSet<usize> = (0..n).map(|h| self.mul(h, g)).collect();
            if row.len() != n || col.len() != n {
                return false;
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Breadth-first closure of a permutation generating set.
///
/// Element 0 is the identity; each BFS level is appended in lexicographic
/// order of image vectors, so the numbering is reproducible.
pub fn build_group_from_generators(
    generators: &[Perm],
    limit: usize,
) -> Result<GroupTable, GroupError> {
    if limit == 0 {
        return Err(GroupError::ClosureExceedsLimit(0));
    }
    if generators.is_empty() {
        return trivial_group();
    }
    let degree = generators[0].degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::InvalidPermutation("mixed permutation degrees".into()));
    }
    let mut elements = vec![Perm::identity(degree)];
    let mut known: BTreeSet<Perm> = elements.iter().cloned().collect();
    let mut frontier: Vec<Perm> = elements.clone();
    while !frontier.is_empty() {
        let mut discovered: BTreeSet<Perm> = BTreeSet::new();
        for g in &frontier {
            for gen in generators {
                let prod = g.compose(gen);
                if !known.contains(&prod) {
                    discovered.insert(prod);
                }
            }
        }
        frontier = discovered.iter().cloned().collect();
        for p in discovered {
            known.insert(p.clone());
            elements.push(p);
            if elements.len() > limit {
                return Err(GroupError::ClosureExceedsLimit(limit));
            }
        }
    }
    GroupTable::from_elements(elements, None, "generated".into())
}

fn trivial_group() -> Result<GroupTable, GroupError> {
    GroupTable::from_elements(vec![Perm::identity(1)], Some(vec!["()".into()]), "C1".into())
}

/// Builtin group families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinGroup {
    Symmetric(u32),
    Alternating(u32),
    Cyclic(u32),
    Dihedral(u32),
    Quaternion8,
    DirectProduct(Box<BuiltinGroup>, Box<BuiltinGroup>),
}

impl BuiltinGroup {
    pub fn name(&self) -> String {
        match self {
            BuiltinGroup::Symmetric(d) => format!("S{d}"),
            BuiltinGroup::Alternating(d) => format!("A{d}"),
            BuiltinGroup::Cyclic(n) => format!("C{n}"),
            BuiltinGroup::Dihedral(n) => format!("D{n}"),
            BuiltinGroup::Quaternion8 => "Q8".into(),
            BuiltinGroup::DirectProduct(a, b) => format!("{}x{}", a.name(), b.name()),
        }
    }
}

/// Cycle-structure sort key grouping elements by class: identity first, then
/// single k-cycles by increasing k, then multi-cycle types by support size,
/// with a lexicographic tie-break on images within a type.
fn cycle_structure_key(p: &Perm) -> (usize, usize, Vec<usize>, Vec<u16>) {
    let cycles = p.cycles();
    let lens: Vec<usize> = {
        let mut v: Vec<usize> = cycles.iter().map(Vec::len).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    (cycles.len(), p.moved_points(), lens, p.images().to_vec())
}

fn all_permutations(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<u16> = (0..d as u16).collect();
    loop {
        out.push(Perm(images.clone()));
        // next permutation in lexicographic order
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1])
        else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}

fn check_order(order: usize, what: &str) -> Result<(), GroupError> {
    if order == 0 || order > MAX_BUILTIN_ORDER {
        return Err(GroupError::UnsupportedParameter(format!(
            "{what} has order {order}, supported range is 1..={MAX_BUILTIN_ORDER}"
        )));
    }
    Ok(())
}

/// Construct a builtin group with its canonical element order.
///
/// Orders used: symmetric and alternating groups sort elements by cycle
/// structure (identity, transpositions, 3-cycles, ..., then multi-cycle
/// types); cyclic groups list powers of the generator; dihedral groups list
/// rotations then reflections; the quaternion group is `1, -1, i, -i, j, -j,
/// k, -k`; direct products are ordered lexicographically by factor indices.
pub fn builtin_group(spec: &BuiltinGroup) -> Result<GroupTable, GroupError> {
    match spec {
        BuiltinGroup::Symmetric(d) => {
            let d = *d as usize;
            if d == 0 {
                return Err(GroupError::UnsupportedParameter("S0 is empty".into()));
            }
            let order: usize = (1..=d).product();
            check_order(order, &format!("S{d}"))?;
            let mut perms = all_permutations(d);
            perms.sort_by_key(cycle_structure_key);
            GroupTable::from_elements(perms, None, format!("S{d}"))
        }
        BuiltinGroup::Alternating(d) => {
            let d = *d as usize;
            if d == 0 {
                return Err(GroupError::UnsupportedParameter("A0 is empty".into()));
            }
            let order: usize = (1..=d).product::<usize>().max(2) / if d >= 2 { 2 } else { 1 };
            check_order(order, &format!("A{d}"))?;
            let mut perms: Vec<Perm> =
                all_permutations(d).into_iter().filter(Perm::is_even).collect();
            perms.sort_by_key(cycle_structure_key);
            GroupTable::from_elements(perms, None, format!("A{d}"))
        }
        BuiltinGroup::Cyclic(n) => {
            let n = *n as usize;
            check_order(n, &format!("C{n}"))?;
            if n == 1 {
                return trivial_group();
            }
            let rot = Perm((0..n).map(|i| ((i + 1) % n) as u16).collect());
            let mut perms = Vec::with_capacity(n);
            let mut cur = Perm::identity(n);
            for _ in 0..n {
                perms.push(cur.clone());
                cur = rot.compose(&cur);
            }
            let labels = (0..n)
                .map(|k| if k == 0 { "1".into() } else { format!("g^{k}") })
                .collect();
            GroupTable::from_elements(perms, Some(labels), format!("C{n}"))
        }
        BuiltinGroup::Dihedral(n) => {
            let n = *n as usize;
            if n < 3 {
                return Err(GroupError::UnsupportedParameter(
                    "dihedral parameter must be at least 3".into(),
                ));
            }
            check_order(2 * n, &format!("D{n}"))?;
            let rot = Perm((0..n).map(|i| ((i + 1) % n) as u16).collect());
            let refl = Perm((0..n).map(|i| ((n - i) % n) as u16).collect());
            let mut perms = Vec::with_capacity(2 * n);
            let mut labels = Vec::with_capacity(2 * n);
            let mut cur = Perm::identity(n);
            for k in 0..n {
                perms.push(cur.clone());
                labels.push(if k == 0 { "1".into() } else { format!("r^{k}") });
                cur = rot.compose(&cur);
            }
            for k in 0..n {
                perms.push(refl.compose(&perms[k]));
                labels.push(if k == 0 { "s".into() } else { format!("s·r^{k}") });
            }
            GroupTable::from_elements(perms, Some(labels), format!("D{n}"))
        }
        BuiltinGroup::Quaternion8 => quaternion_group(),
        BuiltinGroup::DirectProduct(a, b) => {
            let ga = builtin_group(a)?;
            let gb = builtin_group(b)?;
            direct_product(&ga, &gb)
        }
    }
}

/// `Q8 = {1, -1, i, -i, j, -j, k, -k}` with that element order.
fn quaternion_group() -> Result<GroupTable, GroupError> {
    // element index = 2*axis + sign, axes 1, i, j, k
    fn axis_mul(a: usize, b: usize) -> (bool, usize) {
        match (a, b) {
            (0, x) => (false, x),
            (x, 0) => (false, x),
            (1, 1) | (2, 2) | (3, 3) => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let order = 8;
    let mut mul = vec![0u32; order * order];
    for g in 0..order {
        for h in 0..order {
            let (a1, s1) = (g / 2, g % 2 == 1);
            let (a2, s2) = (h / 2, h % 2 == 1);
            let (extra, axis) = axis_mul(a1, a2);
            let sign = s1 ^ s2 ^ extra;
            mul[g * order + h] = (2 * axis + sign as usize) as u32;
        }
    }
    let labels: Vec<String> =
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    let table = GroupTable::from_raw(order, mul, labels, None, "Q8".into());
    // regular representation gives a faithful permutation model
    let perms: Vec<Perm> = (0..order)
        .map(|g| Perm((0..order).map(|h| table.mul(g, h) as u16).collect()))
        .collect();
    let mut table = table;
    table.perms = Some(perms);
    Ok(table)
}

/// Direct product with pairs ordered lexicographically by factor indices.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
    let order = a.order() * b.order();
    check_order(order, "direct product")?;
    let nb = b.order();
    let mut mul = vec![0u32; order * order];
    for g in 0..order {
        for h in 0..order {
            let (ga, gb) = (g / nb, g % nb);
            let (ha, hb) = (h / nb, h % nb);
            mul[g * order + h] = (a.mul(ga, ha) * nb + b.mul(gb, hb)) as u32;
        }
    }
    let labels = (0..order)
        .map(|g| format!("({},{})", a.label(g / nb), b.label(g % nb)))
        .collect();
    let perms = match (a.perms(), b.perms()) {
        (Some(pa), Some(pb)) => {
            let da = pa[0].degree();
            let db = pb[0].degree();
            Some(
                (0..order)
                    .map(|g| {
                        let (ga, gb) = (g / nb, g % nb);
                        let mut images: Vec<u16> = Vec::with_capacity(da + db);
                        images.extend(pa[ga].images().iter().copied());
                        images.extend(pb[gb].images().iter().map(|&x| x + da as u16));
                        Perm(images)
                    })
                    .collect(),
            )
        }
        _ => None,
    };
    Ok(GroupTable::from_raw(
        order,
        mul,
        labels,
        perms,
        format!("{}x{}", a.name(), b.name()),
    ))
}

/// Conjugacy-class partition with inverse and power maps.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
    sizes: Vec<usize>,
    inverse_class: Vec<u32>,
    /// `power_class[k][c]` is the class of `g^k` for `g` in class `c`,
    /// for `k` in `0..=exponent`.
    power_class: Vec<Vec<u32>>,
    /// Order of the elements of each class.
    class_orders: Vec<u64>,
}

impl ClassPartition {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g] as usize
    }

    pub fn class(&self, c: usize) -> &[u32] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c] as usize
    }

    pub fn power_class(&self, c: usize, k: u64) -> usize {
        self.power_class[k as usize][c] as usize
    }

    pub fn class_order(&self, c: usize) -> u64 {
        self.class_orders[c]
    }
}

/// Conjugacy classes in deterministic order: class 0 is the identity, the
/// rest are sorted by their minimal element index.
pub fn conjugacy_classes(group: &GroupTable) -> ClassPartition {
    let n = group.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for g in 0..n {
        if class_of[g] != u32::MAX {
            continue;
        }
        let c = classes.len() as u32;
        let mut members: BTreeSet<usize> = BTreeSet::new();
        for h in 0..n {
            members.insert(group.conjugate(g, h));
        }
        for &m in &members {
            class_of[m] = c;
        }
        classes.push(members.into_iter().map(|m| m as u32).collect());
    }
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let inverse_class: Vec<u32> = classes
        .iter()
        .map(|cl| class_of[group.inv(cl[0] as usize)])
        .collect();
    let exponent = group.exponent();
    let mut power_class = Vec::with_capacity(exponent as usize + 1);
    for k in 0..=exponent {
        power_class.push(
            classes
                .iter()
                .map(|cl| class_of[group.power(cl[0] as usize, k)])
                .collect(),
        );
    }
    let class_orders =
        classes.iter().map(|cl| group.element_order(cl[0] as usize)).collect();
    ClassPartition { class_of, classes, sizes, inverse_class, power_class, class_orders }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u16]) -> Perm {
        Perm::new(images.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_s3_generators() {
        // a transposition and a 3-cycle generate S3
        let g = build_group_from_generators(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.validate());
    }

    #[test]
    fn closure_of_empty_set_is_trivial() {
        let g = build_group_from_generators(&[], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn closure_of_four_cycle() {
        let g = build_group_from_generators(&[perm(&[1, 2, 3, 0])], 100).unwrap();
        // brute-force oracle: distinct powers of a 4-cycle
        let mut seen = BTreeSet::new();
        let mut cur = perm(&[1, 2, 3, 0]);
        loop {
            if !seen.insert(cur.clone()) {
                break;
            }
            cur = cur.compose(&perm(&[1, 2, 3, 0]));
        }
        assert_eq!(g.order(), seen.len());
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn closure_limit_is_enforced() {
        let err = build_group_from_generators(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 3);
        assert_eq!(err.unwrap_err(), GroupError::ClosureExceedsLimit(3));
    }

    #[test]
    fn invalid_permutation_rejected() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn builtin_orders_and_exponents() {
        let s3 = builtin_group(&BuiltinGroup::Symmetric(3)).unwrap();
        assert_eq!(s3.order(), 6);
        let q8 = builtin_group(&BuiltinGroup::Quaternion8).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.exponent(), 4);
        assert!(q8.validate());
        let c5 = builtin_group(&BuiltinGroup::Cyclic(5)).unwrap();
        assert_eq!(c5.order(), 5);
        assert_eq!(c5.exponent(), 5);
        let d4 = builtin_group(&BuiltinGroup::Dihedral(4)).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(d4.validate());
        assert!(builtin_group(&BuiltinGroup::Symmetric(0)).is_err());
        assert!(builtin_group(&BuiltinGroup::Symmetric(8)).is_err());
    }

    #[test]
    fn class_sizes_in_canonical_order() {
        let s3 = builtin_group(&BuiltinGroup::Symmetric(3)).unwrap();
        let p3 = conjugacy_classes(&s3);
        assert_eq!(p3.sizes(), &[1, 3, 2]);

        let q8 = builtin_group(&BuiltinGroup::Quaternion8).unwrap();
        let pq = conjugacy_classes(&q8);
        assert_eq!(pq.sizes(), &[1, 1, 2, 2, 2]);

        let s4 = builtin_group(&BuiltinGroup::Symmetric(4)).unwrap();
        let p4 = conjugacy_classes(&s4);
        assert_eq!(p4.sizes(), &[1, 6, 8, 6, 3]);
    }

    #[test]
    fn classes_are_conjugation_invariant() {
        for spec in [
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Alternating(5),
            BuiltinGroup::Dihedral(6),
            BuiltinGroup::Quaternion8,
        ] {
            let g = builtin_group(&spec).unwrap();
            assert!(g.order() <= 200);
            let p = conjugacy_classes(&g);
            for a in 0..g.order() {
                for h in 0..g.order() {
                    assert_eq!(p.class_of(g.conjugate(a, h)), p.class_of(a));
                }
            }
            assert_eq!(p.sizes().iter().sum::<usize>(), g.order());
            assert_eq!(p.size(0), 1);
        }
    }

    #[test]
    fn inverse_and_power_maps() {
        for spec in [
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Cyclic(12),
            BuiltinGroup::Quaternion8,
            BuiltinGroup::Alternating(4),
        ] {
            let g = builtin_group(&spec).unwrap();
            let p = conjugacy_classes(&g);
            let m = p.num_classes();
            // inverse_class is an involution
            for c in 0..m {
                assert_eq!(p.inverse_class(p.inverse_class(c)), c);
            }
            // power 1 is the identity map; power exponent lands on class 0
            for c in 0..m {
                assert_eq!(p.power_class(c, 1), c);
                assert_eq!(p.power_class(c, g.exponent()), 0);
            }
        }
    }

    #[test]
    fn rebuilding_from_all_elements_is_idempotent() {
        for spec in [
            BuiltinGroup::Symmetric(4),
            BuiltinGroup::Dihedral(5),
            BuiltinGroup::Quaternion8,
        ] {
            let g = builtin_group(&spec).unwrap();
            let rebuilt =
                build_group_from_generators(g.perms().unwrap(), g.order()).unwrap();
            assert_eq!(rebuilt.order(), g.order());
            let mut sizes_a = conjugacy_classes(&g).sizes().to_vec();
            let mut sizes_b = conjugacy_classes(&rebuilt).sizes().to_vec();
            sizes_a.sort_unstable();
            sizes_b.sort_unstable();
            assert_eq!(sizes_a, sizes_b);
            assert_eq!(rebuilt.exponent(), g.exponent());
        }
    }

    #[test]
    fn direct_product_structure() {
        let c2 = builtin_group(&BuiltinGroup::Cyclic(2)).unwrap();
        let v4 = direct_product(&c2, &c2).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        assert!(v4.validate());
        let p = conjugacy_classes(&v4);
        assert_eq!(p.num_classes(), 4);
    }

    #[test]
    fn s4_class_representatives_follow_cycle_types() {
        let s4 = builtin_group(&BuiltinGroup::Symmetric(4)).unwrap();
        let p = conjugacy_classes(&s4);
        let perms = s4.perms().unwrap();
        let types: Vec<Vec<usize>> = (0..p.num_classes())
            .map(|c| perms[p.representative(c)].cycle_lengths())
            .collect();
        assert_eq!(
            types,
            vec![
                vec![1, 1, 1, 1],
                vec![2, 1, 1],
                vec![3, 1],
                vec![4],
                vec![2, 2],
            ]
        );
    }
}
