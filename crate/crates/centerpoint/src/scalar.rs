//! Exact field arithmetic: rationals, prime fields, and cyclotomic extensions.
//!
//! A [`Scalar`] is a tagged exact field element.  Cyclotomic elements live in
//! `Q(zeta_m)` represented on the power basis modulo the m-th cyclotomic
//! polynomial, so every value has a unique normal form and equality is
//! structural.  There is no floating point anywhere in this crate.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::modp;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar contexts do not match: {0}")]
    ContextMismatch(String),
    #[error("rational reconstruction bound too large for modulus: 2*{bound}^2 >= {modulus}")]
    BoundTooLargeForModulus { bound: u64, modulus: u64 },
}

/// Euler totient by trial division.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            result -= result / d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn int(v: i64) -> Int {
    Int::from(v)
}

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

// ---------------------------------------------------------------------------
// Integer polynomials (ascending coefficients) for cyclotomic polynomials.
// ---------------------------------------------------------------------------

fn int_poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem: Vec<Int> = num.to_vec();
    let mut quot = vec![Int::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        let lead = std::mem::take(&mut rem[i]);
        if lead.is_zero() {
            continue;
        }
        let shift = i - dd;
        for k in 0..dd {
            rem[shift + k] -= &lead * &den[k];
        }
        quot[shift] = lead;
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Coefficients of the m-th cyclotomic polynomial, ascending, monic, of
/// degree `euler_phi(m)`.  Computed by exact division of `x^m - 1` by all
/// lower cyclotomic polynomials of divisor index, and memoized globally.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Int>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Int>>>>> = OnceLock::new();
    assert!(m >= 1);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    // x^m - 1
    let mut poly = vec![Int::zero(); m as usize + 1];
    poly[0] = int(-1);
    poly[m as usize] = Int::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            poly = int_poly_div_exact(&poly, &phi_d);
        }
    }
    debug_assert_eq!(poly.len() as u32 - 1, euler_phi(m));
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(m, arc.clone());
    arc
}

// ---------------------------------------------------------------------------
// Rational polynomials, used for arithmetic modulo the cyclotomic polynomial.
// ---------------------------------------------------------------------------

fn rat_poly_trim(p: &mut Vec<Rat>) {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Remainder of `a` modulo a monic integer polynomial, in place, padded to
/// exactly `phi.len() - 1` coefficients.
fn reduce_mod_phi(c: &mut Vec<Rat>, phi: &[Int]) {
    let deg = phi.len() - 1;
    while c.len() > deg {
        let d = c.len() - 1;
        let lead = c[d].clone();
        if !lead.is_zero() {
            for k in 0..=deg {
                if !phi[k].is_zero() {
                    let t = &lead * Rat::from_integer(phi[k].clone());
                    c[d - deg + k] -= t;
                }
            }
        }
        c.truncate(d);
    }
    c.resize(deg, Rat::zero());
}

/// Half-extended Euclid: returns `(g, u)` with `u*a = g (mod b)` and `g` the
/// gcd of `a` and `b` as polynomials over the rationals.
fn rat_poly_half_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0: Vec<Rat> = b.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    rat_poly_trim(&mut r0);
    rat_poly_trim(&mut r1);
    let mut u0: Vec<Rat> = vec![];
    let mut u1: Vec<Rat> = vec![Rat::one()];
    while !r1.is_empty() {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut quot = vec![Rat::zero(); rem.len().saturating_sub(r1.len()) + 1];
        let lead_inv = {
            let l = r1.last().unwrap();
            Rat::one() / l
        };
        while rem.len() >= r1.len() && !rem.is_empty() {
            let d = rem.len() - 1;
            let coef = &rem[d] * &lead_inv;
            if !coef.is_zero() {
                let shift = d + 1 - r1.len();
                for (k, rk) in r1.iter().enumerate() {
                    let t = &coef * rk;
                    rem[shift + k] -= t;
                }
                quot[shift] = coef;
            }
            rem.truncate(d);
            rat_poly_trim(&mut rem);
            if rem.len() < r1.len() {
                break;
            }
        }
        // u_next = u0 - quot * u1
        let qu = rat_poly_mul(&quot, &u1);
        let mut un = u0.clone();
        un.resize(un.len().max(qu.len()), Rat::zero());
        for (k, q) in qu.iter().enumerate() {
            un[k] -= q;
        }
        rat_poly_trim(&mut un);
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = un;
    }
    (r0, u0)
}

// ---------------------------------------------------------------------------
// Cyclotomic field elements.
// ---------------------------------------------------------------------------

/// An element of `Q(zeta_m)` on the power basis `1, z, ..., z^(phi(m)-1)`
/// modulo the m-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycElem {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl CycElem {
    pub fn new(conductor: u32, mut coeffs: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        reduce_mod_phi(&mut coeffs, &phi);
        CycElem { conductor, coeffs }
    }

    pub fn zero(conductor: u32) -> Self {
        CycElem::new(conductor, vec![])
    }

    pub fn from_rat(conductor: u32, value: Rat) -> Self {
        CycElem::new(conductor, vec![value])
    }

    /// `zeta_m ^ k`.
    pub fn zeta_pow(conductor: u32, k: u64) -> Self {
        let k = (k % conductor as u64) as usize;
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        CycElem::new(conductor, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, other: &CycElem) -> bool {
        self.conductor == other.conductor
    }

    pub fn add(&self, other: &CycElem) -> CycElem {
        assert!(self.same_field(other));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycElem { conductor: self.conductor, coeffs }
    }

    pub fn sub(&self, other: &CycElem) -> CycElem {
        assert!(self.same_field(other));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycElem { conductor: self.conductor, coeffs }
    }

    pub fn neg(&self) -> CycElem {
        CycElem {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycElem) -> CycElem {
        assert!(self.same_field(other));
        let mut prod = rat_poly_mul(&self.coeffs, &other.coeffs);
        let phi = cyclotomic_polynomial(self.conductor);
        reduce_mod_phi(&mut prod, &phi);
        CycElem { conductor: self.conductor, coeffs: prod }
    }

    pub fn inv(&self) -> Result<CycElem, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let phi_rat: Vec<Rat> = phi.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let (g, u) = rat_poly_half_xgcd(&self.coeffs, &phi_rat);
        assert_eq!(g.len(), 1, "cyclotomic polynomial must be coprime to a nonzero element");
        let scale = Rat::one() / &g[0];
        let mut coeffs: Vec<Rat> = u.iter().map(|c| c * &scale).collect();
        reduce_mod_phi(&mut coeffs, &phi);
        Ok(CycElem { conductor: self.conductor, coeffs })
    }

    /// Embed into `Q(zeta_target)` for a conductor multiple via
    /// `zeta_m = zeta_target ^ (target/m)`.
    pub fn embed(&self, target: u32) -> Result<CycElem, ScalarError> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        if target % self.conductor != 0 {
            return Err(ScalarError::ContextMismatch(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{})",
                self.conductor, target
            )));
        }
        let step = (target / self.conductor) as usize;
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Ok(CycElem::new(target, coeffs))
    }

    /// Evaluate modulo `p` by substituting a root of unity image for `zeta_m`.
    pub fn eval_mod_p(&self, p: u64, zeta_image: u64) -> Result<u64, ScalarError> {
        let mut acc = 0u64;
        let mut power = 1u64;
        for c in &self.coeffs {
            let c_mod = rat_mod_p(c, p)?;
            acc = modp::addmod(acc, modp::mulmod(c_mod, power, p), p);
            power = modp::mulmod(power, zeta_image, p);
        }
        Ok(acc)
    }
}

/// Image of a rational in `F_p`; fails if `p` divides the denominator.
pub fn rat_mod_p(r: &Rat, p: u64) -> Result<u64, ScalarError> {
    let p_int = int(p as i64);
    let num = r.numer().mod_floor(&p_int);
    let den = r.denom().mod_floor(&p_int);
    let num_u: u64 = num.try_into().expect("reduced residue fits u64");
    let den_u: u64 = den.try_into().expect("reduced residue fits u64");
    if den_u == 0 {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(modp::mulmod(num_u, modp::invmod(den_u, p), p))
}

// ---------------------------------------------------------------------------
// Scalars and field contexts.
// ---------------------------------------------------------------------------

/// The coefficient field a computation runs in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldContext {
    Rational,
    Cyclotomic { conductor: u32 },
    PrimeField { modulus: u64 },
}

impl FieldContext {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldContext::PrimeField { modulus } => *modulus,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldContext::Rational => Scalar::Rational(rat_int(v)),
            FieldContext::Cyclotomic { conductor } => {
                Scalar::Cyclotomic(CycElem::from_rat(*conductor, rat_int(v)))
            }
            FieldContext::PrimeField { modulus } => {
                let r = int(v).mod_floor(&int(*modulus as i64));
                Scalar::PrimeField {
                    residue: r.try_into().expect("residue fits u64"),
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn from_rat(&self, v: &Rat) -> Result<Scalar, ScalarError> {
        match self {
            FieldContext::Rational => Ok(Scalar::Rational(v.clone())),
            FieldContext::Cyclotomic { conductor } => {
                Ok(Scalar::Cyclotomic(CycElem::from_rat(*conductor, v.clone())))
            }
            FieldContext::PrimeField { modulus } => Ok(Scalar::PrimeField {
                residue: rat_mod_p(v, *modulus)?,
                modulus: *modulus,
            }),
        }
    }

    /// A fixed primitive root of unity of order `order` in this context.
    /// For cyclotomic contexts the conductor must be a multiple of `order`.
    pub fn root_of_unity(&self, order: u64, power: u64) -> Result<Scalar, ScalarError> {
        match self {
            FieldContext::Rational => {
                if order <= 2 {
                    Ok(self.from_i64(if order == 2 && power % 2 == 1 { -1 } else { 1 }))
                } else {
                    Err(ScalarError::ContextMismatch(format!(
                        "rationals contain no primitive root of order {order}"
                    )))
                }
            }
            FieldContext::Cyclotomic { conductor } => {
                if *conductor as u64 % order != 0 {
                    return Err(ScalarError::ContextMismatch(format!(
                        "Q(zeta_{conductor}) contains no root of order {order}"
                    )));
                }
                let step = *conductor as u64 / order;
                Ok(Scalar::Cyclotomic(CycElem::zeta_pow(*conductor, step * (power % order))))
            }
            FieldContext::PrimeField { modulus } => {
                if (*modulus - 1) % order != 0 {
                    return Err(ScalarError::ContextMismatch(format!(
                        "F_{modulus} contains no root of order {order}"
                    )));
                }
                let g = modp::smallest_primitive_root(*modulus);
                let theta = modp::powmod(g, (*modulus - 1) / order, *modulus);
                Ok(Scalar::PrimeField {
                    residue: modp::powmod(theta, power % order, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::Rational => write!(f, "Q"),
            FieldContext::Cyclotomic { conductor } => write!(f, "Q(zeta_{conductor})"),
            FieldContext::PrimeField { modulus } => write!(f, "F_{modulus}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rat),
    PrimeField { residue: u64, modulus: u64 },
    Cyclotomic(CycElem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn context(&self) -> FieldContext {
        match self {
            Scalar::Rational(_) => FieldContext::Rational,
            Scalar::PrimeField { modulus, .. } => FieldContext::PrimeField { modulus: *modulus },
            Scalar::Cyclotomic(c) => FieldContext::Cyclotomic { conductor: c.conductor() },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::PrimeField { residue, .. } => *residue == 0,
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::PrimeField { residue, .. } => *residue == 1,
            Scalar::Cyclotomic(c) => c.as_rational().map(|r| r.is_one()).unwrap_or(false),
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::ContextMismatch(format!("{} vs {}", self.context(), other.context()))
    }

    /// Panics on context mismatch; use [`field_arithmetic`] for checked ops.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::PrimeField { residue: a, modulus: p },
                Scalar::PrimeField { residue: b, modulus: q },
            ) if p == q => Scalar::PrimeField { residue: modp::addmod(*a, *b, *p), modulus: *p },
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.conductor() == b.conductor() => {
                Scalar::Cyclotomic(a.add(b))
            }
            _ => panic!("{}", self.mismatch(other)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::PrimeField { residue: a, modulus: p },
                Scalar::PrimeField { residue: b, modulus: q },
            ) if p == q => Scalar::PrimeField { residue: modp::submod(*a, *b, *p), modulus: *p },
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.conductor() == b.conductor() => {
                Scalar::Cyclotomic(a.sub(b))
            }
            _ => panic!("{}", self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::PrimeField { residue: a, modulus: p },
                Scalar::PrimeField { residue: b, modulus: q },
            ) if p == q => Scalar::PrimeField { residue: modp::mulmod(*a, *b, *p), modulus: *p },
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.conductor() == b.conductor() => {
                Scalar::Cyclotomic(a.mul(b))
            }
            _ => panic!("{}", self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::PrimeField { residue, modulus } => Scalar::PrimeField {
                residue: modp::negmod(*residue, *modulus),
                modulus: *modulus,
            },
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::PrimeField { residue, modulus } => Scalar::PrimeField {
                residue: modp::invmod(*residue, *modulus),
                modulus: *modulus,
            },
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.inv()?),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.context().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// The underlying rational when the value lies in the prime subfield of a
    /// characteristic-zero context.
    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) => c.as_rational(),
            Scalar::PrimeField { .. } => None,
        }
    }

    /// Re-express in another context when a canonical embedding exists.
    pub fn promote(&self, target: &FieldContext) -> Result<Scalar, ScalarError> {
        if &self.context() == target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Rational(r), _) => target.from_rat(r),
            (Scalar::Cyclotomic(c), FieldContext::Cyclotomic { conductor }) => {
                Ok(Scalar::Cyclotomic(c.embed(*conductor)?))
            }
            (Scalar::Cyclotomic(c), FieldContext::Rational) => c
                .as_rational()
                .map(Scalar::Rational)
                .ok_or_else(|| ScalarError::ContextMismatch("irrational cyclotomic value".into())),
            _ => Err(ScalarError::ContextMismatch(format!(
                "no embedding {} -> {}",
                self.context(),
                target
            ))),
        }
    }

    /// Total order used only to fix deterministic output orderings.
    pub fn canonical_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        fn tag(s: &Scalar) -> u8 {
            match s {
                Scalar::Rational(_) => 0,
                Scalar::PrimeField { .. } => 1,
                Scalar::Cyclotomic(_) => 2,
            }
        }
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::PrimeField { residue: a, .. }, Scalar::PrimeField { residue: b, .. }) => {
                a.cmp(b)
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.coeffs().len().cmp(&b.coeffs().len())
            }
            _ => tag(self).cmp(&tag(other)),
        }
    }

    /// Reduce modulo `p`, mapping the cyclotomic generator to `zeta_image`.
    pub fn eval_mod_p(&self, p: u64, zeta_image: u64) -> Result<u64, ScalarError> {
        match self {
            Scalar::Rational(r) => rat_mod_p(r, p),
            Scalar::PrimeField { residue, modulus } if *modulus == p => Ok(*residue),
            Scalar::PrimeField { .. } => {
                Err(ScalarError::ContextMismatch("prime field modulus differs".into()))
            }
            Scalar::Cyclotomic(c) => c.eval_mod_p(p, zeta_image),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::PrimeField { residue, .. } => write!(f, "{residue}"),
            Scalar::Cyclotomic(c) => {
                if c.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, coef) in c.coeffs().iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let mag = coef.abs();
                    if first {
                        if coef.is_negative() {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if coef.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    if i == 0 {
                        write!(f, "{mag}")?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{mag}*")?;
                        }
                        if i == 1 {
                            write!(f, "z")?;
                        } else {
                            write!(f, "z^{i}")?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Checked arithmetic over matching contexts, the error-reporting surface of
/// this module.
pub fn field_arithmetic(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    if a.context() != b.context() {
        return Err(a.mismatch(b));
    }
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

/// Unique rational `a/b` with `|a| <= bound`, `0 < b <= bound`,
/// `a = b*residue (mod p)`, found by half-extended Euclid; `None` when no
/// such rational exists.
pub fn rational_reconstruct(
    residue: u64,
    p: u64,
    bound: u64,
) -> Result<Option<Rat>, ScalarError> {
    if 2u128 * (bound as u128) * (bound as u128) >= p as u128 {
        return Err(ScalarError::BoundTooLargeForModulus { bound, modulus: p });
    }
    let bound_i = bound as i128;
    let (mut r0, mut r1) = (p as i128, (residue % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound_i {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let t = t0 - q * t1;
        t0 = t1;
        t1 = t;
    }
    if t1 == 0 {
        return Ok(None);
    }
    let (mut a, mut b) = (r1, t1);
    if b < 0 {
        a = -a;
        b = -b;
    }
    if a.abs() > bound_i || b > bound_i {
        return Ok(None);
    }
    if num_integer::gcd(a.unsigned_abs(), b.unsigned_abs()) != 1 {
        return Ok(None);
    }
    Ok(Some(Rat::new(Int::from(a), Int::from(b))))
}

/// Exact integer square root check.
pub fn perfect_square_root(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(int(n), int(d))
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![int(-1), int(1)]);
        assert_eq!(*cyclotomic_polynomial(4), vec![int(1), int(0), int(1)]);
        // x^4 - x^2 + 1, obtained by dividing x^12 - 1 by the lower factors
        assert_eq!(
            *cyclotomic_polynomial(12),
            vec![int(1), int(0), int(-1), int(0), int(1)]
        );
    }

    #[test]
    fn cyclotomic_polynomials_divide_x_m_minus_1() {
        for m in 1..=60u32 {
            let phi = cyclotomic_polynomial(m);
            let mut xm = vec![Int::zero(); m as usize + 1];
            xm[0] = int(-1);
            xm[m as usize] = int(1);
            // exact division panics on a nonzero remainder
            let quot = int_poly_div_exact(&xm, &phi);
            assert_eq!(quot.len() as u32 + euler_phi(m), m + 1);
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = Scalar::Rational(rat(1, 6));
        let sum = field_arithmetic(&a, &a, ArithOp::Add).unwrap();
        assert_eq!(sum, Scalar::Rational(rat(1, 3)));

        let ctx = FieldContext::PrimeField { modulus: 7 };
        let prod =
            field_arithmetic(&ctx.from_i64(3), &ctx.from_i64(5), ArithOp::Mul).unwrap();
        assert_eq!(prod, ctx.one());

        let zeta4 = Scalar::Cyclotomic(CycElem::zeta_pow(4, 1));
        let sq = field_arithmetic(&zeta4, &zeta4, ArithOp::Mul).unwrap();
        assert_eq!(sq, Scalar::Cyclotomic(CycElem::from_rat(4, rat(-1, 1))));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = Scalar::Rational(rat(1, 2));
        let b = FieldContext::PrimeField { modulus: 7 }.one();
        assert!(matches!(
            field_arithmetic(&a, &b, ArithOp::Add),
            Err(ScalarError::ContextMismatch(_))
        ));
        let z = FieldContext::Rational.zero();
        assert_eq!(
            field_arithmetic(&a, &z, ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn reconstruct_examples() {
        // 1/2 mod 101: inverse of 2 is 51
        assert_eq!(rational_reconstruct(51, 101, 7).unwrap(), Some(rat(1, 2)));
        assert_eq!(rational_reconstruct(3, 101, 7).unwrap(), Some(rat(3, 1)));
        // -1/6 mod 1009: 6 * 841 = 5046 = 5*1009 + 1, so -1/6 = 1009 - 841
        assert_eq!(modp::mulmod(6, 841, 1009), 1);
        assert_eq!(
            rational_reconstruct(1009 - 841, 1009, 20).unwrap(),
            Some(rat(-1, 6))
        );
        assert!(matches!(
            rational_reconstruct(5, 101, 8),
            Err(ScalarError::BoundTooLargeForModulus { .. })
        ));
    }

    #[test]
    fn reconstruct_roundtrip_random() {
        let p = 1_000_003u64;
        let bound = 500u64;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.random_range(-(bound as i64)..=bound as i64);
            let d = rng.random_range(1..=bound as i64);
            let q = rat(n, d);
            let image = rat_mod_p(&q, p).unwrap();
            let back = rational_reconstruct(image, p, bound).unwrap();
            assert_eq!(back, Some(q.reduced()));
        }
    }

    fn random_scalar(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> Scalar {
        match ctx {
            FieldContext::Rational => {
                Scalar::Rational(rat(rng.random_range(-20..=20), rng.random_range(1..=12)))
            }
            FieldContext::PrimeField { modulus } => ctx.from_i64(rng.random_range(0..*modulus) as i64),
            FieldContext::Cyclotomic { conductor } => {
                let phi = euler_phi(*conductor) as usize;
                let coeffs = (0..phi).map(|_| rat(rng.random_range(-5..=5), 1)).collect();
                Scalar::Cyclotomic(CycElem::new(*conductor, coeffs))
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        let contexts = [
            FieldContext::Rational,
            FieldContext::PrimeField { modulus: 7 },
            FieldContext::Cyclotomic { conductor: 12 },
        ];
        for ctx in &contexts {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..10_000 {
                let a = random_scalar(ctx, &mut rng);
                let b = random_scalar(ctx, &mut rng);
                let c = random_scalar(ctx, &mut rng);
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b), b.mul(&a));
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                assert!(a.sub(&a).is_zero());
            }
        }
    }

    #[test]
    fn promotion_and_projection() {
        let half = Scalar::Rational(rat(1, 2));
        let up = half.promote(&FieldContext::Cyclotomic { conductor: 4 }).unwrap();
        assert_eq!(up.as_rational(), Some(rat(1, 2)));

        // zeta_4 inside Q(zeta_12) is zeta_12^3
        let z4 = Scalar::Cyclotomic(CycElem::zeta_pow(4, 1));
        let z12 = z4.promote(&FieldContext::Cyclotomic { conductor: 12 }).unwrap();
        assert_eq!(z12, Scalar::Cyclotomic(CycElem::zeta_pow(12, 3)));
        let sq = z12.mul(&z12);
        assert_eq!(
            sq.promote(&FieldContext::Rational).unwrap(),
            Scalar::Rational(rat(-1, 1))
        );
    }

    #[test]
    fn mod_p_evaluation_respects_root_order() {
        // p = 13, a primitive cube root mod 13 is 3 (3^3 = 27 = 1)
        let z3 = Scalar::Cyclotomic(CycElem::zeta_pow(3, 1));
        let img = z3.eval_mod_p(13, 3).unwrap();
        assert_eq!(img, 3);
        let one = z3.pow(3).eval_mod_p(13, 3).unwrap();
        assert_eq!(one, 1);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::Rational(rat(-4, 6)).to_string(), "-2/3");
        let e = Scalar::Cyclotomic(CycElem::new(
            12,
            vec![rat(1, 2), rat(0, 1), rat(-1, 1), rat(2, 1)],
        ));
        assert_eq!(e.to_string(), "1/2 - z^2 + 2*z^3");
    }
}
