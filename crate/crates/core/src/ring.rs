//! Exact commutative coefficient rings with 1, and the exact linear algebra
//! the center solver needs.
//!
//! Three rings are supported: ℚ (arbitrary-precision rationals in lowest
//! terms), 𝔽_p (residues in [0, p) for prime p) and ℤ (arbitrary-precision
//! integers). Kernels are computed by reduced row echelon form over the
//! fields and by a Hermite-style fraction-free elimination over ℤ; both are
//! fully deterministic so solver output is reproducible byte for byte.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which coefficient ring a computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RingSpec {
    Rationals,
    PrimeField(u64),
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    SpecMismatch { left: RingSpec, right: RingSpec },
    NotAField { spec: RingSpec },
    ZeroInverse,
    NotPrime(u64),
    NotAnInteger { num: BigInt, den: BigInt },
    InvalidSpec(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::SpecMismatch { left, right } => {
                write!(f, "ring mismatch: {left} vs {right}")
            }
            RingError::NotAField { spec } => write!(f, "{spec} is not a field"),
            RingError::ZeroInverse => write!(f, "zero is not invertible"),
            RingError::NotPrime(p) => write!(f, "{p} is not prime"),
            RingError::NotAnInteger { num, den } => {
                write!(f, "{num}/{den} is not an integer")
            }
            RingError::InvalidSpec(s) => write!(f, "invalid ring `{s}` (expected Q, Fp:<p> or Z)"),
        }
    }
}

impl std::error::Error for RingError {}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> Result<u64, RingError> {
    if a.is_multiple_of(p) {
        return Err(RingError::ZeroInverse);
    }
    // extended Euclid on signed 128-bit; p < 2^63 in practice
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "p prime and a nonzero mod p");
    Ok((t0.rem_euclid(p as i128)) as u64)
}

impl RingSpec {
    /// Parse the CLI selector: `Q`, `Fp:<p>` or `Z`.
    pub fn parse(s: &str) -> Result<RingSpec, RingError> {
        match s {
            "Q" => Ok(RingSpec::Rationals),
            "Z" => Ok(RingSpec::Integers),
            _ => {
                if let Some(rest) = s.strip_prefix("Fp:") {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| RingError::InvalidSpec(s.to_string()))?;
                    if !is_prime(p) {
                        return Err(RingError::NotPrime(p));
                    }
                    Ok(RingSpec::PrimeField(p))
                } else {
                    Err(RingError::InvalidSpec(s.to_string()))
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn zero(&self) -> RingValue {
        match self {
            RingSpec::Rationals => RingValue::Rat(BigRational::zero()),
            RingSpec::PrimeField(p) => RingValue::Mod { p: *p, residue: 0 },
            RingSpec::Integers => RingValue::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> RingValue {
        match self {
            RingSpec::Rationals => RingValue::Rat(BigRational::one()),
            RingSpec::PrimeField(p) => RingValue::Mod {
                p: *p,
                residue: 1 % *p,
            },
            RingSpec::Integers => RingValue::Int(BigInt::one()),
        }
    }

    pub fn from_integer(&self, n: i64) -> RingValue {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(&self, n: BigInt) -> RingValue {
        match self {
            RingSpec::Rationals => RingValue::Rat(BigRational::from_integer(n)),
            RingSpec::PrimeField(p) => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                RingValue::Mod {
                    p: *p,
                    residue: digits.first().copied().unwrap_or(0),
                }
            }
            RingSpec::Integers => RingValue::Int(n),
        }
    }

    /// Interpret a literal fraction in this ring: exact in ℚ, num·den⁻¹ in
    /// 𝔽_p, and only integral values in ℤ.
    pub fn from_ratio(&self, num: BigInt, den: BigInt) -> Result<RingValue, RingError> {
        if den.is_zero() {
            return Err(RingError::ZeroInverse);
        }
        match self {
            RingSpec::Rationals => Ok(RingValue::Rat(BigRational::new(num, den))),
            RingSpec::PrimeField(_) => {
                let d = self.from_bigint(den);
                let n = self.from_bigint(num);
                n.mul(&d.inv()?)
            }
            RingSpec::Integers => {
                let g = num.gcd(&den);
                let (n, d) = (&num / &g, &den / &g);
                if d.magnitude() == &1u32.into() {
                    Ok(RingValue::Int(if d.is_negative() { -n } else { n }))
                } else {
                    Err(RingError::NotAnInteger { num, den })
                }
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "Fp:{p}"),
            RingSpec::Integers => write!(f, "Z"),
        }
    }
}

/// An exact scalar, tagged with its ring.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum RingValue {
    Rat(BigRational),
    Mod { p: u64, residue: u64 },
    Int(BigInt),
}

impl RingValue {
    pub fn spec(&self) -> RingSpec {
        match self {
            RingValue::Rat(_) => RingSpec::Rationals,
            RingValue::Mod { p, .. } => RingSpec::PrimeField(*p),
            RingValue::Int(_) => RingSpec::Integers,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Rat(r) => r.is_zero(),
            RingValue::Mod { residue, .. } => *residue == 0,
            RingValue::Int(n) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingValue::Rat(r) => r.is_one(),
            RingValue::Mod { p, residue } => *residue == 1 % *p,
            RingValue::Int(n) => n.is_one(),
        }
    }

    fn check(&self, other: &RingValue) -> Result<(), RingError> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(RingError::SpecMismatch {
                left: self.spec(),
                right: other.spec(),
            })
        }
    }

    pub fn add(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.check(other)?;
        Ok(match (self, other) {
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a + b),
            (RingValue::Mod { p, residue: a }, RingValue::Mod { residue: b, .. }) => {
                RingValue::Mod {
                    p: *p,
                    residue: (a + b) % p,
                }
            }
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a + b),
            _ => unreachable!("specs checked"),
        })
    }

    pub fn sub(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingValue {
        match self {
            RingValue::Rat(a) => RingValue::Rat(-a),
            RingValue::Mod { p, residue } => RingValue::Mod {
                p: *p,
                residue: (p - residue) % p,
            },
            RingValue::Int(a) => RingValue::Int(-a),
        }
    }

    pub fn mul(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.check(other)?;
        Ok(match (self, other) {
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a * b),
            (RingValue::Mod { p, residue: a }, RingValue::Mod { residue: b, .. }) => {
                RingValue::Mod {
                    p: *p,
                    residue: mul_mod(*a, *b, *p),
                }
            }
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a * b),
            _ => unreachable!("specs checked"),
        })
    }

    /// Sign query for display purposes; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            RingValue::Rat(r) => r.is_negative(),
            RingValue::Mod { .. } => false,
            RingValue::Int(n) => n.is_negative(),
        }
    }

    pub fn abs(&self) -> RingValue {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; only defined over the fields.
    pub fn inv(&self) -> Result<RingValue, RingError> {
        match self {
            RingValue::Rat(a) => {
                if a.is_zero() {
                    Err(RingError::ZeroInverse)
                } else {
                    Ok(RingValue::Rat(a.recip()))
                }
            }
            RingValue::Mod { p, residue } => Ok(RingValue::Mod {
                p: *p,
                residue: inv_mod(*residue, *p)?,
            }),
            RingValue::Int(_) => Err(RingError::NotAField {
                spec: RingSpec::Integers,
            }),
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Rat(r) => write!(f, "{r}"),
            RingValue::Mod { residue, .. } => write!(f, "{residue}"),
            RingValue::Int(n) => write!(f, "{n}"),
        }
    }
}

/// A dense matrix over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    spec: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<RingValue>,
}

impl Matrix {
    pub fn zero(spec: RingSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            spec,
            rows,
            cols,
            data: vec![spec.zero(); rows * cols],
        }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingValue {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingValue) {
        debug_assert_eq!(v.spec(), self.spec);
        self.data[r * self.cols + c] = v;
    }

    /// Apply M to a coordinate vector.
    pub fn apply(&self, x: &[RingValue]) -> Vec<RingValue> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.spec.zero();
                for c in 0..self.cols {
                    acc = acc
                        .add(&self.get(r, c).mul(&x[c]).expect("uniform spec"))
                        .expect("uniform spec");
                }
                acc
            })
            .collect()
    }

    /// Basis of the right null space {x : Mx = 0}.
    ///
    /// Over the fields: reduced echelon with deterministic pivoting
    /// (leftmost column, then smallest row index), one basis vector per free
    /// column in ascending column order. Over ℤ: a basis of the integer
    /// kernel lattice, each vector primitive with positive leading entry,
    /// sorted.
    pub fn kernel(&self) -> Vec<Vec<RingValue>> {
        match self.spec {
            RingSpec::Integers => self.kernel_integer(),
            _ => self.kernel_field(),
        }
    }

    /// Rank of the matrix (over the fraction field for ℤ).
    pub fn rank(&self) -> usize {
        self.cols - self.kernel().len()
    }

    fn kernel_field(&self) -> Vec<Vec<RingValue>> {
        let mut m = self.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            // leftmost column, then smallest row index
            let pivot = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let pr = match pivot {
                Some(pr) => pr,
                None => continue,
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv().expect("nonzero pivot over a field");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone().neg();
                    m.add_multiple(r, row, &factor);
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for col in 0..m.cols {
            if next_pivot < pivot_cols.len() && pivot_cols[next_pivot] == col {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![self.spec.zero(); m.cols];
            v[col] = self.spec.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m.get(r, col).neg();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &RingValue) {
        for c in 0..self.cols {
            let v = self.get(r, c).mul(factor).expect("uniform spec");
            self.set(r, c, v);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_multiple(&mut self, dst: usize, src: usize, factor: &RingValue) {
        for c in 0..self.cols {
            let v = self
                .get(dst, c)
                .add(&self.get(src, c).mul(factor).expect("uniform spec"))
                .expect("uniform spec");
            self.set(dst, c, v);
        }
    }

    fn kernel_integer(&self) -> Vec<Vec<RingValue>> {
        let as_int = |v: &RingValue| match v {
            RingValue::Int(n) => n.clone(),
            _ => unreachable!("integer matrix"),
        };
        // rows of `t`: columns of M augmented with the identity
        let n = self.cols;
        let m = self.rows;
        let mut t: Vec<Vec<BigInt>> = (0..n)
            .map(|c| {
                let mut row: Vec<BigInt> = (0..m).map(|r| as_int(self.get(r, c))).collect();
                row.extend((0..n).map(|j| {
                    if j == c {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                }));
                row
            })
            .collect();

        let mut rank = 0;
        for col in 0..m {
            if rank == n {
                break;
            }
            // bring a nonzero entry to the working row
            if t[rank][col].is_zero() {
                if let Some(r) = (rank + 1..n).find(|&r| !t[r][col].is_zero()) {
                    t.swap(rank, r);
                } else {
                    continue;
                }
            }
            for r in rank + 1..n {
                if t[r][col].is_zero() {
                    continue;
                }
                let a = t[rank][col].clone();
                let b = t[r][col].clone();
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let (au, bu) = (&a / &g, &b / &g);
                for j in 0..m + n {
                    let top = &t[rank][j];
                    let bot = &t[r][j];
                    let new_top = &x * top + &y * bot;
                    let new_bot = -&bu * top + &au * bot;
                    t[rank][j] = new_top;
                    t[r][j] = new_bot;
                }
            }
            if t[rank][col].is_negative() {
                for j in 0..m + n {
                    t[rank][j] = -&t[rank][j];
                }
            }
            rank += 1;
        }

        let mut basis: Vec<Vec<BigInt>> = t[rank..].iter().map(|row| row[m..].to_vec()).collect();
        for v in &mut basis {
            // primitivity is automatic for a basis of a saturated lattice;
            // reduce defensively and fix the leading sign
            let mut content = BigInt::zero();
            for x in v.iter() {
                content = content.gcd(x);
            }
            if !content.is_zero() && !content.is_one() {
                for x in v.iter_mut() {
                    *x = &*x / &content;
                }
            }
            if let Some(first) = v.iter().find(|x| !x.is_zero()) {
                if first.is_negative() {
                    for x in v.iter_mut() {
                        *x = -&*x;
                    }
                }
            }
        }
        basis.sort();
        basis
            .into_iter()
            .map(|row| row.into_iter().map(RingValue::Int).collect())
            .collect()
    }
}

/// Whether `target` lies in the span of `vectors` (over the fraction field
/// for ℤ, which for saturated lattices such as integer kernels coincides
/// with lattice membership of integer vectors).
pub fn in_span(spec: RingSpec, vectors: &[Vec<RingValue>], target: &[RingValue]) -> bool {
    let promote = |v: &RingValue| match v {
        RingValue::Int(n) => RingValue::Rat(BigRational::from_integer(n.clone())),
        other => other.clone(),
    };
    let field_spec = match spec {
        RingSpec::Integers => RingSpec::Rationals,
        s => s,
    };
    if target.iter().all(|v| v.is_zero()) {
        return true;
    }
    let dim = target.len();
    let mut with = Matrix::zero(field_spec, dim, vectors.len() + 1);
    let mut without = Matrix::zero(field_spec, dim, vectors.len().max(1));
    for (c, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), dim);
        for r in 0..dim {
            with.set(r, c, promote(&v[r]));
            without.set(r, c, promote(&v[r]));
        }
    }
    for (r, t) in target.iter().enumerate() {
        with.set(r, vectors.len(), promote(t));
    }
    with.rank() == without.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RingValue {
        RingSpec::Rationals
            .from_ratio(BigInt::from(n), BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let half = q(1, 2);
        let third = q(1, 3);
        assert_eq!(half.add(&third).unwrap(), q(5, 6));
        assert_eq!(format!("{}", q(5, 6)), "5/6");
        assert_eq!(format!("{}", q(4, 2)), "2");
        assert_eq!(q(2, 4), q(1, 2));
    }

    #[test]
    fn prime_field_wraps() {
        let f2 = RingSpec::PrimeField(2);
        let one = f2.one();
        assert!(one.add(&one).unwrap().is_zero());
        let f5 = RingSpec::PrimeField(5);
        let three = f5.from_integer(3);
        assert_eq!(three.inv().unwrap(), f5.from_integer(2));
        assert_eq!(f5.from_integer(-1), f5.from_integer(4));
    }

    #[test]
    fn integers_are_not_a_field() {
        let two = RingSpec::Integers.from_integer(2);
        assert_eq!(
            two.inv().unwrap_err(),
            RingError::NotAField {
                spec: RingSpec::Integers
            }
        );
        assert!(RingSpec::Integers
            .from_ratio(BigInt::from(1), BigInt::from(2))
            .is_err());
        assert_eq!(
            RingSpec::Integers
                .from_ratio(BigInt::from(4), BigInt::from(2))
                .unwrap(),
            RingSpec::Integers.from_integer(2)
        );
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = RingSpec::Rationals.one();
        let b = RingSpec::Integers.one();
        assert!(matches!(a.add(&b), Err(RingError::SpecMismatch { .. })));
    }

    #[test]
    fn ring_spec_parsing() {
        assert_eq!(RingSpec::parse("Q").unwrap(), RingSpec::Rationals);
        assert_eq!(RingSpec::parse("Z").unwrap(), RingSpec::Integers);
        assert_eq!(RingSpec::parse("Fp:7").unwrap(), RingSpec::PrimeField(7));
        assert_eq!(RingSpec::parse("Fp:4").unwrap_err(), RingError::NotPrime(4));
        assert!(RingSpec::parse("R").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(1_000_000_007u64 * 3));
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let m = Matrix::zero(RingSpec::Rationals, 2, 2);
        let basis = m.kernel();
        assert_eq!(basis, vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)],]);
    }

    #[test]
    fn kernel_over_f2() {
        let f2 = RingSpec::PrimeField(2);
        let mut m = Matrix::zero(f2, 1, 2);
        m.set(0, 0, f2.one());
        m.set(0, 1, f2.one());
        let basis = m.kernel();
        assert_eq!(basis, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn kernel_over_z_is_primitive_with_positive_lead() {
        let z = RingSpec::Integers;
        let mut m = Matrix::zero(z, 1, 2);
        m.set(0, 0, z.from_integer(2));
        m.set(0, 1, z.from_integer(4));
        let basis = m.kernel();
        assert_eq!(basis, vec![vec![z.from_integer(2), z.from_integer(-1)]]);
        // verify 2*2 + 4*(-1) = 0 and primitivity directly
        assert!(m.apply(&basis[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn kernel_vectors_annihilate_random_matrices() {
        let mut rng = crate::fixtures::SplitMix64::new(7);
        for spec in [
            RingSpec::Rationals,
            RingSpec::PrimeField(5),
            RingSpec::Integers,
        ] {
            for _ in 0..40 {
                let rows = 1 + rng.below(4) as usize;
                let cols = 1 + rng.below(5) as usize;
                let mut m = Matrix::zero(spec, rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        m.set(r, c, spec.from_integer(rng.below(11) as i64 - 5));
                    }
                }
                let basis = m.kernel();
                for v in &basis {
                    assert!(m.apply(v).iter().all(|x| x.is_zero()));
                }
                if spec.is_field() {
                    assert_eq!(m.rank() + basis.len(), cols);
                }
                if spec == RingSpec::Integers {
                    for v in &basis {
                        let mut content = BigInt::zero();
                        for x in v {
                            if let RingValue::Int(n) = x {
                                content = content.gcd(n);
                            }
                        }
                        assert!(content.is_one(), "kernel vector not primitive");
                    }
                }
            }
        }
    }

    #[test]
    fn span_membership() {
        let q1 = vec![q(1, 1), q(0, 1), q(1, 1)];
        let q2 = vec![q(0, 1), q(1, 1), q(1, 1)];
        let inside = vec![q(2, 1), q(3, 1), q(5, 1)];
        let outside = vec![q(1, 1), q(0, 1), q(0, 1)];
        assert!(in_span(
            RingSpec::Rationals,
            &[q1.clone(), q2.clone()],
            &inside
        ));
        assert!(!in_span(RingSpec::Rationals, &[q1, q2], &outside));
    }
}
