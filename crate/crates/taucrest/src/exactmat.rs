//! Exact scalar and matrix arithmetic over Q and over prime fields.
//!
//! Everything downstream (kernels, Hom spaces, projective covers) is built on
//! the Gaussian elimination in this module, so all arithmetic here is exact:
//! rationals use arbitrary-precision integers, prime field values are kept as
//! canonical representatives in `[0, p)`. Mixing elements of different fields
//! is a contract violation and panics immediately instead of coercing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Identifies the coefficient field of a scalar or matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldTag {
    Rationals,
    Prime(u32),
}

impl FieldTag {
    pub fn prime(p: u32) -> FieldTag {
        assert!(is_prime(p), "field characteristic {p} is not prime");
        FieldTag::Prime(p)
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element, either a rational or a canonical residue mod p.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u32 },
}

impl Scalar {
    pub fn zero(tag: FieldTag) -> Scalar {
        match tag {
            FieldTag::Rationals => Scalar::Rat(BigRational::zero()),
            FieldTag::Prime(p) => Scalar::Fp { val: 0, p },
        }
    }

    pub fn one(tag: FieldTag) -> Scalar {
        match tag {
            FieldTag::Rationals => Scalar::Rat(BigRational::one()),
            FieldTag::Prime(p) => Scalar::Fp { val: 1, p },
        }
    }

    pub fn from_i64(tag: FieldTag, v: i64) -> Scalar {
        match tag {
            FieldTag::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldTag::Prime(p) => {
                let m = v.rem_euclid(p as i64) as u64;
                Scalar::Fp { val: m, p }
            }
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rat(_) => FieldTag::Rationals,
            Scalar::Fp { p, .. } => FieldTag::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    fn check_same(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!(
                "mixed-field arithmetic: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                val: (a + b) % (*p as u64),
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => {
                let m = *p as u64;
                Scalar::Fp {
                    val: (a + m - b) % m,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                val: (a * b) % (*p as u64),
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => {
                let m = *p as u64;
                Scalar::Fp {
                    val: (m - val) % m,
                    p: *p,
                }
            }
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { val, p } => {
                // Fermat: val^(p-2) mod p.
                let m = *p as u64;
                let mut base = *val % m;
                let mut e = m - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Fp { val: acc, p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

/// Dense matrix with row-major entries, all sharing one field tag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldTag,
    entries: Vec<Scalar>,
}

/// Result of reduced row echelon computation.
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: FieldTag, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldTag, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldTag, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_i64(field, *v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "mixed-field entry");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.field, self.rows)
    }

    fn check_field(&self, other: &Mat) {
        if self.field != other.field {
            panic!("mixed-field matrices: {} vs {}", self.field, other.field);
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b);
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        assert_eq!(s.field(), self.field, "mixed-field scale");
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.mul(s);
        }
        out
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; used to assemble tensor-product action matrices.
    pub fn kron(&self, other: &Mat) -> Mat {
        self.check_field(other);
        let mut out = Mat::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Mat) -> Mat {
        self.check_field(other);
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into self with upper-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        self.check_field(block);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!(self.cols, other.cols, "vstack col mismatch");
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        out
    }

    pub fn column(&self, c: usize) -> Mat {
        self.submatrix(0, c, self.rows, 1)
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, j, self.get(i, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form by Gaussian elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pivot = None;
            for i in r..m.rows {
                if !m.get(i, c).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pr) = pivot else { continue };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// True when the columns span the full row space, i.e. the matrix is
    /// surjective as a linear map.
    pub fn is_surjective_on_columns(&self) -> bool {
        self.rank() == self.rows
    }

    /// Columns form a basis of the null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Mat {
        let Rref { matrix, pivot_cols, rank } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out = Mat::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Scalar::one(self.field));
            for (r, &pc) in pivot_cols.iter().enumerate().take(rank) {
                out.set(pc, k, matrix.get(r, fc).neg());
            }
        }
        out
    }

    /// Basis of the column space, as a matrix of columns taken from self.
    pub fn column_space_basis(&self) -> Mat {
        let piv = self.rref().pivot_cols;
        self.select_columns(&piv)
    }

    /// Solves `self * X = b`; `None` when the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        self.check_field(b);
        assert_eq!(self.rows, b.rows, "solve: row count mismatch");
        let aug = self.hstack(b);
        let Rref { matrix, pivot_cols, rank } = aug.rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivot_cols.iter().enumerate().take(rank) {
            for j in 0..b.cols {
                x.set(pc, j, matrix.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// `None` on singular input.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Mat::identity(self.field, self.rows))?;
        if self.matmul(&sol).is_identity() {
            Some(sol)
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: usize) -> Mat {
        assert_eq!(self.rows, self.cols, "pow on non-square matrix");
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            e >>= 1;
        }
        acc
    }

    /// Row-major flattening as a single column vector.
    pub fn vec_rowmajor(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows * self.cols, 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i * self.cols + j, 0, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn from_vec_rowmajor(v: &Mat, rows: usize, cols: usize) -> Mat {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        let mut out = Mat::zeros(v.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, v.get(i * cols + j, 0).clone());
            }
        }
        out
    }

    /// Stable textual form used in canonical sort keys and hashes.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("{}x{}:", self.rows, self.cols);
        for e in &self.entries {
            s.push_str(&format!("{e},"));
        }
        s
    }

    /// True when every column of `sub` lies in the column span of `space`.
    pub fn spans(&self, sub: &Mat) -> bool {
        if sub.cols == 0 {
            return true;
        }
        self.solve(sub).is_some()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F2: FieldTag = FieldTag::Prime(2);
    const QQ: FieldTag = FieldTag::Rationals;

    #[test]
    fn rref_identity() {
        let m = Mat::identity(QQ, 2);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let m = Mat::zeros(QQ, 3, 2);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Mat::from_rows(QQ, &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Mat::from_rows(QQ, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(Mat::identity(QQ, 3).kernel_basis().cols(), 0);
        let k = Mat::zeros(QQ, 4, 4).kernel_basis();
        assert_eq!(k.cols(), 4);
        assert_eq!(k.rank(), 4);
    }

    #[test]
    fn kernel_f2_row() {
        // [[1,1]] over F2: exhaustive oracle over F2^2 finds exactly (0,0) and (1,1).
        let m = Mat::from_rows(F2, &[vec![1, 1]]);
        let mut solutions = Vec::new();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let v = Mat::from_rows(F2, &[vec![a], vec![b]]);
                if m.matmul(&v).is_zero() {
                    solutions.push((a, b));
                }
            }
        }
        assert_eq!(solutions, vec![(0, 0), (1, 1)]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k, Mat::from_rows(F2, &[vec![1], vec![1]]));
    }

    #[test]
    fn solve_cases() {
        let b = Mat::from_rows(QQ, &[vec![3], vec![5]]);
        assert_eq!(Mat::identity(QQ, 2).solve(&b), Some(b.clone()));
        assert_eq!(Mat::zeros(QQ, 2, 2).solve(&b), None);
        let m = Mat::from_rows(QQ, &[vec![2]]);
        let one = Mat::from_rows(QQ, &[vec![1]]);
        let x = m.solve(&one).unwrap();
        assert_eq!(*x.get(0, 0), Scalar::rational(1, 2));
    }

    #[test]
    fn inverse_unipotent() {
        let m = Mat::from_rows(QQ, &[vec![1, 1], vec![0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Mat::from_rows(QQ, &[vec![1, -1], vec![0, 1]]));
        assert!(Mat::zeros(QQ, 2, 2).inverse().is_none());
    }

    #[test]
    fn kron_scalar_and_rank_sum() {
        let a = Mat::from_rows(QQ, &[vec![3]]);
        let m = Mat::from_rows(QQ, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.kron(&m), m.scale(&Scalar::from_i64(QQ, 3)));
        let n = Mat::from_rows(QQ, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.direct_sum(&n).rank(), m.rank() + n.rank());
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_field_is_hard_error() {
        let a = Mat::identity(QQ, 1);
        let b = Mat::identity(F2, 1);
        let _ = a.matmul(&b);
    }

    fn arb_mat(p: u32, max_dim: usize) -> impl Strategy<Value = Mat> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            prop::collection::vec(0..p as i64, r * c).prop_map(move |vals| {
                let mut m = Mat::zeros(FieldTag::Prime(p), r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, Scalar::from_i64(FieldTag::Prime(p), vals[i * c + j]));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_and_rank_nullity_f2(m in arb_mat(2, 8)) {
            let k = m.kernel_basis();
            if k.cols() > 0 {
                prop_assert!(m.matmul(&k).is_zero());
            }
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
        }

        #[test]
        fn kernel_and_rank_nullity_f3(m in arb_mat(3, 8)) {
            let k = m.kernel_basis();
            if k.cols() > 0 {
                prop_assert!(m.matmul(&k).is_zero());
            }
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
        }

        #[test]
        fn kernel_and_rank_nullity_f101(m in arb_mat(101, 8)) {
            let k = m.kernel_basis();
            if k.cols() > 0 {
                prop_assert!(m.matmul(&k).is_zero());
            }
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
        }

        #[test]
        fn rref_idempotent(m in arb_mat(3, 6)) {
            let r1 = m.rref().matrix;
            let r2 = r1.rref().matrix;
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn solve_roundtrip(m in arb_mat(2, 6), xs in prop::collection::vec(0..2i64, 6)) {
            let mut x = Mat::zeros(FieldTag::Prime(2), m.cols(), 1);
            for i in 0..m.cols() {
                x.set(i, 0, Scalar::from_i64(FieldTag::Prime(2), xs[i]));
            }
            let b = m.matmul(&x);
            let x2 = m.solve(&b).expect("consistent system must be solvable");
            prop_assert_eq!(m.matmul(&x2), b);
        }
    }

    proptest! {
        #[test]
        fn exact_field_arithmetic(a in -50i64..50, b in -50i64..50, d in 1i64..20) {
            let x = Scalar::rational(a, d);
            let y = Scalar::rational(b, d);
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }
    }
}
