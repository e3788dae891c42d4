//! Exact integer and rational linear algebra on arbitrary-precision scalars.
//!
//! Everything here is exact: no floating point, no modular shortcuts.  The
//! matrix types are small row-major containers; the interesting parts are the
//! lattice algorithms (Hermite and Smith normal forms, saturations, integral
//! solving) that the cone machinery is built on.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Dot product of two equal-length integer slices.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Divide a vector by the gcd of its entries.  The sign of every entry is
/// preserved (the gcd is taken positive), so the direction of the vector does
/// not change.  Errors on the zero vector.
pub fn primitive_vector(v: &[Int]) -> Result<Vec<Int>> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

// ---------------------------------------------------------------------------
// matrices

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        IntMat { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    /// Convenience constructor used all over the tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// An `n x 0` or `0 x n` matrix needs explicit dimensions.
    pub fn empty(rows: usize, cols: usize) -> Self {
        assert!(rows == 0 || cols == 0);
        IntMat { rows, cols, data: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Int> {
        self.row(r).to_vec()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Int]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn set_row(&mut self, r: usize, v: &[Int]) {
        assert_eq!(v.len(), self.cols);
        self.data[r * self.cols..(r + 1) * self.cols].clone_from_slice(v);
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * &other[(k, c)];
                    out[(r, c)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let x = -self[(r, c)].clone();
            self[(r, c)] = x;
        }
    }

    /// row[dst] -= q * row[src]
    pub fn row_sub_mul(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * &self[(src, c)];
            self[(dst, c)] -= delta;
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// col[dst] -= q * col[src]
    pub fn col_sub_mul(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = q * &self[(r, src)];
            self[(r, dst)] -= delta;
        }
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        *self == IntMat::identity(self.rows)
    }

    /// New matrix with the rows sorted lexicographically.
    pub fn sorted_rows(&self) -> IntMat {
        let mut rows: Vec<Vec<Int>> = self.iter_rows().map(|r| r.to_vec()).collect();
        rows.sort();
        if rows.is_empty() {
            IntMat::empty(0, self.cols)
        } else {
            IntMat::from_rows(rows)
        }
    }

    /// Stack two matrices with equal column counts on top of each other.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        let rows: Vec<Vec<Int>> = idx.iter().map(|&i| self.row_vec(i)).collect();
        if rows.is_empty() {
            IntMat::empty(0, self.cols)
        } else {
            IntMat::from_rows(rows)
        }
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RatMat { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        assert!(rows == 0 || cols == 0);
        RatMat { rows, cols, data: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Rat]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * &other[(k, c)];
                    out[(r, c)] += prod;
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        *self == RatMat::identity(self.rows)
    }

    /// All entries integral?
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Convert to an integer matrix; errors if any entry has a denominator.
    pub fn to_int(&self) -> Result<IntMat> {
        if !self.is_integral() {
            return Err(Error::Unsupported("matrix is not integral".into()));
        }
        Ok(IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }

    /// Scale each row to a primitive integer vector (used for rays, where only
    /// the direction matters).  Errors if some row is zero.
    pub fn rows_to_primitive(&self) -> Result<IntMat> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut denom_lcm = Int::one();
            for x in self.row(r) {
                denom_lcm = denom_lcm.lcm(x.denom());
            }
            let ints: Vec<Int> =
                self.row(r).iter().map(|x| (x * Rat::from_integer(denom_lcm.clone())).to_integer()).collect();
            out.push(primitive_vector(&ints)?);
        }
        if out.is_empty() {
            Ok(IntMat::empty(0, self.cols))
        } else {
            Ok(IntMat::from_rows(out))
        }
    }
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

// ---------------------------------------------------------------------------
// Hermite normal form

/// Row-style Hermite normal form.  Returns `(H, U)` with `U * m = H`, `U`
/// unimodular.  `H` is in row echelon form with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows());
    let mut pr = 0usize;
    for col in 0..h.cols() {
        if pr == h.rows() {
            break;
        }
        // Euclidean elimination below the pivot row.
        loop {
            let mut best: Option<usize> = None;
            for r in pr..h.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if h[(r, col)].abs() < h[(b, col)].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            if b != pr {
                h.swap_rows(pr, b);
                u.swap_rows(pr, b);
            }
            let p = h[(pr, col)].clone();
            let mut clean = true;
            for r in pr + 1..h.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&p);
                h.row_sub_mul(r, pr, &q);
                u.row_sub_mul(r, pr, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let p = h[(pr, col)].clone();
        for r in 0..pr {
            let q = h[(r, col)].div_floor(&p);
            h.row_sub_mul(r, pr, &q);
            u.row_sub_mul(r, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

// ---------------------------------------------------------------------------
// Smith normal form

/// Smith normal form.  Returns `(U, D, V)` with `U * m * V = D`, `U` and `V`
/// unimodular, `D` diagonal with nonnegative entries satisfying the
/// divisibility chain d1 | d2 | ... .
pub fn smith_normal_form(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows());
    let mut v = IntMat::identity(m.cols());
    let bound = m.rows().min(m.cols());
    let mut t = 0usize;
    while t < bound {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..d.rows() {
            for c in t..d.cols() {
                if d[(r, c)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((r, c)),
                    Some((br, bc)) => {
                        if d[(r, c)].abs() < d[(br, bc)].abs() {
                            best = Some((r, c));
                        }
                    }
                }
            }
        }
        let Some((br, bc)) = best else { break };
        d.swap_rows(t, br);
        u.swap_rows(t, br);
        d.swap_cols(t, bc);
        v.swap_cols(t, bc);

        let p = d[(t, t)].clone();
        let mut dirty = false;
        for r in 0..d.rows() {
            if r == t || d[(r, t)].is_zero() {
                continue;
            }
            let q = d[(r, t)].div_floor(&p);
            d.row_sub_mul(r, t, &q);
            u.row_sub_mul(r, t, &q);
            if !d[(r, t)].is_zero() {
                dirty = true;
            }
        }
        for c in 0..d.cols() {
            if c == t || d[(t, c)].is_zero() {
                continue;
            }
            let q = d[(t, c)].div_floor(&p);
            d.col_sub_mul(c, t, &q);
            v.col_sub_mul(c, t, &q);
            if !d[(t, c)].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // row and column are clean; enforce divisibility against the rest
        let mut fixed = true;
        'scan: for r in t + 1..d.rows() {
            for c in t + 1..d.cols() {
                if !d[(r, c)].is_multiple_of(&p) {
                    // pull the offending row in and keep grinding
                    for cc in 0..d.cols() {
                        let add = d[(r, cc)].clone();
                        d[(t, cc)] += add;
                    }
                    for cc in 0..u.cols() {
                        let add = u[(r, cc)].clone();
                        u[(t, cc)] += add;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (u, d, v)
}

/// Do the rows of `m` generate all of `Z^cols` as a lattice?  True exactly
/// when the rank equals the column count and every Smith divisor is 1.
pub fn generates_full_lattice(m: &IntMat) -> bool {
    if m.rows() == 0 || m.cols() == 0 {
        return m.cols() == 0;
    }
    let (_, d, _) = smith_normal_form(m);
    let n = m.cols();
    if m.rows() < n {
        return false;
    }
    (0..n).all(|i| d[(i, i)].is_one())
}

// ---------------------------------------------------------------------------
// determinants / rank

/// Exact determinant via fraction-free (Bareiss) elimination.
pub fn determinant_int(m: &IntMat) -> Result<Int> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[(r, k)].is_zero());
            match swap {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
            a[(i, k)] = Int::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -det } else { det })
}

pub fn determinant_rat(m: &RatMat) -> Result<Rat> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    // clear denominators row by row, then divide the integer determinant back
    let mut scale = Rat::one();
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut l = Int::one();
        for x in m.row(r) {
            l = l.lcm(x.denom());
        }
        scale *= Rat::from_integer(l.clone());
        rows.push(
            m.row(r).iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect(),
        );
    }
    let d = determinant_int(&IntMat::from_rows(rows))?;
    Ok(Rat::from_integer(d) / scale)
}

/// Rank over Q, computed fraction-free with per-row gcd reduction.
pub fn rank_int(m: &IntMat) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mut a = m.clone();
    let mut r = 0usize;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(r, p);
        for i in r + 1..a.rows() {
            if a[(i, c)].is_zero() {
                continue;
            }
            // row_i := pivot * row_i - a[i][c] * row_r, then reduce by gcd
            let f1 = a[(r, c)].clone();
            let f2 = a[(i, c)].clone();
            let mut g = Int::zero();
            for j in 0..a.cols() {
                let val = &f1 * &a[(i, j)] - &f2 * &a[(r, j)];
                a[(i, j)] = val;
                g = g.gcd(&a[(i, j)]);
            }
            if !g.is_zero() && !g.is_one() {
                for j in 0..a.cols() {
                    let val = &a[(i, j)] / &g;
                    a[(i, j)] = val;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank_of_row_set(rows: &[&[Int]], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank_int(&IntMat::from_rows(rows.iter().map(|r| r.to_vec()).collect()))
        .min(cols)
}

// ---------------------------------------------------------------------------
// kernels, saturation, solving

/// Basis of the left integer kernel `{ x : x * m = 0 }`, as rows.  The basis
/// spans the full (saturated) kernel lattice because it comes from the
/// unimodular transform of the Hermite form.
pub fn integer_kernel_rows(m: &IntMat) -> IntMat {
    let (h, u) = hermite_normal_form(m);
    let mut rows = Vec::new();
    for r in 0..h.rows() {
        if h.is_zero_row(r) {
            rows.push(u.row_vec(r));
        }
    }
    if rows.is_empty() {
        IntMat::empty(0, m.rows())
    } else {
        IntMat::from_rows(rows)
    }
}

/// Basis of the lattice `span(rows of m) ∩ Z^cols` (the saturation of the row
/// lattice), computed as a double kernel.  The basis is returned in Hermite
/// normal form, so equal lattices get equal bases.
pub fn span_lattice_basis(m: &IntMat) -> IntMat {
    let w = integer_kernel_rows(&m.transpose());
    if w.rows() == 0 {
        // full-dimensional span: the lattice is all of Z^cols
        return IntMat::identity(m.cols());
    }
    let basis = integer_kernel_rows(&w.transpose());
    let (h, _) = hermite_normal_form(&basis);
    let rows: Vec<Vec<Int>> =
        (0..h.rows()).filter(|&r| !h.is_zero_row(r)).map(|r| h.row_vec(r)).collect();
    if rows.is_empty() {
        IntMat::empty(0, m.cols())
    } else {
        IntMat::from_rows(rows)
    }
}

/// Solve `X * a = b` over the integers (row-style).  Returns `None` when no
/// integral solution exists.  Free components are set to zero.
pub fn solve_integral_rows(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.cols(), b.cols());
    let (h, u) = hermite_normal_form(a);
    // pivot structure of h
    let mut pivots = Vec::new(); // (row, col)
    let mut col = 0usize;
    for r in 0..h.rows() {
        if h.is_zero_row(r) {
            break;
        }
        while col < h.cols() && h[(r, col)].is_zero() {
            col += 1;
        }
        pivots.push((r, col));
    }
    let mut xrows = Vec::with_capacity(b.rows());
    for i in 0..b.rows() {
        let mut c = b.row_vec(i);
        let mut z = vec![Int::zero(); a.rows()];
        for &(r, pc) in &pivots {
            if c[pc].is_zero() {
                continue;
            }
            let (q, rem) = c[pc].div_rem(&h[(r, pc)]);
            if !rem.is_zero() {
                return None;
            }
            for j in 0..c.len() {
                let delta = &q * &h[(r, j)];
                c[j] -= delta;
            }
            z[r] = q;
        }
        if c.iter().any(|x| !x.is_zero()) {
            return None;
        }
        // x = z * u
        let mut x = vec![Int::zero(); a.rows()];
        for (r, zr) in z.iter().enumerate() {
            if zr.is_zero() {
                continue;
            }
            for j in 0..a.rows() {
                let delta = zr * &u[(r, j)];
                x[j] += delta;
            }
        }
        xrows.push(x);
    }
    if xrows.is_empty() {
        Some(IntMat::empty(0, a.rows()))
    } else {
        Some(IntMat::from_rows(xrows))
    }
}

/// Solve `a * X = b` over the rationals by Gauss-Jordan elimination.
/// Returns `None` when the system is inconsistent.  When `a` is square and
/// nonsingular the solution is unique; otherwise free variables are zero.
pub fn solve_linear(a: &RatMat, b: &RatMat) -> Option<RatMat> {
    assert_eq!(a.rows(), b.rows());
    let (ar, ac, bc) = (a.rows(), a.cols(), b.cols());
    let mut aug = RatMat::zeros(ar, ac + bc);
    for r in 0..ar {
        for c in 0..ac {
            aug[(r, c)] = a[(r, c)].clone();
        }
        for c in 0..bc {
            aug[(r, ac + c)] = b[(r, c)].clone();
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ac {
        if r == ar {
            break;
        }
        let Some(p) = (r..ar).find(|&i| !aug[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..ac + bc {
                let tmp = aug[(p, j)].clone();
                aug[(p, j)] = aug[(r, j)].clone();
                aug[(r, j)] = tmp;
            }
        }
        let inv = aug[(r, c)].recip();
        for j in 0..ac + bc {
            let val = &aug[(r, j)] * &inv;
            aug[(r, j)] = val;
        }
        for i in 0..ar {
            if i == r || aug[(i, c)].is_zero() {
                continue;
            }
            let f = aug[(i, c)].clone();
            for j in 0..ac + bc {
                let delta = &f * &aug[(r, j)];
                aug[(i, j)] -= delta;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    for i in r..ar {
        for c in 0..bc {
            if !aug[(i, ac + c)].is_zero() {
                return None;
            }
        }
    }
    let mut x = RatMat::zeros(ac, bc);
    for &(pr, pc) in &pivots {
        for c in 0..bc {
            x[(pc, c)] = aug[(pr, ac + c)].clone();
        }
    }
    Some(x)
}

/// Inverse of a square rational matrix.
pub fn inverse_rat(m: &RatMat) -> Result<RatMat> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    match solve_linear(m, &RatMat::identity(n)) {
        Some(inv) => {
            // solve_linear silently returns a partial answer for singular
            // systems where the rhs happens to be consistent; verify.
            if m.mul(&inv).is_identity() {
                Ok(inv)
            } else {
                Err(Error::Singular)
            }
        }
        None => Err(Error::Singular),
    }
}
