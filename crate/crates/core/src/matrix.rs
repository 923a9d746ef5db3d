//! Dense exact matrices over the integers and the rationals.
//!
//! Everything here is exact: integer matrices use [`BigInt`], rational ones
//! use [`BigRational`]. The integer side provides the Hermite and Smith
//! normal forms that back lattice bases, discriminant groups and subgroup
//! canonical forms; the rational side provides determinants, inverses, the
//! LDLᵀ factorization used for definiteness tests, and solving in a row span.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + &self[(r, k)] * &other[(k, c)];
            }
            acc
        })
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc + x * &self[(k, c)];
                }
                acc
            })
            .collect()
    }
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(rat_from_int)
    }

    /// Integer determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Int {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is a basis of the same Z-span in row echelon form, pivots
/// positive, entries above each pivot reduced into `[0, pivot)`. Zero rows
/// are dropped. Two generating sets span the same lattice iff their Hermite
/// forms are equal.
pub fn hermite_normal_form(cols: usize, rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if pivot_row >= m.len() {
            break;
        }
        // Fold every row below into the pivot row with extended gcd steps.
        let Some(first) = (pivot_row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, first);
        for r in pivot_row + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let a = m[pivot_row][c].clone();
            let b = m[r][c].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let (top, bottom): (Vec<Int>, Vec<Int>) = m[pivot_row]
                .iter()
                .zip(&m[r])
                .map(|(p, q)| (&s * p + &t * q, &ag * q - &bg * p))
                .unzip();
            m[pivot_row] = top;
            m[r] = bottom;
        }
        if m[pivot_row][c].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        pivots.push((pivot_row, c));
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    // Reduce above the pivots.
    for &(pr, pc) in &pivots {
        let p = m[pr][pc].clone();
        for r in 0..pr {
            let q = m[r][pc].div_floor(&p);
            if !q.is_zero() {
                let sub: Vec<Int> = m[pr].iter().map(|x| &q * x).collect();
                for (x, s) in m[r].iter_mut().zip(sub) {
                    *x -= s;
                }
            }
        }
    }
    m
}

/// Smith normal form with transforms: `left · a · right = diag`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries d₁ | d₂ | … in order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let k = self.diag.rows().min(self.diag.cols());
        (0..k)
            .map(|i| self.diag[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Smith normal form of an integer matrix, with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let row_axpy = |mat: &mut IntMatrix, dst: usize, src: usize, k: &Int| {
        for c in 0..mat.cols() {
            let add = k * &mat[(src, c)];
            mat[(dst, c)] += add;
        }
    };
    let col_axpy = |mat: &mut IntMatrix, dst: usize, src: usize, k: &Int| {
        for r in 0..mat.rows() {
            let add = k * &mat[(r, src)];
            mat[(r, dst)] += add;
        }
    };

    for t in 0..m.min(n) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    if !s[(r, c)].is_zero()
                        && best.is_none_or(|(br, bc)| s[(r, c)].abs() < s[(br, bc)].abs())
                    {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return finish_smith(u, s, v);
            };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..m {
                if s[(r, t)].is_zero() {
                    continue;
                }
                let q = -s[(r, t)].div_floor(&s[(t, t)]);
                row_axpy(&mut s, r, t, &q);
                row_axpy(&mut u, r, t, &q);
                if !s[(r, t)].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                if s[(t, c)].is_zero() {
                    continue;
                }
                let q = -s[(t, c)].div_floor(&s[(t, t)]);
                col_axpy(&mut s, c, t, &q);
                col_axpy(&mut v, c, t, &q);
                if !s[(t, c)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..m)
                .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                .find(|&(r, c)| !s[(r, c)].is_multiple_of(&s[(t, t)]));
            match bad {
                Some((r, _)) => {
                    let one = Int::one();
                    row_axpy(&mut s, t, r, &one);
                    row_axpy(&mut u, t, r, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            for c in 0..n {
                s[(t, c)] = -s[(t, c)].clone();
            }
            for c in 0..m {
                u[(t, c)] = -u[(t, c)].clone();
            }
        }
    }
    finish_smith(u, s, v)
}

fn finish_smith(left: IntMatrix, diag: IntMatrix, right: IntMatrix) -> SmithForm {
    SmithForm { left, diag, right }
}

impl RatMatrix {
    pub fn determinant(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for k in c..n {
                    let sub = &f * &a[(c, k)];
                    a[(r, k)] -= sub;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pivot = a[(c, c)].clone();
            for k in 0..n {
                a[(c, k)] /= &pivot;
                inv[(c, k)] /= &pivot;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for k in 0..n {
                    let s1 = &f * &a[(c, k)];
                    a[(r, k)] -= s1;
                    let s2 = &f * &inv[(c, k)];
                    inv[(r, k)] -= s2;
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[(r, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let pivot = a[(rank, c)].clone();
            for r in rank + 1..self.rows {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for k in c..self.cols {
                    let sub = &f * &a[(rank, k)];
                    a[(r, k)] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }
}

/// Exact LDLᵀ factorization of a symmetric matrix, `g = l · diag(d) · lᵀ`
/// with `l` unit lower triangular.
#[derive(Clone, Debug)]
pub struct Ldl {
    pub lower: RatMatrix,
    pub pivots: Vec<Rat>,
}

impl Ldl {
    /// Factors without pivoting. Returns `None` if a zero pivot is hit
    /// (the leading principal minor vanishes).
    pub fn factor(g: &RatMatrix) -> Option<Ldl> {
        assert!(g.is_square());
        let n = g.rows();
        let mut lower = RatMatrix::identity(n);
        let mut pivots: Vec<Rat> = Vec::with_capacity(n);
        for j in 0..n {
            let mut d = g[(j, j)].clone();
            for k in 0..j {
                d -= &lower[(j, k)] * &lower[(j, k)] * &pivots[k];
            }
            if d.is_zero() {
                return None;
            }
            for i in j + 1..n {
                let mut v = g[(i, j)].clone();
                for k in 0..j {
                    v -= &lower[(i, k)] * &lower[(j, k)] * &pivots[k];
                }
                lower[(i, j)] = v / &d;
            }
            pivots.push(d);
        }
        Some(Ldl { lower, pivots })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.pivots.iter().all(|d| d.is_positive())
    }
}

/// Solves `x · basis = v` for `x`, where `basis` has linearly independent
/// rows. Precomputes a left inverse on a set of pivot columns.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: RatMatrix,
    pivot_cols: Vec<usize>,
    inverse: RatMatrix,
}

impl SpanSolver {
    /// `None` if the rows are dependent.
    pub fn new(basis: &RatMatrix) -> Option<SpanSolver> {
        let n = basis.rows();
        let m = basis.cols();
        // Column echelon on the transpose picks n independent columns.
        let t = basis.transpose();
        let mut a = t.clone();
        let mut pivot_cols = Vec::with_capacity(n);
        let mut order: Vec<usize> = (0..m).collect();
        let mut rank = 0;
        for c in 0..n {
            let p = (rank..m).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, rank);
            order.swap(p, rank);
            let pivot = a[(rank, c)].clone();
            for r in rank + 1..m {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for k in c..n {
                    let sub = &f * &a[(rank, k)];
                    a[(r, k)] -= sub;
                }
            }
            pivot_cols.push(order[rank]);
            rank += 1;
        }
        let square = RatMatrix::from_fn(n, n, |r, c| basis[(r, pivot_cols[c])].clone());
        let inverse = square.inverse()?;
        Some(SpanSolver {
            basis: basis.clone(),
            pivot_cols,
            inverse,
        })
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let restricted: Vec<Rat> = self.pivot_cols.iter().map(|&c| v[c].clone()).collect();
        let x = self.inverse.left_mul_vec(&restricted);
        let back = self.basis.left_mul_vec(&x);
        (back.as_slice() == v).then_some(x)
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        IntMatrix::from_rows(cols, &v)
    }

    fn check_smith(a: &IntMatrix) {
        let f = smith_normal_form(a);
        assert_eq!(f.left.mul(a).mul(&f.right), f.diag);
        assert!(f.left.determinant().abs().is_one());
        assert!(f.right.determinant().abs().is_one());
        let d = f.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{d:?}");
        }
        for r in 0..f.diag.rows() {
            for c in 0..f.diag.cols() {
                if r != c {
                    assert!(f.diag[(r, c)].is_zero());
                } else {
                    assert!(!f.diag[(r, c)].is_negative());
                }
            }
        }
    }

    #[test]
    fn smith_identity() {
        let a = IntMatrix::identity(3);
        let f = smith_normal_form(&a);
        assert_eq!(f.diag, a);
        assert_eq!(f.left, a);
        assert_eq!(f.right, a);
    }

    #[test]
    fn smith_small_cases() {
        assert_eq!(smith_normal_form(&im(&[&[2]])).invariant_factors(), vec![int(2)]);
        let f = smith_normal_form(&im(&[&[2, 0], &[0, 4]]));
        assert_eq!(f.invariant_factors(), vec![int(2), int(4)]);
        let f = smith_normal_form(&im(&[&[4, 0], &[0, 6]]));
        assert_eq!(f.invariant_factors(), vec![int(2), int(12)]);
        check_smith(&im(&[&[4, 0], &[0, 6]]));
        check_smith(&im(&[&[2, -1, 0, 0], &[-1, 2, -1, -1], &[0, -1, 2, 0], &[0, -1, 0, 2]]));
        check_smith(&im(&[&[6, 4, 2], &[3, 9, 1]]));
        check_smith(&im(&[&[0, 0], &[0, 0]]));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = vec![vec![int(2), int(0)], vec![int(1), int(1)]];
        let b = vec![vec![int(1), int(1)], vec![int(3), int(1)], vec![int(0), int(2)]];
        assert_eq!(hermite_normal_form(2, &a), hermite_normal_form(2, &b));
        assert_eq!(
            hermite_normal_form(2, &a),
            vec![vec![int(1), int(1)], vec![int(0), int(2)]]
        );
        assert!(hermite_normal_form(3, &[vec![int(0), int(0), int(0)]]).is_empty());
    }

    #[test]
    fn rational_inverse_and_det() {
        let g = im(&[&[2, -1], &[-1, 2]]).to_rational();
        assert_eq!(g.determinant(), rat(3, 1));
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv), RatMatrix::identity(2));
        assert!(im(&[&[1, 2], &[2, 4]]).to_rational().inverse().is_none());
        assert_eq!(im(&[&[1, 2], &[2, 4]]).determinant(), int(0));
        assert_eq!(im(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
    }

    #[test]
    fn ldl_definiteness() {
        let g = im(&[&[2, -1], &[-1, 2]]).to_rational();
        let f = Ldl::factor(&g).unwrap();
        assert!(f.is_positive_definite());
        assert_eq!(f.pivots, vec![rat(2, 1), rat(3, 2)]);
        let h = im(&[&[1, 0], &[0, -1]]).to_rational();
        assert!(!Ldl::factor(&h).unwrap().is_positive_definite());
        assert!(Ldl::factor(&im(&[&[0, 1], &[1, 0]]).to_rational()).is_none());
    }

    #[test]
    fn span_solver() {
        let b = im(&[&[0, 1, 1], &[0, 0, 2]]).to_rational();
        let s = SpanSolver::new(&b).unwrap();
        assert_eq!(
            s.solve(&[rat(0, 1), rat(1, 1), rat(2, 1)]),
            Some(vec![rat(1, 1), rat(1, 2)])
        );
        assert_eq!(s.solve(&[rat(1, 1), rat(0, 1), rat(0, 1)]), None);
        assert!(SpanSolver::new(&im(&[&[1, 1], &[2, 2]]).to_rational()).is_none());
    }
}
