//! Dense real and complex kernels: frames, multi-indices, determinants,
//! Gram volumes, minors, the Cauchy–Binet identity and wedge norms.
//!
//! A frame is an ordered list of `m` vectors in an `n`-dimensional coordinate
//! space, i.e. the columns of an `n × m` matrix `M`. Its parallelotope has
//! squared `m`-volume `det(MᵀM)`; the `m × m` minor `M_I` on rows `I` is the
//! projection of that parallelotope onto the coordinate subspace `C_I`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Entry type of a frame: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    /// Modulus, used for pivot selection.
    fn magnitude(self) -> f64;
    /// Squared modulus.
    fn norm_sqr(self) -> f64;
    fn conj(self) -> Self;
    fn real(self) -> f64;
    fn imag(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn conj(self) -> Self {
        self
    }
    fn real(self) -> f64 {
        self
    }
    fn imag(self) -> f64 {
        0.0
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn real(self) -> f64 {
        self.re
    }
    fn imag(self) -> f64 {
        self.im
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
}

/// Strictly increasing, 1-based coordinate indices `(i1, …, im)`.
///
/// Ordering is lexicographic, so sorted collections of multi-indices come out
/// in the same order as [`multiindices`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Validates `1 <= i1 < … < im <= n`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return domain("multi-index must not be empty");
        }
        if indices[0] == 0 {
            return domain("multi-indices are 1-based");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return domain(format!("multi-index {indices:?} is not strictly increasing"));
        }
        if *indices.last().unwrap() > n {
            return domain(format!("multi-index {indices:?} exceeds dimension {n}"));
        }
        Ok(MultiIndex(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Comma-joined form, e.g. `"1,3"`; used as a JSON object key.
    pub fn key(&self) -> String {
        self.0.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }

    /// Parses the [`key`](Self::key) form.
    pub fn parse_key(key: &str, n: usize) -> Result<Self> {
        let parsed: std::result::Result<Vec<usize>, _> = key.split(',').map(|s| s.trim().parse::<usize>()).collect();
        match parsed {
            Ok(v) => MultiIndex::new(v, n),
            Err(_) => domain(format!("malformed multi-index key {key:?}")),
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

type IndexCache = Mutex<HashMap<(usize, usize), Arc<[MultiIndex]>>>;

/// All `C(n, m)` multi-indices of length `m` over `1..=n`, in lexicographic
/// order. Results are cached per `(n, m)`.
pub fn multiindices(n: usize, m: usize) -> Result<Arc<[MultiIndex]>> {
    if m == 0 || m > n {
        return domain(format!("need 1 <= m <= n, got m = {m}, n = {n}"));
    }
    static CACHE: OnceLock<IndexCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(n, m)) {
        return Ok(hit.clone());
    }

    let mut out = Vec::with_capacity(binomial(n as u64, m as u64) as usize);
    let mut current: Vec<usize> = (1..=m).collect();
    loop {
        out.push(MultiIndex(current.clone()));
        // rightmost slot that can still advance
        let Some(pos) = (0..m).rev().find(|&i| current[i] < n - (m - 1 - i)) else {
            break;
        };
        current[pos] += 1;
        for i in pos + 1..m {
            current[i] = current[i - 1] + 1;
        }
    }
    let out: Arc<[MultiIndex]> = out.into();
    cache.lock().unwrap().insert((n, m), out.clone());
    Ok(out)
}

/// Binomial coefficient, exact for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Ordered generating vectors of a parallelotope in `n`-space.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T> {
    n: usize,
    vectors: Vec<Vec<T>>,
}

pub type RealFrame = Frame<f64>;
pub type ComplexFrame = Frame<Complex64>;

impl<T: Scalar> Frame<T> {
    /// Builds a frame from its vectors; `n` is taken from their common length.
    pub fn new(vectors: Vec<Vec<T>>) -> Result<Self> {
        let n = vectors.first().map_or(0, Vec::len);
        Self::with_dim(n, vectors)
    }

    /// Builds a frame, requiring every vector to have length `n` and `1 <= m <= n`.
    pub fn with_dim(n: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        let m = vectors.len();
        if m == 0 {
            return domain("frame needs at least one vector");
        }
        if m > n {
            return domain(format!("frame has {m} vectors in dimension {n}"));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return domain(format!("vector of length {} in dimension {n}", v.len()));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return domain("frame entries must be finite");
        }
        Ok(Frame { n, vectors })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vectors.
    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    /// Entry `M[row][col]` of the `n × m` matrix (0-based), i.e. coordinate
    /// `row` of vector `col`.
    pub fn entry(&self, row: usize, col: usize) -> T {
        self.vectors[col][row]
    }

    /// Frame with vectors `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.vectors.swap(i, j);
        out
    }

    /// The `m × m` submatrix `M_I` on rows `I`.
    pub fn submatrix(&self, index: &MultiIndex) -> Result<Vec<Vec<T>>> {
        if index.len() != self.m() {
            return domain(format!(
                "multi-index {index} has length {} but the frame has {} vectors",
                index.len(),
                self.m()
            ));
        }
        if index.indices().iter().any(|&i| i == 0 || i > self.n) {
            return domain(format!("multi-index {index} out of range for n = {}", self.n));
        }
        Ok(index.indices().iter().map(|&row| (0..self.m()).map(|col| self.entry(row - 1, col)).collect()).collect())
    }
}

/// Total order on the trailing parts of two rows: equal rows compare equal
/// whatever their position.
fn cmp_tail<T: Scalar>(x: &[T], y: &[T]) -> Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.real().total_cmp(&b.real()).then(a.imag().total_cmp(&b.imag())))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Determinant by Gaussian elimination with partial pivoting.
///
/// Pivot ties are broken by row contents, so permuting the rows only flips
/// the sign of the result, bit for bit.
///
/// Panics if the matrix is not square.
pub fn determinant<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let size = a.len();
    assert!(a.iter().all(|row| row.len() == size), "determinant of a non-square matrix");
    let mut det = T::one();
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&i, &j| {
                a[i][col]
                    .magnitude()
                    .total_cmp(&a[j][col].magnitude())
                    .then_with(|| cmp_tail(&a[i][col..], &a[j][col..]))
            })
            .unwrap();
        if a[pivot][col].magnitude() == 0.0 {
            return T::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det = det * p;
        for row in col + 1..size {
            let factor = a[row][col] / p;
            if factor.magnitude() == 0.0 {
                continue;
            }
            let (top, bottom) = a.split_at_mut(row);
            for (x, &y) in bottom[0][col + 1..].iter_mut().zip(&top[col][col + 1..]) {
                *x = *x - factor * y;
            }
        }
    }
    det
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn determinant_exact(mut a: Vec<Vec<i128>>) -> i128 {
    let size = a.len();
    assert!(a.iter().all(|row| row.len() == size), "determinant of a non-square matrix");
    if size == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..size - 1 {
        if a[k][k] == 0 {
            match (k + 1..size).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[size - 1][size - 1]
}

/// Gram matrix `M†M` with entries `⟨v_i, v_j⟩ = Σ_k conj(v_i[k])·v_j[k]`.
pub fn gram_matrix<T: Scalar>(frame: &Frame<T>) -> Vec<Vec<T>> {
    let v = frame.vectors();
    (0..v.len())
        .map(|i| {
            (0..v.len()).map(|j| v[i].iter().zip(&v[j]).fold(T::zero(), |acc, (&x, &y)| acc + x.conj() * y)).collect()
        })
        .collect()
}

/// `det(M†M)`; real and non-negative up to rounding.
pub fn gram_determinant<T: Scalar>(frame: &Frame<T>) -> f64 {
    determinant(gram_matrix(frame)).real()
}

fn scaled_norm(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * x.iter().map(|v| (v / scale) * (v / scale)).sum::<f64>().sqrt()
}

/// `m`-volume of the parallelotope spanned by a real frame, `√det(MᵀM)`.
///
/// Evaluated as `Π |r_kk|` from a column-pivoted Householder QR of `M`, since
/// forming `MᵀM` squares the condition number. The pivot is the column with
/// the largest trailing norm, ties broken by contents, so the result does not
/// depend on the order of the vectors.
pub fn gram_volume(frame: &RealFrame) -> f64 {
    let mut cols = frame.vectors().to_vec();
    let mut volume = 1.0;
    for k in 0..cols.len() {
        let p = (k..cols.len())
            .max_by(|&i, &j| {
                scaled_norm(&cols[i][k..])
                    .total_cmp(&scaled_norm(&cols[j][k..]))
                    .then_with(|| cmp_tail(&cols[i][k..], &cols[j][k..]))
            })
            .unwrap();
        cols.swap(k, p);
        let alpha = scaled_norm(&cols[k][k..]);
        if alpha == 0.0 {
            return 0.0;
        }
        volume *= alpha;
        // reflector v = x + sign(x_0)·‖x‖·e_0 maps the pivot column onto e_0
        let mut v = cols[k][k..].to_vec();
        v[0] += alpha.copysign(v[0]);
        let vv: f64 = v.iter().map(|x| x * x).sum();
        for col in cols.iter_mut().skip(k + 1) {
            let s = 2.0 * v.iter().zip(&col[k..]).map(|(a, b)| a * b).sum::<f64>() / vv;
            col[k..].iter_mut().zip(&v).for_each(|(c, vi)| *c -= s * vi);
        }
    }
    volume
}

/// `2m`-volume of the real parallelotope `v1, i·v1, …, vm, i·vm` spanned by a
/// complex frame. This is `det(M†M)` itself, not its square root.
pub fn complex_gram_2m_volume(frame: &ComplexFrame) -> f64 {
    gram_determinant(frame).max(0.0)
}

/// `det(M_I)`. For real frames `|det(M_I)|` is the `m`-volume of the
/// projection onto `C_I`; for complex frames `|det(M_I)|²` is the `2m`-volume.
pub fn minor<T: Scalar>(frame: &Frame<T>, index: &MultiIndex) -> Result<T> {
    // eliminate on Mᵀ_I, whose rows are the vectors, so swapping two vectors
    // negates the minor exactly
    let sub = frame.submatrix(index)?;
    let transposed = (0..frame.m()).map(|col| sub.iter().map(|row| row[col]).collect()).collect();
    Ok(determinant(transposed))
}

/// Every minor of the frame, in lexicographic multi-index order.
pub fn minors<T: Scalar>(frame: &Frame<T>) -> Vec<(MultiIndex, T)> {
    let indices = multiindices(frame.n(), frame.m()).expect("frame has 1 <= m <= n");
    indices.iter().map(|i| (i.clone(), minor(frame, i).expect("index fits the frame"))).collect()
}

/// Both sides of the Cauchy–Binet identity `det(M†M) = Σ_I |det(M_I)|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyBinet {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

pub fn cauchy_binet_residual<T: Scalar>(frame: &Frame<T>) -> CauchyBinet {
    let lhs = gram_determinant(frame);
    let rhs: f64 = minors(frame).into_iter().map(|(_, d)| d.norm_sqr()).sum();
    CauchyBinet { lhs, rhs, residual: crate::residual(lhs, rhs) }
}

/// Coordinates of `v1 ∧ … ∧ vm` in the orthonormal basis
/// `e_{i1} ∧ … ∧ e_{im}`, in lexicographic multi-index order.
pub fn wedge_components(frame: &RealFrame) -> Vec<f64> {
    minors(frame).into_iter().map(|(_, d)| d).collect()
}

/// Norm of `v1 ∧ … ∧ vm`, the parallelotope's `m`-volume.
pub fn wedge_norm(frame: &RealFrame) -> f64 {
    let comps = wedge_components(frame);
    // scaled sum of squares, the same way hypot avoids overflow
    let scale = comps.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * comps.iter().map(|c| (c / scale) * (c / scale)).sum::<f64>().sqrt()
}

/// Identifies `(z1, …, zn) ∈ Cⁿ` with `(x1, y1, …, xn, yn) ∈ R²ⁿ`.
pub fn realify(v: &[Complex64]) -> Vec<f64> {
    v.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// `i·v`, the 90° rotation that distinguishes `Cⁿ` from `R²ⁿ`.
pub fn times_i(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| Complex64::new(-z.im, z.re)).collect()
}

/// The real frame `(v1, i·v1, …, vm, i·vm)` in `R²ⁿ` underlying a complex frame.
pub fn realify_frame(frame: &ComplexFrame) -> RealFrame {
    let vectors = frame.vectors().iter().flat_map(|v| [realify(v), realify(&times_i(v))]).collect();
    Frame::with_dim(2 * frame.n(), vectors).expect("realified frame keeps 2m <= 2n")
}
