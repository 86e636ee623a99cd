//! Exact integer lattices: saturated kernels of the matching equations,
//! membership, non-negative bases and vertex-solution search.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::{DimensionMismatch, MatchingSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    DimensionMismatch(DimensionMismatch),
    /// A basis entry does not fit in an `i64`.
    Overflow,
    NotASolution,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DimensionMismatch(d) => d.fmt(f),
            LatticeError::Overflow => write!(f, "lattice entry exceeds 64 bits"),
            LatticeError::NotASolution => write!(f, "vector is not a solution"),
        }
    }
}

/// A basis of an integer solution lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBasis {
    pub width: usize,
    pub vectors: Vec<Vec<i64>>,
    /// Set once the all-ones vector has been placed at index 0.
    pub base_positive: bool,
}

impl SolutionBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Integer combination `sum coeffs[i] * vectors[i]`.
    pub fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.width];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }
}

type Mat = Vec<Vec<BigInt>>;

fn big_rows(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    // target -= q * src
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Row echelon form by unimodular row operations. Within each column the
/// pivot is the entry of least absolute value, ties broken by row index.
/// `aux` receives the same row operations. Returns the pivot columns.
fn echelon(m: &mut Mat, mut aux: Option<&mut Mat>, cols: usize) -> Vec<usize> {
    let n = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        loop {
            let piv = (r..n)
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()).then(i.cmp(&j)));
            let Some(piv) = piv else { break };
            m.swap(r, piv);
            if let Some(a) = aux.as_deref_mut() {
                a.swap(r, piv);
            }
            let mut clear = true;
            for j in r + 1..n {
                if m[j][c].is_zero() {
                    continue;
                }
                let q = &m[j][c] / &m[r][c];
                let (top, rest) = m.split_at_mut(j);
                axpy(&mut rest[0], &q, &top[r]);
                if let Some(a) = aux.as_deref_mut() {
                    let (top, rest) = a.split_at_mut(j);
                    axpy(&mut rest[0], &q, &top[r]);
                }
                if !m[j][c].is_zero() {
                    clear = false;
                }
            }
            if clear {
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    pivots
}

/// Hermite normal form of the lattice spanned by `rows`: positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
fn hermite(rows: Mat, cols: usize) -> (Mat, Vec<usize>) {
    let mut m = rows;
    let pivots = echelon(&mut m, None, cols);
    m.truncate(pivots.len());
    for (i, &c) in pivots.iter().enumerate() {
        if m[i][c].is_negative() {
            for x in m[i].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        for j in 0..i {
            let q = m[j][c].div_floor(&m[i][c]);
            if !q.is_zero() {
                let (top, rest) = m.split_at_mut(i);
                axpy(&mut top[j], &q, &rest[0]);
            }
        }
    }
    (m, pivots)
}

fn to_i64_rows(m: &Mat) -> Result<Vec<Vec<i64>>, LatticeError> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or(LatticeError::Overflow)).collect())
        .collect()
}

/// Basis of the full integer kernel of the matching matrix, in Hermite
/// normal form.
pub fn nullspace_basis(sys: &MatchingSystem) -> Result<SolutionBasis, LatticeError> {
    let w = sys.width;
    let r = sys.matrix.len();
    // Transpose, then row-reduce alongside the identity: rows whose left
    // part vanishes give a unimodular, hence saturated, kernel basis.
    let mut left: Mat = (0..w)
        .map(|i| (0..r).map(|j| BigInt::from(sys.matrix[j][i])).collect())
        .collect();
    let mut right: Mat = (0..w)
        .map(|i| (0..w).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let pivots = echelon(&mut left, Some(&mut right), r);
    let kernel: Mat = right.split_off(pivots.len());
    let (h, _) = hermite(kernel, w);
    Ok(SolutionBasis { width: w, vectors: to_i64_rows(&h)?, base_positive: false })
}

/// Coefficients of `v` in terms of `b`, if `v` lies in the lattice.
pub fn coefficients(b: &SolutionBasis, v: &[i64]) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if v.len() != b.width {
        return Err(LatticeError::DimensionMismatch(DimensionMismatch {
            expected: b.width,
            found: v.len(),
        }));
    }
    let n = b.vectors.len();
    let mut m = big_rows(&b.vectors);
    let mut u: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let pivots = echelon(&mut m, Some(&mut u), b.width);
    let mut rest: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let mut y = vec![BigInt::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        if rest[c].is_zero() {
            continue;
        }
        let (q, rem) = rest[c].div_rem(&m[i][c]);
        if !rem.is_zero() {
            return Ok(None);
        }
        axpy(&mut rest, &q, &m[i]);
        y[i] = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    // v = y H = y U B
    let mut coeffs = vec![BigInt::zero(); n];
    for (yi, row) in y.iter().zip(&u) {
        if yi.is_zero() {
            continue;
        }
        for (c, x) in coeffs.iter_mut().zip(row) {
            *c += yi * x;
        }
    }
    Ok(Some(coeffs))
}

pub fn lattice_member(b: &SolutionBasis, v: &[i64]) -> Result<bool, LatticeError> {
    Ok(coefficients(b, v)?.is_some())
}

/// Rewrites the basis so that the all-ones vector is member 0 and every
/// other member `v` becomes `v + k * ones` for the least `k >= 0` making it
/// non-negative. The spanned lattice is unchanged.
pub fn nonnegativize(b: &SolutionBasis) -> Result<SolutionBasis, LatticeError> {
    if b.vectors.is_empty() || b.width == 0 {
        return Ok(b.clone());
    }
    let ones = vec![1i64; b.width];
    let mut c = coefficients(b, &ones)?.ok_or(LatticeError::NotASolution)?;
    let mut rows = big_rows(&b.vectors);
    // Euclid on the coefficient vector, mirrored on the basis rows, until
    // the all-ones vector is itself a basis member.
    loop {
        let nz: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let i = *nz
            .iter()
            .min_by(|&&x, &&y| c[x].abs().cmp(&c[y].abs()).then(x.cmp(&y)))
            .unwrap();
        for &j in &nz {
            if j == i {
                continue;
            }
            let q = &c[j] / &c[i];
            if q.is_zero() {
                continue;
            }
            c[j] = &c[j] - &q * &c[i];
            let src = rows[j].clone();
            for (t, s) in rows[i].iter_mut().zip(&src) {
                *t += &q * s;
            }
        }
    }
    let k = (0..c.len()).find(|&i| !c[i].is_zero()).ok_or(LatticeError::NotASolution)?;
    debug_assert!(c[k].abs().is_one());
    rows.remove(k);
    let mut vectors = vec![ones];
    for r in to_i64_rows(&rows)? {
        let min = r.iter().copied().min().unwrap_or(0);
        let shift = if min < 0 { -min } else { 0 };
        vectors.push(r.into_iter().map(|x| x + shift).collect());
    }
    Ok(SolutionBasis { width: b.width, vectors, base_positive: true })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexVerdict {
    Vertex,
    NotVertex,
    /// The node budget ran out or the search was cancelled.
    Inconclusive,
}

/// Limits for [`is_vertex_solution_with`].
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits<'a> {
    pub nodes: u64,
    pub cancel: Option<&'a AtomicBool>,
}

impl Default for SearchLimits<'_> {
    fn default() -> Self {
        SearchLimits { nodes: 2_000_000, cancel: None }
    }
}

pub fn is_vertex_solution(
    b: &SolutionBasis,
    v: &[i64],
    bound: u32,
) -> Result<VertexVerdict, LatticeError> {
    is_vertex_solution_with(b, v, bound, SearchLimits::default())
}

/// Searches for `n v = v1 + v2` with `n <= bound`, `v1, v2` non-negative
/// lattice members and `v1` not an integer multiple of `v`.
pub fn is_vertex_solution_with(
    b: &SolutionBasis,
    v: &[i64],
    bound: u32,
    limits: SearchLimits<'_>,
) -> Result<VertexVerdict, LatticeError> {
    if v.iter().any(|&x| x < 0) || !lattice_member(b, v)? {
        return Err(LatticeError::NotASolution);
    }
    let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    if support.is_empty() {
        return Ok(VertexVerdict::Vertex);
    }
    let mut budget = limits.nodes;
    for n in 1..=bound as i64 {
        let mut cur = vec![0i64; v.len()];
        match search(b, v, n, &support, 0, &mut cur, &mut budget, limits.cancel)? {
            Some(true) => return Ok(VertexVerdict::NotVertex),
            Some(false) => {}
            None => return Ok(VertexVerdict::Inconclusive),
        }
    }
    Ok(VertexVerdict::Vertex)
}

fn is_multiple(v: &[i64], w: &[i64]) -> bool {
    // w == k v for some integer k
    let i = v.iter().position(|&x| x != 0).unwrap();
    if w[i] % v[i] != 0 {
        return false;
    }
    let k = w[i] / v[i];
    v.iter().zip(w).all(|(a, b)| a * k == *b)
}

#[allow(clippy::too_many_arguments)]
fn search(
    b: &SolutionBasis,
    v: &[i64],
    n: i64,
    support: &[usize],
    depth: usize,
    cur: &mut Vec<i64>,
    budget: &mut u64,
    cancel: Option<&AtomicBool>,
) -> Result<Option<bool>, LatticeError> {
    if *budget == 0 || cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
        return Ok(None);
    }
    *budget -= 1;
    if depth == support.len() {
        if is_multiple(v, cur) || !lattice_member(b, cur)? {
            return Ok(Some(false));
        }
        // cur is a non-multiple member; its complement is then a member too
        return Ok(Some(true));
    }
    let i = support[depth];
    for x in 0..=n * v[i] {
        cur[i] = x;
        match search(b, v, n, support, depth + 1, cur, budget, cancel)? {
            Some(false) => {}
            other => return Ok(other),
        }
    }
    cur[i] = 0;
    Ok(Some(false))
}
