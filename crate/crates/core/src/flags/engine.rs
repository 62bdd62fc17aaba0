//! Streaming enumeration of rational flags and Bruhat relative positions.
//!
//! A flag is carried as an adapted basis `b_0 .. b_{N-1}` (so `V_i` is the span
//! of the first `i` vectors). For the isotropic models the basis has the shape
//! `f_0 .. f_{n-1}, [m], h_{n-1} .. h_0` with `B(f_i, h_j) = δ_ij` and all other
//! pairings zero, which makes it adapted to the self-dual completion as well.
//! The coordinates of `g b_j` are then read off as `B(b_{N-1-i}, g b_j)` up to
//! nonzero row constants, so no inverse is ever formed.
//!
//! Vectors live in fixed-size arrays; the forms of the models are antidiagonal,
//! so a pairing costs `O(N)`.

use rayon::prelude::*;

use crate::coxeter::{CoxeterGroup, Family, WeylElement};
use crate::error::{Error, Result};
use crate::exact::{MatrixFq, PrimeField};
use crate::groups::GroupModel;

use super::FlagChain;

const MAXN: usize = 9;

pub(crate) type Vector = Vec<u32>;
type Arr = [u32; MAXN];

/// Maps the images of the first columns of the Bruhat normal form to group elements.
pub(crate) struct PositionTable {
    cols: usize,
    size: usize,
    table: Vec<u32>,
}

impl PositionTable {
    pub(crate) fn new(model: &GroupModel, group: &CoxeterGroup) -> Self {
        let size = model.size();
        let n = model.label().rank;
        let cols = match model.label().family {
            Family::A => size - 1,
            _ => n,
        };
        let mut table = vec![u32::MAX; size.pow(cols as u32)];
        for w in group.elements() {
            let perm = group.perm(w);
            let code = (0..cols).rev().fold(0usize, |acc, j| acc * size + point_to_coord(model, perm[j] as usize));
            table[code] = w.0 as u32;
        }
        Self { cols, size, table }
    }

    fn lookup(&self, pivots: &[usize]) -> Option<WeylElement> {
        let code = pivots[..self.cols].iter().rev().fold(0usize, |acc, &r| acc * self.size + r);
        match self.table[code] {
            u32::MAX => None,
            i => Some(WeylElement(i as usize)),
        }
    }
}

/// Coordinate index of a point of the permutation model (type B skips the middle coordinate).
pub(crate) fn point_to_coord(model: &GroupModel, x: usize) -> usize {
    let n = model.label().rank;
    if model.label().family == Family::B && x >= n {
        x + 1
    } else {
        x
    }
}

fn axpy(f: PrimeField, a: u32, x: &[u32], y: &[u32]) -> Vector {
    y.iter().zip(x).map(|(&yi, &xi)| f.add(yi, f.mul(a, xi))).collect()
}

/// Bruhat pivots of the first `cols` columns of an `rows x cols` matrix.
#[inline]
fn pivots(p: u32, inv: &[u32], m: &mut [Arr; MAXN], rows: usize, cols: usize, out: &mut [usize; MAXN]) -> bool {
    let p64 = p as u64;
    for j in 0..cols {
        let Some(r) = (0..rows).rev().find(|&i| m[i][j] != 0) else {
            return false;
        };
        out[j] = r;
        let pinv = inv[m[r][j] as usize] as u64;
        for jj in j + 1..cols {
            if m[r][jj] != 0 {
                let neg = p64 - m[r][jj] as u64 * pinv % p64;
                for row in m.iter_mut().take(rows) {
                    if row[j] != 0 {
                        row[jj] = ((row[jj] as u64 + neg * row[j] as u64) % p64) as u32;
                    }
                }
            }
        }
    }
    true
}

/// All normalized coefficient vectors (first nonzero entry 1) of length `d`.
pub(crate) fn normalized_vectors(p: u32, d: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for_each_normalized(p, d, |c, _| out.push(c[..d].to_vec()));
    out
}

/// Calls `visit(c, lead)` for every normalized coefficient vector of length `d`.
fn for_each_normalized(p: u32, d: usize, mut visit: impl FnMut(&Arr, usize)) {
    for lead in 0..d {
        let mut c = [0u32; MAXN];
        c[lead] = 1;
        let count = (p as usize).pow((d - lead - 1) as u32);
        for _ in 0..count {
            visit(&c, lead);
            for slot in c[lead + 1..d].iter_mut() {
                *slot += 1;
                if *slot < p {
                    break;
                }
                *slot = 0;
            }
        }
    }
}

pub(crate) fn combine(f: PrimeField, coeffs: &[u32], basis: &[Vector]) -> Vector {
    let len = basis[0].len();
    let mut v = vec![0u32; len];
    for (c, b) in coeffs.iter().zip(basis) {
        if *c != 0 {
            v = axpy(f, *c, b, &v);
        }
    }
    v
}

/// Arithmetic for one model: the prime and the antidiagonal of the form.
#[derive(Clone, Copy)]
struct Kernel {
    p: u32,
    size: usize,
    antidiag: Arr,
}

impl Kernel {
    #[inline]
    fn pair(&self, x: &Arr, y: &Arr) -> u32 {
        let n = self.size;
        let p = self.p as u64;
        let mut s = 0u64;
        for i in 0..n {
            if x[i] != 0 {
                s += x[i] as u64 * (self.antidiag[i] as u64 * y[n - 1 - i] as u64 % p);
            }
        }
        (s % p) as u32
    }

    #[inline]
    fn combine(&self, c: &Arr, basis: &[Arr]) -> Arr {
        let p = self.p as u64;
        let mut acc = [0u64; MAXN];
        for (k, b) in basis.iter().enumerate() {
            if c[k] != 0 {
                for i in 0..self.size {
                    acc[i] += c[k] as u64 * b[i] as u64;
                }
            }
        }
        let mut out = [0u32; MAXN];
        for i in 0..self.size {
            out[i] = (acc[i] % p) as u32;
        }
        out
    }

    #[inline]
    fn mul_vec(&self, rows: &[Arr], x: &Arr) -> Arr {
        let p = self.p as u64;
        let mut out = [0u32; MAXN];
        for (o, row) in out.iter_mut().zip(rows) {
            let s: u64 = row[..self.size].iter().zip(&x[..self.size]).map(|(&a, &b)| a as u64 * b as u64).sum();
            *o = (s % p) as u32;
        }
        out
    }
}

fn to_arr(v: &[u32]) -> Arr {
    let mut a = [0u32; MAXN];
    a[..v.len()].copy_from_slice(v);
    a
}

/// Visitor over complete flags, as adapted bases.
pub(crate) struct Enumerator {
    f: PrimeField,
    kernel: Kernel,
    rank: usize,
    isotropic: bool,
    symmetric: bool,
    /// Candidate first vectors, normalized, with the index of their leading entry.
    first_lines: Vec<(Arr, usize)>,
}

impl Enumerator {
    pub(crate) fn new(model: &GroupModel) -> Self {
        let f = model.field();
        let p = f.p();
        let size = model.size();
        let mut antidiag = [0u32; MAXN];
        if let Some(j) = model.gram() {
            for (i, slot) in antidiag.iter_mut().enumerate().take(size) {
                *slot = j.get(i, size - 1 - i);
                debug_assert!((0..size).all(|c| c == size - 1 - i || j.get(i, c) == 0));
            }
        }
        let kernel = Kernel { p, size, antidiag };
        let isotropic = model.gram().is_some();
        let mut first_lines = Vec::new();
        for_each_normalized(p, size, |c, lead| {
            if !isotropic || kernel.pair(c, c) == 0 {
                first_lines.push((*c, lead));
            }
        });
        Self { f, kernel, rank: model.label().rank, isotropic, symmetric: model.symmetry() == 1, first_lines }
    }

    pub(crate) fn first_level_len(&self) -> usize {
        self.first_lines.len()
    }

    /// Visits every flag whose first line is `first_lines[i]` for `i` in `range`.
    /// The sink receives the `N` basis vectors.
    fn visit_raw(&self, range: std::ops::Range<usize>, sink: &mut dyn FnMut(&[Arr])) {
        let size = self.kernel.size;
        let units: Vec<Arr> = (0..size)
            .map(|k| {
                let mut a = [0u32; MAXN];
                a[k] = 1;
                a
            })
            .collect();
        let mut basis = [[0u32; MAXN]; MAXN];
        for &(x, lead) in &self.first_lines[range] {
            if self.isotropic {
                self.descend_isotropic(&units, x, lead, 0, &mut basis, sink);
            } else {
                self.descend_linear(&units, x, lead, 0, &mut basis, sink);
            }
        }
    }

    pub(crate) fn visit(&self, range: std::ops::Range<usize>, sink: &mut dyn FnMut(&FlagChain)) {
        let size = self.kernel.size;
        self.visit_raw(range, &mut |b| sink(&FlagChain { basis: b.iter().map(|v| v[..size].to_vec()).collect() }));
    }

    /// `x` lies in the span of `rest`, with coefficient 1 on `rest[lead]`.
    fn descend_linear(
        &self,
        rest: &[Arr],
        x: Arr,
        lead: usize,
        level: usize,
        basis: &mut [Arr; MAXN],
        sink: &mut dyn FnMut(&[Arr]),
    ) {
        basis[level] = x;
        let mut next = [[0u32; MAXN]; MAXN];
        let mut len = 0;
        for (k, v) in rest.iter().enumerate() {
            if k != lead {
                next[len] = *v;
                len += 1;
            }
        }
        if len == 1 {
            basis[level + 1] = next[0];
            sink(&basis[..level + 2]);
            return;
        }
        for_each_normalized(self.kernel.p, len, |c, l| {
            let y = self.kernel.combine(c, &next[..len]);
            self.descend_linear(&next[..len], y, l, level + 1, basis, sink);
        });
    }

    /// `x` is isotropic in the nondegenerate space spanned by `mid`, with
    /// coefficient 1 on `mid[lead]`. Splits off a hyperbolic pair `(x, h)` and
    /// recurses into its orthogonal complement.
    fn descend_isotropic(
        &self,
        mid: &[Arr],
        x: Arr,
        lead: usize,
        level: usize,
        basis: &mut [Arr; MAXN],
        sink: &mut dyn FnMut(&[Arr]),
    ) {
        let k = &self.kernel;
        let f = self.f;
        let p = k.p as u64;
        let mut bx = [0u32; MAXN];
        for (i, w) in mid.iter().enumerate() {
            bx[i] = k.pair(&x, w);
        }
        // some other basis vector pairs nontrivially with x, since B(x, x) = 0
        let part = (0..mid.len()).find(|&i| i != lead && bx[i] != 0).expect("nondegenerate middle space");
        let scale = f.inv(bx[part]).expect("nonzero") as u64;
        let mut h = [0u32; MAXN];
        for i in 0..k.size {
            h[i] = (mid[part][i] as u64 * scale % p) as u32;
        }
        if self.symmetric {
            let c = f.div(k.pair(&h, &h), 2).expect("odd characteristic") as u64;
            for i in 0..k.size {
                h[i] = ((h[i] as u64 + (p - c) * x[i] as u64) % p) as u32;
            }
        }
        // P(w) = w - B(w, h) x - B(x, w) h; P(mid[lead]) and P(mid[part]) are redundant
        let mut next = [[0u32; MAXN]; MAXN];
        let mut len = 0;
        for (i, w) in mid.iter().enumerate() {
            if i == lead || i == part {
                continue;
            }
            let a = (p - k.pair(w, &h) as u64) % p;
            let b = (p - bx[i] as u64) % p;
            for t in 0..k.size {
                next[len][t] = ((w[t] as u64 + a * x[t] as u64 + b * h[t] as u64) % p) as u32;
            }
            len += 1;
        }

        basis[level] = x;
        basis[k.size - 1 - level] = h;
        if level + 1 == self.rank {
            if len == 1 {
                basis[self.rank] = next[0];
            }
            sink(&basis[..k.size]);
            return;
        }
        let mut gram = [[0u32; MAXN]; MAXN];
        if self.symmetric {
            for a in 0..len {
                for b in 0..len {
                    gram[a][b] = k.pair(&next[a], &next[b]);
                }
            }
        }
        for_each_normalized(k.p, len, |c, l| {
            if self.symmetric {
                let mut s = 0u64;
                for a in 0..len {
                    if c[a] != 0 {
                        for b in 0..len {
                            s += c[a] as u64 * (gram[a][b] as u64 * c[b] as u64 % p);
                        }
                    }
                }
                if !s.is_multiple_of(p) {
                    return;
                }
            }
            let y = k.combine(c, &next[..len]);
            self.descend_isotropic(&next[..len], y, l, level + 1, basis, sink);
        });
    }
}

/// Given isotropic `x` in the nondegenerate space spanned by `mid`, returns an
/// isotropic `h` with `B(x, h) = 1` and a basis of `<x, h>^perp` inside `mid`.
pub(crate) fn hyperbolic_split(
    f: PrimeField,
    sigma: u32,
    pair: impl Fn(&[u32], &[u32]) -> u32,
    mid: &[Vector],
    x: &[u32],
) -> Option<(Vector, Vec<Vector>)> {
    let size = x.len();
    let (w, bxw) = mid.iter().map(|w| (w, pair(x, w))).find(|&(_, b)| b != 0)?;
    let mut h: Vector = w.iter().map(|&c| f.mul(c, f.inv(bxw).expect("nonzero"))).collect();
    if sigma == 1 {
        let c = f.div(pair(&h, &h), 2).expect("odd characteristic");
        h = axpy(f, f.neg(c), x, &h);
    }
    let projected: Vec<Vector> = mid
        .iter()
        .map(|w| {
            let a = pair(w, &h);
            let b = f.mul(sigma, pair(w, x));
            axpy(f, f.neg(b), &h, &axpy(f, f.neg(a), x, w))
        })
        .collect();
    let (red, piv) = MatrixFq::from_columns(f, size, &projected).transpose().rref();
    Some((h, (0..piv.len()).map(|r| red.row(r).to_vec()).collect()))
}

/// Inverse of the matrix with the given columns, as rows; `None` if singular.
fn invert_columns(p: u32, inv: &[u32], cols: &[Arr], n: usize) -> Option<[Arr; MAXN]> {
    let p64 = p as u64;
    let mut a = [[0u32; 2 * MAXN]; MAXN];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = cols[j][i];
        }
        a[i][n + i] = 1;
    }
    for c in 0..n {
        let r = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(r, c);
        let s = inv[a[c][c] as usize] as u64;
        for t in 0..2 * n {
            a[c][t] = (a[c][t] as u64 * s % p64) as u32;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let m = p64 - a[r][c] as u64;
                for t in 0..2 * n {
                    a[r][t] = ((a[r][t] as u64 + m * a[c][t] as u64) % p64) as u32;
                }
            }
        }
    }
    let mut out = [[0u32; MAXN]; MAXN];
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i][n..2 * n]);
    }
    Some(out)
}

/// Counts, for each `g`, the flags `F` by the relative position of `(F, gF)`.
pub(crate) fn count_range(
    model: &GroupModel,
    group: &CoxeterGroup,
    table: &PositionTable,
    gs: &[MatrixFq],
    enumerator: &Enumerator,
    range: std::ops::Range<usize>,
) -> Result<Vec<Vec<u64>>> {
    let f = model.field();
    let p = f.p();
    let size = model.size();
    let inv: Vec<u32> = (0..p).map(|a| f.inv(a).unwrap_or(0)).collect();
    let probes: Vec<Vec<Arr>> = gs.iter().map(|g| (0..size).map(|r| to_arr(g.row(r))).collect()).collect();
    let mut counts = vec![vec![0u64; group.order()]; gs.len()];
    let mut failure: Option<Error> = None;
    let k = enumerator.kernel;
    let isotropic = enumerator.isotropic;
    let cols = table.cols;

    enumerator.visit_raw(range, &mut |b: &[Arr]| {
        if failure.is_some() {
            return;
        }
        // row i of the coordinate map: c_i(y) = B(b_{N-1-i}, y), or the dual basis in type A
        let rows: [Arr; MAXN] = if isotropic {
            let mut r = [[0u32; MAXN]; MAXN];
            for (i, ri) in r.iter_mut().enumerate().take(size) {
                let x = &b[size - 1 - i];
                for s in 0..size {
                    ri[s] = (x[size - 1 - s] as u64 * k.antidiag[size - 1 - s] as u64 % p as u64) as u32;
                }
            }
            r
        } else {
            invert_columns(p, &inv, b, size).expect("adapted basis")
        };
        for (t, g) in probes.iter().enumerate() {
            let mut m = [[0u32; MAXN]; MAXN];
            for j in 0..cols {
                let y = k.mul_vec(g, &b[j]);
                let c = k.mul_vec(&rows[..size], &y);
                for (i, row) in m.iter_mut().enumerate().take(size) {
                    row[j] = c[i];
                }
            }
            let mut piv = [0usize; MAXN];
            let ok = pivots(p, &inv, &mut m, size, cols, &mut piv);
            match ok.then(|| table.lookup(&piv)).flatten() {
                Some(w) => counts[t][w.0] += 1,
                None => {
                    failure = Some(Error::PermutationOutsideSubgroup(piv[..cols].to_vec()));
                    return;
                }
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(counts),
    }
}

/// Counts over all flags, splitting the first-level lines into `chunks` slices
/// processed on the current rayon pool.
pub(crate) fn count_all(
    model: &GroupModel,
    group: &CoxeterGroup,
    gs: &[MatrixFq],
    chunks: usize,
) -> Result<Vec<Vec<u64>>> {
    let table = PositionTable::new(model, group);
    let enumerator = Enumerator::new(model);
    let total = enumerator.first_level_len();
    let chunks = chunks.clamp(1, total.max(1));
    let bounds: Vec<std::ops::Range<usize>> =
        (0..chunks).map(|c| (c * total / chunks)..((c + 1) * total / chunks)).collect();
    let parts: Vec<Result<Vec<Vec<u64>>>> = bounds
        .into_par_iter()
        .map(|r| count_range(model, group, &table, gs, &enumerator, r))
        .collect();
    let mut acc = vec![vec![0u64; group.order()]; gs.len()];
    for part in parts {
        for (a, b) in acc.iter_mut().zip(part?) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
    Ok(acc)
}
