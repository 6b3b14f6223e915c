//! Lowest Dirichlet eigenvalues of the 5-point Laplacian on a raster.
//!
//! Block LOBPCG with a symmetric aggregation-multigrid V-cycle as
//! preconditioner. The unscaled stencil `(4, −1, −1, −1, −1)` is used
//! throughout and eigenvalues are divided by `h²` at the end. Rasters that
//! carry boundary fractions get the symmetric ghost-point correction on
//! the diagonal, which restores second order on curved boundaries.

use super::raster::RasterGrid;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Matrix applications allowed per requested eigenpair before giving up.
pub const MAX_APPLICATIONS_PER_PAIR: usize = 100_000;

const NONE: u32 = u32::MAX;
const CHUNK: usize = 4096;
const COARSEST: usize = 600;
const SWEEPS: usize = 2;
const GUARD: usize = 2;
const SEED: u64 = 0x6c61_706c_6163_6521;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Ascending, already scaled by `1/h²`.
    pub eigenvalues: Vec<f64>,
    /// `‖A x − λ x‖ / λ` for each returned pair.
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub applications: usize,
    pub unknowns: usize,
    pub h: f64,
}

/// Deterministic dot product: fixed chunks, then a pairwise sum of partials.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let partial: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>())
        .collect();
    crate::quadrature::pairwise_sum(&partial)
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.par_iter_mut().zip(x.par_iter()).for_each(|(b, a)| *b += alpha * a);
}

/// One level of the hierarchy: a variable-coefficient 5-point operator.
#[derive(Debug, Clone)]
struct Level {
    diag: Vec<f64>,
    /// Neighbour indices in the order east, west, north, south.
    nbr: Vec<[u32; 4]>,
    coef: Vec<[f64; 4]>,
    pos: Vec<(u32, u32)>,
}

impl Level {
    fn len(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| {
            let mut s = self.diag[i] * x[i];
            for d in 0..4 {
                let j = self.nbr[i][d];
                if j != NONE {
                    s += self.coef[i][d] * x[j as usize];
                }
            }
            *yi = s;
        });
    }

    fn relax(&self, i: usize, r: &[f64], x: &mut [f64]) {
        let mut s = r[i];
        for d in 0..4 {
            let j = self.nbr[i][d];
            if j != NONE {
                s -= self.coef[i][d] * x[j as usize];
            }
        }
        x[i] = s / self.diag[i];
    }

    fn gauss_seidel(&self, r: &[f64], x: &mut [f64], forward: bool) {
        if forward {
            for i in 0..self.len() {
                self.relax(i, r, x);
            }
        } else {
            for i in (0..self.len()).rev() {
                self.relax(i, r, x);
            }
        }
    }

    /// 2×2 aggregation with a halved Galerkin product `½ Pᵀ A P`.
    ///
    /// Piecewise-constant prolongation makes the plain Galerkin operator
    /// twice too stiff for the Laplacian; the factor restores it.
    fn coarsen(&self) -> (Level, Vec<u32>) {
        let wi = self.pos.iter().map(|p| p.0).max().unwrap_or(0) as usize / 2 + 1;
        let wj = self.pos.iter().map(|p| p.1).max().unwrap_or(0) as usize / 2 + 1;
        let mut slot = vec![NONE; wi * wj];
        for &(i, j) in &self.pos {
            slot[(i / 2) as usize + wi * (j / 2) as usize] = 0;
        }
        let mut pos = Vec::new();
        for (k, s) in slot.iter_mut().enumerate() {
            if *s != NONE {
                *s = pos.len() as u32;
                pos.push(((k % wi) as u32, (k / wi) as u32));
            }
        }
        let to_coarse: Vec<u32> = self
            .pos
            .iter()
            .map(|&(i, j)| slot[(i / 2) as usize + wi * (j / 2) as usize])
            .collect();
        let nc = pos.len();
        let mut diag = vec![0.0; nc];
        let mut nbr = vec![[NONE; 4]; nc];
        let mut coef = vec![[0.0; 4]; nc];
        for f in 0..self.len() {
            let c = to_coarse[f] as usize;
            diag[c] += self.diag[f];
            for d in 0..4 {
                let g = self.nbr[f][d];
                if g == NONE {
                    continue;
                }
                let cg = to_coarse[g as usize];
                if cg as usize == c {
                    diag[c] += self.coef[f][d];
                } else {
                    nbr[c][d] = cg;
                    coef[c][d] += self.coef[f][d];
                }
            }
        }
        diag.iter_mut().for_each(|v| *v *= 0.5);
        coef.iter_mut().flatten().for_each(|v| *v *= 0.5);
        (
            Level {
                diag,
                nbr,
                coef,
                pos,
            },
            to_coarse,
        )
    }

    fn dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            for d in 0..4 {
                let j = self.nbr[i][d];
                if j != NONE {
                    m[(i, j as usize)] = self.coef[i][d];
                }
            }
        }
        m
    }
}

/// Symmetric V-cycle preconditioner.
struct Multigrid {
    levels: Vec<Level>,
    /// `maps[l]` sends level `l` unknowns to level `l + 1`.
    maps: Vec<Vec<u32>>,
    coarse: Option<nalgebra::Cholesky<f64, nalgebra::Dyn>>,
}

impl Multigrid {
    fn new(fine: Level) -> Self {
        let mut levels = vec![fine];
        let mut maps = Vec::new();
        while levels.last().unwrap().len() > COARSEST {
            let (c, m) = levels.last().unwrap().coarsen();
            if c.len() * 10 > levels.last().unwrap().len() * 9 {
                break;
            }
            levels.push(c);
            maps.push(m);
        }
        let last = levels.last().unwrap();
        let coarse = if last.len() <= 4 * COARSEST {
            last.dense().cholesky()
        } else {
            None
        };
        Multigrid {
            levels,
            maps,
            coarse,
        }
    }

    fn vcycle(&self, l: usize, r: &[f64]) -> Vec<f64> {
        let lev = &self.levels[l];
        if l + 1 == self.levels.len() {
            if let Some(ch) = &self.coarse {
                return ch.solve(&DVector::from_column_slice(r)).as_slice().to_vec();
            }
            let mut x = vec![0.0; r.len()];
            for _ in 0..20 {
                lev.gauss_seidel(r, &mut x, true);
                lev.gauss_seidel(r, &mut x, false);
            }
            return x;
        }
        let mut x = vec![0.0; r.len()];
        for _ in 0..SWEEPS {
            lev.gauss_seidel(r, &mut x, true);
        }
        let mut ax = vec![0.0; r.len()];
        lev.apply(&x, &mut ax);
        let map = &self.maps[l];
        let mut rc = vec![0.0; self.levels[l + 1].len()];
        for (f, &c) in map.iter().enumerate() {
            rc[c as usize] += r[f] - ax[f];
        }
        let ec = self.vcycle(l + 1, &rc);
        for (f, &c) in map.iter().enumerate() {
            x[f] += ec[c as usize];
        }
        for _ in 0..SWEEPS {
            lev.gauss_seidel(r, &mut x, false);
        }
        x
    }

    fn apply(&self, r: &[f64]) -> Vec<f64> {
        self.vcycle(0, r)
    }
}

/// Unscaled 5-point Dirichlet Laplacian on the inside nodes of a raster.
pub struct GridLaplacian {
    level: Level,
    pub h: f64,
}

impl GridLaplacian {
    pub fn new(grid: &RasterGrid) -> Result<Self> {
        let (nx, ny) = (grid.nx, grid.ny);
        let mut index = vec![NONE; nx * ny];
        let mut pos = Vec::new();
        for k in 0..nx * ny {
            if grid.inside[k] {
                index[k] = pos.len() as u32;
                pos.push(((k % nx) as u32, (k / nx) as u32));
            }
        }
        if pos.is_empty() {
            return Err(Error::Raster("no interior nodes".into()));
        }
        let at = |i: isize, j: isize| -> u32 {
            if i < 0 || j < 0 || i >= nx as isize || j >= ny as isize {
                NONE
            } else {
                index[i as usize + nx * j as usize]
            }
        };
        let nbr: Vec<[u32; 4]> = pos
            .iter()
            .map(|&(i, j)| {
                let (i, j) = (i as isize, j as isize);
                [at(i + 1, j), at(i - 1, j), at(i, j + 1), at(i, j - 1)]
            })
            .collect();
        // a boundary met at fraction θ of a step contributes 1/θ to the
        // diagonal (linear ghost value through the zero crossing)
        let diag: Vec<f64> = match &grid.fractions {
            None => vec![4.0; pos.len()],
            Some(fr) => pos
                .iter()
                .zip(&nbr)
                .map(|(&(i, j), nb)| {
                    let f = &fr[i as usize + nx * j as usize];
                    (0..4).map(|d| if nb[d] == NONE { 1.0 / f[d] } else { 1.0 }).sum()
                })
                .collect(),
        };
        let coef = nbr
            .iter()
            .map(|nb| nb.map(|j| if j == NONE { 0.0 } else { -1.0 }))
            .collect();
        Ok(GridLaplacian {
            level: Level {
                diag,
                coef,
                nbr,
                pos,
            },
            h: grid.h,
        })
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.len() == 0
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.level.apply(x, y)
    }
}

/// Orthonormalizes `cols[from..]` against all earlier columns (modified
/// Gram–Schmidt, two passes), dropping columns that become dependent.
fn orthonormalize(cols: &mut Vec<Vec<f64>>, from: usize) {
    let mut k = from;
    while k < cols.len() {
        let before = dot(&cols[k], &cols[k]).sqrt();
        for _ in 0..2 {
            for j in 0..k {
                let c = dot(&cols[j], &cols[k]);
                let (head, tail) = cols.split_at_mut(k);
                axpy(-c, &head[j], &mut tail[0]);
            }
        }
        let after = dot(&cols[k], &cols[k]).sqrt();
        if !(after > 1e-10 * before) || after == 0.0 {
            cols.remove(k);
            continue;
        }
        let inv = 1.0 / after;
        cols[k].par_iter_mut().for_each(|v| *v *= inv);
        k += 1;
    }
}

/// `Σ_j cols[j] · c[j]` for a coefficient column `c`.
fn combine(cols: &[Vec<f64>], c: &[f64]) -> Vec<f64> {
    let n = cols[0].len();
    let mut out = vec![0.0; n];
    out.par_chunks_mut(CHUNK).enumerate().for_each(|(b, chunk)| {
        let off = b * CHUNK;
        for (j, col) in cols.iter().enumerate() {
            let cj = c[j];
            if cj != 0.0 {
                let len = chunk.len();
                for (o, v) in chunk.iter_mut().zip(&col[off..off + len]) {
                    *o += cj * v;
                }
            }
        }
    });
    out
}

/// Rayleigh–Ritz on an orthonormal basis: returns ascending Ritz values and
/// coefficient vectors.
fn rayleigh_ritz(basis: &[Vec<f64>], images: &[Vec<f64>]) -> (Vec<f64>, DMatrix<f64>) {
    let s = basis.len();
    let mut g = DMatrix::zeros(s, s);
    for i in 0..s {
        for j in i..s {
            let v = 0.5 * (dot(&basis[i], &images[j]) + dot(&basis[j], &images[i]));
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    let eig = SymmetricEigen::new(g);
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(s, s, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vecs)
}

/// The `k` smallest eigenvalues of the raster Laplacian, to relative
/// residual `tol`.
pub fn fd_eigenvalues(grid: &RasterGrid, k: usize, tol: f64) -> Result<EigenResult> {
    if k == 0 {
        return Err(crate::error::domain("k must be at least 1"));
    }
    if !(tol > 0.0) {
        return Err(crate::error::domain("tolerance must be positive"));
    }
    let op = GridLaplacian::new(grid)?;
    let n = op.len();
    if n < k {
        return Err(Error::Raster(format!("{n} interior nodes cannot carry {k} eigenpairs")));
    }
    let m = (k + GUARD).min(n);
    let mg = Multigrid::new(op.level.clone());
    let limit = MAX_APPLICATIONS_PER_PAIR * k;
    let mut applications = 0usize;
    let apply = |x: &[f64], count: &mut usize| {
        let mut y = vec![0.0; n];
        op.apply(x, &mut y);
        *count += 1;
        y
    };

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut x: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            let r: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            mg.apply(&r)
        })
        .collect();
    orthonormalize(&mut x, 0);
    if x.len() < k {
        return Err(Error::Raster("degenerate starting block".into()));
    }
    let m = x.len();
    let mut ax: Vec<Vec<f64>> = x.iter().map(|v| apply(v, &mut applications)).collect();
    let (mut lambda, c) = rayleigh_ritz(&x, &ax);
    let coeffs = |c: &DMatrix<f64>, j: usize| -> Vec<f64> { c.column(j).iter().copied().collect() };
    x = (0..m).map(|j| combine(&x, &coeffs(&c, j))).collect();
    ax = (0..m).map(|j| combine(&ax, &coeffs(&c, j))).collect();
    lambda.truncate(m);

    let mut p: Vec<Vec<f64>> = Vec::new();
    let mut iterations = 0;
    loop {
        let r: Vec<Vec<f64>> = (0..m)
            .map(|j| {
                let mut rj = ax[j].clone();
                axpy(-lambda[j], &x[j], &mut rj);
                rj
            })
            .collect();
        let res: Vec<f64> = (0..m)
            .map(|j| dot(&r[j], &r[j]).sqrt() / lambda[j].abs())
            .collect();
        let worst = res[..k].iter().cloned().fold(0.0, f64::max);
        if worst <= tol {
            let scale = 1.0 / (op.h * op.h);
            return Ok(EigenResult {
                eigenvalues: lambda[..k].iter().map(|l| l * scale).collect(),
                residuals: res[..k].to_vec(),
                iterations,
                applications,
                unknowns: n,
                h: op.h,
            });
        }
        if applications >= limit || !worst.is_finite() {
            return Err(Error::Convergence {
                iterations,
                residual: worst,
            });
        }
        iterations += 1;

        let mut basis = x.clone();
        // converged guard-free columns still get a direction; it is cheap
        for rj in &r {
            basis.push(mg.apply(rj));
        }
        basis.append(&mut p);
        orthonormalize(&mut basis, m);
        let mut images = ax.clone();
        for v in &basis[m..] {
            images.push(apply(v, &mut applications));
        }
        let (vals, c) = rayleigh_ritz(&basis, &images);
        let s = basis.len();
        lambda = vals[..m].to_vec();
        let mut new_x = Vec::with_capacity(m);
        let mut new_ax = Vec::with_capacity(m);
        let mut new_p = Vec::with_capacity(m);
        for j in 0..m {
            let cj = coeffs(&c, j);
            new_x.push(combine(&basis, &cj));
            new_ax.push(combine(&images, &cj));
            let mut tail = cj;
            tail[..m].iter_mut().for_each(|v| *v = 0.0);
            if s > m {
                new_p.push(combine(&basis, &tail));
            }
        }
        x = new_x;
        ax = new_ax;
        p = new_p;
    }
}
