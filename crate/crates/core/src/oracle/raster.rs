//! Rasterization of image domains and the Euclidean distance transform.
//!
//! A raster is a uniform lattice of nodes `origin + (i h, j h)`, each the
//! centre of an `h × h` cell. Membership is decided by pushing a fine lattice
//! of base-domain samples through the map and marking the cells they land
//! in; cells crossed by the mapped boundary are settled by a side test,
//! which also removes slits (two boundary arcs mapped onto one segment).

use crate::error::{domain, Error, Result};
use crate::geometry::{BaseDomain, DomainSpec};
use crate::map::Complex;
use crate::norms::norm_sup;
use rayon::prelude::*;

pub const DEFAULT_SAMPLES_PER_CELL: usize = 3;

/// Boundary fractions are clamped here to keep the stencil diagonal bounded.
const MIN_FRACTION: f64 = 1e-3;

/// Cap on forward-mapped samples, to keep pathological specs from exhausting memory.
const MAX_SAMPLES: f64 = 4e8;

#[derive(Debug, Clone, PartialEq)]
pub struct RasterGrid {
    pub h: f64,
    pub origin: Complex,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, index `i + nx * j`.
    pub inside: Vec<bool>,
    /// Inside cells before erosion.
    pub mask_cells: usize,
    /// Per inside node, the distance to the boundary along each grid
    /// direction (east, west, north, south) as a fraction of `h`, when known.
    /// Directions towards inside neighbours hold 1.
    pub fractions: Option<Vec<[f64; 4]>>,
}

impl RasterGrid {
    /// Nodes of the box `[x0, x1] × [y0, y1]` at pitch `h` whose position satisfies `pred`.
    ///
    /// The lattice is anchored at `(x0, y0)`, so a box whose sides are
    /// multiples of `h` has nodes exactly on its edges.
    pub fn from_predicate(
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        h: f64,
        pred: impl Fn(Complex) -> bool + Sync,
    ) -> Result<Self> {
        if !(h > 0.0) || !(x1 > x0 && y1 > y0) {
            return Err(domain("raster box must be non-empty and h > 0"));
        }
        let nx = ((x1 - x0) / h).round() as usize + 1;
        let ny = ((y1 - y0) / h).round() as usize + 1;
        let origin = Complex::new(x0, y0);
        let inside: Vec<bool> = (0..nx * ny)
            .into_par_iter()
            .map(|k| pred(origin + Complex::new((k % nx) as f64 * h, (k / nx) as f64 * h)))
            .collect();
        let mask_cells = inside.iter().filter(|&&b| b).count();
        RasterGrid {
            h,
            origin,
            nx,
            ny,
            inside,
            mask_cells,
            fractions: None,
        }
        .checked()
    }

    /// Nodes where `level < 0`, with boundary fractions found by bisection
    /// of `level` along each grid edge that leaves the domain.
    pub fn from_level_set(
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        h: f64,
        level: impl Fn(Complex) -> f64 + Sync,
    ) -> Result<Self> {
        let mut grid = Self::from_predicate(x0, x1, y0, y1, h, |w| level(w) < 0.0)?;
        let (nx, ny) = (grid.nx, grid.ny);
        let steps = [(1isize, 0isize), (-1, 0), (0, 1), (0, -1)];
        let fractions: Vec<[f64; 4]> = (0..nx * ny)
            .into_par_iter()
            .map(|k| {
                let mut f = [1.0; 4];
                if !grid.inside[k] {
                    return f;
                }
                let (i, j) = ((k % nx) as isize, (k / nx) as isize);
                let p = grid.node(i as usize, j as usize);
                for (d, &(di, dj)) in steps.iter().enumerate() {
                    let (a, b) = (i + di, j + dj);
                    let outside = a < 0
                        || b < 0
                        || a >= nx as isize
                        || b >= ny as isize
                        || !grid.inside[a as usize + nx * b as usize];
                    if !outside {
                        continue;
                    }
                    let dir = Complex::new(di as f64 * h, dj as f64 * h);
                    if level(p + dir) < 0.0 {
                        // off-box neighbour that the level set still counts as inside
                        continue;
                    }
                    let (mut lo, mut hi) = (0.0, 1.0);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        if level(p + dir * mid) < 0.0 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    f[d] = hi.max(MIN_FRACTION);
                }
                f
            })
            .collect();
        grid.fractions = Some(fractions);
        Ok(grid)
    }

    fn checked(self) -> Result<Self> {
        if !self.inside.iter().any(|&b| b) {
            return Err(Error::Raster("rasterized domain is empty".into()));
        }
        Ok(self)
    }

    pub fn node(&self, i: usize, j: usize) -> Complex {
        self.origin + Complex::new(i as f64 * self.h, j as f64 * self.h)
    }

    pub fn inside_count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    /// Area of the union of inside cells.
    pub fn area(&self) -> f64 {
        self.inside_count() as f64 * self.h * self.h
    }

    /// Area of the cell-centre mask before erosion.
    pub fn mask_area(&self) -> f64 {
        self.mask_cells as f64 * self.h * self.h
    }

    /// Removes every inside node with a non-inside node among its 4 neighbours.
    pub fn eroded(&self) -> Result<Self> {
        let (nx, ny) = (self.nx, self.ny);
        let inside: Vec<bool> = (0..nx * ny)
            .into_par_iter()
            .map(|k| {
                if !self.inside[k] {
                    return false;
                }
                let (i, j) = ((k % nx) as isize, (k / nx) as isize);
                [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().all(|&(di, dj)| {
                    let (a, b) = (i + di, j + dj);
                    a >= 0
                        && b >= 0
                        && a < nx as isize
                        && b < ny as isize
                        && self.inside[a as usize + nx * b as usize]
                })
            })
            .collect();
        RasterGrid {
            inside,
            fractions: None,
            ..self.clone()
        }
        .checked()
    }
}

/// Raster of the image domain for the eigenvalue solver: the cell-centre
/// mask eroded by one layer, so every inside node sits strictly in Ω.
pub fn rasterize(spec: &DomainSpec, h: f64, samples_per_cell: usize) -> Result<RasterGrid> {
    mark_image(spec, h, samples_per_cell)?.eroded()
}

/// Cell-centre mask of the image domain, before erosion.
///
/// Cells hit by a mapped interior sample and by no mapped boundary sample
/// are inside. Cells the boundary passes through are decided by the side
/// their centre lies on, seen from every boundary sample about as close as
/// the nearest one; on a slit the two sides disagree and the cell is dropped.
pub fn mark_image(spec: &DomainSpec, h: f64, samples_per_cell: usize) -> Result<RasterGrid> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(domain(format!("raster pitch must be positive, got {h}")));
    }
    if samples_per_cell == 0 {
        return Err(domain("samples_per_cell must be >= 1"));
    }
    spec.validate()?;
    let map = &spec.map;
    let base = &spec.base;
    let sup = norm_sup(map, base)?.max(1e-12);
    // base lattice pitch so that mapped neighbours are at most h / samples apart
    let delta = h / (samples_per_cell as f64 * sup);
    if base.area() / (delta * delta) > MAX_SAMPLES {
        return Err(Error::Raster(format!(
            "raster at h = {h} would need more than {MAX_SAMPLES:e} samples"
        )));
    }

    let nb = ((base.perimeter() / (0.25 * delta)).ceil() as usize).max(64);
    // (image point, inward normal)
    let boundary: Vec<(Complex, Complex)> = (0..nb)
        .into_par_iter()
        .map(|k| {
            let s = k as f64 / nb as f64;
            let (w, d) = map.eval_with_deriv(base.boundary_point(s))?;
            Ok((w, Complex::new(0.0, 1.0) * d * base.boundary_tangent(s)))
        })
        .collect::<Result<_>>()?;

    // the image of the closure is bounded by the image of the boundary
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (w, _) in &boundary {
        xmin = xmin.min(w.re);
        xmax = xmax.max(w.re);
        ymin = ymin.min(w.im);
        ymax = ymax.max(w.im);
    }
    let pad = 3.0 * h;
    let origin = Complex::new(
        ((xmin - pad) / h).floor() * h,
        ((ymin - pad) / h).floor() * h,
    );
    let nx = ((xmax + pad - origin.re) / h).ceil() as usize + 1;
    let ny = ((ymax + pad - origin.im) / h).ceil() as usize + 1;
    let cell_of = |w: Complex| -> Option<usize> {
        let i = ((w.re - origin.re) / h).round();
        let j = ((w.im - origin.im) / h).round();
        (i >= 0.0 && j >= 0.0 && (i as usize) < nx && (j as usize) < ny)
            .then(|| i as usize + nx * j as usize)
    };

    let (bx0, bx1, by0, by1) = match *base {
        BaseDomain::Rectangle { x0, x1, y0, y1 } => (x0, x1, y0, y1),
        BaseDomain::Disc { center, radius } => (
            center.re - radius,
            center.re + radius,
            center.im - radius,
            center.im + radius,
        ),
    };
    let mx = ((bx1 - bx0) / delta).ceil() as usize;
    let my = ((by1 - by0) / delta).ceil() as usize;
    let (dx, dy) = ((bx1 - bx0) / mx as f64, (by1 - by0) / my as f64);
    let hits: Vec<Vec<usize>> = (0..my)
        .into_par_iter()
        .map(|r| -> Result<Vec<usize>> {
            let y = by0 + (r as f64 + 0.5) * dy;
            let mut row = Vec::new();
            for c in 0..mx {
                let z = Complex::new(bx0 + (c as f64 + 0.5) * dx, y);
                if !base.contains(z) {
                    continue;
                }
                if let Some(k) = cell_of(map.eval(z)?) {
                    if row.last() != Some(&k) {
                        row.push(k);
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut inside = vec![false; nx * ny];
    for k in hits.into_iter().flatten() {
        inside[k] = true;
    }
    // boundary samples bucketed by cell
    let mut bucket: Vec<Vec<u32>> = vec![Vec::new(); nx * ny];
    for (idx, (w, _)) in boundary.iter().enumerate() {
        if let Some(k) = cell_of(*w) {
            bucket[k].push(idx as u32);
        }
    }
    let touched: Vec<usize> = (0..nx * ny).filter(|&k| !bucket[k].is_empty()).collect();
    // boundary samples are at most this far apart in the image
    let spacing = 0.25 * delta * sup;
    let verdicts: Vec<(usize, bool)> = touched
        .par_iter()
        .map(|&k| {
            let (i, j) = ((k % nx) as isize, (k / nx) as isize);
            let c = origin + Complex::new(i as f64 * h, j as f64 * h);
            let mut near: Vec<(f64, Complex, Complex)> = Vec::new();
            for dj in -2..=2isize {
                for di in -2..=2isize {
                    let (a, b) = (i + di, j + dj);
                    if a < 0 || b < 0 || a >= nx as isize || b >= ny as isize {
                        continue;
                    }
                    for &idx in &bucket[a as usize + nx * b as usize] {
                        let (w, n) = boundary[idx as usize];
                        near.push(((c - w).norm(), w, n));
                    }
                }
            }
            let dmin = near.iter().map(|t| t.0).fold(f64::INFINITY, f64::min);
            let ok = near
                .iter()
                .filter(|t| t.0 <= dmin + 2.0 * spacing)
                .all(|&(_, w, n)| ((c - w) * n.conj()).re > 0.0);
            (k, ok)
        })
        .collect();
    for (k, ok) in verdicts {
        inside[k] = ok;
    }
    let mask_cells = inside.iter().filter(|&&b| b).count();
    RasterGrid {
        h,
        origin,
        nx,
        ny,
        inside,
        mask_cells,
        fractions: None,
    }
    .checked()
}

/// Squared 1-D distance transform (lower envelope of parabolas).
fn edt_1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    let mut first = None;
    for q in 0..n {
        if f[q].is_finite() {
            first = Some(q);
            break;
        }
    }
    let Some(q0) = first else {
        out.iter_mut().for_each(|o| *o = f64::INFINITY);
        return;
    };
    v[0] = q0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in q0 + 1..n {
        if !f[q].is_finite() {
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] && k > 0 {
                k -= 1;
                continue;
            }
            if s <= z[k] {
                // k == 0 and the new parabola dominates everywhere
                v[0] = q;
                z[1] = f64::INFINITY;
                break;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = f64::INFINITY;
            break;
        }
    }
    let mut k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let d = q as f64 - v[k] as f64;
        *o = d * d + f[v[k]];
    }
}

/// Euclidean distance from every node to the nearest non-inside node, in length units.
pub fn distance_transform(grid: &RasterGrid) -> Vec<f64> {
    let (nx, ny) = (grid.nx, grid.ny);
    let seed: Vec<f64> = grid
        .inside
        .iter()
        .map(|&b| if b { f64::INFINITY } else { 0.0 })
        .collect();
    // columns
    let cols: Vec<Vec<f64>> = (0..nx)
        .into_par_iter()
        .map(|i| {
            let f: Vec<f64> = (0..ny).map(|j| seed[i + nx * j]).collect();
            let mut out = vec![0.0; ny];
            edt_1d(&f, &mut out);
            out
        })
        .collect();
    // rows
    let rows: Vec<Vec<f64>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let f: Vec<f64> = (0..nx).map(|i| cols[i][j]).collect();
            let mut out = vec![0.0; nx];
            edt_1d(&f, &mut out);
            out
        })
        .collect();
    rows.into_iter()
        .flatten()
        .map(|d2| d2.sqrt() * grid.h)
        .collect()
}

/// Largest distance-to-boundary over the uneroded mask of the image.
pub fn raster_inradius(spec: &DomainSpec, h: f64) -> Result<f64> {
    let grid = mark_image(spec, h, DEFAULT_SAMPLES_PER_CELL)?;
    let dist = distance_transform(&grid);
    Ok(dist.into_iter().fold(0.0, f64::max))
}
