//! Eta-nets for closed Euclidean balls with nearest-point quantization.
//!
//! The construction is an axis-aligned grid fine enough that every point of
//! the ball lies strictly within `eta` of a grid point, clamped back into the
//! ball. Clamping is the metric projection onto a convex set containing the
//! query, so it never increases distances and the strict covering guarantee
//! survives. The grid may exceed the greedy-packing size bound
//! `(2 theta / eta + 1)^d` by up to a `d^(d/2)` factor; callers that account
//! colors use the actual size.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::util::norm;

/// Hard cap on net size.
pub const NET_SIZE_CAP: usize = 10_000_000;

/// A finite subset of the closed ball `B_d(theta)` with covering radius
/// strictly below `eta`, plus a cell-hashed index for nearest-point queries.
#[derive(Debug, Clone)]
pub struct Net {
    dim: usize,
    theta: f64,
    eta: f64,
    spacing: f64,
    points: Vec<f64>, // flat, len = count * dim
    cells: HashMap<Vec<i64>, Vec<u32>>,
}

/// Builds the grid net for `B_d(theta)`.
///
/// Grid spacing is `2 eta / (sqrt(d) (1 + 1e-9))`, so the half-diagonal of a
/// grid cell is strictly below `eta`; the grid is intersected with the ball
/// of radius `theta + s sqrt(d)/2` and clamped to `B_d(theta)`.
pub fn build_grid_net(d: usize, theta: f64, eta: f64) -> Result<Net> {
    if d == 0 {
        return Err(Error::input("net dimension must be >= 1"));
    }
    if !(theta > 0.0) || !eta.is_finite() {
        return Err(Error::input("require theta > 0 and finite eta"));
    }
    if !(eta > 0.0 && eta <= 2.0 * theta) {
        return Err(Error::input(format!(
            "require 0 < eta <= 2 theta, got eta={eta}, theta={theta}"
        )));
    }
    let sqrt_d = (d as f64).sqrt();
    let spacing = 2.0 * eta / (sqrt_d * (1.0 + 1e-9));
    let shell = theta + spacing * sqrt_d / 2.0;
    let k_max = (shell / spacing).floor() as i64;

    let side = 2 * k_max + 1;
    let projected = (side as f64).powi(d as i32);
    if projected > 3.0e8 {
        return Err(Error::cap(format!(
            "projected grid size {projected:.3e} exceeds the net cap {NET_SIZE_CAP}"
        )));
    }

    let mut points: Vec<f64> = Vec::new();
    let mut count = 0usize;
    let mut coord = vec![0i64; d];
    let shell2 = shell * shell;
    enumerate_grid(
        d,
        0,
        0.0,
        shell2,
        spacing,
        k_max,
        &mut coord,
        &mut |c: &[i64]| {
            if count >= NET_SIZE_CAP {
                return Err(Error::cap(format!(
                    "net size exceeds the cap {NET_SIZE_CAP}"
                )));
            }
            let mut p: Vec<f64> = c.iter().map(|&k| k as f64 * spacing).collect();
            let nrm = norm(&p);
            if nrm > theta {
                let s = theta / nrm;
                for x in p.iter_mut() {
                    *x *= s;
                }
            }
            points.extend_from_slice(&p);
            count += 1;
            Ok(())
        },
    )?;

    // Clamping can map collinear shell points together for d >= 4; keep the
    // first occurrence of each point.
    let mut seen: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut dedup: Vec<f64> = Vec::with_capacity(points.len());
    let mut kept = 0u32;
    for i in 0..count {
        let p = &points[i * d..(i + 1) * d];
        let key: Vec<u64> = p.iter().map(|x| x.to_bits()).collect();
        if seen.insert(key, kept).is_none() {
            dedup.extend_from_slice(p);
            kept += 1;
        }
    }

    let mut net = Net {
        dim: d,
        theta,
        eta,
        spacing,
        points: dedup,
        cells: HashMap::new(),
    };
    for i in 0..net.len() {
        let cell = net.cell_of(net.point(i));
        net.cells.entry(cell).or_default().push(i as u32);
    }
    Ok(net)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_grid(
    d: usize,
    axis: usize,
    partial_norm2: f64,
    shell2: f64,
    spacing: f64,
    k_max: i64,
    coord: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if axis == d {
        return emit(coord);
    }
    for k in -k_max..=k_max {
        let x = k as f64 * spacing;
        let n2 = partial_norm2 + x * x;
        if n2 > shell2 {
            continue;
        }
        coord[axis] = k;
        enumerate_grid(d, axis + 1, n2, shell2, spacing, k_max, coord, emit)?;
    }
    Ok(())
}

impl Net {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    /// The greedy-packing existence bound `(2 theta / eta + 1)^d`, for
    /// side-by-side reporting with the actual size.
    pub fn packing_bound(&self) -> f64 {
        (2.0 * self.theta / self.eta + 1.0).powi(self.dim as i32)
    }

    fn cell_of(&self, x: &[f64]) -> Vec<i64> {
        x.iter().map(|&v| (v / self.spacing).floor() as i64).collect()
    }

    /// Index and distance of the nearest net point; ties broken by lowest
    /// index. Requires `||x|| <= theta` up to a 1e-9 slack.
    pub fn nearest(&self, x: &[f64]) -> Result<(usize, f64)> {
        if x.len() != self.dim {
            return Err(Error::input(format!(
                "query dimension {} does not match net dimension {}",
                x.len(),
                self.dim
            )));
        }
        let nx = norm(x);
        if nx > self.theta * (1.0 + 1e-9) + 1e-9 {
            return Err(Error::input(format!(
                "query norm {nx} outside the ball of radius {}",
                self.theta
            )));
        }
        let center = self.cell_of(x);
        let mut best: Option<(f64, u32)> = None;
        let max_ring = 2 * ((self.theta / self.spacing).ceil() as i64) + 2;
        let mut offset = vec![0i64; self.dim];
        for ring in 0..=max_ring {
            if let Some((bd, _)) = best {
                if (ring - 1) as f64 * self.spacing > bd {
                    break;
                }
            }
            self.scan_ring(&center, ring, 0, false, &mut offset, x, &mut best);
        }
        let (bd, bi) = best.ok_or_else(|| Error::verification("empty net"))?;
        Ok((bi as usize, bd))
    }

    /// Visits every cell whose Chebyshev distance from `center` is exactly
    /// `ring` and updates the best (distance, index) pair.
    #[allow(clippy::too_many_arguments)]
    fn scan_ring(
        &self,
        center: &[i64],
        ring: i64,
        axis: usize,
        saturated: bool,
        offset: &mut Vec<i64>,
        x: &[f64],
        best: &mut Option<(f64, u32)>,
    ) {
        if axis == self.dim {
            if !saturated && ring != 0 {
                return;
            }
            let cell: Vec<i64> = center.iter().zip(offset.iter()).map(|(c, o)| c + o).collect();
            if let Some(bucket) = self.cells.get(&cell) {
                for &i in bucket {
                    let p = self.point(i as usize);
                    let d2: f64 = p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
                    let d = d2.sqrt();
                    let better = match *best {
                        None => true,
                        Some((bd, bi)) => d < bd || (d == bd && i < bi),
                    };
                    if better {
                        *best = Some((d, i));
                    }
                }
            }
            return;
        }
        for o in -ring..=ring {
            offset[axis] = o;
            self.scan_ring(center, ring, axis + 1, saturated || o.abs() == ring, offset, x, best);
        }
    }

    /// Debug/audit dump: `net <d> <theta> <eta> <count>` then points.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "net {} {} {} {}", self.dim, self.theta, self.eta, self.len()).unwrap();
        for i in 0..self.len() {
            let row: Vec<String> = self.point(i).iter().map(|x| format!("{x}")).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }
}
