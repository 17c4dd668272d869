//! Globally adaptive dyadic cubature on the unit cube with tensor
//! Gauss–Legendre rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::QuadratureConfig;

pub(crate) const ORDER: usize = 16;

/// Upper bound on integrand evaluations per call.
const EVAL_BUDGET: u64 = 6_000_000;

fn gauss_legendre() -> &'static ([f64; ORDER], [f64; ORDER]) {
    static RULE: OnceLock<([f64; ORDER], [f64; ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut x = [0.0; ORDER];
        let mut w = [0.0; ORDER];
        let n = ORDER as f64;
        for i in 0..ORDER {
            let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=ORDER {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                let dt = p1 / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            // Nodes mapped to [0, 1].
            x[i] = (1.0 - t) / 2.0;
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
        (x, w)
    })
}

#[derive(Clone, Debug)]
struct Cell {
    origin: Vec<f64>,
    width: f64,
    depth: u32,
}

impl Cell {
    fn children(&self) -> Vec<Cell> {
        let k = self.origin.len();
        let h = self.width / 2.0;
        (0..1usize << k)
            .map(|mask| Cell {
                origin: (0..k).map(|a| self.origin[a] + if mask >> a & 1 == 1 { h } else { 0.0 }).collect(),
                width: h,
                depth: self.depth + 1,
            })
            .collect()
    }
}

fn rule_on<F: Fn(&[f64]) -> f64>(cell: &Cell, offset: &[f64], f: &F) -> f64 {
    let (x, w) = gauss_legendre();
    let k = cell.origin.len();
    let total = ORDER.pow(k as u32);
    let mut point = vec![0.0; k];
    let mut acc = 0.0;
    for idx in 0..total {
        let mut rest = idx;
        let mut weight = 1.0;
        for a in 0..k {
            let i = rest % ORDER;
            rest /= ORDER;
            point[a] = offset[a] + cell.origin[a] + cell.width * x[i];
            weight *= w[i];
        }
        acc += weight * f(&point);
    }
    acc * cell.width.powi(k as i32)
}

struct Leaf {
    cell: Cell,
    children: Vec<f64>,
    err: f64,
}

#[derive(PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// `(value, error bound, evaluations)` for `∫_{[0,1]^k} f`. The integrand
/// is sampled on a grid shifted by a seeded offset, so it must be 1-periodic
/// in every coordinate.
pub(crate) fn integrate<F>(k: usize, cfg: &QuadratureConfig, f: F) -> (f64, f64, u64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let offset: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
    let per_axis = (cfg.grid_points_per_axis / ORDER).max(1);
    let cell_evals = (ORDER as u64).pow(k as u32);
    let mut evals = 0u64;

    let make_leaves = |cells: Vec<Cell>, coarse: Vec<f64>, evals: &mut u64| -> Vec<Leaf> {
        let grand: Vec<Cell> = cells.iter().flat_map(|c| c.children()).collect();
        let values: Vec<f64> = grand.par_iter().map(|g| rule_on(g, &offset, &f)).collect();
        *evals += grand.len() as u64 * cell_evals;
        let m = 1usize << k;
        cells
            .into_iter()
            .zip(coarse)
            .enumerate()
            .map(|(i, (cell, coarse))| {
                let children = values[i * m..(i + 1) * m].to_vec();
                let fine: f64 = children.iter().sum();
                let err = (coarse - fine).abs();
                Leaf { cell, children, err: if err.is_finite() { err } else { f64::INFINITY } }
            })
            .collect()
    };

    let initial: Vec<Cell> = (0..per_axis.pow(k as u32))
        .map(|idx| {
            let mut rest = idx;
            let origin = (0..k)
                .map(|_| {
                    let i = rest % per_axis;
                    rest /= per_axis;
                    i as f64 / per_axis as f64
                })
                .collect();
            Cell { origin, width: 1.0 / per_axis as f64, depth: 0 }
        })
        .collect();
    let coarse: Vec<f64> = initial.par_iter().map(|c| rule_on(c, &offset, &f)).collect();
    evals += initial.len() as u64 * cell_evals;

    let mut leaves: Vec<Option<Leaf>> = make_leaves(initial, coarse, &mut evals).into_iter().map(Some).collect();
    let mut heap: BinaryHeap<Key> = leaves.iter().enumerate().map(|(i, l)| Key(l.as_ref().unwrap().err, i)).collect();
    let mut total_err: f64 = leaves.iter().map(|l| l.as_ref().unwrap().err).sum();
    let split_cost = cell_evals << (2 * k);

    while 2.0 * total_err > cfg.target_abs_error && evals + split_cost <= EVAL_BUDGET {
        let Some(Key(_, i)) = heap.pop() else { break };
        let leaf = leaves[i].as_ref().unwrap();
        if leaf.cell.depth >= cfg.max_subdivision_depth {
            continue;
        }
        let leaf = leaves[i].take().unwrap();
        total_err -= leaf.err;
        let new = make_leaves(leaf.cell.children(), leaf.children, &mut evals);
        for l in new {
            total_err += l.err;
            heap.push(Key(l.err, leaves.len()));
            leaves.push(Some(l));
        }
        // Guard against drift from repeated subtraction.
        if heap.len() % 256 == 0 {
            total_err = leaves.iter().flatten().map(|l| l.err).sum();
        }
    }
    let live: Vec<&Leaf> = leaves.iter().flatten().collect();
    let value: f64 = live.iter().map(|l| l.children.iter().sum::<f64>()).sum();
    let err: f64 = live.iter().map(|l| l.err).sum();
    (value, 2.0 * err, evals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig { target_abs_error: 1e-10, ..QuadratureConfig::default() }
    }

    #[test]
    fn rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre();
        let s: f64 = w.iter().sum();
        assert!((s - 1.0).abs() < 1e-14);
        let m: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(31)).sum();
        assert!((m - 1.0 / 32.0).abs() < 1e-14);
    }

    #[test]
    fn periodic_log_singularity() {
        // ∫ ln|e(t) - 1| dt = 0
        let (v, err, _) = integrate(1, &cfg(), |t| {
            let z = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t[0]);
            (z - 1.0).norm().ln()
        });
        assert!(v.abs() < 1e-8, "{v} {err}");
    }

    #[test]
    fn two_dimensional_smooth() {
        let (v, _, _) = integrate(2, &cfg(), |t| (2.0 * std::f64::consts::PI * (t[0] + t[1])).cos().powi(2));
        assert!((v - 0.5).abs() < 1e-12);
    }
}
