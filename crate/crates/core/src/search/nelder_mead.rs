//! Box-constrained Nelder–Mead simplex search with an evaluation budget.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct NelderMead {
    pub bounds: Vec<(f64, f64)>,
    /// Initial simplex edge as a fraction of each box width.
    pub initial_step: f64,
    pub budget: usize,
    /// Stop once the spread of simplex values falls below this.
    pub f_tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

struct Counted<'a, F> {
    f: F,
    bounds: &'a [(f64, f64)],
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<'_, F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let inside = x.iter().zip(self.bounds).all(|(v, (lo, hi))| v >= lo && v <= hi);
        if !inside {
            return f64::INFINITY;
        }
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(a, b)| a + t * (b - a)).collect()
}

impl NelderMead {
    pub fn new(bounds: Vec<(f64, f64)>, budget: usize) -> Self {
        Self { bounds, initial_step: 0.15, budget, f_tol: 1e-10 }
    }

    /// Minimizes `f` from `start`. Infeasible points should return `+∞`.
    ///
    /// The best value is non-increasing over the run, so the result is never
    /// worse than the start point.
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, start: &[f64]) -> Result<Minimum> {
        let dim = start.len();
        if dim != self.bounds.len() {
            return Err(Error::InvalidParameter("start and bounds differ in length".into()));
        }
        let mut obj = Counted { f: &mut f, bounds: &self.bounds, evaluations: 0 };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        simplex.push((start.to_vec(), obj.eval(start)));
        for i in 0..dim {
            let (lo, hi) = self.bounds[i];
            let step = self.initial_step * (hi - lo);
            let mut x = start.to_vec();
            // step inward from whichever face is closer
            x[i] = if start[i] + step <= hi { start[i] + step } else { start[i] - step };
            let v = obj.eval(&x);
            simplex.push((x, v));
        }
        if simplex.iter().all(|(_, v)| v.is_infinite()) {
            return Err(Error::NoFeasiblePoint);
        }

        while obj.evaluations < self.budget {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[dim].1;
            if worst.is_finite() && (worst - best).abs() <= self.f_tol * (1.0 + best.abs()) {
                break;
            }
            let centroid: Vec<f64> = (0..dim)
                .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
                .collect();
            let worst_x = simplex[dim].0.clone();

            let reflected = lerp(&centroid, &worst_x, -1.0);
            let fr = obj.eval(&reflected);
            if fr < simplex[0].1 {
                let expanded = lerp(&centroid, &worst_x, -2.0);
                let fe = obj.eval(&expanded);
                simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (reflected, fr);
                continue;
            }
            let (contracted, fc) = if fr < simplex[dim].1 {
                let c = lerp(&centroid, &reflected, 0.5);
                let v = obj.eval(&c);
                (c, v)
            } else {
                let c = lerp(&centroid, &worst_x, 0.5);
                let v = obj.eval(&c);
                (c, v)
            };
            if fc < simplex[dim].1.min(fr) {
                simplex[dim] = (contracted, fc);
                continue;
            }
            // shrink toward the best vertex
            let best_x = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                if obj.evaluations >= self.budget {
                    break;
                }
                let x = lerp(&best_x, &vertex.0, 0.5);
                let v = obj.eval(&x);
                *vertex = (x, v);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Ok(Minimum { x, value, evaluations: obj.evaluations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let nm = NelderMead { f_tol: 1e-14, ..NelderMead::new(vec![(-2.0, 2.0), (-2.0, 2.0)], 2000) };
        let m = nm
            .minimize(|x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2), &[-1.0, 1.0])
            .unwrap();
        assert!((m.x[0] - 1.0).abs() < 1e-3 && (m.x[1] - 1.0).abs() < 1e-3, "{:?}", m);
        assert!(m.evaluations <= 2000);
    }

    #[test]
    fn respects_bounds_and_budget() {
        let nm = NelderMead::new(vec![(0.5, 3.0)], 40);
        let m = nm.minimize(|x| x[0], &[2.0]).unwrap();
        assert!(m.x[0] >= 0.5 && m.value <= 2.0);
        assert!(m.evaluations <= 41);
    }

    #[test]
    fn infeasible_start() {
        let nm = NelderMead::new(vec![(0.0, 1.0), (0.0, 1.0)], 50);
        assert!(matches!(nm.minimize(|_| f64::INFINITY, &[0.5, 0.5]), Err(Error::NoFeasiblePoint)));
    }
}
