//! Real-vector objective interface shared by every optimizer.

use std::sync::atomic::{AtomicU64, Ordering};

/// Per-dimension search box `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        assert_eq!(lower.len(), upper.len(), "bound vectors differ in length");
        assert!(
            lower.iter().zip(&upper).all(|(l, u)| l.is_finite() && u.is_finite() && l <= u),
            "bounds must be finite with lower <= upper"
        );
        Self { lower, upper }
    }

    /// The same `[lo, hi]` interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Self {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, d: usize) -> f64 {
        self.upper[d] - self.lower[d]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter().enumerate().all(|(d, &v)| v >= self.lower[d] && v <= self.upper[d])
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for (d, v) in x.iter_mut().enumerate() {
            *v = v.clamp(self.lower[d], self.upper[d]);
        }
    }

    /// The one-dimensional box of coordinate `d`.
    pub fn slice(&self, d: usize) -> Bounds {
        Bounds::new(vec![self.lower[d]], vec![self.upper[d]])
    }
}

/// A deterministic cost function over a box. Lower is better.
///
/// `evaluate` takes `&self` so one objective can serve concurrent runs.
pub trait Objective: Sync {
    fn bounds(&self) -> &Bounds;

    fn evaluate(&self, x: &[f64]) -> f64;

    fn dimension(&self) -> usize {
        self.bounds().dimension()
    }
}

impl<O: Objective + ?Sized> Objective for &O {
    fn bounds(&self) -> &Bounds {
        (**self).bounds()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

/// Adapts a closure into an [`Objective`].
pub struct FnObjective<F> {
    bounds: Bounds,
    f: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> FnObjective<F> {
    pub fn new(bounds: Bounds, f: F) -> Self {
        Self { bounds, f }
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> Objective for FnObjective<F> {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Wraps an objective and counts `evaluate` calls.
pub struct Counting<O> {
    inner: O,
    calls: AtomicU64,
}

impl<O: Objective> Counting<O> {
    pub fn new(inner: O) -> Self {
        Self { inner, calls: AtomicU64::new(0) }
    }

    pub fn count(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: Objective> Objective for Counting<O> {
    fn bounds(&self) -> &Bounds {
        self.inner.bounds()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(x)
    }
}

/// Cost of `x` plus the bookkeeping an optimizer needs around the objective:
/// an evaluation counter and the best point seen so far.
pub trait Subproblem {
    fn dimension(&self) -> usize;

    fn evaluate(&mut self, x: &[f64]) -> f64;

    /// Best point so far (the global best for PSO).
    fn best(&self) -> &[f64];

    fn best_cost(&self) -> f64;

    /// Replaces the incumbent if `cost` is strictly better.
    fn offer(&mut self, x: &[f64], cost: f64) -> bool;
}

/// The whole objective as a subproblem, tracking the best point seen.
pub struct FullProblem<'a, O: ?Sized> {
    objective: &'a O,
    evaluations: u64,
    best: Vec<f64>,
    best_cost: f64,
}

impl<'a, O: Objective + ?Sized> FullProblem<'a, O> {
    pub fn new(objective: &'a O) -> Self {
        Self {
            objective,
            evaluations: 0,
            best: vec![0.0; objective.dimension()],
            best_cost: f64::INFINITY,
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

impl<O: Objective + ?Sized> Subproblem for FullProblem<'_, O> {
    fn dimension(&self) -> usize {
        self.objective.dimension()
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        self.objective.evaluate(x)
    }

    fn best(&self) -> &[f64] {
        &self.best
    }

    fn best_cost(&self) -> f64 {
        self.best_cost
    }

    fn offer(&mut self, x: &[f64], cost: f64) -> bool {
        if cost < self.best_cost {
            self.best.copy_from_slice(x);
            self.best_cost = cost;
            true
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_wrapper_counts() {
        let obj = Counting::new(FnObjective::new(Bounds::uniform(2, -1.0, 1.0), |x: &[f64]| x[0] + x[1]));
        assert_eq!(obj.count(), 0);
        assert_eq!(obj.evaluate(&[1.0, 2.0]), 3.0);
        obj.evaluate(&[0.0, 0.0]);
        assert_eq!(obj.count(), 2);
    }

    #[test]
    fn full_problem_offer_is_strict() {
        let obj = FnObjective::new(Bounds::uniform(1, -1.0, 1.0), |x: &[f64]| x[0] * x[0]);
        let mut p = FullProblem::new(&obj);
        assert!(p.offer(&[0.5], 0.25));
        assert!(!p.offer(&[-0.5], 0.25));
        assert_eq!(p.best(), &[0.5]);
        assert!(p.offer(&[0.0], 0.0));
        assert_eq!(p.best_cost(), 0.0);
    }

    #[test]
    fn bounds_helpers() {
        let b = Bounds::new(vec![-1.0, 0.0], vec![1.0, 4.0]);
        assert_eq!(b.width(1), 4.0);
        assert!(b.contains(&[0.0, 4.0]));
        assert!(!b.contains(&[0.0, 4.1]));
        let mut x = [3.0, -2.0];
        b.clamp(&mut x);
        assert_eq!(x, [1.0, 0.0]);
        assert_eq!(b.slice(1), Bounds::new(vec![0.0], vec![4.0]));
    }
}
