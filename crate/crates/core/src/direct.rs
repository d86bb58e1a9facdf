//! DIRECT (DIviding RECTangles) global maximization over a box.
//!
//! The search runs in the unit cube and maps every query back to the
//! caller's box. Rectangles are hyper-rectangles with side lengths
//! `3^-level`; a rectangle's size is half its diagonal. Each iteration
//! selects the potentially optimal rectangles (one candidate per size
//! class, the upper-right convex hull of `(size, value)` filtered by the
//! `ε` improvement condition) and trisects each along all of its longest
//! sides.
//!
//! Budgets are counted in objective evaluations. A division is only started
//! when all of its `2k` evaluations fit, so the tiling of the cube stays
//! exact and a run with a larger budget extends a run with a smaller one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::domain::BoxDomain;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectConfig {
    pub max_evals: usize,
    pub max_iters: usize,
    pub epsilon: f64,
}

impl Default for DirectConfig {
    fn default() -> Self {
        Self {
            max_evals: 2000,
            max_iters: 10_000,
            epsilon: 1e-4,
        }
    }
}

impl DirectConfig {
    pub fn with_max_evals(max_evals: usize) -> Self {
        Self {
            max_evals,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_evals == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParameter("DIRECT budgets must be >= 1".into()));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {}", self.epsilon)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectRect {
    /// Center in unit-cube coordinates.
    pub center: Vec<f64>,
    /// Side length on axis `i` is `3^-side_levels[i]`.
    pub side_levels: Vec<u32>,
    pub value: f64,
}

impl DirectRect {
    pub fn side(&self, i: usize) -> f64 {
        3f64.powi(-(self.side_levels[i] as i32))
    }

    /// Half of the diagonal.
    pub fn size(&self) -> f64 {
        size_of_levels(&self.side_levels)
    }

    pub fn volume(&self) -> f64 {
        (0..self.side_levels.len()).map(|i| self.side(i)).product()
    }

    fn min_level(&self) -> u32 {
        *self.side_levels.iter().min().expect("rectangles have at least one side")
    }

    /// Axes with the longest side.
    pub fn longest_axes(&self) -> Vec<usize> {
        let lo = self.min_level();
        (0..self.side_levels.len()).filter(|&i| self.side_levels[i] == lo).collect()
    }

    fn size_class(&self) -> Vec<u32> {
        let mut key = self.side_levels.clone();
        key.sort_unstable();
        key
    }
}

fn size_of_levels(levels: &[u32]) -> f64 {
    0.5 * levels.iter().map(|&l| 9f64.powi(-(l as i32))).sum::<f64>().sqrt()
}

/// Representative of one size class handed to [`potentially_optimal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub id: usize,
    pub size: f64,
    pub value: f64,
}

/// Selects the potentially optimal rectangles among class representatives
/// (maximization). A representative `j` is selected when some rate
/// `K > 0` makes `value_j + K·size_j` no smaller than every other
/// representative's bound and at least `best + ε|best|`.
pub fn potentially_optimal(cands: &[Candidate], best_value: f64, epsilon: f64) -> Vec<usize> {
    if cands.is_empty() {
        return Vec::new();
    }
    let mut sorted: Vec<Candidate> = cands.to_vec();
    sorted.sort_by(|a, b| a.size.total_cmp(&b.size).then(a.id.cmp(&b.id)));

    // Largest-size candidate among those with the maximal value.
    let top = sorted
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.value.total_cmp(&b.value).then(a.size.total_cmp(&b.size)))
        .map(|(i, _)| i)
        .expect("non-empty");

    let mut hull: Vec<Candidate> = Vec::new();
    for &p in &sorted[top..] {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.size - a.size) * (p.value - a.value) - (b.value - a.value) * (p.size - a.size);
            if cross > 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    let threshold = best_value + epsilon * best_value.abs();
    let mut out = Vec::new();
    for (h, j) in hull.iter().enumerate() {
        let mut k_low = if h == 0 {
            f64::NEG_INFINITY
        } else {
            let l = hull[h - 1];
            (l.value - j.value) / (j.size - l.size)
        };
        let k_high = if h + 1 == hull.len() {
            f64::INFINITY
        } else {
            let r = hull[h + 1];
            (j.value - r.value) / (r.size - j.size)
        };
        k_low = k_low.max((threshold - j.value) / j.size);
        if k_high > 0.0 && k_low <= k_high {
            out.push(j.id);
        }
    }
    out
}

/// Splits `rect` along all of its longest sides. Returns the shrunk center
/// rectangle first, then the new rectangles in evaluation order. `f` takes
/// unit-cube points and is called exactly `2k` times.
pub fn trisect<F>(rect: &DirectRect, f: &mut F) -> Result<Vec<DirectRect>>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let axes = rect.longest_axes();
    let offset = rect.side(axes[0]) / 3.0;

    let mut samples = Vec::with_capacity(axes.len());
    for &i in &axes {
        let mut plus = rect.center.clone();
        plus[i] += offset;
        let mut minus = rect.center.clone();
        minus[i] -= offset;
        let vp = f(&plus)?;
        let vm = f(&minus)?;
        samples.push((i, (plus, vp), (minus, vm)));
    }

    // Axis with the best sample keeps the largest children.
    samples.sort_by(|a, b| {
        let wa = a.1 .1.max(a.2 .1);
        let wb = b.1 .1.max(b.2 .1);
        wb.total_cmp(&wa).then(a.0.cmp(&b.0))
    });

    let mut levels = rect.side_levels.clone();
    let mut children = Vec::with_capacity(2 * axes.len() + 1);
    children.push(DirectRect {
        center: rect.center.clone(),
        side_levels: Vec::new(),
        value: rect.value,
    });
    for (i, (pc, pv), (mc, mv)) in samples {
        levels[i] += 1;
        children.push(DirectRect {
            center: pc,
            side_levels: levels.clone(),
            value: pv,
        });
        children.push(DirectRect {
            center: mc,
            side_levels: levels.clone(),
            value: mv,
        });
    }
    children[0].side_levels = levels;
    Ok(children)
}

/// Class ordering: best value first, then earliest rectangle.
#[derive(Debug, Clone, Copy)]
struct ClassEntry {
    value: f64,
    id: usize,
}

impl PartialEq for ClassEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ClassEntry {}
impl PartialOrd for ClassEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ClassEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.value.total_cmp(&self.value).then(self.id.cmp(&other.id))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectOutcome {
    pub argmax: Vec<f64>,
    pub max_value: f64,
    pub evals_used: usize,
    pub iterations: usize,
}

/// Incremental DIRECT state over a box. [`maximize`] drives it to
/// completion; tests and diagnostics can step it one iteration at a time.
pub struct DirectSearch<'a, F> {
    domain: &'a BoxDomain,
    config: DirectConfig,
    objective: F,
    rects: Vec<DirectRect>,
    classes: BTreeMap<Vec<u32>, BTreeSet<ClassEntry>>,
    best: usize,
    evals: usize,
    iterations: usize,
    finished: bool,
}

impl<'a, F> DirectSearch<'a, F>
where
    F: FnMut(&[f64]) -> f64,
{
    /// Evaluates the center of the box.
    pub fn new(objective: F, domain: &'a BoxDomain, config: DirectConfig) -> Result<Self> {
        config.validate()?;
        let dim = domain.dim();
        let mut search = Self {
            domain,
            config,
            objective,
            rects: Vec::new(),
            classes: BTreeMap::new(),
            best: 0,
            evals: 0,
            iterations: 0,
            finished: false,
        };
        let center = vec![0.5; dim];
        let value = search.eval_unit(&center)?;
        search.insert(DirectRect {
            center,
            side_levels: vec![0; dim],
            value,
        });
        Ok(search)
    }

    fn eval_unit(&mut self, u: &[f64]) -> Result<f64> {
        let x = self.domain.from_unit(u);
        let v = (self.objective)(&x);
        self.evals += 1;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective { point: x, value: v })
        }
    }

    fn insert(&mut self, rect: DirectRect) {
        let id = self.rects.len();
        self.classes
            .entry(rect.size_class())
            .or_default()
            .insert(ClassEntry { value: rect.value, id });
        if self.rects.is_empty() || rect.value > self.rects[self.best].value {
            self.best = id;
        }
        self.rects.push(rect);
    }

    fn candidates(&self) -> Vec<Candidate> {
        self.classes
            .iter()
            .filter_map(|(key, set)| {
                set.first().map(|e| Candidate {
                    id: e.id,
                    size: size_of_levels(key),
                    value: e.value,
                })
            })
            .collect()
    }

    fn divide(&mut self, id: usize) -> Result<()> {
        let parent = self.rects[id].clone();
        let class = parent.size_class();
        if let Some(set) = self.classes.get_mut(&class) {
            set.remove(&ClassEntry { value: parent.value, id });
            if set.is_empty() {
                self.classes.remove(&class);
            }
        }

        let mut children = {
            let mut eval = |u: &[f64]| self.eval_unit(u);
            trisect(&parent, &mut eval)?
        };
        let shrunk = children.remove(0);
        self.classes
            .entry(shrunk.size_class())
            .or_default()
            .insert(ClassEntry { value: shrunk.value, id });
        self.rects[id] = shrunk;
        for child in children {
            self.insert(child);
        }
        Ok(())
    }

    /// Runs one iteration. Returns `false` once a budget is exhausted.
    pub fn iterate(&mut self) -> Result<bool> {
        if self.finished || self.iterations >= self.config.max_iters {
            self.finished = true;
            return Ok(false);
        }
        let best_value = self.rects[self.best].value;
        let mut selected = potentially_optimal(&self.candidates(), best_value, self.config.epsilon);
        selected.sort_by(|&a, &b| {
            self.rects[b]
                .size()
                .total_cmp(&self.rects[a].size())
                .then(a.cmp(&b))
        });

        let mut divided = false;
        for id in selected {
            let cost = 2 * self.rects[id].longest_axes().len();
            if self.evals + cost > self.config.max_evals {
                self.finished = true;
                break;
            }
            self.divide(id)?;
            divided = true;
        }
        if divided {
            self.iterations += 1;
        } else {
            self.finished = true;
        }
        Ok(divided && !self.finished)
    }

    pub fn rects(&self) -> &[DirectRect] {
        &self.rects
    }

    pub fn evals_used(&self) -> usize {
        self.evals
    }

    pub fn outcome(&self) -> DirectOutcome {
        let best = &self.rects[self.best];
        DirectOutcome {
            argmax: self.domain.from_unit(&best.center),
            max_value: best.value,
            evals_used: self.evals,
            iterations: self.iterations,
        }
    }
}

/// Maximizes `objective` over `domain`.
pub fn maximize<F>(objective: F, domain: &BoxDomain, config: DirectConfig) -> Result<DirectOutcome>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut search = DirectSearch::new(objective, domain, config)?;
    while search.iterate()? {}
    Ok(search.outcome())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(center: Vec<f64>, levels: Vec<u32>) -> DirectRect {
        DirectRect {
            center,
            side_levels: levels,
            value: 0.0,
        }
    }

    #[test]
    fn constant_objective_single_eval() {
        let b = BoxDomain::cube(3, -2.0, 5.0).unwrap();
        let out = maximize(|_| 4.25, &b, DirectConfig::with_max_evals(1)).unwrap();
        assert_eq!(out.max_value, 4.25);
        assert_eq!(out.evals_used, 1);
        assert_eq!(out.argmax, vec![1.5; 3]);

        let out = maximize(|_| 4.25, &b, DirectConfig::with_max_evals(300)).unwrap();
        assert_eq!(out.max_value, 4.25);
        assert!(out.evals_used <= 300);
    }

    #[test]
    fn one_dimensional_bowl() {
        let b = BoxDomain::unit(1);
        let out = maximize(|x| -(x[0] - 0.5).powi(2), &b, DirectConfig::with_max_evals(500)).unwrap();
        assert!((out.argmax[0] - 0.5).abs() < 1e-3);
    }

    #[test]
    fn off_center_bowl() {
        let b = BoxDomain::cube(2, -1.0, 1.0).unwrap();
        let out = maximize(
            |x| -(x[0] - 0.31).powi(2) - (x[1] + 0.62).powi(2),
            &b,
            DirectConfig::with_max_evals(1000),
        )
        .unwrap();
        assert!((out.argmax[0] - 0.31).abs() < 1e-2);
        assert!((out.argmax[1] + 0.62).abs() < 1e-2);
    }

    #[test]
    fn rejects_non_finite() {
        let b = BoxDomain::unit(1);
        let err = maximize(|x| if x[0] > 0.6 { f64::NAN } else { 0.0 }, &b, DirectConfig::default()).unwrap_err();
        match err {
            Error::NonFiniteObjective { point, .. } => assert!(point[0] > 0.6),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn trisect_unit_square() {
        let parent = DirectRect {
            center: vec![0.5, 0.5],
            side_levels: vec![0, 0],
            value: 0.0,
        };
        let mut calls = 0;
        let mut f = |x: &[f64]| {
            calls += 1;
            Ok(-(x[0] - 0.9).powi(2) - (x[1] - 0.5).powi(2))
        };
        let kids = trisect(&parent, &mut f).unwrap();
        assert_eq!(calls, 4);
        assert_eq!(kids.len(), 5);
        assert_eq!(kids[0].center, vec![0.5, 0.5]);
        assert_eq!(kids[0].side_levels, vec![1, 1]);
        // Axis 0 holds the best sample so its children stay wide along axis 1.
        assert_eq!(kids[1].side_levels, vec![1, 0]);
        assert_eq!(kids[2].side_levels, vec![1, 0]);
        assert_eq!(kids[3].side_levels, vec![1, 1]);
        assert_eq!(kids[4].side_levels, vec![1, 1]);
        for k in &kids[1..] {
            let off: Vec<f64> = k.center.iter().map(|c| (c - 0.5).abs()).collect();
            let moved: Vec<&f64> = off.iter().filter(|o| **o > 1e-12).collect();
            assert_eq!(moved.len(), 1);
            assert!((moved[0] - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn trisect_one_dimensional_level() {
        let parent = rect(vec![0.5], vec![2]);
        let mut f = |_: &[f64]| Ok(1.0);
        let kids = trisect(&parent, &mut f).unwrap();
        assert_eq!(kids.len(), 3);
        let h = 3f64.powi(-3);
        let mut centers: Vec<f64> = kids.iter().map(|k| k.center[0]).collect();
        centers.sort_by(f64::total_cmp);
        assert!((centers[0] - (0.5 - h)).abs() < 1e-15);
        assert_eq!(centers[1], 0.5);
        assert!((centers[2] - (0.5 + h)).abs() < 1e-15);
        assert!(kids.iter().all(|k| k.side_levels == vec![3]));
    }

    #[test]
    fn two_trisections_tile_the_interval() {
        let b = BoxDomain::unit(1);
        let mut s = DirectSearch::new(|x: &[f64]| x[0], &b, DirectConfig::default()).unwrap();
        s.divide(0).unwrap();
        let best = s.best;
        s.divide(best).unwrap();
        assert_eq!(s.rects().len(), 5);
        let total: f64 = s.rects().iter().map(|r| r.side(0)).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn po_single_and_dominance() {
        let c = [Candidate { id: 7, size: 0.5, value: 1.0 }];
        assert_eq!(potentially_optimal(&c, 1.0, 1e-4), vec![7]);

        let c = [
            Candidate { id: 0, size: 0.2, value: 1.0 },
            Candidate { id: 1, size: 0.6, value: 2.0 },
        ];
        assert_eq!(potentially_optimal(&c, 2.0, 1e-4), vec![1]);
    }
}
