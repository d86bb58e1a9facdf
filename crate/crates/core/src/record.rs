//! Per-run trace: every evaluated point with its value and the running best.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    /// True when `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Maximize => "maximize",
            Sense::Minimize => "minimize",
        }
    }
}

/// Trace of one optimization run.
///
/// The first `n_init` entries are the initial design; entry `n_init + t - 1`
/// is the query of iteration `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub n_init: usize,
    pub sense: Sense,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub best_so_far: Vec<f64>,
}

impl RunRecord {
    pub fn new(seed: u64, n_init: usize, sense: Sense) -> Self {
        Self {
            seed,
            n_init,
            sense,
            points: Vec::new(),
            values: Vec::new(),
            best_so_far: Vec::new(),
        }
    }

    pub fn push(&mut self, x: Vec<f64>, y: f64) {
        let best = match self.best_so_far.last() {
            Some(&b) if !self.sense.better(y, b) => b,
            _ => y,
        };
        self.points.push(x);
        self.values.push(y);
        self.best_so_far.push(best);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of post-initialization iterations.
    pub fn iterations(&self) -> usize {
        self.len().saturating_sub(self.n_init)
    }

    /// Iteration label of entry `i`: `-n_init..=-1` for the initial design,
    /// then `1, 2, ...`.
    pub fn iteration_label(&self, i: usize) -> i64 {
        if i < self.n_init {
            i as i64 - self.n_init as i64
        } else {
            (i - self.n_init) as i64 + 1
        }
    }

    /// Best-so-far after each post-initialization iteration.
    pub fn iteration_best(&self) -> &[f64] {
        &self.best_so_far[self.n_init.min(self.len())..]
    }

    pub fn final_best(&self) -> Option<f64> {
        self.best_so_far.last().copied()
    }

    /// Re-express the record for an objective of the other sense by negating
    /// every value. Used at the harness boundary where minimization problems
    /// are run as maximization of `-f`.
    pub fn negated(&self) -> Self {
        let sense = match self.sense {
            Sense::Maximize => Sense::Minimize,
            Sense::Minimize => Sense::Maximize,
        };
        Self {
            seed: self.seed,
            n_init: self.n_init,
            sense,
            points: self.points.clone(),
            values: self.values.iter().map(|v| -v).collect(),
            best_so_far: self.best_so_far.iter().map(|v| -v).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn best_so_far_tracks_sense() {
        let mut r = RunRecord::new(0, 1, Sense::Minimize);
        for y in [3.0, 4.0, 1.0, 2.0] {
            r.push(vec![y], y);
        }
        assert_eq!(r.best_so_far, vec![3.0, 3.0, 1.0, 1.0]);
        assert_eq!(r.iteration_best(), &[3.0, 1.0, 1.0]);
        assert_eq!(r.iteration_label(0), -1);
        assert_eq!(r.iteration_label(1), 1);

        let m = r.negated();
        assert_eq!(m.sense, Sense::Maximize);
        assert_eq!(m.best_so_far, vec![-3.0, -3.0, -1.0, -1.0]);
    }
}
