//! Independent reference implementations shared by the integration tests
//! and the acceptance runner.

#![allow(dead_code)]

use dropout_bo::direct::Candidate;

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

pub fn se(x: &[f64], y: &[f64], ell: f64, sf2: f64) -> f64 {
    let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum();
    sf2 * (-d2 / (2.0 * ell * ell)).exp()
}

/// Posterior mean and variance at `x` from two dense solves against
/// `K + noise·I`.
pub fn dense_posterior(inputs: &[Vec<f64>], y: &[f64], ell: f64, sf2: f64, noise: f64, x: &[f64]) -> (f64, f64) {
    let n = inputs.len();
    let gram = |extra: f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| se(&inputs[i], &inputs[j], ell, sf2) + if i == j { extra } else { 0.0 }).collect())
            .collect()
    };
    let k: Vec<f64> = inputs.iter().map(|p| se(p, x, ell, sf2)).collect();
    let alpha = dense_solve(gram(noise), y.to_vec());
    let v = dense_solve(gram(noise), k.clone());
    let mean = k.iter().zip(&alpha).map(|(a, b)| a * b).sum();
    let var = sf2 - k.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
    (mean, var)
}

/// Potentially optimal candidates by checking every pairwise constraint on
/// the rate `K`.
pub fn brute_force_potentially_optimal(cands: &[Candidate], best: f64, eps: f64) -> Vec<usize> {
    let mut out = Vec::new();
    for j in cands {
        let mut lo = (best + eps * best.abs() - j.value) / j.size;
        let mut hi = f64::INFINITY;
        let mut ok = true;
        for i in cands {
            if i.id == j.id {
                continue;
            }
            if i.size < j.size {
                lo = lo.max((i.value - j.value) / (j.size - i.size));
            } else if i.size > j.size {
                hi = hi.min((j.value - i.value) / (i.size - j.size));
            } else if i.value > j.value {
                ok = false;
            }
        }
        if ok && hi > 0.0 && lo <= hi {
            out.push(j.id);
        }
    }
    out.sort_unstable();
    out
}

/// Maximum of `f` over an `n × n` grid spanning `[lo, hi]²` inclusively.
pub fn grid_max_2d(f: impl Fn(&[f64]) -> f64, lo: f64, hi: f64, n: usize) -> (Vec<f64>, f64) {
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (vec![lo, lo], f64::NEG_INFINITY);
    for a in 0..n {
        for b in 0..n {
            let x = [lo + a as f64 * step, lo + b as f64 * step];
            let v = f(&x);
            if v > best.1 {
                best = (x.to_vec(), v);
            }
        }
    }
    best
}

/// The exploration schedule written out term by term.
pub fn beta_closed_form(t: f64, d: f64, delta: f64, a: f64, b: f64, r: f64) -> f64 {
    let pi_t = std::f64::consts::PI.powi(2) * t * t / 6.0;
    let inner = d * t * t * b * r * (4.0 * d * a / delta).ln().sqrt();
    2.0 * (4.0 * pi_t / delta).ln() + 2.0 * d * inner.ln()
}

/// Separate trace of the boosted stump cascade with explicit weight
/// bookkeeping.
pub fn cascade_reference(rows: &[Vec<f64>], labels: &[f64], thresholds: &[f64]) -> f64 {
    let n = rows.len();
    let mut w = vec![1.0 / n as f64; n];
    let mut score = vec![0.0; n];
    for (j, &th) in thresholds.iter().enumerate() {
        let h_plus: Vec<f64> = rows.iter().map(|r| if r[j] >= th { 1.0 } else { -1.0 }).collect();
        let err_plus: f64 = (0..n).filter(|&i| h_plus[i] != labels[i]).map(|i| w[i]).sum();
        let err_minus: f64 = (0..n).filter(|&i| -h_plus[i] != labels[i]).map(|i| w[i]).sum();
        let (s, e) = if err_plus <= err_minus { (1.0, err_plus) } else { (-1.0, err_minus) };
        let e = e.clamp(1e-10, 1.0 - 1e-10);
        let alpha = 0.5 * ((1.0 - e) / e).ln();
        for i in 0..n {
            score[i] += alpha * s * h_plus[i];
            w[i] *= (-alpha * labels[i] * s * h_plus[i]).exp();
        }
        let z: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= z);
    }
    let hits = (0..n).filter(|&i| (score[i] >= 0.0) == (labels[i] > 0.0)).count();
    hits as f64 / n as f64
}
