//! Small derivative-free simplex minimizer used by the general quadruplet
//! search. Standard Nelder-Mead with reflection, expansion, contraction
//! and shrink; the best vertex is monotone, so a run never returns a
//! value worse than its starting point.

/// Outcome of a simplex run.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iters: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimize `f` starting from `x0`, with an axis-aligned initial simplex
/// of edge `step`. Terminates when the function spread over the simplex
/// drops below `tol` or after `max_iters` iterations.
pub fn nelder_mead<F>(f: F, x0: &[f64], step: f64, max_iters: usize, tol: f64) -> SimplexResult
where
    F: Fn(&[f64]) -> f64,
{
    let dim = x0.len();
    assert!(dim > 0 && step > 0.0);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iters = 0;
    let mut converged = false;
    while iters < max_iters {
        iters += 1;

        // Order vertices by function value.
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if (values[worst] - values[best]).abs() <= tol {
            converged = true;
            break;
        }

        // Centroid of all vertices except the worst.
        let mut centroid = vec![0.0; dim];
        for (i, v) in simplex.iter().enumerate() {
            if i == worst {
                continue;
            }
            for (c, &x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let blend = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(&c, &w)| c + t * (c - w))
                .collect()
        };

        let reflected = blend(REFLECT);
        let f_reflected = f(&reflected);

        if f_reflected < values[best] {
            let expanded = blend(EXPAND);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let (candidate, f_candidate) = if f_reflected < values[worst] {
                let outside = blend(CONTRACT);
                let fo = f(&outside);
                (outside, fo)
            } else {
                let inside = blend(-CONTRACT);
                let fi = f(&inside);
                (inside, fi)
            };
            if f_candidate < values[worst].min(f_reflected) {
                simplex[worst] = candidate;
                values[worst] = f_candidate;
            } else {
                // Shrink toward the best vertex.
                let best_vertex = simplex[best].clone();
                for (i, v) in simplex.iter_mut().enumerate() {
                    if i == best {
                        continue;
                    }
                    for (x, &b) in v.iter_mut().zip(&best_vertex) {
                        *x = b + SHRINK * (*x - b);
                    }
                    values[i] = f(v);
                }
            }
        }
    }

    let (best, &fx) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    SimplexResult {
        x: simplex[best].clone(),
        fx,
        iters,
        converged,
    }
}
