//! Independent reference computations shared by the integration tests and
//! the acceptance runner.
#![allow(dead_code)]

use enthom::filtration::FilteredComplex;
use enthom::semimetric::{DistanceMatrix, ExtReal};
use rand::Rng;

/// Rank over GF(2) by plain Gaussian elimination on boolean rows.
pub fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Simplices present at scale `eps`, grouped by dimension.
pub fn simplices_at(fc: &FilteredComplex, eps: f64) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim = vec![Vec::new(); fc.max_dim() + 1];
    for s in fc.simplices().iter().filter(|s| s.birth <= eps) {
        by_dim[s.dim()].push(s.vertices.clone());
    }
    by_dim
}

/// Betti numbers of the complex at scale `eps` via rank-nullity.
pub fn betti_by_rank(fc: &FilteredComplex, eps: f64) -> Vec<usize> {
    let by_dim = simplices_at(fc, eps);
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k >= by_dim.len() || by_dim[k].is_empty() || by_dim[k - 1].is_empty() {
            return 0;
        }
        let rows = by_dim[k]
            .iter()
            .map(|s| {
                by_dim[k - 1]
                    .iter()
                    .map(|f| f.iter().all(|v| s.contains(v)))
                    .collect()
            })
            .collect();
        gf2_rank(rows)
    };
    (0..by_dim.len())
        .map(|k| by_dim[k].len() - boundary_rank(k) - boundary_rank(k + 1))
        .collect()
}

/// Connected components at scale `eps` by union-find over edges.
pub fn components_at(fc: &FilteredComplex, eps: f64) -> usize {
    let mut parent: Vec<usize> = (0..fc.n()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut count = fc.n();
    for s in fc.simplices().iter().filter(|s| s.dim() == 1 && s.birth <= eps) {
        let (a, b) = (find(&mut parent, s.vertices[0]), find(&mut parent, s.vertices[1]));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Distinct birth values, i.e. the scales at which the complex changes.
pub fn critical_values(fc: &FilteredComplex) -> Vec<f64> {
    let mut v: Vec<f64> = fc.simplices().iter().map(|s| s.birth).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Random semi-metric on `n` points. Values come from a small grid so that
/// ties are common; `p_inf` is the chance of an infinite entry.
pub fn random_semimetric(rng: &mut impl Rng, n: usize, p_inf: f64) -> DistanceMatrix {
    DistanceMatrix::from_pairs(n, |_, _| {
        if rng.random_bool(p_inf) {
            ExtReal::Infinite
        } else {
            ExtReal::Finite(rng.random_range(1..=8) as f64 * 0.5)
        }
    })
    .expect("positive symmetric entries")
}
