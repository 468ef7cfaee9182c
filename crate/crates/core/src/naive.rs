//! Brute-force walk counting by dynamic programming over the grid.
//!
//! Every other enumeration path in the crate is checked against this one.

use rug::Integer;

use crate::models::ModelId;

/// Endpoint projection for [`count_axis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Walks ending on the x-axis (`j = 0`).
    XAxis,
    /// Walks ending on the y-axis (`i = 0`).
    YAxis,
    /// Walks ending at the origin.
    Origin,
}

/// Full table `s[n][i][j]` of quarter-plane walk counts.
#[derive(Clone, Debug)]
pub struct WalkTable {
    pub counts: Vec<Vec<Vec<Integer>>>,
}

impl WalkTable {
    pub fn get(&self, n: usize, i: usize, j: usize) -> &Integer {
        &self.counts[n][i][j]
    }
}

/// One DP layer; cells outside `[0, n]²` are zero after `n` steps.
fn step_layer(steps: &[(i32, i32)], prev: &[Vec<Integer>], n: usize) -> Vec<Vec<Integer>> {
    let size = prev.len();
    let mut next = vec![vec![Integer::new(); size]; size];
    let reach = (n - 1).min(size - 1);
    for (i, row) in prev.iter().enumerate().take(reach + 1) {
        for (j, c) in row.iter().enumerate().take(reach + 1) {
            if c.cmp0().is_eq() {
                continue;
            }
            for &(a, b) in steps {
                let (ni, nj) = (i as i64 + a as i64, j as i64 + b as i64);
                if ni >= 0 && nj >= 0 && (ni as usize) < size && (nj as usize) < size {
                    next[ni as usize][nj as usize] += c;
                }
            }
        }
    }
    next
}

fn run(model: ModelId, n_max: usize, mut visit: impl FnMut(usize, &[Vec<Integer>])) {
    let steps = model.step_set();
    let size = n_max + 1;
    let mut layer = vec![vec![Integer::new(); size]; size];
    layer[0][0] = Integer::from(1);
    visit(0, &layer);
    for n in 1..=n_max {
        layer = step_layer(steps.steps(), &layer, n);
        visit(n, &layer);
    }
}

/// Every layer of the DP, `0 ≤ n ≤ n_max`.
pub fn walk_table(model: ModelId, n_max: usize) -> WalkTable {
    let mut counts = Vec::with_capacity(n_max + 1);
    run(model, n_max, |_, layer| counts.push(layer.to_vec()));
    WalkTable { counts }
}

/// `S_0 .. S_{n_max}`: all quarter-plane walks by length.
pub fn count_all(model: ModelId, n_max: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(n_max + 1);
    run(model, n_max, |_, layer| {
        out.push(layer.iter().flatten().sum());
    });
    out
}

/// Walks ending on an axis (or at the origin), by length.
pub fn count_axis(model: ModelId, n_max: usize, axis: Axis) -> Vec<Integer> {
    let mut out = Vec::with_capacity(n_max + 1);
    run(model, n_max, |_, layer| {
        let v: Integer = match axis {
            Axis::XAxis => layer.iter().map(|row| &row[0]).sum(),
            Axis::YAxis => layer[0].iter().sum(),
            Axis::Origin => layer[0][0].clone(),
        };
        out.push(v);
    });
    out
}

/// Walks confined to `y ≥ 0` that end on the x-axis, by length. The
/// x-coordinate is unconstrained, so it is summed out and only the height
/// is tracked, with `q_j` ways to move by `j`.
pub fn count_half_plane(model: ModelId, n_max: usize) -> Vec<Integer> {
    let inv = model.inventory();
    let moves = [(-1i64, inv.q_minus1), (0, inv.q_0), (1, inv.q_1)];
    let size = n_max + 2;
    let mut h = vec![Integer::new(); size];
    h[0] = Integer::from(1);
    let mut out = vec![Integer::from(1)];
    for n in 1..=n_max {
        let mut next = vec![Integer::new(); size];
        for (y, c) in h.iter().enumerate().take(n) {
            if c.cmp0().is_eq() {
                continue;
            }
            for &(dy, w) in &moves {
                let ny = y as i64 + dy;
                if w > 0 && ny >= 0 && (ny as usize) < size {
                    next[ny as usize] += Integer::from(c * w);
                }
            }
        }
        h = next;
        out.push(h[0].clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_all(ModelId::A, 4), ints(&[1, 1, 3, 7, 21]));
        assert_eq!(count_all(ModelId::D, 5), ints(&[1, 1, 2, 4, 10, 23]));
        for m in ModelId::ALL {
            assert_eq!(count_all(m, 0), ints(&[1]));
        }
    }

    #[test]
    fn axis_counts() {
        assert_eq!(count_axis(ModelId::A, 2, Axis::YAxis), ints(&[1, 0, 1]));
        for m in ModelId::ALL {
            let o = count_axis(m, 8, Axis::Origin);
            assert_eq!(o[0], 1);
            assert!(o[1..].iter().all(|c| *c == 0));
        }
        for m in ModelId::SYMMETRIC {
            assert_eq!(count_axis(m, 12, Axis::XAxis), count_axis(m, 12, Axis::YAxis));
        }
    }

    #[test]
    fn half_plane_counts() {
        assert_eq!(count_half_plane(ModelId::A, 2), ints(&[1, 0, 2]));
        assert_eq!(count_half_plane(ModelId::B, 1), ints(&[1, 1]));
        for m in ModelId::ALL {
            let h = count_half_plane(m, 15);
            let x = count_axis(m, 15, Axis::XAxis);
            assert!(h.iter().zip(&x).all(|(a, b)| a >= b));
        }
    }

    #[test]
    fn table_layers_are_consistent() {
        let t = walk_table(ModelId::C, 5);
        assert_eq!(*t.get(0, 0, 0), 1);
        assert_eq!(*t.get(1, 1, 1), 1);
        let totals: Vec<Integer> = t.counts.iter().map(|l| l.iter().flatten().sum()).collect();
        assert_eq!(totals, count_all(ModelId::C, 5));
    }
}
