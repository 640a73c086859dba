//! Exact feasibility LP: does `A x = b, x >= 0` have a rational solution?
//!
//! Phase-one simplex on a dense tableau with Bland's smallest-index rule, so
//! it terminates on degenerate problems. All arithmetic is over `BigRational`.

use crate::linalg::{Field, Matrix, Q};
use num_traits::Signed;

/// Returns a nonnegative solution of `a x = b` if one exists.
pub fn solve_nonnegative(a: &Matrix<Q>, b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(vec![<Q as Field>::zero(); n]);
    }
    let width = n + m;
    // tableau rows: [A | I | b] with b made nonnegative
    let mut t: Matrix<Q> = Vec::with_capacity(m + 1);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged constraint matrix");
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
        row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // reduced costs for minimising the sum of artificials
    let mut cost = vec![Q::zero(); width + 1];
    for row in &t {
        for j in 0..n {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[width] = cost[width].clone() - row[width].clone();
    }
    let mut basis: Vec<usize> = (n..width).collect();

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            match leave {
                None => leave = Some(i),
                Some(l) => {
                    let lhs = t[i][width].clone() * t[l][enter].clone();
                    let rhs = t[l][width].clone() * t[i][enter].clone();
                    if lhs < rhs || (lhs == rhs && basis[i] < basis[l]) {
                        leave = Some(i);
                    }
                }
            }
        }
        // phase one is bounded below by zero, so some row must qualify
        let r = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width].clone();
        }
    }
    Some(x)
}

/// Feasibility of `a x = b, x >= 0`.
pub fn is_feasible(a: &Matrix<Q>, b: &[Q]) -> bool {
    solve_nonnegative(a, b).is_some()
}

fn pivot(t: &mut Matrix<Q>, cost: &mut [Q], r: usize, c: usize) {
    let inv = Q::one() / t[r][c].clone();
    for x in t[r].iter_mut() {
        *x = x.clone() * inv.clone();
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
    }
}
