//! Exact linear algebra at desk scale: rational elimination, integer
//! determinants, kernel vectors and Fourier-Motzkin feasibility. No floating
//! point anywhere.

use num::{BigInt, BigRational, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination. Entries stay integral throughout.
pub fn det_i128(matrix: &[Vec<i64>]) -> i128 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Rank of a rational matrix (rows of equal length).
pub fn rank(matrix: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let p = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &p;
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solve the square rational system A x = b; None when A is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pivot);
        let p = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &p;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let sub = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Kernel basis of a rational matrix (columns = variables).
pub fn kernel(matrix: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = matrix.to_vec();
    let rows = m.len();
    let mut pivot_col: Vec<Option<usize>> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let pivot = (r..rows).find(|&i| !m[i][c].is_zero());
        match pivot {
            None => pivot_col.push(None),
            Some(p) => {
                m.swap(r, p);
                let pv = m[r][c].clone();
                for j in 0..cols {
                    m[r][j] = &m[r][j] / &pv;
                }
                for i in 0..rows {
                    if i != r && !m[i][c].is_zero() {
                        let f = m[i][c].clone();
                        for j in 0..cols {
                            let sub = &f * &m[r][j];
                            m[i][j] = &m[i][j] - &sub;
                        }
                    }
                }
                pivot_col.push(Some(r));
                r += 1;
            }
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = rat(1);
        for c in 0..cols {
            if let Some(row) = pivot_col[c] {
                v[c] = -m[row][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// A linear inequality sum(coeffs[i] * x[i]) <= rhs.
#[derive(Debug, Clone)]
pub struct Inequality {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat) -> Inequality {
        Inequality { coeffs, rhs }
    }
}

/// Is the system { A x = b, C x <= d } feasible over the rationals?
/// Equalities are eliminated by substitution, the rest by Fourier-Motzkin.
pub fn feasible(equalities: &[Inequality], inequalities: &[Inequality]) -> bool {
    let vars = equalities
        .iter()
        .chain(inequalities)
        .map(|i| i.coeffs.len())
        .max()
        .unwrap_or(0);
    let pad = |ineq: &Inequality| {
        let mut c = ineq.coeffs.clone();
        c.resize(vars, Rat::zero());
        (c, ineq.rhs.clone())
    };
    let mut eqs: Vec<(Vec<Rat>, Rat)> = equalities.iter().map(pad).collect();
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = inequalities.iter().map(pad).collect();
    let mut alive: Vec<bool> = vec![true; vars];

    // Substitute out equalities.
    while let Some(eq_idx) = eqs.iter().position(|(c, _)| c.iter().any(|x| !x.is_zero())) {
        let (coeffs, rhs) = eqs.swap_remove(eq_idx);
        let v = coeffs.iter().position(|x| !x.is_zero()).unwrap();
        let pivot = coeffs[v].clone();
        // x_v = (rhs - sum_{j != v} coeffs_j x_j) / pivot
        let substitute = |row: &mut (Vec<Rat>, Rat)| {
            if row.0[v].is_zero() {
                return;
            }
            let f = &row.0[v] / &pivot;
            for j in 0..vars {
                if j != v {
                    let sub = &f * &coeffs[j];
                    row.0[j] = &row.0[j] - &sub;
                }
            }
            let sub = &f * &rhs;
            row.1 = &row.1 - &sub;
            row.0[v] = Rat::zero();
        };
        eqs.iter_mut().for_each(substitute);
        ineqs.iter_mut().for_each(substitute);
        alive[v] = false;
    }
    // Degenerate equalities 0 = rhs.
    if eqs.iter().any(|(_, r)| !r.is_zero()) {
        return false;
    }

    // Fourier-Motzkin on the remaining variables.
    for v in 0..vars {
        if !alive[v] {
            continue;
        }
        let (with_v, without_v): (Vec<_>, Vec<_>) =
            ineqs.into_iter().partition(|(c, _)| !c[v].is_zero());
        let mut next = without_v;
        let (pos, neg): (Vec<_>, Vec<_>) =
            with_v.into_iter().partition(|(c, _)| c[v].is_positive());
        for (pc, pr) in &pos {
            for (nc, nr) in &neg {
                // normalize both to coefficient +-1 on v and add
                let pf = &pc[v];
                let nf = -&nc[v];
                let mut c = vec![Rat::zero(); vars];
                for j in 0..vars {
                    if j != v {
                        c[j] = &pc[j] / pf + &nc[j] / &nf;
                    }
                }
                let r = pr / pf + nr / &nf;
                if c.iter().all(|x| x.is_zero()) {
                    if r.is_negative() {
                        return false;
                    }
                } else {
                    next.push((c, r));
                }
            }
        }
        ineqs = dedup_rows(next);
    }
    ineqs.iter().all(|(c, r)| {
        debug_assert!(c.iter().all(|x| x.is_zero()));
        !r.is_negative()
    })
}

fn dedup_rows(rows: Vec<(Vec<Rat>, Rat)>) -> Vec<(Vec<Rat>, Rat)> {
    let mut seen: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (c, r) in rows {
        if c.iter().all(|x| x.is_zero()) && !r.is_negative() {
            continue; // trivially true
        }
        if !seen.iter().any(|(c2, r2)| *c2 == c && *r2 == r) {
            seen.push((c, r));
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(det_i128(&[vec![1, 0], vec![0, 1]]), 1);
        assert_eq!(det_i128(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i128(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det_i128(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(det_i128(&[]), 1);
        assert_eq!(
            det_i128(&[vec![1, 0, 0], vec![0, 1, -1], vec![0, 0, -1]]),
            -1
        );
    }

    #[test]
    fn solve_and_rank() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        let x = solve(&a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]), 1);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // columns e1, e2, e1 + e2
        let m = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // 1*v0 + 0 + v2 = 0 and v1 + v2 = 0 with v2 = 1
        assert_eq!(v[2], rat(1));
        assert_eq!(v[0], rat(-1));
        assert_eq!(v[1], rat(-1));
    }

    #[test]
    fn feasibility_basics() {
        // x >= 1 and -x >= 1 is infeasible: as <=, -x <= -1 and x <= -1
        let inf = vec![
            Inequality::new(vec![rat(-1)], rat(-1)),
            Inequality::new(vec![rat(1)], rat(-1)),
        ];
        assert!(!feasible(&[], &inf));
        // x <= 5, -x <= -1 feasible
        let ok = vec![
            Inequality::new(vec![rat(1)], rat(5)),
            Inequality::new(vec![rat(-1)], rat(-1)),
        ];
        assert!(feasible(&[], &ok));
        // x + y = 1, x <= 0, y <= 0 infeasible
        let eqs = vec![Inequality::new(vec![rat(1), rat(1)], rat(1))];
        let ineq = vec![
            Inequality::new(vec![rat(1), rat(0)], rat(0)),
            Inequality::new(vec![rat(0), rat(1)], rat(0)),
        ];
        assert!(!feasible(&eqs, &ineq));
        // empty system feasible
        assert!(feasible(&[], &[]));
    }
}
