//! Dense two-phase primal simplex with Bland's anti-cycling rule.
//!
//! Solves `min c.x` subject to `A_eq x = b_eq`, `A_le x <= b_le`, `x >= 0`
//! with nonnegative right-hand sides. Intended for problems with at most a
//! few hundred rows; the tableau is stored densely.

const PIVOT_EPS: f64 = 1e-11;
const FEASIBILITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub eq_rows: Vec<(Vec<f64>, f64)>,
    pub le_rows: Vec<(Vec<f64>, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible { phase_one_objective: f64 },
    Unbounded,
    IterationLimit { iterations: usize, objective: f64 },
}

struct Tableau {
    /// `rows x (cols + 1)`, last column is the right-hand side.
    a: Vec<Vec<f64>>,
    /// Reduced costs, last entry is minus the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    cols: usize,
    iterations: usize,
}

enum Phase {
    Done,
    Unbounded,
    Limit,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.a[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                r[col] = 0.0;
            }
        }
        let f = self.cost[col];
        if f != 0.0 {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.cost[col] = 0.0;
        }
        self.basis[row] = col;
        self.iterations += 1;
    }

    /// Set the reduced-cost row for objective `c` given the current basis.
    fn price(&mut self, c: &[f64]) {
        let mut cost = c.to_vec();
        cost.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c[b];
            if cb != 0.0 {
                for (v, a) in cost.iter_mut().zip(&self.a[i]) {
                    *v -= cb * a;
                }
            }
        }
        self.cost = cost;
    }

    fn run(&mut self, allowed: usize, max_iter: usize) -> Phase {
        loop {
            if self.iterations >= max_iter {
                return Phase::Limit;
            }
            // Bland: lowest-index improving column
            let Some(col) = (0..allowed).find(|&j| self.cost[j] < -PIVOT_EPS) else {
                return Phase::Done;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.a.len() {
                let aij = self.a[i][col];
                if aij > PIVOT_EPS {
                    let ratio = self.rhs(i) / aij;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-14 || (ratio <= br + 1e-14 && self.basis[i] < self.basis[bi]) {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Phase::Unbounded,
            }
        }
    }

    fn objective(&self) -> f64 {
        -self.cost[self.cols]
    }
}

impl LinearProgram {
    pub fn solve(&self, max_iter: usize) -> LpOutcome {
        let n = self.num_vars;
        let m_le = self.le_rows.len();
        let m_eq = self.eq_rows.len();
        let slack0 = n;
        let art0 = n + m_le;
        let cols = n + m_le + m_eq;

        let mut a = Vec::with_capacity(m_le + m_eq);
        let mut basis = Vec::with_capacity(m_le + m_eq);
        for (k, (row, b)) in self.le_rows.iter().enumerate() {
            debug_assert!(*b >= 0.0);
            let mut r = vec![0.0; cols + 1];
            r[..n].copy_from_slice(row);
            r[slack0 + k] = 1.0;
            r[cols] = *b;
            a.push(r);
            basis.push(slack0 + k);
        }
        for (k, (row, b)) in self.eq_rows.iter().enumerate() {
            debug_assert!(*b >= 0.0);
            let mut r = vec![0.0; cols + 1];
            r[..n].copy_from_slice(row);
            r[art0 + k] = 1.0;
            r[cols] = *b;
            a.push(r);
            basis.push(art0 + k);
        }
        let mut tab = Tableau {
            a,
            cost: Vec::new(),
            basis,
            cols,
            iterations: 0,
        };

        // phase one: drive the artificials to zero
        let mut phase_one = vec![0.0; cols];
        for v in phase_one[art0..].iter_mut() {
            *v = 1.0;
        }
        tab.price(&phase_one);
        match tab.run(cols, max_iter) {
            Phase::Limit => {
                return LpOutcome::IterationLimit {
                    iterations: tab.iterations,
                    objective: f64::INFINITY,
                }
            }
            Phase::Unbounded => unreachable!("phase one objective is bounded below by zero"),
            Phase::Done => {}
        }
        let infeas = tab.objective();
        if infeas > FEASIBILITY_EPS {
            return LpOutcome::Infeasible {
                phase_one_objective: infeas,
            };
        }
        for i in 0..tab.a.len() {
            if tab.basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| tab.a[i][j].abs() > PIVOT_EPS) {
                    tab.pivot(i, j);
                }
            }
        }

        let mut c = self.objective.clone();
        c.resize(cols, 0.0);
        tab.price(&c);
        match tab.run(art0, max_iter) {
            Phase::Limit => LpOutcome::IterationLimit {
                iterations: tab.iterations,
                objective: tab.objective(),
            },
            Phase::Unbounded => LpOutcome::Unbounded,
            Phase::Done => {
                let mut x = vec![0.0; n];
                for (i, &b) in tab.basis.iter().enumerate() {
                    if b < n {
                        x[b] = tab.rhs(i);
                    }
                }
                let objective = self.objective.iter().zip(&x).map(|(c, x)| c * x).sum();
                LpOutcome::Optimal { x, objective }
            }
        }
    }
}
